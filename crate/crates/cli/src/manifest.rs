//! Input clip manifests and augmentation result manifests, both
//! line-delimited text with a versioned header.
//!
//! Input manifest: header `clipmanifest 1`, then one tab-separated entry
//! per line: `clip_id  path  label_id  n  H  W  C`. Paths are resolved
//! relative to the manifest file. Blank lines and `#` comments are
//! ignored.
//!
//! Result manifest: header `augmentresults 1`, then
//! `clip_id  out_path  label_a  label_b  weight_b  seed  stream_path`
//! per clip, in input order, with `weight_b` printed in shortest
//! round-trip form and `stream_path` as slash-joined derivation labels.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use crate::error::{CliError, Result};

pub const MANIFEST_HEADER: &str = "clipmanifest 1";
pub const RESULTS_HEADER: &str = "augmentresults 1";
/// File name of the result manifest inside the output directory.
pub const RESULTS_FILE: &str = "results.manifest";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub clip_id: String,
    pub path: PathBuf,
    pub label_id: u32,
    pub n: usize,
    pub height: usize,
    pub width: usize,
    pub channels: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClipManifest {
    pub entries: Vec<ManifestEntry>,
}

impl ClipManifest {
    pub fn parse(path: &Path, text: &str) -> Result<Self> {
        let err = |msg: String| CliError::Manifest { path: path.to_path_buf(), msg };
        let base = path.parent().unwrap_or(Path::new("")).to_path_buf();
        let mut lines = text
            .lines()
            .enumerate()
            .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'));
        match lines.next() {
            Some((_, h)) if h.trim() == MANIFEST_HEADER => {}
            Some((i, h)) => return Err(err(format!("line {}: expected \"{MANIFEST_HEADER}\", got \"{h}\"", i + 1))),
            None => return Err(err("empty file".into())),
        }
        let mut entries = Vec::new();
        let mut seen = std::collections::BTreeSet::new();
        for (i, line) in lines {
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 7 {
                return Err(err(format!("line {}: expected 7 tab-separated fields, got {}", i + 1, fields.len())));
            }
            let parse_num = |s: &str, what: &str| -> Result<usize> {
                s.parse().map_err(|_| err(format!("line {}: bad {what} \"{s}\"", i + 1)))
            };
            let entry = ManifestEntry {
                clip_id: fields[0].to_string(),
                path: base.join(fields[1]),
                label_id: fields[2]
                    .parse()
                    .map_err(|_| err(format!("line {}: bad label \"{}\"", i + 1, fields[2])))?,
                n: parse_num(fields[3], "frame count")?,
                height: parse_num(fields[4], "height")?,
                width: parse_num(fields[5], "width")?,
                channels: parse_num(fields[6], "channel count")?,
            };
            if entry.clip_id.is_empty()
                || !entry.clip_id.chars().all(|c| c.is_ascii_alphanumeric() || "._-".contains(c))
                || entry.clip_id.starts_with('.')
            {
                return Err(err(format!(
                    "line {}: clip_id \"{}\" is not a safe file name",
                    i + 1,
                    entry.clip_id
                )));
            }
            if !seen.insert(entry.clip_id.clone()) {
                return Err(err(format!("line {}: duplicate clip_id \"{}\"", i + 1, entry.clip_id)));
            }
            entries.push(entry);
        }
        Ok(ClipManifest { entries })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse(path, &text)
    }

    pub fn serialize(&self, relative_to: &Path) -> String {
        let mut out = String::new();
        out.push_str(MANIFEST_HEADER);
        out.push('\n');
        for e in &self.entries {
            let rel = e.path.strip_prefix(relative_to).unwrap_or(&e.path);
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                e.clip_id,
                rel.display(),
                e.label_id,
                e.n,
                e.height,
                e.width,
                e.channels
            );
        }
        out
    }
}

/// One line of the result manifest.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub clip_id: String,
    pub out_path: String,
    pub label_a: u32,
    pub label_b: u32,
    pub weight_b: f64,
    pub seed: u64,
    pub stream_path: Vec<u64>,
}

pub fn serialize_results(records: &[ResultRecord]) -> String {
    let mut out = String::new();
    out.push_str(RESULTS_HEADER);
    out.push('\n');
    for r in records {
        let path_str = r
            .stream_path
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join("/");
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.clip_id, r.out_path, r.label_a, r.label_b, r.weight_b, r.seed, path_str
        );
    }
    out
}

pub fn parse_results(path: &Path, text: &str) -> Result<Vec<ResultRecord>> {
    let err = |msg: String| CliError::Manifest { path: path.to_path_buf(), msg };
    let mut lines = text.lines().filter(|l| !l.trim().is_empty());
    match lines.next() {
        Some(h) if h.trim() == RESULTS_HEADER => {}
        _ => return Err(err(format!("missing \"{RESULTS_HEADER}\" header"))),
    }
    let mut records = Vec::new();
    for line in lines {
        let f: Vec<&str> = line.split('\t').collect();
        if f.len() != 7 {
            return Err(err(format!("expected 7 fields, got {}", f.len())));
        }
        records.push(ResultRecord {
            clip_id: f[0].to_string(),
            out_path: f[1].to_string(),
            label_a: f[2].parse().map_err(|_| err("bad label_a".into()))?,
            label_b: f[3].parse().map_err(|_| err("bad label_b".into()))?,
            weight_b: f[4].parse().map_err(|_| err("bad weight_b".into()))?,
            seed: f[5].parse().map_err(|_| err("bad seed".into()))?,
            stream_path: if f[6].is_empty() {
                Vec::new()
            } else {
                f[6].split('/')
                    .map(|s| s.parse().map_err(|_| err("bad stream path".into())))
                    .collect::<Result<_>>()?
            },
        });
    }
    Ok(records)
}
