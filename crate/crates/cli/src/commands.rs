//! Command implementations behind the CLI surface. Kept as library
//! functions so integration tests can drive them directly.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use vidaug::{
    apply_policy, augment_batch, sample_curve, video_reverse, Clip, OpKind, PolicySpec, RngStream,
};

use crate::clipio::{read_clip, write_clip, write_contact_sheet, ClipFormat, CLIPRAW_EXT};
use crate::error::{CliError, Result};
use crate::manifest::{serialize_results, ClipManifest, ResultRecord, RESULTS_FILE};

/// CLI-level overrides applied on top of the policy config file.
#[derive(Debug, Clone, Default)]
pub struct Overrides {
    pub seed: Option<u64>,
    pub denylist: Option<BTreeSet<OpKind>>,
}

impl Overrides {
    pub fn apply(&self, spec: &mut PolicySpec) {
        if let Some(seed) = self.seed {
            spec.seed = seed;
        }
        if let Some(deny) = &self.denylist {
            spec.denylist.extend(deny.iter().copied());
        }
    }
}

fn stream_for_clip(seed: u64, index: usize) -> RngStream {
    // mirror of the batch derivation: root / clips stage / index
    RngStream::new(seed).derive(0).derive(index as u64)
}

/// Augment every manifest entry under one policy and write the clips plus
/// a result manifest. Output bytes depend only on (manifest, config, seed),
/// never on `jobs`.
pub fn cmd_augment(
    manifest_path: &Path,
    policy_path: &Path,
    out_dir: &Path,
    overrides: &Overrides,
    jobs: usize,
    format: ClipFormat,
) -> Result<()> {
    let mut spec = crate::config::load_policy(policy_path)?;
    overrides.apply(&mut spec);
    spec.validate().map_err(CliError::Core)?;
    let manifest = ClipManifest::load(manifest_path)?;

    // Load everything up front: pairing for two-clip mixes needs the whole
    // batch, and a clip that cannot be read is fatal for the run.
    let mut items: Vec<(Clip, u32)> = Vec::with_capacity(manifest.entries.len());
    let mut load_errors = Vec::new();
    for entry in &manifest.entries {
        match read_clip(&entry.path) {
            Ok(clip) => {
                let shape_ok = clip.n_frames() == entry.n
                    && clip.height() == entry.height
                    && clip.width() == entry.width
                    && clip.channels() == entry.channels;
                if !shape_ok {
                    load_errors.push(format!(
                        "{}: on-disk shape {} does not match manifest {}x{}x{}x{}",
                        entry.clip_id,
                        clip.shape_string(),
                        entry.n,
                        entry.height,
                        entry.width,
                        entry.channels
                    ));
                } else {
                    items.push((clip, entry.label_id));
                }
            }
            Err(e) => load_errors.push(format!("{}: {e}", entry.clip_id)),
        }
    }
    if !load_errors.is_empty() {
        for e in &load_errors {
            eprintln!("error: {e}");
        }
        return Err(CliError::Manifest {
            path: manifest_path.to_path_buf(),
            msg: format!("{} clips failed to load", load_errors.len()),
        });
    }

    let results = run_batch(&items, &spec, jobs).map_err(CliError::Core)?;

    fs::create_dir_all(out_dir).map_err(|e| CliError::io(out_dir, e))?;
    let mut records = Vec::with_capacity(results.len());
    let mut failures = 0usize;
    for (entry, result) in manifest.entries.iter().zip(results) {
        match result {
            Ok(aug) => {
                let out_name = match format {
                    ClipFormat::ClipRaw => format!("{}.{CLIPRAW_EXT}", entry.clip_id),
                    ClipFormat::Png => entry.clip_id.clone(),
                };
                write_clip(&aug.clip, &out_dir.join(&out_name), format)?;
                records.push(ResultRecord {
                    clip_id: entry.clip_id.clone(),
                    out_path: out_name,
                    label_a: aug.label.label_a,
                    label_b: aug.label.label_b,
                    weight_b: aug.label.weight_b,
                    seed: spec.seed,
                    stream_path: aug.stream_path,
                });
            }
            Err(e) => {
                eprintln!("error: {}: {e}", entry.clip_id);
                failures += 1;
            }
        }
    }
    let results_path = out_dir.join(RESULTS_FILE);
    fs::write(&results_path, serialize_results(&records))
        .map_err(|e| CliError::io(&results_path, e))?;
    if failures > 0 {
        return Err(CliError::PartialFailure { failed: failures, total: manifest.entries.len() });
    }
    Ok(())
}

fn run_batch(
    items: &[(Clip, u32)],
    spec: &PolicySpec,
    jobs: usize,
) -> vidaug::Result<Vec<vidaug::Result<vidaug::AugmentedClip>>> {
    if jobs == 0 {
        augment_batch(items, spec, true)
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool construction");
        pool.install(|| augment_batch(items, spec, true))
    }
}

/// Export `count` sampled magnitude curves of length `n_frames` as CSV
/// rows `sample_id,t,m_t` (values printed with 9 decimal places).
pub fn cmd_schedule(
    policy_path: &Path,
    n_frames: usize,
    count: usize,
    out_path: &Path,
    overrides: &Overrides,
) -> Result<()> {
    let mut spec = crate::config::load_policy(policy_path)?;
    overrides.apply(&mut spec);
    let root = RngStream::new(spec.seed);
    let mut csv = String::from("sample_id,t,m_t\n");
    for sample in 0..count {
        let curve = sample_curve(&spec, n_frames, &root.derive(sample as u64))
            .map_err(CliError::Core)?;
        for (t, m) in curve.values().iter().enumerate() {
            let _ = writeln!(csv, "{sample},{t},{m:.9}");
        }
    }
    if let Some(parent) = out_path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    fs::write(out_path, csv).map_err(|e| CliError::io(out_path, e))
}

/// Render a contact sheet of the augmented clip: up to 8 evenly spaced
/// output frames side by side. Two-clip mix stages blend against
/// `partner` when given, otherwise against the clip's own reversal so
/// pasted regions stay visible.
pub fn cmd_preview(
    clip_path: &Path,
    policy_path: &Path,
    out_png: &Path,
    overrides: &Overrides,
    partner_path: Option<&Path>,
) -> Result<()> {
    let mut spec = crate::config::load_policy(policy_path)?;
    overrides.apply(&mut spec);
    let clip = read_clip(clip_path)?;
    let partner = match partner_path {
        Some(p) => Some(read_clip(p)?),
        None if spec.mix.map(|k| k.needs_partner()).unwrap_or(false) => {
            Some(video_reverse(&clip))
        }
        None => None,
    };
    let stream = stream_for_clip(spec.seed, 0);
    let (out, _label) = apply_policy(
        &clip,
        0,
        &spec,
        partner.as_ref().map(|p| (p, 1u32)),
        &stream,
    )
    .map_err(CliError::Core)?;
    write_contact_sheet(&out, out_png)
}
