//! Clip container IO: the CLIPRAW byte format, PNG frame directories, and
//! contact-sheet previews.
//!
//! CLIPRAW layout, bit-exact: magic `CLR1` (4 bytes), then little-endian
//! u32 n, H, W, C, then n*H*W*C payload bytes frame-major, row-major,
//! channel-interleaved. A PNG directory holds frames named
//! `frame_00000.png` .. `frame_{n-1:05}.png`, all 8-bit gray or RGB with
//! identical dimensions.

use std::fs;
use std::io::Write as _;
use std::path::Path;

use vidaug::Clip;

use crate::error::{CliError, Result};

pub const CLIPRAW_MAGIC: &[u8; 4] = b"CLR1";
pub const CLIPRAW_EXT: &str = "clipraw";

/// Output container for augmented clips.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ClipFormat {
    ClipRaw,
    Png,
}

impl ClipFormat {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "clipraw" => Some(ClipFormat::ClipRaw),
            "png" => Some(ClipFormat::Png),
            _ => None,
        }
    }
}

pub fn encode_clipraw(clip: &Clip) -> Vec<u8> {
    let mut out = Vec::with_capacity(20 + clip.data().len());
    out.extend_from_slice(CLIPRAW_MAGIC);
    for v in [clip.n_frames(), clip.height(), clip.width(), clip.channels()] {
        out.extend_from_slice(&(v as u32).to_le_bytes());
    }
    out.extend_from_slice(clip.data());
    out
}

pub fn decode_clipraw(path: &Path, bytes: &[u8]) -> Result<Clip> {
    if bytes.len() < 20 {
        return Err(CliError::codec(path, format!("file is {} bytes, header needs 20", bytes.len())));
    }
    if &bytes[0..4] != CLIPRAW_MAGIC {
        return Err(CliError::codec(path, format!("bad magic {:?}", &bytes[0..4])));
    }
    let word = |i: usize| u32::from_le_bytes(bytes[4 + 4 * i..8 + 4 * i].try_into().unwrap()) as usize;
    let (n, h, w, c) = (word(0), word(1), word(2), word(3));
    let expect = n
        .checked_mul(h)
        .and_then(|v| v.checked_mul(w))
        .and_then(|v| v.checked_mul(c))
        .ok_or_else(|| CliError::codec(path, "shape overflows"))?;
    let payload = &bytes[20..];
    if payload.len() != expect {
        return Err(CliError::codec(
            path,
            format!("payload is {} bytes, {n}x{h}x{w}x{c} needs {expect}", payload.len()),
        ));
    }
    Clip::from_raw(n, h, w, c, payload.to_vec())
        .map_err(|e| CliError::codec(path, e.to_string()))
}

fn frame_file_name(t: usize) -> String {
    format!("frame_{t:05}.png")
}

fn read_png_dir(dir: &Path) -> Result<Clip> {
    let mut indices = Vec::new();
    for entry in fs::read_dir(dir).map_err(|e| CliError::io(dir, e))? {
        let entry = entry.map_err(|e| CliError::io(dir, e))?;
        let name = entry.file_name().to_string_lossy().into_owned();
        if let Some(num) = name.strip_prefix("frame_").and_then(|s| s.strip_suffix(".png")) {
            let t: usize = num
                .parse()
                .map_err(|_| CliError::codec(dir, format!("unparseable frame name {name}")))?;
            indices.push(t);
        }
    }
    if indices.is_empty() {
        return Err(CliError::codec(dir, "no frame_NNNNN.png files"));
    }
    indices.sort_unstable();
    let n = indices.len();
    for (want, &got) in indices.iter().enumerate() {
        if want != got {
            return Err(CliError::codec(dir, format!("missing frame index {want}")));
        }
    }

    let mut data = Vec::new();
    let mut shape: Option<(usize, usize, usize)> = None;
    for t in 0..n {
        let path = dir.join(frame_file_name(t));
        let img = image::open(&path).map_err(|e| CliError::Image { path: path.clone(), source: e })?;
        let (w, h, c, bytes) = match img {
            image::DynamicImage::ImageLuma8(g) => {
                (g.width() as usize, g.height() as usize, 1usize, g.into_raw())
            }
            image::DynamicImage::ImageRgb8(rgb) => {
                (rgb.width() as usize, rgb.height() as usize, 3usize, rgb.into_raw())
            }
            other => {
                return Err(CliError::codec(
                    &path,
                    format!("unsupported color type {:?}, need 8-bit gray or RGB", other.color()),
                ))
            }
        };
        match shape {
            None => shape = Some((h, w, c)),
            Some(s) if s != (h, w, c) => {
                return Err(CliError::codec(
                    &path,
                    format!("frame {t} is {w}x{h}x{c}, clip started as {}x{}x{}", s.1, s.0, s.2),
                ))
            }
            _ => {}
        }
        data.extend_from_slice(&bytes);
    }
    let (h, w, c) = shape.unwrap();
    Clip::from_raw(n, h, w, c, data).map_err(|e| CliError::codec(dir, e.to_string()))
}

/// Read a clip from either container: a directory of numbered PNG frames
/// or a CLIPRAW file.
pub fn read_clip(path: &Path) -> Result<Clip> {
    if path.is_dir() {
        read_png_dir(path)
    } else {
        let bytes = fs::read(path).map_err(|e| CliError::io(path, e))?;
        decode_clipraw(path, &bytes)
    }
}

/// Write a clip in the chosen container. For PNG the path is a directory
/// that will be created; for CLIPRAW it is a file path.
pub fn write_clip(clip: &Clip, path: &Path, format: ClipFormat) -> Result<()> {
    match format {
        ClipFormat::ClipRaw => {
            if let Some(parent) = path.parent() {
                fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
            }
            let mut f = fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            f.write_all(&encode_clipraw(clip)).map_err(|e| CliError::io(path, e))?;
            Ok(())
        }
        ClipFormat::Png => {
            fs::create_dir_all(path).map_err(|e| CliError::io(path, e))?;
            let color = if clip.channels() == 1 {
                image::ExtendedColorType::L8
            } else {
                image::ExtendedColorType::Rgb8
            };
            for t in 0..clip.n_frames() {
                let fp = path.join(frame_file_name(t));
                image::save_buffer(
                    &fp,
                    clip.frame(t),
                    clip.width() as u32,
                    clip.height() as u32,
                    color,
                )
                .map_err(|e| CliError::Image { path: fp.clone(), source: e })?;
            }
            Ok(())
        }
    }
}

/// Indices of up to `max` evenly spaced frames.
pub fn spaced_frames(n: usize, max: usize) -> Vec<usize> {
    let k = n.min(max);
    if k <= 1 {
        return vec![0];
    }
    (0..k)
        .map(|i| ((i as f64) * (n - 1) as f64 / (k - 1) as f64 + 0.5).floor() as usize)
        .collect()
}

/// Write a horizontal contact sheet of up to 8 evenly spaced frames.
pub fn write_contact_sheet(clip: &Clip, path: &Path) -> Result<()> {
    let panels = spaced_frames(clip.n_frames(), 8);
    let (h, w) = (clip.height(), clip.width());
    let sheet_w = w * panels.len();
    let mut rgb = vec![0u8; sheet_w * h * 3];
    for (slot, &t) in panels.iter().enumerate() {
        for y in 0..h {
            for x in 0..w {
                let dst = (y * sheet_w + slot * w + x) * 3;
                match clip.channels() {
                    1 => {
                        let v = clip.get(t, y, x, 0);
                        rgb[dst] = v;
                        rgb[dst + 1] = v;
                        rgb[dst + 2] = v;
                    }
                    _ => {
                        rgb[dst] = clip.get(t, y, x, 0);
                        rgb[dst + 1] = clip.get(t, y, x, 1);
                        rgb[dst + 2] = clip.get(t, y, x, 2);
                    }
                }
            }
        }
    }
    if let Some(parent) = path.parent() {
        if !parent.as_os_str().is_empty() {
            fs::create_dir_all(parent).map_err(|e| CliError::io(parent, e))?;
        }
    }
    image::save_buffer(path, &rgb, sheet_w as u32, h as u32, image::ExtendedColorType::Rgb8)
        .map_err(|e| CliError::Image { path: path.to_path_buf(), source: e })
}
