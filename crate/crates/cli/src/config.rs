//! Policy config files: versioned plain-text `key value` lines.
//!
//! ```text
//! format_version 1
//! variant ra_tpp_mag      # ra | ra_t_plus | ra_tpp | ra_tpp_mag
//! num_ops 2
//! magnitude 0.5
//! beta 8                  # perturbation half-duration cap
//! perturbations 2         # perturbation count
//! mag_min 0.0
//! mag_max 1.0
//! mix float_cutmix        # none or a mix kind
//! alpha 1.0
//! seed 42
//! denylist video_reverse,video_cutmix
//! ```
//!
//! Every key except `format_version` is optional and falls back to the
//! library default. `#` starts a comment, inline or whole-line.

use std::collections::BTreeSet;
use std::fs;
use std::path::Path;

use vidaug::{MagAugmentConfig, MixKind, OpKind, PolicySpec, PolicyVariant};

use crate::error::{CliError, Result};

pub fn parse_policy(path: &Path, text: &str) -> Result<PolicySpec> {
    let err = |msg: String| CliError::Config { path: path.to_path_buf(), msg };
    let mut spec = PolicySpec::default();
    let mut mag = MagAugmentConfig::default();
    let mut mag_touched = false;
    let mut version_seen = false;

    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, value) = line
            .split_once(char::is_whitespace)
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| err(format!("line {}: expected \"key value\", got \"{line}\"", i + 1)))?;
        let bad = |what: &str| err(format!("line {}: bad {what} \"{value}\"", i + 1));
        match key {
            "format_version" => {
                if value != "1" {
                    return Err(err(format!("unsupported format_version {value}")));
                }
                version_seen = true;
            }
            "variant" => spec.variant = PolicyVariant::parse(value).map_err(|e| err(e.to_string()))?,
            "num_ops" => spec.num_ops = value.parse().map_err(|_| bad("num_ops"))?,
            "magnitude" => spec.magnitude = value.parse().map_err(|_| bad("magnitude"))?,
            "alpha" => spec.alpha = value.parse().map_err(|_| bad("alpha"))?,
            "seed" => spec.seed = value.parse().map_err(|_| bad("seed"))?,
            "beta" => {
                mag.beta = value.parse().map_err(|_| bad("beta"))?;
                mag_touched = true;
            }
            "perturbations" => {
                mag.perturbations = value.parse().map_err(|_| bad("perturbations"))?;
                mag_touched = true;
            }
            "mag_min" => {
                mag.m_min = value.parse().map_err(|_| bad("mag_min"))?;
                mag_touched = true;
            }
            "mag_max" => {
                mag.m_max = value.parse().map_err(|_| bad("mag_max"))?;
                mag_touched = true;
            }
            "mix" => {
                spec.mix = if value == "none" {
                    None
                } else {
                    Some(MixKind::parse(value).map_err(|e| err(e.to_string()))?)
                }
            }
            "denylist" => {
                spec.denylist = parse_denylist(value).map_err(|e| err(e.to_string()))?;
            }
            other => return Err(err(format!("line {}: unknown key \"{other}\"", i + 1))),
        }
    }
    if !version_seen {
        return Err(err("missing format_version".into()));
    }
    if mag_touched {
        spec.mag_cfg = Some(mag);
    }
    spec.validate().map_err(|e| err(e.to_string()))?;
    Ok(spec)
}

pub fn parse_denylist(value: &str) -> vidaug::Result<BTreeSet<OpKind>> {
    value
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(OpKind::parse)
        .collect()
}

pub fn load_policy(path: &Path) -> Result<PolicySpec> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_policy(path, &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn full_config_parses() {
        let text = "\
format_version 1
variant ra_tpp_mag
num_ops 3
magnitude 0.7   # strong
beta 4
perturbations 1
mix float_cutmix
alpha 2.0
seed 99
denylist video_reverse, frame_fade_in
";
        let spec = parse_policy(Path::new("p"), text).unwrap();
        assert_eq!(spec.variant, PolicyVariant::RaTppMag);
        assert_eq!(spec.num_ops, 3);
        assert_eq!(spec.magnitude, 0.7);
        assert_eq!(spec.mag_cfg.unwrap().beta, 4);
        assert_eq!(spec.mix, Some(MixKind::FloatCutMix));
        assert_eq!(spec.alpha, 2.0);
        assert_eq!(spec.seed, 99);
        assert_eq!(spec.denylist.len(), 2);
    }

    #[test]
    fn minimal_config_uses_defaults() {
        let spec = parse_policy(Path::new("p"), "format_version 1\n").unwrap();
        assert_eq!(spec, PolicySpec::default());
    }

    #[test]
    fn rejects_unknown_keys_and_missing_version() {
        assert!(parse_policy(Path::new("p"), "format_version 1\ncolour_depth 16\n").is_err());
        assert!(parse_policy(Path::new("p"), "variant ra\n").is_err());
        assert!(parse_policy(Path::new("p"), "format_version 2\n").is_err());
    }

    #[test]
    fn rejects_identity_in_denylist() {
        let text = "format_version 1\ndenylist identity\n";
        assert!(parse_policy(Path::new("p"), text).is_err());
    }
}
