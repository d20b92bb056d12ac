//! Magnitude schedule generators.
//!
//! Frames are 0-based throughout: a linear schedule places its endpoints at
//! t = 0 and t = n-1, and the perturbation location draw uses the inclusive
//! integer range [j, n-1-j] so the whole perturbation window stays inside
//! the clip.

use crate::curve::MagnitudeCurve;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Parameters for non-linear magnitude perturbations.
///
/// `beta` is the maximum half-duration of a perturbation in frames,
/// `perturbations` how many are layered onto the base curve, and
/// `[m_min, m_max]` the normalized range the perturbation values are drawn
/// from.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MagAugmentConfig {
    pub beta: usize,
    pub perturbations: usize,
    pub m_min: f64,
    pub m_max: f64,
}

impl Default for MagAugmentConfig {
    fn default() -> Self {
        MagAugmentConfig { beta: 8, perturbations: 2, m_min: 0.0, m_max: 1.0 }
    }
}

impl MagAugmentConfig {
    pub fn validate(&self) -> Result<()> {
        if self.beta < 1 {
            return Err(Error::InvalidPolicy("beta must be >= 1".into()));
        }
        if !(0.0 <= self.m_min && self.m_min <= self.m_max && self.m_max <= 1.0) {
            return Err(Error::InvalidPolicy(format!(
                "need 0 <= m_min <= m_max <= 1, got [{}, {}]",
                self.m_min, self.m_max
            )));
        }
        Ok(())
    }
}

fn check_magnitude(m: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::MagnitudeOutOfRange(m));
    }
    Ok(())
}

/// Constant curve: every frame gets magnitude `m`.
pub fn static_schedule(m: f64, n: usize) -> Result<MagnitudeCurve> {
    check_magnitude(m)?;
    MagnitudeCurve::from_knots(vec![(0, m), (n - 1, m)], n)
}

/// Straight line from `m_start` at frame 0 to `m_end` at frame n-1.
pub fn linear_schedule(m_start: f64, m_end: f64, n: usize) -> Result<MagnitudeCurve> {
    check_magnitude(m_start)?;
    check_magnitude(m_end)?;
    MagnitudeCurve::from_knots(vec![(0, m_start), (n - 1, m_end)], n)
}

/// Endpoint pair for the sampled-spread linear schedule: delta ~ U(0, m/2),
/// endpoints (m - delta, m + delta) clamped to [0, 1].
pub fn t_plus_endpoints(m: f64, stream: &mut RngStream) -> Result<(f64, f64)> {
    check_magnitude(m)?;
    let delta = stream.uniform(0.0, 0.5 * m)?;
    Ok(((m - delta).clamp(0.0, 1.0), (m + delta).clamp(0.0, 1.0)))
}

/// Layer short random magnitude swings onto `base`.
///
/// Each of the `cfg.perturbations` rounds draws, in order, a target value
/// M_p ~ U(m_min, m_max), an integer half-duration j ~ U(1, beta) (clamped
/// to floor((n-1)/2) so short clips remain valid), and an integer location
/// p ~ U(j, n-1-j). The window [p-j, p+j] of the current curve is replaced
/// by the two-segment interpolation through (p-j, cur[p-j]), (p, M_p),
/// (p+j, cur[p+j]); later rounds read the already-perturbed curve. The
/// frame-0 and frame-(n-1) values are anchors and are never displaced.
///
/// Returns `(curve, skipped)`; `skipped` is true when the clip is too short
/// for any valid perturbation window (n < 3), in which case `base` comes
/// back unchanged.
pub fn magaugment_schedule(
    base: &MagnitudeCurve,
    cfg: &MagAugmentConfig,
    stream: &mut RngStream,
) -> Result<(MagnitudeCurve, bool)> {
    cfg.validate()?;
    let n = base.len();
    let j_cap = (n - 1) / 2;
    if j_cap == 0 && cfg.perturbations > 0 {
        return Ok((base.clone(), true));
    }
    let mut knots: Vec<(usize, f64)> = base.knots().to_vec();
    let mut values: Vec<f64> = base.values().to_vec();
    for round in 0..cfg.perturbations {
        let mut s = stream.derive(round as u64);
        let target = s.uniform(cfg.m_min, cfg.m_max)?;
        let j_raw = s.uniform_int(1, cfg.beta as i64)? as usize;
        let j = j_raw.min(j_cap);
        let p = s.uniform_int(j as i64, (n - 1 - j) as i64)? as usize;
        let (lo, hi) = (p - j, p + j);
        let v_lo = values[lo];
        let v_hi = values[hi];
        // Splice the three window knots in, dropping any interior knots the
        // window overwrote; endpoint knots keep their values because lo/hi
        // never cross 0 / n-1.
        knots.retain(|&(t, _)| t < lo || t > hi);
        knots.push((lo, v_lo));
        knots.push((p, target));
        knots.push((hi, v_hi));
        knots.sort_by_key(|&(t, _)| t);
        values[lo] = v_lo;
        values[p] = target;
        values[hi] = v_hi;
        for (off, v) in values[lo + 1..p].iter_mut().enumerate() {
            *v = v_lo + ((off + 1) as f64 / (p - lo) as f64) * (target - v_lo);
        }
        for (off, v) in values[p + 1..hi].iter_mut().enumerate() {
            *v = target + ((off + 1) as f64 / (hi - p) as f64) * (v_hi - target);
        }
    }
    // Rebuild through the validating constructor so the knot/value exactness
    // invariant is re-established from the final knot set.
    Ok((MagnitudeCurve::from_knots(knots, n)?, false))
}
