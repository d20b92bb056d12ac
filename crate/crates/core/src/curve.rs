//! Per-frame magnitude curves.

use crate::error::{Error, Result};

/// A normalized per-frame magnitude array m_t in [0, 1] together with the
/// knots it was interpolated from. The knot list is sorted by frame, starts
/// at frame 0 and ends at frame n-1, and `values` is exactly the piecewise
/// linear interpolation of the knots (segments evaluated in the numerically
/// stable form `a + u * (b - a)`).
#[derive(Debug, Clone, PartialEq)]
pub struct MagnitudeCurve {
    values: Vec<f64>,
    knots: Vec<(usize, f64)>,
}

impl MagnitudeCurve {
    /// Build a curve of length `n` from knots.
    pub fn from_knots(knots: Vec<(usize, f64)>, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::InvalidCurve(format!("need at least 2 frames, got {n}")));
        }
        if knots.is_empty() {
            return Err(Error::InvalidCurve("no knots".into()));
        }
        if knots.first().unwrap().0 != 0 || knots.last().unwrap().0 != n - 1 {
            return Err(Error::InvalidCurve(format!(
                "knots must span [0, {}], got [{}, {}]",
                n - 1,
                knots.first().unwrap().0,
                knots.last().unwrap().0
            )));
        }
        for w in knots.windows(2) {
            if w[1].0 <= w[0].0 {
                return Err(Error::InvalidCurve(format!(
                    "knot frames not strictly increasing: {} then {}",
                    w[0].0, w[1].0
                )));
            }
        }
        for &(t, m) in &knots {
            if !(0.0..=1.0).contains(&m) {
                return Err(Error::InvalidCurve(format!("knot ({t}, {m}) outside [0,1]")));
            }
        }
        let values = interpolate(&knots, n);
        Ok(MagnitudeCurve { values, knots })
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn knots(&self) -> &[(usize, f64)] {
        &self.knots
    }

    #[inline]
    pub fn at(&self, t: usize) -> f64 {
        self.values[t]
    }
}

/// Piecewise-linear evaluation of sorted knots over 0..n. Knot positions
/// take the knot value bit-exactly; only interior frames go through the
/// lerp formula.
fn interpolate(knots: &[(usize, f64)], n: usize) -> Vec<f64> {
    let mut values = vec![0.0; n];
    for &(t, v) in knots {
        values[t] = v;
    }
    for w in knots.windows(2) {
        let (a, va) = w[0];
        let (b, vb) = w[1];
        let span = (b - a) as f64;
        for (off, v) in values[a + 1..b].iter_mut().enumerate() {
            let u = (off + 1) as f64 / span;
            *v = va + u * (vb - va);
        }
    }
    values
}
