//! Seeded, splittable random streams.
//!
//! Every piece of randomness in the crate flows through [`RngStream`], a
//! counter-based generator: a stream is identified by a 64-bit key derived
//! from the root seed and a path of integer labels, and the i-th draw is a
//! pure function of (key, i). Deriving a child stream reads only the key,
//! never the draw counter, so derivation order and interleaving with draws
//! do not matter. That is what makes per-clip / per-op streams stable under
//! parallel scheduling.
//!
//! Raw `u64` draws and uniforms are pure integer/float arithmetic and are
//! bit-identical everywhere. Beta draws go through `ln`/`cbrt`, whose last
//! ulp may differ between libm builds; on any one platform they are exactly
//! reproducible.

use crate::error::{Error, Result};

/// Weyl increment from splitmix64 (odd, so multiplication by it is a
/// bijection on u64).
const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;

/// splitmix64 output mixer; bijective on u64.
#[inline]
fn mix(mut z: u64) -> u64 {
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// A deterministic random stream addressed by (seed, derivation path).
#[derive(Debug, Clone)]
pub struct RngStream {
    key: u64,
    counter: u64,
    seed: u64,
    path: Vec<u64>,
}

impl RngStream {
    /// Root stream for a 64-bit seed.
    pub fn new(seed: u64) -> Self {
        RngStream {
            key: mix(seed ^ GOLDEN),
            counter: 0,
            seed,
            path: Vec::new(),
        }
    }

    /// Derive an independent child stream. For a fixed parent the map
    /// `label -> child key` is a composition of bijections, hence injective;
    /// distinct labels give distinct streams. Derivation ignores the draw
    /// counter, so children are identical no matter how many draws the
    /// parent has made.
    pub fn derive(&self, label: u64) -> RngStream {
        let mut path = self.path.clone();
        path.push(label);
        RngStream {
            key: mix(self.key ^ label.wrapping_mul(GOLDEN) ^ 0x5851_f42d_4c95_7f2d),
            counter: 0,
            seed: self.seed,
            path,
        }
    }

    /// Root seed this stream descends from.
    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Derivation labels from the root, in order.
    pub fn path(&self) -> &[u64] {
        &self.path
    }

    /// Next raw draw: splitmix64 stream positioned at the internal counter.
    pub fn next_u64(&mut self) -> u64 {
        self.counter = self.counter.wrapping_add(1);
        mix(self.key.wrapping_add(self.counter.wrapping_mul(GOLDEN)))
    }

    /// Uniform in [0, 1) with 53 random bits.
    #[inline]
    pub fn unit(&mut self) -> f64 {
        (self.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
    }

    /// Uniform real in [lo, hi); returns exactly `lo` when lo == hi.
    pub fn uniform(&mut self, lo: f64, hi: f64) -> Result<f64> {
        if lo > hi {
            return Err(Error::EmptyRange { lo, hi });
        }
        Ok(lo + self.unit() * (hi - lo))
    }

    /// Inclusive integer uniform over [lo, hi], via floor(uniform(lo, hi+1)).
    pub fn uniform_int(&mut self, lo: i64, hi: i64) -> Result<i64> {
        if lo > hi {
            return Err(Error::EmptyRange {
                lo: lo as f64,
                hi: hi as f64,
            });
        }
        let v = self.uniform(lo as f64, (hi + 1) as f64)?;
        Ok((v.floor() as i64).min(hi))
    }

    /// Random sign, +1 or -1 with equal probability.
    pub fn sign(&mut self) -> f64 {
        if self.next_u64() & 1 == 0 {
            1.0
        } else {
            -1.0
        }
    }

    /// Uniform permutation of 0..n (Fisher-Yates).
    pub fn permutation(&mut self, n: usize) -> Vec<usize> {
        let mut p: Vec<usize> = (0..n).collect();
        for i in (1..n).rev() {
            let j = self
                .uniform_int(0, i as i64)
                .expect("non-empty range") as usize;
            p.swap(i, j);
        }
        p
    }

    /// Standard normal via Box-Muller.
    fn normal(&mut self) -> f64 {
        let u1 = 1.0 - self.unit(); // (0, 1], keeps ln finite
        let u2 = self.unit();
        (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
    }

    /// Gamma(shape, 1) via Marsaglia-Tsang, with the boost for shape < 1.
    fn gamma(&mut self, shape: f64) -> f64 {
        if shape < 1.0 {
            let u = 1.0 - self.unit();
            return self.gamma(shape + 1.0) * u.powf(1.0 / shape);
        }
        let d = shape - 1.0 / 3.0;
        let c = 1.0 / (9.0 * d).sqrt();
        loop {
            let x = self.normal();
            let t = 1.0 + c * x;
            if t <= 0.0 {
                continue;
            }
            let v = t * t * t;
            let u = self.unit();
            if u < 1.0 - 0.0331 * (x * x) * (x * x) {
                return d * v;
            }
            if u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
                return d * v;
            }
        }
    }

    /// Symmetric Beta(alpha, alpha) draw in [0, 1].
    pub fn beta(&mut self, alpha: f64) -> Result<f64> {
        if !alpha.is_finite() || alpha <= 0.0 {
            return Err(Error::InvalidAlpha(alpha));
        }
        let g1 = self.gamma(alpha);
        let g2 = self.gamma(alpha);
        let sum = g1 + g2;
        if sum == 0.0 {
            // Both gammas underflowed; the symmetric midpoint is the only
            // unbiased answer.
            return Ok(0.5);
        }
        Ok(g1 / sum)
    }
}
