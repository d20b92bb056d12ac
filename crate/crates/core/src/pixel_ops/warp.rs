//! Affine warps with bilinear sampling.
//!
//! An op is described by its inverse map: for every output pixel (x, y) the
//! source location is `sx = m0 x + m1 y + m2`, `sy = m3 x + m4 y + m5`, in
//! f32. Sampling is bilinear over the four integer neighbours; neighbours
//! outside the frame contribute the fill value. The accumulation order is
//! fixed (p00, p10, p01, p11, left to right, f32, no FMA) so results are
//! reproducible; reference implementations must use the same expressions.
//!
//! Coefficient contract (all in f32, parameters converted from f64 first;
//! cx = (W-1)/2, cy = (H-1)/2):
//!
//! * rotate(d):      [c, s, cx - c*cx - s*cy, -s, c, cy + s*cx - c*cy]
//!   with (s, c) = sin/cos of d degrees in radians
//! * shear_x(f):     [1, f, -f*cy, 0, 1, 0]
//! * shear_y(f):     [1, 0, 0, f, 1, -f*cx]
//! * translate_x(d): [1, 0, -d, 0, 1, 0]
//! * translate_y(d): [1, 0, 0, 0, 1, -d]
//!
//! and the bilinear accumulator is literally
//! `(1-fx)*(1-fy)*p00 + fx*(1-fy)*p10 + (1-fx)*fy*p01 + fx*fy*p11`
//! rounded via `(acc + 0.5).floor()` and clamped to [0, 255].
//!
//! Rotation and shears are centred on the frame midpoint
//! ((W-1)/2, (H-1)/2) so the content pivots in place rather than about the
//! top-left corner.

/// Inverse affine map from output to source coordinates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineInverse {
    pub m: [f32; 6],
}

impl AffineInverse {
    pub const IDENTITY: AffineInverse = AffineInverse { m: [1.0, 0.0, 0.0, 0.0, 1.0, 0.0] };

    pub fn is_identity(&self) -> bool {
        self.m == Self::IDENTITY.m
    }

    /// Rotation of the content by `degrees` (positive rotates the sampled
    /// grid clockwise in image coordinates) about the frame centre.
    pub fn rotate(degrees: f64, width: usize, height: usize) -> Self {
        if degrees == 0.0 {
            return Self::IDENTITY;
        }
        let r = (degrees as f32).to_radians();
        let (s, c) = (r.sin(), r.cos());
        let cx = (width as f32 - 1.0) / 2.0;
        let cy = (height as f32 - 1.0) / 2.0;
        // src = c + R(-deg) (p - c)
        AffineInverse {
            m: [
                c,
                s,
                cx - c * cx - s * cy,
                -s,
                c,
                cy + s * cx - c * cy,
            ],
        }
    }

    /// Horizontal shear: source x slides by `factor * (y - cy)`.
    pub fn shear_x(factor: f64, width: usize, height: usize) -> Self {
        if factor == 0.0 {
            return Self::IDENTITY;
        }
        let _ = width;
        let f = factor as f32;
        let cy = (height as f32 - 1.0) / 2.0;
        AffineInverse { m: [1.0, f, -f * cy, 0.0, 1.0, 0.0] }
    }

    /// Vertical shear: source y slides by `factor * (x - cx)`.
    pub fn shear_y(factor: f64, width: usize, height: usize) -> Self {
        if factor == 0.0 {
            return Self::IDENTITY;
        }
        let _ = height;
        let f = factor as f32;
        let cx = (width as f32 - 1.0) / 2.0;
        AffineInverse { m: [1.0, 0.0, 0.0, f, 1.0, -f * cx] }
    }

    /// Translate content right by `dx` pixels.
    pub fn translate_x(dx: f64) -> Self {
        if dx == 0.0 {
            return Self::IDENTITY;
        }
        AffineInverse { m: [1.0, 0.0, -(dx as f32), 0.0, 1.0, 0.0] }
    }

    /// Translate content down by `dy` pixels.
    pub fn translate_y(dy: f64) -> Self {
        if dy == 0.0 {
            return Self::IDENTITY;
        }
        AffineInverse { m: [1.0, 0.0, 0.0, 0.0, 1.0, -(dy as f32)] }
    }

    #[inline]
    pub fn map(&self, x: f32, y: f32) -> (f32, f32) {
        (
            self.m[0] * x + self.m[1] * y + self.m[2],
            self.m[3] * x + self.m[4] * y + self.m[5],
        )
    }
}

/// Warp one frame. `src` and `dst` are H x W x C interleaved buffers.
pub fn warp_frame(
    src: &[u8],
    dst: &mut [u8],
    height: usize,
    width: usize,
    channels: usize,
    inv: &AffineInverse,
    fill: u8,
) {
    if inv.is_identity() {
        dst.copy_from_slice(src);
        return;
    }
    let fetch = |xi: i64, yi: i64, ch: usize| -> f32 {
        if xi < 0 || yi < 0 || xi >= width as i64 || yi >= height as i64 {
            fill as f32
        } else {
            src[(yi as usize * width + xi as usize) * channels + ch] as f32
        }
    };
    for y in 0..height {
        for x in 0..width {
            let (sx, sy) = inv.map(x as f32, y as f32);
            let x0 = sx.floor();
            let y0 = sy.floor();
            let fx = sx - x0;
            let fy = sy - y0;
            let xi = x0 as i64;
            let yi = y0 as i64;
            for ch in 0..channels {
                let p00 = fetch(xi, yi, ch);
                let p10 = fetch(xi + 1, yi, ch);
                let p01 = fetch(xi, yi + 1, ch);
                let p11 = fetch(xi + 1, yi + 1, ch);
                let acc = (1.0 - fx) * (1.0 - fy) * p00
                    + fx * (1.0 - fy) * p10
                    + (1.0 - fx) * fy * p01
                    + fx * fy * p11;
                let v = (acc + 0.5).floor();
                dst[(y * width + x) * channels + ch] =
                    if v <= 0.0 { 0 } else if v >= 255.0 { 255 } else { v as u8 };
            }
        }
    }
}
