//! Point and histogram kernels operating on a single frame.
//!
//! Arithmetic contract (mirrored by reference implementations in tests):
//! float blends are computed in f64 as `base + factor * (value - base)` and
//! rounded half-up via `(x + 0.5).floor()` before clamping to [0, 255];
//! luminance of an RGB pixel is the integer `(299 R + 587 G + 114 B + 500)
//! / 1000`; histogram ops build their lookup tables per frame and per
//! channel with pure integer arithmetic.

#[inline]
pub fn round_sat(x: f64) -> u8 {
    let r = (x + 0.5).floor();
    if r <= 0.0 {
        0
    } else if r >= 255.0 {
        255
    } else {
        r as u8
    }
}

#[inline]
pub fn luma(r: u8, g: u8, b: u8) -> u8 {
    ((299 * r as u32 + 587 * g as u32 + 114 * b as u32 + 500) / 1000) as u8
}

fn apply_lut(src: &[u8], dst: &mut [u8], lut: &[u8; 256]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = lut[s as usize];
    }
}

/// Per-channel LUT application for interleaved data.
fn apply_lut_channel(src: &[u8], dst: &mut [u8], channels: usize, ch: usize, lut: &[u8; 256]) {
    let mut i = ch;
    while i < src.len() {
        dst[i] = lut[src[i] as usize];
        i += channels;
    }
}

pub fn invert(src: &[u8], dst: &mut [u8]) {
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = 255 - s;
    }
}

/// Keep the top `bits` bits of every channel value. `bits` = 8 is a copy.
pub fn posterise(src: &[u8], dst: &mut [u8], bits: u32) {
    if bits >= 8 {
        dst.copy_from_slice(src);
        return;
    }
    let mask = (0xffu16 << (8 - bits)) as u8;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = s & mask;
    }
}

/// Invert every value >= `threshold`. A threshold of 256 touches nothing;
/// threshold 0 inverts everything (and twice is the identity).
pub fn solarise(src: &[u8], dst: &mut [u8], threshold: u32) {
    if threshold > 255 {
        dst.copy_from_slice(src);
        return;
    }
    let t = threshold as u8;
    for (d, &s) in dst.iter_mut().zip(src) {
        *d = if s >= t { 255 - s } else { s };
    }
}

/// Brightness: blend toward black, out = factor * value.
pub fn brightness(src: &[u8], dst: &mut [u8], factor: f64) {
    if factor == 1.0 {
        dst.copy_from_slice(src);
        return;
    }
    let mut lut = [0u8; 256];
    for (i, l) in lut.iter_mut().enumerate() {
        *l = round_sat(factor * i as f64);
    }
    apply_lut(src, dst, &lut);
}

/// Colour (saturation): blend each channel toward the pixel's luminance.
/// Identity for single-channel frames.
pub fn colour(src: &[u8], dst: &mut [u8], channels: usize, factor: f64) {
    if channels == 1 || factor == 1.0 {
        dst.copy_from_slice(src);
        return;
    }
    for (d, s) in dst.chunks_exact_mut(3).zip(src.chunks_exact(3)) {
        let g = luma(s[0], s[1], s[2]) as f64;
        for ch in 0..3 {
            d[ch] = round_sat(g + factor * (s[ch] as f64 - g));
        }
    }
}

/// Contrast: blend every channel toward the frame's mean luminance
/// (mean kept in f64, no intermediate rounding).
pub fn contrast(src: &[u8], dst: &mut [u8], channels: usize, factor: f64) {
    if factor == 1.0 {
        dst.copy_from_slice(src);
        return;
    }
    let mut acc: u64 = 0;
    let pixels = src.len() / channels;
    if channels == 1 {
        for &s in src {
            acc += s as u64;
        }
    } else {
        for s in src.chunks_exact(3) {
            acc += luma(s[0], s[1], s[2]) as u64;
        }
    }
    let mean = acc as f64 / pixels as f64;
    let mut lut = [0u8; 256];
    for (i, l) in lut.iter_mut().enumerate() {
        *l = round_sat(mean + factor * (i as f64 - mean));
    }
    apply_lut(src, dst, &lut);
}

/// Sharpness: blend between a 3x3 smoothed frame (kernel 1 1 1 / 1 5 1 /
/// 1 1 1 over 13, border rows/columns copied unsmoothed) and the original.
pub fn sharpness(src: &[u8], dst: &mut [u8], height: usize, width: usize, channels: usize, factor: f64) {
    if factor == 1.0 {
        dst.copy_from_slice(src);
        return;
    }
    let row = width * channels;
    for y in 0..height {
        for x in 0..width {
            for ch in 0..channels {
                let idx = y * row + x * channels + ch;
                let v = src[idx] as f64;
                let smooth = if y == 0 || y + 1 == height || x == 0 || x + 1 == width {
                    v
                } else {
                    let mut sum: u32 = 0;
                    for dy in -1i64..=1 {
                        for dx in -1i64..=1 {
                            let w: u32 = if dy == 0 && dx == 0 { 5 } else { 1 };
                            let j = ((y as i64 + dy) as usize) * row + ((x as i64 + dx) as usize) * channels + ch;
                            sum += w * src[j] as u32;
                        }
                    }
                    ((sum as f64 / 13.0) + 0.5).floor()
                };
                dst[idx] = round_sat(smooth + factor * (v - smooth));
            }
        }
    }
}

/// Histogram equalization per channel (integer LUT construction).
pub fn equalise(src: &[u8], dst: &mut [u8], channels: usize) {
    for ch in 0..channels {
        let mut hist = [0u32; 256];
        let mut i = ch;
        while i < src.len() {
            hist[src[i] as usize] += 1;
            i += channels;
        }
        let lut = equalise_lut(&hist);
        apply_lut_channel(src, dst, channels, ch, &lut);
    }
}

fn equalise_lut(hist: &[u32; 256]) -> [u8; 256] {
    let mut identity = [0u8; 256];
    for (i, l) in identity.iter_mut().enumerate() {
        *l = i as u8;
    }
    let nonzero: Vec<u32> = hist.iter().copied().filter(|&h| h > 0).collect();
    if nonzero.len() <= 1 {
        return identity;
    }
    let total: u64 = hist.iter().map(|&h| h as u64).sum();
    let step = (total - *nonzero.last().unwrap() as u64) / 255;
    if step == 0 {
        return identity;
    }
    let mut lut = [0u8; 256];
    let mut n = step / 2;
    for i in 0..256 {
        lut[i] = (n / step).min(255) as u8;
        n += hist[i] as u64;
    }
    lut
}

/// Remap each channel so its darkest value goes to 0 and brightest to 255.
pub fn autocontrast(src: &[u8], dst: &mut [u8], channels: usize) {
    for ch in 0..channels {
        let mut lo = 255u8;
        let mut hi = 0u8;
        let mut i = ch;
        while i < src.len() {
            lo = lo.min(src[i]);
            hi = hi.max(src[i]);
            i += channels;
        }
        let mut lut = [0u8; 256];
        if hi <= lo {
            for (i, l) in lut.iter_mut().enumerate() {
                *l = i as u8;
            }
        } else {
            let scale = 255.0 / (hi - lo) as f64;
            for (i, l) in lut.iter_mut().enumerate() {
                *l = round_sat((i as f64 - lo as f64) * scale);
            }
        }
        apply_lut_channel(src, dst, channels, ch, &lut);
    }
}
