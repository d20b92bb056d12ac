//! Single-clip temporal ops: reversal, self fade-in, and in-clip cut-mix.
//!
//! All three leave the label untouched (policy application records
//! weight_b = 0 for them).

use crate::clip::Clip;
use crate::error::{Error, Result};
use crate::rng::RngStream;

/// Area ratio of the static in-clip cut-mix box.
pub const VIDEO_CUTMIX_AREA: f64 = 0.2;

/// Reverse frame order: output frame t = input frame n-1-t.
pub fn video_reverse(clip: &Clip) -> Clip {
    let n = clip.n_frames();
    let mut out = clip.clone();
    for t in 0..n {
        out.frame_mut(t).copy_from_slice(clip.frame(n - 1 - t));
    }
    out
}

/// Mixing ratio for the self fade: t/n rising to the middle frame, then
/// (n-t)/n falling back, with 0-based t. Always in [0, 0.5], zero at t=0,
/// maximal at floor(n/2).
pub fn fade_lambda(t: usize, n: usize) -> Result<f64> {
    if t >= n {
        return Err(Error::FrameOutOfRange { t, n });
    }
    let tf = t as f64;
    let nf = n as f64;
    Ok(if tf <= nf / 2.0 { tf / nf } else { (nf - tf) / nf })
}

/// Blend each frame with its mirror: out_t = (1 - lambda_t) x_t +
/// lambda_t x_{n-1-t}, computed in f64 and rounded half-up. With 0-based
/// indices the partner of frame t is n-1-t; at odd n the middle frame
/// pairs with itself.
pub fn frame_fade_in(clip: &Clip) -> Result<Clip> {
    let n = clip.n_frames();
    let mut out = clip.clone();
    let frame_len = clip.frame_len();
    crate::par::for_each_frame(out.data_mut(), frame_len, |t, dst| {
        let lambda = fade_lambda(t, n).expect("t < n by construction");
        if lambda == 0.0 {
            return;
        }
        let a = clip.frame(t);
        let b = clip.frame(n - 1 - t);
        for i in 0..frame_len {
            let v = (1.0 - lambda) * a[i] as f64 + lambda * b[i] as f64;
            dst[i] = crate::pixel_ops::point::round_sat(v);
        }
    });
    Ok(out)
}

/// Replace one static box (0.2 of the frame area, uniform position) in
/// every frame with the co-located pixels of a uniformly shuffled frame
/// order. Box side = round(sqrt(0.2) * side); fails when a side would
/// round to zero.
pub fn video_cutmix(clip: &Clip, stream: &mut RngStream) -> Result<Clip> {
    let (n, h, w) = (clip.n_frames(), clip.height(), clip.width());
    let c = clip.channels();
    let scale = VIDEO_CUTMIX_AREA.sqrt();
    let bw = (scale * w as f64 + 0.5).floor() as usize;
    let bh = (scale * h as f64 + 0.5).floor() as usize;
    if bw == 0 || bh == 0 {
        return Err(Error::DegenerateRegion(format!(
            "cut-mix box for {w}x{h} frame has a zero side"
        )));
    }
    let mut shuffle_stream = stream.derive(0);
    let sigma = shuffle_stream.permutation(n);
    let mut box_stream = stream.derive(1);
    let x0 = box_stream.uniform_int(0, (w - bw) as i64)? as usize;
    let y0 = box_stream.uniform_int(0, (h - bh) as i64)? as usize;

    let mut out = clip.clone();
    let frame_len = clip.frame_len();
    let row = w * c;
    crate::par::for_each_frame(out.data_mut(), frame_len, |t, dst| {
        let src = clip.frame(sigma[t]);
        for y in y0..y0 + bh {
            let start = y * row + x0 * c;
            let end = start + bw * c;
            dst[start..end].copy_from_slice(&src[start..end]);
        }
    });
    Ok(out)
}

/// The video_cutmix box geometry for a frame size, exposed for tests and
/// previews: (box_w, box_h).
pub fn video_cutmix_box(width: usize, height: usize) -> (usize, usize) {
    let scale = VIDEO_CUTMIX_AREA.sqrt();
    (
        (scale * width as f64 + 0.5).floor() as usize,
        (scale * height as f64 + 0.5).floor() as usize,
    )
}
