//! The per-frame pixel operation set and its magnitude-scheduled
//! application.
//!
//! Magnitudes are normalized to [0, 1] and de-normalized per op by
//! [`param_map`]; the ranges follow the canonical RandAugment conventions
//! (rotation up to 30 degrees, shear up to 0.3, translation up to 0.3 of
//! the frame side, enhancement factors in [0.1, 1.9], posterise down to 4
//! bits, solarise threshold sweeping 256..0). A magnitude of 0 is always
//! the identity, enforced by short-circuiting zero-parameter kernels to a
//! plain copy.

pub mod point;
pub mod warp;

use crate::clip::Clip;
use crate::curve::MagnitudeCurve;
use crate::error::{Error, Result};
use crate::rng::RngStream;
use warp::AffineInverse;

/// Fill value for samples that fall outside the frame during warps and for
/// cut-out regions: mid-gray minimizes brightness bias.
pub const FILL_VALUE: u8 = 128;

/// Every operation selectable by a policy. The first fourteen are the
/// classic image set, `ColourInvert` joins for the linear-schedule
/// variants, and the last three are whole-clip temporal ops that live in
/// [`crate::single_video`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OpKind {
    Identity,
    Rotate,
    Posterise,
    Equalise,
    Sharpness,
    TranslateX,
    TranslateY,
    Colour,
    AutoContrast,
    Solarise,
    Contrast,
    Brightness,
    ShearX,
    ShearY,
    ColourInvert,
    VideoReverse,
    FrameFadeIn,
    VideoCutMix,
}

pub const ALL_OPS: [OpKind; 18] = [
    OpKind::Identity,
    OpKind::Rotate,
    OpKind::Posterise,
    OpKind::Equalise,
    OpKind::Sharpness,
    OpKind::TranslateX,
    OpKind::TranslateY,
    OpKind::Colour,
    OpKind::AutoContrast,
    OpKind::Solarise,
    OpKind::Contrast,
    OpKind::Brightness,
    OpKind::ShearX,
    OpKind::ShearY,
    OpKind::ColourInvert,
    OpKind::VideoReverse,
    OpKind::FrameFadeIn,
    OpKind::VideoCutMix,
];

/// The fourteen-op image set.
pub const BASE_OPS: [OpKind; 14] = [
    OpKind::Identity,
    OpKind::Rotate,
    OpKind::Posterise,
    OpKind::Equalise,
    OpKind::Sharpness,
    OpKind::TranslateX,
    OpKind::TranslateY,
    OpKind::Colour,
    OpKind::AutoContrast,
    OpKind::Solarise,
    OpKind::Contrast,
    OpKind::Brightness,
    OpKind::ShearX,
    OpKind::ShearY,
];

impl OpKind {
    /// False exactly for the seven ops applied evenly across the sample.
    pub fn has_magnitude(self) -> bool {
        !matches!(
            self,
            OpKind::Identity
                | OpKind::AutoContrast
                | OpKind::Equalise
                | OpKind::ColourInvert
                | OpKind::VideoReverse
                | OpKind::FrameFadeIn
                | OpKind::VideoCutMix
        )
    }

    /// Whole-clip ops that cannot be applied frame by frame.
    pub fn is_temporal(self) -> bool {
        matches!(self, OpKind::VideoReverse | OpKind::FrameFadeIn | OpKind::VideoCutMix)
    }

    /// Ops whose parameter takes a random per-clip sign.
    pub fn is_signed(self) -> bool {
        matches!(
            self,
            OpKind::Rotate
                | OpKind::TranslateX
                | OpKind::TranslateY
                | OpKind::Colour
                | OpKind::Contrast
                | OpKind::Brightness
                | OpKind::Sharpness
                | OpKind::ShearX
                | OpKind::ShearY
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            OpKind::Identity => "identity",
            OpKind::Rotate => "rotate",
            OpKind::Posterise => "posterise",
            OpKind::Equalise => "equalise",
            OpKind::Sharpness => "sharpness",
            OpKind::TranslateX => "translate_x",
            OpKind::TranslateY => "translate_y",
            OpKind::Colour => "colour",
            OpKind::AutoContrast => "auto_contrast",
            OpKind::Solarise => "solarise",
            OpKind::Contrast => "contrast",
            OpKind::Brightness => "brightness",
            OpKind::ShearX => "shear_x",
            OpKind::ShearY => "shear_y",
            OpKind::ColourInvert => "colour_invert",
            OpKind::VideoReverse => "video_reverse",
            OpKind::FrameFadeIn => "frame_fade_in",
            OpKind::VideoCutMix => "video_cutmix",
        }
    }

    pub fn parse(s: &str) -> Result<OpKind> {
        ALL_OPS
            .iter()
            .copied()
            .find(|op| op.name() == s)
            .ok_or_else(|| Error::InvalidPolicy(format!("unknown op \"{s}\"")))
    }
}

impl std::fmt::Display for OpKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// A de-normalized per-frame parameter in the op's own units.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ResolvedParam {
    Degrees(f64),
    ShearFactor(f64),
    TranslatePixels(f64),
    EnhanceFactor(f64),
    KeepBits(u32),
    /// 0..=256; 256 means no pixel is inverted.
    SolariseThreshold(u32),
}

/// De-normalize magnitude `m` for `op`. `sign` is +-1 and applies to the
/// signed ops only. Posterise keeps 8 - round(4 m) bits; solarise inverts
/// values >= round(256 (1 - m)), so m = 0 touches nothing and m = 1
/// inverts everything.
pub fn param_map(op: OpKind, m: f64, sign: f64, width: usize, height: usize) -> Result<ResolvedParam> {
    if !op.has_magnitude() {
        return Err(Error::MagnitudeFreeOp { op: op.name() });
    }
    if !(0.0..=1.0).contains(&m) {
        return Err(Error::MagnitudeOutOfRange(m));
    }
    Ok(match op {
        OpKind::Rotate => ResolvedParam::Degrees(sign * m * 30.0),
        OpKind::ShearX | OpKind::ShearY => ResolvedParam::ShearFactor(sign * m * 0.3),
        OpKind::TranslateX => ResolvedParam::TranslatePixels(sign * m * 0.3 * width as f64),
        OpKind::TranslateY => ResolvedParam::TranslatePixels(sign * m * 0.3 * height as f64),
        OpKind::Colour | OpKind::Contrast | OpKind::Brightness | OpKind::Sharpness => {
            ResolvedParam::EnhanceFactor(1.0 + sign * m * 0.9)
        }
        OpKind::Posterise => ResolvedParam::KeepBits(8 - (4.0 * m + 0.5).floor() as u32),
        OpKind::Solarise => ResolvedParam::SolariseThreshold((256.0 * (1.0 - m) + 0.5).floor() as u32),
        _ => unreachable!("temporal and magnitude-free ops rejected above"),
    })
}

/// Apply one non-temporal op to every frame, frame t using magnitude
/// curve[t]. The sign of signed ops is drawn once per clip from `stream`
/// before any frame is processed, so frames can run in parallel.
pub fn apply_pixel_op(
    clip: &Clip,
    op: OpKind,
    curve: &MagnitudeCurve,
    stream: &mut RngStream,
) -> Result<Clip> {
    if op.is_temporal() {
        return Err(Error::TemporalOp { op: op.name() });
    }
    if curve.len() != clip.n_frames() {
        return Err(Error::CurveLength { curve: curve.len(), clip: clip.n_frames() });
    }
    if op == OpKind::Identity {
        return Ok(clip.clone());
    }
    let sign = if op.is_signed() { stream.sign() } else { 1.0 };
    let (h, w, c) = (clip.height(), clip.width(), clip.channels());
    let params: Option<Vec<ResolvedParam>> = if op.has_magnitude() {
        Some(
            curve
                .values()
                .iter()
                .map(|&m| param_map(op, m, sign, w, h))
                .collect::<Result<_>>()?,
        )
    } else {
        None
    };

    let mut out = clip.clone();
    let frame_len = clip.frame_len();
    crate::par::for_each_frame(out.data_mut(), frame_len, |t, dst| {
        let src = clip.frame(t);
        match op {
            OpKind::ColourInvert => point::invert(src, dst),
            OpKind::Equalise => point::equalise(src, dst, c),
            OpKind::AutoContrast => point::autocontrast(src, dst, c),
            _ => apply_param_frame(op, params.as_ref().unwrap()[t], src, dst, h, w, c),
        }
    });
    Ok(out)
}

fn apply_param_frame(
    op: OpKind,
    param: ResolvedParam,
    src: &[u8],
    dst: &mut [u8],
    h: usize,
    w: usize,
    c: usize,
) {
    match (op, param) {
        (OpKind::Rotate, ResolvedParam::Degrees(d)) => {
            warp::warp_frame(src, dst, h, w, c, &AffineInverse::rotate(d, w, h), FILL_VALUE)
        }
        (OpKind::ShearX, ResolvedParam::ShearFactor(s)) => {
            warp::warp_frame(src, dst, h, w, c, &AffineInverse::shear_x(s, w, h), FILL_VALUE)
        }
        (OpKind::ShearY, ResolvedParam::ShearFactor(s)) => {
            warp::warp_frame(src, dst, h, w, c, &AffineInverse::shear_y(s, w, h), FILL_VALUE)
        }
        (OpKind::TranslateX, ResolvedParam::TranslatePixels(d)) => {
            warp::warp_frame(src, dst, h, w, c, &AffineInverse::translate_x(d), FILL_VALUE)
        }
        (OpKind::TranslateY, ResolvedParam::TranslatePixels(d)) => {
            warp::warp_frame(src, dst, h, w, c, &AffineInverse::translate_y(d), FILL_VALUE)
        }
        (OpKind::Posterise, ResolvedParam::KeepBits(b)) => point::posterise(src, dst, b),
        (OpKind::Solarise, ResolvedParam::SolariseThreshold(t)) => point::solarise(src, dst, t),
        (OpKind::Brightness, ResolvedParam::EnhanceFactor(f)) => point::brightness(src, dst, f),
        (OpKind::Colour, ResolvedParam::EnhanceFactor(f)) => point::colour(src, dst, c, f),
        (OpKind::Contrast, ResolvedParam::EnhanceFactor(f)) => point::contrast(src, dst, c, f),
        (OpKind::Sharpness, ResolvedParam::EnhanceFactor(f)) => point::sharpness(src, dst, h, w, c, f),
        _ => unreachable!("op/param mismatch"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schedules::{linear_schedule, static_schedule};

    fn test_clip() -> Clip {
        Clip::from_fn(4, 12, 10, 3, |t, y, x, ch| ((t * 61 + y * 17 + x * 7 + ch * 3) % 256) as u8).unwrap()
    }

    #[test]
    fn op_metadata_counts() {
        assert_eq!(ALL_OPS.len(), 18);
        assert_eq!(BASE_OPS.len(), 14);
        let mag_free: Vec<OpKind> = ALL_OPS.iter().copied().filter(|o| !o.has_magnitude()).collect();
        assert_eq!(
            mag_free,
            vec![
                OpKind::Identity,
                OpKind::Equalise,
                OpKind::AutoContrast,
                OpKind::ColourInvert,
                OpKind::VideoReverse,
                OpKind::FrameFadeIn,
                OpKind::VideoCutMix
            ]
        );
        assert_eq!(ALL_OPS.iter().filter(|o| o.is_temporal()).count(), 3);
    }

    #[test]
    fn name_roundtrip() {
        for op in ALL_OPS {
            assert_eq!(OpKind::parse(op.name()).unwrap(), op);
        }
        assert!(OpKind::parse("sepia").is_err());
    }

    #[test]
    fn param_map_endpoints() {
        let rot = param_map(OpKind::Rotate, 1.0, 1.0, 10, 10).unwrap();
        assert_eq!(rot, ResolvedParam::Degrees(30.0));
        assert_eq!(param_map(OpKind::Posterise, 0.0, 1.0, 10, 10).unwrap(), ResolvedParam::KeepBits(8));
        assert_eq!(param_map(OpKind::Posterise, 1.0, 1.0, 10, 10).unwrap(), ResolvedParam::KeepBits(4));
        assert_eq!(
            param_map(OpKind::Brightness, 0.0, 1.0, 10, 10).unwrap(),
            ResolvedParam::EnhanceFactor(1.0)
        );
        assert_eq!(
            param_map(OpKind::Solarise, 0.0, 1.0, 10, 10).unwrap(),
            ResolvedParam::SolariseThreshold(256)
        );
        assert_eq!(
            param_map(OpKind::Solarise, 1.0, 1.0, 10, 10).unwrap(),
            ResolvedParam::SolariseThreshold(0)
        );
        assert_eq!(
            param_map(OpKind::TranslateX, 1.0, -1.0, 100, 50).unwrap(),
            ResolvedParam::TranslatePixels(-30.0)
        );
        assert!(param_map(OpKind::Identity, 0.5, 1.0, 10, 10).is_err());
        assert!(param_map(OpKind::Rotate, 1.5, 1.0, 10, 10).is_err());
    }

    // The map is linear in m for the continuous ops.
    #[test]
    fn param_map_is_linear_in_magnitude() {
        for i in 0..=10 {
            let m = i as f64 / 10.0;
            match param_map(OpKind::Rotate, m, 1.0, 10, 10).unwrap() {
                ResolvedParam::Degrees(d) => assert!((d - 30.0 * m).abs() < 1e-12),
                _ => unreachable!(),
            }
            match param_map(OpKind::ShearX, m, -1.0, 10, 10).unwrap() {
                ResolvedParam::ShearFactor(s) => assert!((s + 0.3 * m).abs() < 1e-12),
                _ => unreachable!(),
            }
        }
    }

    #[test]
    fn identity_returns_clip_unchanged() {
        let clip = test_clip();
        let curve = static_schedule(0.7, 4).unwrap();
        let out = apply_pixel_op(&clip, OpKind::Identity, &curve, &mut RngStream::new(1)).unwrap();
        assert_eq!(out, clip);
    }

    #[test]
    fn colour_invert_inverts_every_pixel() {
        let clip = test_clip();
        let curve = static_schedule(0.0, 4).unwrap();
        let out = apply_pixel_op(&clip, OpKind::ColourInvert, &curve, &mut RngStream::new(1)).unwrap();
        for (a, b) in out.data().iter().zip(clip.data()) {
            assert_eq!(*a, 255 - *b);
        }
    }

    #[test]
    fn zero_curve_is_identity_for_every_magnitude_op() {
        let clip = test_clip();
        let zero = static_schedule(0.0, 4).unwrap();
        for op in ALL_OPS.iter().copied().filter(|o| o.has_magnitude() && !o.is_temporal()) {
            let out = apply_pixel_op(&clip, op, &zero, &mut RngStream::new(3)).unwrap();
            assert_eq!(out, clip, "{op} at m=0 must be the identity");
        }
    }

    #[test]
    fn temporal_ops_are_rejected() {
        let clip = test_clip();
        let curve = static_schedule(0.5, 4).unwrap();
        for op in [OpKind::VideoReverse, OpKind::FrameFadeIn, OpKind::VideoCutMix] {
            assert!(apply_pixel_op(&clip, op, &curve, &mut RngStream::new(0)).is_err());
        }
    }

    #[test]
    fn curve_length_mismatch_is_rejected() {
        let clip = test_clip();
        let curve = static_schedule(0.5, 5).unwrap();
        assert!(apply_pixel_op(&clip, OpKind::Rotate, &curve, &mut RngStream::new(0)).is_err());
    }

    // Mutating frame t' != t must not change output frame t.
    #[test]
    fn frame_locality() {
        let clip = test_clip();
        let curve = linear_schedule(0.0, 1.0, 4).unwrap();
        for op in [OpKind::Rotate, OpKind::Brightness, OpKind::Equalise, OpKind::Solarise] {
            let base = apply_pixel_op(&clip, op, &curve, &mut RngStream::new(9)).unwrap();
            let mut poked = clip.clone();
            poked.frame_mut(3).iter_mut().for_each(|v| *v = v.wrapping_add(101));
            let out = apply_pixel_op(&poked, op, &curve, &mut RngStream::new(9)).unwrap();
            for t in 0..3 {
                assert_eq!(out.frame(t), base.frame(t), "{op} frame {t} leaked");
            }
        }
    }

    #[test]
    fn sign_is_constant_across_frames() {
        // A descending curve with TranslateX: if the sign were redrawn per
        // frame the shift direction would flip somewhere; verify via the
        // fill column pattern staying on one side for all frames.
        let clip = Clip::filled(6, 10, 16, 1, 210).unwrap();
        let curve = static_schedule(1.0, 6).unwrap();
        for seed in 0..20 {
            let out = apply_pixel_op(&clip, OpKind::TranslateX, &curve, &mut RngStream::new(seed)).unwrap();
            let left_filled: Vec<bool> = (0..6).map(|t| out.frame(t)[0] == FILL_VALUE).collect();
            assert!(left_filled.iter().all(|&v| v) || left_filled.iter().all(|&v| !v));
        }
    }
}
