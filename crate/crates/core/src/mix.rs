//! Two-clip delete, cut-and-paste, and blend operators with soft labels.
//!
//! Every kind is sampled into a [`MixPlan`] first (region scale, temporal
//! extent, box trajectory, lambda schedule) and then applied; the plan is
//! public so tests and previews can inspect or pin the sampled geometry.
//! Sub-draws use fixed derivation labels, so a static kind and its floating
//! counterpart read identical values for the draws they share — pinning a
//! floating plan's endpoints reproduces the static kind bit-exactly.
//!
//! Weights are exact signal fractions: replaced-pixel counts are integers,
//! fractions are single f64 divisions of integer products, and blended
//! kinds multiply that fraction by the schedule's mean lambda once.
//! The blend expression is `(1 - lambda) * a + lambda * b` in f64, rounded
//! half-up.

use crate::clip::{Clip, LabelMix};
use crate::error::{Error, Result};
use crate::geometry::BoxTrajectory;
use crate::pixel_ops::point::round_sat;
use crate::pixel_ops::FILL_VALUE;
use crate::rng::RngStream;

/// Derivation labels for the sub-draws of one mix application.
const ROLE_SCALE: u64 = 0;
const ROLE_EXTENT: u64 = 1;
const ROLE_TRAJECTORY: u64 = 2;
const ROLE_LAMBDA: u64 = 3;
/// Within a trajectory: start/end center draws.
const TRAJ_START: u64 = 0;
const TRAJ_END: u64 = 1;
/// Within a lambda schedule: base draw and endpoint spread.
const LAMBDA_BASE: u64 = 0;
const LAMBDA_SPREAD: u64 = 1;

/// The sixteen delete / cut-and-paste / blend kinds. `Float` variants (and
/// `FadeMixUp`, the floating form of `MixUp`) drift their box center and/or
/// mixing ratio linearly across the clip; the rest are static.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum MixKind {
    CutOut,
    CubeCutOut,
    CutMix,
    CubeCutMix,
    MixUp,
    FadeMixUp,
    CutMixUp,
    CubeCutMixUp,
    FrameCutMixUp,
    FloatCutOut,
    FloatCubeCutOut,
    FloatCutMix,
    FloatCubeCutMix,
    FloatCutMixUp,
    FloatCubeCutMixUp,
    FloatFrameCutMixUp,
}

pub const ALL_MIX_KINDS: [MixKind; 16] = [
    MixKind::CutOut,
    MixKind::CubeCutOut,
    MixKind::CutMix,
    MixKind::CubeCutMix,
    MixKind::MixUp,
    MixKind::FadeMixUp,
    MixKind::CutMixUp,
    MixKind::CubeCutMixUp,
    MixKind::FrameCutMixUp,
    MixKind::FloatCutOut,
    MixKind::FloatCubeCutOut,
    MixKind::FloatCutMix,
    MixKind::FloatCubeCutMix,
    MixKind::FloatCutMixUp,
    MixKind::FloatCubeCutMixUp,
    MixKind::FloatFrameCutMixUp,
];

impl MixKind {
    /// CutOut variants fill with gray and need no second clip.
    pub fn needs_partner(self) -> bool {
        !matches!(
            self,
            MixKind::CutOut | MixKind::CubeCutOut | MixKind::FloatCutOut | MixKind::FloatCubeCutOut
        )
    }

    /// Kinds that carve a spatial box.
    pub fn uses_box(self) -> bool {
        !matches!(
            self,
            MixKind::MixUp
                | MixKind::FadeMixUp
                | MixKind::FrameCutMixUp
                | MixKind::FloatFrameCutMixUp
        )
    }

    /// Cube kinds restrict the box to a temporal sub-range.
    pub fn is_cube(self) -> bool {
        matches!(
            self,
            MixKind::CubeCutOut
                | MixKind::CubeCutMix
                | MixKind::CubeCutMixUp
                | MixKind::FloatCubeCutOut
                | MixKind::FloatCubeCutMix
                | MixKind::FloatCubeCutMixUp
        )
    }

    /// Band kinds blend whole frames over a temporal sub-range.
    pub fn is_band(self) -> bool {
        matches!(self, MixKind::FrameCutMixUp | MixKind::FloatFrameCutMixUp)
    }

    /// Kinds that blend with a mixing ratio (as opposed to fill/replace).
    pub fn uses_lambda(self) -> bool {
        matches!(
            self,
            MixKind::MixUp
                | MixKind::FadeMixUp
                | MixKind::CutMixUp
                | MixKind::CubeCutMixUp
                | MixKind::FrameCutMixUp
                | MixKind::FloatCutMixUp
                | MixKind::FloatCubeCutMixUp
                | MixKind::FloatFrameCutMixUp
        )
    }

    /// CutOut variants write the fill value instead of partner pixels.
    pub fn fills(self) -> bool {
        !self.needs_partner()
    }

    /// Box center drifts between sampled endpoints.
    pub fn floating_box(self) -> bool {
        matches!(
            self,
            MixKind::FloatCutOut
                | MixKind::FloatCubeCutOut
                | MixKind::FloatCutMix
                | MixKind::FloatCubeCutMix
                | MixKind::FloatCutMixUp
                | MixKind::FloatCubeCutMixUp
        )
    }

    /// Mixing ratio drifts between sampled endpoints.
    pub fn floating_lambda(self) -> bool {
        matches!(
            self,
            MixKind::FadeMixUp
                | MixKind::FloatCutMixUp
                | MixKind::FloatCubeCutMixUp
                | MixKind::FloatFrameCutMixUp
        )
    }

    /// The static kind a floating kind degenerates to when its endpoints
    /// coincide.
    pub fn static_counterpart(self) -> Option<MixKind> {
        Some(match self {
            MixKind::FloatCutOut => MixKind::CutOut,
            MixKind::FloatCubeCutOut => MixKind::CubeCutOut,
            MixKind::FloatCutMix => MixKind::CutMix,
            MixKind::FloatCubeCutMix => MixKind::CubeCutMix,
            MixKind::FloatCutMixUp => MixKind::CutMixUp,
            MixKind::FloatCubeCutMixUp => MixKind::CubeCutMixUp,
            MixKind::FloatFrameCutMixUp => MixKind::FrameCutMixUp,
            MixKind::FadeMixUp => MixKind::MixUp,
            _ => return None,
        })
    }

    pub fn name(self) -> &'static str {
        match self {
            MixKind::CutOut => "cutout",
            MixKind::CubeCutOut => "cube_cutout",
            MixKind::CutMix => "cutmix",
            MixKind::CubeCutMix => "cube_cutmix",
            MixKind::MixUp => "mixup",
            MixKind::FadeMixUp => "fade_mixup",
            MixKind::CutMixUp => "cut_mixup",
            MixKind::CubeCutMixUp => "cube_cut_mixup",
            MixKind::FrameCutMixUp => "frame_cut_mixup",
            MixKind::FloatCutOut => "float_cutout",
            MixKind::FloatCubeCutOut => "float_cube_cutout",
            MixKind::FloatCutMix => "float_cutmix",
            MixKind::FloatCubeCutMix => "float_cube_cutmix",
            MixKind::FloatCutMixUp => "float_cut_mixup",
            MixKind::FloatCubeCutMixUp => "float_cube_cut_mixup",
            MixKind::FloatFrameCutMixUp => "float_frame_cut_mixup",
        }
    }

    pub fn parse(s: &str) -> Result<MixKind> {
        ALL_MIX_KINDS
            .iter()
            .copied()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidPolicy(format!("unknown mix kind \"{s}\"")))
    }
}

impl std::fmt::Display for MixKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Sampled spatial (and, for cubes, temporal) size of the affected region.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegionScale {
    pub box_w: usize,
    pub box_h: usize,
    /// Cube temporal length; None for 2-D regions.
    pub t_len: Option<usize>,
    /// The Beta(alpha, alpha) draw behind the scale.
    pub i_value: f64,
}

/// Draw the region scale: I ~ Beta(alpha, alpha); sides scale with
/// sqrt(1-I) for 2-D regions and cbrt(1-I) for cubes (so the replaced
/// area/volume fraction is 1-I), rounded and clamped to [1, side].
pub fn sample_region_scale(
    stream: &RngStream,
    alpha: f64,
    width: usize,
    height: usize,
    dims: u32,
    n: usize,
) -> Result<RegionScale> {
    debug_assert!(dims == 2 || dims == 3);
    let mut s = stream.clone();
    let i_value = s.beta(alpha)?;
    let scale = if dims == 2 { (1.0 - i_value).sqrt() } else { (1.0 - i_value).cbrt() };
    let round = |v: f64, max: usize| -> usize {
        let r = (v + 0.5).floor() as i64;
        (r.max(1) as usize).min(max)
    };
    let box_w = round(width as f64 * scale, width);
    let box_h = round(height as f64 * scale, height);
    let t_len = (dims == 3).then(|| round(n as f64 * scale, n));
    Ok(RegionScale { box_w, box_h, t_len, i_value })
}

/// Draw a box trajectory. Centers are uniform over the valid-center
/// rectangle [w/2, W-w/2] x [h/2, H-h/2] (degenerate axes collapse to the
/// midpoint), so the box is fully inside the frame at every covered t.
/// With `floating` false the end center equals the start center.
#[allow(clippy::too_many_arguments)]
pub fn sample_box_trajectory(
    stream: &RngStream,
    box_w: usize,
    box_h: usize,
    frame_w: usize,
    frame_h: usize,
    n: usize,
    extent: (usize, usize),
    floating: bool,
) -> Result<BoxTrajectory> {
    if box_w > frame_w || box_h > frame_h {
        return Err(Error::BoxTooLarge { bw: box_w, bh: box_h, w: frame_w, h: frame_h });
    }
    let lo_x = box_w as f64 / 2.0;
    let hi_x = frame_w as f64 - lo_x;
    let lo_y = box_h as f64 / 2.0;
    let hi_y = frame_h as f64 - lo_y;
    let draw_center = |s: &mut RngStream| -> Result<(f64, f64)> {
        Ok((s.uniform(lo_x, hi_x)?, s.uniform(lo_y, hi_y)?))
    };
    let start = draw_center(&mut stream.derive(TRAJ_START))?;
    let end = if floating { draw_center(&mut stream.derive(TRAJ_END))? } else { start };
    BoxTrajectory::interpolate(start, end, box_w, box_h, frame_w, frame_h, n, extent)
}

/// Per-frame mixing ratios, linear between the endpoint values.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaSchedule {
    values: Vec<f64>,
    pub mean_lambda: f64,
}

impl LambdaSchedule {
    pub fn constant(lambda: f64, n: usize) -> Result<Self> {
        check_lambda(lambda)?;
        Ok(LambdaSchedule { values: vec![lambda; n], mean_lambda: lambda })
    }

    /// Linear ramp; the mean is the midpoint of the endpoints (exact for a
    /// linear schedule).
    pub fn linear(l0: f64, l1: f64, n: usize) -> Result<Self> {
        check_lambda(l0)?;
        check_lambda(l1)?;
        if n < 2 {
            return Err(Error::InvalidPolicy("lambda schedule needs n >= 2".into()));
        }
        let mut values = vec![0.0; n];
        values[0] = l0;
        values[n - 1] = l1;
        for (t, v) in values.iter_mut().enumerate().take(n - 1).skip(1) {
            *v = l0 + (t as f64 / (n - 1) as f64) * (l1 - l0);
        }
        Ok(LambdaSchedule { values, mean_lambda: (l0 + l1) / 2.0 })
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn at(&self, t: usize) -> f64 {
        self.values[t]
    }
}

fn check_lambda(l: f64) -> Result<()> {
    if !(0.0..=1.0).contains(&l) {
        return Err(Error::InvalidPolicy(format!("lambda {l} outside [0,1]")));
    }
    Ok(())
}

/// Draw a mixing-ratio schedule: base ratio ~ Beta(alpha, alpha); static
/// schedules repeat it, floating ones spread the endpoints by
/// eps ~ U(0, min(lambda, 1-lambda)) to (lambda-eps, lambda+eps), which
/// keeps every value in [0, 1] and the mean at lambda exactly.
pub fn sample_lambda_schedule(
    stream: &RngStream,
    alpha: f64,
    n: usize,
    floating: bool,
) -> Result<LambdaSchedule> {
    let lambda = stream.derive(LAMBDA_BASE).beta(alpha)?;
    if !floating {
        return LambdaSchedule::constant(lambda, n);
    }
    let eps = stream
        .derive(LAMBDA_SPREAD)
        .uniform(0.0, lambda.min(1.0 - lambda))?;
    let mut sched = LambdaSchedule::linear(lambda - eps, lambda + eps, n)?;
    sched.mean_lambda = lambda;
    Ok(sched)
}

/// Everything sampled for one mix application.
#[derive(Debug, Clone, PartialEq)]
pub struct MixPlan {
    pub kind: MixKind,
    pub region: Option<RegionScale>,
    /// Inclusive temporal range the op touches.
    pub extent: (usize, usize),
    pub trajectory: Option<BoxTrajectory>,
    pub lambda: Option<LambdaSchedule>,
}

impl MixPlan {
    /// Number of frames the op touches.
    pub fn extent_len(&self) -> usize {
        self.extent.1 - self.extent.0 + 1
    }

    /// The exact soft-label weight this plan assigns to the partner clip.
    pub fn weight_b(&self, n: usize, frame_w: usize, frame_h: usize) -> f64 {
        if self.kind.fills() {
            return 0.0;
        }
        let mean_lambda = self.lambda.as_ref().map(|l| l.mean_lambda);
        match self.kind {
            MixKind::CutMix | MixKind::FloatCutMix => {
                let tr = self.trajectory.as_ref().unwrap();
                (tr.box_w * tr.box_h) as f64 / (frame_w * frame_h) as f64
            }
            MixKind::CubeCutMix | MixKind::FloatCubeCutMix => {
                let tr = self.trajectory.as_ref().unwrap();
                (tr.box_w * tr.box_h * self.extent_len()) as f64 / (frame_w * frame_h * n) as f64
            }
            MixKind::MixUp | MixKind::FadeMixUp => mean_lambda.unwrap(),
            MixKind::CutMixUp | MixKind::FloatCutMixUp => {
                let tr = self.trajectory.as_ref().unwrap();
                let area = (tr.box_w * tr.box_h) as f64 / (frame_w * frame_h) as f64;
                area * mean_lambda.unwrap()
            }
            MixKind::CubeCutMixUp | MixKind::FloatCubeCutMixUp => {
                let tr = self.trajectory.as_ref().unwrap();
                let vol = (tr.box_w * tr.box_h * self.extent_len()) as f64
                    / (frame_w * frame_h * n) as f64;
                vol * mean_lambda.unwrap()
            }
            MixKind::FrameCutMixUp | MixKind::FloatFrameCutMixUp => {
                let band = self.extent_len() as f64 / n as f64;
                band * mean_lambda.unwrap()
            }
            _ => unreachable!("fill kinds returned early"),
        }
    }
}

/// Sample all parameters for a mix of the given kind on n frames of
/// `frame_w x frame_h`.
pub fn plan_mix(
    kind: MixKind,
    n: usize,
    frame_w: usize,
    frame_h: usize,
    alpha: f64,
    stream: &RngStream,
) -> Result<MixPlan> {
    if !alpha.is_finite() || alpha <= 0.0 {
        return Err(Error::InvalidAlpha(alpha));
    }
    let mut region = None;
    let mut extent = (0, n - 1);

    if kind.uses_box() {
        let dims = if kind.is_cube() { 3 } else { 2 };
        let r = sample_region_scale(&stream.derive(ROLE_SCALE), alpha, frame_w, frame_h, dims, n)?;
        if let Some(t_len) = r.t_len {
            let t_a = stream
                .derive(ROLE_EXTENT)
                .uniform_int(0, (n - t_len) as i64)? as usize;
            extent = (t_a, t_a + t_len - 1);
        }
        region = Some(r);
    } else if kind.is_band() {
        let i_value = stream.derive(ROLE_SCALE).beta(alpha)?;
        let t_len = (((n as f64) * (1.0 - i_value) + 0.5).floor() as i64).clamp(1, n as i64) as usize;
        let t_a = stream
            .derive(ROLE_EXTENT)
            .uniform_int(0, (n - t_len) as i64)? as usize;
        extent = (t_a, t_a + t_len - 1);
        region = Some(RegionScale { box_w: frame_w, box_h: frame_h, t_len: Some(t_len), i_value });
    }

    let trajectory = if kind.uses_box() {
        let r = region.as_ref().unwrap();
        Some(sample_box_trajectory(
            &stream.derive(ROLE_TRAJECTORY),
            r.box_w,
            r.box_h,
            frame_w,
            frame_h,
            n,
            extent,
            kind.floating_box(),
        )?)
    } else {
        None
    };

    let lambda = if kind.uses_lambda() {
        Some(sample_lambda_schedule(
            &stream.derive(ROLE_LAMBDA),
            alpha,
            n,
            kind.floating_lambda(),
        )?)
    } else {
        None
    };

    Ok(MixPlan { kind, region, extent, trajectory, lambda })
}

/// Execute a sampled plan. `clip_b`/`label_b` are required for every kind
/// except the CutOut family; shapes must match.
pub fn apply_mix_plan(
    plan: &MixPlan,
    clip_a: &Clip,
    label_a: u32,
    clip_b: Option<&Clip>,
    label_b: Option<u32>,
) -> Result<(Clip, LabelMix)> {
    let kind = plan.kind;
    if kind.needs_partner() {
        let b = clip_b.ok_or(Error::MissingPartner(kind.name()))?;
        if !clip_a.same_shape(b) {
            return Err(Error::ShapeMismatch(format!(
                "{} vs {}",
                clip_a.shape_string(),
                b.shape_string()
            )));
        }
    }
    let (n, h, w, c) = (clip_a.n_frames(), clip_a.height(), clip_a.width(), clip_a.channels());
    let mut out = clip_a.clone();
    let frame_len = clip_a.frame_len();
    let row = w * c;
    let (t_a, t_b) = plan.extent;

    crate::par::for_each_frame(out.data_mut(), frame_len, |t, dst| {
        if t < t_a || t > t_b {
            return;
        }
        let lambda_t = plan.lambda.as_ref().map(|l| l.at(t));
        match (plan.trajectory.as_ref(), kind.fills(), kind.uses_lambda()) {
            // CutOut family: gray fill inside the box
            (Some(tr), true, _) => {
                let (x0, y0) = tr.rect(t);
                for y in y0..y0 + tr.box_h {
                    let start = y * row + x0 * c;
                    dst[start..start + tr.box_w * c].fill(FILL_VALUE);
                }
            }
            // CutMix family: partner pixels inside the box
            (Some(tr), false, false) => {
                let src = clip_b.unwrap().frame(t);
                let (x0, y0) = tr.rect(t);
                for y in y0..y0 + tr.box_h {
                    let start = y * row + x0 * c;
                    let end = start + tr.box_w * c;
                    dst[start..end].copy_from_slice(&src[start..end]);
                }
            }
            // CutMixUp family: blend inside the box
            (Some(tr), false, true) => {
                let src = clip_b.unwrap().frame(t);
                let a = clip_a.frame(t);
                let l = lambda_t.unwrap();
                let (x0, y0) = tr.rect(t);
                for y in y0..y0 + tr.box_h {
                    let start = y * row + x0 * c;
                    for i in start..start + tr.box_w * c {
                        dst[i] = round_sat((1.0 - l) * a[i] as f64 + l * src[i] as f64);
                    }
                }
            }
            // MixUp / FadeMixUp / band kinds: blend the whole frame
            (None, _, _) => {
                let src = clip_b.unwrap().frame(t);
                let a = clip_a.frame(t);
                let l = lambda_t.unwrap();
                for i in 0..frame_len {
                    dst[i] = round_sat((1.0 - l) * a[i] as f64 + l * src[i] as f64);
                }
            }
        }
    });

    let weight = plan.weight_b(n, w, h);
    let label = LabelMix::new(label_a, label_b.unwrap_or(label_a), weight)?;
    Ok((out, label))
}

/// Sample and apply in one step.
pub fn apply_mix(
    kind: MixKind,
    clip_a: &Clip,
    label_a: u32,
    clip_b: Option<&Clip>,
    label_b: Option<u32>,
    alpha: f64,
    stream: &RngStream,
) -> Result<(Clip, LabelMix)> {
    let plan = plan_mix(kind, clip_a.n_frames(), clip_a.width(), clip_a.height(), alpha, stream)?;
    apply_mix_plan(&plan, clip_a, label_a, clip_b, label_b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn watermark_a() -> Clip {
        Clip::from_fn(6, 24, 20, 3, |t, y, x, ch| ((t * 31 + y * 7 + x * 3 + ch) % 128) as u8).unwrap()
    }

    fn watermark_b() -> Clip {
        Clip::from_fn(6, 24, 20, 3, |t, y, x, ch| (128 + (t * 17 + y * 5 + x + ch) % 128) as u8).unwrap()
    }

    #[test]
    fn kind_names_roundtrip() {
        for k in ALL_MIX_KINDS {
            assert_eq!(MixKind::parse(k.name()).unwrap(), k);
        }
        assert!(MixKind::parse("blend").is_err());
    }

    #[test]
    fn kind_table_is_consistent() {
        assert_eq!(ALL_MIX_KINDS.len(), 16);
        assert_eq!(ALL_MIX_KINDS.iter().filter(|k| k.fills()).count(), 4);
        assert_eq!(ALL_MIX_KINDS.iter().filter(|k| k.is_cube()).count(), 6);
        assert_eq!(ALL_MIX_KINDS.iter().filter(|k| k.is_band()).count(), 2);
        // every floating kind degenerates to a static one
        for k in ALL_MIX_KINDS {
            if k.floating_box() || k.floating_lambda() {
                let s = k.static_counterpart().unwrap();
                assert!(!s.floating_box() && !s.floating_lambda(), "{k} -> {s}");
            }
        }
    }

    #[test]
    fn region_scale_formula() {
        // Direct evaluation: I = 0.75, W = 112, dims 2 -> box_w = 112 * 0.5 = 56.
        let scale = (1.0f64 - 0.75).sqrt();
        assert_eq!((112.0 * scale + 0.5).floor() as usize, 56);
        // dims 3, I = 0.488, n = 32: cbrt(0.512) = 0.8 -> t_len = 26.
        let s3 = (1.0f64 - 0.488).cbrt();
        assert_eq!((32.0 * s3 + 0.5).floor() as usize, 26);
    }

    #[test]
    fn region_scale_draws_are_in_bounds() {
        for seed in 0..200 {
            let s = RngStream::new(seed);
            let r = sample_region_scale(&s, 1.0, 112, 112, 2, 32).unwrap();
            assert!((1..=112).contains(&r.box_w));
            assert!((1..=112).contains(&r.box_h));
            assert!(r.t_len.is_none());
            let r3 = sample_region_scale(&s, 1.0, 64, 48, 3, 16).unwrap();
            assert!((1..=16).contains(&r3.t_len.unwrap()));
        }
    }

    #[test]
    fn trajectory_static_centers_identical() {
        for seed in 0..50 {
            let s = RngStream::new(seed);
            let tr = sample_box_trajectory(&s, 10, 10, 64, 64, 8, (0, 7), false).unwrap();
            let c0 = tr.center(0);
            for t in 1..8 {
                assert_eq!(tr.center(t), c0);
            }
        }
    }

    #[test]
    fn trajectory_full_width_box_centers_on_midline() {
        let s = RngStream::new(3);
        let tr = sample_box_trajectory(&s, 64, 10, 64, 64, 4, (0, 3), true).unwrap();
        for t in 0..4 {
            assert_eq!(tr.center(t).0, 32.0);
            assert_eq!(tr.rect(t).0, 0);
        }
    }

    #[test]
    fn lambda_schedule_static_and_floating() {
        let sched = LambdaSchedule::constant(0.3, 4).unwrap();
        assert_eq!(sched.values(), &[0.3, 0.3, 0.3, 0.3]);
        assert_eq!(sched.mean_lambda, 0.3);

        // lambda = 0.5, eps = 0.2, n = 5 -> [0.3, 0.4, 0.5, 0.6, 0.7]
        let lin = LambdaSchedule::linear(0.3, 0.7, 5).unwrap();
        for (got, want) in lin.values().iter().zip([0.3, 0.4, 0.5, 0.6, 0.7]) {
            assert!((got - want).abs() < 1e-12);
        }
        assert!((lin.mean_lambda - 0.5).abs() < 1e-12);
    }

    #[test]
    fn sampled_floating_lambda_is_symmetric() {
        for seed in 0..100 {
            let s = RngStream::new(seed);
            let sched = sample_lambda_schedule(&s, 1.0, 7, true).unwrap();
            let v = sched.values();
            assert!((v[0] + v[6] - 2.0 * sched.mean_lambda).abs() < 1e-12);
            assert!(v.iter().all(|&l| (0.0..=1.0).contains(&l)));
        }
    }

    #[test]
    fn mixup_lambda_zero_is_identity() {
        let a = watermark_a();
        let b = watermark_b();
        let plan = MixPlan {
            kind: MixKind::MixUp,
            region: None,
            extent: (0, 5),
            trajectory: None,
            lambda: Some(LambdaSchedule::constant(0.0, 6).unwrap()),
        };
        let (out, lm) = apply_mix_plan(&plan, &a, 1, Some(&b), Some(2)).unwrap();
        assert_eq!(out, a);
        assert_eq!(lm.weight_b, 0.0);
        assert_eq!((lm.label_a, lm.label_b), (1, 2));
    }

    #[test]
    fn cutmix_full_frame_box_returns_partner() {
        let a = watermark_a();
        let b = watermark_b();
        let plan = MixPlan {
            kind: MixKind::CutMix,
            region: None,
            extent: (0, 5),
            trajectory: Some(
                BoxTrajectory::interpolate((10.0, 12.0), (10.0, 12.0), 20, 24, 20, 24, 6, (0, 5))
                    .unwrap(),
            ),
            lambda: None,
        };
        let (out, lm) = apply_mix_plan(&plan, &a, 1, Some(&b), Some(2)).unwrap();
        assert_eq!(out, b);
        assert_eq!(lm.weight_b, 1.0);
    }

    #[test]
    fn cutout_weight_is_zero_and_fill_is_gray() {
        let a = watermark_a();
        for seed in 0..20 {
            let s = RngStream::new(seed);
            let (out, lm) = apply_mix(MixKind::CutOut, &a, 3, None, None, 1.0, &s).unwrap();
            assert_eq!(lm.weight_b, 0.0);
            assert_eq!(lm.label_b, 3);
            // at least the box pixels became gray; everything else untouched
            let mut changed = 0usize;
            for (o, i) in out.data().iter().zip(a.data()) {
                if o != i {
                    assert_eq!(*o, FILL_VALUE);
                    changed += 1;
                }
            }
            assert!(changed > 0);
        }
    }

    #[test]
    fn missing_partner_is_rejected() {
        let a = watermark_a();
        let s = RngStream::new(0);
        assert!(apply_mix(MixKind::CutMix, &a, 0, None, None, 1.0, &s).is_err());
        assert!(apply_mix(MixKind::MixUp, &a, 0, None, None, 1.0, &s).is_err());
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let a = watermark_a();
        let b = Clip::filled(6, 24, 22, 3, 0).unwrap();
        let s = RngStream::new(0);
        assert!(apply_mix(MixKind::MixUp, &a, 0, Some(&b), Some(1), 1.0, &s).is_err());
    }

    #[test]
    fn cut_mixup_weight_is_area_times_lambda() {
        // area fraction 0.25 (10x12 box in 20x24), lambda 0.4 -> weight 0.1
        let a = watermark_a();
        let b = watermark_b();
        let plan = MixPlan {
            kind: MixKind::CutMixUp,
            region: None,
            extent: (0, 5),
            trajectory: Some(
                BoxTrajectory::interpolate((10.0, 12.0), (10.0, 12.0), 10, 12, 20, 24, 6, (0, 5))
                    .unwrap(),
            ),
            lambda: Some(LambdaSchedule::constant(0.4, 6).unwrap()),
        };
        let (_, lm) = apply_mix_plan(&plan, &a, 1, Some(&b), Some(2)).unwrap();
        let area = (10.0 * 12.0) / (20.0 * 24.0);
        assert_eq!(lm.weight_b, area * 0.4);
        assert!((lm.weight_b - 0.1).abs() < 1e-12);
    }

    #[test]
    fn cutmix_quarter_area_weight_is_exact() {
        // 56x56 box in a 112x112 frame: weight is exactly 3136/12544 = 0.25
        let a = Clip::filled(4, 112, 112, 1, 10).unwrap();
        let b = Clip::filled(4, 112, 112, 1, 200).unwrap();
        let plan = MixPlan {
            kind: MixKind::FloatCutMix,
            region: None,
            extent: (0, 3),
            trajectory: Some(
                BoxTrajectory::interpolate((30.0, 30.0), (80.0, 80.0), 56, 56, 112, 112, 4, (0, 3))
                    .unwrap(),
            ),
            lambda: None,
        };
        let (out, lm) = apply_mix_plan(&plan, &a, 0, Some(&b), Some(1)).unwrap();
        assert_eq!(lm.weight_b, 0.25);
        for t in 0..4 {
            let replaced = out.frame(t).iter().filter(|&&v| v == 200).count();
            assert_eq!(replaced as f64 / (112.0 * 112.0), 0.25);
        }
    }

    #[test]
    fn cube_kinds_leave_frames_outside_extent_untouched() {
        let a = watermark_a();
        let b = watermark_b();
        for seed in 0..30 {
            let s = RngStream::new(seed);
            let plan = plan_mix(MixKind::CubeCutMix, 6, 20, 24, 1.0, &s).unwrap();
            let (out, _) = apply_mix_plan(&plan, &a, 0, Some(&b), Some(1)).unwrap();
            for t in 0..6 {
                if t < plan.extent.0 || t > plan.extent.1 {
                    assert_eq!(out.frame(t), a.frame(t), "seed {seed} frame {t}");
                }
            }
        }
    }

    #[test]
    fn plans_are_deterministic() {
        for kind in ALL_MIX_KINDS {
            let s = RngStream::new(11);
            let p1 = plan_mix(kind, 8, 32, 32, 1.0, &s).unwrap();
            let p2 = plan_mix(kind, 8, 32, 32, 1.0, &s).unwrap();
            assert_eq!(p1, p2, "{kind}");
        }
    }
}
