//! Policy sampling and application.
//!
//! A policy draws N ops uniformly from the variant's active set and applies
//! them in draw order, each with a magnitude curve built by the variant's
//! schedule rule, optionally followed by one mix stage. All randomness
//! derives from one stream per clip; each op slot and the mix stage use
//! fixed derivation labels so draws never shift between runs or variants.

use std::collections::BTreeSet;

use crate::clip::{Clip, LabelMix};
use crate::curve::MagnitudeCurve;
use crate::error::{Error, Result};
use crate::mix::{apply_mix, MixKind};
use crate::pixel_ops::{apply_pixel_op, OpKind, BASE_OPS};
use crate::rng::RngStream;
use crate::schedules::{
    linear_schedule, magaugment_schedule, static_schedule, t_plus_endpoints, MagAugmentConfig,
};
use crate::single_video::{frame_fade_in, video_cutmix, video_reverse};

/// Per-slot derivation labels.
const ROLE_CHOOSE: u64 = 0;
const ROLE_SCHEDULE: u64 = 1;
const ROLE_APPLY: u64 = 2;
/// Within a schedule: endpoint draw and perturbation draws.
const SCHED_ENDPOINTS: u64 = 0;
const SCHED_PERTURB: u64 = 1;
/// Top-level stages of one clip's stream.
const STAGE_OPS: u64 = 0;
const STAGE_MIX: u64 = 1;

/// Which schedule rule and op set a policy uses.
///
/// * `Ra`: the 14-op image set with a static magnitude.
/// * `RaTPlus`: adds ColourInvert (15 ops) and ramps the magnitude linearly
///   between sampled endpoints `m -+ delta`, `delta ~ U(0, m/2)`.
/// * `RaTpp`: the linear ramp over the extended 17-op set that adds the
///   three temporal ops.
/// * `RaTppMag`: as `RaTpp`, with short random perturbations layered onto
///   each linear curve.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolicyVariant {
    Ra,
    RaTPlus,
    RaTpp,
    RaTppMag,
}

pub const ALL_VARIANTS: [PolicyVariant; 4] = [
    PolicyVariant::Ra,
    PolicyVariant::RaTPlus,
    PolicyVariant::RaTpp,
    PolicyVariant::RaTppMag,
];

impl PolicyVariant {
    pub fn name(self) -> &'static str {
        match self {
            PolicyVariant::Ra => "ra",
            PolicyVariant::RaTPlus => "ra_t_plus",
            PolicyVariant::RaTpp => "ra_tpp",
            PolicyVariant::RaTppMag => "ra_tpp_mag",
        }
    }

    pub fn parse(s: &str) -> Result<Self> {
        ALL_VARIANTS
            .iter()
            .copied()
            .find(|v| v.name() == s)
            .ok_or_else(|| Error::InvalidPolicy(format!("unknown variant \"{s}\"")))
    }
}

impl std::fmt::Display for PolicyVariant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

/// Declarative description of an augmentation pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct PolicySpec {
    pub variant: PolicyVariant,
    /// Ops applied per clip (N >= 1), sampled with replacement.
    pub num_ops: usize,
    /// Base magnitude M in [0, 1].
    pub magnitude: f64,
    /// Perturbation parameters for `RaTppMag`; defaults are used when None.
    pub mag_cfg: Option<MagAugmentConfig>,
    /// Optional mix stage after the sampled ops.
    pub mix: Option<MixKind>,
    /// Beta parameter for the mix stage.
    pub alpha: f64,
    pub seed: u64,
    /// Ops removed from the active set (ablations). May not contain
    /// Identity.
    pub denylist: BTreeSet<OpKind>,
}

impl Default for PolicySpec {
    fn default() -> Self {
        PolicySpec {
            variant: PolicyVariant::RaTpp,
            num_ops: 2,
            magnitude: 0.5,
            mag_cfg: None,
            mix: None,
            alpha: 1.0,
            seed: 0,
            denylist: BTreeSet::new(),
        }
    }
}

impl PolicySpec {
    pub fn validate(&self) -> Result<()> {
        if self.num_ops < 1 {
            return Err(Error::InvalidPolicy("num_ops must be >= 1".into()));
        }
        if !(0.0..=1.0).contains(&self.magnitude) {
            return Err(Error::MagnitudeOutOfRange(self.magnitude));
        }
        if !self.alpha.is_finite() || self.alpha <= 0.0 {
            return Err(Error::InvalidAlpha(self.alpha));
        }
        if self.denylist.contains(&OpKind::Identity) {
            return Err(Error::InvalidPolicy("denylist may not remove identity".into()));
        }
        if let Some(cfg) = &self.mag_cfg {
            cfg.validate()?;
        }
        if self.active_ops().is_empty() {
            return Err(Error::InvalidPolicy("denylist leaves no active ops".into()));
        }
        Ok(())
    }

    /// The full op set of the variant, before the denylist. `Ra` uses the
    /// 14-op image set; `RaTPlus` adds ColourInvert; the extended variants
    /// use 17 ops: the image set plus the three temporal ops.
    pub fn variant_ops(&self) -> Vec<OpKind> {
        let mut ops: Vec<OpKind> = BASE_OPS.to_vec();
        match self.variant {
            PolicyVariant::Ra => {}
            PolicyVariant::RaTPlus => ops.push(OpKind::ColourInvert),
            PolicyVariant::RaTpp | PolicyVariant::RaTppMag => {
                ops.extend([OpKind::VideoReverse, OpKind::FrameFadeIn, OpKind::VideoCutMix]);
            }
        }
        ops
    }

    /// The sampleable set: variant ops minus the denylist.
    pub fn active_ops(&self) -> Vec<OpKind> {
        let mut ops = self.variant_ops();
        ops.retain(|op| !self.denylist.contains(op));
        ops
    }

    /// Effective perturbation config for the `RaTppMag` variant.
    pub fn mag_config(&self) -> MagAugmentConfig {
        self.mag_cfg.unwrap_or_default()
    }
}

/// Build the magnitude curve a sampled magnitude op receives under this
/// policy.
pub fn sample_curve(spec: &PolicySpec, n: usize, stream: &RngStream) -> Result<MagnitudeCurve> {
    match spec.variant {
        PolicyVariant::Ra => static_schedule(spec.magnitude, n),
        PolicyVariant::RaTPlus | PolicyVariant::RaTpp => {
            let (start, end) =
                t_plus_endpoints(spec.magnitude, &mut stream.derive(SCHED_ENDPOINTS))?;
            linear_schedule(start, end, n)
        }
        PolicyVariant::RaTppMag => {
            let (start, end) =
                t_plus_endpoints(spec.magnitude, &mut stream.derive(SCHED_ENDPOINTS))?;
            let base = linear_schedule(start, end, n)?;
            let (curve, _skipped) =
                magaugment_schedule(&base, &spec.mag_config(), &mut stream.derive(SCHED_PERTURB))?;
            Ok(curve)
        }
    }
}

/// Draw the op sequence for one clip: N i.i.d. uniform picks over the
/// active set, each with its magnitude curve (magnitude-free ops carry a
/// static curve they ignore).
///
/// Selection draws from the variant's full set and rejects denylisted
/// ops, so an ablation changes a slot's outcome only when the denied op
/// actually came up — seed-matched runs stay aligned everywhere else.
pub fn sample_policy(
    spec: &PolicySpec,
    n: usize,
    stream: &RngStream,
) -> Result<Vec<(OpKind, MagnitudeCurve)>> {
    spec.validate()?;
    let full = spec.variant_ops();
    let mut out = Vec::with_capacity(spec.num_ops);
    for slot in 0..spec.num_ops {
        let slot_stream = stream.derive(slot as u64);
        let mut choose = slot_stream.derive(ROLE_CHOOSE);
        let op = loop {
            let pick = choose.uniform_int(0, full.len() as i64 - 1)? as usize;
            if !spec.denylist.contains(&full[pick]) {
                break full[pick];
            }
        };
        let curve = if op.has_magnitude() {
            sample_curve(spec, n, &slot_stream.derive(ROLE_SCHEDULE))?
        } else {
            static_schedule(spec.magnitude, n)?
        };
        out.push((op, curve));
    }
    Ok(out)
}

/// Apply a policy to one clip.
///
/// `stream` must be the clip's own derived stream (see
/// [`crate::batch::augment_batch`] for the per-clip derivation). `partner`
/// is required exactly when the mix stage needs a second clip; the partner
/// enters the mix as-is. The returned label reflects only the mix stage:
/// single-clip ops never move label weight.
pub fn apply_policy(
    clip: &Clip,
    label: u32,
    spec: &PolicySpec,
    partner: Option<(&Clip, u32)>,
    stream: &RngStream,
) -> Result<(Clip, LabelMix)> {
    spec.validate()?;
    if clip.width() < 8 || clip.height() < 8 {
        return Err(Error::FrameTooSmall { w: clip.width(), h: clip.height() });
    }
    let needs_partner = spec.mix.map(MixKind::needs_partner).unwrap_or(false);
    if needs_partner && partner.is_none() {
        return Err(Error::MissingPartner(spec.mix.unwrap().name()));
    }

    let ops_stream = stream.derive(STAGE_OPS);
    let sampled = sample_policy(spec, clip.n_frames(), &ops_stream)?;
    let mut cur = clip.clone();
    for (slot, (op, curve)) in sampled.iter().enumerate() {
        let mut apply_stream = ops_stream.derive(slot as u64).derive(ROLE_APPLY);
        cur = match op {
            OpKind::VideoReverse => video_reverse(&cur),
            OpKind::FrameFadeIn => frame_fade_in(&cur)?,
            OpKind::VideoCutMix => video_cutmix(&cur, &mut apply_stream)?,
            _ => apply_pixel_op(&cur, *op, curve, &mut apply_stream)?,
        };
    }

    match spec.mix {
        Some(kind) => {
            let mix_stream = stream.derive(STAGE_MIX);
            let (b, label_b) = match partner {
                Some((clip_b, lb)) => (Some(clip_b), Some(lb)),
                None => (None, None),
            };
            apply_mix(kind, &cur, label, b, label_b, spec.alpha, &mix_stream)
        }
        None => Ok((cur, LabelMix::single(label))),
    }
}
