//! Deterministic temporal augmentation for video clips.
//!
//! Clips are dense 8-bit frame stacks. Augmentation comes in three layers:
//!
//! * per-frame pixel ops whose strength follows a per-frame magnitude
//!   curve ([`pixel_ops`], [`schedules`]);
//! * single-clip temporal ops: reversal, self fade-in, in-clip cut-mix
//!   ([`single_video`]);
//! * two-clip delete / cut-and-paste / blend regularizers with exact
//!   soft-label weights, in static and floating (drifting box / drifting
//!   ratio) forms ([`mix`]).
//!
//! [`policy`] ties them together: a [`PolicySpec`] samples N ops per clip
//! plus an optional mix stage, and [`batch`] runs a whole manifest with
//! per-clip derived random streams, so output bytes depend only on the
//! spec, the seed, and each clip's index — never on thread scheduling.
//! With the default `parallel` feature, frames and clips fan out over
//! rayon; disabling it gives a dependency-free sequential build with
//! identical results.

pub mod batch;
pub mod clip;
pub mod curve;
pub mod error;
pub mod geometry;
pub mod mix;
mod par;
pub mod pixel_ops;
pub mod policy;
pub mod rng;
pub mod schedules;
pub mod single_video;

pub use batch::{augment_batch, AugmentedClip};
pub use clip::{Clip, LabelMix};
pub use curve::MagnitudeCurve;
pub use error::{Error, Result};
pub use geometry::BoxTrajectory;
pub use mix::{
    apply_mix, apply_mix_plan, plan_mix, LambdaSchedule, MixKind, MixPlan, RegionScale,
    ALL_MIX_KINDS,
};
pub use pixel_ops::{apply_pixel_op, param_map, OpKind, ResolvedParam, ALL_OPS, BASE_OPS, FILL_VALUE};
pub use policy::{apply_policy, sample_curve, sample_policy, PolicySpec, PolicyVariant, ALL_VARIANTS};
pub use rng::RngStream;
pub use schedules::{
    linear_schedule, magaugment_schedule, static_schedule, t_plus_endpoints, MagAugmentConfig,
};
pub use single_video::{fade_lambda, frame_fade_in, video_cutmix, video_cutmix_box, video_reverse};
