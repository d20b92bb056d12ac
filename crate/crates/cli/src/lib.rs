//! Library surface of the `vidaug` CLI: clip container IO, manifests,
//! policy config files, and the three commands (augment / schedule /
//! preview). The binary in `main.rs` is a thin argument parser over
//! [`commands`].

pub mod clipio;
pub mod commands;
pub mod config;
pub mod error;
pub mod manifest;

pub use clipio::{read_clip, write_clip, ClipFormat};
pub use commands::{cmd_augment, cmd_preview, cmd_schedule, Overrides};
pub use error::{CliError, Result};
