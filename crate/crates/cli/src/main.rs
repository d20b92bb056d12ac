use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use vidaug_cli::clipio::ClipFormat;
use vidaug_cli::commands::{cmd_augment, cmd_preview, cmd_schedule, Overrides};

#[derive(Parser)]
#[command(name = "vidaug", version, about = "Deterministic temporal augmentation for video clips")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Augment every clip in a manifest under a policy config.
    Augment {
        /// Input clip manifest (clipmanifest 1 format).
        #[arg(long)]
        manifest: PathBuf,
        /// Policy config file.
        #[arg(long)]
        policy: PathBuf,
        /// Output directory for augmented clips and results.manifest.
        #[arg(long)]
        out: PathBuf,
        /// Override the config seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Worker threads (0 = all cores). Output bytes do not depend on this.
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Output container: clipraw or png.
        #[arg(long, default_value = "clipraw")]
        format: String,
        /// Extra comma-separated ops to remove from the active set.
        #[arg(long)]
        denylist: Option<String>,
    },
    /// Sample magnitude curves and export them as CSV.
    Schedule {
        #[arg(long)]
        policy: PathBuf,
        /// Frames per curve.
        #[arg(long, default_value_t = 32)]
        frames: usize,
        /// Number of sampled curves.
        #[arg(long, default_value_t = 100)]
        count: usize,
        /// Output CSV path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Render a contact sheet of one augmented clip.
    Preview {
        /// Input clip (CLIPRAW file or PNG frame directory).
        #[arg(long)]
        clip: PathBuf,
        #[arg(long)]
        policy: PathBuf,
        /// Output PNG path.
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        seed: Option<u64>,
        /// Partner clip for two-clip mix stages (defaults to the input's
        /// reversal).
        #[arg(long)]
        partner: Option<PathBuf>,
    },
}

fn run() -> vidaug_cli::Result<()> {
    match Cli::parse().command {
        Command::Augment { manifest, policy, out, seed, jobs, format, denylist } => {
            let format = ClipFormat::parse(&format).ok_or_else(|| {
                vidaug_cli::CliError::Config {
                    path: PathBuf::from("--format"),
                    msg: format!("unknown format \"{format}\", expected clipraw or png"),
                }
            })?;
            let denylist = denylist
                .map(|d| vidaug_cli::config::parse_denylist(&d))
                .transpose()
                .map_err(vidaug_cli::CliError::Core)?;
            let overrides = Overrides { seed, denylist };
            cmd_augment(&manifest, &policy, &out, &overrides, jobs, format)
        }
        Command::Schedule { policy, frames, count, out, seed } => {
            let overrides = Overrides { seed, ..Default::default() };
            cmd_schedule(&policy, frames, count, &out, &overrides)
        }
        Command::Preview { clip, policy, out, seed, partner } => {
            let overrides = Overrides { seed, ..Default::default() };
            cmd_preview(&clip, &policy, &out, &overrides, partner.as_deref())
        }
    }
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
