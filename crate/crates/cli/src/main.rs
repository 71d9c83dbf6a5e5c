use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;
mod render;

/// Options shared by every command.
#[derive(Args, Debug, Clone, Copy)]
pub struct Common {
    /// Seed for every random choice.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Membership tolerance for closed objects.
    #[arg(long, default_value_t = hitset::DEFAULT_TOL, global = true)]
    pub tol: f64,
    /// Samples per locus piece in the extreme-point search.
    #[arg(long, default_value_t = hitset::extreme::DEFAULT_SAMPLES, global = true)]
    pub extreme_samples: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OptChoice {
    Exact,
    Greedy,
    Skip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ResponderChoice {
    FirstPoint,
    Algorithm1,
}

impl ResponderChoice {
    pub fn name(self) -> &'static str {
        match self {
            ResponderChoice::FirstPoint => "first-point",
            ResponderChoice::Algorithm1 => "algorithm1",
        }
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Write a seeded random instance and object stream.
    GenRandom {
        /// `disk` or the number of sides k >= 4.
        #[arg(long)]
        shape: String,
        #[arg(long)]
        n_points: usize,
        #[arg(long)]
        n_objects: usize,
        /// Points are drawn from [0, span]².
        #[arg(long, default_value_t = 3.0)]
        span: f64,
        /// Directory receiving instance.json and stream.jsonl.
        #[arg(long)]
        out: PathBuf,
    },
    /// Feed a stream to the online engine and write a report.
    Run {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        stream: PathBuf,
        /// Report file; stdout when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = OptChoice::Exact)]
        opt: OptChoice,
        /// Exit 0 even when some object holds no point.
        #[arg(long)]
        allow_infeasible: bool,
        /// Fail when the measured ratio exceeds the bound.
        #[arg(long)]
        strict: bool,
    },
    /// Write the lower-bound instance, every interval object, and the
    /// objects presented against a responder.
    GenAdversarial {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ResponderChoice::FirstPoint)]
        responder: ResponderChoice,
        #[arg(long)]
        out: PathBuf,
    },
    /// Play the lower-bound game against a built-in responder.
    Play {
        #[arg(long)]
        shape: String,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value_t = ResponderChoice::FirstPoint)]
        responder: ResponderChoice,
        /// Transcript file; stdout when absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Offline minimum hitting set of a stream's objects.
    Opt {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        stream: PathBuf,
        /// Use the greedy solver instead of the exact one.
        #[arg(long)]
        greedy: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the dual instance: object centers become points, points become reflected objects.
    Dualize {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        stream: PathBuf,
        /// Directory receiving instance.json and stream.jsonl.
        #[arg(long)]
        out: PathBuf,
    },
    /// Draw an instance, its stream and the engine's choices as SVG.
    Render {
        #[arg(long)]
        instance: PathBuf,
        #[arg(long)]
        stream: Option<PathBuf>,
        /// Report whose solution is drawn by --show-hits; the engine is rerun when absent.
        #[arg(long)]
        report: Option<PathBuf>,
        #[arg(long)]
        show_tiles: bool,
        #[arg(long)]
        show_cones: bool,
        #[arg(long)]
        show_extreme: bool,
        #[arg(long)]
        show_hits: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run random instances for several shapes and seeds in parallel.
    Bench {
        /// Comma-separated shapes.
        #[arg(long, default_value = "disk,4,5,6,8")]
        shapes: String,
        /// Number of seeds per shape, starting at --seed.
        #[arg(long, default_value_t = 10)]
        seeds: u64,
        #[arg(long, default_value_t = 40)]
        n_points: usize,
        #[arg(long, default_value_t = 30)]
        n_objects: usize,
        #[arg(long, default_value_t = 1.5)]
        span: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Online hitting set for points against unit disks and regular k-gons.
#[derive(Parser, Debug)]
#[command(name = "hitset", version)]
struct Top {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

fn main() -> ExitCode {
    let top = match Top::try_parse() {
        Ok(t) => t,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { commands::EXIT_PARSE } else { 0 });
        }
    };
    match commands::dispatch(top.command, top.common) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
