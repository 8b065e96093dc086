//! The `mixlab` command line: experiment configs in, CSV (and optional SVG)
//! out.
//!
//! Every subcommand is a pure function of `(config text, seed)` returning an
//! [`Outcome`]; [`execute`] exposes that directly and [`main`] adds argument
//! parsing, a thread pool and file output.

mod commands;
pub mod config;
pub mod output;

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};

use crate::error::Error;
use crate::report::CheckReport;
pub use commands::schema;
use output::{Chart, Table};

pub const EXIT_OK: i32 = 0;
pub const EXIT_IO: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CHECK: i32 = 3;
pub const EXIT_DIVERGENCE: i32 = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Projected TV of the OU process over a time grid (cut-off experiment).
    Cutoff,
    /// Monte-Carlo lower bound terms, plus the OU upper bound.
    Lowerbound,
    /// Projected-ball radius of power-tail measures over a (p, d) grid.
    QuantileTable,
    /// Kolmogorov–Smirnov statistic of the coordinates of X_t.
    KsSweep,
    /// Ergodicity regime of a tempered Langevin diffusion.
    Classify,
    /// Structural checks of a data spec and a forward process.
    Validate,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cutoff => "cutoff",
            Command::Lowerbound => "lowerbound",
            Command::QuantileTable => "quantile-table",
            Command::KsSweep => "ks-sweep",
            Command::Classify => "classify",
            Command::Validate => "validate",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "mixlab", version, about = "Mixing-time laboratory for forward diffusions")]
pub struct Args {
    #[command(subcommand)]
    pub command: Command,
    /// Experiment file (`key = value` lines).
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Output directory, created if missing.
    #[arg(long, global = true, default_value = "out")]
    pub out: PathBuf,
    /// Worker threads; results do not depend on it.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Also write an SVG chart per table that has one.
    #[arg(long, global = true)]
    pub svg: bool,
}

/// Everything a subcommand produces.
#[derive(Debug, Clone, Default)]
pub struct Outcome {
    /// Resolved configuration in schema order.
    pub config: Vec<(String, String)>,
    pub tables: Vec<Table>,
    pub charts: Vec<Chart>,
    /// Acceptance checks; any failure gives exit status 3.
    pub checks: CheckReport,
    pub summary: String,
}

impl Outcome {
    /// Manifest lines carried at the top of every CSV.
    pub fn manifest(&self, command: Command, seed: u64, svg: bool) -> Vec<String> {
        let mut lines = vec![
            format!("mixlab {}", command.name()),
            format!("version = {}", env!("CARGO_PKG_VERSION")),
            format!("seed = {seed}"),
        ];
        for (k, v) in &self.config {
            lines.push(format!("config.{k} = {v}"));
        }
        lines.push(format!("outputs = {}", self.output_files(svg).join(", ")));
        lines
    }

    pub fn output_files(&self, svg: bool) -> Vec<String> {
        let mut files: Vec<String> = self.tables.iter().map(|t| format!("{}.csv", t.name)).collect();
        if svg {
            files.extend(self.charts.iter().map(|c| format!("{}.svg", c.name)));
        }
        files.push("manifest.txt".into());
        files
    }

    /// CSV files as (file name, contents).
    pub fn render_csv(&self, command: Command, seed: u64, svg: bool) -> Vec<(String, String)> {
        let manifest = self.manifest(command, seed, svg);
        self.tables
            .iter()
            .map(|t| (format!("{}.csv", t.name), t.render(&manifest)))
            .collect()
    }
}

/// Runs `command` on the configuration text. Pure in `(config, seed)`.
pub fn execute(command: Command, config_text: &str, seed: u64) -> Result<Outcome, Error> {
    let pairs = config::parse(config_text)?;
    let resolved = config::Resolved::new(schema(command), pairs)?;
    let mut outcome = commands::run(command, &resolved, seed)?;
    outcome.config = resolved.entries().iter().map(|(k, v)| (k.to_string(), v.clone())).collect();
    Ok(outcome)
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::Divergence { .. } => EXIT_DIVERGENCE,
        _ => EXIT_CONFIG,
    }
}

fn write_outputs(dir: &Path, outcome: &Outcome, args: &Args, elapsed: f64, threads: usize) -> std::io::Result<()> {
    std::fs::create_dir_all(dir)?;
    for (name, body) in outcome.render_csv(args.command, args.seed, args.svg) {
        std::fs::write(dir.join(name), body)?;
    }
    if args.svg {
        for c in &outcome.charts {
            std::fs::write(dir.join(format!("{}.svg", c.name)), c.render_svg())?;
        }
    }
    let mut m = outcome.manifest(args.command, args.seed, args.svg).join("\n");
    m.push_str(&format!("\nthreads = {threads}\nwall_clock_seconds = {elapsed:.3}\n"));
    std::fs::write(dir.join("manifest.txt"), m)
}

/// Entry point of the binary; returns the process exit status.
pub fn main(args: Args) -> i32 {
    let text = match &args.config {
        Some(path) => match std::fs::read_to_string(path) {
            Ok(t) => t,
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return EXIT_CONFIG;
            }
        },
        None => String::new(),
    };
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = args.threads {
        if n == 0 {
            eprintln!("error: --threads must be positive");
            return EXIT_CONFIG;
        }
        builder = builder.num_threads(n);
    }
    let pool = match builder.build() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: thread pool: {e}");
            return EXIT_IO;
        }
    };
    let start = Instant::now();
    let result = pool.install(|| execute(args.command, &text, args.seed));
    let elapsed = start.elapsed().as_secs_f64();
    let outcome = match result {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code(&e);
        }
    };
    if let Err(e) = write_outputs(&args.out, &outcome, &args, elapsed, pool.current_num_threads()) {
        eprintln!("error: writing {}: {e}", args.out.display());
        return EXIT_IO;
    }
    print!("{}", outcome.summary);
    if !outcome.checks.checks.is_empty() {
        print!("{}", outcome.checks);
    }
    if outcome.checks.passed() {
        EXIT_OK
    } else {
        EXIT_CHECK
    }
}
