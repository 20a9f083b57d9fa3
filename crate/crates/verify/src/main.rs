use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use trifejer_verify::{all_passed, render, run, Command, ExperimentConfig, Format, Mode, SamplingPolicy};

#[derive(Parser)]
#[command(name = "trifejer", version, about = "Verification scans for triangular Walsh-Fejer means on G x G")]
struct Cli {
    #[command(subcommand)]
    command: Cmd,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Subcommand, Clone, Copy)]
enum Cmd {
    /// Exact kernel identities over full index grids
    Identities,
    /// Growth of the weighted kernel families
    Growth,
    /// Pointwise local-mass bounds off the support cube
    Pointwise,
    /// Quasi-locality of the means on atoms
    Atoms,
    /// Kernel L1 norms and H_p -> L_p ratios
    Opnorm,
    /// Every scan above
    All,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Exact,
    Float,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum SamplingArg {
    Auto,
    All,
    DyadicEndpoints,
    Seeded,
}

#[derive(clap::Args)]
struct Opts {
    /// Resolution M (per-command default when omitted)
    #[arg(long, global = true)]
    resolution: Option<u32>,
    /// Largest level of the one-dimensional growth scans
    #[arg(long, global = true)]
    resolution_1d: Option<u32>,
    /// Exponents, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    p: Option<Vec<f64>>,
    /// Levels N, comma separated
    #[arg(long, global = true, value_delimiter = ',')]
    levels: Option<Vec<u32>>,
    #[arg(long, global = true, default_value_t = 32)]
    samples: usize,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    #[arg(long, global = true, value_enum)]
    mode: Option<ModeArg>,
    /// Ratio bound factor of the boundedness verdicts
    #[arg(long, global = true, default_value_t = 4.0)]
    factor: f64,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: FormatArg,
    /// Output file; stdout when omitted
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value = "auto")]
    sampling: SamplingArg,
    /// Worker threads (all cores when omitted)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Also run exponents outside the proven ranges; they never decide the exit code
    #[arg(long, global = true)]
    exploratory: bool,
    /// Replace D_n by D_{n-1} in the identity checks
    #[arg(long, global = true, hide = true)]
    mutate: bool,
    /// Resolution of the eight-term decomposition sweep
    #[arg(long, global = true, default_value_t = 6)]
    lemma3_resolution: u32,
}

fn config(o: &Opts) -> ExperimentConfig {
    ExperimentConfig {
        resolution: o.resolution,
        resolution_1d: o.resolution_1d,
        p_grid: o.p.clone(),
        levels: o.levels.clone(),
        sampling: match o.sampling {
            SamplingArg::Auto => SamplingPolicy::Auto,
            SamplingArg::All => SamplingPolicy::All,
            SamplingArg::DyadicEndpoints => SamplingPolicy::DyadicEndpoints,
            SamplingArg::Seeded => SamplingPolicy::Seeded,
        },
        samples: o.samples,
        seed: o.seed,
        mode: o.mode.map(|m| match m {
            ModeArg::Exact => Mode::Exact,
            ModeArg::Float => Mode::Float,
        }),
        factor: o.factor,
        exploratory: o.exploratory,
        mutate: o.mutate,
        lemma3_resolution: o.lemma3_resolution,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn execute(cli: &Cli) -> anyhow::Result<bool> {
    if let Some(jobs) = cli.opts.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("configuring the worker pool")?;
    }
    let command = match cli.command {
        Cmd::Identities => Command::Identities,
        Cmd::Growth => Command::Growth,
        Cmd::Pointwise => Command::Pointwise,
        Cmd::Atoms => Command::Atoms,
        Cmd::Opnorm => Command::Opnorm,
        Cmd::All => Command::All,
    };
    let rows = run(command, &config(&cli.opts))?;
    let format = match cli.opts.format {
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    let bytes = render(&rows, format);
    match &cli.opts.out {
        Some(path) => fs::write(path, &bytes).with_context(|| format!("writing {}", path.display()))?,
        None => std::io::stdout().write_all(&bytes)?,
    }
    Ok(all_passed(&rows))
}
