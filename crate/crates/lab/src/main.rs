use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Result};
use clap::{Parser, Subcommand};
use pauli_lab::commands::{self, RunConfig};
use pauli_lab::output::{render, Format};

#[derive(Parser)]
#[command(name = "pauli-lab", version, about = "Pauli measurement systems: counts, spectra, solvers and games")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 2)]
    n: usize,
    #[arg(long, global = true)]
    k: Option<usize>,
    #[arg(long, global = true, value_parser = parse_u64, default_value = "12648430")]
    seed: u64,
    /// Node budget; scientific notation such as 2e9 is accepted.
    #[arg(long, global = true, value_parser = parse_u64, default_value = "2e9")]
    budget: u64,
    #[arg(long, global = true, default_value = "json")]
    format: String,
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "all")]
    suite: String,
    #[arg(long, global = true, default_value = "gw")]
    graph: String,
    #[arg(long, global = true, default_value = "z1")]
    name: String,
    #[arg(long, global = true, default_value = "quantum")]
    strategy: String,
    #[arg(long, global = true, default_value = "exact")]
    mode: String,
    #[arg(long, global = true, value_parser = parse_u64, default_value = "100000")]
    samples: u64,
    #[arg(long = "n-max", global = true, default_value_t = 4)]
    n_max: usize,
}

#[derive(Subcommand, Clone, Copy)]
enum Command {
    /// Count isotropic subspaces of a given dimension.
    Count,
    /// Write every isotropic subspace of a given dimension to a fixture.
    Enumerate,
    /// Spectrum of one of the graphs gwp, gw, b or sn.
    Spectra,
    /// Write a graph's adjacency list and vertex payload into the --out directory.
    Export,
    /// Partial-assignment value.
    Pval,
    /// Contextual-assignment value.
    Cval,
    /// Evaluate a strategy on a nonlocal game.
    Game,
    /// Random-walk product construction and its bounds.
    Walks,
    /// Run a verification suite.
    Verify,
}

fn parse_u64(s: &str) -> Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return Ok(v);
    }
    if let Some(hex) = s.strip_prefix("0x").or_else(|| s.strip_prefix("0X")) {
        return u64::from_str_radix(hex, 16).map_err(|e| e.to_string());
    }
    let f: f64 = s.parse().map_err(|_| format!("not a number: {s:?}"))?;
    if !f.is_finite() || f < 0.0 || f.fract() != 0.0 || f > u64::MAX as f64 {
        return Err(format!("not a non-negative integer: {s:?}"));
    }
    Ok(f as u64)
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = RunConfig {
        n: cli.n,
        k: cli.k,
        seed: cli.seed,
        budget: cli.budget,
        out: cli.out.clone(),
        suite: cli.suite.clone(),
        graph: cli.graph.clone(),
        name: cli.name.clone(),
        strategy: cli.strategy.clone(),
        mode: cli.mode.clone(),
        samples: cli.samples,
        n_max: cli.n_max,
    };
    let format = Format::parse(&cli.format)?;
    if let Command::Export = cli.command {
        let dir = cfg.out.clone().ok_or_else(|| anyhow!("export needs --out DIR"))?;
        let (a, p) = commands::export_graph(&cfg, &dir)?;
        println!("{}\n{}", a.display(), p.display());
        return Ok(true);
    }
    let report = match cli.command {
        Command::Count => commands::count(&cfg)?,
        Command::Enumerate => commands::enumerate(&cfg)?,
        Command::Spectra => commands::spectra(&cfg)?,
        Command::Pval => commands::pval(&cfg)?,
        Command::Cval => commands::cval(&cfg)?,
        Command::Game => commands::game(&cfg)?,
        Command::Walks => commands::walks(&cfg)?,
        Command::Verify => commands::verify_suite(&cfg)?,
        Command::Export => unreachable!(),
    };
    let text = render(&report, format)?;
    match (&cfg.out, cli.command) {
        (Some(path), c) if !matches!(c, Command::Enumerate) => {
            std::fs::write(path, &text)?;
        }
        _ => print!("{text}"),
    }
    Ok(report.passed())
}

fn main() -> ExitCode {
    pauli_lab::init_threads();
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
