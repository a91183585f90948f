//! Command-line interface.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rbtlse::{ConditionOptions, NormStrategy};

use crate::experiment::{run_experiment, Experiment, ExperimentConfig};
use crate::gen::{Case, Kind};
use crate::report::{load_problem, solve_problem};
use crate::BenchError;

#[derive(Debug, Parser)]
#[command(
    name = "rbtlse",
    version,
    about = "Equality-constrained total least squares over reduced biquaternion matrices"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run a seeded experiment and emit CSV.
    Run(RunArgs),
    /// Solve for a real X from RBMAT files.
    SolveReal(SolveArgs),
    /// Solve for a complex X from RBMAT files.
    SolveComplex(SolveArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum Variant {
    Real,
    Complex,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// accuracy-real, accuracy-complex, bound-real, bound-complex or compare-lse.
    pub experiment: Experiment,
    #[arg(long, conflicts_with = "m_list")]
    pub t_min: Option<usize>,
    #[arg(long, conflicts_with = "m_list")]
    pub t_max: Option<usize>,
    #[arg(long, default_value_t = 2, conflicts_with = "m_list")]
    pub t_step: usize,
    /// Comma-separated row counts for compare-lse.
    #[arg(long, value_delimiter = ',')]
    pub m_list: Option<Vec<usize>>,
    /// 1: coefficient and right-hand side perturbed; 2: right-hand side only.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub case: u8,
    #[arg(long, value_enum, default_value_t = Variant::Real)]
    pub variant: Variant,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Output CSV path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Evaluate condition numbers by power iteration.
    #[arg(long)]
    pub iterative_norm: bool,
}

#[derive(Debug, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub a: PathBuf,
    #[arg(long)]
    pub b: PathBuf,
    #[arg(long)]
    pub c: PathBuf,
    #[arg(long)]
    pub d: PathBuf,
    /// Also write the report to this path.
    #[arg(long)]
    pub report: Option<PathBuf>,
    /// Relative data perturbation used for U.
    #[arg(long, default_value_t = f64::EPSILON)]
    pub eps_n: f64,
    #[arg(long)]
    pub iterative_norm: bool,
}

fn strategy(iterative: bool) -> NormStrategy {
    if iterative {
        NormStrategy::Iterative
    } else {
        NormStrategy::Auto
    }
}

impl RunArgs {
    pub fn config(&self) -> Result<ExperimentConfig, BenchError> {
        let mut cfg = ExperimentConfig::new(self.experiment);
        if self.experiment.uses_t() {
            if self.m_list.is_some() {
                return Err(BenchError::Config(format!(
                    "{} takes --t-min/--t-max, not --m-list",
                    self.experiment
                )));
            }
            if self.t_min.is_some() || self.t_max.is_some() {
                let lo = self.t_min.unwrap_or(1);
                let hi = self.t_max.unwrap_or(lo);
                if self.t_step == 0 || lo > hi {
                    return Err(BenchError::Config(format!(
                        "empty t range {lo}..={hi} step {}",
                        self.t_step
                    )));
                }
                cfg.points = (lo..=hi).step_by(self.t_step).collect();
            }
        } else {
            if self.t_min.is_some() || self.t_max.is_some() {
                return Err(BenchError::Config(
                    "compare-lse takes --m-list, not a t range".into(),
                ));
            }
            if let Some(ms) = &self.m_list {
                cfg.points = ms.clone();
            }
        }
        cfg.case = Case::from_index(self.case).expect("range checked by the parser");
        cfg.variant = match self.variant {
            Variant::Real => Kind::Real,
            Variant::Complex => Kind::Complex,
        };
        cfg.seed = self.seed;
        if let Some(t) = self.trials {
            cfg.trials = t;
        }
        cfg.out = self.out.clone();
        cfg.norm = strategy(self.iterative_norm);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn solve(kind: Kind, args: &SolveArgs) -> Result<(), BenchError> {
    if !(args.eps_n.is_finite() && args.eps_n >= 0.0) {
        return Err(BenchError::Config(format!(
            "--eps-n {} must be nonnegative",
            args.eps_n
        )));
    }
    let problem = load_problem(&args.a, &args.b, &args.c, &args.d)?;
    let opts = ConditionOptions {
        strategy: strategy(args.iterative_norm),
        ..ConditionOptions::default()
    };
    let text = solve_problem(kind, &problem, args.eps_n, &opts)?.render();
    if let Some(path) = &args.report {
        std::fs::write(path, &text)?;
    }
    std::io::stdout().lock().write_all(text.as_bytes())?;
    Ok(())
}

pub fn execute(cli: &Cli) -> Result<(), BenchError> {
    match &cli.command {
        Command::Run(args) => {
            let cfg = args.config()?;
            let records = run_experiment(&cfg)?;
            let flagged = records.iter().filter(|r| r.flagged).count();
            if flagged > 0 {
                log::warn!("{flagged} rows exceed their forward error bound");
            }
            Ok(())
        }
        Command::SolveReal(args) => solve(Kind::Real, args),
        Command::SolveComplex(args) => solve(Kind::Complex, args),
    }
}
