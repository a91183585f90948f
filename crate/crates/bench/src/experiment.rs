//! Experiment loops and CSV output.

use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use log::{info, warn};
use nalgebra::DMatrix;
use rayon::prelude::*;
use rbtlse::{
    condition_complex_with, condition_real_with, epsilon_n, lse_solve_complex, lse_solve_real,
    residuals_complex, residuals_real, solve_complex, solve_real, ConditionOptions,
    Error as SolverError, NormStrategy, PerturbationInstance, TlseProblem, ToleranceConfig,
};

use crate::gen::{gen_compare_instance, gen_deltas, gen_instance, Case, Exact, Kind, Sizes};
use crate::BenchError;

pub const CSV_HEADER: [&str; 13] = [
    "experiment",
    "t",
    "m",
    "seed",
    "trial",
    "eps1",
    "eps2",
    "delta_norm",
    "fwd_err",
    "bound",
    "eps_T",
    "eps_L",
    "error",
];

/// Rows with `fwd_err > bound * BOUND_SLACK` are flagged.
pub const BOUND_SLACK: f64 = 1.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Experiment {
    AccuracyReal,
    AccuracyComplex,
    BoundReal,
    BoundComplex,
    CompareLse,
}

impl Experiment {
    pub fn name(self) -> &'static str {
        match self {
            Experiment::AccuracyReal => "accuracy-real",
            Experiment::AccuracyComplex => "accuracy-complex",
            Experiment::BoundReal => "bound-real",
            Experiment::BoundComplex => "bound-complex",
            Experiment::CompareLse => "compare-lse",
        }
    }

    /// Whether points are indexed by `t` (as opposed to `m`).
    pub fn uses_t(self) -> bool {
        self != Experiment::CompareLse
    }

    fn kind(self) -> Kind {
        match self {
            Experiment::AccuracyReal | Experiment::BoundReal => Kind::Real,
            Experiment::AccuracyComplex | Experiment::BoundComplex => Kind::Complex,
            Experiment::CompareLse => Kind::Real,
        }
    }

    fn sizes(self, t: usize) -> Sizes {
        match self.kind() {
            Kind::Real => Sizes::accuracy_real(t),
            Kind::Complex => Sizes::accuracy_complex(t),
        }
    }
}

impl fmt::Display for Experiment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Experiment {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        [
            Experiment::AccuracyReal,
            Experiment::AccuracyComplex,
            Experiment::BoundReal,
            Experiment::BoundComplex,
            Experiment::CompareLse,
        ]
        .into_iter()
        .find(|e| e.name() == s)
        .ok_or_else(|| format!("unknown experiment {s:?}"))
    }
}

#[derive(Debug, Clone)]
pub struct ExperimentConfig {
    pub experiment: Experiment,
    /// Values of `t`, or of `m` for `compare-lse`.
    pub points: Vec<usize>,
    pub seed: u64,
    pub trials: usize,
    /// Target `eps_n` values for bound runs.
    pub magnitudes: Vec<f64>,
    pub case: Case,
    /// Real- or complex-solution variant for `compare-lse`.
    pub variant: Kind,
    /// Perturbation scale for `compare-lse`.
    pub scale: f64,
    pub norm: NormStrategy,
    pub out: Option<PathBuf>,
}

impl ExperimentConfig {
    pub fn new(experiment: Experiment) -> Self {
        let (points, trials) = match experiment {
            Experiment::CompareLse => (vec![60, 80, 100, 120], 20),
            _ => (vec![1, 3, 5, 7, 9], 1),
        };
        Self {
            experiment,
            points,
            seed: 0,
            trials,
            magnitudes: vec![1e-11, 1e-8, 1e-5],
            case: Case::Both,
            variant: Kind::Real,
            scale: 0.01,
            norm: NormStrategy::Auto,
            out: None,
        }
    }

    pub fn validate(&self) -> Result<(), BenchError> {
        let bad = |msg: String| Err(BenchError::Config(msg));
        if self.points.is_empty() {
            return bad("no points to run".into());
        }
        if self.trials == 0 {
            return bad("trials must be positive".into());
        }
        if matches!(
            self.experiment,
            Experiment::BoundReal | Experiment::BoundComplex
        ) {
            if self.magnitudes.is_empty() {
                return bad("no perturbation magnitudes".into());
            }
            if let Some(e) = self
                .magnitudes
                .iter()
                .find(|e| !(e.is_finite() && **e > 0.0))
            {
                return bad(format!("perturbation magnitude {e} must be positive"));
            }
        }
        for &pt in &self.points {
            if self.experiment == Experiment::CompareLse {
                if pt <= crate::gen::COMPARE_N {
                    return bad(format!("m = {pt} must exceed {}", crate::gen::COMPARE_N));
                }
            } else if pt == 0 {
                return bad("t must be positive".into());
            }
        }
        if !(self.scale.is_finite() && self.scale >= 0.0) {
            return bad(format!("scale {} must be nonnegative", self.scale));
        }
        Ok(())
    }

    fn condition_options(&self) -> ConditionOptions {
        ConditionOptions {
            strategy: self.norm,
            ..ConditionOptions::default()
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Trial {
    Index(usize),
    Mean,
}

impl fmt::Display for Trial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Trial::Index(i) => write!(f, "{i}"),
            Trial::Mean => f.write_str("mean"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentRecord {
    pub experiment: Experiment,
    pub t: Option<usize>,
    pub m: usize,
    pub seed: u64,
    pub trial: Trial,
    pub eps1: Option<f64>,
    pub eps2: Option<f64>,
    pub delta_norm: Option<f64>,
    pub fwd_err: Option<f64>,
    pub bound: Option<f64>,
    pub eps_t: Option<f64>,
    pub eps_l: Option<f64>,
    pub error: Option<String>,
    /// Target `eps_n` of a bound row.
    pub eps_n: Option<f64>,
    /// Set when a bound row exceeds `bound * BOUND_SLACK`.
    pub flagged: bool,
}

impl ExperimentRecord {
    fn blank(experiment: Experiment, t: Option<usize>, m: usize, seed: u64, trial: Trial) -> Self {
        Self {
            experiment,
            t,
            m,
            seed,
            trial,
            eps1: None,
            eps2: None,
            delta_norm: None,
            fwd_err: None,
            bound: None,
            eps_t: None,
            eps_l: None,
            error: None,
            eps_n: None,
            flagged: false,
        }
    }

    fn failed(mut self, e: impl fmt::Display) -> Self {
        self.error = Some(e.to_string());
        self
    }

    fn point(&self) -> usize {
        self.t.unwrap_or(self.m)
    }

    fn metrics(&self) -> [Option<f64>; 7] {
        [
            self.eps1,
            self.eps2,
            self.delta_norm,
            self.fwd_err,
            self.bound,
            self.eps_t,
            self.eps_l,
        ]
    }

    /// Every populated metric is finite, and the row carries metrics or an
    /// error but not both.
    pub fn is_well_formed(&self) -> bool {
        let has_metric = self.metrics().iter().any(Option::is_some);
        let finite = self.metrics().iter().flatten().all(|v| v.is_finite());
        match &self.error {
            Some(e) => !e.is_empty() && !has_metric,
            None => has_metric && finite,
        }
    }

    /// True for bound rows dropped because the perturbed problem violated a
    /// solver assumption.
    pub fn is_discarded(&self) -> bool {
        self.error.is_some()
    }

    fn csv_fields(&self) -> Vec<String> {
        let num = |v: Option<f64>| v.map(|x| format!("{x:e}")).unwrap_or_default();
        let mut out = vec![
            self.experiment.name().to_string(),
            self.t.map(|t| t.to_string()).unwrap_or_default(),
            self.m.to_string(),
            self.seed.to_string(),
            self.trial.to_string(),
        ];
        out.extend(self.metrics().into_iter().map(num));
        out.push(self.error.clone().unwrap_or_default());
        out
    }
}

/// Runs every trial of `config` and returns the sorted records.
pub fn run_records(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, BenchError> {
    config.validate()?;
    let tasks: Vec<(usize, usize)> = config
        .points
        .iter()
        .flat_map(|&pt| (0..config.trials).map(move |tr| (pt, tr)))
        .collect();
    let mut records: Vec<ExperimentRecord> = tasks
        .par_iter()
        .flat_map_iter(|&(pt, tr)| run_trial(config, pt, tr))
        .collect();
    if config.experiment == Experiment::CompareLse {
        for &m in &config.points {
            let mean = mean_record(config, m, &records);
            records.push(mean);
        }
    }
    records.sort_by_key(|r| (r.point(), r.trial));
    Ok(records)
}

/// Runs `config`, writes the CSV (atomically when `config.out` is set) and
/// returns the records.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Vec<ExperimentRecord>, BenchError> {
    let records = run_records(config)?;
    match &config.out {
        Some(path) => write_csv_atomic(path, &records)?,
        None => write_csv(std::io::stdout().lock(), &records)?,
    }
    Ok(records)
}

pub fn write_csv<W: Write>(w: W, records: &[ExperimentRecord]) -> Result<(), BenchError> {
    let mut wr = csv::Writer::from_writer(w);
    wr.write_record(CSV_HEADER)?;
    for r in records {
        wr.write_record(r.csv_fields())?;
    }
    wr.flush()?;
    Ok(())
}

/// Writes to a temporary file next to `path` and renames it into place.
pub fn write_csv_atomic(path: &Path, records: &[ExperimentRecord]) -> Result<(), BenchError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    write_csv(&mut tmp, records)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| BenchError::Io(e.error))?;
    info!("wrote {} records to {}", records.len(), path.display());
    Ok(())
}

fn trial_seed(config: &ExperimentConfig, trial: usize) -> u64 {
    config.seed.wrapping_add(trial as u64)
}

fn run_trial(config: &ExperimentConfig, pt: usize, trial: usize) -> Vec<ExperimentRecord> {
    let seed = trial_seed(config, trial);
    match config.experiment {
        Experiment::AccuracyReal | Experiment::AccuracyComplex => {
            vec![accuracy_trial(config, pt, trial, seed)]
        }
        Experiment::BoundReal | Experiment::BoundComplex => bound_trial(config, pt, trial, seed),
        Experiment::CompareLse => vec![compare_trial(config, pt, trial, seed)],
    }
}

fn accuracy_trial(
    config: &ExperimentConfig,
    t: usize,
    trial: usize,
    seed: u64,
) -> ExperimentRecord {
    let exp = config.experiment;
    let sizes = exp.sizes(t);
    let rec = ExperimentRecord::blank(exp, Some(t), sizes.m, seed, Trial::Index(trial));
    let problem = gen_instance(exp.kind(), sizes, seed);
    let tol = ToleranceConfig::default();
    let res = match exp.kind() {
        Kind::Real => solve_real(&problem, &tol).and_then(|s| residuals_real(&problem, &s)),
        Kind::Complex => {
            solve_complex(&problem, &tol).and_then(|s| residuals_complex(&problem, &s))
        }
    };
    match res {
        Ok((e1, e2)) => ExperimentRecord {
            eps1: Some(e1),
            eps2: Some(e2),
            ..rec
        },
        Err(e) => rec.failed(e),
    }
}

/// Solution and condition number of one problem, on the path matching `kind`.
struct Solved {
    x: DMatrix<nalgebra::Complex<f64>>,
    kappa: f64,
}

fn solve_kind(
    kind: Kind,
    problem: &TlseProblem<f64>,
    opts: Option<&ConditionOptions>,
) -> Result<Solved, SolverError> {
    let tol = ToleranceConfig::default();
    match kind {
        Kind::Real => {
            let s = solve_real(problem, &tol)?;
            let kappa = match opts {
                Some(o) => condition_real_with(problem, &s, o)?.kappa,
                None => f64::NAN,
            };
            Ok(Solved {
                x: s.x.map(|v| nalgebra::Complex::new(v, 0.0)),
                kappa,
            })
        }
        Kind::Complex => {
            let s = solve_complex(problem, &tol)?;
            let kappa = match opts {
                Some(o) => condition_complex_with(problem, &s, o)?.kappa,
                None => f64::NAN,
            };
            Ok(Solved { x: s.x, kappa })
        }
    }
}

fn bound_trial(
    config: &ExperimentConfig,
    t: usize,
    trial: usize,
    seed: u64,
) -> Vec<ExperimentRecord> {
    let exp = config.experiment;
    let sizes = exp.sizes(t);
    let nmag = config.magnitudes.len();
    let blank = |k: usize| ExperimentRecord {
        eps_n: Some(config.magnitudes[k]),
        ..ExperimentRecord::blank(exp, Some(t), sizes.m, seed, Trial::Index(trial * nmag + k))
    };
    let problem = gen_instance(exp.kind(), sizes, seed);
    let base = match solve_kind(exp.kind(), &problem, Some(&config.condition_options())) {
        Ok(b) => b,
        Err(e) => {
            warn!("{exp} t={t} trial={trial}: base problem failed: {e}");
            return (0..nmag).map(|k| blank(k).failed(&e)).collect();
        }
    };
    let x_norm = base.x.norm();

    let mut out = Vec::with_capacity(nmag);
    for (k, &target) in config.magnitudes.iter().enumerate() {
        let rec = blank(k);
        let delta_seed = seed ^ (0x9E37_79B9_7F4A_7C15u64.wrapping_mul(k as u64 + 1));
        let unit = gen_deltas(&problem, delta_seed);
        let raw = match PerturbationInstance::new(problem.clone(), unit.clone())
            .and_then(|i| epsilon_n(&i))
        {
            Ok(v) => v,
            Err(e) => {
                out.push(rec.failed(e));
                continue;
            }
        };
        let instance = PerturbationInstance::new(problem.clone(), unit.scale(target / raw))
            .expect("same shapes");
        let eps_n = epsilon_n(&instance).expect("nonzero data norm");
        let (_, djk) = instance.concatenations();
        let perturbed = instance.perturbed();
        match solve_kind(exp.kind(), &perturbed, None) {
            Ok(p) => {
                let fwd = (&p.x - &base.x).norm() / x_norm;
                let bound = base.kappa * eps_n;
                let flagged = fwd > bound * BOUND_SLACK;
                if flagged {
                    warn!("{exp} t={t} trial={trial} eps_n={target:e}: forward error {fwd:e} exceeds bound {bound:e}");
                }
                out.push(ExperimentRecord {
                    delta_norm: Some(djk.frobenius_norm()),
                    fwd_err: Some(fwd),
                    bound: Some(bound),
                    flagged,
                    ..rec
                });
            }
            Err(e) => {
                if matches!(e, SolverError::GapConditionFailed { .. }) {
                    info!("{exp} t={t} trial={trial} eps_n={target:e}: discarded: {e}");
                } else {
                    warn!("{exp} t={t} trial={trial} eps_n={target:e}: {e}");
                }
                out.push(rec.failed(e));
            }
        }
    }
    out
}

fn compare_trial(config: &ExperimentConfig, m: usize, trial: usize, seed: u64) -> ExperimentRecord {
    let rec = ExperimentRecord::blank(config.experiment, None, m, seed, Trial::Index(trial));
    let inst = gen_compare_instance(config.case, m, seed, config.variant, config.scale);
    let errors = || -> Result<(f64, f64), SolverError> {
        match (&inst.exact, config.variant) {
            (Exact::Real(x), Kind::Real) => {
                let xt = solve_kind(Kind::Real, &inst.perturbed, None)?
                    .x
                    .map(|c| c.re);
                let xl = lse_solve_real(&inst.perturbed)?.x;
                Ok(((xt - x).norm(), (xl - x).norm()))
            }
            (Exact::Complex(x), Kind::Complex) => {
                let xt = solve_kind(Kind::Complex, &inst.perturbed, None)?.x;
                let xl = lse_solve_complex(&inst.perturbed)?.x;
                Ok(((xt - x).norm(), (xl - x).norm()))
            }
            _ => unreachable!("exact solution matches the variant"),
        }
    };
    match errors() {
        Ok((et, el)) => ExperimentRecord {
            eps_t: Some(et),
            eps_l: Some(el),
            ..rec
        },
        Err(e) => rec.failed(e),
    }
}

fn mean_record(
    config: &ExperimentConfig,
    m: usize,
    records: &[ExperimentRecord],
) -> ExperimentRecord {
    let rec = ExperimentRecord::blank(config.experiment, None, m, config.seed, Trial::Mean);
    let ok: Vec<_> = records
        .iter()
        .filter(|r| r.m == m && r.error.is_none())
        .collect();
    if ok.is_empty() {
        return rec.failed("no successful trials");
    }
    let mean = |f: fn(&ExperimentRecord) -> Option<f64>| {
        ok.iter().filter_map(|r| f(r)).sum::<f64>() / ok.len() as f64
    };
    ExperimentRecord {
        eps_t: Some(mean(|r| r.eps_t)),
        eps_l: Some(mean(|r| r.eps_l)),
        ..rec
    }
}
