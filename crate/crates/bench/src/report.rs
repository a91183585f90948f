//! Single-problem solves from `RBMAT v1` files.

use std::fmt::Write as _;
use std::path::Path;

use nalgebra::{Complex, DMatrix};
use rbtlse::{
    condition_complex_with, condition_real_with, from_rbmat, residuals_complex, residuals_real,
    solve_complex, solve_real, ConditionOptions, RbMatrix, TlseProblem, ToleranceConfig,
};

use crate::gen::Kind;
use crate::BenchError;

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub kind: Kind,
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub d: usize,
    pub x: DMatrix<Complex<f64>>,
    pub eps1: f64,
    pub eps2: f64,
    pub perturbation_norm: f64,
    pub gap: Option<f64>,
    pub v22_condition: f64,
    pub kappa: f64,
    pub eps_n: f64,
    pub bound: f64,
}

pub fn read_rbmat(path: &Path) -> Result<RbMatrix<f64>, BenchError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| BenchError::Input(format!("{}: {e}", path.display())))?;
    from_rbmat(&text).map_err(|e| BenchError::Input(format!("{}: {e}", path.display())))
}

pub fn load_problem(
    a: &Path,
    b: &Path,
    c: &Path,
    d: &Path,
) -> Result<TlseProblem<f64>, BenchError> {
    let problem = TlseProblem::new(
        read_rbmat(a)?,
        read_rbmat(b)?,
        read_rbmat(c)?,
        read_rbmat(d)?,
    )
    .map_err(|e| BenchError::Input(e.to_string()))?;
    Ok(problem)
}

/// Solves `problem` on the `kind` path; `U = kappa * eps_n`.
pub fn solve_problem(
    kind: Kind,
    problem: &TlseProblem<f64>,
    eps_n: f64,
    opts: &ConditionOptions,
) -> Result<SolveReport, BenchError> {
    let tol = ToleranceConfig::default();
    let (x, (eps1, eps2), perturbation_norm, gap, v22_condition, kappa) = match kind {
        Kind::Real => {
            let s = solve_real(problem, &tol)?;
            let kappa = condition_real_with(problem, &s, opts)?.kappa;
            (
                s.x.map(|v| Complex::new(v, 0.0)),
                residuals_real(problem, &s)?,
                s.residual_perturbation_norm,
                s.gap,
                s.v22_condition,
                kappa,
            )
        }
        Kind::Complex => {
            let s = solve_complex(problem, &tol)?;
            let kappa = condition_complex_with(problem, &s, opts)?.kappa;
            (
                s.x.clone(),
                residuals_complex(problem, &s)?,
                s.residual_perturbation_norm,
                s.gap,
                s.v22_condition,
                kappa,
            )
        }
    };
    Ok(SolveReport {
        kind,
        m: problem.m(),
        n: problem.n(),
        p: problem.p(),
        d: problem.d(),
        x,
        eps1,
        eps2,
        perturbation_norm,
        gap,
        v22_condition,
        kappa,
        eps_n,
        bound: kappa * eps_n,
    })
}

impl SolveReport {
    pub fn render(&self) -> String {
        let mut s = String::new();
        let solver = match self.kind {
            Kind::Real => "real",
            Kind::Complex => "complex",
        };
        writeln!(s, "solver: {solver}").unwrap();
        writeln!(
            s,
            "size: m={} n={} p={} d={}",
            self.m, self.n, self.p, self.d
        )
        .unwrap();
        writeln!(s, "eps1: {:e}", self.eps1).unwrap();
        writeln!(s, "eps2: {:e}", self.eps2).unwrap();
        writeln!(s, "perturbation_norm: {:e}", self.perturbation_norm).unwrap();
        match self.gap {
            Some(g) => writeln!(s, "gap: {g:e}").unwrap(),
            None => writeln!(s, "gap: none").unwrap(),
        }
        writeln!(s, "v22_condition: {:e}", self.v22_condition).unwrap();
        writeln!(s, "kappa: {:e}", self.kappa).unwrap();
        writeln!(s, "eps_n: {:e}", self.eps_n).unwrap();
        writeln!(s, "U: {:e}", self.bound).unwrap();
        writeln!(s, "X: {} x {}", self.x.nrows(), self.x.ncols()).unwrap();
        for i in 0..self.x.nrows() {
            let row: Vec<String> = (0..self.x.ncols())
                .map(|j| {
                    let v = self.x[(i, j)];
                    match self.kind {
                        Kind::Real => format!("{:e}", v.re),
                        Kind::Complex => format!("{:e}{:+e}i", v.re, v.im),
                    }
                })
                .collect();
            writeln!(s, "{}", row.join(" ")).unwrap();
        }
        s
    }
}
