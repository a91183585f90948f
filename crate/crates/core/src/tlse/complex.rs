//! Complex solutions `X` (vanishing `j` part), computed natively on the
//! `2x` complex representation.

use nalgebra::{Complex, DMatrix, DVector};

use super::real::{hcat, rb_residuals};
use super::{check_sizes, frob2, solve_dense, TlseFactors, TlseProblem, ToleranceConfig};
use crate::error::Result;
use crate::rb::{complex_block_column, from_complex_block_column, RbMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct TlseComplexSolution<T: Real> {
    pub x: DMatrix<Complex<T>>,
    pub g_bar: RbMatrix<T>,
    pub h_bar: RbMatrix<T>,
    /// All `n - 2p + d` singular values of `P Q2`, nonincreasing.
    pub sigma: DVector<T>,
    /// `sigma_{n-2p} - sigma_{n-2p+1}`; `None` when `n = 2p`.
    pub gap: Option<T>,
    pub v22_condition: T,
    /// `||[G_bar, H_bar]||_F`.
    pub residual_perturbation_norm: T,
    pub factors: TlseFactors<Complex<T>>,
}

impl<T: Real> TlseComplexSolution<T> {
    pub fn x_rb(&self) -> RbMatrix<T> {
        RbMatrix::from_complex(&self.x)
    }
}

/// Builds `P = [A^C_c, B^C_c]` and `S = [C^C_c, D^C_c]`.
pub fn complex_system<T: Real>(
    problem: &TlseProblem<T>,
) -> (DMatrix<Complex<T>>, DMatrix<Complex<T>>) {
    let p_hat = hcat(
        &complex_block_column(&problem.a),
        &complex_block_column(&problem.b),
    );
    let s_hat = hcat(
        &complex_block_column(&problem.c),
        &complex_block_column(&problem.d),
    );
    (p_hat, s_hat)
}

pub fn solve_complex<T: Real>(
    problem: &TlseProblem<T>,
    tol: &ToleranceConfig,
) -> Result<TlseComplexSolution<T>> {
    let (m, n, d) = (problem.m(), problem.n(), problem.d());
    check_sizes(2 * m, n, d)?;
    let (p_hat, s_hat) = complex_system(problem);
    let sol = solve_dense(p_hat, s_hat, n, d, tol)?;
    let norm = (frob2(&sol.e_stack) + frob2(&sol.f_stack)).sqrt();
    Ok(TlseComplexSolution {
        g_bar: from_complex_block_column(&sol.e_stack)?,
        h_bar: from_complex_block_column(&sol.f_stack)?,
        x: sol.x,
        sigma: sol.factors.sigma.clone(),
        gap: sol.gap,
        v22_condition: sol.v22_condition,
        residual_perturbation_norm: norm,
        factors: sol.factors,
    })
}

/// `(||(A + G) X - (B + H)||_F, ||C X - D||_F)` in the RB norm.
pub fn residuals_complex<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseComplexSolution<T>,
) -> Result<(T, T)> {
    let x = solution.x_rb();
    rb_residuals(problem, &solution.g_bar, &solution.h_bar, &x)
}
