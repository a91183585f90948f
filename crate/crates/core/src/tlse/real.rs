//! Real solutions `X` (all components but the first vanish).

use nalgebra::{DMatrix, DVector};

use super::{check_sizes, frob2, solve_dense, TlseFactors, TlseProblem, ToleranceConfig};
use crate::error::Result;
use crate::rb::{from_real_block_column, real_block_column, RbMatrix};
use crate::scalar::Real;

#[derive(Debug, Clone)]
pub struct TlseRealSolution<T: Real> {
    pub x: DMatrix<T>,
    pub e_bar: RbMatrix<T>,
    pub f_bar: RbMatrix<T>,
    /// All `n - 4p + d` singular values of `P Q2`, nonincreasing.
    pub sigma: DVector<T>,
    /// `sigma_{n-4p} - sigma_{n-4p+1}`; `None` when `n = 4p`.
    pub gap: Option<T>,
    pub v22_condition: T,
    /// `||[E_bar, F_bar]||_F`.
    pub residual_perturbation_norm: T,
    pub factors: TlseFactors<T>,
}

impl<T: Real> TlseRealSolution<T> {
    pub fn x_rb(&self) -> RbMatrix<T> {
        RbMatrix::from_real(&self.x)
    }
}

/// Builds `P = [A^R_c, B^R_c]` and `S = [C^R_c, D^R_c]`.
pub fn real_system<T: Real>(problem: &TlseProblem<T>) -> (DMatrix<T>, DMatrix<T>) {
    let p_hat = hcat(
        &real_block_column(&problem.a),
        &real_block_column(&problem.b),
    );
    let s_hat = hcat(
        &real_block_column(&problem.c),
        &real_block_column(&problem.d),
    );
    (p_hat, s_hat)
}

pub(crate) fn hcat<S: nalgebra::Scalar + num_traits::Zero>(
    a: &DMatrix<S>,
    b: &DMatrix<S>,
) -> DMatrix<S> {
    let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

pub fn solve_real<T: Real>(
    problem: &TlseProblem<T>,
    tol: &ToleranceConfig,
) -> Result<TlseRealSolution<T>> {
    let (m, n, d) = (problem.m(), problem.n(), problem.d());
    check_sizes(4 * m, n, d)?;
    let (p_hat, s_hat) = real_system(problem);
    let sol = solve_dense(p_hat, s_hat, n, d, tol)?;
    let norm = (frob2(&sol.e_stack) + frob2(&sol.f_stack)).sqrt();
    Ok(TlseRealSolution {
        e_bar: from_real_block_column(&sol.e_stack)?,
        f_bar: from_real_block_column(&sol.f_stack)?,
        x: sol.x,
        sigma: sol.factors.sigma.clone(),
        gap: sol.gap,
        v22_condition: sol.v22_condition,
        residual_perturbation_norm: norm,
        factors: sol.factors,
    })
}

/// `(||(A + E) X - (B + F)||_F, ||C X - D||_F)` in the RB norm.
pub fn residuals_real<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseRealSolution<T>,
) -> Result<(T, T)> {
    let x = solution.x_rb();
    rb_residuals(problem, &solution.e_bar, &solution.f_bar, &x)
}

pub(crate) fn rb_residuals<T: Real>(
    problem: &TlseProblem<T>,
    e: &RbMatrix<T>,
    f: &RbMatrix<T>,
    x: &RbMatrix<T>,
) -> Result<(T, T)> {
    let lhs = problem.a.add(e)?.mat_mul(x)?;
    let r1 = lhs.sub(&problem.b.add(f)?)?.frobenius_norm();
    let r2 = problem.c.mat_mul(x)?.sub(&problem.d)?.frobenius_norm();
    Ok((r1, r2))
}
