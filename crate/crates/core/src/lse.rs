//! Equality-constrained least squares baseline, solved by the null-space
//! method on the block column representation.

use nalgebra::{Complex, DMatrix};

use crate::error::{dim_err, Error, Result};
use crate::kernels::qr::{qr_full, qr_thin};
use crate::kernels::svd::numerical_rank;
use crate::rb::{complex_block_column, real_block_column};
use crate::scalar::{Field, Real};
use crate::tlse::TlseProblem;

#[derive(Debug, Clone)]
pub struct LseSolution<F: Field> {
    pub x: DMatrix<F>,
    /// `||A X - B||_F`.
    pub residual: F::Re,
    /// `||C X - D||_F`.
    pub constraint_residual: F::Re,
}

/// `min ||A X - B||_F` subject to `C X = D`, with `C` of full row rank.
pub fn lse_dense<F: Field>(
    a: &DMatrix<F>,
    b: &DMatrix<F>,
    c: &DMatrix<F>,
    d: &DMatrix<F>,
) -> Result<LseSolution<F>> {
    let n = a.ncols();
    let q = c.nrows();
    if b.nrows() != a.nrows() || c.ncols() != n || d.nrows() != q || d.ncols() != b.ncols() {
        return Err(dim_err(
            "lse",
            format!(
                "A {:?}, B {:?}, C {:?}, D {:?}",
                a.shape(),
                b.shape(),
                c.shape(),
                d.shape()
            ),
        ));
    }
    if q > n {
        return Err(Error::AssumptionViolated(format!(
            "{q} constraint rows exceed {n} unknowns"
        )));
    }
    if q > 0 && numerical_rank(c) < q {
        return Err(Error::AssumptionViolated(
            "constraint matrix is not of full row rank".into(),
        ));
    }

    let (x0, q2) = if q == 0 {
        (DMatrix::zeros(n, b.ncols()), DMatrix::identity(n, n))
    } else {
        // C^H = Q1 R1, so C X = D becomes R1^H (Q1^H X) = D.
        let f = qr_full(&c.adjoint());
        let r1 = f.r.rows(0, q).into_owned();
        let y = r1
            .adjoint()
            .solve_lower_triangular(d)
            .ok_or_else(|| Error::AssumptionViolated("singular constraint factor".into()))?;
        let x0 = f.q.columns(0, q) * y;
        (x0, f.q.columns(q, n - q).into_owned())
    };

    let x = if q == n {
        x0
    } else {
        let aq2 = a * &q2;
        if aq2.nrows() < aq2.ncols() || numerical_rank(&aq2) < aq2.ncols() {
            return Err(Error::AssumptionViolated(
                "A restricted to the constraint null space is rank deficient".into(),
            ));
        }
        let rhs = b - a * &x0;
        let f = qr_thin(&aq2);
        let z =
            f.r.solve_upper_triangular(&f.q.ad_mul(&rhs))
                .ok_or_else(|| Error::AssumptionViolated("singular least squares factor".into()))?;
        x0 + q2 * z
    };
    let residual = (a * &x - b).norm();
    let constraint_residual = (c * &x - d).norm();
    Ok(LseSolution {
        x,
        residual,
        constraint_residual,
    })
}

/// Real solution over `A^R_c`, `B^R_c`, `C^R_c`, `D^R_c`.
pub fn lse_solve_real<T: Real>(problem: &TlseProblem<T>) -> Result<LseSolution<T>> {
    lse_dense(
        &real_block_column(&problem.a),
        &real_block_column(&problem.b),
        &real_block_column(&problem.c),
        &real_block_column(&problem.d),
    )
}

/// Complex solution over `A^C_c`, `B^C_c`, `C^C_c`, `D^C_c`.
pub fn lse_solve_complex<T: Real>(problem: &TlseProblem<T>) -> Result<LseSolution<Complex<T>>> {
    lse_dense(
        &complex_block_column(&problem.a),
        &complex_block_column(&problem.b),
        &complex_block_column(&problem.c),
        &complex_block_column(&problem.d),
    )
}
