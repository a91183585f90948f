//! Equality-constrained total least squares over reduced biquaternion
//! matrices.
//!
//! Both solution types reduce to a dense TLSE problem on a block column
//! representation: `[A_c, B_c]` carries the data, `[C_c, D_c]` the exact
//! constraints. The shared kernel below works over any [`Field`] so the
//! real path (4x real representation) and the complex path (2x complex
//! representation) are the same code.

pub mod complex;
pub mod real;

use nalgebra::{DMatrix, DVector};
use num_traits::Zero;

use crate::error::{dim_err, Error, Result};
use crate::kernels::qr::qr_full;
use crate::kernels::svd::{cond2, numerical_rank, svd_thin};
use crate::rb::RbMatrix;
use crate::scalar::{Field, Real};

pub use complex::{residuals_complex, solve_complex, TlseComplexSolution};
pub use real::{residuals_real, solve_real, TlseRealSolution};

/// Numerical thresholds for the uniqueness and invertibility checks.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig {
    /// The gap `sigma_k - sigma_{k+1}` must exceed
    /// `gap_abs + gap_rel * sigma_1`.
    pub gap_rel: f64,
    pub gap_abs: f64,
    /// Largest accepted 2-norm condition number of the trailing block.
    pub v22_cond_max: f64,
    /// The smallest singular value must exceed this.
    pub positive_sigma: f64,
}

impl Default for ToleranceConfig {
    fn default() -> Self {
        Self {
            gap_rel: 1e-10,
            gap_abs: 0.0,
            v22_cond_max: 1e12,
            positive_sigma: 0.0,
        }
    }
}

/// `min ||[E, F]||_F` subject to `(A + E) X = B + F` and `C X = D`.
#[derive(Debug, Clone, PartialEq)]
pub struct TlseProblem<T: Real> {
    pub a: RbMatrix<T>,
    pub b: RbMatrix<T>,
    pub c: RbMatrix<T>,
    pub d: RbMatrix<T>,
}

impl<T: Real> TlseProblem<T> {
    /// Checks that `A` is `m x n`, `B` is `m x d`, `C` is `p x n` and `D`
    /// is `p x d`. `p` may be zero.
    pub fn new(a: RbMatrix<T>, b: RbMatrix<T>, c: RbMatrix<T>, d: RbMatrix<T>) -> Result<Self> {
        let (m, n) = a.shape();
        if b.rows() != m {
            return Err(dim_err(
                "problem",
                format!("A has {m} rows, B has {}", b.rows()),
            ));
        }
        if c.cols() != n {
            return Err(dim_err(
                "problem",
                format!("A has {n} columns, C has {}", c.cols()),
            ));
        }
        if d.rows() != c.rows() || d.cols() != b.cols() {
            return Err(dim_err(
                "problem",
                format!(
                    "D is {}x{}, expected {}x{}",
                    d.rows(),
                    d.cols(),
                    c.rows(),
                    b.cols()
                ),
            ));
        }
        if n == 0 || b.cols() == 0 {
            return Err(dim_err("problem", "A and B need at least one column"));
        }
        Ok(Self { a, b, c, d })
    }

    pub fn m(&self) -> usize {
        self.a.rows()
    }
    pub fn n(&self) -> usize {
        self.a.cols()
    }
    pub fn d(&self) -> usize {
        self.b.cols()
    }
    pub fn p(&self) -> usize {
        self.c.rows()
    }

    /// `J = [C; A]`, `K = [D; B]`.
    pub fn jk(&self) -> (RbMatrix<T>, RbMatrix<T>) {
        let j = self.c.vstack(&self.a).expect("validated shapes");
        let k = self.d.vstack(&self.b).expect("validated shapes");
        (j, k)
    }

    /// `||[J, K]||_F`.
    pub fn data_norm(&self) -> T {
        let parts = [&self.a, &self.b, &self.c, &self.d];
        parts
            .iter()
            .map(|x| {
                let f = x.frobenius_norm();
                f * f
            })
            .fold(T::zero(), |acc, x| acc + x)
            .sqrt()
    }

    pub fn scale(&self, s: T) -> Self {
        Self {
            a: self.a.scale(s),
            b: self.b.scale(s),
            c: self.c.scale(s),
            d: self.d.scale(s),
        }
    }

    /// Adds a perturbation of the same shape.
    pub fn perturbed(&self, delta: &Self) -> Result<Self> {
        Ok(Self {
            a: self.a.add(&delta.a)?,
            b: self.b.add(&delta.b)?,
            c: self.c.add(&delta.c)?,
            d: self.d.add(&delta.d)?,
        })
    }
}

/// Intermediate quantities of a dense TLSE solve, retained for the
/// condition number.
#[derive(Debug, Clone)]
pub struct TlseFactors<F: Field> {
    /// `[A_c, B_c]`.
    pub p_hat: DMatrix<F>,
    /// `[C_c, D_c]`.
    pub s_hat: DMatrix<F>,
    /// Orthonormal basis of the null space of `s_hat`.
    pub q2: DMatrix<F>,
    /// Left singular vectors of `p_hat * q2`.
    pub u: DMatrix<F>,
    pub sigma: DVector<F::Re>,
    /// `q2 * V`.
    pub v_check: DMatrix<F>,
    pub n: usize,
    pub d: usize,
    /// Number of constraint rows in the representation.
    pub q: usize,
}

impl<F: Field> TlseFactors<F> {
    /// `n - q`.
    pub fn k(&self) -> usize {
        self.n - self.q
    }
    pub fn v12(&self) -> DMatrix<F> {
        self.v_check
            .view((0, self.k()), (self.n, self.d))
            .into_owned()
    }
    pub fn v22(&self) -> DMatrix<F> {
        self.v_check
            .view((self.n, self.k()), (self.d, self.d))
            .into_owned()
    }
}

pub(crate) struct DenseSolution<F: Field> {
    pub x: DMatrix<F>,
    pub e_stack: DMatrix<F>,
    pub f_stack: DMatrix<F>,
    pub gap: Option<F::Re>,
    pub v22_condition: F::Re,
    pub factors: TlseFactors<F>,
}

/// Solves the dense problem given `p_hat = [A_c, B_c]` and
/// `s_hat = [C_c, D_c]` with `n` unknown rows and `d` right-hand sides.
pub(crate) fn solve_dense<F: Field>(
    p_hat: DMatrix<F>,
    s_hat: DMatrix<F>,
    n: usize,
    d: usize,
    tol: &ToleranceConfig,
) -> Result<DenseSolution<F>> {
    let q = s_hat.nrows();
    let nd = n + d;
    debug_assert_eq!(p_hat.ncols(), nd);
    debug_assert_eq!(s_hat.ncols(), nd);
    if q > n {
        return Err(Error::AssumptionViolated(format!(
            "constraint representation has {q} rows but only {n} unknowns"
        )));
    }
    if q > 0 {
        let c_c = s_hat.columns(0, n).into_owned();
        let rank = numerical_rank(&c_c);
        if rank < q {
            return Err(Error::AssumptionViolated(format!(
                "constraint representation has rank {rank}, expected full row rank {q}"
            )));
        }
    }

    let q2 = if q == 0 {
        DMatrix::identity(nd, nd)
    } else {
        qr_full(&s_hat.adjoint()).q.columns(q, nd - q).into_owned()
    };
    let svd = svd_thin(&(&p_hat * &q2));
    let sigma = svd.s;
    let u = svd.u;
    let v_check = &q2 * svd.v;
    let k = n - q;

    let sigma_max = sigma[0];
    let gap = if k > 0 {
        let g = sigma[k - 1] - sigma[k];
        let threshold = F::Re::lit(tol.gap_abs) + F::Re::lit(tol.gap_rel) * sigma_max;
        if g <= threshold {
            return Err(Error::GapConditionFailed {
                index: k,
                next: k + 1,
                gap: g.as_f64(),
                threshold: threshold.as_f64(),
            });
        }
        Some(g)
    } else {
        None
    };
    let last = sigma[sigma.len() - 1];
    if last <= F::Re::lit(tol.positive_sigma) {
        return Err(Error::DegenerateSpectrum {
            sigma: last.as_f64(),
            threshold: tol.positive_sigma,
        });
    }

    let factors = TlseFactors {
        p_hat,
        s_hat,
        q2,
        u,
        sigma,
        v_check,
        n,
        d,
        q,
    };
    let v12 = factors.v12();
    let v22 = factors.v22();
    let v22_condition = cond2(&v22);
    if !(v22_condition.as_f64() <= tol.v22_cond_max) {
        return Err(Error::BlockNotInvertible {
            condition: v22_condition.as_f64(),
            limit: tol.v22_cond_max,
        });
    }
    // X V22 = -V12  <=>  V22^T X^T = -V12^T
    let xt = v22
        .transpose()
        .lu()
        .solve(&(-v12.transpose()))
        .ok_or(Error::BlockNotInvertible {
            condition: f64::INFINITY,
            limit: tol.v22_cond_max,
        })?;
    let x = xt.transpose();

    // -U2 Sigma2 V12^H and -U2 Sigma2 V22^H
    let mut u2s = factors.u.columns(k, d).into_owned();
    for j in 0..d {
        let s = factors.sigma[k + j];
        u2s.column_mut(j).scale_mut(-s);
    }
    let e_stack = &u2s * v12.adjoint();
    let f_stack = &u2s * v22.adjoint();
    Ok(DenseSolution {
        x,
        e_stack,
        f_stack,
        gap,
        v22_condition,
        factors,
    })
}

/// The representation `[A_c, B_c]` must have at least `n + d` rows so
/// that all `n + d - q` singular values of `P Q2` exist.
pub(crate) fn check_sizes(rep_rows: usize, n: usize, d: usize) -> Result<()> {
    if rep_rows < n + d {
        return Err(Error::AssumptionViolated(format!(
            "representation has {rep_rows} rows, fewer than n + d = {}",
            n + d
        )));
    }
    Ok(())
}

pub(crate) fn frob2<F: Field>(m: &DMatrix<F>) -> F::Re {
    m.iter()
        .fold(F::Re::zero(), |acc, x| acc + x.modulus_squared())
}
