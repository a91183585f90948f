//! Spectral norm, densely or by power iteration on `M^H M`.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_traits::Zero;

use super::operator::LinearOperator;
use super::svd::singular_values;
use crate::error::{Error, Result};
use crate::scalar::{Field, Real};

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum NormMethod {
    Dense,
    Iterative { tol: f64, max_iter: usize },
}

impl NormMethod {
    pub fn iterative() -> Self {
        NormMethod::Iterative {
            tol: 1e-10,
            max_iter: 5000,
        }
    }
}

/// Largest singular value from the dense SVD.
pub fn spectral_norm<F: Field>(m: &DMatrix<F>) -> F::Re {
    singular_values(m)
        .iter()
        .next()
        .copied()
        .unwrap_or_else(F::Re::zero)
}

pub fn spectral_norm_with<F: Field>(m: &DMatrix<F>, method: NormMethod) -> Result<F::Re> {
    match method {
        NormMethod::Dense => Ok(spectral_norm(m)),
        NormMethod::Iterative { tol, max_iter } => power_iteration(m, tol, max_iter),
    }
}

/// Power iteration on `A^H A`, stopping when the Rayleigh quotient
/// `||A x||^2` changes by at most `tol` relative.
pub fn power_iteration<F: Field>(
    op: &dyn LinearOperator<F>,
    tol: f64,
    max_iter: usize,
) -> Result<F::Re> {
    let n = op.ncols();
    if n == 0 || op.nrows() == 0 {
        return Ok(F::Re::zero());
    }
    let mut x = DVector::from_fn(n, |i, _| {
        F::from_real(F::Re::lit(1.0 + 0.5 * ((i + 1) as f64).sin()))
    });
    x.unscale_mut(x.norm());
    let tol = F::Re::lit(tol);
    let mut prev = F::Re::zero();
    for _ in 0..max_iter {
        let y = op.apply(&x);
        let rq = y.norm_squared();
        let z = op.apply_adjoint(&y);
        let zn = z.norm();
        if zn == F::Re::zero() {
            return Ok(F::Re::zero());
        }
        if (rq - prev).abs() <= tol * rq {
            return Ok(rq.sqrt());
        }
        prev = rq;
        x = z.unscale(zn);
    }
    Err(Error::NotConverged {
        iterations: max_iter,
        estimate: prev.sqrt().as_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pseudo(rows: usize, cols: usize, seed: u64) -> DMatrix<f64> {
        let mut s = seed.wrapping_mul(0x9E3779B97F4A7C15) | 1;
        DMatrix::from_fn(rows, cols, |_, _| {
            s ^= s << 13;
            s ^= s >> 7;
            s ^= s << 17;
            ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        })
    }

    #[test]
    fn trivial_norms() {
        assert_eq!(spectral_norm(&DMatrix::<f64>::identity(4, 4)), 1.0);
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![5.0, 1.0]));
        assert_eq!(spectral_norm(&d), 5.0);
        let it: f64 = spectral_norm_with(&d, NormMethod::iterative()).unwrap();
        assert!((it - 5.0).abs() < 1e-9);
        assert_eq!(spectral_norm(&DMatrix::<f64>::zeros(3, 2)), 0.0);
        assert_eq!(
            power_iteration(&DMatrix::<f64>::zeros(3, 2), 1e-10, 10).unwrap(),
            0.0
        );
    }

    #[test]
    fn dense_and_iterative_agree() {
        let m = pseudo(50, 80, 17);
        let dense = spectral_norm(&m);
        let iter = spectral_norm_with(&m, NormMethod::iterative()).unwrap();
        assert!((dense - iter).abs() / dense < 1e-8, "{dense} {iter}");
    }

    #[test]
    fn nonconvergence_carries_estimate() {
        let d = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, 0.999_999]));
        match power_iteration(&d, 1e-300, 3) {
            Err(Error::NotConverged {
                iterations,
                estimate,
            }) => {
                assert_eq!(iterations, 3);
                assert!(estimate > 0.99 && estimate <= 1.0);
            }
            other => panic!("{other:?}"),
        }
    }
}
