//! Kronecker products and the commutation matrix.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::scalar::Field;

/// Dense constructions larger than this many entries are refused.
pub const DENSE_ENTRY_LIMIT: usize = 100_000_000;

pub(crate) fn check_size(rows: usize, cols: usize, limit: usize) -> Result<()> {
    match rows.checked_mul(cols) {
        Some(n) if n <= limit => Ok(()),
        _ => Err(Error::SizeLimit { rows, cols, limit }),
    }
}

/// `A ⊗ B` with the standard block layout `[a_ij B]`.
pub fn kron<F: Field>(a: &DMatrix<F>, b: &DMatrix<F>) -> Result<DMatrix<F>> {
    let (ar, ac) = a.shape();
    let (br, bc) = b.shape();
    let rows = ar * br;
    let cols = ac * bc;
    check_size(rows, cols, DENSE_ENTRY_LIMIT)?;
    let mut out = DMatrix::zeros(rows, cols);
    for j in 0..ac {
        for i in 0..ar {
            let aij = a[(i, j)];
            if aij == F::zero() {
                continue;
            }
            out.view_mut((i * br, j * bc), (br, bc))
                .zip_apply(b, |o, x| *o = aij * x);
        }
    }
    Ok(out)
}

/// Index map of the commutation matrix: `perm[r] = c` where
/// `Π[(r, c)] = 1`, so `(Π v)[r] = v[perm[r]]`.
pub fn commutation_perm(d: usize, n: usize) -> Vec<usize> {
    let mut perm = vec![0; d * n];
    for i in 0..d {
        for j in 0..n {
            perm[i * n + j] = j * d + i;
        }
    }
    perm
}

/// `Π(d,n)`, the `dn x dn` permutation with `Π vec(X) = vec(X^T)` for
/// every `d x n` matrix `X`.
pub fn commutation_matrix<F: Field>(d: usize, n: usize) -> DMatrix<F> {
    let size = d * n;
    let mut out = DMatrix::zeros(size, size);
    for (r, c) in commutation_perm(d, n).into_iter().enumerate() {
        out[(r, c)] = F::one();
    }
    out
}

/// Column-major vectorization.
pub fn vec<F: Field>(m: &DMatrix<F>) -> nalgebra::DVector<F> {
    nalgebra::DVector::from_column_slice(m.as_slice())
}

#[cfg(test)]
mod tests {
    use super::*;
    use nalgebra::DVector;

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
    fn identity_left_gives_block_diagonal() {
        let b = pseudo(2, 3, 1);
        let k = kron(&DMatrix::identity(2, 2), &b).unwrap();
        assert_eq!(k.shape(), (4, 6));
        assert_eq!(k.view((0, 0), (2, 3)), b);
        assert_eq!(k.view((2, 3), (2, 3)), b);
        assert!(k.view((0, 3), (2, 3)).iter().all(|&x| x == 0.0));
        assert!(k.view((2, 0), (2, 3)).iter().all(|&x| x == 0.0));
    }

    #[test]
    fn scalar_right_factor_scales() {
        let a = pseudo(3, 2, 2);
        let k = kron(&a, &DMatrix::from_element(1, 1, 2.0)).unwrap();
        assert_eq!(k, &a * 2.0);
    }

    #[test]
    fn vec_identity() {
        let a = pseudo(3, 3, 3);
        let x = pseudo(3, 3, 4);
        let b = pseudo(3, 3, 5);
        let lhs = vec(&(&a * &x * &b));
        let rhs = kron(&b.transpose(), &a).unwrap() * vec(&x);
        assert!((lhs - rhs).norm() < 1e-12);
    }

    #[test]
    fn size_limit_refused() {
        let a = DMatrix::<f64>::zeros(20_000, 1);
        let b = DMatrix::<f64>::zeros(1, 20_000);
        assert!(matches!(kron(&a, &b), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn commutation_small_cases() {
        assert_eq!(commutation_matrix::<f64>(1, 5), DMatrix::identity(5, 5));
        let x = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let p = commutation_matrix::<f64>(2, 2);
        assert_eq!(p * vec(&x), vec(&x.transpose()));
    }

    #[test]
    fn commutation_transposes_and_inverts() {
        for d in 1..6 {
            for n in 1..6 {
                let p = commutation_matrix::<f64>(d, n);
                let q = commutation_matrix::<f64>(n, d);
                assert_eq!(&q * &p, DMatrix::identity(d * n, d * n));
                for r in 0..d * n {
                    assert_eq!(p.row(r).iter().filter(|&&x| x == 1.0).count(), 1);
                    assert_eq!(p.column(r).iter().filter(|&&x| x == 1.0).count(), 1);
                    assert_eq!(p.row(r).iter().filter(|&&x| x == 0.0).count(), d * n - 1);
                }
                // exhaustive over basis matrices
                for k in 0..d * n {
                    let mut e = DVector::<f64>::zeros(d * n);
                    e[k] = 1.0;
                    let xm = DMatrix::from_column_slice(d, n, e.as_slice());
                    assert_eq!(&p * &e, vec(&xm.transpose()));
                }
            }
        }
    }
}
