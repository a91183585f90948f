//! Real (`4m x 4n`) and complex (`2m x 2n`) representations.
//!
//! Real layout, block rows top to bottom:
//!
//! ```text
//! [ P0 -P1  P2 -P3 ]
//! [ P1  P0  P3  P2 ]
//! [ P2 -P3  P0 -P1 ]
//! [ P3  P2  P1  P0 ]
//! ```
//!
//! Complex layout `[R1 R2; R2 R1]` for `P = R1 + R2 j`. Both maps are
//! algebra homomorphisms, and the leading block column carries all the
//! information as well as the Frobenius norm of `P`.

use nalgebra::{Complex, DMatrix, Scalar};
use num_traits::Zero;

use super::matrix::RbMatrix;
use crate::error::{dim_err, Result};
use crate::scalar::Real;

#[derive(Debug, Clone, PartialEq)]
pub struct RealRepr<T: Real> {
    pub full: DMatrix<T>,
    pub leading_block_column: DMatrix<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ComplexRepr<T: Real> {
    pub full: DMatrix<Complex<T>>,
    pub leading_block_column: DMatrix<Complex<T>>,
}

fn stack_rows<S: Scalar + Zero>(blocks: &[&DMatrix<S>]) -> DMatrix<S> {
    let (r, c) = blocks[0].shape();
    let mut out = DMatrix::zeros(r * blocks.len(), c);
    for (b, blk) in blocks.iter().enumerate() {
        out.view_mut((b * r, 0), (r, c)).copy_from(blk);
    }
    out
}

/// `P^R_c = [P0; P1; P2; P3]`.
pub fn real_block_column<T: Real>(p: &RbMatrix<T>) -> DMatrix<T> {
    let [p0, p1, p2, p3] = p.components();
    stack_rows(&[p0, p1, p2, p3])
}

/// `P^C_c = [R1; R2]`.
pub fn complex_block_column<T: Real>(p: &RbMatrix<T>) -> DMatrix<Complex<T>> {
    let (r1, r2) = p.to_complex_pair();
    stack_rows(&[&r1, &r2])
}

/// Inverse of [`real_block_column`]: slices a `4m x n` stack back into the
/// components in the order `0, 1, 2, 3`.
pub fn from_real_block_column<T: Real>(stack: &DMatrix<T>) -> Result<RbMatrix<T>> {
    if !stack.nrows().is_multiple_of(4) {
        return Err(dim_err(
            "from_real_block_column",
            format!("{} rows is not a multiple of 4", stack.nrows()),
        ));
    }
    let m = stack.nrows() / 4;
    RbMatrix::from_components(std::array::from_fn(|t| stack.rows(t * m, m).into_owned()))
}

/// Inverse of [`complex_block_column`].
pub fn from_complex_block_column<T: Real>(stack: &DMatrix<Complex<T>>) -> Result<RbMatrix<T>> {
    if !stack.nrows().is_multiple_of(2) {
        return Err(dim_err(
            "from_complex_block_column",
            format!("{} rows is not a multiple of 2", stack.nrows()),
        ));
    }
    let m = stack.nrows() / 2;
    RbMatrix::from_complex_pair(
        &stack.rows(0, m).into_owned(),
        &stack.rows(m, m).into_owned(),
    )
}

/// Signed block permutation: `out` block `b` is `sign * src` block
/// `perm[b]`.
fn permute_blocks<S>(x: &DMatrix<S>, nblocks: usize, perm: &[(usize, bool)]) -> DMatrix<S>
where
    S: Scalar + Zero + Copy + std::ops::Neg<Output = S>,
{
    assert_eq!(
        x.nrows() % nblocks,
        0,
        "row count must split into {nblocks} blocks"
    );
    let m = x.nrows() / nblocks;
    let mut out = DMatrix::zeros(x.nrows(), x.ncols());
    for (b, &(src, negate)) in perm.iter().enumerate() {
        let blk = x.rows(src * m, m);
        let mut dst = out.rows_mut(b * m, m);
        if negate {
            dst.zip_apply(&blk, |d, s| *d = -s);
        } else {
            dst.copy_from(&blk);
        }
    }
    out
}

/// `K_m x` for a `4m`-row operand.
pub fn apply_k<T: Real>(x: &DMatrix<T>) -> DMatrix<T> {
    permute_blocks(x, 4, &[(1, true), (0, false), (3, true), (2, false)])
}

/// `L_m x` for a `4m`-row operand.
pub fn apply_l<T: Real>(x: &DMatrix<T>) -> DMatrix<T> {
    permute_blocks(x, 4, &[(2, false), (3, false), (0, false), (1, false)])
}

/// `M_m x` for a `4m`-row operand.
pub fn apply_m<T: Real>(x: &DMatrix<T>) -> DMatrix<T> {
    permute_blocks(x, 4, &[(3, true), (2, false), (1, true), (0, false)])
}

/// `N_m x` for a `2m`-row operand.
pub fn apply_n<T: Real>(x: &DMatrix<Complex<T>>) -> DMatrix<Complex<T>> {
    permute_blocks(x, 2, &[(1, false), (0, false)])
}

impl<T: Real> RealRepr<T> {
    /// Rebuilds the full representation as `[Pc, K Pc, L Pc, M Pc]`.
    pub fn from_block_column(pc: DMatrix<T>) -> Self {
        let n = pc.ncols();
        let mut full = DMatrix::zeros(pc.nrows(), 4 * n);
        full.columns_mut(0, n).copy_from(&pc);
        full.columns_mut(n, n).copy_from(&apply_k(&pc));
        full.columns_mut(2 * n, n).copy_from(&apply_l(&pc));
        full.columns_mut(3 * n, n).copy_from(&apply_m(&pc));
        Self {
            full,
            leading_block_column: pc,
        }
    }
}

impl<T: Real> ComplexRepr<T> {
    /// Rebuilds the full representation as `[Pc, N Pc]`.
    pub fn from_block_column(pc: DMatrix<Complex<T>>) -> Self {
        let n = pc.ncols();
        let mut full = DMatrix::zeros(pc.nrows(), 2 * n);
        full.columns_mut(0, n).copy_from(&pc);
        full.columns_mut(n, n).copy_from(&apply_n(&pc));
        Self {
            full,
            leading_block_column: pc,
        }
    }
}

/// Real representation laid out directly from the components.
pub fn real_repr<T: Real>(p: &RbMatrix<T>) -> RealRepr<T> {
    let (m, n) = p.shape();
    let [p0, p1, p2, p3] = p.components();
    let neg = |x: &DMatrix<T>| -x;
    let layout: [[DMatrix<T>; 4]; 4] = [
        [p0.clone(), neg(p1), p2.clone(), neg(p3)],
        [p1.clone(), p0.clone(), p3.clone(), p2.clone()],
        [p2.clone(), neg(p3), p0.clone(), neg(p1)],
        [p3.clone(), p2.clone(), p1.clone(), p0.clone()],
    ];
    let mut full = DMatrix::zeros(4 * m, 4 * n);
    for (bi, row) in layout.iter().enumerate() {
        for (bj, blk) in row.iter().enumerate() {
            full.view_mut((bi * m, bj * n), (m, n)).copy_from(blk);
        }
    }
    RealRepr {
        full,
        leading_block_column: real_block_column(p),
    }
}

/// Complex representation `[R1 R2; R2 R1]`.
pub fn complex_repr<T: Real>(p: &RbMatrix<T>) -> ComplexRepr<T> {
    let (m, n) = p.shape();
    let (r1, r2) = p.to_complex_pair();
    let mut full = DMatrix::zeros(2 * m, 2 * n);
    full.view_mut((0, 0), (m, n)).copy_from(&r1);
    full.view_mut((0, n), (m, n)).copy_from(&r2);
    full.view_mut((m, 0), (m, n)).copy_from(&r2);
    full.view_mut((m, n), (m, n)).copy_from(&r1);
    ComplexRepr {
        full,
        leading_block_column: stack_rows(&[&r1, &r2]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rb::RbScalar;

    fn scalar(s: RbScalar<f64>) -> RbMatrix<f64> {
        RbMatrix::from_fn(1, 1, |_, _| s)
    }

    #[test]
    fn unit_scalar_maps_to_identity() {
        assert_eq!(
            real_repr(&scalar(RbScalar::one())).full,
            DMatrix::identity(4, 4)
        );
        assert_eq!(
            complex_repr(&scalar(RbScalar::one())).full,
            DMatrix::identity(2, 2)
        );
    }

    #[test]
    fn imaginary_unit_layout() {
        let r = real_repr(&scalar(RbScalar::i())).full;
        #[rustfmt::skip]
        let expected = DMatrix::from_row_slice(4, 4, &[
            0.0, -1.0, 0.0,  0.0,
            1.0,  0.0, 0.0,  0.0,
            0.0,  0.0, 0.0, -1.0,
            0.0,  0.0, 1.0,  0.0,
        ]);
        assert_eq!(r, expected);
    }

    #[test]
    fn j_complex_layout() {
        let c = complex_repr(&scalar(RbScalar::j())).full;
        let o = Complex::new(1.0, 0.0);
        let z = Complex::new(0.0, 0.0);
        assert_eq!(c, DMatrix::from_row_slice(2, 2, &[z, o, o, z]));
    }

    #[test]
    fn reconstruction_from_block_column_is_exact() {
        let p = RbMatrix::from_fn(3, 2, |i, j| {
            let x = (i * 5 + j) as f64 + 0.3;
            RbScalar::new(x.sin(), x.cos(), (2.0 * x).sin(), (3.0 * x).cos())
        });
        let direct = real_repr(&p);
        assert_eq!(
            RealRepr::from_block_column(direct.leading_block_column.clone()),
            direct
        );
        let cdirect = complex_repr(&p);
        assert_eq!(
            ComplexRepr::from_block_column(cdirect.leading_block_column.clone()),
            cdirect
        );
    }

    #[test]
    fn block_column_round_trips() {
        let p = RbMatrix::from_fn(2, 3, |i, j| RbScalar::new(i as f64, j as f64, 1.5, -2.0));
        assert_eq!(from_real_block_column(&real_block_column(&p)).unwrap(), p);
        assert_eq!(
            from_complex_block_column(&complex_block_column(&p)).unwrap(),
            p
        );
        assert!(from_real_block_column(&DMatrix::<f64>::zeros(6, 2)).is_err());
        assert!(from_complex_block_column(&DMatrix::<Complex<f64>>::zeros(3, 2)).is_err());
    }
}
