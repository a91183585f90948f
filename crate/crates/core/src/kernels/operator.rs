//! Matrix-free linear maps, used to evaluate spectral norms of structured
//! products without materializing Kronecker factors.

use nalgebra::{DMatrix, DVector};

use super::kron::commutation_perm;
use crate::scalar::Field;

pub trait LinearOperator<F: Field>: Send + Sync {
    fn nrows(&self) -> usize;
    fn ncols(&self) -> usize;
    fn apply(&self, x: &DVector<F>) -> DVector<F>;
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F>;
}

pub type BoxedOp<F> = Box<dyn LinearOperator<F>>;

impl<F: Field> LinearOperator<F> for DMatrix<F> {
    fn nrows(&self) -> usize {
        self.nrows()
    }
    fn ncols(&self) -> usize {
        self.ncols()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        self * x
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        self.ad_mul(y)
    }
}

/// `A ⊗ B`, applied as `vec(B X A^T)`.
pub struct Kron<F: Field> {
    pub a: DMatrix<F>,
    pub b: DMatrix<F>,
}

impl<F: Field> LinearOperator<F> for Kron<F> {
    fn nrows(&self) -> usize {
        self.a.nrows() * self.b.nrows()
    }
    fn ncols(&self) -> usize {
        self.a.ncols() * self.b.ncols()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        let xm = DMatrix::from_column_slice(self.b.ncols(), self.a.ncols(), x.as_slice());
        let y = &self.b * xm * self.a.transpose();
        DVector::from_column_slice(y.as_slice())
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        let ym = DMatrix::from_column_slice(self.b.nrows(), self.a.nrows(), y.as_slice());
        let x = self.b.ad_mul(&ym) * self.a.map(|v| v.conjugate());
        DVector::from_column_slice(x.as_slice())
    }
}

/// `Π(d,n)`.
pub struct Commutation {
    perm: Vec<usize>,
}

impl Commutation {
    pub fn new(d: usize, n: usize) -> Self {
        Self {
            perm: commutation_perm(d, n),
        }
    }
}

impl<F: Field> LinearOperator<F> for Commutation {
    fn nrows(&self) -> usize {
        self.perm.len()
    }
    fn ncols(&self) -> usize {
        self.perm.len()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        DVector::from_iterator(self.perm.len(), self.perm.iter().map(|&c| x[c]))
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        let mut x = DVector::zeros(self.perm.len());
        for (r, &c) in self.perm.iter().enumerate() {
            x[c] = y[r];
        }
        x
    }
}

/// Diagonal scaling by real entries.
pub struct Diagonal<F: Field> {
    pub diag: DVector<F::Re>,
}

impl<F: Field> LinearOperator<F> for Diagonal<F> {
    fn nrows(&self) -> usize {
        self.diag.len()
    }
    fn ncols(&self) -> usize {
        self.diag.len()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        x.zip_map(&self.diag, |v, s| v.scale(s))
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        self.apply(y)
    }
}

/// `[A_1, A_2, ...]` side by side.
pub struct HStack<F: Field> {
    pub blocks: Vec<BoxedOp<F>>,
}

impl<F: Field> LinearOperator<F> for HStack<F> {
    fn nrows(&self) -> usize {
        self.blocks.first().map_or(0, |b| b.nrows())
    }
    fn ncols(&self) -> usize {
        self.blocks.iter().map(|b| b.ncols()).sum()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        let mut y = DVector::zeros(self.nrows());
        let mut off = 0;
        for b in &self.blocks {
            let c = b.ncols();
            y += b.apply(&x.rows(off, c).into_owned());
            off += c;
        }
        y
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        let parts: Vec<DVector<F>> = self.blocks.iter().map(|b| b.apply_adjoint(y)).collect();
        concat(&parts)
    }
}

/// `blkdiag(A_1, A_2, ...)`.
pub struct BlockDiag<F: Field> {
    pub blocks: Vec<BoxedOp<F>>,
}

impl<F: Field> LinearOperator<F> for BlockDiag<F> {
    fn nrows(&self) -> usize {
        self.blocks.iter().map(|b| b.nrows()).sum()
    }
    fn ncols(&self) -> usize {
        self.blocks.iter().map(|b| b.ncols()).sum()
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        let mut off = 0;
        let parts: Vec<DVector<F>> = self
            .blocks
            .iter()
            .map(|b| {
                let c = b.ncols();
                let y = b.apply(&x.rows(off, c).into_owned());
                off += c;
                y
            })
            .collect();
        concat(&parts)
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        let mut off = 0;
        let parts: Vec<DVector<F>> = self
            .blocks
            .iter()
            .map(|b| {
                let r = b.nrows();
                let x = b.apply_adjoint(&y.rows(off, r).into_owned());
                off += r;
                x
            })
            .collect();
        concat(&parts)
    }
}

/// `A_1 A_2 ... A_k` (the last factor is applied first).
pub struct Product<F: Field> {
    pub factors: Vec<BoxedOp<F>>,
}

impl<F: Field> LinearOperator<F> for Product<F> {
    fn nrows(&self) -> usize {
        self.factors.first().map_or(0, |f| f.nrows())
    }
    fn ncols(&self) -> usize {
        self.factors.last().map_or(0, |f| f.ncols())
    }
    fn apply(&self, x: &DVector<F>) -> DVector<F> {
        self.factors
            .iter()
            .rev()
            .fold(x.clone(), |v, f| f.apply(&v))
    }
    fn apply_adjoint(&self, y: &DVector<F>) -> DVector<F> {
        self.factors
            .iter()
            .fold(y.clone(), |v, f| f.apply_adjoint(&v))
    }
}

/// Zero map of the given shape.
pub struct Zero {
    pub rows: usize,
    pub cols: usize,
}

impl<F: Field> LinearOperator<F> for Zero {
    fn nrows(&self) -> usize {
        self.rows
    }
    fn ncols(&self) -> usize {
        self.cols
    }
    fn apply(&self, _x: &DVector<F>) -> DVector<F> {
        DVector::zeros(self.rows)
    }
    fn apply_adjoint(&self, _y: &DVector<F>) -> DVector<F> {
        DVector::zeros(self.cols)
    }
}

fn concat<F: Field>(parts: &[DVector<F>]) -> DVector<F> {
    let len = parts.iter().map(|p| p.len()).sum();
    DVector::from_iterator(len, parts.iter().flat_map(|p| p.iter().copied()))
}

/// Materializes an operator column by column. Test and small-size helper.
pub fn to_dense<F: Field>(op: &dyn LinearOperator<F>) -> DMatrix<F> {
    let mut out = DMatrix::zeros(op.nrows(), op.ncols());
    let mut e = DVector::zeros(op.ncols());
    for j in 0..op.ncols() {
        e[j] = F::one();
        out.set_column(j, &op.apply(&e));
        e[j] = F::zero();
    }
    out
}
