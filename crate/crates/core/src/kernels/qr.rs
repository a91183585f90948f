//! Householder QR with the full unitary factor.

use nalgebra::{ComplexField, DMatrix};
use num_traits::Zero;

use crate::scalar::{Field, Real};

/// `M = Q [R; 0]`-style factors: `q` is `r x r` unitary, `r` is `r x c`
/// upper triangular.
#[derive(Debug, Clone)]
pub struct QrFactors<F: Field> {
    pub q: DMatrix<F>,
    pub r: DMatrix<F>,
}

/// Compact Householder factorization: the upper triangle of `packed` is
/// `R`, the reflectors are kept separately.
pub(crate) struct Householder<F: Field> {
    rows: usize,
    packed: DMatrix<F>,
    // (start row, unit-scaled reflector v, tau) with H = I - tau v v^H
    reflectors: Vec<(usize, Vec<F>, F::Re)>,
}

impl<F: Field> Householder<F> {
    pub(crate) fn new(mut a: DMatrix<F>) -> Self {
        let (r, c) = a.shape();
        let steps = c.min(r.saturating_sub(1));
        let mut reflectors = Vec::with_capacity(steps);
        for k in 0..steps {
            let len = r - k;
            let col = &a.as_slice()[k * r + k..k * r + r];
            let norm = col
                .iter()
                .fold(F::Re::zero(), |acc, x| acc + x.modulus_squared())
                .sqrt();
            if norm == F::Re::zero() {
                continue;
            }
            let x0 = col[0];
            let x0_abs = x0.modulus();
            let phase = if x0_abs == F::Re::zero() {
                F::one()
            } else {
                x0.unscale(x0_abs)
            };
            let alpha = -phase.scale(norm);
            let mut v: Vec<F> = col.to_vec();
            v[0] -= alpha;
            // ||v||^2 = 2 (||x||^2 + ||x|| |x0|)
            let tau = F::Re::lit(1.0) / (norm * norm + norm * x0_abs);
            let data = a.as_mut_slice();
            for j in k + 1..c {
                let cj = &mut data[j * r + k..j * r + r];
                apply_reflector(&v, tau, cj);
            }
            let ck = &mut data[k * r + k..k * r + r];
            ck[0] = alpha;
            for x in ck[1..len].iter_mut() {
                *x = F::zero();
            }
            reflectors.push((k, v, tau));
        }
        Self {
            rows: r,
            packed: a,
            reflectors,
        }
    }

    pub(crate) fn r(&self) -> &DMatrix<F> {
        &self.packed
    }

    /// `Q x` applied to every column of `x` (`rows` rows).
    pub(crate) fn apply_q(&self, x: &mut DMatrix<F>) {
        assert_eq!(x.nrows(), self.rows);
        let r = self.rows;
        let ncols = x.ncols();
        let data = x.as_mut_slice();
        for (k, v, tau) in self.reflectors.iter().rev() {
            for j in 0..ncols {
                apply_reflector(v, *tau, &mut data[j * r + k..j * r + r]);
            }
        }
    }

    /// First `cols` columns of `Q`.
    pub(crate) fn q_columns(&self, cols: usize) -> DMatrix<F> {
        let mut q = DMatrix::identity(self.rows, cols);
        self.apply_q(&mut q);
        q
    }
}

/// `y <- (I - tau v v^H) y`.
#[inline]
fn apply_reflector<F: Field>(v: &[F], tau: F::Re, y: &mut [F]) {
    let mut s = F::zero();
    for (vi, yi) in v.iter().zip(y.iter()) {
        s += vi.conjugate() * *yi;
    }
    if s == F::zero() {
        return;
    }
    let s = s.scale(tau);
    for (vi, yi) in v.iter().zip(y.iter_mut()) {
        *yi -= *vi * s;
    }
}

/// Full QR: `m = q * r` with square unitary `q`. When `m` has full column
/// rank the trailing `r - c` columns of `q` span the orthogonal complement
/// of its column space.
pub fn qr_full<F: Field>(m: &DMatrix<F>) -> QrFactors<F> {
    let rows = m.nrows();
    let hh = Householder::new(m.clone());
    let q = hh.q_columns(rows);
    QrFactors { q, r: hh.packed }
}

/// Thin QR: `q` is `r x min(r, c)` with orthonormal columns and `r` is
/// `min(r, c) x c`.
pub fn qr_thin<F: Field>(m: &DMatrix<F>) -> QrFactors<F> {
    let (rows, cols) = m.shape();
    let k = rows.min(cols);
    let hh = Householder::new(m.clone());
    let q = hh.q_columns(k);
    let r = hh.packed.rows(0, k).into_owned();
    QrFactors { q, r }
}
