//! Singular value decomposition by one-sided (Hestenes) Jacobi rotations.
//!
//! Tall inputs are first reduced with Householder QR so the rotations act on
//! a square triangular factor; wide inputs are handled through their
//! adjoint. The right singular vectors are accumulated as a product of
//! plane rotations and are orthonormal to working precision regardless of
//! the singular value gap, which the TLS solvers rely on.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_traits::{One, Zero};

use super::qr::Householder;
use crate::scalar::{Field, Real};

const MAX_SWEEPS: usize = 80;

/// `M = U diag(S) V^H` with `S` nonincreasing.
#[derive(Debug, Clone)]
pub struct SvdFactors<F: Field> {
    pub u: DMatrix<F>,
    pub s: DVector<F::Re>,
    pub v: DMatrix<F>,
}

impl<F: Field> SvdFactors<F> {
    pub fn rank(&self) -> usize {
        self.s.len()
    }

    pub fn reconstruct(&self) -> DMatrix<F> {
        let mut us = self.u.clone();
        for (j, &sj) in self.s.iter().enumerate() {
            us.column_mut(j).scale_mut(sj);
        }
        us * self.v.adjoint()
    }

    /// Keeps the leading `k` triples.
    pub fn truncate(mut self, k: usize) -> Self {
        let k = k.min(self.s.len());
        self.u = self.u.columns(0, k).into_owned();
        self.v = self.v.columns(0, k).into_owned();
        self.s = self.s.rows(0, k).into_owned();
        self
    }
}

/// Numerical-rank threshold `max(r, c) * eps * sigma_1`.
pub fn rank_tolerance<R: Real>(rows: usize, cols: usize, sigma_max: R) -> R {
    R::lit(rows.max(cols) as f64) * R::eps() * sigma_max
}

/// Thin SVD keeping `min(r, c)` triples.
pub fn svd_thin<F: Field>(m: &DMatrix<F>) -> SvdFactors<F> {
    let (r, c) = m.shape();
    if r < c {
        let t = svd_tall(m.adjoint(), true);
        SvdFactors {
            u: t.v,
            s: t.s,
            v: t.u,
        }
    } else {
        let t = svd_tall(m.clone(), true);
        SvdFactors {
            u: t.u,
            s: t.s,
            v: t.v,
        }
    }
}

/// SVD truncated to the numerical rank.
pub fn svd_skinny<F: Field>(m: &DMatrix<F>) -> SvdFactors<F> {
    let f = svd_thin(m);
    let k = numerical_rank_of(&f.s, m.nrows(), m.ncols());
    f.truncate(k)
}

/// Singular values only, nonincreasing.
pub fn singular_values<F: Field>(m: &DMatrix<F>) -> DVector<F::Re> {
    let (r, c) = m.shape();
    if r < c {
        svd_tall(m.adjoint(), false).s
    } else {
        svd_tall(m.clone(), false).s
    }
}

pub fn numerical_rank<F: Field>(m: &DMatrix<F>) -> usize {
    numerical_rank_of(&singular_values(m), m.nrows(), m.ncols())
}

fn numerical_rank_of<R: Real>(s: &DVector<R>, rows: usize, cols: usize) -> usize {
    if s.is_empty() {
        return 0;
    }
    let tol = rank_tolerance(rows, cols, s[0]);
    s.iter().take_while(|&&x| x > tol).count()
}

/// Moore-Penrose pseudoinverse through the skinny SVD.
pub fn pinv<F: Field>(m: &DMatrix<F>) -> DMatrix<F> {
    let f = svd_skinny(m);
    let mut v = f.v;
    for (j, &sj) in f.s.iter().enumerate() {
        v.column_mut(j).unscale_mut(sj);
    }
    v * f.u.adjoint()
}

/// Condition number `sigma_max / sigma_min` of a square or tall matrix;
/// infinite when singular.
pub fn cond2<F: Field>(m: &DMatrix<F>) -> F::Re {
    let s = singular_values(m);
    match (s.iter().next(), s.iter().last()) {
        (Some(&hi), Some(&lo)) if lo > F::Re::zero() => hi / lo,
        (Some(_), Some(_)) => F::Re::lit(f64::MAX),
        _ => F::Re::one(),
    }
}

struct Tall<F: Field> {
    u: DMatrix<F>,
    s: DVector<F::Re>,
    v: DMatrix<F>,
}

/// SVD of an `r x c` matrix with `r >= c`.
fn svd_tall<F: Field>(a: DMatrix<F>, vectors: bool) -> Tall<F> {
    let (r, c) = a.shape();
    debug_assert!(r >= c);
    if c == 0 {
        return Tall {
            u: DMatrix::zeros(r, 0),
            s: DVector::zeros(0),
            v: DMatrix::zeros(0, 0),
        };
    }
    if r > c {
        let hh = Householder::new(a);
        let rfac = hh.r().rows(0, c).upper_triangle();
        let inner = svd_tall(rfac, vectors);
        if !vectors {
            return Tall {
                u: DMatrix::zeros(r, 0),
                s: inner.s,
                v: inner.v,
            };
        }
        let mut u = DMatrix::zeros(r, c);
        u.rows_mut(0, c).copy_from(&inner.u);
        hh.apply_q(&mut u);
        return Tall {
            u,
            s: inner.s,
            v: inner.v,
        };
    }

    let mut w = a;
    let mut v = if vectors {
        DMatrix::identity(c, c)
    } else {
        DMatrix::zeros(0, 0)
    };
    jacobi_sweeps(&mut w, vectors.then_some(&mut v));

    let norms: Vec<F::Re> = (0..c).map(|j| col_norm2(&w, j).sqrt()).collect();
    let mut order: Vec<usize> = (0..c).collect();
    order.sort_by(|&i, &j| {
        norms[j]
            .partial_cmp(&norms[i])
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let s = DVector::from_iterator(c, order.iter().map(|&j| norms[j]));
    if !vectors {
        return Tall {
            u: DMatrix::zeros(r, 0),
            s,
            v,
        };
    }

    let mut u = DMatrix::zeros(r, c);
    let mut vs = DMatrix::zeros(c, c);
    for (dst, &src) in order.iter().enumerate() {
        let sj = norms[src];
        if sj > F::Re::zero() {
            u.set_column(dst, &w.column(src).unscale(sj));
        }
        vs.set_column(dst, &v.column(src));
    }
    orthonormalize_columns(&mut u);
    // Accumulated rotations drift from unitary over many sweeps.
    orthonormalize_columns(&mut vs);
    Tall { u, s, v: vs }
}

fn col_norm2<F: Field>(w: &DMatrix<F>, j: usize) -> F::Re {
    w.column(j)
        .iter()
        .fold(F::Re::zero(), |acc, x| acc + x.modulus_squared())
}

/// Cyclic one-sided Jacobi on the columns of `w`, accumulating the same
/// column operations into `v` when requested.
fn jacobi_sweeps<F: Field>(w: &mut DMatrix<F>, mut v: Option<&mut DMatrix<F>>) {
    let (r, c) = w.shape();
    let tol = F::Re::eps() * F::Re::lit(r as f64).sqrt();
    let half = F::Re::lit(0.5);
    for _ in 0..MAX_SWEEPS {
        let mut rotated = false;
        for i in 0..c - 1 {
            for j in i + 1..c {
                let (a, b, g) = {
                    let data = w.as_slice();
                    let ci = &data[i * r..(i + 1) * r];
                    let cj = &data[j * r..(j + 1) * r];
                    let mut a = F::Re::zero();
                    let mut b = F::Re::zero();
                    let mut g = F::zero();
                    for (x, y) in ci.iter().zip(cj) {
                        a += x.modulus_squared();
                        b += y.modulus_squared();
                        g += x.conjugate() * *y;
                    }
                    (a, b, g)
                };
                let gabs = g.modulus();
                if gabs == F::Re::zero() || gabs <= tol * (a * b).sqrt() {
                    continue;
                }
                rotated = true;
                let zeta = (b - a) * half / gabs;
                let t = {
                    let mag = F::Re::one() / (zeta.abs() + (F::Re::one() + zeta * zeta).sqrt());
                    if zeta < F::Re::zero() {
                        -mag
                    } else {
                        mag
                    }
                };
                let cs = F::Re::one() / (F::Re::one() + t * t).sqrt();
                let sn = cs * t;
                let phase = g.unscale(gabs).conjugate();
                rotate_columns(w, i, j, cs, sn, phase);
                if let Some(v) = v.as_deref_mut() {
                    rotate_columns(v, i, j, cs, sn, phase);
                }
            }
        }
        if !rotated {
            break;
        }
    }
}

/// `(x_i, x_j) <- (c x_i - s p x_j, s x_i + c p x_j)`.
#[inline]
fn rotate_columns<F: Field>(m: &mut DMatrix<F>, i: usize, j: usize, c: F::Re, s: F::Re, p: F) {
    let r = m.nrows();
    let data = m.as_mut_slice();
    let (lo, hi) = data.split_at_mut(j * r);
    let ci = &mut lo[i * r..(i + 1) * r];
    let cj = &mut hi[..r];
    for (x, y) in ci.iter_mut().zip(cj.iter_mut()) {
        let py = p * *y;
        let xi = *x;
        *x = xi.scale(c) - py.scale(s);
        *y = xi.scale(s) + py.scale(c);
    }
}

/// Re-orthonormalizes columns in order with two Gram-Schmidt passes,
/// replacing columns that collapse with standard basis completions.
fn orthonormalize_columns<F: Field>(u: &mut DMatrix<F>) {
    let (r, c) = u.shape();
    let half = F::Re::lit(0.5);
    let mut next_basis = 0;
    for j in 0..c {
        let mut col = u.column(j).into_owned();
        loop {
            for _ in 0..2 {
                for k in 0..j {
                    let qk = u.column(k);
                    let proj = qk.dotc(&col);
                    col.axpy(-proj, &qk, F::one());
                }
            }
            let nrm = col.norm();
            if nrm > half {
                col.unscale_mut(nrm);
                break;
            }
            assert!(next_basis < r, "cannot complete an orthonormal basis");
            col = DVector::zeros(r);
            col[next_basis] = F::one();
            next_basis += 1;
        }
        u.set_column(j, &col);
    }
}
