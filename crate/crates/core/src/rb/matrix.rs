use nalgebra::{Complex, DMatrix};

use super::scalar::RbScalar;
use crate::error::{dim_err, Result};
use crate::scalar::Real;

/// Dense `m x n` reduced biquaternion matrix `P0 + P1 i + P2 j + P3 k`,
/// stored as four real component matrices of identical shape.
#[derive(Debug, Clone, PartialEq)]
pub struct RbMatrix<T: Real> {
    parts: [DMatrix<T>; 4],
}

impl<T: Real> RbMatrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            parts: std::array::from_fn(|_| DMatrix::zeros(rows, cols)),
        }
    }

    pub fn from_components(parts: [DMatrix<T>; 4]) -> Result<Self> {
        let shape = parts[0].shape();
        if let Some(bad) = parts.iter().find(|p| p.shape() != shape) {
            return Err(dim_err(
                "from_components",
                format!("component shapes {:?} and {:?} differ", shape, bad.shape()),
            ));
        }
        Ok(Self { parts })
    }

    /// Builds `R1 + R2 j` from the complex-pair view, `R1 = P0 + P1 i`,
    /// `R2 = P2 + P3 i`.
    pub fn from_complex_pair(r1: &DMatrix<Complex<T>>, r2: &DMatrix<Complex<T>>) -> Result<Self> {
        if r1.shape() != r2.shape() {
            return Err(dim_err(
                "from_complex_pair",
                format!("{:?} vs {:?}", r1.shape(), r2.shape()),
            ));
        }
        Ok(Self {
            parts: [
                r1.map(|z| z.re),
                r1.map(|z| z.im),
                r2.map(|z| z.re),
                r2.map(|z| z.im),
            ],
        })
    }

    /// Embeds a real matrix (zero `i`, `j`, `k` parts).
    pub fn from_real(x: &DMatrix<T>) -> Self {
        let (r, c) = x.shape();
        Self {
            parts: [
                x.clone(),
                DMatrix::zeros(r, c),
                DMatrix::zeros(r, c),
                DMatrix::zeros(r, c),
            ],
        }
    }

    /// Embeds a complex matrix `Re + Im i` (zero `j` part).
    pub fn from_complex(x: &DMatrix<Complex<T>>) -> Self {
        let (r, c) = x.shape();
        Self {
            parts: [
                x.map(|z| z.re),
                x.map(|z| z.im),
                DMatrix::zeros(r, c),
                DMatrix::zeros(r, c),
            ],
        }
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RbScalar<T>,
    ) -> Self {
        let mut out = Self::zeros(rows, cols);
        for j in 0..cols {
            for i in 0..rows {
                out.set(i, j, f(i, j));
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.parts[0].nrows()
    }

    pub fn cols(&self) -> usize {
        self.parts[0].ncols()
    }

    pub fn shape(&self) -> (usize, usize) {
        self.parts[0].shape()
    }

    pub fn components(&self) -> &[DMatrix<T>; 4] {
        &self.parts
    }

    pub fn component(&self, t: usize) -> &DMatrix<T> {
        &self.parts[t]
    }

    pub fn into_components(self) -> [DMatrix<T>; 4] {
        self.parts
    }

    pub fn to_complex_pair(&self) -> (DMatrix<Complex<T>>, DMatrix<Complex<T>>) {
        let [p0, p1, p2, p3] = &self.parts;
        (p0.zip_map(p1, Complex::new), p2.zip_map(p3, Complex::new))
    }

    pub fn get(&self, i: usize, j: usize) -> RbScalar<T> {
        RbScalar::new(
            self.parts[0][(i, j)],
            self.parts[1][(i, j)],
            self.parts[2][(i, j)],
            self.parts[3][(i, j)],
        )
    }

    pub fn set(&mut self, i: usize, j: usize, v: RbScalar<T>) {
        self.parts[0][(i, j)] = v.a0;
        self.parts[1][(i, j)] = v.a1;
        self.parts[2][(i, j)] = v.a2;
        self.parts[3][(i, j)] = v.a3;
    }

    fn check_same_shape(&self, other: &Self, op: &'static str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(dim_err(
                op,
                format!("{:?} vs {:?}", self.shape(), other.shape()),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "add")?;
        Ok(Self {
            parts: std::array::from_fn(|t| &self.parts[t] + &other.parts[t]),
        })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same_shape(other, "sub")?;
        Ok(Self {
            parts: std::array::from_fn(|t| &self.parts[t] - &other.parts[t]),
        })
    }

    /// Multiplication by a real scalar.
    pub fn scale(&self, s: T) -> Self {
        Self {
            parts: std::array::from_fn(|t| &self.parts[t] * s),
        }
    }

    /// Multiplication by a reduced biquaternion scalar (commutative, so the
    /// side does not matter).
    pub fn scale_rb(&self, s: RbScalar<T>) -> Self {
        let [p0, p1, p2, p3] = &self.parts;
        let (s0, s1, s2, s3) = (s.a0, s.a1, s.a2, s.a3);
        Self {
            parts: [
                p0 * s0 - p1 * s1 + p2 * s2 - p3 * s3,
                p0 * s1 + p1 * s0 + p2 * s3 + p3 * s2,
                p0 * s2 - p1 * s3 + p2 * s0 - p3 * s1,
                p0 * s3 + p1 * s2 + p2 * s1 + p3 * s0,
            ],
        }
    }

    /// Matrix product `self * rhs`.
    pub fn mat_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols() != rhs.rows() {
            return Err(dim_err(
                "mat_mul",
                format!("{:?} * {:?}", self.shape(), rhs.shape()),
            ));
        }
        let [a0, a1, a2, a3] = &self.parts;
        let [b0, b1, b2, b3] = &rhs.parts;
        Ok(Self {
            parts: [
                a0 * b0 - a1 * b1 + a2 * b2 - a3 * b3,
                a0 * b1 + a1 * b0 + a2 * b3 + a3 * b2,
                a0 * b2 - a1 * b3 + a2 * b0 - a3 * b1,
                a0 * b3 + a1 * b2 + a2 * b1 + a3 * b0,
            ],
        })
    }

    /// `[self, other]`.
    pub fn hstack(&self, other: &Self) -> Result<Self> {
        if self.rows() != other.rows() {
            return Err(dim_err(
                "hstack",
                format!("{} rows vs {} rows", self.rows(), other.rows()),
            ));
        }
        let (r, c1, c2) = (self.rows(), self.cols(), other.cols());
        Ok(Self {
            parts: std::array::from_fn(|t| {
                let mut m = DMatrix::zeros(r, c1 + c2);
                m.view_mut((0, 0), (r, c1)).copy_from(&self.parts[t]);
                m.view_mut((0, c1), (r, c2)).copy_from(&other.parts[t]);
                m
            }),
        })
    }

    /// `[self; other]`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        if self.cols() != other.cols() {
            return Err(dim_err(
                "vstack",
                format!("{} cols vs {} cols", self.cols(), other.cols()),
            ));
        }
        let (c, r1, r2) = (self.cols(), self.rows(), other.rows());
        Ok(Self {
            parts: std::array::from_fn(|t| {
                let mut m = DMatrix::zeros(r1 + r2, c);
                m.view_mut((0, 0), (r1, c)).copy_from(&self.parts[t]);
                m.view_mut((r1, 0), (r2, c)).copy_from(&other.parts[t]);
                m
            }),
        })
    }

    /// `sqrt(sum_ij |p_ij|^2)`.
    pub fn frobenius_norm(&self) -> T {
        self.parts
            .iter()
            .flat_map(|p| p.iter())
            .fold(T::zero(), |acc, &x| acc + x * x)
            .sqrt()
    }

    /// Conjugates the complex components of the pair view: `R1 -> conj(R1)`,
    /// `R2 -> conj(R2)`, i.e. negates the `i` and `k` parts.
    pub fn conj_complex_parts(&self) -> Self {
        Self {
            parts: [
                self.parts[0].clone(),
                -&self.parts[1],
                self.parts[2].clone(),
                -&self.parts[3],
            ],
        }
    }

    /// Columns `start..start + len`.
    pub fn columns(&self, start: usize, len: usize) -> Self {
        Self {
            parts: std::array::from_fn(|t| self.parts[t].columns(start, len).into_owned()),
        }
    }

    /// Rows `start..start + len`.
    pub fn row_range(&self, start: usize, len: usize) -> Self {
        Self {
            parts: std::array::from_fn(|t| self.parts[t].rows(start, len).into_owned()),
        }
    }
}
