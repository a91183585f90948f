use std::ops::{Add, Mul, Neg, Sub};

use nalgebra::Complex;

use crate::scalar::Real;

/// A reduced biquaternion `a0 + a1 i + a2 j + a3 k`.
///
/// Multiplication is commutative with `i^2 = k^2 = -1`, `j^2 = 1`,
/// `ij = k`, `jk = i`, `ki = -j`.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct RbScalar<T> {
    pub a0: T,
    pub a1: T,
    pub a2: T,
    pub a3: T,
}

impl<T: Real> RbScalar<T> {
    pub fn new(a0: T, a1: T, a2: T, a3: T) -> Self {
        Self { a0, a1, a2, a3 }
    }

    pub fn zero() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::zero())
    }

    pub fn one() -> Self {
        Self::real(T::one())
    }

    pub fn real(a0: T) -> Self {
        Self::new(a0, T::zero(), T::zero(), T::zero())
    }

    pub fn i() -> Self {
        Self::new(T::zero(), T::one(), T::zero(), T::zero())
    }

    pub fn j() -> Self {
        Self::new(T::zero(), T::zero(), T::one(), T::zero())
    }

    pub fn k() -> Self {
        Self::new(T::zero(), T::zero(), T::zero(), T::one())
    }

    /// Embeds a complex number `z = re + im i` (no `j` part).
    pub fn from_complex(z: Complex<T>) -> Self {
        Self::new(z.re, z.im, T::zero(), T::zero())
    }

    /// `beta1 + beta2 j` with complex `beta1`, `beta2`.
    pub fn from_complex_pair(beta1: Complex<T>, beta2: Complex<T>) -> Self {
        Self::new(beta1.re, beta1.im, beta2.re, beta2.im)
    }

    pub fn to_complex_pair(self) -> (Complex<T>, Complex<T>) {
        (
            Complex::new(self.a0, self.a1),
            Complex::new(self.a2, self.a3),
        )
    }

    pub fn norm_squared(self) -> T {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn norm(self) -> T {
        self.norm_squared().sqrt()
    }

    pub fn scale(self, s: T) -> Self {
        Self::new(self.a0 * s, self.a1 * s, self.a2 * s, self.a3 * s)
    }
}

/// Product rule shared by scalars and matrix components: `c = a * b`.
#[inline]
pub(crate) fn rb_mul_parts<T>(a: [T; 4], b: [T; 4]) -> [T; 4]
where
    T: Copy + Add<Output = T> + Sub<Output = T> + Mul<Output = T>,
{
    [
        a[0] * b[0] - a[1] * b[1] + a[2] * b[2] - a[3] * b[3],
        a[0] * b[1] + a[1] * b[0] + a[2] * b[3] + a[3] * b[2],
        a[0] * b[2] - a[1] * b[3] + a[2] * b[0] - a[3] * b[1],
        a[0] * b[3] + a[1] * b[2] + a[2] * b[1] + a[3] * b[0],
    ]
}

/// Reduced biquaternion product.
pub fn rb_mul<T: Real>(x: RbScalar<T>, y: RbScalar<T>) -> RbScalar<T> {
    let [c0, c1, c2, c3] = rb_mul_parts([x.a0, x.a1, x.a2, x.a3], [y.a0, y.a1, y.a2, y.a3]);
    RbScalar::new(c0, c1, c2, c3)
}

impl<T: Real> Mul for RbScalar<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        rb_mul(self, rhs)
    }
}

impl<T: Real> Add for RbScalar<T> {
    type Output = Self;
    fn add(self, r: Self) -> Self {
        Self::new(
            self.a0 + r.a0,
            self.a1 + r.a1,
            self.a2 + r.a2,
            self.a3 + r.a3,
        )
    }
}

impl<T: Real> Sub for RbScalar<T> {
    type Output = Self;
    fn sub(self, r: Self) -> Self {
        Self::new(
            self.a0 - r.a0,
            self.a1 - r.a1,
            self.a2 - r.a2,
            self.a3 - r.a3,
        )
    }
}

impl<T: Real> Neg for RbScalar<T> {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.a0, -self.a1, -self.a2, -self.a3)
    }
}
