//! Seeded random instances.
//!
//! Real-solution instances draw every component from the standard normal;
//! complex-solution instances draw every component uniformly from [0, 1).
//! The generator is ChaCha8 seeded from a 64-bit value.

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rbtlse::{RbMatrix, TlseProblem};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Kind {
    Real,
    Complex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Sizes {
    pub m: usize,
    pub n: usize,
    pub p: usize,
    pub d: usize,
}

impl Sizes {
    /// `m = 30t, n = 10t, p = 2t, d = 2`.
    pub fn accuracy_real(t: usize) -> Self {
        Self {
            m: 30 * t,
            n: 10 * t,
            p: 2 * t,
            d: 2,
        }
    }

    /// `m = 50t, n = 6t, p = 2t, d = 3`.
    pub fn accuracy_complex(t: usize) -> Self {
        Self {
            m: 50 * t,
            n: 6 * t,
            p: 2 * t,
            d: 3,
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.sample(StandardNormal))
}

pub fn uniform(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.random::<f64>())
}

pub fn complex_normal(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<Complex<f64>> {
    let re = normal(rng, r, c);
    let im = normal(rng, r, c);
    re.zip_map(&im, Complex::new)
}

pub fn complex_uniform(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<Complex<f64>> {
    let re = uniform(rng, r, c);
    let im = uniform(rng, r, c);
    re.zip_map(&im, Complex::new)
}

pub fn rb_with(rng: &mut ChaCha8Rng, r: usize, c: usize, kind: Kind) -> RbMatrix<f64> {
    let mut draw = || match kind {
        Kind::Real => normal(rng, r, c),
        Kind::Complex => uniform(rng, r, c),
    };
    let parts = [draw(), draw(), draw(), draw()];
    RbMatrix::from_components(parts).expect("equal shapes")
}

/// Random `A, B, C, D` of the given sizes.
pub fn gen_instance(kind: Kind, sizes: Sizes, seed: u64) -> TlseProblem<f64> {
    let mut g = rng(seed);
    let Sizes { m, n, p, d } = sizes;
    let a = rb_with(&mut g, m, n, kind);
    let b = rb_with(&mut g, m, d, kind);
    let c = rb_with(&mut g, p, n, kind);
    let dd = rb_with(&mut g, p, d, kind);
    TlseProblem::new(a, b, c, dd).expect("consistent sizes")
}

/// Normal perturbations of every input, for bound experiments.
pub fn gen_deltas(problem: &TlseProblem<f64>, seed: u64) -> TlseProblem<f64> {
    let mut g = rng(seed);
    let mut like = |x: &RbMatrix<f64>| rb_with(&mut g, x.rows(), x.cols(), Kind::Real);
    let a = like(&problem.a);
    let b = like(&problem.b);
    let c = like(&problem.c);
    let d = like(&problem.d);
    TlseProblem::new(a, b, c, d).expect("same sizes")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Case {
    /// Coefficient and right-hand side perturbed.
    Both = 1,
    /// Right-hand side only.
    RhsOnly = 2,
}

impl Case {
    pub fn from_index(i: u8) -> Option<Self> {
        match i {
            1 => Some(Case::Both),
            2 => Some(Case::RhsOnly),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Exact {
    Real(DMatrix<f64>),
    Complex(DMatrix<Complex<f64>>),
}

#[derive(Debug, Clone)]
pub struct CompareInstance {
    pub consistent: TlseProblem<f64>,
    pub perturbed: TlseProblem<f64>,
    pub exact: Exact,
    pub d_e: RbMatrix<f64>,
    pub d_f: RbMatrix<f64>,
}

pub const COMPARE_N: usize = 50;
pub const COMPARE_D: usize = 35;
pub const COMPARE_P: usize = 10;

/// Consistent system `E X = F`, `C X = D` with `E` `m x 50`, `C` `10 x 50`
/// and an exact `50 x 35` solution, then perturbed into `A = E + dE`,
/// `B = F + dF`.
///
/// Case 1: `H = scale * rand(m, 85) * rand(85, 85)`, `dE` from columns
/// 1..50 and `dF` from 51..85. Case 2: `dE = 0` and
/// `dF = scale * rand(m, 35) * rand(35, 35)`. The real variant copies the
/// perturbation into all four components; the complex variant builds it
/// from complex uniform factors and copies it into both complex parts.
pub fn gen_compare_instance(
    case: Case,
    m: usize,
    seed: u64,
    variant: Kind,
    scale: f64,
) -> CompareInstance {
    let (n, d, p) = (COMPARE_N, COMPARE_D, COMPARE_P);
    let mut g = rng(seed);
    let (e, c, exact, x_rb) = match variant {
        Kind::Real => {
            let e = rb_with(&mut g, m, n, Kind::Real);
            let c = rb_with(&mut g, p, n, Kind::Real);
            let x = normal(&mut g, n, d);
            let xr = RbMatrix::from_real(&x);
            (e, c, Exact::Real(x), xr)
        }
        Kind::Complex => {
            let m1 = complex_normal(&mut g, m, n);
            let m2 = complex_normal(&mut g, m, n);
            let r1 = complex_normal(&mut g, p, n);
            let r2 = complex_normal(&mut g, p, n);
            let x = complex_normal(&mut g, n, d);
            let xr = RbMatrix::from_complex(&x);
            let e = RbMatrix::from_complex_pair(&m1, &m2).expect("shapes");
            let c = RbMatrix::from_complex_pair(&r1, &r2).expect("shapes");
            (e, c, Exact::Complex(x), xr)
        }
    };
    let f = e.mat_mul(&x_rb).expect("shapes");
    let dd = c.mat_mul(&x_rb).expect("shapes");

    let (d_e, d_f) = match variant {
        Kind::Real => {
            let replicate = |h: DMatrix<f64>| {
                RbMatrix::from_components([h.clone(), h.clone(), h.clone(), h]).expect("shapes")
            };
            match case {
                Case::Both => {
                    let gm = uniform(&mut g, n + d, n + d);
                    let h = uniform(&mut g, m, n + d) * gm * scale;
                    (
                        replicate(h.columns(0, n).into_owned()),
                        replicate(h.columns(n, d).into_owned()),
                    )
                }
                Case::RhsOnly => {
                    let gm = uniform(&mut g, d, d);
                    let h = uniform(&mut g, m, d) * gm * scale;
                    (RbMatrix::zeros(m, n), replicate(h))
                }
            }
        }
        Kind::Complex => {
            let replicate =
                |j: DMatrix<Complex<f64>>| RbMatrix::from_complex_pair(&j, &j).expect("shapes");
            let sc = Complex::new(scale, 0.0);
            match case {
                Case::Both => {
                    let t = complex_uniform(&mut g, n + d, n + d);
                    let i = complex_uniform(&mut g, m, n + d);
                    let j = i * t * sc;
                    (
                        replicate(j.columns(0, n).into_owned()),
                        replicate(j.columns(n, d).into_owned()),
                    )
                }
                Case::RhsOnly => {
                    let t = complex_uniform(&mut g, d, d);
                    let i = complex_uniform(&mut g, m, d);
                    (RbMatrix::zeros(m, n), replicate(i * t * sc))
                }
            }
        }
    };

    let consistent = TlseProblem::new(e.clone(), f.clone(), c.clone(), dd.clone()).expect("shapes");
    let perturbed = TlseProblem::new(
        e.add(&d_e).expect("shapes"),
        f.add(&d_f).expect("shapes"),
        c,
        dd,
    )
    .expect("shapes");
    CompareInstance {
        consistent,
        perturbed,
        exact,
        d_e,
        d_f,
    }
}
