#![allow(dead_code)]

use nalgebra::{Complex, DMatrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rbtlse::{RbMatrix, TlseProblem};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn normal(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<f64> {
    DMatrix::from_fn(r, c, |_, _| rng.sample(StandardNormal))
}

pub fn cnormal(rng: &mut ChaCha8Rng, r: usize, c: usize) -> DMatrix<Complex<f64>> {
    DMatrix::from_fn(r, c, |_, _| {
        Complex::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
    })
}

pub fn rb_normal(rng: &mut ChaCha8Rng, r: usize, c: usize) -> RbMatrix<f64> {
    RbMatrix::from_components([
        normal(rng, r, c),
        normal(rng, r, c),
        normal(rng, r, c),
        normal(rng, r, c),
    ])
    .unwrap()
}

pub fn rb_uniform(rng: &mut ChaCha8Rng, r: usize, c: usize) -> RbMatrix<f64> {
    let mut u = || DMatrix::from_fn(r, c, |_, _| rng.random::<f64>());
    RbMatrix::from_components([u(), u(), u(), u()]).unwrap()
}

pub fn random_problem(seed: u64, m: usize, n: usize, p: usize, d: usize) -> TlseProblem<f64> {
    let mut g = rng(seed);
    TlseProblem::new(
        rb_normal(&mut g, m, n),
        rb_normal(&mut g, m, d),
        rb_normal(&mut g, p, n),
        rb_normal(&mut g, p, d),
    )
    .unwrap()
}

/// `B = A X`, `D = C X` for a real `X`.
pub fn consistent_real(
    seed: u64,
    m: usize,
    n: usize,
    p: usize,
    d: usize,
) -> (TlseProblem<f64>, DMatrix<f64>) {
    let mut g = rng(seed);
    let a = rb_normal(&mut g, m, n);
    let c = rb_normal(&mut g, p, n);
    let x = normal(&mut g, n, d);
    let xr = RbMatrix::from_real(&x);
    let pr = TlseProblem::new(
        a.clone(),
        a.mat_mul(&xr).unwrap(),
        c.clone(),
        c.mat_mul(&xr).unwrap(),
    )
    .unwrap();
    (pr, x)
}

/// `B = A X`, `D = C X` for a complex `X`.
pub fn consistent_complex(
    seed: u64,
    m: usize,
    n: usize,
    p: usize,
    d: usize,
) -> (TlseProblem<f64>, DMatrix<Complex<f64>>) {
    let mut g = rng(seed);
    let a = rb_normal(&mut g, m, n);
    let c = rb_normal(&mut g, p, n);
    let x = cnormal(&mut g, n, d);
    let xr = RbMatrix::from_complex(&x);
    let pr = TlseProblem::new(
        a.clone(),
        a.mat_mul(&xr).unwrap(),
        c.clone(),
        c.mat_mul(&xr).unwrap(),
    )
    .unwrap();
    (pr, x)
}
