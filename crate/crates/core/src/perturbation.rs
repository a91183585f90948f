//! Relative normwise condition numbers of the TLSE solutions and the
//! first-order forward error bound `U = kappa * eps_n`.
//!
//! With `P = [A_c, B_c]`, `S = [C_c, D_c]`, the skinny SVD
//! `S = Us Ss Vs^H`, the TLSE factors `U = [U1 U2]`, `Sigma1`, `Sigma2`,
//! `V = [V1 V2]` and `k = n - q`:
//!
//! ```text
//! Q = [-(P S^+)^H; I]          S_r = diag(Ss, Sigma1)
//! W = [Vs, V1] = [W1; W2]      D0  = diag(0_q, I_k)
//! H = (V22^-H (x) W1^-H) Pi(d,n)
//! G = ((S_r^2 (x) I_d) - D0 (x) Sigma2^H Sigma2)^-1 [I_n (x) Sigma2^H, S_r (x) I_d]
//! Z = diag(D0 (x) U2^H Q^H, [I_q 0; -U1^H (P S^+) Us  I_k] (x) I_d)
//! kappa = ||H G Z||_2 ||[J, K]||_F / ||X||_F
//! ```
//!
//! `G` is a pair of diagonal matrices, `H` and `Z` are Kronecker
//! structured, so the product can be applied without forming it.

use nalgebra::{Complex, DMatrix, DVector};
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::kernels::kron::{check_size, commutation_matrix, kron};
use crate::kernels::norm::{power_iteration, spectral_norm};
use crate::kernels::operator::{
    BlockDiag, BoxedOp, Commutation, Diagonal, HStack, Kron, LinearOperator, Product,
};
use crate::kernels::svd::{cond2, svd_thin};
use crate::rb::{complex_block_column, real_block_column, RbMatrix};
use crate::scalar::{Field, Real};
use crate::tlse::{TlseComplexSolution, TlseFactors, TlseProblem, TlseRealSolution};

/// `H G Z` is materialized when it has at most this many entries.
pub const DENSE_OPERATOR_LIMIT: usize = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NormStrategy {
    /// Dense below [`DENSE_OPERATOR_LIMIT`], matrix-free above.
    #[default]
    Auto,
    Dense,
    Iterative,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConditionOptions {
    pub strategy: NormStrategy,
    pub keep_factors: bool,
    pub power_tol: f64,
    pub power_max_iter: usize,
}

impl Default for ConditionOptions {
    fn default() -> Self {
        Self {
            strategy: NormStrategy::Auto,
            keep_factors: false,
            power_tol: 1e-10,
            power_max_iter: 5000,
        }
    }
}

/// Dense intermediate matrices, kept on request.
#[derive(Debug, Clone)]
pub struct ConditionFactors<F: Field> {
    pub h: DMatrix<F>,
    pub g: DMatrix<F>,
    pub z: DMatrix<F>,
    pub q: DMatrix<F>,
    pub s: DMatrix<F>,
    pub w: DMatrix<F>,
}

#[derive(Debug, Clone)]
pub struct ConditionReport<F: Field> {
    pub kappa: F::Re,
    pub eps_n: F::Re,
    /// `kappa * eps_n`.
    pub bound: F::Re,
    pub factors: Option<ConditionFactors<F>>,
    /// Measured `||X' - X||_F / ||X||_F`, when supplied.
    pub forward_error: Option<F::Re>,
}

impl<F: Field> ConditionReport<F> {
    pub fn with_eps_n(mut self, eps_n: F::Re) -> Self {
        self.eps_n = eps_n;
        self.bound = self.kappa * eps_n;
        self
    }

    /// Records the relative change between `x` and a perturbed solution.
    pub fn with_forward_error(mut self, x: &DMatrix<F>, x_perturbed: &DMatrix<F>) -> Self {
        self.forward_error = Some((x_perturbed - x).norm() / x.norm());
        self
    }

    /// True when the measured error is within `bound * slack`.
    pub fn within_bound(&self, slack: F::Re) -> Option<bool> {
        self.forward_error.map(|e| e <= self.bound * slack)
    }
}

/// `U = kappa * eps_n`.
pub fn forward_error_bound<F: Field>(report: &ConditionReport<F>) -> F::Re {
    report.kappa * report.eps_n
}

/// A problem together with additive perturbations of all four inputs.
#[derive(Debug, Clone)]
pub struct PerturbationInstance<T: Real> {
    pub base: TlseProblem<T>,
    pub delta: TlseProblem<T>,
}

impl<T: Real> PerturbationInstance<T> {
    pub fn new(base: TlseProblem<T>, delta: TlseProblem<T>) -> Result<Self> {
        let shapes = |p: &TlseProblem<T>| [p.a.shape(), p.b.shape(), p.c.shape(), p.d.shape()];
        if shapes(&base) != shapes(&delta) {
            return Err(crate::error::dim_err(
                "perturbation",
                "delta shapes differ from the base problem",
            ));
        }
        Ok(Self { base, delta })
    }

    pub fn perturbed(&self) -> TlseProblem<T> {
        self.base
            .perturbed(&self.delta)
            .expect("shapes checked on construction")
    }

    /// `([J, K], [dJ, dK])` with `J = [C; A]` and `K = [D; B]`.
    pub fn concatenations(&self) -> (RbMatrix<T>, RbMatrix<T>) {
        let (j, k) = self.base.jk();
        let (dj, dk) = self.delta.jk();
        (
            j.hstack(&k).expect("shapes"),
            dj.hstack(&dk).expect("shapes"),
        )
    }
}

/// `eps_n = ||[dJ, dK]||_F / ||[J, K]||_F`.
pub fn epsilon_n<T: Real>(instance: &PerturbationInstance<T>) -> Result<T> {
    let (jk, djk) = instance.concatenations();
    let den = jk.frobenius_norm();
    if den == T::zero() {
        return Err(Error::ZeroDenominator("||[J, K]||_F"));
    }
    Ok(djk.frobenius_norm() / den)
}

/// `eps_n` evaluated on the real block column representations.
pub fn epsilon_n_real_repr<T: Real>(instance: &PerturbationInstance<T>) -> Result<T> {
    let (jk, djk) = instance.concatenations();
    let den = real_block_column(&jk).norm();
    if den == T::zero() {
        return Err(Error::ZeroDenominator("||[J_r, K_r]||_F"));
    }
    Ok(real_block_column(&djk).norm() / den)
}

/// `eps_n` evaluated on the complex block column representations.
pub fn epsilon_n_complex_repr<T: Real>(instance: &PerturbationInstance<T>) -> Result<T> {
    let (jk, djk) = instance.concatenations();
    let den = complex_block_column(&jk).norm();
    if den == T::zero() {
        return Err(Error::ZeroDenominator("||[J_c, K_c]||_F"));
    }
    Ok(complex_block_column(&djk).norm() / den)
}

pub fn condition_real<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseRealSolution<T>,
) -> Result<ConditionReport<T>> {
    condition_real_with(problem, solution, &ConditionOptions::default())
}

pub fn condition_real_with<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseRealSolution<T>,
    opts: &ConditionOptions,
) -> Result<ConditionReport<T>> {
    condition_core(&solution.factors, &solution.x, problem.data_norm(), opts)
}

pub fn condition_complex<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseComplexSolution<T>,
) -> Result<ConditionReport<Complex<T>>> {
    condition_complex_with(problem, solution, &ConditionOptions::default())
}

pub fn condition_complex_with<T: Real>(
    problem: &TlseProblem<T>,
    solution: &TlseComplexSolution<T>,
    opts: &ConditionOptions,
) -> Result<ConditionReport<Complex<T>>> {
    condition_core(&solution.factors, &solution.x, problem.data_norm(), opts)
}

/// Pieces shared by the dense and matrix-free evaluations.
struct Parts<F: Field> {
    v22_inv_h: DMatrix<F>,
    w1_inv_h: DMatrix<F>,
    /// Diagonal of `G`'s left and right halves.
    g1: DVector<F::Re>,
    g2: DVector<F::Re>,
    d0: DMatrix<F>,
    /// `U2^H Q^H`.
    m: DMatrix<F>,
    /// `[I_q 0; -U1^H (P S^+) Us  I_k]`.
    l: DMatrix<F>,
    q_mat: DMatrix<F>,
    s_r: DVector<F::Re>,
    w: DMatrix<F>,
}

fn undefined(msg: impl Into<String>) -> Error {
    Error::ConditioningUndefined(msg.into())
}

fn build_parts<F: Field>(f: &TlseFactors<F>) -> Result<Parts<F>> {
    let (n, d, q, k) = (f.n, f.d, f.q, f.k());
    let rows = f.p_hat.nrows();
    let one = F::Re::one();

    // Skinny SVD of S and P S^+ = P Vs Ss^-1 Us^H.
    let (us, ss, vs) = if q > 0 {
        let sv = svd_thin(&f.s_hat.adjoint());
        // S^H = V' s U'^H, hence S = U' s V'^H
        let (us, ss, vs) = (sv.v, sv.s, sv.u);
        let tol = crate::kernels::svd::rank_tolerance(q, n + d, ss[0]);
        if ss.iter().any(|&s| s <= tol) {
            return Err(undefined("constraint representation is rank deficient"));
        }
        (us, ss, vs)
    } else {
        (
            DMatrix::zeros(0, 0),
            DVector::zeros(0),
            DMatrix::zeros(n + d, 0),
        )
    };
    let mut vs_scaled = vs.clone();
    for j in 0..q {
        vs_scaled.column_mut(j).unscale_mut(ss[j]);
    }
    let ps_pinv = &f.p_hat * vs_scaled * us.adjoint();

    let mut q_mat = DMatrix::zeros(q + rows, rows);
    q_mat.rows_mut(0, q).copy_from(&(-ps_pinv.adjoint()));
    q_mat.rows_mut(q, rows).fill_with_identity();

    let s_r = DVector::from_iterator(n, ss.iter().copied().chain(f.sigma.iter().take(k).copied()));

    let mut w = DMatrix::zeros(n + d, n);
    w.columns_mut(0, q).copy_from(&vs);
    w.columns_mut(q, k).copy_from(&f.v_check.columns(0, k));
    let w1 = w.rows(0, n).into_owned();
    let cond_limit = one / F::Re::eps();
    if !(cond2(&w1) < cond_limit) {
        return Err(undefined("leading block of W is singular"));
    }
    let w1_inv_h = w1
        .try_inverse()
        .ok_or_else(|| undefined("leading block of W is singular"))?
        .adjoint();
    let v22 = f.v22();
    if !(cond2(&v22) < cond_limit) {
        return Err(undefined("trailing block of V is singular"));
    }
    let v22_inv_h = v22
        .try_inverse()
        .ok_or_else(|| undefined("trailing block of V is singular"))?
        .adjoint();

    let sigma2: Vec<F::Re> = f.sigma.iter().skip(k).take(d).copied().collect();
    let mut g1 = DVector::zeros(n * d);
    let mut g2 = DVector::zeros(n * d);
    for i in 0..n {
        let mask = if i < q { F::Re::zero() } else { one };
        for (l, &s2) in sigma2.iter().enumerate() {
            let den = s_r[i] * s_r[i] - mask * s2 * s2;
            if !(den > F::Re::zero()) {
                return Err(undefined("diagonal operand of G is singular"));
            }
            g1[i * d + l] = s2 / den;
            g2[i * d + l] = s_r[i] / den;
        }
    }

    let mut d0 = DMatrix::zeros(n, n);
    for i in q..n {
        d0[(i, i)] = F::one();
    }
    let u1 = f.u.columns(0, k);
    let u2 = f.u.columns(k, d);
    let m = u2.adjoint() * q_mat.adjoint();
    let mut l = DMatrix::identity(n, n);
    if q > 0 && k > 0 {
        l.view_mut((q, 0), (k, q))
            .copy_from(&(-(u1.adjoint() * &ps_pinv * &us)));
    }
    Ok(Parts {
        v22_inv_h,
        w1_inv_h,
        g1,
        g2,
        d0,
        m,
        l,
        q_mat,
        s_r,
        w,
    })
}

fn real_diag<F: Field>(v: &DVector<F::Re>) -> DMatrix<F> {
    DMatrix::from_diagonal(&v.map(F::from_real))
}

fn condition_core<F: Field>(
    f: &TlseFactors<F>,
    x: &DMatrix<F>,
    data_norm: F::Re,
    opts: &ConditionOptions,
) -> Result<ConditionReport<F>> {
    let x_norm = x.norm();
    if x_norm == F::Re::zero() {
        return Err(undefined("solution is zero"));
    }
    let parts = build_parts(f)?;
    let (n, d, q) = (f.n, f.d, f.q);
    let rows = f.p_hat.nrows();
    let nd = n * d;
    let zcols = n * (q + rows) + nd;

    let dense = match opts.strategy {
        NormStrategy::Dense => true,
        NormStrategy::Iterative => false,
        NormStrategy::Auto => nd.saturating_mul(zcols) <= DENSE_OPERATOR_LIMIT,
    };

    let (norm, factors) = if dense {
        check_size(2 * nd, zcols, crate::kernels::kron::DENSE_ENTRY_LIMIT)?;
        let h = kron(&parts.v22_inv_h, &parts.w1_inv_h)? * commutation_matrix::<F>(d, n);
        let mut g = DMatrix::zeros(nd, 2 * nd);
        for i in 0..nd {
            g[(i, i)] = F::from_real(parts.g1[i]);
            g[(i, nd + i)] = F::from_real(parts.g2[i]);
        }
        let z1 = kron(&parts.d0, &parts.m)?;
        let z2 = kron(&parts.l, &DMatrix::identity(d, d))?;
        let mut z = DMatrix::zeros(2 * nd, zcols);
        z.view_mut((0, 0), z1.shape()).copy_from(&z1);
        z.view_mut((nd, n * (q + rows)), z2.shape()).copy_from(&z2);

        assert_eq!(h.shape(), (nd, nd), "H shape");
        assert_eq!(g.shape(), (nd, 2 * nd), "G shape");
        assert_eq!(z.shape(), (2 * nd, zcols), "Z shape");
        let hgz = &h * &g * &z;
        let norm = spectral_norm(&hgz);
        let factors = opts.keep_factors.then(|| ConditionFactors {
            h,
            g,
            z,
            q: parts.q_mat.clone(),
            s: real_diag(&parts.s_r),
            w: parts.w.clone(),
        });
        (norm, factors)
    } else {
        let op = operator(&parts, d, n);
        assert_eq!((op.nrows(), op.ncols()), (nd, zcols), "HGZ shape");
        (
            power_iteration(&op, opts.power_tol, opts.power_max_iter)?,
            None,
        )
    };

    let kappa = norm * data_norm / x_norm;
    Ok(ConditionReport {
        kappa,
        eps_n: F::Re::zero(),
        bound: F::Re::zero(),
        factors,
        forward_error: None,
    })
}

/// `H G Z` as a composition of structured maps.
fn operator<F: Field>(parts: &Parts<F>, d: usize, n: usize) -> Product<F> {
    let h: Vec<BoxedOp<F>> = vec![
        Box::new(Kron {
            a: parts.v22_inv_h.clone(),
            b: parts.w1_inv_h.clone(),
        }),
        Box::new(Commutation::new(d, n)),
    ];
    let g: BoxedOp<F> = Box::new(HStack {
        blocks: vec![
            Box::new(Diagonal::<F> {
                diag: parts.g1.clone(),
            }),
            Box::new(Diagonal::<F> {
                diag: parts.g2.clone(),
            }),
        ],
    });
    let z: BoxedOp<F> = Box::new(BlockDiag {
        blocks: vec![
            Box::new(Kron {
                a: parts.d0.clone(),
                b: parts.m.clone(),
            }),
            Box::new(Kron {
                a: parts.l.clone(),
                b: DMatrix::identity(d, d),
            }),
        ],
    });
    let mut factors = h;
    factors.push(g);
    factors.push(z);
    Product { factors }
}
