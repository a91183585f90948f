//! End-to-end acceptance checks. Each test prints one `PASS`/`FAIL` line
//! straight to stderr so the verdict is visible without `--nocapture`.

use std::io::Write;

use nalgebra::{Complex, DMatrix};
use rand::Rng;
use rand_distr::StandardNormal;
use rbtlse::kernels::{pinv, qr_full, spectral_norm, spectral_norm_with, svd_thin, NormMethod};
use rbtlse::rb::{complex_block_column, complex_repr, real_block_column, real_repr};
use rbtlse::{
    condition_complex, condition_real, epsilon_n, solve_complex, solve_real, PerturbationInstance,
    RbScalar, TlseProblem, ToleranceConfig,
};
use rbtlse_bench::experiment::{
    run_records, Experiment, ExperimentConfig, ExperimentRecord, Trial, BOUND_SLACK,
};
use rbtlse_bench::gen::{
    self, gen_compare_instance, gen_deltas, gen_instance, Case, Exact, Kind, Sizes,
};

fn verdict(criterion: u32, name: &str, pass: bool, detail: &str) {
    let tag = if pass { "PASS" } else { "FAIL" };
    let _ = writeln!(
        std::io::stderr().lock(),
        "{tag} criterion {criterion} ({name}): {detail}"
    );
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}

fn accuracy(criterion: u32, exp: Experiment) {
    let cfg = ExperimentConfig {
        points: vec![1, 3, 5],
        trials: 3,
        ..ExperimentConfig::new(exp)
    };
    let recs = run_records(&cfg).unwrap();
    let worst = recs
        .iter()
        .map(|r| {
            r.eps1
                .unwrap_or(f64::INFINITY)
                .max(r.eps2.unwrap_or(f64::INFINITY))
        })
        .fold(0.0, f64::max);
    let pass = recs.len() == 9 && worst < 1e-10;
    verdict(
        criterion,
        exp.name(),
        pass,
        &format!(
            "{} runs, worst residual {worst:e} (limit 1e-10)",
            recs.len()
        ),
    );
    assert!(pass, "{recs:#?}");
}

#[test]
fn criterion_1_accuracy_real() {
    accuracy(1, Experiment::AccuracyReal);
}

#[test]
fn criterion_2_accuracy_complex() {
    accuracy(2, Experiment::AccuracyComplex);
}

fn bound(criterion: u32, exp: Experiment) {
    let cfg = ExperimentConfig {
        points: vec![1, 3, 5],
        trials: 7,
        ..ExperimentConfig::new(exp)
    };
    let recs = run_records(&cfg).unwrap();
    let kept: Vec<&ExperimentRecord> = recs.iter().filter(|r| !r.is_discarded()).collect();
    let within = kept
        .iter()
        .filter(|r| r.fwd_err.unwrap() <= r.bound.unwrap() * BOUND_SLACK)
        .count();
    let worst = kept
        .iter()
        .map(|r| r.fwd_err.unwrap() / r.bound.unwrap())
        .fold(0.0, f64::max);
    let pass = kept.len() >= 60 && within == kept.len();
    verdict(
        criterion,
        exp.name(),
        pass,
        &format!(
            "{within}/{} kept trials within 1.05 U ({} discarded), worst fwd/U = {worst:.3e}",
            kept.len(),
            recs.len() - kept.len()
        ),
    );
    assert!(pass);
}

#[test]
fn criterion_3_bound_real() {
    bound(3, Experiment::BoundReal);
}

#[test]
fn criterion_4_bound_complex() {
    bound(4, Experiment::BoundComplex);
}

#[test]
fn criterion_5_comparison_ordering() {
    let mut all_pass = true;
    let mut lines = Vec::new();
    for variant in [Kind::Real, Kind::Complex] {
        for case in [Case::Both, Case::RhsOnly] {
            let cfg = ExperimentConfig {
                case,
                variant,
                ..ExperimentConfig::new(Experiment::CompareLse)
            };
            assert_eq!(cfg.points, vec![60, 80, 100, 120]);
            assert_eq!(cfg.trials, 20);
            let recs = run_records(&cfg).unwrap();
            for r in recs.iter().filter(|r| r.trial == Trial::Mean) {
                let (t, l) = (r.eps_t.unwrap(), r.eps_l.unwrap());
                let ok = match case {
                    Case::Both => t < l,
                    Case::RhsOnly => l < t,
                };
                all_pass &= ok;
                lines.push(format!(
                    "{variant:?} case {} m={}: mean TLSE {t:.4e}, mean LSE {l:.4e} [{}]",
                    case as u8,
                    r.m,
                    if ok { "ok" } else { "wrong order" }
                ));
            }
        }
    }
    verdict(5, "compare-lse ordering", all_pass, &lines.join("; "));
    assert!(all_pass, "{lines:#?}");
}

#[test]
fn criterion_6_algebra_identities() {
    let mut g = gen::rng(6);
    let mut worst_abs: f64 = 0.0;
    let mut worst_rel: f64 = 0.0;
    for inst in 0..1000 {
        let (m, n, t) = (1 + inst % 4, 1 + (inst / 4) % 4, 1 + (inst / 16) % 3);
        let p = gen::rb_with(&mut g, m, n, Kind::Real);
        let q = gen::rb_with(&mut g, m, n, Kind::Real);
        let tt = gen::rb_with(&mut g, n, t, Kind::Real);
        let qd = gen::rb_with(&mut g, m, t, Kind::Real);
        let zeta = 3.0 * g.sample::<f64, _>(StandardNormal);
        let zc = Complex::new(g.sample(StandardNormal), g.sample(StandardNormal));

        let pr = real_repr(&p).full;
        let qr = real_repr(&q).full;
        worst_abs = worst_abs
            .max((real_repr(&p.add(&q).unwrap()).full - (&pr + &qr)).amax())
            .max((real_repr(&p.scale(zeta)).full - &pr * zeta).amax())
            .max((real_repr(&p.mat_mul(&tt).unwrap()).full - &pr * real_repr(&tt).full).amax());
        let pc = complex_repr(&p).full;
        let qc = complex_repr(&q).full;
        worst_abs = worst_abs
            .max((complex_repr(&p.add(&q).unwrap()).full - (&pc + &qc)).camax())
            .max((complex_repr(&p.scale_rb(RbScalar::from_complex(zc))).full - &pc * zc).camax())
            .max(
                (complex_repr(&p.mat_mul(&tt).unwrap()).full - &pc * complex_repr(&tt).full)
                    .camax(),
            );

        let f = p.frobenius_norm();
        for other in [
            0.5 * pr.norm(),
            real_block_column(&p).norm(),
            pc.norm() / 2f64.sqrt(),
            complex_block_column(&p).norm(),
        ] {
            worst_rel = worst_rel.max(rel(other, f));
        }

        let pq = p.hstack(&qd).unwrap();
        let l = pq.frobenius_norm();
        let cat = |a: DMatrix<f64>, b: DMatrix<f64>| {
            let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
            out.columns_mut(0, a.ncols()).copy_from(&a);
            out.columns_mut(a.ncols(), b.ncols()).copy_from(&b);
            out
        };
        let ccat = |a: DMatrix<Complex<f64>>, b: DMatrix<Complex<f64>>| {
            let mut out = DMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
            out.columns_mut(0, a.ncols()).copy_from(&a);
            out.columns_mut(a.ncols(), b.ncols()).copy_from(&b);
            out
        };
        let side_r = cat(real_repr(&p).full, real_repr(&qd).full).norm();
        let side_c = ccat(complex_repr(&p).full, complex_repr(&qd).full).norm();
        for other in [
            0.5 * real_repr(&pq).full.norm(),
            0.5 * side_r,
            cat(real_block_column(&p), real_block_column(&qd)).norm(),
            complex_repr(&pq).full.norm() / 2f64.sqrt(),
            side_c / 2f64.sqrt(),
            ccat(complex_block_column(&p), complex_block_column(&qd)).norm(),
        ] {
            worst_rel = worst_rel.max(rel(other, l));
        }
    }
    let pass = worst_abs < 1e-13 && worst_rel < 1e-14;
    verdict(
        6,
        "algebra identities",
        pass,
        &format!("1000 instances, worst homomorphism error {worst_abs:e} (1e-13), worst norm identity {worst_rel:e} (1e-14)"),
    );
    assert!(pass);
}

#[test]
fn criterion_7_oracle_equivalence() {
    let tol = ToleranceConfig::default();
    let mut worst_x: f64 = 0.0;
    let mut worst_pert: f64 = 0.0;
    let mut count = 0;
    for variant in [Kind::Real, Kind::Complex] {
        for seed in 0..50 {
            let inst = gen_compare_instance(Case::Both, 60, 700 + seed, variant, 0.01);
            let p = &inst.consistent;
            let scale = p.a.hstack(&p.b).unwrap().frobenius_norm();
            let (err, pert) = match (&inst.exact, variant) {
                (Exact::Real(x), Kind::Real) => {
                    let s = solve_real(p, &tol).unwrap();
                    (
                        (&s.x - x).norm() / x.norm(),
                        s.residual_perturbation_norm / scale,
                    )
                }
                (Exact::Complex(x), Kind::Complex) => {
                    let s = solve_complex(p, &tol).unwrap();
                    (
                        (&s.x - x).norm() / x.norm(),
                        s.residual_perturbation_norm / scale,
                    )
                }
                _ => unreachable!(),
            };
            worst_x = worst_x.max(err);
            worst_pert = worst_pert.max(pert);
            count += 1;
        }
    }
    let pass = worst_x <= 1e-8 && worst_pert <= 1e-10;
    verdict(
        7,
        "oracle equivalence",
        pass,
        &format!("{count} consistent instances, worst X error {worst_x:e} (1e-8), worst perturbation norm {worst_pert:e} (1e-10)"),
    );
    assert!(pass);
}

fn directional_ratios(
    kind: Kind,
    problem: &TlseProblem<f64>,
    directions: u64,
    seed: u64,
) -> (f64, f64) {
    let tol = ToleranceConfig::default();
    let (x, kappa): (DMatrix<Complex<f64>>, f64) = match kind {
        Kind::Real => {
            let s = solve_real(problem, &tol).unwrap();
            let k = condition_real(problem, &s).unwrap().kappa;
            (s.x.map(|v| Complex::new(v, 0.0)), k)
        }
        Kind::Complex => {
            let s = solve_complex(problem, &tol).unwrap();
            let k = condition_complex(problem, &s).unwrap().kappa;
            (s.x, k)
        }
    };
    let mut worst: f64 = 0.0;
    for dir in 0..directions {
        let unit = gen_deltas(problem, seed * 1000 + dir);
        let raw =
            epsilon_n(&PerturbationInstance::new(problem.clone(), unit.clone()).unwrap()).unwrap();
        let inst = PerturbationInstance::new(problem.clone(), unit.scale(1e-8 / raw)).unwrap();
        let eps = epsilon_n(&inst).unwrap();
        let pert = inst.perturbed();
        let xp = match kind {
            Kind::Real => solve_real(&pert, &tol)
                .unwrap()
                .x
                .map(|v| Complex::new(v, 0.0)),
            Kind::Complex => solve_complex(&pert, &tol).unwrap().x,
        };
        worst = worst.max(((xp - &x).norm() / x.norm()) / eps);
    }
    (worst, kappa)
}

#[test]
fn criterion_8_condition_number_sanity() {
    let mut worst: f64 = 0.0;
    for (kind, sizes) in [
        (Kind::Real, Sizes::accuracy_real(1)),
        (Kind::Complex, Sizes::accuracy_complex(1)),
    ] {
        for seed in 0..10 {
            let problem = gen_instance(kind, sizes, 800 + seed);
            let (ratio, kappa) = directional_ratios(kind, &problem, 200, 800 + seed);
            worst = worst.max(ratio / kappa);
        }
    }
    let pass = worst <= 1.001;
    verdict(
        8,
        "condition number sanity",
        pass,
        &format!("20 instances x 200 directions at eps_n = 1e-8, worst ratio / kappa = {worst:.6}"),
    );
    assert!(pass);
}

fn orth_err<F: rbtlse::Field>(q: &DMatrix<F>) -> f64 {
    let k = q.ncols();
    let e = q.adjoint() * q - DMatrix::<F>::identity(k, k);
    rbtlse::Real::as_f64(e.norm())
}

#[test]
fn criterion_9_kernel_reconstruction() {
    let mut g = gen::rng(9);
    let mut worst_fact: f64 = 0.0;
    let mut worst_penrose: f64 = 0.0;
    let mut worst_norm: f64 = 0.0;
    let shapes = [(7, 3), (3, 8), (60, 40), (150, 400), (400, 150), (400, 400)];
    for &(r, c) in &shapes {
        let m = gen::normal(&mut g, r, c) / (c as f64).sqrt();
        let mn = m.norm();

        let f = qr_full(&m);
        worst_fact = worst_fact
            .max(orth_err(&f.q))
            .max((&f.q * &f.r - &m).norm() / mn);
        let s = svd_thin(&m);
        worst_fact = worst_fact
            .max((s.reconstruct() - &m).norm() / mn)
            .max(orth_err(&s.u))
            .max(orth_err(&s.v));
        assert!(s.s.as_slice().windows(2).all(|w| w[0] >= w[1]));

        let p = pinv(&m);
        let pn = p.norm();
        worst_penrose = worst_penrose
            .max((&m * &p * &m - &m).norm() / mn)
            .max((&p * &m * &p - &p).norm() / pn)
            .max(((&m * &p).adjoint() - &m * &p).norm())
            .max(((&p * &m).adjoint() - &p * &m).norm());

        let dense = spectral_norm(&m);
        let iter = spectral_norm_with(&m, NormMethod::iterative()).unwrap();
        worst_norm = worst_norm.max(rel(iter, dense));
    }
    for &(r, c) in &[(9, 4), (200, 120)] {
        let m = gen::complex_normal(&mut g, r, c).unscale((2.0 * c as f64).sqrt());
        let mn = m.norm();
        let f = qr_full(&m);
        worst_fact = worst_fact
            .max(orth_err(&f.q))
            .max((&f.q * &f.r - &m).norm() / mn);
        let s = svd_thin(&m);
        worst_fact = worst_fact
            .max((s.reconstruct() - &m).norm() / mn)
            .max(orth_err(&s.u))
            .max(orth_err(&s.v));
        let p = pinv(&m);
        worst_penrose = worst_penrose
            .max((&m * &p * &m - &m).norm() / mn)
            .max((&p * &m * &p - &p).norm() / p.norm());
        let dense = spectral_norm(&m);
        let iter = spectral_norm_with(&m, NormMethod::iterative()).unwrap();
        worst_norm = worst_norm.max(rel(iter, dense));
    }
    let pass = worst_fact < 1e-12 && worst_penrose < 1e-10 && worst_norm < 1e-8;
    verdict(
        9,
        "kernel reconstruction",
        pass,
        &format!(
            "sizes up to 400x400: factorization {worst_fact:e} (1e-12), Penrose {worst_penrose:e} (1e-10), dense vs iterative norm {worst_norm:e} (1e-8)"
        ),
    );
    assert!(pass);
}
