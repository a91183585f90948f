use std::path::Path;
use std::process::{Command, Output};

use rbtlse::{to_rbmat, RbMatrix, TlseProblem};
use rbtlse_bench::gen::{gen_compare_instance, gen_instance, Case, Exact, Kind, Sizes};

fn rbtlse(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rbtlse"))
        .args(args)
        .env("RUST_LOG", "off")
        .output()
        .expect("binary runs")
}

fn write_problem(dir: &Path, p: &TlseProblem<f64>) -> [String; 4] {
    let names = ["a", "b", "c", "d"];
    let mats = [&p.a, &p.b, &p.c, &p.d];
    let mut out: [String; 4] = Default::default();
    for (i, (name, m)) in names.iter().zip(mats).enumerate() {
        let path = dir.join(format!("{name}.rbmat"));
        std::fs::write(&path, to_rbmat(m)).unwrap();
        out[i] = path.to_str().unwrap().to_string();
    }
    out
}

fn solve_args<'a>(cmd: &'a str, files: &'a [String; 4]) -> Vec<&'a str> {
    vec![
        cmd, "--a", &files[0], "--b", &files[1], "--c", &files[2], "--d", &files[3],
    ]
}

fn field(report: &str, label: &str) -> f64 {
    report
        .lines()
        .find_map(|l| l.strip_prefix(label))
        .unwrap_or_else(|| panic!("{label} missing"))
        .trim()
        .parse()
        .unwrap()
}

#[test]
fn solve_real_recovers_constructed_solution() {
    let dir = tempfile::tempdir().unwrap();
    let inst = gen_compare_instance(Case::Both, 60, 3, Kind::Real, 0.01);
    let files = write_problem(dir.path(), &inst.consistent);
    let report = dir.path().join("report.txt");
    let mut args = solve_args("solve-real", &files);
    args.extend(["--report", report.to_str().unwrap(), "--eps-n", "1e-8"]);
    let out = rbtlse(&args);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(std::fs::read_to_string(&report).unwrap(), text);
    assert!(field(&text, "eps1:") < 1e-10);
    assert!(field(&text, "eps2:") < 1e-10);
    let kappa = field(&text, "kappa:");
    assert!(kappa > 0.0);
    assert_eq!(field(&text, "U:"), kappa * 1e-8);

    let Exact::Real(x) = &inst.exact else {
        unreachable!()
    };
    let rows: Vec<Vec<f64>> = text
        .lines()
        .skip_while(|l| !l.starts_with("X:"))
        .skip(1)
        .map(|l| l.split(' ').map(|v| v.parse().unwrap()).collect())
        .collect();
    assert_eq!(rows.len(), 50);
    for (i, row) in rows.iter().enumerate() {
        assert_eq!(row.len(), 35);
        for (j, v) in row.iter().enumerate() {
            assert!((v - x[(i, j)]).abs() < 1e-8);
        }
    }
}

#[test]
fn solve_complex_reports_residuals() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_instance(Kind::Complex, Sizes::accuracy_complex(1), 4);
    let files = write_problem(dir.path(), &p);
    let out = rbtlse(&solve_args("solve-complex", &files));
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("solver: complex\nsize: m=50 n=6 p=2 d=3\n"));
    assert!(field(&text, "eps1:") < 1e-10);
    assert!(field(&text, "eps2:") < 1e-10);
}

#[test]
fn solver_assumption_failure_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    // Repeated constraint rows leave C with rank below its row count.
    let row = gen_instance(
        Kind::Real,
        Sizes {
            m: 10,
            n: 6,
            p: 1,
            d: 1,
        },
        5,
    );
    let stack = |m: &RbMatrix<f64>| m.vstack(m).unwrap();
    let p = TlseProblem::new(row.a.clone(), row.b.clone(), stack(&row.c), stack(&row.d)).unwrap();
    let files = write_problem(dir.path(), &p);
    let out = rbtlse(&solve_args("solve-real", &files));
    assert_eq!(
        out.status.code(),
        Some(2),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(String::from_utf8_lossy(&out.stderr).contains("assumption"));
}

#[test]
fn bad_input_exits_1() {
    let dir = tempfile::tempdir().unwrap();
    let p = gen_instance(Kind::Real, Sizes::accuracy_real(1), 6);
    let files = write_problem(dir.path(), &p);
    let mut missing = files.clone();
    missing[0] = dir
        .path()
        .join("missing.rbmat")
        .to_str()
        .unwrap()
        .to_string();
    let out = rbtlse(&solve_args("solve-real", &missing));
    assert_eq!(out.status.code(), Some(1));

    std::fs::write(&files[1], "RBMAT 2 x\n").unwrap();
    let out = rbtlse(&solve_args("solve-real", &files));
    assert_eq!(out.status.code(), Some(1));

    // B with the wrong row count.
    let other = gen_instance(Kind::Real, Sizes::accuracy_real(2), 6);
    std::fs::write(&files[1], to_rbmat(&other.b)).unwrap();
    let out = rbtlse(&solve_args("solve-real", &files));
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn run_writes_identical_csv_for_identical_seeds() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for path in [&a, &b] {
        let out = rbtlse(&[
            "run",
            "compare-lse",
            "--m-list",
            "60,70",
            "--trials",
            "3",
            "--case",
            "2",
            "--seed",
            "11",
            "--out",
            path.to_str().unwrap(),
        ]);
        assert!(
            out.status.success(),
            "{}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
    let text = std::fs::read_to_string(&a).unwrap();
    assert_eq!(text, std::fs::read_to_string(&b).unwrap());
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(
        lines[0],
        "experiment,t,m,seed,trial,eps1,eps2,delta_norm,fwd_err,bound,eps_T,eps_L,error"
    );
    assert_eq!(lines.len(), 1 + 2 * 4);
    assert!(lines[1].starts_with("compare-lse,,60,11,0,,,,,,"));
    assert!(lines[4].starts_with("compare-lse,,60,11,mean,"));
}

#[test]
fn run_prints_to_stdout_without_out() {
    let out = rbtlse(&["run", "accuracy-complex", "--t-min", "1", "--t-max", "1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 2);
    assert!(text
        .lines()
        .nth(1)
        .unwrap()
        .starts_with("accuracy-complex,1,50,0,0,"));
}

#[test]
fn run_rejects_bad_configuration() {
    let out = rbtlse(&["run", "compare-lse", "--m-list", "40"]);
    assert_eq!(out.status.code(), Some(1));
    let out = rbtlse(&["run", "accuracy-real", "--t-min", "3", "--t-max", "1"]);
    assert_eq!(out.status.code(), Some(1));
}
