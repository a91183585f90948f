//! Equality-constrained total least squares over reduced biquaternion
//! matrices.
//!
//! The solvers find real or complex `X` minimizing `||[E, F]||_F` subject
//! to `(A + E) X = B + F` and `C X = D`, where `A, B, C, D` are reduced
//! biquaternion matrices. Condition numbers and first-order forward error
//! bounds are in [`perturbation`], an equality-constrained least squares
//! baseline in [`lse`].
//!
//! ```
//! use rbtlse::{solve_real, residuals_real, RbMatrixF64, TlseProblemF64, ToleranceConfig};
//! use nalgebra::DMatrix;
//!
//! let a = RbMatrixF64::from_fn(12, 2, |i, j| rbtlse::RbScalar::new((i + j) as f64, 1.0, (i * j) as f64 * 0.1, 0.5 - j as f64));
//! let x = DMatrix::from_row_slice(2, 1, &[1.0, -2.0]);
//! let b = a.mat_mul(&RbMatrixF64::from_real(&x)).unwrap();
//! let problem = TlseProblemF64::new(a, b, RbMatrixF64::zeros(0, 2), RbMatrixF64::zeros(0, 1)).unwrap();
//! let sol = solve_real(&problem, &ToleranceConfig::default()).unwrap();
//! assert!((sol.x - x).norm() < 1e-8);
//! ```

pub mod error;
pub mod kernels;
pub mod lse;
pub mod perturbation;
pub mod rb;
pub mod scalar;
pub mod tlse;

pub use error::{Error, Result};
pub use lse::{lse_solve_complex, lse_solve_real, LseSolution};
pub use perturbation::{
    condition_complex, condition_complex_with, condition_real, condition_real_with, epsilon_n,
    forward_error_bound, ConditionOptions, ConditionReport, NormStrategy, PerturbationInstance,
};
pub use rb::{from_rbmat, to_rbmat, RbMatrix, RbScalar};
pub use scalar::{Field, Real};
pub use tlse::{
    residuals_complex, residuals_real, solve_complex, solve_real, TlseComplexSolution, TlseProblem,
    TlseRealSolution, ToleranceConfig,
};

pub type RbScalarF64 = RbScalar<f64>;
pub type RbScalarF32 = RbScalar<f32>;
pub type RbMatrixF64 = RbMatrix<f64>;
pub type RbMatrixF32 = RbMatrix<f32>;
pub type TlseProblemF64 = TlseProblem<f64>;
pub type TlseProblemF32 = TlseProblem<f32>;
pub type TlseRealSolutionF64 = TlseRealSolution<f64>;
pub type TlseComplexSolutionF64 = TlseComplexSolution<f64>;
pub type TlseRealProblem<T> = TlseProblem<T>;
pub type TlseComplexProblem<T> = TlseProblem<T>;
