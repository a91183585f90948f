//! Dense factorizations and products over real and complex scalars.

pub mod kron;
pub mod norm;
pub mod operator;
pub mod qr;
pub mod svd;

pub use kron::{commutation_matrix, kron, DENSE_ENTRY_LIMIT};
pub use norm::{power_iteration, spectral_norm, spectral_norm_with, NormMethod};
pub use operator::LinearOperator;
pub use qr::{qr_full, qr_thin, QrFactors};
pub use svd::{numerical_rank, pinv, singular_values, svd_skinny, svd_thin, SvdFactors};
