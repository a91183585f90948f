//! Reduced biquaternion scalars and matrices.

mod format;
mod matrix;
mod repr;
mod scalar;

pub use format::{from_rbmat, to_rbmat};
pub use matrix::RbMatrix;
pub use repr::{
    apply_k, apply_l, apply_m, apply_n, complex_block_column, complex_repr,
    from_complex_block_column, from_real_block_column, real_block_column, real_repr, ComplexRepr,
    RealRepr,
};
pub use scalar::{rb_mul, RbScalar};
