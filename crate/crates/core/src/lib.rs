//! Exact computations for generalized quantum groups U(chi, pi): cyclotomic
//! arithmetic, Lyndon-word PBW data, Nichols algebra tables, triangular
//! normal forms, highest-weight characters and the skew center.

pub mod algebra;
pub mod center;
pub mod error;
pub mod linalg;
pub mod modules;
pub mod nichols;
pub mod roots;
pub mod scalars;
pub mod weights;
pub mod words;

pub use error::{Error, Result};
