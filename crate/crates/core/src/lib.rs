//! Exact construction of the Lie algebra sl(3,𝕆) ≅ e6(−26) from explicit
//! octonionic one-parameter transformations of the exceptional Jordan
//! algebra.

pub mod error;
pub mod jordan;
pub mod linalg;
pub mod octonion;
pub mod report;
pub mod scalars;
pub mod structure;
pub mod subalgebras;
pub mod tangent;
pub mod transforms;
pub mod verify;

pub use error::{Error, Result};
pub use scalars::{Jet2, Rational};

pub type OctonionQ = octonion::Octonion<Rational>;
pub type Octonion64 = octonion::Octonion<f64>;
pub type JordanQ = jordan::JordanElement<Rational>;
pub type Jordan64 = jordan::JordanElement<f64>;
