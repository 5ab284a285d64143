//! Exact arithmetic: rational polynomials, Sturm sequences, real algebraic
//! numbers, factorisation and towers of real algebraic extensions.

pub mod bifactor;
pub mod bipoly;
pub mod factor;
pub mod field;
pub mod realalg;
pub mod sturm;
pub mod uni;

pub type Q = num_rational::BigRational;

pub use bipoly::BiPoly;
pub use realalg::{AlgebraicDescriptor, RealAlgebraic};
pub use uni::UniPoly;
