//! Curve germ input: implicit polynomials and parametric branch lists.

pub mod param;
pub mod parser;

pub use param::{parse_param, ParamBranchInput};
pub use parser::{parse_poly, parse_univariate, print_poly};
