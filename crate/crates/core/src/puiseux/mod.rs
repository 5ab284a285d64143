//! Real analytic branches of plane curve germs by Newton–Puiseux expansion.

mod branch;
pub mod direction;
mod expand;
pub mod newton;

pub use branch::{
    analyze_branches, branch_order, describe, is_c1_regular, normalize_param, real_branches,
    real_branches_with, substitution_order, tangent_halflines, BranchAnalysis, Chart, FactorInfo,
    RealBranch,
};
pub use direction::Direction;
pub use newton::{newton_polygon, Edge};
