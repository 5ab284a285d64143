//! Parametric branch input: `{"branches": [["t^2", "t^3"], ...]}`.

use num_traits::Zero;
use serde::Deserialize;

use super::parser::parse_univariate;
use crate::arith::UniPoly;
use crate::{GermError, Result};

/// One polynomial arc `t -> (p_1(t), ..., p_n(t))` through the origin.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamBranchInput {
    pub components: Vec<UniPoly>,
}

impl ParamBranchInput {
    pub fn new(components: Vec<UniPoly>) -> Result<Self> {
        if components.len() < 2 {
            return Err(GermError::DegenerateBranch(format!(
                "a branch needs at least 2 components, got {}",
                components.len()
            )));
        }
        for (i, c) in components.iter().enumerate() {
            if !c.coeff(0).is_zero() {
                return Err(GermError::NotThroughOrigin(format!(
                    "component {} has constant term {}",
                    i + 1,
                    c.coeff(0)
                )));
            }
        }
        if components.iter().all(|c| c.is_zero()) {
            return Err(GermError::DegenerateBranch("all components are zero".into()));
        }
        Ok(ParamBranchInput { components })
    }

    pub fn dim(&self) -> usize {
        self.components.len()
    }
}

#[derive(Deserialize)]
struct Doc {
    branches: Vec<Vec<String>>,
}

/// Parse and validate a branch-list document.
pub fn parse_param(json: &str) -> Result<Vec<ParamBranchInput>> {
    let doc: Doc = serde_json::from_str(json)?;
    if doc.branches.is_empty() {
        return Err(GermError::DegenerateBranch("no branches given".into()));
    }
    doc.branches
        .iter()
        .map(|b| {
            let comps = b.iter().map(|s| parse_univariate(s)).collect::<Result<Vec<_>>>()?;
            ParamBranchInput::new(comps)
        })
        .collect()
}
