use serde::Serialize;

use super::canonical::{canonical_invariant, realize_text, CurveInvariant};
use super::kmap::{k_map, odd_part, KMap, OddPart};
use super::tree::{bs_tree, BsTree};
use crate::arith::{AlgebraicDescriptor, BiPoly};
use crate::input::ParamBranchInput;
use crate::par::Execution;
use crate::puiseux::{analyze_branches, normalize_param, Chart, Direction, FactorInfo, RealBranch};
use crate::{GermError, Result};

/// `m` is the sum of branch orders, the multiplicity of the complexified
/// real germ; `ord_relevant` is the order of the product of real-relevant
/// rational factors. Both are absent for parametric input.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multiplicity {
    pub m: Option<u64>,
    pub ord_relevant: Option<u64>,
    pub parity: u8,
}

/// Everything computed about one curve germ.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub input: String,
    pub dim: usize,
    pub factors: Vec<FactorInfo>,
    pub branches: Vec<RealBranch>,
    pub kmap: KMap,
    pub odd: OddPart,
    pub multiplicity: Multiplicity,
    pub invariant: CurveInvariant,
    pub tree: BsTree,
}

fn finish(
    input: String,
    dim: usize,
    factors: Vec<FactorInfo>,
    branches: Vec<RealBranch>,
    ord_relevant: Option<u64>,
) -> Result<Analysis> {
    if branches.is_empty() {
        return Err(GermError::IsolatedOrigin);
    }
    let kmap = k_map(&branches);
    let odd = odd_part(&kmap);
    if !odd.is_antipodal() {
        return Err(GermError::Internal("odd part is not antipodally symmetric".into()));
    }
    let parity = odd.parity();
    let m = (dim == 2 && ord_relevant.is_some()).then(|| branches.iter().map(|b| b.k).sum::<u64>());
    for v in [m, ord_relevant].into_iter().flatten() {
        if (v % 2) as u8 != parity {
            return Err(GermError::Internal(format!(
                "multiplicity {v} disagrees with odd-part parity {parity}"
            )));
        }
    }
    let invariant = canonical_invariant(&branches)?;
    let tree = bs_tree(&kmap);
    Ok(Analysis {
        input,
        dim,
        factors,
        branches,
        kmap,
        odd,
        multiplicity: Multiplicity { m, ord_relevant, parity },
        invariant,
        tree,
    })
}

/// Analyze the germ of `V(f)` at the origin.
pub fn analyze_poly(f: &BiPoly, exec: Execution) -> Result<Analysis> {
    let ba = analyze_branches(f, exec)?;
    let ord = ba.relevant_order() as u64;
    finish(f.to_string_xy(), 2, ba.factors, ba.branches, Some(ord))
}

/// Analyze the union of parametrized branches.
pub fn analyze_param(inputs: &[ParamBranchInput]) -> Result<Analysis> {
    let dim = inputs.first().map(|p| p.dim()).ok_or_else(|| {
        GermError::DegenerateBranch("no branches".into())
    })?;
    if inputs.iter().any(|p| p.dim() != dim) {
        return Err(GermError::DegenerateBranch(
            "branches live in different dimensions".into(),
        ));
    }
    let branches = inputs.iter().map(normalize_param).collect::<Result<Vec<_>>>()?;
    let text = branches.iter().map(|b| b.param_string()).collect::<Vec<_>>().join("; ");
    finish(text, dim, Vec::new(), branches, None)
}

/// `(m, parity)` of `V(f)`; an isolated origin is an error.
pub fn multiplicity(f: &BiPoly) -> Result<Multiplicity> {
    Ok(analyze_poly(f, Execution::default())?.multiplicity)
}

/// A pairing of half-line nodes with equal `k`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Match {
    pub left: String,
    pub right: String,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub bs_equivalent: bool,
    pub branch_by_branch: bool,
    pub matching: Option<Vec<Match>>,
}

/// Compare two germs: tangent-link multisets for blow-spherical
/// equivalence, canonical invariants for the branch-by-branch notion.
pub fn equivalent(a: &Analysis, b: &Analysis) -> Verdict {
    let bs = a.kmap.k_multiset() == b.kmap.k_multiset();
    let bb = a.invariant == b.invariant;
    let matching = bs.then(|| {
        let sorted = |km: &KMap| {
            let mut v: Vec<(u64, String)> =
                km.entries().iter().map(|(d, k)| (*k, d.label())).collect();
            v.sort();
            v
        };
        sorted(&a.kmap)
            .into_iter()
            .zip(sorted(&b.kmap))
            .map(|((k, l), (_, r))| Match { left: l, right: r, k })
            .collect()
    });
    Verdict {
        bs_equivalent: bs,
        branch_by_branch: bb && bs,
        matching,
    }
}

#[derive(Serialize)]
struct TermReport {
    exponent: u64,
    coeff: AlgebraicDescriptor,
}

#[derive(Serialize)]
struct BranchReport {
    chart: Chart,
    side: i8,
    e: u64,
    k: u64,
    c1_regular: bool,
    param: String,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    terms: Vec<TermReport>,
    u: String,
    v: String,
    u_exact: Vec<AlgebraicDescriptor>,
    v_exact: Vec<AlgebraicDescriptor>,
    source_factor: Option<usize>,
    certified_degree: Option<u64>,
}

#[derive(Serialize)]
struct FactorReport {
    poly: String,
    multiplicity: u32,
    through_origin: bool,
    real_relevant: bool,
}

#[derive(Serialize)]
struct DirectionReport {
    direction: String,
    exact: Vec<AlgebraicDescriptor>,
    #[serde(skip_serializing_if = "Option::is_none")]
    k: Option<u64>,
}

#[derive(Serialize)]
struct InvariantReport {
    rows: Vec<[u32; 3]>,
    realization: String,
}

#[derive(Serialize)]
struct TreeReport {
    shape: Vec<u64>,
    text: String,
}

/// Machine-readable analysis report.
#[derive(Serialize)]
pub struct Report {
    input: String,
    dim: usize,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    factors: Vec<FactorReport>,
    branches: Vec<BranchReport>,
    k_map: Vec<DirectionReport>,
    odd_part: Vec<DirectionReport>,
    multiplicity: Multiplicity,
    invariant: InvariantReport,
    tree: TreeReport,
}

fn dir_report(d: &Direction, k: Option<u64>) -> DirectionReport {
    DirectionReport {
        direction: d.label(),
        exact: d.descriptor(),
        k,
    }
}

impl Analysis {
    pub fn report(&self) -> Report {
        Report {
            input: self.input.clone(),
            dim: self.dim,
            factors: self
                .factors
                .iter()
                .map(|f| FactorReport {
                    poly: f.poly.to_string_xy(),
                    multiplicity: f.multiplicity,
                    through_origin: f.through_origin,
                    real_relevant: f.real_relevant,
                })
                .collect(),
            branches: self
                .branches
                .iter()
                .map(|b| BranchReport {
                    chart: b.chart,
                    side: b.side,
                    e: b.e,
                    k: b.k,
                    c1_regular: b.k % 2 == 1,
                    param: b.param_string(),
                    terms: b
                        .terms
                        .iter()
                        .map(|(e, c)| TermReport {
                            exponent: *e,
                            coeff: c.descriptor(),
                        })
                        .collect(),
                    u: b.u.label(),
                    v: b.v.label(),
                    u_exact: b.u.descriptor(),
                    v_exact: b.v.descriptor(),
                    source_factor: b.source_factor,
                    certified_degree: b.certified_degree,
                })
                .collect(),
            k_map: self
                .kmap
                .entries()
                .iter()
                .map(|(d, k)| dir_report(d, Some(*k)))
                .collect(),
            odd_part: self.odd.directions.iter().map(|d| dir_report(d, None)).collect(),
            multiplicity: self.multiplicity.clone(),
            invariant: InvariantReport {
                rows: self
                    .invariant
                    .rows()
                    .iter()
                    .map(|r| [r.r_minus, r.r_zero, r.r_plus])
                    .collect(),
                realization: realize_text(&self.invariant),
            },
            tree: TreeReport {
                shape: self.tree.shape(),
                text: self.tree.to_text(),
            },
        }
    }

    /// Plain-text rendering of the report.
    pub fn to_text(&self) -> String {
        use std::fmt::Write as _;
        let mut s = String::new();
        let _ = writeln!(s, "germ: {}", self.input);
        let _ = writeln!(s, "branches: {}", self.branches.len());
        for (i, b) in self.branches.iter().enumerate() {
            let _ = writeln!(
                s,
                "  [{i}] k={} {} u={} v={} gamma={}",
                b.k,
                if b.k % 2 == 1 { "C1-regular" } else { "cusp-like" },
                b.u,
                b.v,
                b.param_string()
            );
        }
        let km: Vec<String> = self
            .kmap
            .entries()
            .iter()
            .map(|(d, k)| format!("{d}: {k}"))
            .collect();
        let _ = writeln!(s, "k-map: {{{}}}", km.join(", "));
        let odd: Vec<String> = self.odd.directions.iter().map(|d| d.label()).collect();
        let _ = writeln!(s, "odd part: {{{}}}", odd.join(", "));
        match (self.multiplicity.m, self.multiplicity.ord_relevant) {
            (Some(m), Some(o)) => {
                let _ = writeln!(s, "multiplicity: m={m} ord={o} parity={}", self.multiplicity.parity);
            }
            _ => {
                let _ = writeln!(s, "multiplicity: parity={}", self.multiplicity.parity);
            }
        }
        let _ = writeln!(s, "invariant: {}", self.invariant);
        let _ = writeln!(s, "realization: {}", realize_text(&self.invariant));
        s.push_str("tree:\n");
        for line in self.tree.to_text().lines() {
            let _ = writeln!(s, "  {line}");
        }
        s
    }
}
