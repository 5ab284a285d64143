use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{BiPoly, Q};
use crate::puiseux::{Direction, RealBranch};
use crate::{GermError, Result};

/// Branch counts on one tangent line: `(r(-1), r(0), r(1))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Row {
    pub r_minus: u32,
    pub r_zero: u32,
    pub r_plus: u32,
}

impl Row {
    pub fn new(r_minus: u32, r_zero: u32, r_plus: u32) -> Self {
        Row { r_minus, r_zero, r_plus }
    }

    pub fn sum(&self) -> u32 {
        self.r_minus + self.r_zero + self.r_plus
    }

    fn key(&self) -> (u32, u32, u32, u32) {
        (self.r_zero, self.sum(), self.r_plus, self.r_minus)
    }
}

impl fmt::Display for Row {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.r_minus, self.r_zero, self.r_plus)
    }
}

/// Canonical classifying data of a curve germ up to branch-by-branch
/// blow-spherical homeomorphism.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct CurveInvariant {
    rows: Vec<Row>,
}

impl CurveInvariant {
    /// Validates `r(-1) <= r(1)`, the row order and that no row is empty.
    pub fn new(rows: Vec<Row>) -> Result<Self> {
        if rows.is_empty() {
            return Err(GermError::InvalidInvariant("no rows".into()));
        }
        for (l, r) in rows.iter().enumerate() {
            if r.sum() == 0 {
                return Err(GermError::InvalidInvariant(format!("row {} is zero", l + 1)));
            }
            if r.r_minus > r.r_plus {
                return Err(GermError::InvalidInvariant(format!(
                    "row {} {r}: r(-1) exceeds r(1)",
                    l + 1
                )));
            }
        }
        for (l, w) in rows.windows(2).enumerate() {
            let (a, b) = (w[0], w[1]);
            if (a.r_zero, a.sum()) > (b.r_zero, b.sum()) {
                return Err(GermError::InvalidInvariant(format!(
                    "rows {} and {} out of order",
                    l + 1,
                    l + 2
                )));
            }
        }
        let inv = CurveInvariant { rows };
        if inv.rows.windows(2).any(|w| w[0].key() > w[1].key()) {
            return Err(GermError::InvalidInvariant(
                "tied rows must be ordered by (r(1), r(-1))".into(),
            ));
        }
        Ok(inv)
    }

    /// Sort and normalize arbitrary per-line counts.
    pub fn from_counts(counts: impl IntoIterator<Item = Row>) -> Result<Self> {
        let mut rows: Vec<Row> = counts
            .into_iter()
            .map(|r| {
                if r.r_minus > r.r_plus {
                    Row::new(r.r_plus, r.r_zero, r.r_minus)
                } else {
                    r
                }
            })
            .collect();
        rows.sort_by_key(Row::key);
        Self::new(rows)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn branch_count(&self) -> u32 {
        self.rows.iter().map(Row::sum).sum()
    }
}

impl fmt::Display for CurveInvariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

/// Group branches by tangent line and count full-line and half-line
/// tangent cones.
pub fn canonical_invariant(branches: &[RealBranch]) -> Result<CurveInvariant> {
    let mut lines: BTreeMap<Direction, (u32, u32, u32)> = BTreeMap::new();
    for b in branches {
        let line = b.u.line_rep();
        let slot = lines.entry(line.clone()).or_default();
        if b.k % 2 == 1 {
            slot.1 += 1;
        } else if b.u == line {
            slot.2 += 1;
        } else {
            slot.0 += 1;
        }
    }
    CurveInvariant::from_counts(lines.into_values().map(|(m, z, p)| Row::new(m, z, p)))
}

fn line_factor(l: i64) -> (BiPoly, BiPoly) {
    let lx = BiPoly::x().scale(&Q::from_integer(l.into()));
    (&BiPoly::y() - &lx, &BiPoly::y() + &lx)
}

/// One factor of the realization: `(y - l x)^2 - j r (y + l x)^3` for
/// `j = +-1`, `(y - l x)^3 - r (y + l x)^4` for `j = 0`.
fn realization_factor(l: i64, j: i64, r: u32) -> BiPoly {
    let (a, b) = line_factor(l);
    let r = Q::from_integer(r.into());
    if j == 0 {
        &a.pow(3) - &b.pow(4).scale(&r)
    } else {
        &a.pow(2) - &b.pow(3).scale(&(r * Q::from_integer(j.into())))
    }
}

fn realization_text(l: i64, j: i64, r: u32) -> String {
    let lx = if l == 1 { "x".to_string() } else { format!("{l}*x") };
    let (pa, pb) = if j == 0 { (3, 4) } else { (2, 3) };
    let coef = i64::from(r) * if j == 0 { 1 } else { j };
    let sign = if coef > 0 { '-' } else { '+' };
    let mag = if coef.abs() == 1 { String::new() } else { format!("{}*", coef.abs()) };
    format!("(y-{lx})^{pa}{sign}{mag}(y+{lx})^{pb}")
}

fn realization_factors(a: &CurveInvariant) -> Vec<(i64, i64, u32)> {
    let mut out = Vec::new();
    for (idx, row) in a.rows.iter().enumerate() {
        let l = idx as i64 + 1;
        for (j, n) in [(-1, row.r_minus), (0, row.r_zero), (1, row.r_plus)] {
            for r in 1..=n {
                out.push((l, j, r));
            }
        }
    }
    out
}

/// Defining polynomial of the model curve with invariant `a`.
pub fn realize(a: &CurveInvariant) -> BiPoly {
    realization_factors(a)
        .into_iter()
        .fold(BiPoly::one(), |acc, (l, j, r)| &acc * &realization_factor(l, j, r))
}

/// The realization as a product of its factors, in the input grammar.
pub fn realize_text(a: &CurveInvariant) -> String {
    let fs: Vec<String> = realization_factors(a)
        .into_iter()
        .map(|(l, j, r)| realization_text(l, j, r))
        .collect();
    if fs.len() == 1 {
        fs[0].clone()
    } else {
        fs.iter().map(|f| format!("({f})")).collect::<Vec<_>>().join("*")
    }
}

/// Every element of the invariant set with at most `max_lines` rows and
/// entries at most `max_r`.
pub fn enumerate_invariants(max_lines: usize, max_r: u32) -> Vec<CurveInvariant> {
    let mut rows = Vec::new();
    for m in 0..=max_r {
        for z in 0..=max_r {
            for p in m..=max_r {
                let r = Row::new(m, z, p);
                if r.sum() > 0 {
                    rows.push(r);
                }
            }
        }
    }
    rows.sort_by_key(Row::key);
    let mut out = Vec::new();
    let mut stack: Vec<usize> = Vec::new();
    fn rec(rows: &[Row], start: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<CurveInvariant>) {
        if !cur.is_empty() {
            out.push(CurveInvariant {
                rows: cur.iter().map(|&i| rows[i]).collect(),
            });
        }
        if left == 0 {
            return;
        }
        for i in start..rows.len() {
            cur.push(i);
            rec(rows, i, left - 1, cur, out);
            cur.pop();
        }
    }
    rec(&rows, 0, max_lines, &mut stack, &mut out);
    debug_assert!(out.iter().all(|a| CurveInvariant::new(a.rows.clone()).is_ok()));
    out
}

impl CurveInvariant {
    /// Parse `[[r_minus, r_zero, r_plus], ...]`.
    pub fn from_json(text: &str) -> Result<Self> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Doc {
            Bare(Vec<[u32; 3]>),
            Wrapped { rows: Vec<[u32; 3]> },
        }
        let rows = match serde_json::from_str::<Doc>(text)? {
            Doc::Bare(r) | Doc::Wrapped { rows: r } => r,
        };
        Self::new(rows.into_iter().map(|[m, z, p]| Row::new(m, z, p)).collect())
    }
}
