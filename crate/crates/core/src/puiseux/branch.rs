use std::cmp::Ordering;
use std::fmt::Write as _;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::direction::Direction;
use super::expand::{half_branches, FirstSlope, HalfBranch};
use crate::arith::bifactor::{self, factor, squarefree_part};
use crate::arith::field::{Elem, KPoly, Tower};
use crate::arith::{BiPoly, RealAlgebraic, UniPoly, Q};
use crate::input::ParamBranchInput;
use crate::par::{self, Execution};
use crate::{GermError, Result};

/// How a branch is parametrized.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Chart {
    /// `x = side * t^e`, `y = sum a_i t^(E_i)`.
    XParam,
    /// `y = side * t^e`, `x = sum a_i t^(E_i)`; tangent to the `y` axis.
    YParam,
    /// Polynomial components given directly, in any dimension.
    Explicit,
}

/// One real analytic branch through the origin.
#[derive(Clone, Debug)]
pub struct RealBranch {
    pub chart: Chart,
    /// Sign of the chart coordinate; always `+1` for odd `e` and explicit
    /// branches.
    pub side: i8,
    /// Ramification: the chart coordinate is `side * t^e`.
    pub e: u64,
    /// Truncated series of the other coordinate.
    pub terms: Vec<(u64, RealAlgebraic)>,
    /// Components of an explicit branch.
    pub components: Vec<UniPoly>,
    pub k: u64,
    /// Limit direction as `t -> 0+`.
    pub u: Direction,
    /// Limit direction as `t -> 0-`.
    pub v: Direction,
    /// Index into the factor list of [`BranchAnalysis`], when known.
    pub source_factor: Option<usize>,
    /// `t`-order of `f` along the truncated series; `None` when the series is
    /// an exact solution or the branch is explicit.
    pub certified_degree: Option<u64>,
}

impl RealBranch {
    pub fn dim(&self) -> usize {
        match self.chart {
            Chart::Explicit => self.components.len(),
            _ => 2,
        }
    }

    /// Each coordinate as a list of `(exponent, coefficient)` pairs.
    pub fn series(&self) -> Vec<Vec<(u64, RealAlgebraic)>> {
        let lead = vec![(self.e, RealAlgebraic::from_int(self.side as i64))];
        match self.chart {
            Chart::XParam => vec![lead, self.terms.clone()],
            Chart::YParam => vec![self.terms.clone(), lead],
            Chart::Explicit => self
                .components
                .iter()
                .map(|p| {
                    p.coeffs()
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| (i as u64, RealAlgebraic::from_rational(c.clone())))
                        .collect()
                })
                .collect(),
        }
    }

    /// Human-readable parametrization, e.g. `(t^2, t^3)`.
    pub fn param_string(&self) -> String {
        let parts: Vec<String> = self.series().iter().map(|s| series_string(s)).collect();
        let mut out = format!("({})", parts.join(", "));
        if self.certified_degree.is_some() {
            out.push_str(" + ...");
        }
        out
    }

    fn sort_key(&self, other: &Self) -> Ordering {
        (self.k, self.chart, self.side)
            .cmp(&(other.k, other.chart, other.side))
            .then_with(|| self.terms.cmp(&other.terms))
            .then_with(|| self.components.iter().map(|p| p.to_string()).cmp(other.components.iter().map(|p| p.to_string())))
            .then_with(|| self.source_factor.cmp(&other.source_factor))
    }
}

fn series_string(s: &[(u64, RealAlgebraic)]) -> String {
    if s.is_empty() {
        return "0".into();
    }
    let mut out = String::new();
    for (n, (e, c)) in s.iter().enumerate() {
        let mono = match e {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{e}"),
        };
        let (neg, mag) = match c.as_rational() {
            Some(q) => (q.is_negative(), {
                let a = q.abs();
                if a.is_one() && !mono.is_empty() {
                    String::new()
                } else {
                    a.to_string()
                }
            }),
            None => (c.signum() < 0, format!("{:.6}", c.approx().abs())),
        };
        if n == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&mag);
        if !mag.is_empty() && !mono.is_empty() {
            out.push('*');
        }
        out.push_str(&mono);
    }
    out
}

/// `k = ord_0 gamma`.
pub fn branch_order(b: &RealBranch) -> u64 {
    b.k
}

/// Limit directions `(u, v)` of the two half-branches.
pub fn tangent_halflines(b: &RealBranch) -> (Direction, Direction) {
    (b.u.clone(), b.v.clone())
}

/// A branch is C^1 regular iff its order is odd.
pub fn is_c1_regular(b: &RealBranch) -> bool {
    b.k % 2 == 1
}

/// A factor of the input polynomial and whether it carries real branches.
#[derive(Clone, Debug)]
pub struct FactorInfo {
    pub poly: BiPoly,
    pub multiplicity: u32,
    pub through_origin: bool,
    pub real_relevant: bool,
}

/// Branches of `V(f)` tagged by the rational factor they come from.
#[derive(Clone, Debug)]
pub struct BranchAnalysis {
    pub factors: Vec<FactorInfo>,
    pub branches: Vec<RealBranch>,
}

impl BranchAnalysis {
    /// The origin is an isolated point of the real zero set.
    pub fn is_isolated(&self) -> bool {
        self.branches.is_empty()
    }

    /// Order of the product of real-relevant factors, each taken once.
    pub fn relevant_order(&self) -> usize {
        self.factors
            .iter()
            .filter(|f| f.real_relevant)
            .map(|f| f.poly.ord().unwrap_or(0))
            .sum()
    }
}

fn check_germ(f: &BiPoly) -> Result<()> {
    if f.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(GermError::OriginNotOnCurve);
    }
    Ok(())
}

fn is_squarefree_uni(p: &UniPoly) -> bool {
    p.is_zero() || crate::arith::factor::squarefree_mod_prime(p) || p.gcd(&p.derivative()).deg() == 0
}

/// Cheap sufficient test: the `x`-content is square-free and some
/// specialization `f(a, y)` of full degree is square-free.
fn looks_squarefree(f: &BiPoly) -> bool {
    is_squarefree_uni(&f.content_x()) && crate::arith::bifactor::squarefree_in_y(f)
}

/// All real branches of `V(f)` at the origin, without factoring `f`.
/// An empty list means the origin is isolated.
pub fn real_branches(f: &BiPoly) -> Result<Vec<RealBranch>> {
    real_branches_with(f, Execution::default())
}

pub fn real_branches_with(f: &BiPoly, exec: Execution) -> Result<Vec<RealBranch>> {
    check_germ(f)?;
    let g = if looks_squarefree(f) { f.clone() } else { squarefree_part(f) };
    let mut out = expand_many(&[g], exec)?.pop().unwrap_or_default();
    out.sort_by(|a, b| a.sort_key(b));
    Ok(out)
}

/// Factor `f` over `Q` and expand every factor through the origin.
pub fn analyze_branches(f: &BiPoly, exec: Execution) -> Result<BranchAnalysis> {
    check_germ(f)?;
    let facs = factor(f);
    let through: Vec<usize> = (0..facs.len())
        .filter(|&i| facs[i].0.constant_term().is_zero())
        .collect();
    let polys: Vec<BiPoly> = through.iter().map(|&i| facs[i].0.clone()).collect();
    let per = expand_many(&polys, exec)?;
    let mut factors: Vec<FactorInfo> = facs
        .iter()
        .map(|(p, m)| FactorInfo {
            poly: p.clone(),
            multiplicity: *m,
            through_origin: p.constant_term().is_zero(),
            real_relevant: false,
        })
        .collect();
    let mut branches = Vec::new();
    for (&i, bs) in through.iter().zip(per) {
        factors[i].real_relevant = !bs.is_empty();
        branches.extend(bs.into_iter().map(|mut b| {
            b.source_factor = Some(i);
            b
        }));
    }
    branches.sort_by(|a, b| a.sort_key(b));
    Ok(BranchAnalysis { factors, branches })
}

/// A half-branch with exact coefficients detached from its tower.
struct RealHalf {
    e: u64,
    terms: Vec<(u64, RealAlgebraic)>,
    certified: Option<u64>,
}

impl RealHalf {
    fn from_half(h: HalfBranch) -> Self {
        let terms = h
            .terms
            .iter()
            .map(|(beta, c)| {
                let e = beta * Q::from_integer(h.ram.into());
                debug_assert!(e.is_integer());
                let e = e.to_integer().to_u64().expect("small exponent");
                let c = match c.as_rational() {
                    Some(q) => RealAlgebraic::from_rational(q.clone()),
                    None => h.tower.to_real_algebraic(c),
                };
                (e, c)
            })
            .collect();
        RealHalf {
            e: h.ram,
            terms,
            certified: h.certified,
        }
    }

    /// The half-branch traced by `-t` (for even `e`) or the opposite side
    /// (for odd `e`).
    fn mirror(&self) -> Vec<(u64, RealAlgebraic)> {
        self.terms
            .iter()
            .map(|(e, c)| (*e, if e % 2 == 1 { c.neg() } else { c.clone() }))
            .collect()
    }
}

const SIDES: [(Chart, i8); 4] = [
    (Chart::XParam, 1),
    (Chart::XParam, -1),
    (Chart::YParam, 1),
    (Chart::YParam, -1),
];

fn expand_many(polys: &[BiPoly], exec: Execution) -> Result<Vec<Vec<RealBranch>>> {
    let tasks: Vec<(usize, Chart, i8)> = (0..polys.len())
        .flat_map(|i| SIDES.iter().map(move |&(c, s)| (i, c, s)))
        .collect();
    let halves = par::map(exec, &tasks, |&(i, chart, side)| {
        let mut h = match chart {
            Chart::YParam => polys[i].swap_xy(),
            _ => polys[i].clone(),
        };
        if side < 0 {
            h = h.neg_x();
        }
        let rule = match chart {
            Chart::YParam => FirstSlope::GreaterThanOne,
            _ => FirstSlope::AtLeastOne,
        };
        half_branches(&h, rule)
            .into_iter()
            .map(RealHalf::from_half)
            .collect::<Vec<_>>()
    });
    let mut out = Vec::with_capacity(polys.len());
    let mut it = halves.into_iter();
    for _ in polys {
        let mut bs = Vec::new();
        for chart in [Chart::XParam, Chart::YParam] {
            let pos = it.next().unwrap();
            let neg = it.next().unwrap();
            bs.extend(pair(chart, pos, neg)?);
        }
        out.push(bs);
    }
    Ok(out)
}

fn pair(chart: Chart, pos: Vec<RealHalf>, neg: Vec<RealHalf>) -> Result<Vec<RealBranch>> {
    let odd_pos = pos.iter().filter(|h| h.e % 2 == 1).count();
    let odd_neg = neg.iter().filter(|h| h.e % 2 == 1).count();
    if odd_pos != odd_neg {
        return Err(GermError::Internal(format!(
            "{odd_pos} odd half-branches on one side, {odd_neg} on the other"
        )));
    }
    let mut out = Vec::new();
    for h in pos.iter().filter(|h| h.e % 2 == 1) {
        out.push(make_branch(chart, 1, h));
    }
    for (side, halves) in [(1i8, &pos), (-1, &neg)] {
        let even: Vec<&RealHalf> = halves.iter().filter(|h| h.e % 2 == 0).collect();
        let mut used = vec![false; even.len()];
        for i in 0..even.len() {
            if used[i] {
                continue;
            }
            used[i] = true;
            let m = even[i].mirror();
            let j = (0..even.len())
                .find(|&j| !used[j] && even[j].e == even[i].e && even[j].terms == m)
                .ok_or_else(|| GermError::Internal("unpaired half-branch".into()))?;
            used[j] = true;
            let rep = if even[i].terms >= even[j].terms { even[i] } else { even[j] };
            out.push(make_branch(chart, side, rep));
        }
    }
    Ok(out)
}

fn make_branch(chart: Chart, side: i8, h: &RealHalf) -> RealBranch {
    let s = RealAlgebraic::from_int(side as i64);
    let lead = match h.terms.first() {
        Some((e, c)) if *e == h.e => c.clone(),
        _ => RealAlgebraic::from_int(0),
    };
    let coords = match chart {
        Chart::YParam => vec![lead, s],
        _ => vec![s, lead],
    };
    let u = Direction::new(coords).expect("chart coordinate is nonzero");
    let k = h.e;
    let v = if k % 2 == 0 { u.clone() } else { u.neg() };
    RealBranch {
        chart,
        side,
        e: h.e,
        terms: h.terms.clone(),
        components: Vec::new(),
        k,
        u,
        v,
        source_factor: None,
        certified_degree: h.certified,
    }
}

/// `(p(x) - p(y)) / (x - y)`.
fn divided_difference(p: &UniPoly) -> BiPoly {
    let mut terms = Vec::new();
    for (n, c) in p.coeffs().iter().enumerate().skip(1) {
        if c.is_zero() {
            continue;
        }
        for a in 0..n {
            terms.push((a, n - 1 - a, c.clone()));
        }
    }
    BiPoly::from_terms(&terms)
}

/// Reduce a polynomial parametrization to an injective one and compute its
/// order and tangent half-lines.
pub fn normalize_param(p: &ParamBranchInput) -> Result<RealBranch> {
    let comps = &p.components;
    let g = comps
        .iter()
        .flat_map(|c| {
            c.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, q)| !q.is_zero())
                .map(|(i, _)| i as u64)
        })
        .fold(0u64, num_integer::gcd);
    if g % 2 == 0 {
        return Err(GermError::NotInjective(
            "parametrization is 2-to-1; supply the reduced form".into(),
        ));
    }
    let comps: Vec<UniPoly> = comps
        .iter()
        .map(|c| {
            let g = g as usize;
            UniPoly::new((0..=c.deg() / g).map(|i| c.coeff(i * g)).collect())
        })
        .collect();
    let diffs: Vec<BiPoly> = comps
        .iter()
        .filter(|c| !c.is_zero())
        .map(divided_difference)
        .collect();
    let common = diffs[1..]
        .iter()
        .fold(diffs[0].clone(), |acc, d| bifactor::gcd(&acc, d));
    if !common.is_constant() && common.constant_term().is_zero() && !real_branches(&common)?.is_empty() {
        return Err(GermError::NotInjective(
            "parametrization is 2-to-1; supply the reduced form".into(),
        ));
    }
    let k = comps.iter().filter_map(|c| c.order()).min().expect("nonzero component");
    let lead: Vec<Q> = comps.iter().map(|c| c.coeff(k)).collect();
    let u = Direction::from_rationals(&lead)?;
    let v = if k % 2 == 0 { u.clone() } else { u.neg() };
    Ok(RealBranch {
        chart: Chart::Explicit,
        side: 1,
        e: 1,
        terms: Vec::new(),
        components: comps,
        k: k as u64,
        u,
        v,
        source_factor: None,
        certified_degree: None,
    })
}

/// `t`-order of `f(gamma(t))` for a planar branch, computed exactly;
/// `None` when `f` vanishes identically along the truncated series.
pub fn substitution_order(f: &BiPoly, b: &RealBranch) -> Option<u64> {
    let series = b.series();
    assert_eq!(series.len(), 2, "planar branch");
    let mut tower = Tower::new();
    let mut polys: Vec<KPoly> = Vec::new();
    for s in &series {
        let deg = s.iter().map(|t| t.0 as usize).max().unwrap_or(0);
        let mut p = vec![Elem::zero(); deg + 1];
        for (e, c) in s {
            p[*e as usize] = match c.as_rational() {
                Some(q) => Elem::Q(q),
                None => {
                    let (lo, hi) = c.interval();
                    let (t2, a) = tower.adjoin(&Tower::kp_from_q(c.minpoly()), lo, hi);
                    tower = t2;
                    a
                }
            };
        }
        polys.push(p);
    }
    let t = &tower;
    let pows = |p: &KPoly, n: usize| {
        let mut v = vec![vec![Elem::one()]];
        for _ in 0..n {
            let last = v.last().unwrap();
            v.push(t.kp_mul(last, p));
        }
        v
    };
    let xp = pows(&polys[0], f.deg_x());
    let yp = pows(&polys[1], f.deg_y());
    let mut acc: KPoly = Vec::new();
    for (i, j, c) in f.terms() {
        let m = t.kp_mul(&xp[i], &yp[j]);
        let m: KPoly = m.iter().map(|a| t.scale(a, &c)).collect();
        acc = t.kp_add(&acc, &m);
    }
    acc.iter().position(|a| !t.is_zero(a)).map(|n| n as u64)
}

/// Short summary of a branch for logs and reports.
pub fn describe(b: &RealBranch) -> String {
    let mut s = String::new();
    let _ = write!(s, "k={} u={} v={} gamma={}", b.k, b.u, b.v, b.param_string());
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{parse_poly, parse_univariate};

    fn branches(s: &str) -> Vec<RealBranch> {
        real_branches(&parse_poly(s).unwrap()).unwrap()
    }

    fn param(cs: &[&str]) -> Result<RealBranch> {
        let comps = cs.iter().map(|c| parse_univariate(c).unwrap()).collect();
        normalize_param(&ParamBranchInput::new(comps).unwrap())
    }

    #[test]
    fn cusp() {
        let b = branches("y^2 - x^3");
        assert_eq!(b.len(), 1);
        assert_eq!((b[0].e, b[0].k), (2, 2));
        assert_eq!(b[0].u, Direction::from_ints(&[1, 0]));
        assert_eq!(b[0].v, b[0].u);
        assert_eq!(b[0].terms.len(), 1);
        assert_eq!(b[0].terms[0].0, 3);
        assert!(!is_c1_regular(&b[0]));
        assert_eq!(b[0].param_string(), "(t^2, t^3)");
    }

    #[test]
    fn line_and_cusp() {
        let b = branches("y*(y^2 - x^3)");
        assert_eq!(b.len(), 2);
        assert_eq!(b.iter().map(|b| b.k).collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(b[0].v, Direction::from_ints(&[-1, 0]));
    }

    #[test]
    fn circle_factor_dropped() {
        assert_eq!(branches("y*(x^2 + y^2)").len(), 1);
        assert!(branches("x^2 + y^2").is_empty());
        let a = analyze_branches(&parse_poly("y*(x^2 + y^2)").unwrap(), Execution::Sequential).unwrap();
        assert_eq!(a.branches.len(), 1);
        assert_eq!(a.relevant_order(), 1);
        assert_eq!(a.factors.iter().filter(|f| f.real_relevant).count(), 1);
    }

    #[test]
    fn vertical_branches_use_y_chart() {
        let b = branches("x*(x^2 - y^3)");
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|b| b.chart == Chart::YParam));
        assert_eq!(b[1].u, Direction::from_ints(&[0, 1]));
        let swapped = branches("y*(y^2 - x^3)");
        assert_eq!(
            b.iter().map(|b| b.k).collect::<Vec<_>>(),
            swapped.iter().map(|b| b.k).collect::<Vec<_>>()
        );
    }

    #[test]
    fn even_branch_on_negative_side() {
        let b = branches("y^2 + x^3");
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].side, -1);
        assert_eq!(b[0].u, Direction::from_ints(&[-1, 0]));
    }

    #[test]
    fn diagonal_and_irrational_tangents() {
        let b = branches("y^2 - x^2");
        assert_eq!(b.len(), 2);
        let b = branches("y^2 - 2*x^2");
        assert_eq!(b.len(), 2);
        assert!(b.iter().all(|b| b.k == 1));
        let b = branches("y^3 - 2*x^3");
        assert_eq!(b.len(), 1);
        assert_eq!(b[0].u.coords()[1], RealAlgebraic::from_int(1));
        assert!((b[0].u.coords()[0].approx() - 1.0 / 2f64.cbrt()).abs() < 1e-9);
    }

    #[test]
    fn non_squarefree_input_is_reduced() {
        let b = branches("(y^2 - x^3)^2*y");
        assert_eq!(b.len(), 2);
    }

    #[test]
    fn errors() {
        assert!(matches!(real_branches(&BiPoly::zero()), Err(GermError::ZeroPolynomial)));
        assert!(matches!(
            real_branches(&parse_poly("x^2 + y^2 - 1").unwrap()),
            Err(GermError::OriginNotOnCurve)
        ));
    }

    #[test]
    fn substitution_certificate() {
        for s in ["y^2 - x^3 + x^5*y", "(y - x^2)^2 - x^5", "y^3 - 2*x^3 + x^4", "y^2 - x^2 - x^3"] {
            let f = parse_poly(s).unwrap();
            for b in real_branches(&f).unwrap() {
                assert_eq!(substitution_order(&f, &b), b.certified_degree, "{s}: {}", describe(&b));
            }
        }
    }

    #[test]
    fn parametric_examples() {
        let b = param(&["t^3", "t^4"]).unwrap();
        assert_eq!(b.k, 3);
        assert!(is_c1_regular(&b));
        assert_eq!(b.v, b.u.neg());
        let b = param(&["t", "t^3", "t^5"]).unwrap();
        assert_eq!(b.u, Direction::from_ints(&[1, 0, 0]));
        let b = param(&["t^2", "t^3"]).unwrap();
        assert_eq!((b.k, b.u.clone()), (2, Direction::from_ints(&[1, 0])));
        assert_eq!(b.u, b.v);
        assert!(matches!(param(&["t^2", "t^4"]), Err(GermError::NotInjective(_))));
        // reducible odd power: (t^3, t^6) is (s, s^2)
        assert_eq!(param(&["t^3", "t^6"]).unwrap().k, 1);
        // hidden 2-to-1: gamma(t) = phi(t + t^2) with phi(s) = (s^2, s^4)
        assert!(matches!(
            param(&["(t + t^2)^2", "(t + t^2)^4"]),
            Err(GermError::NotInjective(_))
        ));
    }
}
