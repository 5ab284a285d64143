//! Newton–Puiseux expansion of the real roots `y(s)` of `h(s, y) = 0` for
//! small positive `s`.
//!
//! Every step substitutes `s = sigma^q`, `y = sigma^p (c + y')` for an edge
//! of slope `p/q` and a nonzero real root `c` of its face polynomial, so the
//! parameter `sigma` stays positive and real. Coefficients live in a tower
//! of real algebraic extensions of `Q`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::newton::lower_hull;
use crate::arith::field::{Elem, KPoly, Tower};
use crate::arith::{BiPoly, Q};

type KBi = BTreeMap<(usize, usize), Elem>;

/// Which first-step slopes a chart accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum FirstSlope {
    AtLeastOne,
    GreaterThanOne,
}

/// A real half-branch `y = sum c_n s^(beta_n)` for `s > 0`.
#[derive(Clone, Debug)]
pub(crate) struct HalfBranch {
    pub tower: Tower,
    /// `s = t^ram` makes every exponent an integer.
    pub ram: u64,
    pub terms: Vec<(Q, Elem)>,
    /// `t`-order of `h` along the truncated series; `None` when exact.
    pub certified: Option<u64>,
}

#[derive(Clone)]
struct Node {
    tower: Tower,
    h: KBi,
    ram: u64,
    terms: Vec<(Q, Elem)>,
    beta: Q,
    weight: u64,
}

/// All real half-branches of `h(s, y) = 0` over `s > 0` whose first slope
/// passes `rule`, including the exact solution `y = 0` when `y | h`.
pub(crate) fn half_branches(h: &BiPoly, rule: FirstSlope) -> Vec<HalfBranch> {
    let map: KBi = h
        .terms()
        .into_iter()
        .map(|(i, j, c)| ((i, j), Elem::Q(c)))
        .collect();
    let root = Node {
        tower: Tower::new(),
        h: map,
        ram: 1,
        terms: Vec::new(),
        beta: Q::zero(),
        weight: 0,
    };
    let mut out = Vec::new();
    descend(root, Some(rule), &mut out);
    out
}

fn exact(node: &Node) -> HalfBranch {
    HalfBranch {
        tower: node.tower.clone(),
        ram: node.ram,
        terms: node.terms.clone(),
        certified: None,
    }
}

fn descend(node: Node, rule: Option<FirstSlope>, out: &mut Vec<HalfBranch>) {
    let pts: Vec<(usize, usize)> = node.h.keys().copied().collect();
    if pts.is_empty() {
        return;
    }
    if pts.iter().all(|p| p.1 > 0) {
        out.push(exact(&node));
    }
    for (a, b) in lower_hull(&pts) {
        let gamma = Q::new(BigInt::from(b.0 - a.0), BigInt::from(a.1 - b.1));
        match rule {
            Some(FirstSlope::AtLeastOne) if gamma < Q::one() => continue,
            Some(FirstSlope::GreaterThanOne) if gamma <= Q::one() => continue,
            _ => {}
        }
        let p = gamma.numer().try_into().expect("small exponent");
        let q: usize = gamma.denom().try_into().expect("small exponent");
        let mut face: KPoly = vec![Elem::zero(); a.1 - b.1 + 1];
        for (&(i, j), c) in &node.h {
            if q * i + p * j == q * a.0 + p * a.1 {
                face[j - b.1] = c.clone();
            }
        }
        let w = q * a.0 + p * a.1;
        for (tower, c) in node.tower.real_roots(&face) {
            let mu = multiplicity(&tower, &face, &c);
            let beta = &node.beta + &gamma / Q::from_integer(node.ram.into());
            let mut terms = node.terms.clone();
            terms.push((beta.clone(), c.clone()));
            let ram = node.ram * q as u64;
            if mu == 1 {
                let step = Step { q, p, w, ram, weight: node.weight };
                out.push(simple_root(&tower, &node.h, &step, &c, terms, beta));
                continue;
            }
            let h = substitute(&tower, &node.h, q, p, &c, w);
            let child = Node {
                tower,
                h,
                ram,
                terms,
                beta,
                weight: node.weight * q as u64 + w as u64,
            };
            descend(child, None, out);
        }
    }
}

struct Step {
    q: usize,
    p: usize,
    w: usize,
    ram: u64,
    weight: u64,
}

/// `c` is a simple root of the face, so one more term pins the branch
/// down. Works on the parent polynomial: with `y = sigma^p (c + c' sigma^i0)`
/// the certified order is the `sigma`-order of `h(sigma^q, y)` plus `q`
/// times the inherited weight.
fn simple_root(t: &Tower, h: &KBi, st: &Step, c: &Elem, mut terms: Vec<(Q, Elem)>, beta: Q) -> HalfBranch {
    let (q, p, w) = (st.q, st.p, st.w);
    let jmax = h.keys().map(|k| k.1).max().unwrap_or(0);
    let cp = powers(t, c, jmax);
    let mut groups: BTreeMap<usize, Vec<(usize, &Elem)>> = BTreeMap::new();
    for (&(i, j), a) in h {
        groups.entry(q * i + p * j - w).or_default().push((j, a));
    }
    let mut b01 = Elem::zero();
    for &(j, a) in groups.get(&0).into_iter().flatten() {
        if j > 0 {
            b01 = t.add(&b01, &t.scale(&t.mul(a, &cp[j - 1]), &Q::from_integer(j.into())));
        }
    }
    let done = |terms, certified| HalfBranch {
        tower: t.clone(),
        ram: st.ram,
        terms,
        certified,
    };
    let lead = groups.iter().filter(|(e, _)| **e > 0).find_map(|(&e, g)| {
        let v = g
            .iter()
            .fold(Elem::zero(), |acc, &(j, a)| t.add(&acc, &t.mul(a, &cp[j])));
        (!t.is_zero(&v)).then_some((e, v))
    });
    let Some((i0, lead)) = lead else {
        return done(terms, None);
    };
    let c1 = t.neg(&t.div(&lead, &b01));
    let c1p = powers(t, &c1, jmax);
    terms.push((beta + Q::new(i0.into(), st.ram.into()), c1));
    let max_n = h.keys().map(|&(i, j)| q * i + p * j + i0 * j).max().unwrap_or(0);
    for n in w + i0 + 1..=max_n {
        let mut acc = Elem::zero();
        for (&(i, j), a) in h {
            let base = q * i + p * j;
            if base > n || (n - base) % i0 != 0 || (n - base) / i0 > j {
                continue;
            }
            let l = (n - base) / i0;
            let m = t.mul(&t.mul(a, &cp[j - l]), &c1p[l]);
            acc = t.add(&acc, &t.scale(&m, &binomial(j, l)));
        }
        if !t.is_zero(&acc) {
            return done(terms, Some(st.weight * q as u64 + n as u64));
        }
    }
    done(terms, None)
}

fn powers(t: &Tower, c: &Elem, n: usize) -> Vec<Elem> {
    let mut v = vec![Elem::one()];
    for _ in 0..n {
        let last = v.last().unwrap().clone();
        v.push(t.mul(&last, c));
    }
    v
}

fn multiplicity(t: &Tower, face: &KPoly, c: &Elem) -> usize {
    let mut d = face.clone();
    let mut m = 0;
    while t.is_zero(&t.kp_eval(&d, c)) {
        d = t.kp_derivative(&d);
        m += 1;
    }
    m
}

fn binomial(n: usize, k: usize) -> Q {
    let mut r = BigInt::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    Q::from_integer(r)
}

/// `h(sigma^q, sigma^p (c + y')) / sigma^w` with vanishing coefficients
/// removed.
fn substitute(t: &Tower, h: &KBi, q: usize, p: usize, c: &Elem, w: usize) -> KBi {
    if let Some(c) = c.as_rational() {
        if h.values().all(|a| a.as_rational().is_some()) {
            return substitute_rational(h, q, p, c, w);
        }
    }
    // group by the new x-exponent, then Taylor-shift each group by c
    let mut groups: BTreeMap<usize, Vec<Elem>> = BTreeMap::new();
    for (&(i, j), a) in h {
        let g = groups.entry(q * i + p * j - w).or_default();
        if g.len() <= j {
            g.resize(j + 1, Elem::zero());
        }
        g[j] = a.clone();
    }
    let mut out: KBi = BTreeMap::new();
    for (e, mut g) in groups {
        let n = g.len();
        for k in 0..n {
            for l in (k..n - 1).rev() {
                if !t.is_zero(&g[l + 1]) {
                    let s = t.mul(&g[l + 1], c);
                    g[l] = t.add(&g[l], &s);
                }
            }
        }
        for (l, v) in g.into_iter().enumerate() {
            if !t.is_zero(&v) {
                out.insert((e, l), v);
            }
        }
    }
    out
}

/// Integer Taylor shift: with `c = n/d` and `A` cleared of denominators,
/// `A(c + y) = A~(n + d y) / d^m` where `A~(z) = d^m A(z/d)`.
fn substitute_rational(h: &KBi, q: usize, p: usize, c: &Q, w: usize) -> KBi {
    let mut groups: BTreeMap<usize, Vec<Q>> = BTreeMap::new();
    for (&(i, j), a) in h {
        let g = groups.entry(q * i + p * j - w).or_default();
        if g.len() <= j {
            g.resize(j + 1, Q::zero());
        }
        g[j] = a.as_rational().expect("rational coefficient").clone();
    }
    let (n, d) = (c.numer(), c.denom());
    let mut out: KBi = BTreeMap::new();
    for (e, g) in groups {
        let m = g.len() - 1;
        let den = g.iter().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
        let mut dp = vec![BigInt::one()];
        for _ in 0..m {
            let last = dp.last().unwrap() * d;
            dp.push(last);
        }
        let mut z: Vec<BigInt> = g
            .iter()
            .enumerate()
            .map(|(j, a)| a.numer() * (&den / a.denom()) * &dp[m - j])
            .collect();
        for k in 0..m {
            for l in (k..m).rev() {
                if !z[l + 1].is_zero() {
                    let s = &z[l + 1] * n;
                    z[l] += s;
                }
            }
        }
        let scale = &den * &dp[m];
        for (l, v) in z.into_iter().enumerate() {
            if !v.is_zero() {
                out.insert((e, l), Elem::Q(Q::new(v * &dp[l], scale.clone())));
            }
        }
    }
    out
}
