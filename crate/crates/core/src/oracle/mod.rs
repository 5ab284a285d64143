//! Brute-force checks by counting points of the curve.
//!
//! [`parity_by_projection`] counts real roots of `f` on short vertical
//! segments after a rational rotation and reads the multiplicity parity off
//! the count. [`sample_tangent_directions`] locates the curve on small
//! circles around the origin. Neither uses the Puiseux machinery.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::arith::sturm::{bisect_step, isolate_intervals, sturm_count};
use crate::arith::{BiPoly, UniPoly, Q};
use crate::par::{self, Execution};
use crate::{GermError, Result};

/// First and last scale exponent tried by a trial; only even exponents
/// are used so the window `2^(-j/2)` is rational.
pub const FIRST_SCALE: u32 = 16;
pub const LAST_SCALE: u32 = 60;
/// Consecutive scales that must agree.
pub const STABLE_RUN: usize = 3;

#[derive(Clone, Debug, Serialize)]
pub struct Trial {
    /// Rotation parameter `s`, with `cos = (1-s^2)/(1+s^2)`, `sin = 2s/(1+s^2)`.
    pub s: String,
    /// `(j, count)`: roots of `f_rot(2^-j, y)` with `|y| <= 2^(-j/2)`;
    /// `None` when a root sits on the window boundary.
    pub counts: Vec<(u32, Option<usize>)>,
    pub stable_count: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleReport {
    pub parity: u8,
    pub trials: Vec<Trial>,
    pub rule: String,
}

/// `s = 1/3, 1/5, 2/7, 2/9, 3/11, ...`
pub fn rotation_parameter(i: usize) -> (i64, i64) {
    let i = i as i64 + 1;
    ((i + 1) / 2, 2 * i + 1)
}

fn rotate(f: &BiPoly, s: &Q) -> BiPoly {
    let w = Q::one() + s * s;
    let c = (Q::one() - s * s) / &w;
    let sn = (s + s) / &w;
    f.linear_subst(&c, &(-&sn), &sn, &c)
}

fn pow2_inv(e: u32) -> Q {
    Q::new(BigInt::one(), BigInt::one() << e)
}

fn run_trial(f: &BiPoly, i: usize) -> Result<Trial> {
    let (p, q) = rotation_parameter(i);
    let s = Q::new(p.into(), q.into());
    let g = rotate(f, &s);
    let mut counts = Vec::new();
    let mut stable_count = None;
    for j in (FIRST_SCALE..=LAST_SCALE).step_by(2) {
        let x0 = pow2_inv(j);
        let eps = pow2_inv(j / 2);
        let h = g.eval_x(&x0);
        let count = if h.is_zero() || h.eval(&eps).is_zero() || h.eval(&-&eps).is_zero() {
            None
        } else {
            Some(sturm_count(&h, &-&eps, &eps)?)
        };
        counts.push((j, count));
        let n = counts.len();
        if n >= STABLE_RUN {
            let tail = &counts[n - STABLE_RUN..];
            if tail[0].1.is_some() && tail.iter().all(|c| c.1 == tail[0].1) {
                stable_count = tail[0].1;
                break;
            }
        }
    }
    Ok(Trial { s: format!("{p}/{q}"), counts, stable_count })
}

/// Multiplicity parity from point counts on `trials` rotated projections.
pub fn parity_by_projection(f: &BiPoly, trials: usize, exec: Execution) -> Result<OracleReport> {
    if f.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    if trials == 0 {
        return Err(GermError::OracleInconclusive("no trials requested".into()));
    }
    let idx: Vec<usize> = (0..trials).collect();
    let trials = par::map(exec, &idx, |&i| run_trial(f, i)).into_iter().collect::<Result<Vec<_>>>()?;
    let mut parities = Vec::new();
    for t in &trials {
        match t.stable_count {
            Some(c) => parities.push((c % 2) as u8),
            None => {
                return Err(GermError::OracleInconclusive(format!(
                    "rotation s={} did not stabilise by 2^-{LAST_SCALE}",
                    t.s
                )))
            }
        }
    }
    let ones = parities.iter().filter(|&&p| p == 1).count();
    let parity = u8::from(2 * ones > parities.len());
    if parities.iter().any(|&p| p != parity) {
        let detail: Vec<String> = trials
            .iter()
            .map(|t| format!("s={}: {}", t.s, t.stable_count.unwrap_or(0)))
            .collect();
        return Err(GermError::OracleDisagreement(detail.join(", ")));
    }
    Ok(OracleReport {
        parity,
        trials,
        rule: format!(
            "count of roots of f_rot(2^-j, y) on |y| <= 2^(-j/2), accepted when {STABLE_RUN} consecutive even j agree, j = {FIRST_SCALE}..{LAST_SCALE}"
        ),
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionSample {
    /// The circle has radius `2^-radius_log2`.
    pub radius_log2: u32,
    /// Angles in `(-pi, pi]` of the curve's points on the circle.
    pub angles: Vec<f64>,
}

/// `(1+t^2)^D f(r(1-t^2)/(1+t^2), 2rt/(1+t^2))`.
fn on_circle(f: &BiPoly, r: &Q) -> UniPoly {
    let d = f.total_degree();
    let x = UniPoly::new(vec![r.clone(), Q::zero(), -r.clone()]);
    let y = UniPoly::new(vec![Q::zero(), r + r]);
    let w = UniPoly::new(vec![Q::one(), Q::zero(), Q::one()]);
    let powers = |p: &UniPoly| {
        let mut v = vec![UniPoly::one()];
        for k in 0..d {
            let next = &v[k] * p;
            v.push(next);
        }
        v
    };
    let (xp, yp, wp) = (powers(&x), powers(&y), powers(&w));
    let mut acc = UniPoly::zero();
    for (i, j, c) in f.terms() {
        let term = &(&xp[i] * &yp[j]) * &wp[d - i - j];
        acc = &acc + &term.scale(&c);
    }
    acc
}

fn angle_of_t(t: f64) -> f64 {
    2.0 * t.atan()
}

/// Points of `V(f)` on circles of radius `2^-e`, as angles.
pub fn sample_tangent_directions(f: &BiPoly, radii_log2: &[u32]) -> Vec<DirectionSample> {
    let tol = pow2_inv(48);
    radii_log2
        .iter()
        .map(|&e| {
            let r = pow2_inv(e);
            let p = on_circle(f, &r);
            let mut angles = Vec::new();
            if !p.is_zero() {
                let sf = p.squarefree_part();
                for (mut lo, mut hi) in isolate_intervals(&p) {
                    while &hi - &lo > tol {
                        (lo, hi) = bisect_step(&sf, &lo, &hi);
                    }
                    let mid = (&lo + &hi) / Q::from_integer(2.into());
                    angles.push(angle_of_t(mid.to_f64().unwrap_or(f64::INFINITY)));
                }
                if f.eval(&-&r, &Q::zero()).is_zero() {
                    angles.push(std::f64::consts::PI);
                }
            }
            angles.sort_by(f64::total_cmp);
            DirectionSample { radius_log2: e, angles }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct DirectionCheck {
    pub ok: bool,
    /// Exact directions (as angles) with no sample nearby.
    pub missing: Vec<f64>,
    /// Samples far from every exact direction.
    pub spurious: Vec<f64>,
}

fn angular_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(std::f64::consts::TAU);
    d.min(std::f64::consts::TAU - d)
}

/// Compares samples with exact unit directions `(cos, sin)`.
pub fn check_directions(samples: &[f64], exact: &[(f64, f64)], tol: f64) -> DirectionCheck {
    let exact: Vec<f64> = exact.iter().map(|&(c, s)| s.atan2(c)).collect();
    let near = |a: f64, set: &[f64]| set.iter().any(|&b| angular_gap(a, b) <= tol);
    let missing: Vec<f64> = exact.iter().copied().filter(|&a| !near(a, samples)).collect();
    let spurious: Vec<f64> = samples.iter().copied().filter(|&a| !near(a, &exact)).collect();
    DirectionCheck { ok: missing.is_empty() && spurious.is_empty(), missing, spurious }
}
