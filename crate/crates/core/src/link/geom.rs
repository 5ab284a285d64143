//! Exact predicates on rays through the origin.
//!
//! A point of the sphere is stored as its primitive integer direction, so
//! equality of points is equality of vectors and every predicate below is
//! the sign of an integer polynomial in the coordinates.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::arith::Q;

pub type Ray = [BigInt; 3];

pub fn cross(a: &Ray, b: &Ray) -> Ray {
    [
        &a[1] * &b[2] - &a[2] * &b[1],
        &a[2] * &b[0] - &a[0] * &b[2],
        &a[0] * &b[1] - &a[1] * &b[0],
    ]
}

pub fn dot(a: &Ray, b: &Ray) -> BigInt {
    &a[0] * &b[0] + &a[1] * &b[1] + &a[2] * &b[2]
}

pub fn neg(a: &Ray) -> Ray {
    [-&a[0], -&a[1], -&a[2]]
}

pub fn add(a: &Ray, b: &Ray) -> Ray {
    [&a[0] + &b[0], &a[1] + &b[1], &a[2] + &b[2]]
}

pub fn scale(a: &Ray, k: &BigInt) -> Ray {
    [&a[0] * k, &a[1] * k, &a[2] * k]
}

pub fn is_null(a: &Ray) -> bool {
    a.iter().all(Zero::is_zero)
}

fn sign(x: &BigInt) -> i32 {
    if x.is_positive() {
        1
    } else if x.is_negative() {
        -1
    } else {
        0
    }
}

/// Sign of the triple product `det(a, b, c)`.
pub fn orient(a: &Ray, b: &Ray, c: &Ray) -> i32 {
    sign(&dot(&cross(a, b), c))
}

/// Divide out the content; the zero vector is returned unchanged.
pub fn primitive(a: Ray) -> Ray {
    let g = a.iter().fold(BigInt::zero(), |g, c| g.gcd(c));
    if g.is_zero() {
        return a;
    }
    [&a[0] / &g, &a[1] / &g, &a[2] / &g]
}

/// Ray of a rational vector.
pub fn ray_of(v: &[Q; 3]) -> Ray {
    let den = v.iter().fold(BigInt::from(1), |acc, c| acc.lcm(c.denom()));
    primitive([
        v[0].numer() * (&den / v[0].denom()),
        v[1].numer() * (&den / v[1].denom()),
        v[2].numer() * (&den / v[2].denom()),
    ])
}

pub fn parallel(a: &Ray, b: &Ray) -> bool {
    is_null(&cross(a, b))
}

/// `p` lies on the closed minor arc from `a` to `b` (`a != +-b`).
pub fn on_arc(p: &Ray, a: &Ray, b: &Ray) -> bool {
    let n = cross(a, b);
    dot(&n, p).is_zero() && orient(a, p, &n) >= 0 && orient(p, b, &n) >= 0 && !is_null(p)
}

/// How two closed minor arcs meet.
#[derive(Debug, PartialEq, Eq)]
pub enum Meet {
    Disjoint,
    Point(Ray),
    /// Same great circle, sharing a segment.
    Overlap,
}

pub fn meet(a: &Ray, b: &Ray, c: &Ray, d: &Ray) -> Meet {
    let n1 = cross(a, b);
    let n2 = cross(c, d);
    let l = cross(&n1, &n2);
    if is_null(&l) {
        let mut common: Vec<Ray> = Vec::new();
        for (p, (x, y)) in [(a, (c, d)), (b, (c, d)), (c, (a, b)), (d, (a, b))] {
            if on_arc(p, x, y) && !common.contains(p) {
                common.push(p.clone());
            }
        }
        return match common.len() {
            0 => Meet::Disjoint,
            1 => Meet::Point(common.pop().unwrap()),
            _ => Meet::Overlap,
        };
    }
    let l = primitive(l);
    for p in [l.clone(), neg(&l)] {
        if on_arc(&p, a, b) && on_arc(&p, c, d) {
            return Meet::Point(p);
        }
    }
    Meet::Disjoint
}

/// Order of two points on the arc with normal `n`.
pub fn along(n: &Ray, p: &Ray, q: &Ray) -> Ordering {
    match orient(p, q, n) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    }
}

/// Tangent at `v` of the great arc towards `w`.
pub fn tangent(v: &Ray, w: &Ray) -> Ray {
    let a = scale(w, &dot(v, v));
    let b = scale(v, &dot(v, w));
    [&a[0] - &b[0], &a[1] - &b[1], &a[2] - &b[2]]
}

/// Counter-clockwise angular order of tangents at `v`, seen from outside,
/// starting at `r`.
pub fn angular(v: &Ray, r: &Ray, s: &Ray, t: &Ray) -> Ordering {
    let half = |x: &Ray| {
        let o = orient(r, x, v);
        if o > 0 || (o == 0 && dot(r, x).is_positive()) {
            0
        } else {
            1
        }
    };
    half(s).cmp(&half(t)).then_with(|| match orient(s, t, v) {
        1 => Ordering::Less,
        -1 => Ordering::Greater,
        _ => Ordering::Equal,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64, c: i64) -> Ray {
        [a.into(), b.into(), c.into()]
    }

    #[test]
    fn arcs() {
        let (x, y, z) = (r(1, 0, 0), r(0, 1, 0), r(0, 0, 1));
        assert!(on_arc(&r(1, 1, 0), &x, &y));
        assert!(!on_arc(&r(-1, 1, 0), &x, &y));
        assert!(!on_arc(&neg(&x), &x, &y));
        assert_eq!(meet(&x, &y, &r(1, 1, 1), &r(1, 1, -1)), Meet::Point(r(1, 1, 0)));
        assert_eq!(meet(&x, &y, &z, &r(-1, 0, 1)), Meet::Disjoint);
        assert_eq!(meet(&x, &y, &r(2, 1, 0), &r(-1, 1, 0)), Meet::Overlap);
        assert_eq!(meet(&x, &y, &y, &r(-1, 1, 0)), Meet::Point(y.clone()));
        assert_eq!(along(&cross(&x, &y), &r(2, 1, 0), &r(1, 2, 0)), Ordering::Less);
    }

    #[test]
    fn angular_order() {
        let v = r(0, 0, 1);
        let e = [r(1, 0, 0), r(0, 1, 0), r(-1, 0, 0), r(0, -1, 0)];
        let mut ts = vec![e[3].clone(), e[1].clone(), e[2].clone(), e[0].clone()];
        ts.sort_by(|s, t| angular(&v, &e[0], s, t));
        assert_eq!(ts, e.to_vec());
        assert_eq!(tangent(&v, &r(1, 0, 1)), r(1, 0, 0));
    }

    #[test]
    fn rays() {
        let h = Q::new(1.into(), 2.into());
        assert_eq!(ray_of(&[h.clone(), -h, Q::zero()]), r(1, -1, 0));
        assert_eq!(primitive(r(4, -6, 8)), r(2, -3, 4));
    }
}
