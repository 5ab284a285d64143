use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use super::factor::factor_univariate;
use super::sturm::{bisect_step, sturm_count};
use super::uni::UniPoly;
use super::Q;

/// An exact real number: the unique root of a square-free primitive
/// integer polynomial inside the half-open interval `(lo, hi]`.
#[derive(Clone, Debug)]
pub struct RealAlgebraic {
    minpoly: UniPoly,
    lo: Q,
    hi: Q,
}

impl RealAlgebraic {
    pub fn from_rational(q: Q) -> Self {
        let minpoly = UniPoly::new(vec![-q.clone(), Q::one()]).primitive_rational();
        RealAlgebraic {
            minpoly,
            lo: &q - Q::one(),
            hi: q,
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rational(Q::from_integer(n.into()))
    }

    /// Caller guarantees `p` has exactly one root in `(lo, hi]`. The stored
    /// minimal polynomial is the irreducible factor of `p` owning that root.
    pub fn from_isolated(p: UniPoly, lo: Q, hi: Q) -> Self {
        let sf = p.squarefree_part();
        debug_assert_eq!(sturm_count(&sf, &lo, &hi).unwrap_or(0), 1);
        let minpoly = if sf.deg() <= 1 {
            sf
        } else {
            factor_univariate(&sf)
                .into_iter()
                .find(|f| sturm_count(f, &lo, &hi).unwrap_or(0) == 1)
                .expect("isolated root belongs to some factor")
        };
        let mut r = RealAlgebraic { minpoly, lo, hi };
        if r.minpoly.deg() == 1 {
            let v = r.exact_linear();
            r = Self::from_rational(v);
        }
        r
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }

    pub fn degree(&self) -> usize {
        self.minpoly.deg()
    }

    fn exact_linear(&self) -> Q {
        -self.minpoly.coeff(0) / self.minpoly.coeff(1)
    }

    pub fn as_rational(&self) -> Option<Q> {
        (self.minpoly.deg() == 1).then(|| self.exact_linear())
    }

    pub fn is_zero(&self) -> bool {
        self.as_rational().is_some_and(|q| q.is_zero())
    }

    /// Bisect until the interval is narrower than `w`.
    pub fn refined(&self, w: &Q) -> Self {
        if let Some(v) = self.as_rational() {
            return RealAlgebraic {
                minpoly: self.minpoly.clone(),
                lo: &v - w / Q::from_integer(2.into()),
                hi: v,
            };
        }
        let (mut lo, mut hi) = (self.lo.clone(), self.hi.clone());
        while &(&hi - &lo) >= w {
            let (a, b) = bisect_step(&self.minpoly, &lo, &hi);
            lo = a;
            hi = b;
        }
        RealAlgebraic {
            minpoly: self.minpoly.clone(),
            lo,
            hi,
        }
    }

    fn bisected(&self) -> Self {
        let w = (&self.hi - &self.lo) / Q::from_integer(2.into());
        self.refined(&w)
    }

    pub fn signum(&self) -> i32 {
        if let Some(v) = self.as_rational() {
            return super::uni::sign_of(&v);
        }
        let mut r = self.clone();
        loop {
            if r.lo >= Q::zero() {
                return 1;
            }
            if r.hi < Q::zero() {
                return -1;
            }
            r = r.bisected();
        }
    }

    /// Interval strictly excluding zero whose left endpoint is not a root;
    /// only meaningful for irrational values.
    fn separated(&self) -> Self {
        let mut r = self.clone();
        while (r.lo <= Q::zero() && r.hi >= Q::zero()) || r.minpoly.eval(&r.lo).is_zero() {
            r = r.bisected();
        }
        r
    }

    pub fn neg(&self) -> Self {
        if let Some(v) = self.as_rational() {
            return Self::from_rational(-v);
        }
        let r = self.separated();
        let p = self.minpoly.scale_var(&-Q::one()).primitive_rational();
        RealAlgebraic {
            minpoly: p,
            lo: -r.hi,
            hi: -r.lo,
        }
    }

    /// Product with a rational.
    pub fn scale(&self, q: &Q) -> Self {
        if let Some(v) = self.as_rational() {
            return Self::from_rational(v * q);
        }
        if q.is_zero() {
            return Self::from_rational(Q::zero());
        }
        let p = self.minpoly.scale_var(&q.recip()).primitive_rational();
        let (a, b) = (&self.lo * q, &self.hi * q);
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        RealAlgebraic { minpoly: p, lo, hi }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            self.neg()
        } else {
            self.clone()
        }
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if let Some(v) = self.as_rational() {
            return Some(Self::from_rational(v.recip()));
        }
        let r = self.separated();
        let p = self.minpoly.reverse().primitive_rational();
        Some(RealAlgebraic {
            minpoly: p,
            lo: r.hi.recip(),
            hi: r.lo.recip(),
        })
    }

    pub fn approx(&self) -> f64 {
        if let Some(v) = self.as_rational() {
            return v.to_f64().unwrap_or(f64::NAN);
        }
        let w = Q::new(1.into(), num_bigint::BigInt::from(1u64) << 60);
        let r = self.refined(&w);
        r.hi.to_f64().unwrap_or(f64::NAN)
    }

    /// Exact three-way comparison. Equality is decided by a common factor of
    /// the two minimal polynomials having a root in both intervals.
    pub fn compare(&self, other: &Self) -> Ordering {
        if let (Some(a), Some(b)) = (self.as_rational(), other.as_rational()) {
            return a.cmp(&b);
        }
        let g = self.minpoly.gcd(&other.minpoly);
        if g.deg() > 0 {
            let lo = (&self.lo).max(&other.lo).clone();
            let hi = (&self.hi).min(&other.hi).clone();
            if lo < hi && sturm_count(&g, &lo, &hi).unwrap_or(0) > 0 {
                return Ordering::Equal;
            }
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            a = a.bisected();
            b = b.bisected();
        }
    }

    pub fn descriptor(&self) -> AlgebraicDescriptor {
        match self.as_rational() {
            Some(v) => AlgebraicDescriptor {
                exact: Some(v.to_string()),
                minpoly: None,
                interval: None,
                approx: self.approx(),
            },
            None => {
                let r = self.refined(&Q::new(1.into(), 1024.into()));
                AlgebraicDescriptor {
                    exact: None,
                    minpoly: Some(self.minpoly.to_string()),
                    interval: Some([r.lo.to_string(), r.hi.to_string()]),
                    approx: self.approx(),
                }
            }
        }
    }
}

/// Report form of an exact real: either a rational literal or a minimal
/// polynomial with an isolating interval, plus a decimal hint.
#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct AlgebraicDescriptor {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub minpoly: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub interval: Option<[String; 2]>,
    pub approx: f64,
}

impl PartialEq for RealAlgebraic {
    fn eq(&self, other: &Self) -> bool {
        self.compare(other) == Ordering::Equal
    }
}

impl Eq for RealAlgebraic {}

impl PartialOrd for RealAlgebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RealAlgebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        self.compare(other)
    }
}

impl fmt::Display for RealAlgebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some(v) => write!(f, "{v}"),
            None => write!(
                f,
                "root({}, ({}, {}])~{:.6}",
                self.minpoly, self.lo, self.hi,
                self.approx()
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::sturm::isolate_roots;

    fn sqrt(n: i64) -> RealAlgebraic {
        let r = isolate_roots(&UniPoly::from_ints(&[-n, 0, 1])).unwrap();
        r[1].clone()
    }

    #[test]
    fn compare_examples() {
        let s2 = sqrt(2);
        assert_eq!(
            s2.compare(&RealAlgebraic::from_rational(Q::new(3.into(), 2.into()))),
            Ordering::Less
        );
        let other = RealAlgebraic::from_isolated(
            UniPoly::from_ints(&[-2, 0, 1]),
            Q::new(13.into(), 10.into()),
            Q::new(15.into(), 10.into()),
        );
        assert_eq!(s2.compare(&other), Ordering::Equal);
        assert_eq!(s2.compare(&sqrt(3)), Ordering::Less);
    }

    #[test]
    fn neg_and_recip() {
        let s2 = sqrt(2);
        let n = s2.neg();
        assert!((n.approx() + 2f64.sqrt()).abs() < 1e-12);
        let r = s2.recip().unwrap();
        assert!((r.approx() - 1.0 / 2f64.sqrt()).abs() < 1e-12);
        let r = n.recip().unwrap();
        assert!((r.approx() + 1.0 / 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(s2.signum(), 1);
        assert_eq!(n.signum(), -1);
    }

    #[test]
    fn scaling_and_reducible_input() {
        let s2 = sqrt(2);
        let t = s2.scale(&Q::from_integer((-3).into()));
        assert!((t.approx() + 3.0 * 2f64.sqrt()).abs() < 1e-12);
        // (x - 1)(x^2 - 2) isolated around 1 collapses to the rational 1
        let p = &UniPoly::from_ints(&[-1, 1]) * &UniPoly::from_ints(&[-2, 0, 1]);
        let r = RealAlgebraic::from_isolated(p, Q::new(1.into(), 2.into()), Q::one());
        assert_eq!(r.as_rational(), Some(Q::one()));
    }

    #[test]
    fn refinement_keeps_root() {
        let s2 = sqrt(2);
        let r = s2.refined(&Q::new(1.into(), 1000000.into()));
        assert_eq!(r, s2);
        assert!(r.interval().1 - r.interval().0 < Q::new(1.into(), 1000000.into()));
    }
}
