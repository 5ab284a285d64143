use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Q;

/// Dense univariate polynomial over the rationals, lowest degree first.
///
/// The coefficient vector never carries trailing zeros, so the zero
/// polynomial is the empty vector.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct UniPoly {
    coeffs: Vec<Q>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<Q>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        Self::monomial(Q::one(), 1)
    }

    pub fn monomial(c: Q, deg: usize) -> Self {
        let mut v = vec![Q::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| Q::from_integer(c.into())).collect())
    }

    pub fn from_bigints(coeffs: &[BigInt]) -> Self {
        Self::new(coeffs.iter().map(|c| Q::from_integer(c.clone())).collect())
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> Q {
        self.coeffs.get(i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree with the zero polynomial mapped to 0; only for callers that
    /// have already excluded zero.
    pub fn deg(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn lc(&self) -> Q {
        self.coeffs.last().cloned().unwrap_or_else(Q::zero)
    }

    /// Lowest exponent carrying a nonzero coefficient.
    pub fn order(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &Q) -> Q {
        // homogeneous Horner on integer numerators: sum c_i n^i d^(m-i)
        if self.is_zero() {
            return Q::zero();
        }
        let (cs, den) = clear_denominators(&self.coeffs);
        let (n, d) = (x.numer(), x.denom());
        let mut acc = BigInt::zero();
        let mut dp = BigInt::one();
        for c in cs.iter().rev() {
            acc = acc * n + c * &dp;
            dp *= d;
        }
        // dp = d^(m+1) now
        Q::new(acc, den * dp / d)
    }

    pub fn sign_at(&self, x: &Q) -> i32 {
        sign_of(&self.eval(x))
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        UniPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.lc().recip();
        self.scale(&inv)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * Q::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let dd = d.deg();
        if self.degree().is_none_or(|n| n < dd) {
            return (Self::zero(), self.clone());
        }
        let inv = d.lc().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Q::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &inv;
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; `None` when `d` does not divide `self`.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.div_rem(d);
        r.is_zero().then_some(q)
    }

    /// Monic greatest common divisor (zero when both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.primitive_rational();
        }
        a.monic()
    }

    /// Extended gcd: returns (g, s, t) with s*self + t*other = g, g monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = r0.lc().recip();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    /// Rescale so that coefficients are coprime integers with positive
    /// leading coefficient. Keeps the zero polynomial as is.
    pub fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        Self::from_bigints(&self.to_primitive_ints())
    }

    /// Integer coefficients of the primitive associate (positive leading
    /// coefficient).
    pub fn to_primitive_ints(&self) -> Vec<BigInt> {
        if self.is_zero() {
            return Vec::new();
        }
        let mut den = BigInt::one();
        for c in &self.coeffs {
            den = den.lcm(c.denom());
        }
        let mut ints: Vec<BigInt> = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&den / c.denom()))
            .collect();
        let mut g = BigInt::zero();
        for c in &ints {
            g = g.gcd(c);
        }
        if ints.last().is_some_and(|c| c.is_negative()) {
            g = -g;
        }
        for c in ints.iter_mut() {
            *c = &*c / &g;
        }
        ints
    }

    /// Product of the distinct irreducible factors, primitive.
    pub fn squarefree_part(&self) -> Self {
        if self.degree().is_none_or(|d| d == 0) {
            return if self.is_zero() { Self::zero() } else { Self::one() };
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.primitive_rational()
    }

    /// Yun's square-free decomposition: returns `(a_i)` with
    /// `self = c * prod a_i^(i+1)`, each `a_i` monic and square-free.
    pub fn squarefree_decomposition(&self) -> Vec<Self> {
        let mut out = Vec::new();
        if self.degree().is_none_or(|d| d == 0) {
            return out;
        }
        let f = self.monic();
        let fd = f.derivative();
        let a0 = f.gcd(&fd);
        let mut b = f.div_rem(&a0).0;
        let mut c = fd.div_rem(&a0).0;
        let mut d = &c - &b.derivative();
        loop {
            let a = b.gcd(&d);
            out.push(a.clone());
            b = b.div_rem(&a).0;
            if b.deg() == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = &c - &b.derivative();
        }
        while out.last().is_some_and(|p| p.deg() == 0) {
            out.pop();
        }
        out
    }

    /// `p(x + a)` by Horner composition.
    pub fn shift(&self, a: &Q) -> Self {
        let lin = Self::new(vec![a.clone(), Q::one()]);
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &Self::constant(c.clone());
        }
        acc
    }

    /// `p(c * x)`.
    pub fn scale_var(&self, c: &Q) -> Self {
        let mut pw = Q::one();
        let mut v = Vec::with_capacity(self.coeffs.len());
        for a in &self.coeffs {
            v.push(a * &pw);
            pw *= c;
        }
        Self::new(v)
    }

    /// `x^deg * p(1/x)`.
    pub fn reverse(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Composition `self(other(x))`.
    pub fn compose(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * other) + &Self::constant(c.clone());
        }
        acc
    }

    /// Cauchy bound: every real root has absolute value below the result.
    pub fn root_bound(&self) -> Q {
        let lc = self.lc().abs();
        let mut m = Q::zero();
        for c in &self.coeffs[..self.coeffs.len().saturating_sub(1)] {
            let r = c.abs() / &lc;
            if r > m {
                m = r;
            }
        }
        m + Q::one()
    }

    pub fn to_string_in(&self, var: &str) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let a = c.abs();
            if s.is_empty() {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match i {
                0 => String::new(),
                1 => var.to_string(),
                _ => format!("{var}^{i}"),
            };
            if i == 0 {
                s.push_str(&a.to_string());
            } else if a.is_one() {
                s.push_str(&mono);
            } else {
                s.push_str(&format!("{a}*{mono}"));
            }
        }
        s
    }
}

pub fn sign_of(q: &Q) -> i32 {
    if q.is_zero() {
        0
    } else if q.is_positive() {
        1
    } else {
        -1
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_in("x"))
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        UniPoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let (a, da) = clear_denominators(&self.coeffs);
        let (b, db) = clear_denominators(&rhs.coeffs);
        let den = da * db;
        UniPoly::new(
            int_mul(&a, &b)
                .into_iter()
                .map(|c| Q::new(c, den.clone()))
                .collect(),
        )
    }
}

/// Integer numerators over a common denominator.
pub(crate) fn clear_denominators(cs: &[Q]) -> (Vec<BigInt>, BigInt) {
    let den = cs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let v = cs.iter().map(|c| c.numer() * (&den / c.denom())).collect();
    (v, den)
}

pub(crate) fn int_mul(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                v[i + j] += x * y;
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    #[test]
    fn division_and_gcd() {
        let a = &p(&[-1, 0, 1]) * &p(&[2, 1]);
        let b = &p(&[-1, 0, 1]) * &p(&[-3, 1]);
        assert_eq!(a.gcd(&b), p(&[-1, 0, 1]));
        let (q, r) = a.div_rem(&p(&[1, 1]));
        assert!(r.is_zero());
        assert_eq!(&q * &p(&[1, 1]), a);
    }

    #[test]
    fn ext_gcd_identity() {
        let a = p(&[1, 0, 1]);
        let b = p(&[-2, 1]);
        let (g, s, t) = a.ext_gcd(&b);
        assert_eq!(g, UniPoly::one());
        assert_eq!(&(&s * &a) + &(&t * &b), g);
    }

    #[test]
    fn squarefree_pieces() {
        // (x-1)^2 (x+2)^3 x
        let f = &(&p(&[-1, 1]).pow(2) * &p(&[2, 1]).pow(3)) * &p(&[0, 1]);
        assert_eq!(f.squarefree_part(), &(&p(&[-1, 1]) * &p(&[2, 1])) * &p(&[0, 1]));
        let dec = f.squarefree_decomposition();
        assert_eq!(dec.len(), 3);
        assert_eq!(dec[0], p(&[0, 1]));
        assert_eq!(dec[1], p(&[-1, 1]));
        assert_eq!(dec[2], p(&[2, 1]));
    }

    #[test]
    fn shift_and_primitive() {
        let f = p(&[0, 0, 1]).shift(&Q::from_integer(1.into()));
        assert_eq!(f, p(&[1, 2, 1]));
        let g = UniPoly::new(vec![Q::new(1.into(), 2.into()), Q::new((-3).into(), 4.into())]);
        assert_eq!(g.to_primitive_ints(), vec![BigInt::from(-2), BigInt::from(3)]);
    }
}
