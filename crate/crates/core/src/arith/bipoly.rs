use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::uni::{clear_denominators, int_mul, UniPoly};
use super::Q;

/// Polynomial in `x, y` stored as a polynomial in `y` whose coefficients are
/// polynomials in `x`: `rows[j]` is the coefficient of `y^j`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BiPoly {
    rows: Vec<UniPoly>,
}

impl BiPoly {
    pub fn from_rows(mut rows: Vec<UniPoly>) -> Self {
        while rows.last().is_some_and(|r| r.is_zero()) {
            rows.pop();
        }
        BiPoly { rows }
    }

    pub fn zero() -> Self {
        BiPoly { rows: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::from_rows(vec![UniPoly::constant(c)])
    }

    pub fn x() -> Self {
        Self::from_rows(vec![UniPoly::x()])
    }

    pub fn y() -> Self {
        Self::from_rows(vec![UniPoly::zero(), UniPoly::one()])
    }

    /// Polynomial in `x` alone.
    pub fn from_x(p: UniPoly) -> Self {
        Self::from_rows(vec![p])
    }

    /// Polynomial in `y` alone.
    pub fn from_y(p: &UniPoly) -> Self {
        Self::from_rows(p.coeffs().iter().map(|c| UniPoly::constant(c.clone())).collect())
    }

    pub fn monomial(c: Q, i: usize, j: usize) -> Self {
        let mut rows = vec![UniPoly::zero(); j + 1];
        rows[j] = UniPoly::monomial(c, i);
        Self::from_rows(rows)
    }

    pub fn from_terms(terms: &[(usize, usize, Q)]) -> Self {
        let mut rows: Vec<Vec<Q>> = Vec::new();
        for (i, j, c) in terms {
            if rows.len() <= *j {
                rows.resize(j + 1, Vec::new());
            }
            let r = &mut rows[*j];
            if r.len() <= *i {
                r.resize(i + 1, Q::zero());
            }
            r[*i] += c;
        }
        Self::from_rows(rows.into_iter().map(UniPoly::new).collect())
    }

    /// Convenience for tests and fixtures: `(i, j, c)` integer terms.
    pub fn from_int_terms(terms: &[(usize, usize, i64)]) -> Self {
        let t: Vec<_> = terms
            .iter()
            .map(|&(i, j, c)| (i, j, Q::from_integer(c.into())))
            .collect();
        Self::from_terms(&t)
    }

    pub fn rows(&self) -> &[UniPoly] {
        &self.rows
    }

    pub fn row(&self, j: usize) -> UniPoly {
        self.rows.get(j).cloned().unwrap_or_else(UniPoly::zero)
    }

    pub fn coeff(&self, i: usize, j: usize) -> Q {
        self.rows.get(j).map(|r| r.coeff(i)).unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Nonzero terms `(i, j, c)` for `c x^i y^j`, by increasing `j`, then `i`.
    pub fn terms(&self) -> Vec<(usize, usize, Q)> {
        let mut out = Vec::new();
        for (j, r) in self.rows.iter().enumerate() {
            for (i, c) in r.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    out.push((i, j, c.clone()));
                }
            }
        }
        out
    }

    pub fn deg_y(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn deg_x(&self) -> usize {
        self.rows.iter().map(|r| r.deg()).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> usize {
        self.terms().iter().map(|t| t.0 + t.1).max().unwrap_or(0)
    }

    /// Order at the origin: least total degree of a term; `None` for zero.
    pub fn ord(&self) -> Option<usize> {
        self.terms().iter().map(|t| t.0 + t.1).min()
    }

    /// Homogeneous part of total degree `d`.
    pub fn homogeneous_part(&self, d: usize) -> BiPoly {
        let t: Vec<_> = self.terms().into_iter().filter(|t| t.0 + t.1 == d).collect();
        Self::from_terms(&t)
    }

    pub fn is_constant(&self) -> bool {
        self.rows.len() <= 1 && self.rows.first().is_none_or(|r| r.deg() == 0)
    }

    pub fn constant_term(&self) -> Q {
        self.coeff(0, 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.scale(c)).collect())
    }

    pub fn mul_x(&self, p: &UniPoly) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r * p).collect())
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

    /// `f(a, y)` as a polynomial in `y`.
    pub fn eval_x(&self, a: &Q) -> UniPoly {
        UniPoly::new(self.rows.iter().map(|r| r.eval(a)).collect())
    }

    /// `f(x, b)` as a polynomial in `x`.
    pub fn eval_y(&self, b: &Q) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &acc.scale(b) + r;
        }
        acc
    }

    pub fn eval(&self, a: &Q, b: &Q) -> Q {
        self.eval_x(a).eval(b)
    }

    pub fn swap_xy(&self) -> Self {
        let t: Vec<_> = self.terms().into_iter().map(|(i, j, c)| (j, i, c)).collect();
        Self::from_terms(&t)
    }

    /// `f(-x, y)`.
    pub fn neg_x(&self) -> Self {
        let m1 = -Q::one();
        Self::from_rows(self.rows.iter().map(|r| r.scale_var(&m1)).collect())
    }

    /// `f(x, -y)`.
    pub fn neg_y(&self) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .enumerate()
                .map(|(j, r)| if j % 2 == 1 { -r } else { r.clone() })
                .collect(),
        )
    }

    /// `f(x + a, y)`.
    pub fn shift_x(&self, a: &Q) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.shift(a)).collect())
    }

    pub fn derivative_y(&self) -> Self {
        Self::from_rows(
            self.rows
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, r)| r.scale(&Q::from_integer(j.into())))
                .collect(),
        )
    }

    pub fn derivative_x(&self) -> Self {
        Self::from_rows(self.rows.iter().map(|r| r.derivative()).collect())
    }

    /// `f(p(t), q(t))`.
    pub fn substitute(&self, p: &UniPoly, q: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::zero();
        for r in self.rows.iter().rev() {
            acc = &(&acc * q) + &r.compose(p);
        }
        acc
    }

    /// `f(a x + b y, c x + d y)`.
    pub fn linear_subst(&self, a: &Q, b: &Q, c: &Q, d: &Q) -> Self {
        let u = &Self::x().scale(a) + &Self::y().scale(b);
        let v = &Self::x().scale(c) + &Self::y().scale(d);
        self.compose(&u, &v)
    }

    /// `f(u(x, y), v(x, y))`.
    pub fn compose(&self, u: &BiPoly, v: &BiPoly) -> Self {
        let mut acc = Self::zero();
        for r in self.rows.iter().rev() {
            let mut ru = Self::zero();
            for c in r.coeffs().iter().rev() {
                ru = &(&ru * u) + &Self::constant(c.clone());
            }
            acc = &(&acc * v) + &ru;
        }
        acc
    }

    /// Gcd of all `x`-coefficients, monic; one for zero.
    pub fn content_x(&self) -> UniPoly {
        let mut rows: Vec<&UniPoly> = self.rows.iter().filter(|r| !r.is_zero()).collect();
        rows.sort_by_key(|r| r.deg());
        let mut g = UniPoly::zero();
        for r in rows {
            g = g.gcd(r);
            if g.deg() == 0 && !g.is_zero() {
                return UniPoly::one();
            }
        }
        if g.is_zero() {
            UniPoly::one()
        } else {
            g
        }
    }

    /// Exact division by a polynomial in `x` alone.
    pub fn div_x(&self, p: &UniPoly) -> Option<Self> {
        let rows: Option<Vec<_>> = self.rows.iter().map(|r| r.div_exact(p)).collect();
        rows.map(Self::from_rows)
    }

    /// Rescale to integer coefficients with content one and a positive
    /// leading coefficient (highest `y` power, then highest `x` power).
    pub fn primitive_rational(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut den = num_bigint::BigInt::one();
        let mut num = num_bigint::BigInt::zero();
        use num_integer::Integer;
        for (_, _, c) in self.terms() {
            den = den.lcm(c.denom());
            num = num.gcd(c.numer());
        }
        let mut s = Q::new(den, num);
        if self.rows.last().unwrap().lc().is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    /// Human-readable form in `x` and `y`, highest total degree first.
    pub fn to_string_xy(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut terms = self.terms();
        terms.sort_by(|a, b| (b.0 + b.1, b.1).cmp(&(a.0 + a.1, a.1)));
        let mut s = String::new();
        for (n, (i, j, c)) in terms.iter().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if n == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let mono = match (i, j) {
                (0, 0) => String::new(),
                _ => {
                    let mut m = Vec::new();
                    if *i > 0 {
                        m.push(if *i == 1 { "x".to_string() } else { format!("x^{i}") });
                    }
                    if *j > 0 {
                        m.push(if *j == 1 { "y".to_string() } else { format!("y^{j}") });
                    }
                    m.join("*")
                }
            };
            if mono.is_empty() {
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

impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_string_xy())
    }
}

impl Add for &BiPoly {
    type Output = BiPoly;
    fn add(self, o: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(o.rows.len());
        BiPoly::from_rows((0..n).map(|j| &self.row(j) + &o.row(j)).collect())
    }
}

impl Sub for &BiPoly {
    type Output = BiPoly;
    fn sub(self, o: &BiPoly) -> BiPoly {
        let n = self.rows.len().max(o.rows.len());
        BiPoly::from_rows((0..n).map(|j| &self.row(j) - &o.row(j)).collect())
    }
}

impl Neg for &BiPoly {
    type Output = BiPoly;
    fn neg(self) -> BiPoly {
        BiPoly::from_rows(self.rows.iter().map(|r| -r).collect())
    }
}

impl Mul for &BiPoly {
    type Output = BiPoly;
    fn mul(self, o: &BiPoly) -> BiPoly {
        if self.is_zero() || o.is_zero() {
            return BiPoly::zero();
        }
        let ints = |f: &BiPoly| {
            let all: Vec<Q> = f.rows.iter().flat_map(|r| r.coeffs().iter().cloned()).collect();
            let (_, den) = clear_denominators(&all);
            let rows: Vec<Vec<BigInt>> = f
                .rows
                .iter()
                .map(|r| r.coeffs().iter().map(|c| c.numer() * (&den / c.denom())).collect())
                .collect();
            (rows, den)
        };
        let (a, da) = ints(self);
        let (b, db) = ints(o);
        let mut rows: Vec<Vec<BigInt>> = vec![Vec::new(); a.len() + b.len() - 1];
        for (i, ra) in a.iter().enumerate() {
            for (j, rb) in b.iter().enumerate() {
                if ra.is_empty() || rb.is_empty() {
                    continue;
                }
                let p = int_mul(ra, rb);
                let slot = &mut rows[i + j];
                if slot.len() < p.len() {
                    slot.resize(p.len(), BigInt::zero());
                }
                for (k, c) in p.into_iter().enumerate() {
                    slot[k] += c;
                }
            }
        }
        let den = da * db;
        BiPoly::from_rows(
            rows.into_iter()
                .map(|r| UniPoly::new(r.into_iter().map(|c| Q::new(c, den.clone())).collect()))
                .collect(),
        )
    }
}
