//! Towers `Q = K_0 < K_1 < ... < K_n` of real algebraic extensions.
//!
//! Level `k` adjoins a real root `alpha_k` of a square-free polynomial
//! `m_k` with coefficients in `K_(k-1)`, isolated in an open interval
//! `(lo, hi)` with `m_k(lo), m_k(hi)` nonzero. `m_k` need not be
//! irreducible: whenever a zero test finds a factor vanishing at `alpha_k`
//! the level is narrowed to that factor, and factors not vanishing there
//! are divided out (dynamic evaluation restricted to the real embedding).

use std::cell::RefCell;
use std::rc::Rc;

use num_traits::{One, Signed, Zero};

use super::factor::{factor_univariate, factor_with_multiplicity};
use super::realalg::RealAlgebraic;
use super::sturm::{isolate_intervals, sturm_count};
use super::uni::{sign_of, UniPoly};
use super::Q;

/// Element of a tower: a rational, or a polynomial in `alpha_k` whose
/// coefficients live strictly below level `k`.
#[derive(Clone, Debug, PartialEq)]
pub enum Elem {
    Q(Q),
    P(usize, Vec<Elem>),
}

impl Elem {
    pub fn zero() -> Self {
        Elem::Q(Q::zero())
    }

    pub fn one() -> Self {
        Elem::Q(Q::one())
    }

    pub fn int(n: i64) -> Self {
        Elem::Q(Q::from_integer(n.into()))
    }

    pub fn level(&self) -> usize {
        match self {
            Elem::Q(_) => 0,
            Elem::P(k, _) => *k,
        }
    }

    /// Syntactically zero; a non-rational element may still vanish.
    pub fn is_trivially_zero(&self) -> bool {
        matches!(self, Elem::Q(q) if q.is_zero())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Elem::Q(q) => Some(q),
            _ => None,
        }
    }
}

/// Dense polynomial over a tower, lowest degree first.
pub type KPoly = Vec<Elem>;

#[derive(Debug)]
struct LevelState {
    m: KPoly,
    lo: Q,
    hi: Q,
    sign_hi: i32,
    /// `m` is irreducible over the level below, so reduced nonzero
    /// representatives are nonzero.
    irreducible: bool,
}

#[derive(Debug)]
struct Level(RefCell<LevelState>);

#[derive(Clone, Debug, Default)]
pub struct Tower {
    levels: Vec<Rc<Level>>,
}

fn two() -> Q {
    Q::from_integer(2.into())
}

fn iv_mul(a: &(Q, Q), b: &(Q, Q)) -> (Q, Q) {
    let p = [&a.0 * &b.0, &a.0 * &b.1, &a.1 * &b.0, &a.1 * &b.1];
    let lo = p.iter().min().unwrap().clone();
    let hi = p.iter().max().unwrap().clone();
    (lo, hi)
}

impl Tower {
    pub fn new() -> Self {
        Tower { levels: Vec::new() }
    }

    pub fn height(&self) -> usize {
        self.levels.len()
    }

    fn state(&self, k: usize) -> std::cell::Ref<'_, LevelState> {
        self.levels[k - 1].0.borrow()
    }

    fn minpoly(&self, k: usize) -> KPoly {
        self.state(k).m.clone()
    }

    pub fn interval(&self, k: usize) -> (Q, Q) {
        let s = self.state(k);
        (s.lo.clone(), s.hi.clone())
    }

    // ---------- ring operations ----------

    /// Reduce coefficient vector at level `k` modulo `m_k` and collapse.
    fn norm(&self, k: usize, mut v: KPoly) -> Elem {
        let d = self.state(k).m.len() - 1;
        if v.len() > d {
            let m = self.minpoly(k);
            while v.len() > d {
                let c = v.pop().unwrap();
                if c.is_trivially_zero() {
                    continue;
                }
                let off = v.len() - d;
                for (i, mi) in m.iter().take(d).enumerate() {
                    let t = self.mul(&c, mi);
                    v[off + i] = self.sub(&v[off + i], &t);
                }
            }
        }
        while v.last().is_some_and(|c| c.is_trivially_zero()) {
            v.pop();
        }
        match v.len() {
            0 => Elem::zero(),
            1 => v.pop().unwrap(),
            _ => Elem::P(k, v),
        }
    }

    fn coeffs_at(e: &Elem, k: usize) -> KPoly {
        match e {
            Elem::P(j, v) if *j == k => v.clone(),
            _ => vec![e.clone()],
        }
    }

    pub fn add(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x + y),
            _ => {
                let k = a.level().max(b.level());
                let (va, vb) = (Self::coeffs_at(a, k), Self::coeffs_at(b, k));
                let n = va.len().max(vb.len());
                let z = Elem::zero();
                let v = (0..n)
                    .map(|i| self.add(va.get(i).unwrap_or(&z), vb.get(i).unwrap_or(&z)))
                    .collect();
                self.norm(k, v)
            }
        }
    }

    pub fn neg(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(x) => Elem::Q(-x),
            Elem::P(k, v) => Elem::P(*k, v.iter().map(|c| self.neg(c)).collect()),
        }
    }

    pub fn sub(&self, a: &Elem, b: &Elem) -> Elem {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &Elem, q: &Q) -> Elem {
        if q.is_zero() {
            return Elem::zero();
        }
        match a {
            Elem::Q(x) => Elem::Q(x * q),
            Elem::P(k, v) => Elem::P(*k, v.iter().map(|c| self.scale(c, q)).collect()),
        }
    }

    pub fn mul(&self, a: &Elem, b: &Elem) -> Elem {
        match (a, b) {
            (Elem::Q(x), Elem::Q(y)) => Elem::Q(x * y),
            (Elem::Q(x), _) => self.scale(b, x),
            (_, Elem::Q(y)) => self.scale(a, y),
            _ => {
                let (ka, kb) = (a.level(), b.level());
                if ka != kb {
                    let (lo, hi) = if ka < kb { (a, b) } else { (b, a) };
                    let Elem::P(k, v) = hi else { unreachable!() };
                    let v = v.iter().map(|c| self.mul(lo, c)).collect();
                    return self.norm(*k, v);
                }
                let (va, vb) = (Self::coeffs_at(a, ka), Self::coeffs_at(b, ka));
                let mut v = vec![Elem::zero(); va.len() + vb.len() - 1];
                for (i, x) in va.iter().enumerate() {
                    for (j, y) in vb.iter().enumerate() {
                        let t = self.mul(x, y);
                        v[i + j] = self.add(&v[i + j], &t);
                    }
                }
                self.norm(ka, v)
            }
        }
    }

    pub fn pow(&self, a: &Elem, e: u32) -> Elem {
        let mut acc = Elem::one();
        for _ in 0..e {
            acc = self.mul(&acc, a);
        }
        acc
    }

    // ---------- exact predicates ----------

    pub fn is_zero(&self, a: &Elem) -> bool {
        match a {
            Elem::Q(x) => x.is_zero(),
            Elem::P(k, v) => {
                let k = *k;
                if self.state(k).irreducible {
                    return v.iter().all(|c| self.is_zero(c));
                }
                let m = self.minpoly(k);
                let g = self.kp_gcd(&m, v);
                if g.len() <= 1 {
                    return false;
                }
                if self.vanishes_at_alpha(k, &g) {
                    self.set_minpoly(k, g);
                    true
                } else {
                    let rest = self.kp_divrem(&m, &g).0;
                    self.set_minpoly(k, rest);
                    false
                }
            }
        }
    }

    /// `g` divides `m_k`; decide whether `g(alpha_k) = 0` by a sign change.
    fn vanishes_at_alpha(&self, k: usize, g: &KPoly) -> bool {
        let (lo, hi) = self.interval(k);
        let a = self.sign(&self.kp_eval_q(g, &lo));
        let b = self.sign(&self.kp_eval_q(g, &hi));
        a != b
    }

    fn set_minpoly(&self, k: usize, m: KPoly) {
        let m = self.kp_monic(&m);
        let hi = self.state(k).hi.clone();
        let s = self.sign(&self.kp_eval_q(&m, &hi));
        let mut st = self.levels[k - 1].0.borrow_mut();
        st.m = m;
        st.sign_hi = s;
    }

    /// Sign of an element, exact.
    pub fn sign(&self, a: &Elem) -> i32 {
        match a {
            Elem::Q(x) => sign_of(x),
            Elem::P(k, _) => {
                if self.is_zero(a) {
                    return 0;
                }
                loop {
                    let (l, h) = self.enclosure(a);
                    if l.is_positive() {
                        return 1;
                    }
                    if h.is_negative() {
                        return -1;
                    }
                    for j in 1..=*k {
                        self.refine(j);
                    }
                }
            }
        }
    }

    pub fn cmp(&self, a: &Elem, b: &Elem) -> std::cmp::Ordering {
        self.sign(&self.sub(a, b)).cmp(&0)
    }

    /// Closed rational interval containing the value.
    pub fn enclosure(&self, a: &Elem) -> (Q, Q) {
        match a {
            Elem::Q(x) => (x.clone(), x.clone()),
            Elem::P(k, v) => {
                let al = self.interval(*k);
                let mut acc = (Q::zero(), Q::zero());
                for c in v.iter().rev() {
                    let e = self.enclosure(c);
                    let p = iv_mul(&acc, &al);
                    acc = (p.0 + e.0, p.1 + e.1);
                }
                acc
            }
        }
    }

    /// Enclosure refined until narrower than `w`.
    pub fn approx(&self, a: &Elem, w: &Q) -> (Q, Q) {
        loop {
            let e = self.enclosure(a);
            if &(&e.1 - &e.0) < w {
                return e;
            }
            for j in 1..=a.level() {
                self.refine(j);
            }
        }
    }

    pub fn to_f64(&self, a: &Elem) -> f64 {
        use num_traits::ToPrimitive;
        let w = Q::new(1.into(), num_bigint::BigInt::one() << 56);
        let (l, h) = self.approx(a, &w);
        ((l + h) / two()).to_f64().unwrap_or(f64::NAN)
    }

    /// Halve the isolating interval of level `k`.
    fn refine(&self, k: usize) {
        let (lo, hi) = self.interval(k);
        let mid = (&lo + &hi) / two();
        let m = self.minpoly(k);
        let s = self.sign(&self.kp_eval_q(&m, &mid));
        let mut st = self.levels[k - 1].0.borrow_mut();
        if s == 0 {
            let q = (&hi - &lo) / Q::from_integer(4.into());
            st.m = vec![Elem::Q(-&mid), Elem::one()];
            st.lo = &mid - &q;
            st.hi = &mid + &q;
            st.sign_hi = 1;
        } else if s == st.sign_hi {
            st.hi = mid;
        } else {
            st.lo = mid;
        }
    }

    /// Multiplicative inverse of a nonzero element.
    pub fn inv(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(x) => Elem::Q(x.recip()),
            Elem::P(k, v) => {
                let k = *k;
                loop {
                    let m = self.minpoly(k);
                    let (g, s, _) = self.kp_ext_gcd(v, &m);
                    if g.len() == 1 {
                        let gi = self.inv(&g[0]);
                        let s: KPoly = s.iter().map(|c| self.mul(c, &gi)).collect();
                        return self.norm(k, s);
                    }
                    assert!(
                        !self.vanishes_at_alpha(k, &g),
                        "inverse of zero in a real algebraic tower"
                    );
                    let rest = self.kp_divrem(&m, &g).0;
                    self.set_minpoly(k, rest);
                }
            }
        }
    }

    pub fn div(&self, a: &Elem, b: &Elem) -> Elem {
        self.mul(a, &self.inv(b))
    }

    // ---------- polynomials over the tower ----------

    pub fn kp_trim(&self, v: &KPoly) -> KPoly {
        let mut v = v.clone();
        while v.last().is_some_and(|c| self.is_zero(c)) {
            v.pop();
        }
        v
    }

    pub fn kp_from_q(p: &UniPoly) -> KPoly {
        p.coeffs().iter().map(|c| Elem::Q(c.clone())).collect()
    }

    pub fn kp_eval(&self, v: &KPoly, x: &Elem) -> Elem {
        let mut acc = Elem::zero();
        for c in v.iter().rev() {
            acc = self.add(&self.mul(&acc, x), c);
        }
        acc
    }

    pub fn kp_eval_q(&self, v: &KPoly, x: &Q) -> Elem {
        let mut acc = Elem::zero();
        for c in v.iter().rev() {
            acc = self.add(&self.scale(&acc, x), c);
        }
        acc
    }

    pub fn kp_add(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let n = a.len().max(b.len());
        let z = Elem::zero();
        (0..n)
            .map(|i| self.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
            .collect()
    }

    pub fn kp_sub(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let nb: KPoly = b.iter().map(|c| self.neg(c)).collect();
        self.kp_add(a, &nb)
    }

    pub fn kp_mul(&self, a: &KPoly, b: &KPoly) -> KPoly {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut v = vec![Elem::zero(); a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            if x.is_trivially_zero() {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                let t = self.mul(x, y);
                v[i + j] = self.add(&v[i + j], &t);
            }
        }
        v
    }

    pub fn kp_derivative(&self, a: &KPoly) -> KPoly {
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.scale(c, &Q::from_integer(i.into())))
            .collect()
    }

    pub fn kp_monic(&self, a: &KPoly) -> KPoly {
        let a = self.kp_trim(a);
        match a.last() {
            None => a,
            Some(l) => {
                let li = self.inv(l);
                let mut v: KPoly = a.iter().map(|c| self.mul(c, &li)).collect();
                *v.last_mut().unwrap() = Elem::one();
                v
            }
        }
    }

    /// Division with remainder; `b` must be nonzero.
    pub fn kp_divrem(&self, a: &KPoly, b: &KPoly) -> (KPoly, KPoly) {
        let b = self.kp_trim(b);
        assert!(!b.is_empty(), "division by the zero polynomial");
        let li = self.inv(b.last().unwrap());
        let mut r = self.kp_trim(a);
        let db = b.len() - 1;
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let mut q = vec![Elem::zero(); r.len() - db];
        while r.len() >= b.len() {
            let c = self.mul(r.last().unwrap(), &li);
            let off = r.len() - b.len();
            for (i, bi) in b.iter().enumerate() {
                let t = self.mul(&c, bi);
                r[off + i] = self.sub(&r[off + i], &t);
            }
            q[off] = c;
            r.pop();
            r = self.kp_trim(&r);
        }
        (q, r)
    }

    /// Monic gcd.
    pub fn kp_gcd(&self, a: &KPoly, b: &KPoly) -> KPoly {
        let (mut x, mut y) = (self.kp_trim(a), self.kp_trim(b));
        while !y.is_empty() {
            let r = self.kp_divrem(&x, &y).1;
            x = y;
            y = r;
        }
        self.kp_monic(&x)
    }

    /// `(g, s, t)` with `s a + t b = g`, `g` monic.
    pub fn kp_ext_gcd(&self, a: &KPoly, b: &KPoly) -> (KPoly, KPoly, KPoly) {
        let (mut r0, mut r1) = (self.kp_trim(a), self.kp_trim(b));
        let (mut s0, mut s1) = (vec![Elem::one()], Vec::new());
        let (mut t0, mut t1) = (Vec::new(), vec![Elem::one()]);
        while !r1.is_empty() {
            let (q, r) = self.kp_divrem(&r0, &r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = self.kp_sub(&s0, &self.kp_mul(&q, &s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = self.kp_sub(&t0, &self.kp_mul(&q, &t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        let li = self.inv(r0.last().expect("gcd of two zero polynomials"));
        let sc = |v: &KPoly| -> KPoly { v.iter().map(|c| self.mul(c, &li)).collect() };
        (sc(&r0), sc(&s0), sc(&t0))
    }

    pub fn kp_squarefree(&self, a: &KPoly) -> KPoly {
        let a = self.kp_trim(a);
        let g = self.kp_gcd(&a, &self.kp_derivative(&a));
        self.kp_monic(&self.kp_divrem(&a, &g).0)
    }

    fn kp_sturm(&self, p: &KPoly) -> Vec<KPoly> {
        let mut chain = vec![p.clone(), self.kp_trim(&self.kp_derivative(p))];
        loop {
            let n = chain.len();
            if chain[n - 1].is_empty() {
                chain.pop();
                break;
            }
            let r = self.kp_divrem(&chain[n - 2], &chain[n - 1]).1;
            if r.is_empty() {
                break;
            }
            chain.push(r.iter().map(|c| self.neg(c)).collect());
        }
        chain
    }

    fn sign_changes(&self, chain: &[KPoly], x: &Q) -> usize {
        let mut last = 0;
        let mut n = 0;
        for p in chain {
            let s = self.sign(&self.kp_eval_q(p, x));
            if s != 0 {
                if last != 0 && s != last {
                    n += 1;
                }
                last = s;
            }
        }
        n
    }

    /// Upper bound on the absolute value.
    fn abs_upper(&self, a: &Elem) -> Q {
        let (l, h) = self.enclosure(a);
        l.abs().max(h.abs())
    }

    /// Positive lower bound on the absolute value of a nonzero element.
    fn abs_lower(&self, a: &Elem) -> Q {
        loop {
            let (l, h) = self.enclosure(a);
            if l.is_positive() {
                return l;
            }
            if h.is_negative() {
                return -h;
            }
            for j in 1..=a.level() {
                self.refine(j);
            }
        }
    }

    /// Isolating intervals `(lo, hi]` of the distinct real roots, ascending.
    pub fn kp_isolate(&self, p: &KPoly) -> Vec<(Q, Q)> {
        let sf = self.kp_squarefree(p);
        if sf.len() <= 1 {
            return Vec::new();
        }
        let lcl = self.abs_lower(sf.last().unwrap());
        let mut bound = Q::one();
        for c in &sf[..sf.len() - 1] {
            bound += self.abs_upper(c) / &lcl;
        }
        let chain = self.kp_sturm(&sf);
        let mut out = Vec::new();
        let mut stack = vec![(-bound.clone(), bound)];
        while let Some((lo, hi)) = stack.pop() {
            let n = self.sign_changes(&chain, &lo) - self.sign_changes(&chain, &hi);
            match n {
                0 => {}
                1 => out.push((lo, hi)),
                _ => {
                    let mid = (&lo + &hi) / two();
                    stack.push((lo, mid.clone()));
                    stack.push((mid, hi));
                }
            }
        }
        out.sort_by(|a, b| a.0.cmp(&b.0));
        out
    }

    /// Adjoin the root of square-free `p` isolated in `(lo, hi]`. Returns
    /// the extended tower (sharing all existing levels) and the root.
    /// Linear polynomials and roots at a rational endpoint add no level.
    pub fn adjoin(&self, p: &KPoly, lo: &Q, hi: &Q) -> (Tower, Elem) {
        let mut p = self.kp_monic(p);
        let rational: Option<Vec<Q>> = p.iter().map(|c| c.as_rational().cloned()).collect();
        if let Some(cs) = rational.clone() {
            // over Q, keep only the irreducible factor owning the root
            let f = factor_univariate(&UniPoly::new(cs))
                .into_iter()
                .find(|f| sturm_count(f, lo, hi).unwrap_or(0) == 1)
                .expect("isolated root belongs to some factor");
            p = Self::kp_from_q(&f.monic());
        }
        let irreducible = rational.is_some() && self.height() == 0;
        if p.len() == 2 {
            return (self.clone(), self.neg(&p[0]));
        }
        let (mut lo, mut hi) = (lo.clone(), hi.clone());
        loop {
            if self.is_zero(&self.kp_eval_q(&p, &hi)) {
                return (self.clone(), Elem::Q(hi));
            }
            if !self.is_zero(&self.kp_eval_q(&p, &lo)) {
                break;
            }
            let mid = (&lo + &hi) / two();
            if sturm_count_k(self, &p, &mid, &hi) == 1 {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let sign_hi = self.sign(&self.kp_eval_q(&p, &hi));
        let mut t = self.clone();
        t.levels.push(Rc::new(Level(RefCell::new(LevelState {
            m: p,
            lo,
            hi,
            sign_hi,
            irreducible,
        }))));
        let k = t.levels.len();
        (t, Elem::P(k, vec![Elem::zero(), Elem::one()]))
    }

    /// All real roots of `p` adjoined one by one, ascending.
    pub fn real_roots(&self, p: &KPoly) -> Vec<(Tower, Elem)> {
        let rational: Option<Vec<Q>> = p.iter().map(|c| c.as_rational().cloned()).collect();
        if let Some(cs) = rational {
            return self.rational_real_roots(&UniPoly::new(cs));
        }
        let sf = self.kp_squarefree(p);
        self.kp_isolate(&sf)
            .into_iter()
            .map(|(lo, hi)| self.adjoin(&sf, &lo, &hi))
            .collect()
    }

    /// Factor over `Q` first; linear factors need no isolation.
    fn rational_real_roots(&self, p: &UniPoly) -> Vec<(Tower, Elem)> {
        let mut roots: Vec<(RealAlgebraic, UniPoly)> = Vec::new();
        for (f, _) in factor_with_multiplicity(p) {
            for (lo, hi) in isolate_intervals(&f) {
                roots.push((RealAlgebraic::from_isolated(f.clone(), lo, hi), f.clone()));
            }
        }
        roots.sort_by(|a, b| a.0.compare(&b.0));
        roots
            .into_iter()
            .map(|(r, f)| match r.as_rational() {
                Some(q) => (self.clone(), Elem::Q(q)),
                None => {
                    let m: KPoly = f.coeffs().iter().cloned().map(Elem::Q).collect();
                    let (lo, hi) = r.interval();
                    self.adjoin(&m, lo, hi)
                }
            })
            .collect()
    }

    // ---------- descent to Q ----------

    fn degrees(&self) -> Vec<usize> {
        (1..=self.height()).map(|k| self.minpoly(k).len() - 1).collect()
    }

    /// Coordinates in the monomial basis `prod alpha_k^(e_k)`.
    fn flatten(&self, a: &Elem, degs: &[usize], out: &mut [Q], base: usize) {
        match a {
            Elem::Q(q) => out[base] += q,
            Elem::P(k, v) => {
                let k = *k;
                let inner: usize = degs[..k - 1].iter().product();
                for (i, c) in v.iter().enumerate() {
                    self.flatten(c, degs, out, base + i * inner);
                }
            }
        }
    }

    /// Full reduction of every level modulo the current minimal polynomials.
    fn renorm(&self, a: &Elem) -> Elem {
        match a {
            Elem::Q(_) => a.clone(),
            Elem::P(k, v) => {
                let v = v.iter().map(|c| self.renorm(c)).collect();
                self.norm(*k, v)
            }
        }
    }

    /// The element as a real algebraic number over `Q`.
    pub fn to_real_algebraic(&self, a: &Elem) -> RealAlgebraic {
        if let Elem::Q(q) = a {
            return RealAlgebraic::from_rational(q.clone());
        }
        let degs = self.degrees();
        let dim: usize = degs.iter().product();
        // rows of reduced echelon form over the power basis, tracking
        // combinations of powers of `a`
        let mut basis: Vec<(Vec<Q>, Vec<Q>)> = Vec::new();
        let mut pw = Elem::one();
        let rel = 'search: {
            for n in 0..=dim {
                let mut v = vec![Q::zero(); dim];
                self.flatten(&self.renorm(&pw), &degs, &mut v, 0);
                let mut comb = vec![Q::zero(); dim + 1];
                comb[n] = Q::one();
                for (bv, bc) in &basis {
                    let piv = bv.iter().position(|c| !c.is_zero()).unwrap();
                    if !v[piv].is_zero() {
                        let f = &v[piv] / &bv[piv];
                        for i in 0..dim {
                            v[i] -= &f * &bv[i];
                        }
                        for i in 0..=dim {
                            comb[i] -= &f * &bc[i];
                        }
                    }
                }
                if v.iter().all(|c| c.is_zero()) {
                    break 'search comb;
                }
                basis.push((v, comb));
                pw = self.mul(&pw, a);
            }
            unreachable!("powers beyond the tower degree are dependent")
        };
        let rel = UniPoly::new(rel).squarefree_part();
        for f in factor_univariate(&rel) {
            let val = self.kp_eval(&Self::kp_from_q(&f), a);
            if !self.is_zero(&val) {
                continue;
            }
            if f.deg() == 1 {
                return RealAlgebraic::from_rational(-f.coeff(0) / f.coeff(1));
            }
            let mut w = Q::one();
            loop {
                let (l, h) = self.approx(a, &w);
                if sturm_count(&f, &l, &h).unwrap_or(0) == 1 {
                    return RealAlgebraic::from_isolated(f, l, h);
                }
                w /= two();
            }
        }
        unreachable!("some rational factor vanishes at the element")
    }
}

fn sturm_count_k(t: &Tower, p: &KPoly, lo: &Q, hi: &Q) -> usize {
    let chain = t.kp_sturm(&t.kp_squarefree(p));
    t.sign_changes(&chain, lo) - t.sign_changes(&chain, hi)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    fn kp(c: &[i64]) -> KPoly {
        c.iter().map(|&x| Elem::int(x)).collect()
    }

    #[test]
    fn sqrt2_arithmetic() {
        let t = Tower::new();
        let roots = t.real_roots(&kp(&[-2, 0, 1]));
        assert_eq!(roots.len(), 2);
        let (t, s) = roots[1].clone();
        let sq = t.mul(&s, &s);
        assert_eq!(sq, Elem::int(2));
        assert_eq!(t.sign(&s), 1);
        let inv = t.inv(&s);
        assert_eq!(t.sub(&t.mul(&inv, &s), &Elem::one()), Elem::zero());
        assert!((t.to_f64(&s) - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(t.sign(&t.sub(&s, &Elem::Q(Q::new(3.into(), 2.into())))), -1);
    }

    #[test]
    fn nested_radical_descends() {
        // alpha = sqrt 2, beta root of z^2 - alpha: beta = 2^(1/4)
        let t = Tower::new();
        let (t, a) = t.real_roots(&kp(&[-2, 0, 1]))[1].clone();
        let p = vec![t.neg(&a), Elem::zero(), Elem::one()];
        let roots = t.real_roots(&p);
        assert_eq!(roots.len(), 2);
        let (t2, b) = roots[1].clone();
        let r = t2.to_real_algebraic(&b);
        assert_eq!(r.minpoly(), &UniPoly::from_ints(&[-2, 0, 0, 0, 1]));
        assert!((r.approx() - 2f64.powf(0.25)).abs() < 1e-12);
        let s = t2.add(&b, &a);
        let r = t2.to_real_algebraic(&s);
        assert!((r.approx() - (2f64.powf(0.25) + 2f64.sqrt())).abs() < 1e-12);
    }

    #[test]
    fn reducible_level_splits() {
        // adjoin the positive root of (z^2 - 2)(z - 5) as a level over Q
        let t = Tower::new();
        let p = kp(&[10, -2, -5, 1]);
        let iv = t.kp_isolate(&p);
        assert_eq!(iv.len(), 3);
        let (t, a) = t.adjoin(&p, &iv[1].0, &iv[1].1);
        // a - 5 is a zero divisor in Q[z]/(p) but nonzero at sqrt 2
        let d = t.sub(&a, &Elem::int(5));
        assert!(!t.is_zero(&d));
        let inv = t.inv(&d);
        let one = t.mul(&inv, &d);
        assert!(t.is_zero(&t.sub(&one, &Elem::one())));
        let sq = t.sub(&t.mul(&a, &a), &Elem::int(2));
        assert!(t.is_zero(&sq));
        assert_eq!(t.to_real_algebraic(&a).degree(), 2);
    }

    #[test]
    fn rational_root_endpoint() {
        let t = Tower::new();
        let (_, r) = t.adjoin(&kp(&[-3, 0, 1]), &q(0), &q(2));
        assert_eq!(r.level(), 1);
        let (_, r) = t.adjoin(&kp(&[-4, 0, 1]), &q(0), &q(2));
        assert_eq!(r, Elem::int(2));
    }
}
