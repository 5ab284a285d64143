//! Univariate factorisation over the rationals.
//!
//! Classic Zassenhaus: factor modulo a small prime with Cantor–Zassenhaus,
//! lift the factorisation quadratically to a modulus above the Mignotte
//! bound, then recombine subsets of modular factors by trial division.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::uni::UniPoly;
use super::Q;

/// Irreducible factors of a nonzero polynomial, each primitive with positive
/// leading coefficient, paired with multiplicities. Sorted by degree, then
/// coefficients, for determinism.
pub fn factor_with_multiplicity(p: &UniPoly) -> Vec<(UniPoly, u32)> {
    let mut out = Vec::new();
    for (i, part) in p.squarefree_decomposition().into_iter().enumerate() {
        if part.deg() == 0 {
            continue;
        }
        for f in factor_univariate(&part) {
            out.push((f, i as u32 + 1));
        }
    }
    out.sort_by(|a, b| poly_key(&a.0).cmp(&poly_key(&b.0)));
    out
}

fn poly_key(p: &UniPoly) -> (usize, Vec<BigInt>) {
    (p.deg(), p.to_primitive_ints())
}

/// Irreducible factors of a square-free polynomial (primitive, positive
/// leading coefficient). Constants yield an empty list.
pub fn factor_univariate(p: &UniPoly) -> Vec<UniPoly> {
    if p.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let f = p.to_primitive_ints();
    let mut out = Vec::new();
    // strip powers of x so the constant term is nonzero
    let lead_zeros = f.iter().take_while(|c| c.is_zero()).count();
    if lead_zeros > 0 {
        out.push(UniPoly::from_ints(&[0, 1]));
    }
    let f: Vec<BigInt> = f[lead_zeros..].to_vec();
    if f.len() > 1 {
        for g in zassenhaus(&f) {
            out.push(UniPoly::from_bigints(&g));
        }
    }
    out.sort_by_key(poly_key);
    out
}

fn zassenhaus(f: &[BigInt]) -> Vec<Vec<BigInt>> {
    let n = f.len() - 1;
    if n == 1 {
        return vec![f.to_vec()];
    }
    let (p, modular) = choose_prime(f);
    if modular.len() == 1 {
        return vec![f.to_vec()];
    }
    let bound = mignotte_bound(f);
    let pb = BigInt::from(p);
    let mut m = pb.clone();
    while m <= &bound * 2 {
        m = &m * &m;
    }
    let lifted = hensel_lift_all(f, &modular, p, &m);
    recombine(f, lifted, &m)
}

const LARGE_PRIMES: [u64; 4] = [2147483647, 2147483629, 2147483587, 2147483579];

/// `true` certifies that `p` is square-free: it stays square-free of the same
/// degree modulo some large prime. `false` is inconclusive.
pub fn squarefree_mod_prime(p: &UniPoly) -> bool {
    if p.is_zero() {
        return false;
    }
    let f = p.to_primitive_ints();
    LARGE_PRIMES.iter().any(|&q| {
        let fp = fp_from(&f, q);
        fp.len() == f.len() && fp_gcd(&fp, &fp_derivative(&fp, q), q).len() == 1
    })
}

fn q_mod(c: &Q, p: u64) -> Option<u64> {
    let pb = BigInt::from(p);
    let d = c.denom().mod_floor(&pb).to_u64()?;
    if d == 0 {
        return None;
    }
    let n = c.numer().mod_floor(&pb).to_u64()?;
    Some(n * fp_inv(d, p) % p)
}

/// Image of `sum_j rows[j](a) y^j` modulo `p`, with the leading row nonzero.
fn specialize_mod(rows: &[UniPoly], a: u64, p: u64) -> Option<Fp> {
    let mut out = Vec::with_capacity(rows.len());
    for r in rows {
        let mut acc = 0u64;
        for c in r.coeffs().iter().rev() {
            acc = (acc * a + q_mod(c, p)?) % p;
        }
        out.push(acc);
    }
    (out.last().is_some_and(|&c| c != 0)).then_some(out)
}

/// `false` proves that `c`, a polynomial in `y` with coefficients in `Q[x]`,
/// cannot divide `lc * g` for any polynomial multiplier; `true` is inconclusive.
pub fn may_divide(g: &[UniPoly], c: &[UniPoly]) -> bool {
    let p = LARGE_PRIMES[0];
    for a in 2..8u64 {
        if let (Some(gs), Some(cs)) = (specialize_mod(g, a, p), specialize_mod(c, a, p)) {
            return fp_divrem(&gs, &cs, p).1.is_empty();
        }
    }
    true
}

fn mignotte_bound(f: &[BigInt]) -> BigInt {
    let n = f.len() - 1;
    let norm2: BigInt = f.iter().map(|c| c * c).sum();
    let norm = norm2.sqrt() + 1;
    let lc = f.last().unwrap().abs();
    (BigInt::one() << n) * norm * lc
}

// ---------- arithmetic modulo a small prime ----------

type Fp = Vec<u64>;

fn fp_trim(mut a: Fp) -> Fp {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn fp_from(f: &[BigInt], p: u64) -> Fp {
    let pb = BigInt::from(p);
    fp_trim(
        f.iter()
            .map(|c| c.mod_floor(&pb).to_u64().unwrap())
            .collect(),
    )
}

fn fp_inv(a: u64, p: u64) -> u64 {
    fp_pow_scalar(a, p - 2, p)
}

fn fp_pow_scalar(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut r = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            r = r * a % p;
        }
        a = a * a % p;
        e >>= 1;
    }
    r
}

fn fp_sub(a: &Fp, b: &Fp, p: u64) -> Fp {
    let n = a.len().max(b.len());
    fp_trim(
        (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect(),
    )
}

fn fp_mul(a: &Fp, b: &Fp, p: u64) -> Fp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            v[i + j] = (v[i + j] + x * y) % p;
        }
    }
    fp_trim(v)
}

fn fp_divrem(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let db = b.len() - 1;
    if a.len() < b.len() {
        return (Vec::new(), a.clone());
    }
    let inv = fp_inv(*b.last().unwrap(), p);
    let mut r = a.clone();
    let mut q = vec![0u64; a.len() - db];
    for i in (0..q.len()).rev() {
        let c = r[i + db] * inv % p;
        if c == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = (r[i + j] + p - c * y % p) % p;
        }
        q[i] = c;
    }
    r.truncate(db);
    (fp_trim(q), fp_trim(r))
}

fn fp_monic(a: &Fp, p: u64) -> Fp {
    match a.last() {
        None => Vec::new(),
        Some(&l) => {
            let inv = fp_inv(l, p);
            a.iter().map(|&c| c * inv % p).collect()
        }
    }
}

fn fp_gcd(a: &Fp, b: &Fp, p: u64) -> Fp {
    let (mut x, mut y) = (a.clone(), b.clone());
    while !y.is_empty() {
        let r = fp_divrem(&x, &y, p).1;
        x = y;
        y = r;
    }
    fp_monic(&x, p)
}

/// Returns (s, t) with s*a + t*b = 1 (a, b coprime).
fn fp_bezout(a: &Fp, b: &Fp, p: u64) -> (Fp, Fp) {
    let (mut r0, mut r1) = (a.clone(), b.clone());
    let (mut s0, mut s1): (Fp, Fp) = (vec![1], Vec::new());
    let (mut t0, mut t1): (Fp, Fp) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = fp_divrem(&r0, &r1, p);
        r0 = std::mem::replace(&mut r1, r);
        let s = fp_sub(&s0, &fp_mul(&q, &s1, p), p);
        s0 = std::mem::replace(&mut s1, s);
        let t = fp_sub(&t0, &fp_mul(&q, &t1, p), p);
        t0 = std::mem::replace(&mut t1, t);
    }
    let inv = fp_inv(r0[0], p);
    let sc = |v: &Fp| fp_trim(v.iter().map(|&c| c * inv % p).collect());
    (sc(&s0), sc(&t0))
}

fn fp_derivative(a: &Fp, p: u64) -> Fp {
    fp_trim(
        a.iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| c * (i as u64 % p) % p)
            .collect(),
    )
}

fn fp_powmod(base: &Fp, mut e: BigInt, m: &Fp, p: u64) -> Fp {
    let mut r: Fp = vec![1];
    let mut b = fp_divrem(base, m, p).1;
    let two = BigInt::from(2);
    while e.sign() == Sign::Plus {
        if e.is_odd() {
            r = fp_divrem(&fp_mul(&r, &b, p), m, p).1;
        }
        e /= &two;
        if e.sign() == Sign::Plus {
            b = fp_divrem(&fp_mul(&b, &b, p), m, p).1;
        }
    }
    r
}

/// Distinct-degree factorisation of a monic square-free polynomial.
fn fp_ddf(f: &Fp, p: u64) -> Vec<(Fp, usize)> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    let x: Fp = vec![0, 1];
    let mut h = x.clone();
    let mut d = 0;
    while rest.len() > 1 {
        d += 1;
        if 2 * d > rest.len() - 1 {
            out.push((rest.clone(), rest.len() - 1));
            break;
        }
        h = fp_powmod(&h, BigInt::from(p), &rest, p);
        let g = fp_gcd(&fp_sub(&h, &x, p), &rest, p);
        if g.len() > 1 {
            rest = fp_divrem(&rest, &g, p).0;
            h = fp_divrem(&h, &rest, p).1;
            out.push((g, d));
        }
    }
    out
}

/// Cantor–Zassenhaus equal-degree splitting.
fn fp_edf(f: &Fp, d: usize, p: u64, rng: &mut ChaCha8Rng) -> Vec<Fp> {
    let n = f.len() - 1;
    if n == d {
        return vec![f.clone()];
    }
    let e: BigInt = (BigInt::from(p).pow(d as u32) - BigInt::one()) / BigInt::from(2);
    loop {
        let a: Fp = fp_trim((0..n).map(|_| rng.gen_range(0..p)).collect());
        if a.len() < 2 {
            continue;
        }
        let b = fp_sub(&fp_powmod(&a, e.clone(), f, p), &vec![1], p);
        let g = fp_gcd(&b, f, p);
        if g.len() > 1 && g.len() < f.len() {
            let h = fp_divrem(f, &g, p).0;
            let mut out = fp_edf(&g, d, p, rng);
            out.extend(fp_edf(&fp_monic(&h, p), d, p, rng));
            return out;
        }
    }
}

fn fp_factor(f: &Fp, p: u64) -> Vec<Fp> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed ^ p);
    let mut out = Vec::new();
    for (g, d) in fp_ddf(&fp_monic(f, p), p) {
        out.extend(fp_edf(&g, d, p, &mut rng));
    }
    out
}

const PRIMES: &[u64] = &[
    3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71, 73, 79, 83, 89, 97,
    101, 103, 107, 109, 113, 127, 131, 137, 139, 149, 151, 157, 163, 167, 173, 179, 181, 191, 193,
    197, 199, 211, 223, 227, 229, 233, 239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307,
    311, 313, 317, 331, 337, 347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421,
    431, 433, 439, 443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541,
];

fn choose_prime(f: &[BigInt]) -> (u64, Vec<Fp>) {
    let mut best: Option<(u64, Vec<Fp>)> = None;
    let mut tried = 0;
    for &p in PRIMES {
        let fp = fp_from(f, p);
        if fp.len() != f.len() {
            continue;
        }
        let g = fp_gcd(&fp, &fp_derivative(&fp, p), p);
        if g.len() > 1 {
            continue;
        }
        let facs = fp_factor(&fp, p);
        if best.as_ref().is_none_or(|b| facs.len() < b.1.len()) {
            best = Some((p, facs));
        }
        tried += 1;
        if tried >= 5 || best.as_ref().is_some_and(|b| b.1.len() == 1) {
            break;
        }
    }
    best.expect("no suitable prime for a square-free integer polynomial")
}

// ---------- Hensel lifting over Z / m ----------

type Zp = Vec<BigInt>;

fn z_trim(mut a: Zp) -> Zp {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn z_mod(a: &[BigInt], m: &BigInt) -> Zp {
    z_trim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn z_add(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    z_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn z_sub(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    z_trim(
        (0..n)
            .map(|i| (a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).mod_floor(m))
            .collect(),
    )
}

fn z_mul(a: &[BigInt], b: &[BigInt], m: &BigInt) -> Zp {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut v = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            v[i + j] += x * y;
        }
    }
    z_mod(&v, m)
}

fn z_scale(a: &[BigInt], c: &BigInt, m: &BigInt) -> Zp {
    z_mod(&a.iter().map(|x| x * c).collect::<Vec<_>>(), m)
}

/// Division by a monic polynomial modulo m.
fn z_divrem_monic(a: &[BigInt], h: &[BigInt], m: &BigInt) -> (Zp, Zp) {
    let dh = h.len() - 1;
    if a.len() < h.len() {
        return (Vec::new(), z_mod(a, m));
    }
    let mut r: Zp = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - dh];
    for i in (0..q.len()).rev() {
        let c = r[i + dh].mod_floor(m);
        if c.is_zero() {
            continue;
        }
        for (j, y) in h.iter().enumerate() {
            r[i + j] = (&r[i + j] - &c * y).mod_floor(m);
        }
        q[i] = c;
    }
    r.truncate(dh);
    (z_trim(q), z_mod(&r, m))
}

fn to_z(a: &Fp) -> Zp {
    a.iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift `f = g*h mod p` (h monic, g carrying lc f) to modulus `m_target`,
/// a power of p reached by repeated squaring.
fn hensel_pair(f: &[BigInt], g0: &Fp, h0: &Fp, p: u64, m_target: &BigInt) -> (Zp, Zp) {
    let (s0, t0) = fp_bezout(g0, h0, p);
    let mut m = BigInt::from(p);
    let (mut g, mut h, mut s, mut t) = (to_z(g0), to_z(h0), to_z(&s0), to_z(&t0));
    while &m < m_target {
        let m2 = &m * &m;
        let e = z_sub(&z_mod(f, &m2), &z_mul(&g, &h, &m2), &m2);
        let (q, r) = z_divrem_monic(&z_mul(&s, &e, &m2), &h, &m2);
        let g1 = z_add(&z_add(&g, &z_mul(&t, &e, &m2), &m2), &z_mul(&q, &g, &m2), &m2);
        let h1 = z_add(&h, &r, &m2);
        let b = z_sub(
            &z_add(&z_mul(&s, &g1, &m2), &z_mul(&t, &h1, &m2), &m2),
            &[BigInt::one()],
            &m2,
        );
        let (c, d) = z_divrem_monic(&z_mul(&s, &b, &m2), &h1, &m2);
        let s1 = z_sub(&s, &d, &m2);
        let t1 = z_sub(&z_sub(&t, &z_mul(&t, &b, &m2), &m2), &z_mul(&c, &g1, &m2), &m2);
        g = g1;
        h = h1;
        s = s1;
        t = t1;
        m = m2;
    }
    (z_mod(&g, m_target), z_mod(&h, m_target))
}

/// Lift all monic modular factors of `f` to modulus `m`; results are monic.
fn hensel_lift_all(f: &[BigInt], factors: &[Fp], p: u64, m: &BigInt) -> Vec<Zp> {
    if factors.len() == 1 {
        let lc = f.last().unwrap().mod_floor(m);
        let inv = lc.modinv(m).expect("leading coefficient invertible mod m");
        return vec![z_scale(f, &inv, m)];
    }
    let half = factors.len() / 2;
    let (a, b) = factors.split_at(half);
    let lcp = f.last().unwrap().mod_floor(&BigInt::from(p)).to_u64().unwrap();
    let mut g0: Fp = vec![lcp];
    for fa in a {
        g0 = fp_mul(&g0, fa, p);
    }
    let mut h0: Fp = vec![1];
    for fb in b {
        h0 = fp_mul(&h0, fb, p);
    }
    let (g, h) = hensel_pair(f, &g0, &h0, p, m);
    let mut out = hensel_lift_all(&g, a, p, m);
    out.extend(hensel_lift_all(&h, b, p, m));
    out
}

fn symmetric(a: &[BigInt], m: &BigInt) -> Zp {
    let half = m / 2;
    a.iter()
        .map(|c| {
            let c = c.mod_floor(m);
            if c > half {
                c - m
            } else {
                c
            }
        })
        .collect()
}

fn primitive(a: &[BigInt]) -> Zp {
    let mut g = BigInt::zero();
    for c in a {
        g = g.gcd(c);
    }
    if a.last().is_some_and(|c| c.is_negative()) {
        g = -g;
    }
    z_trim(a.iter().map(|c| c / &g).collect())
}

fn z_divides(f: &[BigInt], g: &[BigInt]) -> Option<Zp> {
    let fu = UniPoly::from_bigints(f);
    let gu = UniPoly::from_bigints(g);
    let q = fu.div_exact(&gu)?;
    if q.coeffs().iter().all(|c| c.is_integer()) {
        Some(q.coeffs().iter().map(|c| c.to_integer()).collect())
    } else {
        None
    }
}

fn recombine(f: &[BigInt], mut lifted: Vec<Zp>, m: &BigInt) -> Vec<Zp> {
    let mut out = Vec::new();
    let mut f = f.to_vec();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut found = false;
        let idx: Vec<usize> = (0..lifted.len()).collect();
        for subset in combinations(&idx, size) {
            let lc = f.last().unwrap().clone();
            let mut g: Zp = vec![lc.mod_floor(m)];
            for &i in &subset {
                g = z_mul(&g, &lifted[i], m);
            }
            let g = primitive(&symmetric(&g, m));
            if let Some(q) = z_divides(&f, &g) {
                out.push(g);
                f = q;
                let keep: Vec<Zp> = lifted
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, v)| v.clone())
                    .collect();
                lifted = keep;
                found = true;
                break;
            }
        }
        if !found {
            size += 1;
        }
    }
    if f.len() > 1 {
        out.push(primitive(&f));
    }
    out
}

fn combinations(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(items: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < k - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, k, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: &[i64]) -> UniPoly {
        UniPoly::from_ints(c)
    }

    fn product(fs: &[UniPoly]) -> UniPoly {
        fs.iter().fold(UniPoly::one(), |a, b| &a * b)
    }

    #[test]
    fn factors_small_products() {
        let f = &(&p(&[-2, 0, 1]) * &p(&[1, 1])) * &p(&[1, 0, 1]);
        let fs = factor_univariate(&f);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), f.primitive_rational());
    }

    #[test]
    fn irreducible_stays_whole() {
        // x^4 + 1 splits modulo every prime but is irreducible over Q.
        let f = p(&[1, 0, 0, 0, 1]);
        assert_eq!(factor_univariate(&f), vec![f]);
        let f = p(&[-2, 0, 0, 1]);
        assert_eq!(factor_univariate(&f).len(), 1);
    }

    #[test]
    fn swinnerton_dyer_like() {
        // (x^2-2)(x^2-3)(x^2-5)(x-7)(3x+1)
        let fs = [p(&[-2, 0, 1]), p(&[-3, 0, 1]), p(&[-5, 0, 1]), p(&[-7, 1]), p(&[1, 3])];
        let f = product(&fs);
        let got = factor_univariate(&f);
        assert_eq!(got.len(), 5);
        assert_eq!(product(&got), f);
    }

    #[test]
    fn multiplicities_reported() {
        let f = &p(&[-1, 1]).pow(3) * &p(&[0, 1]);
        let fs = factor_with_multiplicity(&f);
        assert_eq!(fs, vec![(p(&[-1, 1]), 3), (p(&[0, 1]), 1)]);
    }
}
