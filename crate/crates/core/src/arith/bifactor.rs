//! Gcd, square-free decomposition and factorisation in `Q[x, y]`.

use num_traits::Zero;

use super::bipoly::BiPoly;
use super::factor::{factor_univariate, factor_with_multiplicity, may_divide, squarefree_mod_prime};
use super::uni::UniPoly;
use super::Q;

fn lc_y(f: &BiPoly) -> UniPoly {
    f.rows().last().cloned().unwrap_or_else(UniPoly::zero)
}

fn shift_y(f: &BiPoly, k: usize) -> BiPoly {
    let mut rows = vec![UniPoly::zero(); k];
    rows.extend(f.rows().iter().cloned());
    BiPoly::from_rows(rows)
}

fn prem(a: &BiPoly, b: &BiPoly) -> BiPoly {
    let n = b.deg_y();
    let lb = lc_y(b);
    let mut r = a.clone();
    while !r.is_zero() && r.deg_y() >= n {
        let k = r.deg_y() - n;
        let lr = lc_y(&r);
        r = &r.mul_x(&lb) - &shift_y(b, k).mul_x(&lr);
    }
    r
}

/// Exact quotient `f / g` in `Q[x, y]`, if it exists.
pub fn div_exact(f: &BiPoly, g: &BiPoly) -> Option<BiPoly> {
    if g.is_zero() {
        return None;
    }
    let n = g.deg_y();
    let lg = lc_y(g);
    let mut r = f.clone();
    let mut q = BiPoly::zero();
    while !r.is_zero() {
        if r.deg_y() < n {
            return None;
        }
        let k = r.deg_y() - n;
        let c = lc_y(&r).div_exact(&lg)?;
        let t = shift_y(&BiPoly::from_x(c), k);
        r = &r - &(&t * g);
        q = &q + &t;
    }
    Some(q)
}

fn primitive_y(f: &BiPoly) -> BiPoly {
    f.div_x(&f.content_x()).expect("content divides")
}

/// Greatest common divisor, normalised by `primitive_rational`.
pub fn gcd(f: &BiPoly, g: &BiPoly) -> BiPoly {
    if f.is_zero() {
        return g.primitive_rational();
    }
    if g.is_zero() {
        return f.primitive_rational();
    }
    let c = f.content_x().gcd(&g.content_x());
    let (mut a, mut b) = (primitive_y(f), primitive_y(g));
    if a.deg_y() < b.deg_y() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let r = prem(&a, &b);
        a = b;
        b = if r.is_zero() { r } else { primitive_y(&r) };
    }
    let a = if a.deg_y() == 0 { BiPoly::one() } else { a };
    a.mul_x(&c).primitive_rational()
}

fn squarefree_uni(p: &UniPoly) -> bool {
    squarefree_mod_prime(p) || p.gcd(&p.derivative()).deg() == 0
}

/// Small integers `0, -1, 1, -2, 2, ...` where the leading coefficient in
/// `y` does not vanish.
fn good_points(f: &BiPoly) -> impl Iterator<Item = Q> + '_ {
    let lc = lc_y(f);
    (0..64i64)
        .map(|n| Q::from_integer(if n % 2 == 0 { n / 2 } else { -(n + 1) / 2 }.into()))
        .filter(move |a| !lc.eval(a).is_zero())
}

/// `true` certifies that `f` has no repeated factor of positive `y`-degree:
/// some full-degree specialization `f(a, y)` is square-free. `false` is
/// inconclusive.
pub fn squarefree_in_y(f: &BiPoly) -> bool {
    good_points(f).take(6).any(|a| squarefree_mod_prime(&f.eval_x(&a)))
}

/// Square-free decomposition: pairs `(p, m)` with `f = c * prod p^m`, each
/// `p` square-free and the `p` pairwise coprime.
pub fn squarefree_decomposition(f: &BiPoly) -> Vec<(BiPoly, u32)> {
    let mut out = Vec::new();
    if f.is_zero() {
        return out;
    }
    let cont = f.content_x();
    for (i, a) in cont.squarefree_decomposition().into_iter().enumerate() {
        if a.deg() > 0 {
            out.push((BiPoly::from_x(a).primitive_rational(), i as u32 + 1));
        }
    }
    let pp = primitive_y(f);
    if pp.deg_y() == 0 {
        return out;
    }
    if squarefree_in_y(&pp) {
        out.push((pp.primitive_rational(), 1));
        out.sort_by_key(|p| p.1);
        return out;
    }
    // Yun over Q(x)[y] with exact divisions in Q[x, y]
    let fd = pp.derivative_y();
    let a0 = gcd(&pp, &fd);
    let mut b = div_exact(&pp, &a0).expect("gcd divides");
    let mut c = div_exact(&fd, &a0).expect("gcd divides");
    let mut d = &c - &b.derivative_y();
    let mut i = 1;
    loop {
        let a = gcd(&b, &d);
        if a.deg_y() > 0 {
            out.push((a.clone(), i));
        }
        b = div_exact(&b, &a).expect("gcd divides");
        if b.deg_y() == 0 {
            break;
        }
        c = div_exact(&d, &a).expect("gcd divides");
        d = &c - &b.derivative_y();
        i += 1;
    }
    out
}

/// Product of the distinct irreducible factors.
pub fn squarefree_part(f: &BiPoly) -> BiPoly {
    squarefree_decomposition(f)
        .into_iter()
        .fold(BiPoly::one(), |acc, (p, _)| &acc * &p)
        .primitive_rational()
}

/// Irreducible factorisation over `Q`: each factor primitive with positive
/// leading coefficient, paired with its multiplicity, in a deterministic
/// order (total degree, then printed form).
pub fn factor(f: &BiPoly) -> Vec<(BiPoly, u32)> {
    let mut out = Vec::new();
    for (part, m) in squarefree_decomposition(f) {
        if part.deg_y() == 0 {
            for (u, _) in factor_with_multiplicity(&part.row(0)) {
                out.push((BiPoly::from_x(u), m));
            }
        } else {
            for g in factor_squarefree_primitive(&part) {
                out.push((g, m));
            }
        }
    }
    out.sort_by(|a, b| {
        (a.0.total_degree(), a.0.to_string()).cmp(&(b.0.total_degree(), b.0.to_string()))
    });
    out
}

fn truncate_x(f: &BiPoly, d: usize) -> BiPoly {
    BiPoly::from_rows(
        f.rows()
            .iter()
            .map(|r| UniPoly::new(r.coeffs().iter().take(d + 1).cloned().collect()))
            .collect(),
    )
}

/// Inverse of a power series `p` modulo `x^(d+1)`; `p(0) != 0`.
fn series_inverse(p: &UniPoly, d: usize) -> UniPoly {
    let p0 = p.coeff(0);
    let mut inv = vec![p0.recip()];
    for k in 1..=d {
        let mut s = Q::zero();
        for i in 1..=k {
            s += p.coeff(i) * &inv[k - i];
        }
        inv.push(-s / &p0);
    }
    UniPoly::new(inv)
}

fn factor_squarefree_primitive(f: &BiPoly) -> Vec<BiPoly> {
    let n = f.deg_y();
    if n <= 1 {
        return vec![f.primitive_rational()];
    }
    let shift = good_points(f)
        .find(|a| squarefree_uni(&f.eval_x(a)))
        .expect("a square-free polynomial has good specializations");
    let g = f.shift_x(&shift);
    let facs: Vec<UniPoly> = factor_univariate(&g.eval_x(&Q::zero()))
        .into_iter()
        .map(|h| h.monic())
        .collect();
    if facs.len() == 1 {
        return vec![f.primitive_rational()];
    }
    let d = g.deg_x();
    let lifted = hensel_lift(&g, &facs, d);
    let mut found = recombine(&g, lifted, d);
    let back = -shift;
    for p in found.iter_mut() {
        *p = p.shift_x(&back).primitive_rational();
    }
    found
}

/// Lift `g(0, y) = lc(0) * prod h_i` to monic factors modulo `x^(d+1)`.
fn hensel_lift(g: &BiPoly, facs: &[UniPoly], d: usize) -> Vec<BiPoly> {
    let inv = series_inverse(&lc_y(g), d);
    let gm = truncate_x(&g.mul_x(&inv), d);
    let r = facs.len();
    let mut cofactor_inv = Vec::with_capacity(r);
    for i in 0..r {
        let others = facs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .fold(UniPoly::one(), |acc, (_, h)| &acc * h);
        let (gg, _s, t) = facs[i].ext_gcd(&others);
        debug_assert_eq!(gg.deg(), 0);
        cofactor_inv.push((t.scale(&gg.coeff(0).recip()), others));
    }
    let mut hs: Vec<BiPoly> = facs.iter().map(BiPoly::from_y).collect();
    for k in 1..=d {
        let prod = hs
            .iter()
            .fold(BiPoly::one(), |acc, h| truncate_x(&(&acc * h), k));
        let err = &gm - &prod;
        // coefficient of x^k as a polynomial in y
        let ek = UniPoly::new(err.rows().iter().map(|row| row.coeff(k)).collect());
        if ek.is_zero() {
            continue;
        }
        for i in 0..r {
            let delta = (&ek * &cofactor_inv[i].0).rem(&facs[i]);
            if delta.is_zero() {
                continue;
            }
            let term = BiPoly::from_rows(
                delta
                    .coeffs()
                    .iter()
                    .map(|c| UniPoly::monomial(c.clone(), k))
                    .collect(),
            );
            hs[i] = &hs[i] + &term;
        }
    }
    hs
}

fn recombine(g: &BiPoly, mut lifted: Vec<BiPoly>, d: usize) -> Vec<BiPoly> {
    let mut out = Vec::new();
    let mut g = g.clone();
    let mut size = 1;
    while 2 * size <= lifted.len() {
        let mut hit = None;
        for subset in subsets(lifted.len(), size) {
            let mut cand = BiPoly::from_x(lc_y(&g));
            for &i in &subset {
                cand = truncate_x(&(&cand * &lifted[i]), d);
            }
            if !may_divide(g.rows(), cand.rows()) {
                continue;
            }
            let cand = primitive_y(&cand);
            if let Some(q) = div_exact(&g, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                out.push(cand);
                g = q;
                let mut i = 0;
                lifted.retain(|_| {
                    let keep = !subset.contains(&i);
                    i += 1;
                    keep
                });
            }
            None => size += 1,
        }
    }
    if g.deg_y() > 0 {
        out.push(g);
    }
    out
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for j in i..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
}

/// Nonzero constant.
pub fn is_unit(p: &BiPoly) -> bool {
    p.is_constant() && !p.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bi(t: &[(usize, usize, i64)]) -> BiPoly {
        BiPoly::from_int_terms(t)
    }

    fn product(fs: &[(BiPoly, u32)]) -> BiPoly {
        fs.iter().fold(BiPoly::one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    #[test]
    fn gcd_of_products() {
        let a = bi(&[(0, 2, 1), (3, 0, -1)]);
        let b = bi(&[(0, 1, 1), (1, 0, -1)]);
        let c = bi(&[(0, 1, 1), (2, 0, 1)]);
        let g = gcd(&(&a * &b), &(&a * &c));
        assert_eq!(g, a.primitive_rational());
        assert!(is_unit(&gcd(&b, &c)));
    }

    #[test]
    fn squarefree_of_powers() {
        let a = bi(&[(0, 2, 1), (3, 0, -1)]);
        let b = bi(&[(0, 1, 1), (1, 0, -1)]);
        let f = &(&a.pow(2) * &b) * &BiPoly::x().pow(3);
        let sq = squarefree_decomposition(&f);
        let mut ms: Vec<u32> = sq.iter().map(|s| s.1).collect();
        ms.sort();
        assert_eq!(ms, vec![1, 2, 3]);
        assert_eq!(squarefree_part(&f), (&(&a * &b) * &BiPoly::x()).primitive_rational());
    }

    #[test]
    fn factor_lines_and_cusps() {
        // y^2 - x^2 splits, y^2 - 2x^2 does not over Q
        let f = bi(&[(0, 2, 1), (2, 0, -1)]);
        assert_eq!(factor(&f).len(), 2);
        let f = bi(&[(0, 2, 1), (2, 0, -2)]);
        assert_eq!(factor(&f).len(), 1);
        let cusp = bi(&[(0, 2, 1), (3, 0, -1)]);
        let other = bi(&[(0, 2, 1), (0, 0, 0), (5, 0, 1), (1, 1, 3)]);
        let prod = &(&cusp * &other) * &bi(&[(0, 1, 1), (2, 0, -1)]).pow(2);
        let fs = factor(&prod);
        assert_eq!(fs.len(), 3);
        assert_eq!(product(&fs), prod.primitive_rational());
    }

    #[test]
    fn factor_realisation_shape() {
        // ((y-x)^2 - (y+x)^3) ((y-2x)^2 + (y+2x)^3)
        let l = |a: i64, s: i64| {
            let u = &BiPoly::y() - &BiPoly::x().scale(&Q::from_integer(a.into()));
            let v = &BiPoly::y() + &BiPoly::x().scale(&Q::from_integer(a.into()));
            &u.pow(2) + &v.pow(3).scale(&Q::from_integer(s.into()))
        };
        let f = &l(1, -1) * &l(2, 1);
        let fs = factor(&f);
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs), f.primitive_rational());
    }
}
