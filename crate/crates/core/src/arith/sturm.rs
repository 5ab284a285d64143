use num_traits::{One, Signed, Zero};

use super::realalg::RealAlgebraic;
use super::uni::{sign_of, UniPoly};
use super::Q;
use crate::{GermError, Result};

/// Sturm chain of a square-free polynomial, negated remainders normalised to
/// primitive integer form (positive scaling keeps every sign intact).
pub fn sturm_chain(p: &UniPoly) -> Vec<UniPoly> {
    let mut chain = vec![p.clone()];
    let d = p.derivative();
    if d.is_zero() {
        return chain;
    }
    chain.push(d);
    loop {
        let n = chain.len();
        let r = chain[n - 2].rem(&chain[n - 1]);
        if r.is_zero() {
            break;
        }
        chain.push(primitive_keep_sign(&-&r));
    }
    chain
}

// `primitive_rational` forces a positive leading coefficient; here only
// positive rescaling is allowed.
fn primitive_keep_sign(p: &UniPoly) -> UniPoly {
    let pr = p.primitive_rational();
    if p.lc().is_negative() {
        -&pr
    } else {
        pr
    }
}

fn sign_changes(chain: &[UniPoly], x: &Q) -> usize {
    let mut last = 0;
    let mut n = 0;
    for p in chain {
        let s = p.sign_at(x);
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            n += 1;
        }
        last = s;
    }
    n
}

/// Number of distinct real roots of `p` in the half-open interval `(a, b]`.
pub fn sturm_count(p: &UniPoly, a: &Q, b: &Q) -> Result<usize> {
    if p.is_zero() {
        return Err(GermError::IndeterminateRootCount);
    }
    if a >= b {
        return Ok(0);
    }
    let sf = p.squarefree_part();
    if sf.deg() == 0 {
        return Ok(0);
    }
    let chain = sturm_chain(&sf);
    Ok(sign_changes(&chain, a) - sign_changes(&chain, b))
}

/// Isolating intervals `(lo, hi]`, one per distinct real root, ascending.
pub fn isolate_intervals(p: &UniPoly) -> Vec<(Q, Q)> {
    let sf = p.squarefree_part();
    if sf.degree().is_none_or(|d| d == 0) {
        return Vec::new();
    }
    let chain = sturm_chain(&sf);
    let bound = sf.root_bound();
    let mut out = Vec::new();
    let mut stack = vec![(-bound.clone(), bound)];
    while let Some((lo, hi)) = stack.pop() {
        let n = sign_changes(&chain, &lo) - sign_changes(&chain, &hi);
        match n {
            0 => {}
            1 => out.push((lo, hi)),
            _ => {
                let mid = (&lo + &hi) / Q::from_integer(2.into());
                stack.push((lo, mid.clone()));
                stack.push((mid, hi));
            }
        }
    }
    out.sort_by(|a, b| a.0.cmp(&b.0));
    out
}

/// Real roots of `p` as algebraic numbers, sorted ascending.
///
/// Each root carries the irreducible factor of `p` it belongs to as its
/// minimal polynomial.
pub fn isolate_roots(p: &UniPoly) -> Result<Vec<RealAlgebraic>> {
    if p.is_zero() {
        return Err(GermError::IndeterminateRootCount);
    }
    let mut roots = Vec::new();
    for f in super::factor::factor_univariate(&p.squarefree_part()) {
        if f.deg() == 0 {
            continue;
        }
        for (lo, hi) in isolate_intervals(&f) {
            roots.push(RealAlgebraic::from_isolated(f.clone(), lo, hi));
        }
    }
    roots.sort();
    Ok(roots)
}

/// Sign of `p` at the unique root of `sf` inside `(lo, hi]`, where `sf`
/// is square-free. Refines a local copy of the interval as needed.
pub fn sign_at_root(p: &UniPoly, sf: &UniPoly, lo: &Q, hi: &Q) -> i32 {
    let g = p.gcd(sf);
    if g.deg() > 0 && sturm_count(&g, lo, hi).unwrap_or(0) > 0 {
        return 0;
    }
    let (mut lo, mut hi) = (lo.clone(), hi.clone());
    let pchain = sturm_chain(&p.squarefree_part());
    loop {
        // No root of p in [lo, hi] means p has constant sign there.
        let inside = sign_changes(&pchain, &lo) - sign_changes(&pchain, &hi);
        if inside == 0 && !p.eval(&lo).is_zero() {
            return p.sign_at(&hi);
        }
        let (nlo, nhi) = bisect_step(sf, &lo, &hi);
        lo = nlo;
        hi = nhi;
    }
}

/// One bisection step for the unique root of square-free `sf` in `(lo, hi]`.
pub fn bisect_step(sf: &UniPoly, lo: &Q, hi: &Q) -> (Q, Q) {
    let mid = (lo + hi) / Q::from_integer(2.into());
    let sm = sf.sign_at(&mid);
    let sh = sf.sign_at(hi);
    if sm == 0 {
        return (lo + (&mid - lo) / Q::from_integer(2.into()), mid);
    }
    if sh == 0 || sm != sh {
        (mid, hi.clone())
    } else {
        (lo.clone(), mid)
    }
}

/// Sign of a rational polynomial just to the right of `x`.
pub fn sign_right_of(p: &UniPoly, x: &Q) -> i32 {
    let mut q = p.clone();
    loop {
        let s = sign_of(&q.eval(x));
        if s != 0 || q.is_zero() {
            return s;
        }
        q = q.derivative();
    }
}

/// Width of an interval, used by callers deciding when to stop refining.
pub fn width(lo: &Q, hi: &Q) -> Q {
    (hi - lo).abs()
}

pub fn half() -> Q {
    Q::one() / Q::from_integer(2.into())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Q {
        Q::from_integer(n.into())
    }

    #[test]
    fn counts_from_examples() {
        assert_eq!(sturm_count(&UniPoly::from_ints(&[-1, 0, 1]), &q(-2), &q(2)).unwrap(), 2);
        assert_eq!(sturm_count(&UniPoly::from_ints(&[0, 0, 1]), &q(-1), &q(1)).unwrap(), 1);
        assert_eq!(sturm_count(&UniPoly::from_ints(&[-2, 0, 0, 1]), &q(0), &q(2)).unwrap(), 1);
        assert!(matches!(
            sturm_count(&UniPoly::zero(), &q(0), &q(1)),
            Err(GermError::IndeterminateRootCount)
        ));
    }

    #[test]
    fn half_open_endpoints() {
        let p = UniPoly::from_ints(&[-1, 0, 1]);
        assert_eq!(sturm_count(&p, &q(-1), &q(1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(-2), &q(-1)).unwrap(), 1);
        assert_eq!(sturm_count(&p, &q(1), &q(3)).unwrap(), 0);
    }

    #[test]
    fn isolation_examples() {
        let r = isolate_roots(&UniPoly::from_ints(&[-2, 0, 1])).unwrap();
        assert_eq!(r.len(), 2);
        assert!((r[0].approx() + 2f64.sqrt()).abs() < 1e-9);
        let r = isolate_roots(&UniPoly::from_ints(&[0, 0, 0, 1])).unwrap();
        assert_eq!(r.len(), 1);
        assert_eq!(r[0].minpoly(), &UniPoly::from_ints(&[0, 1]));
        let r = isolate_roots(&UniPoly::from_ints(&[3, -4, 1])).unwrap();
        assert_eq!(r[0].as_rational(), Some(q(1)));
        assert_eq!(r[1].as_rational(), Some(q(3)));
    }

    #[test]
    fn sign_at_sqrt2() {
        let sf = UniPoly::from_ints(&[-2, 0, 1]);
        // x - 3/2 at sqrt 2 is negative, x^2 - 2 vanishes.
        let p = UniPoly::new(vec![Q::new((-3).into(), 2.into()), Q::one()]);
        assert_eq!(sign_at_root(&p, &sf, &q(1), &q(2)), -1);
        assert_eq!(sign_at_root(&sf, &sf, &q(1), &q(2)), 0);
    }
}
