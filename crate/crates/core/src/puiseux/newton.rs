use num_traits::Zero;

use crate::arith::{BiPoly, UniPoly, Q};
use crate::{GermError, Result};

/// One side of the lower Newton polygon, with points `(i, j)` standing for
/// `x^i y^j`. A compact edge from `(i1, j1)` to `(i2, j2)` carries solutions
/// `y ~ c x^slope` with `slope = (i2 - i1) / (j1 - j2)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Edge {
    /// `None` for the terminal ray along the `x` axis, present when `y`
    /// divides the polynomial (the exact solution `y = 0`).
    pub slope: Option<Q>,
    pub start: (usize, usize),
    pub end: (usize, usize),
    /// `sum a_ij c^(j - j_end)` over support points on the edge.
    pub face: UniPoly,
}

/// Compact edges of the lower convex hull of `points`, from the leftmost
/// point (least `i`, then least `j`) down to the lowest one.
pub fn lower_hull(points: &[(usize, usize)]) -> Vec<((usize, usize), (usize, usize))> {
    let Some(&start) = points.iter().min_by_key(|p| (p.0, p.1)) else {
        return Vec::new();
    };
    let jmin = points.iter().map(|p| p.1).min().unwrap();
    let mut out = Vec::new();
    let mut cur = start;
    while cur.1 > jmin {
        // steepest descent; ties go to the farthest point
        let mut best: Option<(usize, usize)> = None;
        for &p in points {
            if p.1 >= cur.1 || p.0 <= cur.0 {
                continue;
            }
            best = Some(match best {
                None => p,
                Some(b) => {
                    // compare (p.j - cur.j)/(p.i - cur.i) with (b.j - cur.j)/(b.i - cur.i)
                    let lhs = (cur.1 - p.1) as i128 * (b.0 - cur.0) as i128;
                    let rhs = (cur.1 - b.1) as i128 * (p.0 - cur.0) as i128;
                    if lhs > rhs || (lhs == rhs && p.0 > b.0) {
                        p
                    } else {
                        b
                    }
                }
            });
        }
        let next = best.expect("a lower point exists");
        out.push((cur, next));
        cur = next;
    }
    out
}

/// Lower Newton polygon of `f` at the origin.
pub fn newton_polygon(f: &BiPoly) -> Result<Vec<Edge>> {
    if f.is_zero() {
        return Err(GermError::ZeroPolynomial);
    }
    if !f.constant_term().is_zero() {
        return Err(GermError::OriginNotOnCurve);
    }
    let terms = f.terms();
    let pts: Vec<(usize, usize)> = terms.iter().map(|t| (t.0, t.1)).collect();
    let mut edges = Vec::new();
    for (a, b) in lower_hull(&pts) {
        let slope = Q::new(((b.0 - a.0) as i64).into(), ((a.1 - b.1) as i64).into());
        let mut face = vec![Q::zero(); a.1 - b.1 + 1];
        for (i, j, c) in &terms {
            // on the edge iff (i - a.i)(a.j - b.j) == (a.j - j)(b.i - a.i)
            if *j <= a.1 && *j >= b.1 {
                let l = (*i as i64 - a.0 as i64) * (a.1 - b.1) as i64;
                let r = (a.1 as i64 - *j as i64) * (b.0 - a.0) as i64;
                if l == r {
                    face[j - b.1] = c.clone();
                }
            }
        }
        edges.push(Edge {
            slope: Some(slope),
            start: a,
            end: b,
            face: UniPoly::new(face),
        });
    }
    let jmin = pts.iter().map(|p| p.1).min().unwrap();
    if jmin > 0 {
        let imin = pts.iter().filter(|p| p.1 == jmin).map(|p| p.0).min().unwrap();
        edges.push(Edge {
            slope: None,
            start: (imin, jmin),
            end: (imin, jmin),
            face: UniPoly::x(),
        });
    }
    Ok(edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::parse_poly;

    fn q(a: i64, b: i64) -> Q {
        Q::new(a.into(), b.into())
    }

    #[test]
    fn cusp_polygon() {
        let e = newton_polygon(&parse_poly("y^2 - x^3").unwrap()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope, Some(q(3, 2)));
        assert_eq!(e[0].face, UniPoly::from_ints(&[-1, 0, 1]));
    }

    #[test]
    fn line_times_cusp() {
        let e = newton_polygon(&parse_poly("y*(y^2 - x^3)").unwrap()).unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].slope, Some(q(3, 2)));
        assert_eq!((e[0].start, e[0].end), ((0, 3), (3, 1)));
        assert_eq!(e[1].slope, None);
    }

    #[test]
    fn circle_face_has_no_real_roots() {
        let e = newton_polygon(&parse_poly("x^2 + y^2").unwrap()).unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e[0].slope, Some(q(1, 1)));
        assert_eq!(e[0].face, UniPoly::from_ints(&[1, 0, 1]));
        assert!(crate::arith::sturm::isolate_roots(&e[0].face).unwrap().is_empty());
    }

    #[test]
    fn errors() {
        assert!(matches!(newton_polygon(&BiPoly::zero()), Err(GermError::ZeroPolynomial)));
        assert!(matches!(
            newton_polygon(&parse_poly("x^2 + y^2 - 1").unwrap()),
            Err(GermError::OriginNotOnCurve)
        ));
    }

    #[test]
    fn collinear_points_join_one_edge() {
        let h = lower_hull(&[(0, 3), (1, 2), (2, 1), (3, 0), (5, 5)]);
        assert_eq!(h, vec![((0, 3), (3, 0))]);
        let h = lower_hull(&[(0, 2), (1, 1), (4, 0)]);
        assert_eq!(h, vec![((0, 2), (1, 1)), ((1, 1), (4, 0))]);
    }
}
