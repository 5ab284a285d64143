use std::cmp::Ordering;
use std::fmt;

use crate::arith::{AlgebraicDescriptor, RealAlgebraic, Q};
use crate::{GermError, Result};

/// A point of the unit sphere up to positive scaling, stored with its first
/// coordinate of maximal absolute value equal to `+1` or `-1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Direction {
    coords: Vec<RealAlgebraic>,
}

impl Direction {
    pub fn new(coords: Vec<RealAlgebraic>) -> Result<Self> {
        let abs: Vec<RealAlgebraic> = coords.iter().map(|c| c.abs()).collect();
        let mut imax = 0;
        for i in 1..abs.len() {
            if abs[i] > abs[imax] {
                imax = i;
            }
        }
        let m = &abs[imax];
        if m.is_zero() {
            return Err(GermError::DegenerateBranch("zero tangent vector".into()));
        }
        let out = match m.as_rational() {
            Some(mq) => {
                let inv = mq.recip();
                coords.iter().map(|c| c.scale(&inv)).collect()
            }
            None => {
                let inv = m.recip().expect("nonzero");
                let mut out = Vec::with_capacity(coords.len());
                for (i, c) in coords.iter().enumerate() {
                    if i == imax {
                        out.push(RealAlgebraic::from_int(c.signum() as i64));
                        continue;
                    }
                    let cq = c.as_rational().ok_or_else(|| {
                        GermError::Internal("direction with two irrational coordinates".into())
                    })?;
                    out.push(inv.scale(&cq));
                }
                out
            }
        };
        Ok(Direction { coords: out })
    }

    pub fn from_rationals(v: &[Q]) -> Result<Self> {
        Self::new(v.iter().cloned().map(RealAlgebraic::from_rational).collect())
    }

    pub fn from_ints(v: &[i64]) -> Self {
        Self::new(v.iter().map(|&c| RealAlgebraic::from_int(c)).collect())
            .expect("nonzero integer vector")
    }

    pub fn coords(&self) -> &[RealAlgebraic] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// The antipodal direction.
    pub fn neg(&self) -> Self {
        Direction {
            coords: self.coords.iter().map(|c| c.neg()).collect(),
        }
    }

    /// Representative of the line through `self`: whichever of `±self` has
    /// its first nonzero coordinate positive.
    pub fn line_rep(&self) -> Self {
        let first = self.coords.iter().find(|c| !c.is_zero()).expect("nonzero");
        if first.signum() > 0 {
            self.clone()
        } else {
            self.neg()
        }
    }

    pub fn approx(&self) -> Vec<f64> {
        self.coords.iter().map(|c| c.approx()).collect()
    }

    /// Unit vector approximation.
    pub fn unit_approx(&self) -> Vec<f64> {
        let v = self.approx();
        let n = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        v.iter().map(|x| x / n).collect()
    }

    pub fn descriptor(&self) -> Vec<AlgebraicDescriptor> {
        self.coords.iter().map(|c| c.descriptor()).collect()
    }

    /// Short label like `(1, 0)` or `(1, 1.259921)`.
    pub fn label(&self) -> String {
        let parts: Vec<String> = self
            .coords
            .iter()
            .map(|c| match c.as_rational() {
                Some(q) => q.to_string(),
                None => format!("{:.6}", c.approx()),
            })
            .collect();
        format!("({})", parts.join(", "))
    }
}

impl Ord for Direction {
    fn cmp(&self, other: &Self) -> Ordering {
        self.coords.cmp(&other.coords)
    }
}

impl PartialOrd for Direction {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.label())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn positive_scaling_is_identity() {
        let a = Direction::from_ints(&[2, 0]);
        let b = Direction::from_ints(&[5, 0]);
        assert_eq!(a, b);
        assert_eq!(a, Direction::from_ints(&[1, 0]));
        assert_ne!(a, Direction::from_ints(&[-1, 0]));
        assert_eq!(Direction::from_ints(&[3, -6]).coords()[1].as_rational(), Some(Q::from_integer((-1).into())));
        assert_eq!(a.neg().line_rep(), a);
    }

    #[test]
    fn irrational_slope() {
        let c = crate::arith::sturm::isolate_roots(&crate::arith::UniPoly::from_ints(&[-8, 0, 1]))
            .unwrap()[1]
            .clone();
        // (1, 2 sqrt 2) has max coordinate 2 sqrt 2
        let d = Direction::new(vec![RealAlgebraic::from_int(1), c]).unwrap();
        assert_eq!(d.coords()[1], RealAlgebraic::from_int(1));
        assert!((d.coords()[0].approx() - 1.0 / 8f64.sqrt()).abs() < 1e-12);
    }
}
