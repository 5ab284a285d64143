//! Piecewise-geodesic links on the unit sphere.
//!
//! A link is a finite union of closed polylines whose vertices are rational
//! unit vectors; consecutive vertices are joined by minor great-circle arcs.

mod antipodal;
mod arrangement;
pub mod geom;
mod nac;

use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Q;
use crate::{GermError, Result};

pub use antipodal::{antipodal_check, antipodal_parity, face_parities, AntipodalCorrespondence, CirclePairing, ParityReport};
pub use arrangement::{build_arrangement, crossing_distance, diameter, is_euler_cycle, Arrangement, Edge, Face, Site};
pub use nac::{cycle_cap, nac, verify_allowed, Nac, DEFAULT_CYCLE_CAP};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SphereLink {
    pub circles: Vec<Vec<[Q; 3]>>,
}

#[derive(Serialize, Deserialize)]
struct LinkFile {
    circles: Vec<Vec<[serde_json::Value; 3]>>,
}

fn parse_coord(v: &serde_json::Value) -> Result<Q> {
    let bad = || GermError::InvalidLink(format!("bad coordinate {v}"));
    match v {
        serde_json::Value::Number(n) => {
            let i = n.as_i64().ok_or_else(bad)?;
            Ok(Q::from_integer(i.into()))
        }
        serde_json::Value::String(s) => {
            let s = s.trim();
            let (n, d) = match s.split_once('/') {
                Some((n, d)) => (n.trim(), d.trim()),
                None => (s, "1"),
            };
            let n: num_bigint::BigInt = n.parse().map_err(|_| bad())?;
            let d: num_bigint::BigInt = d.parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(bad());
            }
            Ok(Q::new(n, d))
        }
        _ => Err(bad()),
    }
}

fn fmt_q(q: &Q) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl SphereLink {
    /// Checks the per-circle invariants that do not need the arrangement.
    pub fn new(circles: Vec<Vec<[Q; 3]>>) -> Result<Self> {
        if circles.is_empty() {
            return Err(GermError::InvalidLink("no circles".into()));
        }
        for (i, c) in circles.iter().enumerate() {
            if c.len() < 3 {
                return Err(GermError::InvalidLink(format!("circle {i} has fewer than 3 vertices")));
            }
            for (j, v) in c.iter().enumerate() {
                let n2 = v.iter().fold(Q::zero(), |acc, x| acc + x * x);
                if !n2.is_one() {
                    return Err(GermError::InvalidLink(format!(
                        "vertex {j} of circle {i} has squared norm {}",
                        fmt_q(&n2)
                    )));
                }
            }
            for a in 0..c.len() {
                for b in a + 1..c.len() {
                    if c[a] == c[b] {
                        return Err(GermError::InvalidLink(format!("circle {i} repeats vertex {a}")));
                    }
                }
            }
        }
        Ok(SphereLink { circles })
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: LinkFile = serde_json::from_str(text)?;
        let circles = file
            .circles
            .iter()
            .map(|c| {
                c.iter()
                    .map(|p| Ok([parse_coord(&p[0])?, parse_coord(&p[1])?, parse_coord(&p[2])?]))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        SphereLink::new(circles)
    }

    pub fn load(path: &Path) -> Result<Self> {
        SphereLink::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn to_json(&self) -> String {
        let circles: Vec<Vec<[serde_json::Value; 3]>> = self
            .circles
            .iter()
            .map(|c| c.iter().map(|p| p.clone().map(|x| serde_json::Value::String(fmt_q(&x)))).collect())
            .collect();
        serde_json::to_string(&LinkFile { circles }).expect("serializable")
    }

    /// Image under the antipodal map.
    pub fn negate(&self) -> SphereLink {
        SphereLink {
            circles: self
                .circles
                .iter()
                .map(|c| c.iter().map(|p| p.clone().map(|x| -x)).collect())
                .collect(),
        }
    }
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loader_checks_norm() {
        let ok = r#"{"circles": [[["1","0","0"],[0,1,0],["-1","0","0"],["0","-1","0"]]]}"#;
        let link = SphereLink::from_json(ok).unwrap();
        assert_eq!(SphereLink::from_json(&link.to_json()).unwrap(), link);
        let bad = r#"{"circles": [[["1/2","0","0"],[0,1,0],["-1","0","0"]]]}"#;
        assert!(matches!(SphereLink::from_json(bad), Err(GermError::InvalidLink(_))));
        let short = r#"{"circles": [[[1,0,0],[0,1,0]]]}"#;
        assert!(matches!(SphereLink::from_json(short), Err(GermError::InvalidLink(_))));
        let dec = r#"{"circles": [[[0.6,0.8,0],[0,1,0],[-1,0,0]]]}"#;
        assert!(SphereLink::from_json(dec).is_err());
    }

    #[test]
    fn fixtures_load() {
        for name in ["one_great_circle", "two_orthogonal", "cone", "nested_four", "crossed_cones"] {
            fixtures::load(name);
        }
    }
}
