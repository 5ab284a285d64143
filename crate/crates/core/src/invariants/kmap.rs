use std::collections::BTreeMap;

use crate::puiseux::{Direction, RealBranch};

/// Tangent link of a curve germ: each limit direction with the number of
/// half-branches arriving along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KMap {
    entries: Vec<(Direction, u64)>,
}

impl KMap {
    pub fn entries(&self) -> &[(Direction, u64)] {
        &self.entries
    }

    pub fn get(&self, d: &Direction) -> u64 {
        self.entries
            .iter()
            .find(|(e, _)| e == d)
            .map_or(0, |(_, k)| *k)
    }

    /// The `k` values sorted ascending.
    pub fn k_multiset(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.entries.iter().map(|e| e.1).collect();
        v.sort_unstable();
        v
    }

    /// Number of half-branches.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|e| e.1).sum()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Group the two half-branches of every branch by limit direction.
pub fn k_map(branches: &[RealBranch]) -> KMap {
    let mut m: BTreeMap<Direction, u64> = BTreeMap::new();
    for b in branches {
        *m.entry(b.u.clone()).or_default() += 1;
        *m.entry(b.v.clone()).or_default() += 1;
    }
    KMap {
        entries: m.into_iter().collect(),
    }
}

/// Directions of the tangent link with odd `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OddPart {
    pub directions: Vec<Direction>,
}

impl OddPart {
    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    /// `v` present iff `-v` present.
    pub fn is_antipodal(&self) -> bool {
        self.directions.iter().all(|d| self.directions.contains(&d.neg()))
    }

    /// `(#C' / 2) mod 2`.
    pub fn parity(&self) -> u8 {
        ((self.directions.len() / 2) % 2) as u8
    }
}

pub fn odd_part(km: &KMap) -> OddPart {
    OddPart {
        directions: km
            .entries
            .iter()
            .filter(|(_, k)| k % 2 == 1)
            .map(|(d, _)| d.clone())
            .collect(),
    }
}
