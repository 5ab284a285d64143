//! Number of allowed circles: the largest antipodally closed family of
//! simple cycles of the link, pairwise meeting in finitely many points.

use std::collections::{HashMap, HashSet};

use serde::Serialize;

use super::antipodal::{antipodal_check, AntipodalCorrespondence};
use super::arrangement::Arrangement;
use crate::{GermError, Result};

pub const DEFAULT_CYCLE_CAP: usize = 10_000;

/// Cycle cap, overridden by `GERMLAB_CYCLE_CAP`.
pub fn cycle_cap() -> usize {
    std::env::var("GERMLAB_CYCLE_CAP")
        .ok()
        .and_then(|s| s.trim().parse().ok())
        .filter(|&c| c > 0)
        .unwrap_or(DEFAULT_CYCLE_CAP)
}

#[derive(Clone, Debug, Serialize)]
pub struct Nac {
    pub value: usize,
    /// Edge sets of the circles of a maximal allowed family.
    pub witness: Vec<Vec<usize>>,
    pub cycles: usize,
    /// False when the cycle cap was hit and `value` is only a lower bound.
    pub exhaustive: bool,
}

/// Simple cycles of the link graph as sorted edge sets.
fn simple_cycles(arr: &Arrangement, cap: usize) -> (Vec<Vec<usize>>, bool) {
    let n = arr.vertices.len();
    let mut adj = vec![Vec::new(); n];
    for (k, e) in arr.edges.iter().enumerate() {
        adj[e.ends.0].push((k, e.ends.1));
        adj[e.ends.1].push((k, e.ends.0));
    }
    struct Walk<'a> {
        adj: &'a [Vec<(usize, usize)>],
        start: usize,
        path: Vec<usize>,
        on_path: Vec<bool>,
        seen: HashSet<Vec<usize>>,
        found: Vec<Vec<usize>>,
        cap: usize,
        capped: bool,
    }
    impl Walk<'_> {
        fn go(&mut self, v: usize) {
            for &(e, w) in &self.adj[v] {
                if self.capped {
                    return;
                }
                if self.path.contains(&e) {
                    continue;
                }
                if w == self.start {
                    if self.path.is_empty() {
                        continue;
                    }
                    let mut c = self.path.clone();
                    c.push(e);
                    c.sort_unstable();
                    if self.seen.insert(c.clone()) {
                        if self.found.len() == self.cap {
                            self.capped = true;
                            return;
                        }
                        self.found.push(c);
                    }
                } else if w > self.start && !self.on_path[w] {
                    self.on_path[w] = true;
                    self.path.push(e);
                    self.go(w);
                    self.path.pop();
                    self.on_path[w] = false;
                }
            }
        }
    }
    let mut walk = Walk {
        adj: &adj,
        start: 0,
        path: Vec::new(),
        on_path: vec![false; n],
        seen: HashSet::new(),
        found: Vec::new(),
        cap,
        capped: false,
    };
    for s in 0..n {
        walk.start = s;
        walk.go(s);
        if walk.capped {
            break;
        }
    }
    (walk.found, walk.capped)
}

fn image(corr: &AntipodalCorrespondence, c: &[usize]) -> Vec<usize> {
    let mut img: Vec<usize> = c.iter().map(|&k| corr.edge_map[k]).collect();
    img.sort_unstable();
    img
}

/// Orbit of one or two cycles that can enter an allowed family together.
struct Unit {
    members: Vec<usize>,
    edges: Vec<usize>,
}

struct Search<'a> {
    units: &'a [Unit],
    girth: usize,
    used: Vec<bool>,
    chosen: Vec<usize>,
    best: (usize, Vec<usize>),
}

impl Search<'_> {
    fn go(&mut self, i: usize, cur: usize, free: usize) {
        if cur > self.best.0 {
            self.best = (cur, self.chosen.clone());
        }
        if i == self.units.len() || cur + free / self.girth <= self.best.0 {
            return;
        }
        let u = &self.units[i];
        if u.edges.iter().all(|&e| !self.used[e]) {
            for &e in &u.edges {
                self.used[e] = true;
            }
            self.chosen.push(i);
            self.go(i + 1, cur + u.members.len(), free - u.edges.len());
            self.chosen.pop();
            for &e in &u.edges {
                self.used[e] = false;
            }
        }
        self.go(i + 1, cur, free);
    }
}

pub fn nac(arr: &Arrangement, cap: usize) -> Result<Nac> {
    let corr = antipodal_check(arr).ok_or(GermError::NotAntipodal)?;
    let (cycles, capped) = simple_cycles(arr, cap);
    let index: HashMap<&Vec<usize>, usize> = cycles.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let mut units = Vec::new();
    for (i, c) in cycles.iter().enumerate() {
        let Some(&j) = index.get(&image(&corr, c)) else { continue };
        if j == i {
            units.push(Unit { members: vec![i], edges: c.clone() });
        } else if i < j && c.iter().all(|e| cycles[j].binary_search(e).is_err()) {
            let mut edges = c.clone();
            edges.extend(&cycles[j]);
            units.push(Unit { members: vec![i, j], edges });
        }
    }
    // larger orbits first
    units.sort_by_key(|u| std::cmp::Reverse(u.members.len()));
    let girth = cycles.iter().map(Vec::len).min().unwrap_or(1);
    let mut search = Search {
        units: &units,
        girth,
        used: vec![false; arr.edges.len()],
        chosen: Vec::new(),
        best: (0, Vec::new()),
    };
    search.go(0, 0, arr.edges.len());
    let mut witness: Vec<Vec<usize>> = search
        .best
        .1
        .iter()
        .flat_map(|&u| units[u].members.iter().map(|&m| cycles[m].clone()))
        .collect();
    witness.sort();
    verify_allowed(arr, &corr, &witness)?;
    let result = Nac { value: witness.len(), witness, cycles: cycles.len(), exhaustive: !capped };
    if capped {
        return Err(GermError::NacLowerBound { bound: result.value, witness: result.witness });
    }
    Ok(result)
}

/// Checks that `family` is an allowed set: simple cycles of the link,
/// pairwise sharing no arc, closed under the antipodal map.
pub fn verify_allowed(arr: &Arrangement, corr: &AntipodalCorrespondence, family: &[Vec<usize>]) -> Result<()> {
    let bad = |m: String| Err(GermError::Internal(format!("witness is not an allowed set: {m}")));
    let mut owner = HashMap::new();
    for (i, c) in family.iter().enumerate() {
        if c.is_empty() || c.iter().any(|&e| e >= arr.edges.len()) {
            return bad(format!("member {i} is not a set of link arcs"));
        }
        let mut deg: HashMap<usize, usize> = HashMap::new();
        for &e in c {
            let (a, b) = arr.edges[e].ends;
            *deg.entry(a).or_default() += 1;
            *deg.entry(b).or_default() += 1;
            if let Some(j) = owner.insert(e, i) {
                return bad(format!("members {j} and {i} share an arc"));
            }
        }
        if deg.values().any(|&d| d != 2) || deg.len() != c.len() {
            return bad(format!("member {i} is not a simple closed curve"));
        }
        // connected: walk around from the first arc
        let mut seen = vec![c[0]];
        let mut at = arr.edges[c[0]].ends.1;
        while let Some(&e) = c.iter().find(|&&e| !seen.contains(&e) && (arr.edges[e].ends.0 == at || arr.edges[e].ends.1 == at)) {
            seen.push(e);
            let (a, b) = arr.edges[e].ends;
            at = if a == at { b } else { a };
        }
        if seen.len() != c.len() {
            return bad(format!("member {i} is disconnected"));
        }
    }
    for (i, c) in family.iter().enumerate() {
        let img = image(corr, c);
        if !family.contains(&img) {
            return bad(format!("the antipodal image of member {i} is missing"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::link::{build_arrangement, fixtures};

    #[test]
    fn fixture_values() {
        for (name, want) in [
            ("one_great_circle", 1),
            ("two_orthogonal", 2),
            ("cone", 2),
            ("nested_four", 4),
            ("crossed_cones", 4),
        ] {
            let arr = build_arrangement(&fixtures::load(name)).unwrap();
            let r = nac(&arr, DEFAULT_CYCLE_CAP).unwrap();
            assert_eq!(r.value, want, "{name}");
            assert!(r.exhaustive);
        }
        let arr = build_arrangement(&fixtures::load("two_orthogonal")).unwrap();
        assert_eq!(simple_cycles(&arr, DEFAULT_CYCLE_CAP).0.len(), 6);
    }

    #[test]
    fn cap_gives_lower_bound() {
        let arr = build_arrangement(&fixtures::load("two_orthogonal")).unwrap();
        match nac(&arr, 2) {
            Err(GermError::NacLowerBound { bound, witness }) => {
                assert_eq!(bound, witness.len());
                assert!(bound >= 1);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn rejects_bad_witness() {
        let arr = build_arrangement(&fixtures::load("cone")).unwrap();
        let corr = antipodal_check(&arr).unwrap();
        let r = nac(&arr, DEFAULT_CYCLE_CAP).unwrap();
        assert!(verify_allowed(&arr, &corr, &r.witness[..1]).is_err());
        let doubled = vec![r.witness[0].clone(), r.witness[0].clone()];
        assert!(verify_allowed(&arr, &corr, &doubled).is_err());
    }
}
