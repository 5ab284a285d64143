use std::fmt::Write as _;

use super::kmap::KMap;
use crate::puiseux::Direction;

/// Rooted tree: root, one node per tangent half-line, one leaf per
/// half-branch along it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BsTree {
    pub halflines: Vec<(Direction, u64)>,
}

impl BsTree {
    pub fn leaf_count(&self) -> u64 {
        self.halflines.iter().map(|h| h.1).sum()
    }

    /// Leaf counts of the half-line nodes, largest first. Two trees are
    /// isomorphic iff these agree.
    pub fn shape(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.halflines.iter().map(|h| h.1).collect();
        v.sort_unstable_by(|a, b| b.cmp(a));
        v
    }

    /// Indented text form.
    pub fn to_text(&self) -> String {
        let mut s = String::from("root\n");
        for (d, k) in &self.halflines {
            let _ = writeln!(s, "  {d}: {k} {}", if *k == 1 { "leaf" } else { "leaves" });
        }
        s
    }

    /// Graphviz description with edges root -> half-line -> leaf.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph bs_tree {\n  root [label=\"0\", shape=doublecircle];\n");
        for (i, (d, k)) in self.halflines.iter().enumerate() {
            let _ = writeln!(s, "  h{i} [label=\"{d}\"];");
            let _ = writeln!(s, "  root -> h{i};");
            for j in 0..*k {
                let _ = writeln!(s, "  h{i}_{j} [label=\"\", shape=point];");
                let _ = writeln!(s, "  h{i} -> h{i}_{j};");
            }
        }
        s.push_str("}\n");
        s
    }
}

pub fn bs_tree(km: &KMap) -> BsTree {
    BsTree {
        halflines: km.entries().to_vec(),
    }
}
