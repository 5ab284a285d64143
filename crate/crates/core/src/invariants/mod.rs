//! Tangent-link data, multiplicity parity, the canonical curve invariant,
//! blow-spherical trees and equivalence of curve germs.

mod analysis;
mod canonical;
mod kmap;
mod tree;

pub use analysis::{
    analyze_param, analyze_poly, equivalent, multiplicity, Analysis, Match, Multiplicity, Report,
    Verdict,
};
pub use canonical::{
    canonical_invariant, enumerate_invariants, realize, realize_text, CurveInvariant, Row,
};
pub use kmap::{k_map, odd_part, KMap, OddPart};
pub use tree::{bs_tree, BsTree};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::input::{parse_poly, parse_univariate, ParamBranchInput};
    use crate::par::Execution;
    use crate::puiseux::{real_branches, Direction};

    fn an(s: &str) -> Analysis {
        analyze_poly(&parse_poly(s).unwrap(), Execution::Sequential).unwrap()
    }

    fn rows(v: &[[u32; 3]]) -> CurveInvariant {
        CurveInvariant::new(v.iter().map(|r| Row::new(r[0], r[1], r[2])).collect()).unwrap()
    }

    #[test]
    fn kmaps() {
        let a = an("y^2 - x^3");
        assert_eq!(a.kmap.entries(), &[(Direction::from_ints(&[1, 0]), 2)]);
        assert!(a.odd.is_empty());
        let a = an("y*(y^2 - x^3)");
        assert_eq!(a.kmap.get(&Direction::from_ints(&[1, 0])), 3);
        assert_eq!(a.kmap.get(&Direction::from_ints(&[-1, 0])), 1);
        assert_eq!(a.odd.len(), 2);
        let a = an("y^3 - x^4");
        assert_eq!(a.odd.len(), 2);
        assert_eq!(a.multiplicity, Multiplicity { m: Some(3), ord_relevant: Some(3), parity: 1 });
    }

    #[test]
    fn multiplicities() {
        assert_eq!(multiplicity(&parse_poly("y").unwrap()).unwrap().parity, 1);
        assert_eq!(multiplicity(&parse_poly("y^3 - x^2").unwrap()).unwrap().parity, 0);
        let m = multiplicity(&parse_poly("y*(y^2 - x^3)*(x^2 + y^2)").unwrap()).unwrap();
        assert_eq!((m.m, m.ord_relevant), (Some(3), Some(3)));
        // one real branch of a degree-3 irreducible factor
        let m = multiplicity(&parse_poly("y^3 - 2*x^3").unwrap()).unwrap();
        assert_eq!((m.m, m.ord_relevant, m.parity), (Some(1), Some(3), 1));
        assert!(matches!(
            multiplicity(&parse_poly("x^2 + y^2").unwrap()),
            Err(crate::GermError::IsolatedOrigin)
        ));
    }

    #[test]
    fn invariants() {
        assert_eq!(an("y^2 - x^3").invariant, rows(&[[0, 0, 1]]));
        assert_eq!(an("y*(y^2 - x^3)").invariant, rows(&[[0, 1, 1]]));
        assert_eq!(an("(y - x)*(y + x)").invariant, rows(&[[0, 1, 0], [0, 1, 0]]));
        assert_eq!(an("(y^2 - x^3)*(y^2 + x^3)").invariant, rows(&[[1, 0, 1]]));
    }

    #[test]
    fn invariant_validation() {
        let bad = |v: &[[u32; 3]]| {
            CurveInvariant::new(v.iter().map(|r| Row::new(r[0], r[1], r[2])).collect()).is_err()
        };
        assert!(bad(&[[1, 0, 0]]));
        assert!(bad(&[]));
        assert!(bad(&[[0, 0, 0]]));
        assert!(bad(&[[0, 1, 0], [0, 0, 1]]));
        assert!(bad(&[[0, 0, 2], [0, 0, 1]]));
        assert!(!bad(&[[0, 0, 1], [0, 1, 0]]));
        assert_eq!(
            CurveInvariant::from_json("[[0,1,0]]").unwrap(),
            rows(&[[0, 1, 0]])
        );
        assert!(CurveInvariant::from_json("{\"rows\": [[1,0,0]]}").is_err());
    }

    #[test]
    fn realizations() {
        assert_eq!(realize_text(&rows(&[[0, 0, 1]])), "(y-x)^2-(y+x)^3");
        assert_eq!(realize_text(&rows(&[[0, 1, 0]])), "(y-x)^3-(y+x)^4");
        assert_eq!(
            realize_text(&rows(&[[1, 0, 1]])),
            "((y-x)^2+(y+x)^3)*((y-x)^2-(y+x)^3)"
        );
        for a in [rows(&[[0, 0, 1]]), rows(&[[0, 0, 2], [1, 2, 1]]), rows(&[[1, 0, 1]])] {
            let f = realize(&a);
            assert_eq!(parse_poly(&realize_text(&a)).unwrap(), f);
            assert_eq!(canonical_invariant(&real_branches(&f).unwrap()).unwrap(), a);
        }
        assert_eq!(enumerate_invariants(1, 1).len(), 5);
    }

    #[test]
    fn trees() {
        let t = an("y^2 - x^3").tree;
        assert_eq!(t.shape(), vec![2]);
        assert!(t.to_dot().contains("root -> h0"));
        assert_eq!(an("y*(y^2 - x^3)").tree.shape(), vec![3, 1]);
        assert_eq!(an("y").tree.shape(), vec![1, 1]);
        assert_eq!(an("y").tree.leaf_count(), 2);
    }

    #[test]
    fn equivalence() {
        let p = |cs: &[&str]| {
            let comps = cs.iter().map(|c| parse_univariate(c).unwrap()).collect();
            analyze_param(&[ParamBranchInput::new(comps).unwrap()]).unwrap()
        };
        let v = equivalent(&an("y"), &p(&["t", "t^2"]));
        assert!(v.bs_equivalent && v.branch_by_branch);
        assert_eq!(v.matching.unwrap().len(), 2);
        let v = equivalent(&an("y"), &an("y^2 - x^3"));
        assert!(!v.bs_equivalent && !v.branch_by_branch && v.matching.is_none());
        let v = equivalent(&an("y*(y^2 - x^3)"), &an("y*(y^2 - x^5)"));
        assert!(v.bs_equivalent && v.branch_by_branch);
        // same tangent data, different grouping by line
        let v = equivalent(&an("(y^2 - x^3)*(y^2 + x^3)"), &an("(y^2 - x^3)*(x^2 - y^3)"));
        assert!(v.bs_equivalent);
        assert!(!v.branch_by_branch);
        assert_eq!(p(&["t^2", "t^3"]).multiplicity.m, None);
    }

    #[test]
    fn report_serializes() {
        let r = serde_json::to_value(an("y*(y^2 - x^3)").report()).unwrap();
        assert_eq!(r["multiplicity"]["parity"], 1);
        assert_eq!(r["invariant"]["rows"][0], serde_json::json!([0, 1, 1]));
        assert_eq!(r["branches"].as_array().unwrap().len(), 2);
    }
}
