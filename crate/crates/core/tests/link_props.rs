mod common;

use germlab::arith::Q;
use germlab::link::geom::neg;
use germlab::link::{
    antipodal_check, build_arrangement, crossing_distance, diameter, is_euler_cycle, Arrangement, Site, SphereLink,
};
use germlab::GermError;
use proptest::prelude::*;

const NAMES: [&str; 5] = ["one_great_circle", "two_orthogonal", "cone", "nested_four", "crossed_cones"];

fn arrangement(name: &str) -> Arrangement {
    build_arrangement(&SphereLink::load(&common::fixture(name)).unwrap()).unwrap()
}

fn site(v: [i64; 3]) -> Site {
    Site::Point(v.map(|c| Q::from_integer(c.into())))
}

fn generic(a: &Arrangement, v: [i64; 3]) -> Option<Site> {
    let s = site(v);
    match a.locate(&s) {
        Ok(_) => Some(s),
        Err(GermError::NotGeneric(_)) => None,
        Err(e) => panic!("{e}"),
    }
}

fn point() -> impl Strategy<Value = [i64; 3]> {
    prop::array::uniform3(-40i64..=40).prop_filter("nonzero", |v| v.iter().any(|&c| c != 0))
}

#[test]
fn face_metric() {
    for name in NAMES {
        let a = arrangement(name);
        let n = a.faces.len();
        let d: Vec<Vec<usize>> = (0..n).map(|i| a.distances_from(i)).collect();
        let (delta, (s, t)) = diameter(&a);
        assert_eq!(d[s][t], delta);
        for i in 0..n {
            for j in 0..n {
                assert_eq!(d[i][j], d[j][i]);
                assert_eq!(d[i][j] == 0, i == j, "{name}");
                assert!(d[i][j] <= delta);
                for k in 0..n {
                    assert!(d[i][k] <= d[i][j] + d[j][k]);
                }
            }
        }
        assert!(is_euler_cycle(&a));
    }
}

#[test]
fn antipodal_faces() {
    for name in NAMES {
        let a = arrangement(name);
        let c = antipodal_check(&a).unwrap();
        for (f, &g) in c.face_map.iter().enumerate() {
            assert_eq!(c.face_map[g], f, "{name}");
            assert_eq!(a.faces[f].boundary.len(), a.faces[g].boundary.len());
        }
        for (e, &g) in c.edge_map.iter().enumerate() {
            assert_eq!(c.edge_map[g], e);
        }
    }
}

#[test]
fn negated_link_is_negated_arrangement() {
    for name in NAMES {
        let link = SphereLink::load(&common::fixture(name)).unwrap();
        let a = build_arrangement(&link).unwrap();
        let b = build_arrangement(&link.negate()).unwrap();
        let nv: Vec<_> = a.vertices.iter().map(neg).collect();
        assert_eq!(nv, b.vertices);
        assert_eq!(a.edges, b.edges);
        assert_eq!(a.faces.len(), b.faces.len());
        for f in &a.faces {
            let g = b.locate_ray(&neg(&f.rep)).unwrap();
            assert_eq!(f.boundary, b.faces[g].boundary, "{name}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn distances_of_points(p in point(), q in point(), r in point(), k in 1i64..5) {
        for name in NAMES {
            let a = arrangement(name);
            let (Some(sp), Some(sq), Some(sr)) = (generic(&a, p), generic(&a, q), generic(&a, r)) else {
                continue;
            };
            let pq = crossing_distance(&a, &sp, &sq).unwrap();
            prop_assert_eq!(pq, crossing_distance(&a, &sq, &sp).unwrap());
            prop_assert_eq!(crossing_distance(&a, &sp, &sp).unwrap(), 0);
            let pr = crossing_distance(&a, &sp, &sr).unwrap();
            let rq = crossing_distance(&a, &sr, &sq).unwrap();
            prop_assert!(pq <= pr + rq);
            prop_assert!(pq <= diameter(&a).0);
            let scaled = site(p.map(|c| c * k));
            prop_assert_eq!(a.locate(&sp).unwrap(), a.locate(&scaled).unwrap());
            let f = a.locate(&sp).unwrap();
            prop_assert_eq!(a.locate_ray(&a.faces[f].rep).unwrap(), f);
        }
    }

    #[test]
    fn antipodal_parity_is_constant(p in point()) {
        for name in NAMES {
            let a = arrangement(name);
            let Some(sp) = generic(&a, p) else { continue };
            let r = match germlab::link::antipodal_parity(&a, &sp) {
                Err(GermError::RegenerateLambda) => continue,
                r => r.unwrap(),
            };
            let want = usize::from(name == "one_great_circle");
            prop_assert_eq!(r.parity, want);
            prop_assert_eq!(r.meridian_crossings % 2, want);
        }
    }
}
