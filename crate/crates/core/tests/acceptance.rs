//! End-to-end acceptance run: one PASS/FAIL line per criterion.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use germlab::arith::{BiPoly, UniPoly, Q};
use germlab::input::{parse_poly, ParamBranchInput};
use germlab::invariants::{analyze_poly, bs_tree, canonical_invariant, enumerate_invariants, equivalent, realize, Analysis};
use germlab::link::{
    antipodal_check, antipodal_parity, build_arrangement, diameter, face_parities, nac, verify_allowed,
    DEFAULT_CYCLE_CAP, Site, SphereLink,
};
use germlab::oracle::parity_by_projection;
use germlab::par::{self, Execution};
use germlab::puiseux::{is_c1_regular, normalize_param, real_branches, tangent_halflines};
use num_integer::Integer;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn an(s: &str) -> Result<Analysis, String> {
    let f = parse_poly(s).map_err(|e| format!("{s}: {e}"))?;
    analyze_poly(&f, Execution::Parallel).map_err(|e| format!("{s}: {e}"))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn zariski_parities() -> Outcome {
    let x = an("y")?;
    let y = an("y^3 - x^2")?;
    check(x.multiplicity.parity == 1, || "parity of y is not 1".into())?;
    check(y.multiplicity.parity == 0, || "parity of y^3 - x^2 is not 0".into())?;
    check(!equivalent(&x, &y).bs_equivalent, || "y and y^3 - x^2 compare as equivalent".into())?;
    Ok("y -> 1, y^3 - x^2 -> 0, not equivalent".into())
}

fn example_trees() -> Outcome {
    let a = bs_tree(&an("y^2-x^3")?.kmap);
    let b = bs_tree(&an("y*(y^2-x^3)")?.kmap);
    check(a.shape() == [2], || format!("cusp tree shape {:?}", a.shape()))?;
    check(b.shape() == [3, 1], || format!("second tree shape {:?}", b.shape()))?;
    Ok("shapes [2] and [3, 1]".into())
}

fn halfline_trichotomy() -> Outcome {
    let mut n = 0;
    for b in 2..=13u32 {
        for a in 1..b {
            if a.gcd(&b) != 1 {
                continue;
            }
            let mono = |e: u32| UniPoly::monomial(Q::from_integer(1.into()), e as usize);
            let br = normalize_param(&ParamBranchInput::new(vec![mono(a), mono(b)]).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            let (u, v) = tangent_halflines(&br);
            let regular = is_c1_regular(&br);
            let antipodal = v == u.neg();
            check(regular == (a % 2 == 1) && antipodal == regular, || {
                format!("(t^{a}, t^{b}): regular={regular} antipodal={antipodal}")
            })?;
            n += 1;
        }
    }
    check(n >= 20, || format!("only {n} cusps"))?;
    Ok(format!("{n} monomial cusps"))
}

fn round_trip() -> Outcome {
    let all = enumerate_invariants(3, 2);
    let bad: Vec<String> = par::map(Execution::Parallel, &all, |a| {
        match real_branches(&realize(a)).and_then(|b| canonical_invariant(&b)) {
            Ok(back) if back == *a => None,
            Ok(back) => Some(format!("{a} -> {back}")),
            Err(e) => Some(format!("{a}: {e}")),
        }
    })
    .into_iter()
    .flatten()
    .collect();
    check(bad.is_empty(), || format!("{} failures, first {}", bad.len(), bad[0]))?;
    Ok(format!("{} invariants", all.len()))
}

fn parity_triple() -> Outcome {
    let corpus = common::corpus();
    check(corpus.len() >= 30, || format!("corpus has {} members", corpus.len()))?;
    let rows: Vec<Result<(), String>> = par::map(Execution::Parallel, &corpus, |s| {
        let a = an(s)?;
        let ord = (a.multiplicity.ord_relevant.ok_or("no order")? % 2) as u8;
        let half = ((a.odd.len() / 2) % 2) as u8;
        let f = parse_poly(s).map_err(|e| e.to_string())?;
        let oracle = parity_by_projection(&f, 5, Execution::Sequential).map_err(|e| format!("{s}: {e}"))?;
        check(ord == half && half == oracle.parity, || {
            format!("{s}: ord {ord}, odd part {half}, oracle {}", oracle.parity)
        })
    });
    let bad: Vec<String> = rows.into_iter().filter_map(Result::err).collect();
    check(bad.is_empty(), || format!("{} disagreements: {}", bad.len(), bad.join("; ")))?;
    Ok(format!("{} polynomials, oracle conclusive on all", corpus.len()))
}

fn load(name: &str) -> Result<SphereLink, String> {
    SphereLink::load(&common::fixture(name)).map_err(|e| format!("{name}: {e}"))
}

fn link_parity() -> Outcome {
    let arr = |n: &str| build_arrangement(&load(n)?).map_err(|e| format!("{n}: {e}"));
    let one = arr("one_great_circle")?;
    let p = antipodal_parity(&one, &Site::Face(0)).map_err(|e| e.to_string())?;
    check(p.parity == 1, || "one great circle: parity is not 1".into())?;
    let two = arr("two_orthogonal")?;
    let p = antipodal_parity(&two, &Site::Face(0)).map_err(|e| e.to_string())?;
    check(p.parity == 0, || "two circles: parity is not 0".into())?;
    // the cone x^2 + y^2 = z^2 has multiplicity 2
    let cone = arr("cone")?;
    let d = diameter(&cone).0;
    check(d == 2 && d % 2 == 0, || format!("cone diameter {d}"))?;
    let mut pairs = 0;
    for name in ["one_great_circle", "two_orthogonal", "cone", "nested_four", "crossed_cones"] {
        let a = arr(name)?;
        let ps = face_parities(&a).map_err(|e| e.to_string())?;
        let first = ps[0].2 % 2;
        check(ps.iter().all(|t| t.2 % 2 == first), || format!("{name}: parity depends on the face"))?;
        for f in 0..a.faces.len() {
            let r = antipodal_parity(&a, &Site::Face(f)).map_err(|e| e.to_string())?;
            check(r.parity == first, || format!("{name}: face {f} parity {}", r.parity))?;
        }
        pairs += ps.len();
    }
    Ok(format!("parities 1 and 0, cone diameter 2, {pairs} antipodal face pairs consistent"))
}

fn nac_fixtures() -> Outcome {
    // multiplicities: the cone has degree 2, the four-circle surfaces degree 4
    let mut out = Vec::new();
    for (name, want, m) in [("cone", 2, 2), ("crossed_cones", 4, 4), ("nested_four", 4, 4)] {
        let a = build_arrangement(&load(name)?).map_err(|e| e.to_string())?;
        let r = nac(&a, DEFAULT_CYCLE_CAP).map_err(|e| format!("{name}: {e}"))?;
        let corr = antipodal_check(&a).ok_or(format!("{name}: not antipodal"))?;
        verify_allowed(&a, &corr, &r.witness).map_err(|e| format!("{name}: {e}"))?;
        check(r.value == want && r.value % 2 == m % 2 && r.exhaustive, || {
            format!("{name}: nac {} (expected {want})", r.value)
        })?;
        out.push(format!("{name} {}", r.value));
    }
    Ok(out.join(", "))
}

fn scaled(f: &BiPoly, l: &Q) -> BiPoly {
    let z = Q::from_integer(0.into());
    f.linear_subst(l, &z, &z, l)
}

fn invariance() -> Outcome {
    let corpus = common::corpus();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let picks: Vec<(String, Q)> = corpus
        .choose_multiple(&mut rng, 20)
        .map(|s| {
            let (n, d) = (rng.gen_range(1..=7i64), rng.gen_range(1..=5i64));
            let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
            (s.clone(), Q::new((sign * n).into(), d.into()))
        })
        .collect();
    let rows = par::map(Execution::Parallel, &picks, |(s, l)| -> Result<(), String> {
        let f = parse_poly(s).map_err(|e| e.to_string())?;
        let base = analyze_poly(&f, Execution::Sequential).map_err(|e| e.to_string())?;
        for (what, g) in [("scaled", scaled(&f, l)), ("swapped", f.swap_xy())] {
            let other = analyze_poly(&g, Execution::Sequential).map_err(|e| e.to_string())?;
            check(
                other.kmap.k_multiset() == base.kmap.k_multiset() && other.invariant == base.invariant,
                || format!("{s} {what} by {l}: {} vs {}", other.invariant, base.invariant),
            )?;
        }
        Ok(())
    });
    let bad: Vec<String> = rows.into_iter().filter_map(Result::err).collect();
    check(bad.is_empty(), || bad.join("; "))?;
    Ok("20 corpus members, scaled and swapped".into())
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("zariski parities", zariski_parities),
        ("example trees", example_trees),
        ("half-line trichotomy", halfline_trichotomy),
        ("invariant round trip", round_trip),
        ("parity triple agreement", parity_triple),
        ("link parity and diameter", link_parity),
        ("nac fixtures", nac_fixtures),
        ("invariance smoke test", invariance),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let r = run();
        let secs = t.elapsed().as_secs_f64();
        match r {
            Ok(detail) => println!("PASS {} {name}: {detail} ({secs:.1}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
