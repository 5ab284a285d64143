use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgAction, ArgMatches, Args, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;

use germlab::arith::{BiPoly, Q};
use germlab::input::{parse_param, parse_poly};
use germlab::invariants::{
    analyze_param, analyze_poly, canonical_invariant, equivalent, realize, realize_text, Analysis, CurveInvariant,
    Report, Verdict,
};
use germlab::link::{
    antipodal_check, antipodal_parity, build_arrangement, cycle_cap, diameter, face_parities, is_euler_cycle, nac,
    CirclePairing, ParityReport, Site, SphereLink,
};
use germlab::oracle::{check_directions, parity_by_projection, sample_tangent_directions, DirectionCheck, Trial};
use germlab::par::Execution;
use germlab::puiseux::real_branches_with;
use germlab::{GermError, Result};

#[derive(Parser)]
#[command(name = "germlab", version, about = "Blow-spherical invariants of real curve germs and spherical links")]
struct Cli {
    /// Run all stages on the calling thread
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Analyze one germ
    Analyze(AnalyzeArgs),
    /// Compare two germs
    Compare(CompareArgs),
    /// Print the realization of an invariant
    Realize(RealizeArgs),
    /// Combinatorics of a link on the 2-sphere
    Link(LinkArgs),
}

#[derive(Args)]
struct AnalyzeArgs {
    /// Defining polynomial in x and y
    #[arg(long, required_unless_present = "param", conflicts_with = "param")]
    poly: Option<String>,
    /// Branch-list document with parametrizations in t
    #[arg(long)]
    param: Option<PathBuf>,
    #[arg(long)]
    json: bool,
    /// Write the blow-spherical tree in graphviz format
    #[arg(long, value_name = "PATH")]
    tree_out: Option<PathBuf>,
    /// Cross-check the parity by counting points
    #[arg(long)]
    oracle: bool,
    /// Number of random projections for --oracle
    #[arg(long, default_value_t = 5)]
    trials: usize,
}

#[derive(Args)]
struct CompareArgs {
    /// Polynomial input (two inputs in total, in order)
    #[arg(long, action = ArgAction::Append)]
    poly: Vec<String>,
    /// Branch-list input (two inputs in total, in order)
    #[arg(long, action = ArgAction::Append)]
    param: Vec<PathBuf>,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct RealizeArgs {
    /// Rows `[[r_minus, r_zero, r_plus], ...]`
    #[arg(long, value_name = "PATH")]
    invariant: PathBuf,
    /// Recompute the invariant of the realization
    #[arg(long)]
    verify: bool,
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
struct LinkArgs {
    /// Link document with closed polylines of unit vectors
    #[arg(long, value_name = "PATH")]
    file: PathBuf,
    /// Check that every vertex has even degree
    #[arg(long)]
    euler: bool,
    /// Largest crossing distance between faces
    #[arg(long)]
    diameter: bool,
    /// Crossing distance from a point to its antipode, mod 2
    #[arg(long)]
    parity: bool,
    /// Base point for --parity, `x,y,z` with rational entries (default: a point of face 0)
    #[arg(long, value_name = "X,Y,Z")]
    lambda: Option<String>,
    /// Fewest allowed cycles covering the link
    #[arg(long)]
    nac: bool,
    /// Check symmetry under x -> -x
    #[arg(long)]
    antipodal: bool,
    #[arg(long)]
    json: bool,
}

enum Input {
    Poly(String),
    Param(PathBuf),
}

fn analyze_input(input: &Input, exec: Execution) -> Result<(Analysis, Option<BiPoly>)> {
    match input {
        Input::Poly(s) => {
            let f = parse_poly(s)?;
            Ok((analyze_poly(&f, exec)?, Some(f)))
        }
        Input::Param(p) => Ok((analyze_param(&parse_param(&read(p)?)?)?, None)),
    }
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| GermError::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn emit<T: Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

#[derive(Serialize)]
struct OracleSection {
    parity: u8,
    agrees: bool,
    rule: String,
    trials: Vec<Trial>,
    radii_log2: Vec<u32>,
    tangent_check: DirectionCheck,
}

#[derive(Serialize)]
struct AnalyzeDoc {
    #[serde(flatten)]
    report: Report,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<OracleSection>,
}

const RADII: [u32; 2] = [20, 40];

fn oracle_section(a: &Analysis, f: &BiPoly, trials: usize, exec: Execution) -> Result<OracleSection> {
    let rep = parity_by_projection(f, trials, exec)?;
    let samples = sample_tangent_directions(f, &RADII);
    let exact: Vec<(f64, f64)> = a
        .kmap
        .entries()
        .iter()
        .map(|(d, _)| {
            let u = d.unit_approx();
            (u[0], u[1])
        })
        .collect();
    let smallest = samples.last().map(|s| s.angles.clone()).unwrap_or_default();
    Ok(OracleSection {
        parity: rep.parity,
        agrees: rep.parity == a.multiplicity.parity,
        rule: rep.rule,
        trials: rep.trials,
        radii_log2: RADII.to_vec(),
        tangent_check: check_directions(&smallest, &exact, 1e-3),
    })
}

fn cmd_analyze(args: &AnalyzeArgs, exec: Execution) -> Result<u8> {
    let input = match (&args.poly, &args.param) {
        (Some(p), _) => Input::Poly(p.clone()),
        (None, Some(p)) => Input::Param(p.clone()),
        (None, None) => unreachable!("clap requires an input"),
    };
    if args.oracle && args.poly.is_none() {
        return Err(GermError::Parse { line: 1, col: 1, msg: "--oracle needs --poly".into() });
    }
    let (a, f) = analyze_input(&input, exec)?;
    if let Some(path) = &args.tree_out {
        std::fs::write(path, a.tree.to_dot())?;
    }
    let oracle = match (&f, args.oracle) {
        (Some(f), true) => Some(oracle_section(&a, f, args.trials, exec)?),
        _ => None,
    };
    let code = match &oracle {
        Some(o) if !o.agrees => 1,
        _ => 0,
    };
    if args.json {
        emit(&AnalyzeDoc { report: a.report(), oracle });
    } else {
        let mut s = a.to_text();
        if let Some(o) = &oracle {
            let _ = writeln!(s, "oracle: parity={} ({})", o.parity, if o.agrees { "agrees" } else { "DISAGREES" });
            for t in &o.trials {
                let _ = writeln!(s, "  s={} count={}", t.s, t.stable_count.map_or("-".into(), |c| c.to_string()));
            }
            let _ = writeln!(
                s,
                "  tangent directions at radius 2^-{}: {}",
                RADII[RADII.len() - 1],
                if o.tangent_check.ok { "consistent" } else { "inconsistent" }
            );
        }
        print!("{s}");
    }
    Ok(code)
}

fn compare_inputs(m: &ArgMatches, args: &CompareArgs) -> Result<Vec<Input>> {
    let mut tagged: Vec<(usize, Input)> = Vec::new();
    if let Some(ix) = m.indices_of("poly") {
        tagged.extend(ix.zip(&args.poly).map(|(i, p)| (i, Input::Poly(p.clone()))));
    }
    if let Some(ix) = m.indices_of("param") {
        tagged.extend(ix.zip(&args.param).map(|(i, p)| (i, Input::Param(p.clone()))));
    }
    tagged.sort_by_key(|t| t.0);
    if tagged.len() != 2 {
        return Err(GermError::Parse {
            line: 1,
            col: 1,
            msg: format!("compare needs exactly two inputs, got {}", tagged.len()),
        });
    }
    Ok(tagged.into_iter().map(|t| t.1).collect())
}

#[derive(Serialize)]
struct CompareDoc {
    left: String,
    right: String,
    #[serde(flatten)]
    verdict: Verdict,
}

fn cmd_compare(m: &ArgMatches, args: &CompareArgs, exec: Execution) -> Result<u8> {
    let inputs = compare_inputs(m, args)?;
    let (a, _) = analyze_input(&inputs[0], exec)?;
    let (b, _) = analyze_input(&inputs[1], exec)?;
    let verdict = equivalent(&a, &b);
    let code = u8::from(!verdict.bs_equivalent);
    let doc = CompareDoc { left: a.input.clone(), right: b.input.clone(), verdict };
    if args.json {
        emit(&doc);
    } else {
        println!("left: {}", doc.left);
        println!("right: {}", doc.right);
        println!("bs_equivalent: {}", doc.verdict.bs_equivalent);
        println!("branch_by_branch: {}", doc.verdict.branch_by_branch);
        if let Some(ms) = &doc.verdict.matching {
            for m in ms {
                println!("  {} <-> {} (k={})", m.left, m.right, m.k);
            }
        }
    }
    Ok(code)
}

#[derive(Serialize)]
struct RealizeDoc {
    invariant: Vec<[u32; 3]>,
    polynomial: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    round_trip: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    recovered: Option<Vec<[u32; 3]>>,
}

fn rows(a: &CurveInvariant) -> Vec<[u32; 3]> {
    a.rows().iter().map(|r| [r.r_minus, r.r_zero, r.r_plus]).collect()
}

fn cmd_realize(args: &RealizeArgs, exec: Execution) -> Result<u8> {
    let a = CurveInvariant::from_json(&read(&args.invariant)?).map_err(|e| match e {
        GermError::Json(j) => GermError::InvalidInvariant(j.to_string()),
        e => e,
    })?;
    let mut doc = RealizeDoc { invariant: rows(&a), polynomial: realize_text(&a), round_trip: None, recovered: None };
    if args.verify {
        let back = canonical_invariant(&real_branches_with(&realize(&a), exec)?)?;
        doc.round_trip = Some(back == a);
        doc.recovered = Some(rows(&back));
    }
    if args.json {
        emit(&doc);
    } else {
        println!("{}", doc.polynomial);
        match doc.round_trip {
            Some(true) => println!("round-trip: OK"),
            Some(false) => println!("round-trip: FAILED, recovered {:?}", doc.recovered.as_deref().unwrap_or(&[])),
            None => {}
        }
    }
    Ok(u8::from(doc.round_trip == Some(false)))
}

fn parse_rational(s: &str) -> Result<Q> {
    let bad = || GermError::Parse { line: 1, col: 1, msg: format!("bad rational '{s}'") };
    let (n, d) = s.trim().split_once('/').unwrap_or((s.trim(), "1"));
    let n: num_bigint::BigInt = n.trim().parse().map_err(|_| bad())?;
    let d: num_bigint::BigInt = d.trim().parse().map_err(|_| bad())?;
    if d == 0.into() {
        return Err(bad());
    }
    Ok(Q::new(n, d))
}

fn parse_point(s: &str) -> Result<[Q; 3]> {
    let v = s.split(',').map(parse_rational).collect::<Result<Vec<_>>>()?;
    v.try_into().map_err(|_| GermError::Parse { line: 1, col: 1, msg: format!("expected x,y,z, got '{s}'") })
}

#[derive(Serialize)]
struct EulerSection {
    is_euler_cycle: bool,
    odd_vertices: Vec<usize>,
    components: usize,
}

#[derive(Serialize)]
struct DiameterSection {
    value: usize,
    faces: (usize, usize),
}

#[derive(Serialize)]
struct AntipodalSection {
    invariant: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    circles: Option<Vec<CirclePairing>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    face_map: Option<Vec<usize>>,
    /// `d(F, a(F)) mod 2` for every face.
    #[serde(skip_serializing_if = "Option::is_none")]
    face_parities: Option<Vec<usize>>,
}

#[derive(Serialize)]
struct NacSection {
    value: usize,
    exhaustive: bool,
    cycles: Option<usize>,
    witness: Vec<Vec<usize>>,
}

#[derive(Serialize, Default)]
struct LinkDoc {
    circles: usize,
    vertices: usize,
    edges: usize,
    faces: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    euler: Option<EulerSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    diameter: Option<DiameterSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    parity: Option<ParityReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    antipodal: Option<AntipodalSection>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nac: Option<NacSection>,
}

fn link_text(d: &LinkDoc) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "circles: {}  vertices: {}  edges: {}  faces: {}", d.circles, d.vertices, d.edges, d.faces);
    if let Some(e) = &d.euler {
        let _ = writeln!(s, "euler cycle: {} (components: {})", e.is_euler_cycle, e.components);
    }
    if let Some(x) = &d.diameter {
        let _ = writeln!(s, "diameter: {} (faces {} and {})", x.value, x.faces.0, x.faces.1);
    }
    if let Some(p) = &d.parity {
        let _ = writeln!(
            s,
            "parity: {} (d = {} between faces {} and {}, meridian crossings {})",
            p.parity, p.distance, p.faces.0, p.faces.1, p.meridian_crossings
        );
    }
    if let Some(a) = &d.antipodal {
        if !a.invariant {
            s.push_str("antipodal: absent\n");
        } else {
            let pairs: Vec<String> = match &a.circles {
                Some(cs) => cs
                    .iter()
                    .map(|c| match c {
                        CirclePairing::Fixed(i) => format!("{i} fixed"),
                        CirclePairing::Swapped(i, j) => format!("{i}<->{j}"),
                    })
                    .collect(),
                None => vec!["circles not permuted".into()],
            };
            let _ = writeln!(s, "antipodal: {}", pairs.join(", "));
        }
    }
    if let Some(n) = &d.nac {
        let _ = writeln!(s, "nac: {}{}", n.value, if n.exhaustive { "" } else { " (lower bound)" });
        for (i, c) in n.witness.iter().enumerate() {
            let _ = writeln!(s, "  circle {i}: edges {c:?}");
        }
    }
    s
}

fn cmd_link(args: &LinkArgs) -> Result<u8> {
    let link = SphereLink::load(&args.file).map_err(|e| match e {
        GermError::Json(j) => GermError::InvalidLink(j.to_string()),
        e => e,
    })?;
    let arr = build_arrangement(&link)?;
    let (v, e, f) = arr.euler_counts();
    let mut doc = LinkDoc { circles: arr.circles, vertices: v, edges: e, faces: f, ..Default::default() };
    let mut code = 0;
    if args.euler {
        let odd = arr.link_degrees().iter().enumerate().filter(|(_, d)| *d % 2 == 1).map(|(i, _)| i).collect();
        doc.euler = Some(EulerSection { is_euler_cycle: is_euler_cycle(&arr), odd_vertices: odd, components: arr.components });
    }
    if args.diameter {
        let (value, faces) = diameter(&arr);
        doc.diameter = Some(DiameterSection { value, faces });
    }
    if args.parity {
        let site = match &args.lambda {
            Some(s) => Site::Point(parse_point(s)?),
            None => Site::Face(0),
        };
        doc.parity = Some(antipodal_parity(&arr, &site)?);
    }
    if args.antipodal {
        doc.antipodal = Some(match antipodal_check(&arr) {
            Some(c) => AntipodalSection {
                invariant: true,
                circles: c.circles,
                face_map: Some(c.face_map),
                face_parities: Some(face_parities(&arr)?.iter().map(|t| t.2 % 2).collect()),
            },
            None => AntipodalSection { invariant: false, circles: None, face_map: None, face_parities: None },
        });
    }
    if args.nac {
        doc.nac = Some(match nac(&arr, cycle_cap()) {
            Ok(n) => NacSection { value: n.value, exhaustive: true, cycles: Some(n.cycles), witness: n.witness },
            Err(GermError::NacLowerBound { bound, witness }) => {
                eprintln!("germlab: cycle cap reached; nac is only a lower bound");
                code = 4;
                NacSection { value: bound, exhaustive: false, cycles: None, witness }
            }
            Err(e) => return Err(e),
        });
    }
    if args.json {
        emit(&doc);
    } else {
        print!("{}", link_text(&doc));
    }
    Ok(code)
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    let exec = if cli.sequential { Execution::Sequential } else { Execution::Parallel };
    let result = match &cli.cmd {
        Cmd::Analyze(a) => cmd_analyze(a, exec),
        Cmd::Compare(a) => cmd_compare(matches.subcommand_matches("compare").expect("subcommand"), a, exec),
        Cmd::Realize(a) => cmd_realize(a, exec),
        Cmd::Link(a) => cmd_link(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("germlab: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
