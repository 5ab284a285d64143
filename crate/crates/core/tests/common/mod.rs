#![allow(dead_code)]

use germlab::invariants::{enumerate_invariants, realize_text};

/// Curves from the worked examples.
pub const NAMED: &[&str] = &[
    "y",
    "y^3 - x^2",
    "y^2 - x^3",
    "y*(y^2 - x^3)",
    "y^2 - x^5",
    "y^3 - x^4",
    "x^3 - 4*y^2",
    "x*y",
    "y^2 - x^2",
    "x*y*(x - y)",
    "y^2 - x^4",
    "(y - x^2)*(y - 2*x^2)",
    "(y^2 - x^3)*(x^2 - y^3)",
    "y^3 - x^5",
    "x^2 - y^5",
    "y*(y - x^2)*(y + x^3)",
    "y^2 - 2*x*y + x^2 - x^3",
    "x^4 + y^4 - 3*x^2*y^2 - y^5",
];

/// Products with factors that have no real points near the origin.
pub const WITH_COMPLEX: &[&str] = &[
    "(x^2 + y^2)*y",
    "(x^2 + y^2)*(y^2 - x^3)",
    "(x^2 + y^2)*(y^3 - x^2)",
    "(x^2 + y^2)^2*x*y",
    "(x^2 + 2*y^2)*(y - x)*(y + 2*x)",
    "(x^2 + y^4)*(y^2 - x^5)",
];

/// Realizations of small invariants.
pub fn realizations() -> Vec<String> {
    enumerate_invariants(2, 1)
        .into_iter()
        .filter(|a| a.branch_count() <= 3)
        .map(|a| realize_text(&a))
        .collect()
}

pub fn corpus() -> Vec<String> {
    NAMED
        .iter()
        .chain(WITH_COMPLEX)
        .map(|s| s.to_string())
        .chain(realizations())
        .collect()
}

pub fn fixture(name: &str) -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.json"))
}
