//! Ring fixtures shared by the benchmarks.

use std::sync::Arc;

use gradhom::groebner::QuotientRing;
use gradhom::Fp;

pub type Ring = Arc<QuotientRing<Fp>>;

pub struct Fixture {
    pub name: &'static str,
    pub vars: &'static [&'static str],
    pub weights: &'static [u32],
    pub rels: &'static [&'static str],
    pub artinian: bool,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "node", vars: &["x", "y"], weights: &[1, 1], rels: &["x*y"], artinian: false },
    Fixture { name: "ci", vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "y^2"], artinian: true },
    Fixture { name: "m2", vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "x*y", "y^2"], artinian: true },
    Fixture {
        name: "semigroup",
        vars: &["a", "b", "c"],
        weights: &[3, 4, 5],
        rels: &["b^2-a*c", "b*c-a^3", "c^2-a^2*b"],
        artinian: false,
    },
    Fixture { name: "golod", vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "x*y", "y^3"], artinian: true },
];

pub fn ring(f: &Fixture) -> Ring {
    QuotientRing::parse(Fp::default(), f.vars, f.weights, f.rels).expect("fixture ring")
}
