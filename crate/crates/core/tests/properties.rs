use std::sync::Arc;

use proptest::prelude::*;

use gradhom::dcat::{shift, Complex};
use gradhom::groebner::QuotientRing;
use gradhom::invariants::{bass_table, betti_table, depth, id_verdict, pd_verdict, ring_depth, Object};
use gradhom::modops::ModulePresentation;
use gradhom::oracle::{brute_force_graded_dims, oracle_minimal_resolution, realize, FiniteModule};
use gradhom::Fp;

type Ring = Arc<QuotientRing<Fp>>;

struct Fixture {
    vars: &'static [&'static str],
    weights: &'static [u32],
    rels: &'static [&'static str],
}

const RINGS: &[Fixture] = &[
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &[] },
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &["x*y"] },
    Fixture { vars: &["x"], weights: &[1], rels: &["x^2"] },
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "y^2"] },
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "x*y", "y^2"] },
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &["x^2"] },
    Fixture { vars: &["x", "y"], weights: &[2, 3], rels: &["y^2-x^3"] },
    Fixture { vars: &["x", "y", "z"], weights: &[1, 1, 1], rels: &["x*y", "x*z", "y*z"] },
    Fixture { vars: &["x", "y"], weights: &[1, 1], rels: &["x^2", "x*y", "y^3"] },
];

fn ring(i: usize) -> Ring {
    let f = &RINGS[i];
    QuotientRing::parse(Fp::default(), f.vars, f.weights, f.rels).unwrap()
}

/// Monomials of weighted degree `d`, as exponent vectors.
fn monomials(weights: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn go(w: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == w.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let wi = w[cur.len()];
        for e in 0..=left / wi {
            cur.push(e);
            go(w, left - e * wi, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(weights, d, &mut Vec::new(), &mut out);
    out
}

fn render(vars: &[&str], exps: &[u32]) -> String {
    let parts: Vec<String> = vars
        .iter()
        .zip(exps)
        .filter(|(_, &e)| e > 0)
        .map(|(v, &e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
        .collect();
    parts.join("*")
}

/// A random homogeneous form: up to two monomials of one degree with
/// small coefficients.
#[derive(Clone, Debug)]
struct FormChoice {
    degree: u32,
    picks: Vec<(usize, u32)>,
}

fn form_strategy() -> impl Strategy<Value = FormChoice> {
    (1u32..=3, prop::collection::vec((0usize..16, 1u32..7), 1..=2))
        .prop_map(|(degree, picks)| FormChoice { degree, picks })
}

fn form(f: &Fixture, c: &FormChoice) -> Option<String> {
    let ms = monomials(f.weights, c.degree);
    if ms.is_empty() {
        return None;
    }
    let mut terms: Vec<(usize, u32)> = c.picks.iter().map(|&(i, k)| (i % ms.len(), k)).collect();
    terms.sort();
    terms.dedup_by_key(|t| t.0);
    let parts: Vec<String> = terms.iter().map(|&(i, k)| format!("{k}*{}", render(f.vars, &ms[i]))).collect();
    Some(parts.join("+"))
}

fn cyclic(r: &Ring, f: &Fixture, forms: &[FormChoice]) -> ModulePresentation<Fp> {
    let gens: Vec<_> = forms
        .iter()
        .filter_map(|c| form(f, c))
        .map(|s| r.poly.parse(&s).unwrap())
        .collect();
    ModulePresentation::cyclic(r.clone(), &gens).unwrap()
}

fn case_strategy() -> impl Strategy<Value = (usize, Vec<FormChoice>, i64)> {
    (0..RINGS.len(), prop::collection::vec(form_strategy(), 0..=2), -3i64..=3)
}

const BOUND: usize = 5;

proptest! {
    #![proptest_config(ProptestConfig { cases: 64, ..ProptestConfig::default() })]

    #[test]
    fn resolutions_are_complexes((ri, forms, n) in case_strategy()) {
        let r = ring(ri);
        let m = cyclic(&r, &RINGS[ri], &forms);
        let x = Object::Module(m.clone());
        prop_assert!(x.resolution(BOUND).validate().is_ok());
        let s = Object::Complex(shift(&Complex::from_presentation(&m), n));
        prop_assert!(s.resolution(BOUND).validate().is_ok());
    }

    #[test]
    fn shift_identities((ri, forms, n) in case_strategy()) {
        let r = ring(ri);
        let m = cyclic(&r, &RINGS[ri], &forms);
        let x = Object::Module(m.clone());
        let s = Object::Complex(shift(&Complex::from_presentation(&m), n));
        let (b, bs) = (betti_table(&x, BOUND), betti_table(&s, BOUND));
        for (i, v) in &b.values {
            if let Some(w) = bs.get(i + n) {
                prop_assert_eq!(*v, w, "β_{} vs β_{} of the shift", i, i + n);
            }
        }
        let (mu, mus) = (bass_table(&x, BOUND), bass_table(&s, BOUND));
        for (i, v) in &mus.values {
            if let Some(w) = mu.get(i + n) {
                prop_assert_eq!(*v, w, "μ^{} of the shift vs μ^{}", i, i + n);
            }
        }
        let (d, ds) = (depth(&x).unwrap(), depth(&s).unwrap());
        prop_assert_eq!(ds, d - n);
    }

    #[test]
    fn auslander_buchsbaum_and_bass((ri, forms, _n) in case_strategy()) {
        let r = ring(ri);
        let m = cyclic(&r, &RINGS[ri], &forms);
        let x = Object::Module(m);
        let dr = ring_depth(&r).unwrap();
        let dx = depth(&x).unwrap();
        if let Some(p) = pd_verdict(&x, BOUND).certified() {
            prop_assert_eq!(p, dr - dx);
        }
        if let Some(i) = id_verdict(&x, BOUND).certified() {
            prop_assert_eq!(i, dr);
        }
    }

    #[test]
    fn hilbert_series_matches_brute_force((ri, forms, n) in case_strategy()) {
        let r = ring(ri);
        let m = cyclic(&r, &RINGS[ri], &forms).shift(n);
        let lo = n.min(0);
        let coeffs = m.hilbert_series().coefficients(lo, 10);
        let brute = brute_force_graded_dims(&m, lo, 10);
        for (k, c) in coeffs.iter().enumerate() {
            let d = lo + k as i64;
            prop_assert_eq!(*c, brute.get(d) as i64, "degree {}", d);
        }
    }

    #[test]
    fn oracle_betti_on_random_modules((ri, forms, _n) in case_strategy()) {
        let r = ring(ri);
        let Ok(alg) = realize(&r) else { return Ok(()) };
        let m = cyclic(&r, &RINGS[ri], &forms);
        let fm = FiniteModule::from_presentation(&alg, &m).unwrap();
        let res = oracle_minimal_resolution(&fm, 4);
        let b = betti_table(&Object::Module(m), 4);
        for (i, v) in &b.values {
            prop_assert_eq!(res.ranks[*i as usize] as u64, *v, "β_{}", i);
        }
        prop_assert!(b.values.len() >= 3 || res.ranks.iter().skip(b.values.len()).all(|&r| r == 0));
    }
}

#[test]
fn ring_hilbert_functions_up_to_degree_ten() {
    for i in 0..RINGS.len() {
        let r = ring(i);
        let m = ModulePresentation::ring_module(r.clone());
        let coeffs = r.hilbert_series().coefficients(0, 10);
        let brute = brute_force_graded_dims(&m, 0, 10);
        let expect: Vec<i64> = (0..=10).map(|d| brute.get(d) as i64).collect();
        assert_eq!(coeffs, expect, "ring {i}");
    }
}
