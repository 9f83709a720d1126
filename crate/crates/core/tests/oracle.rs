use std::sync::Arc;

use gradhom::groebner::QuotientRing;
use gradhom::invariants::{bass_table, betti_table, ext_dims, tor_dims, Object};
use gradhom::modops::{canonical_module, ext_module, ModulePresentation};
use gradhom::oracle::{
    oracle_ext, oracle_invariants, oracle_minimal_resolution, oracle_tor, realize, FiniteModule,
};
use gradhom::Fp;

type Ring = Arc<QuotientRing<Fp>>;

const TOP: usize = 8;

fn ring(vars: &[&str], weights: &[u32], rels: &[&str]) -> Ring {
    QuotientRing::parse(Fp::default(), vars, weights, rels).unwrap()
}

/// Artinian fixtures: name, ring.
fn fixtures() -> Vec<(&'static str, Ring)> {
    vec![
        ("x^2", ring(&["x"], &[1], &["x^2"])),
        ("x^3", ring(&["x"], &[1], &["x^3"])),
        ("m^2", ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"])),
        ("x^2,y^2", ring(&["x", "y"], &[1, 1], &["x^2", "y^2"])),
        ("x^2,xy,y^3", ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^3"])),
        ("a^2,b^2 weighted", ring(&["a", "b"], &[1, 2], &["a^2", "b^2"])),
    ]
}

fn cyclic(r: &Ring, g: &[&str]) -> ModulePresentation<Fp> {
    let v: Vec<_> = g.iter().map(|s| r.poly.parse(s).unwrap()).collect();
    ModulePresentation::cyclic(r.clone(), &v).unwrap()
}

fn modules(r: &Ring) -> Vec<(&'static str, ModulePresentation<Fp>)> {
    let var = r.poly.names[0].clone();
    let mut out = vec![
        ("R", ModulePresentation::ring_module(r.clone())),
        ("k", ModulePresentation::residue_field(r.clone())),
        ("omega", canonical_module(r).unwrap()),
        ("R/(x)", cyclic(r, &[var.as_str()])),
    ];
    out.push(("k(-1)+R/(x)", out[1].1.shift(1).direct_sum(&out[3].1)));
    out
}

fn lengths(m: &std::collections::BTreeMap<i64, gradhom::invariants::HilbertDims>) -> Vec<u64> {
    (0..=TOP as i64).map(|i| m[&i].length.expect("finite length")).collect()
}

#[test]
fn realized_dimensions() {
    for (name, r) in fixtures() {
        let a = realize(&r).unwrap();
        assert_eq!(Some(a.dim() as u64), r.hilbert_series().length(), "{name}");
        assert!(a.is_consistent(), "{name}");
    }
    let a = realize(&ring(&["x", "y"], &[1, 1], &["x^2", "y^2"])).unwrap();
    assert_eq!(a.dim(), 4);
    assert_eq!(realize(&ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"])).unwrap().dim(), 3);
}

#[test]
fn modules_are_consistent() {
    for (name, r) in fixtures() {
        let a = realize(&r).unwrap();
        for (mname, m) in modules(&r) {
            let fm = FiniteModule::from_presentation(&a, &m).unwrap();
            assert!(fm.is_consistent(), "{name} {mname}");
            let hs = m.hilbert_series();
            let hf = fm.hilbert_function();
            let lo = hf.0.keys().next().copied().unwrap_or(0).min(0);
            let hi = hf.0.keys().last().copied().unwrap_or(0) + 1;
            let pipeline = hs.coefficients(lo, hi);
            let oracle: Vec<i64> = (lo..=hi).map(|d| hf.get(d) as i64).collect();
            assert_eq!(pipeline, oracle, "{name} {mname}");
        }
    }
}

#[test]
fn resolution_examples() {
    let r = ring(&["x"], &[1], &["x^2"]);
    let a = realize(&r).unwrap();
    let k = FiniteModule::residue_field(&a);
    assert_eq!(oracle_minimal_resolution(&k, 6).ranks, vec![1; 7]);
    let free = FiniteModule::free(&a, &[0, 2, 2]);
    assert_eq!(oracle_minimal_resolution(&free, 3).ranks, vec![3, 0, 0, 0]);
    let inv = oracle_invariants(&FiniteModule::regular(&a), &k, 4);
    assert_eq!(inv.bass, vec![1, 0, 0, 0, 0]);
    let tor = oracle_tor(&k, &k, 5);
    let betti = oracle_minimal_resolution(&k, 5).ranks;
    assert_eq!(tor.iter().map(|t| t.total() as usize).collect::<Vec<_>>(), betti);

    let r = ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"]);
    let a = realize(&r).unwrap();
    let inv = oracle_invariants(&FiniteModule::regular(&a), &FiniteModule::regular(&a), 2);
    assert_eq!(inv.bass[0], 2);
    // every Bass number of a non-Gorenstein artinian ring is positive
    assert!(inv.bass.iter().all(|&b| b > 0));
    // ω is the k-dual of R: 2 generators, length 3
    let w = FiniteModule::from_presentation(&a, &canonical_module(&r).unwrap()).unwrap();
    assert_eq!(w.dim(), 3);
    assert_eq!(oracle_minimal_resolution(&w, 0).ranks, vec![2]);
}

/// Betti, Bass, Ext and Tor dimensions agree with the Gröbner pipeline for
/// every index up to 8.
#[test]
fn oracle_matches_pipeline() {
    for (name, r) in fixtures() {
        let a = realize(&r).unwrap();
        let ms = modules(&r);
        for (mname, m) in &ms {
            let fm = FiniteModule::from_presentation(&a, m).unwrap();
            let x = Object::Module(m.clone());
            let k = FiniteModule::residue_field(&a);
            let inv = oracle_invariants(&fm, &k, TOP);

            let betti = betti_table(&x, TOP + 1);
            let pb: Vec<u64> = (0..=TOP as i64).map(|i| betti.get(i).unwrap()).collect();
            assert_eq!(pb, inv.betti, "betti {name} {mname}");

            let bass = bass_table(&x, TOP);
            let pm: Vec<u64> = (0..=TOP as i64).map(|i| bass.get(i).unwrap()).collect();
            assert_eq!(pm, inv.bass, "bass {name} {mname}");

            // Tor(M, k) recovers the Betti numbers
            let tor: Vec<u64> = inv.tor.iter().map(|t| t.total()).collect();
            assert_eq!(tor, inv.betti, "tor(M, k) {name} {mname}");

            for (nname, n) in ms.iter().filter(|(n, _)| ["R", "omega", "R/(x)"].contains(n)) {
                let fnm = FiniteModule::from_presentation(&a, n).unwrap();
                let y = Object::Module(n.clone());
                let oe: Vec<u64> = oracle_ext(&fm, &fnm, TOP).iter().map(|d| d.total()).collect();
                assert_eq!(lengths(&ext_dims(&x, &y, 0, TOP as i64)), oe, "ext {name} {mname} {nname}");
                let ot: Vec<u64> = oracle_tor(&fm, &fnm, TOP).iter().map(|d| d.total()).collect();
                assert_eq!(lengths(&tor_dims(&x, &y, 0, TOP as i64)), ot, "tor {name} {mname} {nname}");
            }
        }
    }
}

/// Graded pieces of the Ext modules, not only their lengths.
#[test]
fn graded_ext_matches_pipeline() {
    for (name, r) in fixtures() {
        let a = realize(&r).unwrap();
        let ms = modules(&r);
        for (mname, m) in &ms {
            let fm = FiniteModule::from_presentation(&a, m).unwrap();
            for (nname, n) in &ms {
                let fnm = FiniteModule::from_presentation(&a, n).unwrap();
                let oracle = oracle_ext(&fm, &fnm, TOP);
                for (i, od) in oracle.iter().enumerate() {
                    let hs = ext_module(m, n, i).module.hilbert_series();
                    let (lo, hi) = (-(4 * TOP as i64) - 8, 8);
                    let pipeline = hs.coefficients(lo, hi);
                    let expect: Vec<i64> = (lo..=hi).map(|d| od.get(d) as i64).collect();
                    assert_eq!(pipeline, expect, "Ext^{i}({mname}, {nname}) over {name}");
                }
            }
        }
    }
}
