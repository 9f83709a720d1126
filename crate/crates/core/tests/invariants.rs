use std::sync::Arc;

use gradhom::dcat::{direct_sum, from_module, shift, Complex};
use gradhom::groebner::QuotientRing;
use gradhom::invariants::{
    bass_table, betti_table, depth, ext_dims, grade_wrt, id_verdict, is_cohen_macaulay,
    kdim_complex, nu, pd_verdict, tor_dims, type_of, FinitenessStatus, Object,
};
use gradhom::modops::{canonical_module, ModulePresentation};
use gradhom::{Fp, Vector};

type Ring = Arc<QuotientRing<Fp>>;

fn ring(vars: &[&str], weights: &[u32], rels: &[&str]) -> Ring {
    QuotientRing::parse(Fp::default(), vars, weights, rels).unwrap()
}

fn p(r: &Ring, s: &str) -> Vector<Fp> {
    r.poly.parse(s).unwrap()
}

fn dual_numbers() -> Ring {
    ring(&["x"], &[1], &["x^2"])
}

fn m_squared() -> Ring {
    ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"])
}

fn ci() -> Ring {
    ring(&["x", "y"], &[1, 1], &["x^2", "y^2"])
}

fn node() -> Ring {
    ring(&["x", "y"], &[1, 1], &["x*y"])
}

fn semigroup() -> Ring {
    ring(&["a", "b", "c"], &[3, 4, 5], &["b^2-a*c", "b*c-a^3", "c^2-a^2*b"])
}

fn k(r: &Ring) -> Object<Fp> {
    Object::Module(ModulePresentation::residue_field(r.clone()))
}

fn rr(r: &Ring) -> Object<Fp> {
    Object::Module(ModulePresentation::ring_module(r.clone()))
}

fn cyc(r: &Ring, g: &[&str]) -> Object<Fp> {
    let v: Vec<_> = g.iter().map(|s| p(r, s)).collect();
    Object::Module(ModulePresentation::cyclic(r.clone(), &v).unwrap())
}

fn rc(r: &Ring) -> Complex<Fp> {
    Complex::from_presentation(&ModulePresentation::ring_module(r.clone()))
}

fn vals(t: &gradhom::invariants::InvariantTable) -> Vec<(i64, u64)> {
    t.values.iter().map(|(&a, &b)| (a, b)).collect()
}

#[test]
fn betti_tables() {
    let r = dual_numbers();
    let t = betti_table(&rr(&r), 4);
    assert_eq!(t.get(0), Some(1));
    assert!(t.values.iter().all(|(&i, &v)| i == 0 || v == 0));
    let t = betti_table(&k(&r), 5);
    assert_eq!(t.certified, (0, 4));
    assert!(t.values.values().all(|&v| v == 1));
    let t = betti_table(&Object::Complex(shift(&rc(&r), 1)), 3);
    assert_eq!(t.get(1), Some(1));
    assert_eq!(t.first_nonzero(), Some(1));
    assert_eq!(t.last_nonzero(), Some(1));
    let r = m_squared();
    let t = betti_table(&k(&r), 6);
    assert_eq!(vals(&t), vec![(0, 1), (1, 2), (2, 4), (3, 8), (4, 16), (5, 32)]);
    // the (3,4,5) ring is Golod: P_k = (1+t)^3 / (1 - 3t^2 - 2t^3)
    let r = semigroup();
    let t = betti_table(&k(&r), 5);
    assert_eq!(vals(&t), vec![(0, 1), (1, 3), (2, 6), (3, 12), (4, 24)]);
}

#[test]
fn bass_tables() {
    let r = dual_numbers();
    let t = bass_table(&rr(&r), 4);
    assert_eq!(vals(&t), vec![(0, 1), (1, 0), (2, 0), (3, 0), (4, 0)]);
    let r = m_squared();
    let t = bass_table(&rr(&r), 3);
    assert_eq!(t.get(0), Some(2));
    assert!(t.get(1).unwrap() > 0);
    // Matlis duality over an artinian ring: μ^i(R) = β_i(ω)
    let w = canonical_module(&r).unwrap();
    let bw = betti_table(&Object::Module(w), 4);
    for i in 0..=3 {
        assert_eq!(t.get(i), bw.get(i), "μ^{i}(R) vs β_{i}(ω)");
    }
    let r = semigroup();
    let w = Object::Module(canonical_module(&r).unwrap());
    let t = bass_table(&w, 4);
    assert_eq!(vals(&t), vec![(0, 0), (1, 1), (2, 0), (3, 0), (4, 0)]);
}

#[test]
fn depth_and_dimension() {
    let r = node();
    assert_eq!(depth(&rr(&r)).unwrap(), 1);
    assert_eq!(depth(&k(&r)).unwrap(), 0);
    let x = Object::Complex(shift(&rc(&r), 2));
    assert_eq!(depth(&x).unwrap(), 1 - 2);
    assert_eq!(kdim_complex(&rr(&r)), Some(1));
    assert_eq!(kdim_complex(&x), Some(1 - 2));
    let sum = Object::Complex(direct_sum(&rc(&r), &shift(&rc(&r), 1)));
    assert_eq!(kdim_complex(&sum), Some(1));
    assert_eq!(depth(&sum).unwrap(), 0);
    assert!(is_cohen_macaulay(&rr(&r)).unwrap());
    assert!(!is_cohen_macaulay(&sum).unwrap());
    assert!(is_cohen_macaulay(&k(&r)).unwrap());
    let r = semigroup();
    assert_eq!(depth(&rr(&r)).unwrap(), 1);
    assert!(depth(&Object::Module(ModulePresentation::zero(r.clone()))).is_err());
}

#[test]
fn type_and_generators() {
    let r = ci();
    assert_eq!(type_of(&rr(&r)).unwrap(), 1);
    let s = ring(&["x", "y"], &[1, 1], &[]);
    let maximal = gradhom::modops::syzygy(&ModulePresentation::residue_field(s.clone()), 1);
    assert_eq!(nu(&maximal).unwrap(), 2);
    let r = semigroup();
    let w = canonical_module(&r).unwrap();
    assert_eq!(type_of(&Object::Module(w.clone())).unwrap(), 1);
    assert_eq!(nu(&w).unwrap(), 2);
    assert_eq!(type_of(&rr(&r)).unwrap(), 2);
    let r = m_squared();
    assert_eq!(type_of(&rr(&r)).unwrap(), 2);
    assert!(nu(&ModulePresentation::zero(r.clone())).is_err());
}

#[test]
fn projective_dimension_verdicts() {
    let r = node();
    let v = pd_verdict(&cyc(&r, &["x+y"]), 4);
    assert_eq!(v.status, FinitenessStatus::FiniteCertified(1));
    let v = pd_verdict(&rr(&r), 4);
    assert_eq!(v.status, FinitenessStatus::FiniteCertified(0));
    let r = dual_numbers();
    let v = pd_verdict(&k(&r), 5);
    assert_eq!(v.status, FinitenessStatus::UnknownAtLeast(5));
}

#[test]
fn injective_dimension_verdicts() {
    let r = ci();
    assert_eq!(id_verdict(&rr(&r), 3).status, FinitenessStatus::FiniteCertified(0));
    let r = m_squared();
    assert!(matches!(id_verdict(&rr(&r), 3).status, FinitenessStatus::UnknownAtLeast(3)));
    let r = semigroup();
    let w = Object::Module(canonical_module(&r).unwrap());
    assert_eq!(id_verdict(&w, 3).status, FinitenessStatus::FiniteCertified(1));
    // Σ²ω has id = 1 - 2
    let wc = Complex::from_presentation(&canonical_module(&r).unwrap());
    let v = id_verdict(&Object::Complex(shift(&wc, 2)), 3);
    assert_eq!(v.status, FinitenessStatus::FiniteCertified(-1));
}

#[test]
fn ext_and_tor() {
    let r = dual_numbers();
    let e = ext_dims(&k(&r), &k(&r), 0, 5);
    assert_eq!(e.len(), 6);
    assert!(e.values().all(|d| d.length == Some(1)));
    let r = m_squared();
    let m = cyc(&r, &["x"]);
    let t = tor_dims(&k(&r), &m, 0, 3);
    let b = betti_table(&m, 4);
    for i in 0..=3 {
        assert_eq!(t[&i].length, b.get(i), "Tor_{i}(k, M)");
    }
    let mc = Complex::from_presentation(&ModulePresentation::cyclic(r.clone(), &[p(&r, "x")]).unwrap());
    let a = ext_dims(&k(&r), &Object::Complex(shift(&mc, 2)), -2, 2);
    let b = ext_dims(&k(&r), &m, 0, 4);
    for i in -2..=2 {
        assert_eq!(a[&i], b[&(i + 2)]);
    }
}

#[test]
fn grades() {
    let r = node();
    assert_eq!(grade_wrt(&rr(&r), &rr(&r), 3).unwrap(), 0);
    assert_eq!(grade_wrt(&cyc(&r, &["x+y"]), &rr(&r), 3).unwrap(), 1);
    let r = m_squared();
    let w = Object::Module(canonical_module(&r).unwrap());
    assert_eq!(grade_wrt(&k(&r), &w, 3).unwrap(), 0);
}

#[test]
fn module_resolution_matches_from_module() {
    let r = semigroup();
    let m = canonical_module(&r).unwrap();
    let a = betti_table(&Object::Module(m.clone()), 4);
    let b = betti_table(&Object::Complex(Complex::from_presentation(&m)), 4);
    assert_eq!(a.values, b.values);
    let f = from_module(&m, 4);
    assert_eq!(a.get(3), Some(f.rank(3) as u64));
}
