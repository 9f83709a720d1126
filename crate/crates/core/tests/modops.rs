use std::sync::Arc;

use gradhom::groebner::QuotientRing;
use gradhom::modops::{
    canonical_module, evaluation_map, ext_module, hom_modules, homothety_map,
    minimal_presentation, syzygy, tensor_modules, ModulePresentation,
};
use gradhom::{Fp, GradedFree, Vector};

type Ring = Arc<QuotientRing<Fp>>;

fn ring(vars: &[&str], weights: &[u32], rels: &[&str]) -> Ring {
    QuotientRing::parse(Fp::default(), vars, weights, rels).unwrap()
}

fn p(r: &Ring, s: &str) -> Vector<Fp> {
    r.poly.parse(s).unwrap()
}

fn semigroup() -> Ring {
    ring(&["a", "b", "c"], &[3, 4, 5], &["b^2-a*c", "b*c-a^3", "c^2-a^2*b"])
}

fn cyclic(r: &Ring, gens: &[&str]) -> ModulePresentation<Fp> {
    let v: Vec<_> = gens.iter().map(|s| p(r, s)).collect();
    ModulePresentation::cyclic(r.clone(), &v).unwrap()
}

#[test]
fn pruning_unit_entries() {
    let r = ring(&["x", "y"], &[1, 1], &[]);
    let col0 = r.poly.constant(1, 0);
    let col1 = r.poly.embed(&p(&r, "x"), 1);
    let m = ModulePresentation::new(r.clone(), GradedFree::new(vec![0, 0]), vec![col0, col1])
        .unwrap();
    let mm = minimal_presentation(&m);
    assert_eq!(mm.ngens(), 1);
    assert_eq!(mm.nrels(), 1);
    assert_eq!(r.poly.format_poly(&mm.rels.cols[0]), "x");
    let again = minimal_presentation(&mm);
    assert_eq!(again.rels, mm.rels);
}

#[test]
fn hom_from_free_source() {
    let r = ring(&["x", "y"], &[1, 1], &["x^2", "y^2"]);
    let n = cyclic(&r, &["x"]);
    let h = hom_modules(&ModulePresentation::ring_module(r.clone()), &n);
    assert_eq!(h.module.hilbert_series(), n.hilbert_series());
}

#[test]
fn hom_into_ring() {
    let r = ring(&["x", "y"], &[1, 1], &["x^2", "y^2"]);
    let m = cyclic(&r, &["x"]);
    let h = hom_modules(&m, &ModulePresentation::ring_module(r.clone()));
    assert_eq!(h.module.ngens(), 1);
    // (0 : x) = (x) ≅ R/(x)(-1): dimensions 1, 1 in degrees 1, 2
    assert_eq!(h.module.hilbert_series().coefficients(0, 3), vec![0, 1, 1, 0]);
    let r = ring(&["x"], &[1], &["x^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    let h = hom_modules(&k, &ModulePresentation::ring_module(r.clone()));
    assert_eq!(h.module.length(), Some(1));
}

#[test]
fn tensor_examples() {
    let s = ring(&["x", "y"], &[1, 1], &[]);
    let t = tensor_modules(&cyclic(&s, &["x"]), &cyclic(&s, &["y"]));
    assert_eq!(t.hilbert_series(), cyclic(&s, &["x", "y"]).hilbert_series());
    let n = cyclic(&s, &["x^2"]);
    let t = tensor_modules(&ModulePresentation::ring_module(s.clone()), &n);
    assert_eq!(t.hilbert_series(), n.hilbert_series());
}

#[test]
fn ext_examples() {
    let r = ring(&["x"], &[1], &["x^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    let rr = ModulePresentation::ring_module(r.clone());
    assert_eq!(ext_module(&k, &rr, 0).module.length(), Some(1));
    for i in 1..=4 {
        assert!(ext_module(&k, &rr, i).module.is_zero(), "Ext^{i}(k,R)");
    }
    let r = ring(&["x", "y"], &[1, 1], &["x^2", "y^2"]);
    let m = cyclic(&r, &["x"]);
    let rr = ModulePresentation::ring_module(r.clone());
    for i in 1..=4 {
        assert!(ext_module(&m, &rr, i).module.is_zero(), "Ext^{i}(R/(x),R)");
    }
    assert_eq!(
        ext_module(&m, &rr, 0).module.hilbert_series(),
        hom_modules(&m, &rr).module.hilbert_series()
    );
}

#[test]
fn evaluation_maps() {
    let r = ring(&["x"], &[1], &["x^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    let rr = ModulePresentation::ring_module(r.clone());
    assert!(evaluation_map(&k, &rr).is_isomorphism());
    assert!(evaluation_map(&rr, &rr).is_isomorphism());
    let r = ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    let rr = ModulePresentation::ring_module(r.clone());
    assert!(!evaluation_map(&k, &rr).is_isomorphism());
    let free = ModulePresentation::free(r.clone(), vec![0, 2]);
    assert!(evaluation_map(&free, &rr).is_isomorphism());
}

#[test]
fn homothety_maps() {
    let r = semigroup();
    assert!(homothety_map(&ModulePresentation::ring_module(r.clone())).is_isomorphism());
    let w = canonical_module(&r).unwrap();
    assert!(homothety_map(&w).is_isomorphism());
    let r = ring(&["x"], &[1], &["x^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    assert!(!homothety_map(&k).is_isomorphism());
}

#[test]
fn canonical_modules() {
    let r = semigroup();
    let w = canonical_module(&r).unwrap();
    assert_eq!(w.ngens(), 2);
    let k = ModulePresentation::residue_field(r.clone());
    assert_eq!(tensor_modules(&w, &k).length(), Some(2));

    let r = ring(&["x", "y"], &[1, 1], &["x*y"]);
    let w = canonical_module(&r).unwrap();
    assert!(w.is_free());
    assert_eq!(w.ngens(), 1);

    let r = ring(&["x", "y"], &[1, 1], &["x^2", "x*y", "y^2"]);
    // ω is the graded k-dual of R: length 3, generated by the dual of the
    // two-dimensional socle, with one-dimensional socle
    let w = canonical_module(&r).unwrap();
    assert_eq!(w.ngens(), 2);
    assert_eq!(w.length(), Some(3));

    let r = ring(&["x", "y"], &[1, 1], &[]);
    assert!(canonical_module(&r).unwrap().is_free());

    // k[x,y]/(x^2, xy) has depth 0 and dimension 1
    let r = ring(&["x", "y"], &[1, 1], &["x^2", "x*y"]);
    assert!(canonical_module(&r).is_err());
}

#[test]
fn syzygy_modules() {
    let s = ring(&["x", "y"], &[1, 1], &[]);
    let k = ModulePresentation::residue_field(s.clone());
    assert_eq!(syzygy(&k, 0).ngens(), 1);
    assert_eq!(syzygy(&k, 1).ngens(), 2);
    let r = ring(&["x"], &[1], &["x^2"]);
    let k = ModulePresentation::residue_field(r.clone());
    for i in 1..=4 {
        let z = syzygy(&k, i);
        assert_eq!(z.ngens(), 1);
        assert_eq!(z.length(), Some(1));
    }
}
