use std::sync::Arc;

use gradhom::dcat::{
    biduality_rep, cone, from_module, gamma_rep, homology_dims, homology_hs, homology_module,
    hom_complex, minimize, resolve_complex, shift, tensor_complex, ChainMap, Complex, Window,
};
use gradhom::groebner::QuotientRing;
use gradhom::modops::{canonical_module, ModulePresentation};
use gradhom::{Fp, GradedFree, GradedMatrix, Vector};

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

fn semigroup() -> Ring {
    ring(&["a", "b", "c"], &[3, 4, 5], &["b^2-a*c", "b*c-a^3", "c^2-a^2*b"])
}

fn k(r: &Ring) -> ModulePresentation<Fp> {
    ModulePresentation::residue_field(r.clone())
}

fn rmod(r: &Ring) -> ModulePresentation<Fp> {
    ModulePresentation::ring_module(r.clone())
}

/// Total k-dimension of a finite length homology module; `None` if the
/// homology has positive dimension.
fn hlen(x: &Complex<Fp>, n: i64) -> Option<u64> {
    homology_hs(x, n).length()
}

fn ranks(x: &Complex<Fp>) -> Vec<usize> {
    (x.lo..=x.hi()).map(|n| x.rank(n)).collect()
}

/// Multiplication by `f` as a chain map `R -> R(deg f)` in degree 0.
fn mult_map(r: &Ring, f: &str, deg: i64) -> ChainMap<Fp> {
    let src = Complex::from_presentation(&ModulePresentation::free(r.clone(), vec![deg]));
    let tgt = Complex::from_presentation(&rmod(r));
    let m = GradedMatrix::new(GradedFree::new(vec![deg]), GradedFree::new(vec![0]), vec![p(r, f)])
        .unwrap();
    ChainMap {
        source: src,
        target: tgt,
        comps: vec![m],
        window: Window::full(),
    }
}

#[test]
fn resolutions_of_modules() {
    let r = dual_numbers();
    let f = from_module(&rmod(&r), 5);
    assert_eq!(ranks(&f), vec![1]);
    assert!(f.window.is_full());
    let f = from_module(&k(&r), 6);
    assert_eq!(ranks(&f), vec![1; 7]);
    assert_eq!(f.window, Window::upto(5));
    f.validate().unwrap();
    let r = m_squared();
    let f = from_module(&k(&r), 5);
    assert_eq!(ranks(&f), vec![1, 2, 4, 8, 16, 32]);
    f.validate().unwrap();
    for n in 0..=4 {
        let expect = if n == 0 { Some(1) } else { Some(0) };
        assert_eq!(hlen(&f, n), expect, "degree {n}");
    }
}

#[test]
fn shift_identities() {
    let r = m_squared();
    let f = from_module(&k(&r), 4);
    let s = shift(&f, 3);
    s.validate().unwrap();
    assert_eq!(s.lo, 3);
    assert_eq!(s.window, Window::upto(6));
    for n in 0..=4 {
        assert_eq!(hlen(&s, n + 3), hlen(&f, n));
    }
    let back = shift(&s, -3);
    assert_eq!(back.lo, f.lo);
    assert_eq!(back.diffs, f.diffs);
    assert_eq!(shift(&f, 0).diffs, f.diffs);
    let odd = shift(&f, 1);
    odd.validate().unwrap();
}

#[test]
fn cones() {
    let r = ring(&["x", "y"], &[1, 1], &["x*y"]);
    let c = cone(&mult_map(&r, "x", 1));
    c.validate().unwrap();
    let h0 = homology_module(&c, 0);
    assert_eq!(h0.hilbert_series(), ModulePresentation::cyclic(r.clone(), &[p(&r, "x")]).unwrap().hilbert_series());
    // H_1 = (0 : x) = (y), shifted by the source twist
    let h1 = homology_hs(&c, 1);
    let y = ModulePresentation::cyclic(r.clone(), &[p(&r, "x")]).unwrap().shift(2);
    assert_eq!(h1, y.hilbert_series());

    let f = from_module(&k(&r), 3);
    let id = ChainMap::identity(&f);
    id.validate().unwrap();
    let c = cone(&id);
    c.validate().unwrap();
    let d = homology_dims(&c);
    assert!(d.degrees.iter().all(|h| h.krull_dim.is_none()));
    assert!(minimize(&c).is_zero_complex());

    let zero = Complex::zero(r.clone());
    let z = ChainMap {
        source: zero,
        target: f.clone(),
        comps: vec![],
        window: Window::full(),
    };
    let c = cone(&z);
    assert_eq!(c.diffs, f.diffs);
}

#[test]
fn hom_complexes() {
    let r = dual_numbers();
    let rc = Complex::from_presentation(&rmod(&r));
    let f = from_module(&k(&r), 6);
    let h = hom_complex(&rc, &f);
    assert_eq!(h.diffs, f.diffs);

    let h = hom_complex(&f, &rc);
    h.validate().unwrap();
    assert_eq!(h.window, Window::new(-5, gradhom::dcat::INF));
    assert_eq!(hlen(&h, 0), Some(1));
    for i in 1..=5 {
        assert_eq!(hlen(&h, -i), Some(0), "Ext^{i}(k, R)");
    }

    // Hom(P, Σ³Y) = Σ³ Hom(P, Y), degreewise
    let r = m_squared();
    let f = from_module(&k(&r), 3);
    let y = Complex::from_presentation(&rmod(&r));
    let a = hom_complex(&f, &shift(&y, 3));
    let b = hom_complex(&f, &y);
    a.validate().unwrap();
    assert_eq!(a.window, b.window.shift(3));
    for n in -3..=0 {
        assert_eq!(homology_hs(&a, n + 3), homology_hs(&b, n));
    }
    // Hom(k, R) = soc R = m
    assert_eq!(hlen(&b, 0), Some(2));
}

#[test]
fn tensor_complexes() {
    let r = dual_numbers();
    let f = from_module(&k(&r), 5);
    let t = tensor_complex(&f, &f);
    t.validate().unwrap();
    assert_eq!(t.window, Window::upto(4));
    for i in 0..=4 {
        assert_eq!(hlen(&t, i), Some(1), "Tor_{i}(k, k)");
    }
    let rc = Complex::from_presentation(&rmod(&r));
    let t = tensor_complex(&f, &rc);
    assert_eq!(t.diffs, f.diffs);
    let t2 = tensor_complex(&f, &shift(&f, 2));
    for i in 0..=4 {
        assert_eq!(hlen(&t2, i + 2), Some(1));
    }
    // k ⊗ k over m² = 0: Tor_i(k,k) = 2^i
    let r = m_squared();
    let f = from_module(&k(&r), 4);
    let t = tensor_complex(&f, &Complex::from_presentation(&k(&r)));
    t.validate().unwrap();
    for i in 0..=3 {
        assert_eq!(hlen(&t, i), Some(1 << i));
    }
}

#[test]
fn resolving_complexes() {
    let r = m_squared();
    let f = from_module(&k(&r), 4);
    let (q, qm) = resolve_complex(&f, 4);
    qm.validate().unwrap();
    assert_eq!(ranks(&q), ranks(&f));

    let kc = Complex::from_presentation(&k(&r));
    let (q, qm) = resolve_complex(&kc, 4);
    qm.validate().unwrap();
    assert_eq!(ranks(&q), vec![1, 2, 4, 8, 16]);
    let c = cone(&qm);
    let d = homology_dims(&c);
    assert!(d.vanishes_on(-100, 100), "{:?}", d);

    // Hom(F, R) is far from minimal and has homology in every degree
    let h = hom_complex(&f, &Complex::from_presentation(&rmod(&r)));
    let (q, qm) = resolve_complex(&h, 2);
    qm.validate().unwrap();
    let c = cone(&qm);
    c.validate().unwrap();
    let d = homology_dims(&c);
    assert!(d.vanishes_on(c.window.lo, c.window.hi));
    for n in q.window.lo.max(q.lo)..=q.window.hi {
        if h.window.contains(n) {
            assert_eq!(homology_hs(&q, n), homology_hs(&h, n), "degree {n}");
        }
    }
}

#[test]
fn minimize_preserves_homology() {
    let r = semigroup();
    let f = from_module(&k(&r), 3);
    let id = ChainMap::identity(&f);
    let c = cone(&id);
    let m = minimize(&c);
    assert!(m.is_zero_complex());
    let mm = minimize(&f);
    assert_eq!(mm.diffs, f.diffs);
    let w = canonical_module(&r).unwrap();
    let h = hom_complex(&f, &Complex::from_presentation(&w));
    let (q, _) = resolve_complex(&h, 1);
    let qm = minimize(&q);
    for n in q.lo..=q.hi() {
        assert_eq!(homology_hs(&q, n), homology_hs(&qm, n));
    }
}

#[test]
fn biduality_maps() {
    let r = dual_numbers();
    let rc = Complex::from_presentation(&rmod(&r));
    let f = from_module(&k(&r), 4);
    let d = biduality_rep(&f, &rc, 4);
    d.validate().unwrap();
    let c = cone(&d);
    c.validate().unwrap();
    assert!(c.window.contains(0) && c.window.contains(1));
    let hd = homology_dims(&c);
    assert!(hd.vanishes_on(c.window.lo, c.window.hi), "{hd:?}");

    let r = m_squared();
    let rc = Complex::from_presentation(&rmod(&r));
    let f = from_module(&k(&r), 3);
    let d = biduality_rep(&f, &rc, 3);
    d.validate().unwrap();
    let c = cone(&d);
    let hd = homology_dims(&c);
    assert!(!hd.vanishes_on(c.window.lo, c.window.hi));

    let fr = from_module(&rmod(&r), 3);
    let d = biduality_rep(&fr, &rc, 3);
    d.validate().unwrap();
    let hd = homology_dims(&cone(&d));
    assert!(hd.vanishes_on(-100, 100));
}

#[test]
fn gamma_maps() {
    let r = semigroup();
    let w = canonical_module(&r).unwrap();
    let pc = from_module(&w, 4);
    let fr = from_module(&rmod(&r), 4);
    let g = gamma_rep(&fr, &pc);
    g.validate().unwrap();
    let c = cone(&g);
    assert!(c.window.contains(0), "{:?}", c.window);
    assert!(homology_dims(&c).vanishes_on(c.window.lo, c.window.hi));

    let r = dual_numbers();
    let pc = from_module(&rmod(&r), 3);
    let f = from_module(&k(&r), 3);
    let g = gamma_rep(&f, &pc);
    g.validate().unwrap();
    let c = cone(&g);
    assert!(homology_dims(&c).vanishes_on(c.window.lo, c.window.hi));
}

#[test]
fn zero_complex_everywhere() {
    let r = dual_numbers();
    let z = Complex::zero(r.clone());
    assert!(shift(&z, 2).is_zero_complex());
    assert!(hom_complex(&z, &z).is_zero_complex());
    assert!(tensor_complex(&z, &z).is_zero_complex());
    assert!(minimize(&z).is_zero_complex());
    let (q, _) = resolve_complex(&z, 3);
    assert!(q.is_zero_complex());
    assert!(homology_dims(&z).degrees.is_empty());
}
