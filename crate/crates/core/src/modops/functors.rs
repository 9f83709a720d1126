//! Resolutions, Hom, tensor products, Ext, canonical maps and the
//! canonical module.

use crate::algebra::{Field, GradedFree, GradedMatrix, Term, Vector};
use crate::error::{Error, Result};
use crate::groebner::{lift, syzygy_basis, QuotientRing, Ring};

use super::presentation::{
    matrix_of, minimal_presentation, subquotient, ModuleMap, ModulePresentation,
};

/// `Hom(F, G)` for free modules: the basis element `E_{a,i}` sends the
/// a-th generator of F to the i-th generator of G; index `a * rank G + i`.
pub fn hom_free(f: &GradedFree, g: &GradedFree) -> GradedFree {
    let mut t = Vec::with_capacity(f.rank() * g.rank());
    for &s in &f.twists {
        for &u in &g.twists {
            t.push(u - s);
        }
    }
    GradedFree::new(t)
}

/// Precomposition with `a: F1 -> F0`, as a map `Hom(F0, G) -> Hom(F1, G)`.
pub fn precompose<K: Field>(ring: &QuotientRing<K>, a: &GradedMatrix<K>, g: &GradedFree) -> GradedMatrix<K> {
    let r = g.rank();
    let f0 = &a.target;
    let f1 = &a.source;
    let mut cols: Vec<Vec<Term<K::Elem>>> = vec![Vec::new(); f0.rank() * r];
    for (c, col) in a.cols.iter().enumerate() {
        for t in &col.terms {
            let ai = t.comp as usize;
            for i in 0..r {
                cols[ai * r + i].push(Term {
                    comp: (c * r + i) as u32,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                });
            }
        }
    }
    GradedMatrix {
        source: hom_free(f0, g),
        target: hom_free(f1, g),
        cols: cols.into_iter().map(|t| ring.poly.normalize(t)).collect(),
    }
}

/// Postcomposition with `b: G1 -> G0`, as a map `Hom(F, G1) -> Hom(F, G0)`.
pub fn postcompose<K: Field>(ring: &QuotientRing<K>, f: &GradedFree, b: &GradedMatrix<K>) -> GradedMatrix<K> {
    let r0 = b.target.rank();
    let mut cols = Vec::with_capacity(f.rank() * b.ncols());
    for a in 0..f.rank() {
        for col in &b.cols {
            cols.push(ring.poly.offset(col, (a * r0) as u32));
        }
    }
    GradedMatrix {
        source: hom_free(f, &b.source),
        target: hom_free(f, &b.target),
        cols,
    }
}

/// The submodule `Hom(F, im b)` of `Hom(F, G0)`, as columns.
fn hom_into_image<K: Field>(ring: &QuotientRing<K>, f: &GradedFree, b: &GradedMatrix<K>) -> Vec<Vector<K>> {
    postcompose(ring, f, b).cols
}

/// `Hom_R(M, N)` with the generators of the presentation recorded as maps
/// between the generator free modules (`maps`, columns in `Hom(F0, G0)`).
#[derive(Clone, Debug)]
pub struct HomModule<K: Field> {
    pub module: ModulePresentation<K>,
    pub maps: GradedMatrix<K>,
    pub source_gens: GradedFree,
    pub target_gens: GradedFree,
    pub target_rels: GradedMatrix<K>,
}

impl<K: Field> HomModule<K> {
    /// Relations among maps: those landing in the relations of the target.
    pub fn ambient_relations(&self) -> Vec<Vector<K>> {
        hom_into_image(&self.module.ring, &self.source_gens, &self.target_rels)
    }
}

/// Cohomology of `Hom(F_{i-1}, N) -> Hom(F_i, N) -> Hom(F_{i+1}, N)` at the
/// middle term, where `prev = d_i` and `next = d_{i+1}`.
pub fn hom_cohomology<K: Field>(
    ring: &Ring<K>,
    fi: &GradedFree,
    prev: Option<&GradedMatrix<K>>,
    next: Option<&GradedMatrix<K>>,
    n: &ModulePresentation<K>,
) -> HomModule<K> {
    let g0 = &n.gens;
    let amb = hom_free(fi, g0);
    let z = match next {
        Some(d) if d.ncols() > 0 => {
            let phi = precompose(ring, d, g0);
            let rels = postcompose(ring, &d.source, &n.rels);
            let big = phi.hstack(&rels).expect("same ambient");
            let syz = syzygy_basis(ring, &big);
            let m = amb.rank() as u32;
            matrix_of(
                &amb,
                syz.cols.iter().map(|c| ring.poly.slice(c, 0, m)).collect(),
            )
        }
        _ => GradedMatrix::identity(&ring.poly, &amb),
    };
    let mut rels = hom_into_image(ring, fi, &n.rels);
    if let Some(d) = prev {
        rels.extend(precompose(ring, d, g0).cols);
    }
    let (module, maps) = subquotient(ring, &amb, &z, &rels);
    HomModule {
        module,
        maps,
        source_gens: fi.clone(),
        target_gens: g0.clone(),
        target_rels: n.rels.clone(),
    }
}

pub fn hom_modules<K: Field>(m: &ModulePresentation<K>, n: &ModulePresentation<K>) -> HomModule<K> {
    hom_cohomology(&m.ring, &m.gens, None, Some(&m.rels), n)
}

/// `M ⊗ N` presented on the generators `e_a ⊗ f_i` (index `a * rank + i`).
pub fn tensor_modules<K: Field>(m: &ModulePresentation<K>, n: &ModulePresentation<K>) -> ModulePresentation<K> {
    let ring = &m.ring;
    let poly = &ring.poly;
    let r = n.ngens();
    let mut gt = Vec::new();
    for &s in &m.gens.twists {
        for &t in &n.gens.twists {
            gt.push(s + t);
        }
    }
    let gens = GradedFree::new(gt);
    let mut rels = Vec::new();
    for col in &m.rels.cols {
        for i in 0..r {
            rels.push(poly.map_comps(col, |a| a * r as u32 + i as u32));
        }
    }
    for a in 0..m.ngens() {
        for col in &n.rels.cols {
            rels.push(poly.offset(col, (a * r) as u32));
        }
    }
    let out = ModulePresentation::new(ring.clone(), gens, rels).expect("homogeneous");
    minimal_presentation(&out)
}

/// Differentials `d_1, ..., d_len` of the minimal free resolution of M
/// (with `d_1` the minimal relation matrix). Trailing maps may be empty.
pub fn resolution<K: Field>(m: &ModulePresentation<K>, len: usize) -> Vec<GradedMatrix<K>> {
    let mm = minimal_presentation(m);
    let mut out = Vec::with_capacity(len);
    if len == 0 {
        return out;
    }
    out.push(mm.rels.clone());
    while out.len() < len {
        let last = out.last().unwrap();
        let next = if last.ncols() == 0 {
            GradedMatrix::zero(GradedFree::zero(), last.source.clone())
        } else {
            syzygy_basis(&m.ring, last)
        };
        out.push(next);
    }
    out
}

/// `Ext^i(M, N)` from the minimal resolution of M.
pub fn ext_module<K: Field>(
    m: &ModulePresentation<K>,
    n: &ModulePresentation<K>,
    i: usize,
) -> HomModule<K> {
    let res = resolution(m, i + 1);
    let mm = minimal_presentation(m);
    let fi = if i == 0 { mm.gens.clone() } else { res[i - 1].source.clone() };
    let prev = if i == 0 { None } else { Some(&res[i - 1]) };
    hom_cohomology(&m.ring, &fi, prev, Some(&res[i]), n)
}

/// Coordinates of the elements `v` (columns in `Hom(F0, G0)`) with respect
/// to the generators of a Hom module.
pub fn hom_coordinates<K: Field>(h: &HomModule<K>, v: &GradedMatrix<K>) -> Result<GradedMatrix<K>> {
    let ring = &h.module.ring;
    let amb = hom_free(&h.source_gens, &h.target_gens);
    let rels = matrix_of(&amb, h.ambient_relations());
    let through = h.maps.hstack(&rels)?;
    let x = lift(ring, v, &through)?;
    let ng = h.maps.ncols() as u32;
    Ok(GradedMatrix {
        source: v.source.clone(),
        target: h.module.gens.clone(),
        cols: x.cols.iter().map(|c| ring.poly.slice(c, 0, ng)).collect(),
    })
}

/// Both `Hom(M, C)` and `Hom(Hom(M, C), C)`, with the canonical map
/// `M -> Hom(Hom(M, C), C)`.
pub fn evaluation_map<K: Field>(m: &ModulePresentation<K>, c: &ModulePresentation<K>) -> ModuleMap<K> {
    let ring = &m.ring;
    let poly = &ring.poly;
    let h = hom_modules(m, c);
    let hh = hom_modules(&h.module, c);
    let r = c.ngens();
    let hb = h.module.ngens();
    let amb = hom_free(&h.module.gens, &c.gens);
    let mut cols = Vec::with_capacity(m.ngens());
    for a in 0..m.ngens() {
        let lo = (a * r) as u32;
        let mut terms = Vec::new();
        for b in 0..hb {
            for t in &h.maps.cols[b].terms {
                if t.comp >= lo && t.comp < lo + r as u32 {
                    terms.push(Term {
                        comp: (b * r) as u32 + (t.comp - lo),
                        mono: t.mono,
                        coeff: t.coeff.clone(),
                    });
                }
            }
        }
        cols.push(poly.normalize(terms));
    }
    let v = GradedMatrix {
        source: m.gens.clone(),
        target: amb,
        cols,
    };
    let matrix = hom_coordinates(&hh, &v).expect("evaluation lies in the double dual");
    ModuleMap {
        source: m.clone(),
        target: hh.module,
        matrix,
    }
}

/// `R -> Hom(C, C)`, `r ↦ r · id`.
pub fn homothety_map<K: Field>(c: &ModulePresentation<K>) -> ModuleMap<K> {
    let ring = &c.ring;
    let h = hom_modules(c, c);
    let r = c.ngens();
    let terms = (0..r)
        .map(|a| Term {
            comp: (a * r + a) as u32,
            mono: crate::algebra::Monomial::ONE,
            coeff: ring.field().one(),
        })
        .collect();
    let id = ring.poly.normalize(terms);
    let v = GradedMatrix {
        source: GradedFree::new(vec![0]),
        target: hom_free(&c.gens, &c.gens),
        cols: vec![id],
    };
    let matrix = hom_coordinates(&h, &v).expect("identity is a homomorphism");
    ModuleMap {
        source: ModulePresentation::ring_module(ring.clone()),
        target: h.module,
        matrix,
    }
}

/// The g-th syzygy module in the minimal free resolution (g = 0 gives M).
pub fn syzygy<K: Field>(m: &ModulePresentation<K>, g: usize) -> ModulePresentation<K> {
    if g == 0 {
        return minimal_presentation(m);
    }
    let res = resolution(m, g + 1);
    let gens = res[g - 1].source.clone();
    let mut out = ModulePresentation::new(m.ring.clone(), gens, res[g].cols.clone())
        .expect("homogeneous resolution");
    out.minimal = true;
    out
}

/// The canonical module `Ext^c_S(R, S(-Σw))`, c = codim, after checking
/// that every other `Ext^i_S(R, S)` vanishes.
pub fn canonical_module<K: Field>(r: &Ring<K>) -> Result<ModulePresentation<K>> {
    let s = r.ambient();
    let n = r.nvars();
    let dim = r.krull_dimension();
    let c = n - dim;
    let rs = ModulePresentation::cyclic(s.clone(), r.ideal_gb().as_slice())?;
    let res = resolution(&rs, n + 1);
    let sfree = ModulePresentation::ring_module(s.clone());
    let pd = res.iter().rposition(|d| d.ncols() > 0).map(|p| p + 1).unwrap_or(0);
    let ext_at = |i: usize| {
        let fi = if i == 0 {
            GradedFree::new(vec![0])
        } else {
            res[i - 1].source.clone()
        };
        let prev = if i == 0 { None } else { Some(&res[i - 1]) };
        hom_cohomology(&s, &fi, prev, Some(&res[i]), &sfree)
    };
    for i in 0..=pd {
        if i != c && !ext_at(i).module.is_zero() {
            return Err(Error::NotCohenMacaulay(format!(
                "Ext^{i}_S(R,S) is nonzero while the codimension is {c}"
            )));
        }
    }
    let e = ext_at(c).module;
    let sigma: i64 = r.poly.weights.iter().map(|&w| w as i64).sum();
    let out = ModulePresentation::new(r.clone(), e.gens.shifted(sigma), e.rels.cols.clone())?;
    Ok(minimal_presentation(&out))
}
