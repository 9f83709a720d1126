//! Gröbner bases, normal forms, syzygies, kernels, lifts and Hilbert series
//! for graded submodules of free modules over R = S / I.

pub mod engine;
pub mod hilbert;
pub mod ring;

use std::sync::Arc;

pub use engine::{Gb, Input, Role};
pub use hilbert::{monomial_numerator, HilbertSeries, Laurent};
pub use ring::QuotientRing;

use crate::algebra::{Field, GradedFree, GradedMatrix, Vector};
use crate::error::{Error, Result};

/// A submodule of a graded free module, given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubmodulePresentation<K: Field> {
    pub ambient: GradedFree,
    pub gens: Vec<Vector<K>>,
}

impl<K: Field> SubmodulePresentation<K> {
    pub fn new(ambient: GradedFree, gens: Vec<Vector<K>>) -> Result<Self> {
        for (i, g) in gens.iter().enumerate() {
            if g.max_comp().map(|c| c as usize >= ambient.rank()).unwrap_or(false) {
                return Err(Error::ShapeMismatch(format!("generator {i} exceeds ambient rank")));
            }
            if !g.is_homogeneous(&ambient.twists) {
                return Err(Error::NotHomogeneous(format!("generator {i}")));
            }
        }
        Ok(SubmodulePresentation { ambient, gens })
    }

    pub fn from_matrix(m: &GradedMatrix<K>) -> Self {
        SubmodulePresentation {
            ambient: m.target.clone(),
            gens: m.cols.clone(),
        }
    }

    /// Generators as the columns of a matrix into the ambient module.
    pub fn to_matrix(&self) -> GradedMatrix<K> {
        let twists = self
            .gens
            .iter()
            .map(|g| g.degree(&self.ambient.twists).unwrap_or(0))
            .collect();
        GradedMatrix {
            source: GradedFree::new(twists),
            target: self.ambient.clone(),
            cols: self.gens.clone(),
        }
    }
}

fn new_gb<K: Field>(r: &QuotientRing<K>, twists: &[i64]) -> Gb<K> {
    Gb::new(r.poly.clone(), r.ideal_gb().clone(), twists.to_vec())
}

/// Completed Gröbner basis of `gens + I·F` inside the free module `F`.
pub fn gb_of<K: Field>(r: &QuotientRing<K>, ambient: &GradedFree, gens: &[Vector<K>]) -> Gb<K> {
    let mut gb = new_gb(r, &ambient.twists);
    gb.run(
        gens.iter()
            .filter(|g| !g.is_zero())
            .map(|g| Input::must(g.clone(), g.degree(&ambient.twists).unwrap()))
            .collect(),
    );
    gb
}

/// Reduced Gröbner basis of a submodule (the part of I·F is implicit).
pub fn groebner_basis<K: Field>(
    r: &QuotientRing<K>,
    sub: &SubmodulePresentation<K>,
) -> SubmodulePresentation<K> {
    let gb = gb_of(r, &sub.ambient, &sub.gens);
    let mut basis = gb.reduced_basis();
    basis.sort_by(|a, b| r.poly.cmp_terms(&b.terms[0], &a.terms[0]));
    SubmodulePresentation {
        ambient: sub.ambient.clone(),
        gens: basis,
    }
}

/// Fully reduced remainder of `v` modulo a completed basis.
pub fn normal_form<K: Field>(gb: &Gb<K>, v: &Vector<K>) -> Vector<K> {
    gb.normal_form(v)
}

/// Indices of `cands` forming minimal generators of
/// `(must + cands) / must`, processed by degree.
pub fn minimal_generators<K: Field>(
    r: &QuotientRing<K>,
    ambient: &GradedFree,
    must: &[Vector<K>],
    cands: &[Vector<K>],
) -> Vec<usize> {
    let mut gb = new_gb(r, &ambient.twists);
    gb.set_tail_reduce(false);
    let mut inputs: Vec<Input<K>> = cands
        .iter()
        .map(|c| Input::candidate(c.clone(), c.degree(&ambient.twists).unwrap_or(i64::MIN)))
        .collect();
    let nc = inputs.len();
    inputs.extend(
        must.iter()
            .filter(|g| !g.is_zero())
            .map(|g| Input::must(g.clone(), g.degree(&ambient.twists).unwrap())),
    );
    gb.run(inputs);
    (0..nc).filter(|&i| gb.kept()[i]).collect()
}

/// Minimal generators of the syzygy module of the columns of `m` over R,
/// as the columns of a matrix with target `m.source`.
pub fn syzygy_basis<K: Field>(r: &QuotientRing<K>, m: &GradedMatrix<K>) -> GradedMatrix<K> {
    let mut gb = new_gb(r, &m.target.twists);
    gb.run(
        m.cols
            .iter()
            .zip(&m.source.twists)
            .map(|(c, &d)| Input::tracked(c.clone(), d))
            .collect(),
    );
    let syz: Vec<Vector<K>> = gb
        .syzygies()
        .iter()
        .map(|s| r.reduce(s))
        .filter(|s| !s.is_zero())
        .collect();
    let keep = minimal_generators(r, &m.source, &[], &syz);
    let cols: Vec<Vector<K>> = keep.iter().map(|&i| syz[i].clone()).collect();
    let twists = cols
        .iter()
        .map(|c| c.degree(&m.source.twists).unwrap())
        .collect();
    GradedMatrix {
        source: GradedFree::new(twists),
        target: m.source.clone(),
        cols,
    }
}

/// Generators of the kernel of `f` as a submodule of its source.
pub fn kernel<K: Field>(r: &QuotientRing<K>, f: &GradedMatrix<K>) -> SubmodulePresentation<K> {
    SubmodulePresentation::from_matrix(&syzygy_basis(r, f))
}

/// Solves `through ∘ X = target` over R.
pub fn lift<K: Field>(
    r: &QuotientRing<K>,
    target: &GradedMatrix<K>,
    through: &GradedMatrix<K>,
) -> Result<GradedMatrix<K>> {
    if target.target.rank() != through.target.rank() {
        return Err(Error::ShapeMismatch("lift: targets differ in rank".into()));
    }
    let mut gb = new_gb(r, &through.target.twists);
    gb.run(
        through
            .cols
            .iter()
            .zip(&through.source.twists)
            .map(|(c, &d)| Input::tracked(c.clone(), d))
            .collect(),
    );
    let mut cols = Vec::with_capacity(target.ncols());
    for c in &target.cols {
        if through.ncols() == 0 {
            if r.reduce(c).is_zero() {
                cols.push(Vector::zero());
                continue;
            }
            return Err(Error::NotLiftable);
        }
        let (nf, rep) = gb.normal_form_tracked(c);
        if !nf.is_zero() {
            return Err(Error::NotLiftable);
        }
        cols.push(r.reduce(&rep));
    }
    Ok(GradedMatrix {
        source: target.source.clone(),
        target: through.source.clone(),
        cols,
    })
}

/// Hilbert series of `F / (gens + I·F)` computed from leading terms.
pub fn hilbert_series<K: Field>(
    r: &QuotientRing<K>,
    ambient: &GradedFree,
    gens: &[Vector<K>],
) -> HilbertSeries {
    let gb = gb_of(r, ambient, gens);
    hilbert_from_gb(r, &gb)
}

pub fn hilbert_from_gb<K: Field>(r: &QuotientRing<K>, gb: &Gb<K>) -> HilbertSeries {
    let w = &r.poly.weights;
    let ideal = gb.ideal_leads();
    let mut num = Laurent::zero();
    for (c, &t) in gb.twists().iter().enumerate() {
        let mut leads = ideal.clone();
        leads.extend(gb.leads_in(c));
        num = num.add(&monomial_numerator(&leads, w).shift(t));
    }
    HilbertSeries {
        numerator: num,
        weights: w.clone(),
    }
}

/// Krull dimension of `F / (gens)`; `None` for the zero module.
pub fn krull_dimension<K: Field>(
    r: &QuotientRing<K>,
    ambient: &GradedFree,
    gens: &[Vector<K>],
) -> Option<usize> {
    hilbert_series(r, ambient, gens).pole_order()
}

/// Reduces every entry of a matrix modulo I.
pub fn reduce_matrix<K: Field>(r: &QuotientRing<K>, m: &GradedMatrix<K>) -> GradedMatrix<K> {
    GradedMatrix {
        source: m.source.clone(),
        target: m.target.clone(),
        cols: m.cols.iter().map(|c| r.reduce(c)).collect(),
    }
}

/// Shared handle type used throughout the crate.
pub type Ring<K> = Arc<QuotientRing<K>>;
