//! Finitely presented graded modules and maps between them.

use std::sync::Arc;

use crate::algebra::{Field, GradedFree, GradedMatrix, Monomial, Vector};
use crate::error::{Error, Result};
use crate::groebner::{
    gb_of, hilbert_series, minimal_generators, syzygy_basis, HilbertSeries, Ring,
};

/// `M = coker(rels: F1 -> F0)` with `F0 = gens`.
#[derive(Clone, Debug)]
pub struct ModulePresentation<K: Field> {
    pub ring: Ring<K>,
    pub gens: GradedFree,
    pub rels: GradedMatrix<K>,
    pub minimal: bool,
}

/// Twists of homogeneous columns; zero columns get `None`.
pub(crate) fn column_degrees<K: Field>(cols: &[Vector<K>], target: &GradedFree) -> Vec<Option<i64>> {
    cols.iter().map(|c| c.degree(&target.twists)).collect()
}

/// Matrix whose columns are the nonzero entries of `cols`.
pub(crate) fn matrix_of<K: Field>(target: &GradedFree, cols: Vec<Vector<K>>) -> GradedMatrix<K> {
    let cols: Vec<Vector<K>> = cols.into_iter().filter(|c| !c.is_zero()).collect();
    let twists = column_degrees(&cols, target)
        .into_iter()
        .map(|d| d.unwrap())
        .collect();
    GradedMatrix {
        source: GradedFree::new(twists),
        target: target.clone(),
        cols,
    }
}

impl<K: Field> ModulePresentation<K> {
    /// Presentation from relation columns in `gens`; entries are reduced
    /// modulo the defining ideal and zero columns are dropped.
    pub fn new(ring: Ring<K>, gens: GradedFree, rels: Vec<Vector<K>>) -> Result<Self> {
        for (j, c) in rels.iter().enumerate() {
            if c.max_comp().map(|m| m as usize >= gens.rank()).unwrap_or(false) {
                return Err(Error::ShapeMismatch(format!(
                    "relation {} has an entry beyond row {}",
                    j + 1,
                    gens.rank()
                )));
            }
            if !c.is_homogeneous(&gens.twists) {
                return Err(Error::NotHomogeneous(format!("relation column {}", j + 1)));
            }
        }
        let cols = rels.iter().map(|c| ring.reduce(c)).collect();
        let rels = matrix_of(&gens, cols);
        Ok(ModulePresentation {
            ring,
            gens,
            rels,
            minimal: false,
        })
    }

    pub fn from_matrix(ring: Ring<K>, m: &GradedMatrix<K>) -> Result<Self> {
        if !m.validate_homogeneous() {
            return Err(Error::NotHomogeneous("relation matrix".into()));
        }
        ModulePresentation::new(ring, m.target.clone(), m.cols.clone())
    }

    pub fn free(ring: Ring<K>, twists: Vec<i64>) -> Self {
        let gens = GradedFree::new(twists);
        ModulePresentation {
            rels: GradedMatrix::zero(GradedFree::zero(), gens.clone()),
            ring,
            gens,
            minimal: true,
        }
    }

    /// R itself.
    pub fn ring_module(ring: Ring<K>) -> Self {
        ModulePresentation::free(ring, vec![0])
    }

    pub fn zero(ring: Ring<K>) -> Self {
        ModulePresentation::free(ring, Vec::new())
    }

    /// `R / (polys)`.
    pub fn cyclic(ring: Ring<K>, polys: &[Vector<K>]) -> Result<Self> {
        ModulePresentation::new(ring, GradedFree::new(vec![0]), polys.to_vec())
    }

    /// The residue field `k = R / m`.
    pub fn residue_field(ring: Ring<K>) -> Self {
        let vars: Vec<Vector<K>> = (0..ring.nvars())
            .map(|i| ring.poly.monomial_vector(ring.poly.var(i), 0))
            .collect();
        let mut m = ModulePresentation::cyclic(ring, &vars).expect("variables are homogeneous");
        m = minimal_presentation(&m);
        m
    }

    pub fn ngens(&self) -> usize {
        self.gens.rank()
    }

    pub fn nrels(&self) -> usize {
        self.rels.ncols()
    }

    /// `M(d)`: every generator degree moves up by `d`.
    pub fn shift(&self, d: i64) -> Self {
        ModulePresentation {
            ring: self.ring.clone(),
            gens: self.gens.shifted(d),
            rels: GradedMatrix {
                source: self.rels.source.shifted(d),
                target: self.rels.target.shifted(d),
                cols: self.rels.cols.clone(),
            },
            minimal: self.minimal,
        }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        ModulePresentation {
            ring: self.ring.clone(),
            gens: self.gens.sum(&other.gens),
            rels: self.rels.direct_sum(&self.ring.poly, &other.rels),
            minimal: self.minimal && other.minimal,
        }
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        hilbert_series(&self.ring, &self.gens, &self.rels.cols)
    }

    /// `None` for the zero module.
    pub fn krull_dimension(&self) -> Option<usize> {
        self.hilbert_series().pole_order()
    }

    pub fn is_zero(&self) -> bool {
        self.ngens() == 0 || self.hilbert_series().is_zero()
    }

    /// k-dimension when finite.
    pub fn length(&self) -> Option<u64> {
        self.hilbert_series().length()
    }

    pub fn is_free(&self) -> bool {
        minimal_presentation(self).nrels() == 0
    }

    /// True iff `v` (an element of the generator free module) is zero in M.
    pub fn is_zero_element(&self, v: &Vector<K>) -> bool {
        gb_of(&self.ring, &self.gens, &self.rels.cols).contains(v)
    }

    /// Number of minimal generators.
    pub fn nu(&self) -> usize {
        minimal_presentation(self).ngens()
    }

    pub fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring)
    }
}

/// Result of minimizing a presentation: the new module, the indices of the
/// old generators that survive, and the projection from the old generator
/// free module onto the new one (an isomorphism on modules).
#[derive(Clone, Debug)]
pub struct Minimized<K: Field> {
    pub module: ModulePresentation<K>,
    pub kept: Vec<usize>,
    pub projection: GradedMatrix<K>,
}

/// Unit entries are eliminated by Gaussian pruning, then the remaining
/// relations are trimmed to a minimal generating set.
pub fn minimize_tracked<K: Field>(m: &ModulePresentation<K>) -> Minimized<K> {
    let r = &m.ring;
    let poly = &r.poly;
    let k = &poly.field;
    let n = m.ngens();
    let mut cols: Vec<Vector<K>> = m.rels.cols.iter().map(|c| r.reduce(c)).collect();
    cols.retain(|c| !c.is_zero());
    let mut eliminated: Vec<(usize, Vector<K>)> = Vec::new();
    let mut alive = vec![true; n];
    loop {
        let mut pivot = None;
        'search: for (j, c) in cols.iter().enumerate() {
            for t in &c.terms {
                if t.mono.is_one() {
                    pivot = Some((j, t.comp as usize, t.coeff.clone()));
                    break 'search;
                }
            }
        }
        let Some((j, i, c)) = pivot else { break };
        let pcol = cols.swap_remove(j);
        let cinv = k.inv(&c).expect("unit pivot");
        let mcinv = k.neg(&cinv);
        for col in cols.iter_mut() {
            let e = poly.component(col, i as u32);
            if e.is_zero() {
                continue;
            }
            let prod = poly.mul_poly(&e, &pcol);
            *col = r.reduce(&poly.axpy(col, &mcinv, &Monomial::ONE, &prod));
        }
        cols.retain(|c| !c.is_zero());
        // e_i = -(1/c) (pcol - c e_i)
        let ei = poly.constant(c.clone(), i as u32);
        let rest = poly.sub(&pcol, &ei);
        eliminated.push((i, poly.scale(&rest, &mcinv, &Monomial::ONE)));
        alive[i] = false;
    }
    let kept: Vec<usize> = (0..n).filter(|&i| alive[i]).collect();
    let mut newidx = vec![u32::MAX; n];
    for (ni, &oi) in kept.iter().enumerate() {
        newidx[oi] = ni as u32;
    }
    let gens = GradedFree::new(kept.iter().map(|&i| m.gens.twists[i]).collect());
    let cols: Vec<Vector<K>> = cols
        .iter()
        .map(|c| poly.map_comps(c, |x| newidx[x as usize]))
        .collect();
    let keep_rels = minimal_generators(r, &gens, &[], &cols);
    let rels = matrix_of(&gens, keep_rels.iter().map(|&i| cols[i].clone()).collect());

    let mut images: Vec<Vector<K>> = (0..n)
        .map(|i| {
            if alive[i] {
                poly.basis_vector(newidx[i])
            } else {
                Vector::zero()
            }
        })
        .collect();
    for (i, expr) in eliminated.iter().rev() {
        let p = GradedMatrix {
            source: m.gens.clone(),
            target: gens.clone(),
            cols: images.clone(),
        };
        images[*i] = r.reduce(&p.apply(poly, expr));
    }
    let projection = GradedMatrix {
        source: m.gens.clone(),
        target: gens.clone(),
        cols: images,
    };
    Minimized {
        module: ModulePresentation {
            ring: m.ring.clone(),
            gens,
            rels,
            minimal: true,
        },
        kept,
        projection,
    }
}

pub fn minimal_presentation<K: Field>(m: &ModulePresentation<K>) -> ModulePresentation<K> {
    if m.minimal {
        return m.clone();
    }
    minimize_tracked(m).module
}

/// Presents `(im z + im rels) / im rels` inside the free module `ambient`,
/// minimally. Returns the module together with the columns of `z` that
/// serve as its generators.
pub fn subquotient<K: Field>(
    ring: &Ring<K>,
    ambient: &GradedFree,
    z: &GradedMatrix<K>,
    rels: &[Vector<K>],
) -> (ModulePresentation<K>, GradedMatrix<K>) {
    let relm = matrix_of(ambient, rels.iter().map(|c| ring.reduce(c)).collect());
    let zr = GradedMatrix {
        source: z.source.clone(),
        target: ambient.clone(),
        cols: z.cols.iter().map(|c| ring.reduce(c)).collect(),
    };
    let big = zr.hstack(&relm).expect("same ambient");
    let syz = syzygy_basis(ring, &big);
    let nz = z.ncols() as u32;
    let prels: Vec<Vector<K>> = syz
        .cols
        .iter()
        .map(|c| ring.poly.slice(c, 0, nz))
        .collect();
    let m = ModulePresentation {
        ring: ring.clone(),
        gens: z.source.clone(),
        rels: matrix_of(&z.source, prels),
        minimal: false,
    };
    let min = minimize_tracked(&m);
    let zk = zr.select_cols(&min.kept);
    (min.module, zk)
}

/// A degree-preserving homomorphism given on generators.
#[derive(Clone, Debug)]
pub struct ModuleMap<K: Field> {
    pub source: ModulePresentation<K>,
    pub target: ModulePresentation<K>,
    pub matrix: GradedMatrix<K>,
}

impl<K: Field> ModuleMap<K> {
    /// Checks that relations go to relations.
    pub fn new(
        source: ModulePresentation<K>,
        target: ModulePresentation<K>,
        matrix: GradedMatrix<K>,
    ) -> Result<Self> {
        if matrix.source != source.gens || matrix.target != target.gens {
            return Err(Error::TwistMismatch("map does not match generator modules".into()));
        }
        if !matrix.validate_homogeneous() {
            return Err(Error::NotHomogeneous("module map".into()));
        }
        let f = ModuleMap {
            source,
            target,
            matrix,
        };
        if !f.is_well_defined() {
            return Err(Error::Invalid("relations are not mapped into relations".into()));
        }
        Ok(f)
    }

    pub fn is_well_defined(&self) -> bool {
        let r = &self.source.ring;
        let gb = gb_of(r, &self.target.gens, &self.target.rels.cols);
        self.source
            .rels
            .cols
            .iter()
            .all(|c| gb.contains(&self.matrix.apply(&r.poly, c)))
    }

    /// Kernel as a subquotient of the source.
    pub fn kernel(&self) -> ModulePresentation<K> {
        let r = &self.source.ring;
        let big = self
            .matrix
            .hstack(&self.target.rels)
            .expect("target generators agree");
        let syz = syzygy_basis(r, &big);
        let m = self.source.ngens() as u32;
        let cols: Vec<Vector<K>> = syz.cols.iter().map(|c| r.poly.slice(c, 0, m)).collect();
        let z = matrix_of(&self.source.gens, cols);
        subquotient(r, &self.source.gens, &z, &self.source.rels.cols).0
    }

    pub fn cokernel(&self) -> ModulePresentation<K> {
        let mut cols = self.target.rels.cols.clone();
        cols.extend(self.matrix.cols.iter().cloned());
        ModulePresentation::new(self.source.ring.clone(), self.target.gens.clone(), cols)
            .expect("homogeneous by construction")
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        self.cokernel().is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_surjective() && self.is_injective()
    }
}
