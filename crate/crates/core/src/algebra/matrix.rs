//! Graded free modules and homogeneous matrices between them.

use serde::{Deserialize, Serialize};

use super::field::Field;
use super::poly::{PolyRing, Term, Vector};
use crate::error::{Error, Result};

/// Free module whose i-th generator sits in degree `twists[i]`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GradedFree {
    pub twists: Vec<i64>,
}

impl GradedFree {
    pub fn new(twists: Vec<i64>) -> Self {
        GradedFree { twists }
    }

    pub fn zero() -> Self {
        GradedFree { twists: Vec::new() }
    }

    pub fn uniform(rank: usize, twist: i64) -> Self {
        GradedFree {
            twists: vec![twist; rank],
        }
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn sum(&self, other: &GradedFree) -> GradedFree {
        let mut t = self.twists.clone();
        t.extend_from_slice(&other.twists);
        GradedFree { twists: t }
    }

    pub fn shifted(&self, d: i64) -> GradedFree {
        GradedFree {
            twists: self.twists.iter().map(|t| t + d).collect(),
        }
    }
}

/// Matrix stored by columns; column j is the image of the j-th source
/// generator, an element of the target free module.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedMatrix<K: Field> {
    pub source: GradedFree,
    pub target: GradedFree,
    pub cols: Vec<Vector<K>>,
}

impl<K: Field> GradedMatrix<K> {
    pub fn new(source: GradedFree, target: GradedFree, cols: Vec<Vector<K>>) -> Result<Self> {
        if cols.len() != source.rank() {
            return Err(Error::ShapeMismatch(format!(
                "{} columns for a source of rank {}",
                cols.len(),
                source.rank()
            )));
        }
        for c in &cols {
            if let Some(m) = c.max_comp() {
                if m as usize >= target.rank() {
                    return Err(Error::ShapeMismatch(format!(
                        "column entry in row {m} exceeds target rank {}",
                        target.rank()
                    )));
                }
            }
        }
        Ok(GradedMatrix {
            source,
            target,
            cols,
        })
    }

    pub fn zero(source: GradedFree, target: GradedFree) -> Self {
        let n = source.rank();
        GradedMatrix {
            source,
            target,
            cols: vec![Vector::zero(); n],
        }
    }

    pub fn identity(ring: &PolyRing<K>, f: &GradedFree) -> Self {
        GradedMatrix {
            source: f.clone(),
            target: f.clone(),
            cols: (0..f.rank()).map(|i| ring.basis_vector(i as u32)).collect(),
        }
    }

    pub fn nrows(&self) -> usize {
        self.target.rank()
    }

    pub fn ncols(&self) -> usize {
        self.source.rank()
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn entry(&self, ring: &PolyRing<K>, i: usize, j: usize) -> Vector<K> {
        ring.component(&self.cols[j], i as u32)
    }

    /// Builds a matrix from row-major polynomial entries.
    pub fn from_entries(
        ring: &PolyRing<K>,
        source: GradedFree,
        target: GradedFree,
        entries: &[Vec<Vector<K>>],
    ) -> Result<Self> {
        if entries.len() != target.rank() || entries.iter().any(|r| r.len() != source.rank()) {
            return Err(Error::ShapeMismatch("entry grid does not match ranks".into()));
        }
        let cols = (0..source.rank())
            .map(|j| {
                let terms = (0..target.rank())
                    .flat_map(|i| {
                        entries[i][j].terms.iter().map(move |t| Term {
                            comp: i as u32,
                            mono: t.mono,
                            coeff: t.coeff.clone(),
                        })
                    })
                    .collect();
                ring.normalize(terms)
            })
            .collect();
        GradedMatrix::new(source, target, cols)
    }

    /// Image of `v` (an element of the source) under the matrix.
    pub fn apply(&self, ring: &PolyRing<K>, v: &Vector<K>) -> Vector<K> {
        let k = &ring.field;
        let mut terms = Vec::new();
        for t in &v.terms {
            for s in &self.cols[t.comp as usize].terms {
                terms.push(Term {
                    comp: s.comp,
                    mono: t.mono.mul(&s.mono),
                    coeff: k.mul(&t.coeff, &s.coeff),
                });
            }
        }
        ring.normalize(terms)
    }

    /// `self ∘ g`; requires `self.source == g.target`.
    pub fn compose(&self, ring: &PolyRing<K>, g: &GradedMatrix<K>) -> Result<GradedMatrix<K>> {
        if self.source.rank() != g.target.rank() {
            return Err(Error::ShapeMismatch(format!(
                "cannot compose {}x{} after {}x{}",
                self.nrows(),
                self.ncols(),
                g.nrows(),
                g.ncols()
            )));
        }
        if self.source != g.target {
            return Err(Error::TwistMismatch("inner free modules differ".into()));
        }
        let cols = g.cols.iter().map(|c| self.apply(ring, c)).collect();
        let out = GradedMatrix {
            source: g.source.clone(),
            target: self.target.clone(),
            cols,
        };
        debug_assert!(
            !(self.validate_homogeneous() && g.validate_homogeneous()) || out.validate_homogeneous()
        );
        Ok(out)
    }

    /// True iff entry (i,j) is zero or homogeneous of degree
    /// `source[j] - target[i]`.
    pub fn validate_homogeneous(&self) -> bool {
        self.cols.iter().enumerate().all(|(j, c)| {
            let d = self.source.twists[j];
            c.terms.iter().all(|t| {
                (t.comp as usize) < self.target.rank()
                    && t.mono.deg() as i64 + self.target.twists[t.comp as usize] == d
            })
        })
    }

    /// Columns of `self` followed by columns of `other`, same target.
    pub fn hstack(&self, other: &GradedMatrix<K>) -> Result<GradedMatrix<K>> {
        if self.target != other.target {
            return Err(Error::TwistMismatch("hstack targets differ".into()));
        }
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().cloned());
        Ok(GradedMatrix {
            source: self.source.sum(&other.source),
            target: self.target.clone(),
            cols,
        })
    }

    /// Block diagonal sum.
    pub fn direct_sum(&self, ring: &PolyRing<K>, other: &GradedMatrix<K>) -> GradedMatrix<K> {
        let off = self.nrows() as u32;
        let mut cols = self.cols.clone();
        cols.extend(other.cols.iter().map(|c| ring.offset(c, off)));
        GradedMatrix {
            source: self.source.sum(&other.source),
            target: self.target.sum(&other.target),
            cols,
        }
    }

    /// Keeps the listed columns.
    pub fn select_cols(&self, idx: &[usize]) -> GradedMatrix<K> {
        GradedMatrix {
            source: GradedFree::new(idx.iter().map(|&j| self.source.twists[j]).collect()),
            target: self.target.clone(),
            cols: idx.iter().map(|&j| self.cols[j].clone()).collect(),
        }
    }

    pub fn scale(&self, ring: &PolyRing<K>, c: &K::Elem) -> GradedMatrix<K> {
        GradedMatrix {
            source: self.source.clone(),
            target: self.target.clone(),
            cols: self
                .cols
                .iter()
                .map(|v| ring.scale(v, c, &super::monomial::Monomial::ONE))
                .collect(),
        }
    }

    /// Transpose; the dual of a map of free modules F -> G is G* -> F*
    /// where duals negate twists.
    pub fn transpose(&self, ring: &PolyRing<K>) -> GradedMatrix<K> {
        let mut rows: Vec<Vec<Term<K::Elem>>> = vec![Vec::new(); self.nrows()];
        for (j, c) in self.cols.iter().enumerate() {
            for t in &c.terms {
                rows[t.comp as usize].push(Term {
                    comp: j as u32,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                });
            }
        }
        GradedMatrix {
            source: self.target.negated(),
            target: self.source.negated(),
            cols: rows.into_iter().map(|r| ring.normalize(r)).collect(),
        }
    }

    pub fn format(&self, ring: &PolyRing<K>) -> Vec<Vec<String>> {
        (0..self.nrows())
            .map(|i| {
                (0..self.ncols())
                    .map(|j| ring.format_poly(&self.entry(ring, i, j)))
                    .collect()
            })
            .collect()
    }
}

impl GradedFree {
    pub fn negated(&self) -> GradedFree {
        GradedFree {
            twists: self.twists.iter().map(|t| -t).collect(),
        }
    }
}
