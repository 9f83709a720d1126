//! Positively graded quotient rings R = S / I with a frozen Gröbner basis.

use std::sync::{Arc, OnceLock};

use super::engine::{Gb, Input};
use super::hilbert::{monomial_numerator, HilbertSeries};
use crate::algebra::{Field, PolyRing, TermOrder, Vector};
use crate::error::{Error, Result};

#[derive(Debug)]
pub struct QuotientRing<K: Field> {
    pub poly: Arc<PolyRing<K>>,
    relations: Vec<Vector<K>>,
    gb: Arc<Vec<Vector<K>>>,
    hilbert: OnceLock<HilbertSeries>,
    depth: OnceLock<i64>,
}

impl<K: Field> QuotientRing<K> {
    /// Builds R = S / (relations); every relation must be homogeneous and
    /// of positive degree.
    pub fn new(poly: Arc<PolyRing<K>>, relations: Vec<Vector<K>>) -> Result<Arc<Self>> {
        for (i, f) in relations.iter().enumerate() {
            if !f.is_homogeneous(&[0]) {
                return Err(Error::NotHomogeneous(format!(
                    "relation {} ({})",
                    i + 1,
                    poly.format_poly(f)
                )));
            }
            if f.terms.iter().any(|t| t.mono.is_one()) {
                return Err(Error::InvalidRing(format!(
                    "relation {} has a constant term",
                    i + 1
                )));
            }
        }
        let nonzero: Vec<Vector<K>> = relations.iter().filter(|f| !f.is_zero()).cloned().collect();
        let mut gb = Gb::new(poly.clone(), Arc::new(Vec::new()), vec![0]);
        gb.run(
            nonzero
                .iter()
                .map(|f| Input::must(f.clone(), f.terms[0].mono.deg() as i64))
                .collect(),
        );
        let mut basis = gb.reduced_basis();
        basis.sort_by(|a, b| poly.cmp_terms(&b.terms[0], &a.terms[0]));
        Ok(Arc::new(QuotientRing {
            poly,
            relations,
            gb: Arc::new(basis),
            hilbert: OnceLock::new(),
            depth: OnceLock::new(),
        }))
    }

    /// Convenience constructor from variable names, weights and relation
    /// strings.
    pub fn parse(field: K, vars: &[&str], weights: &[u32], relations: &[&str]) -> Result<Arc<Self>> {
        let poly = Arc::new(PolyRing::new(
            field,
            vars.iter().map(|s| s.to_string()).collect(),
            weights.to_vec(),
            TermOrder::default(),
        )?);
        let rels = relations
            .iter()
            .map(|s| poly.parse(s))
            .collect::<Result<Vec<_>>>()?;
        QuotientRing::new(poly, rels)
    }

    /// The polynomial ring S itself.
    pub fn ambient(&self) -> Arc<Self> {
        QuotientRing::new(self.poly.clone(), Vec::new()).expect("polynomial ring")
    }

    pub fn field(&self) -> &K {
        &self.poly.field
    }

    pub fn nvars(&self) -> usize {
        self.poly.nvars()
    }

    pub fn relations(&self) -> &[Vector<K>] {
        &self.relations
    }

    /// Reduced monic Gröbner basis of the defining ideal.
    pub fn ideal_gb(&self) -> &Arc<Vec<Vector<K>>> {
        &self.gb
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.gb.is_empty()
    }

    /// Normal form of a vector modulo I·S^r.
    pub fn reduce(&self, v: &Vector<K>) -> Vector<K> {
        if self.gb.is_empty() {
            return v.clone();
        }
        let rank = v.max_comp().map(|c| c as usize + 1).unwrap_or(1);
        let gb = Gb::new(self.poly.clone(), self.gb.clone(), vec![0; rank]);
        gb.normal_form(v)
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        self.hilbert.get_or_init(|| {
            let leads: Vec<_> = self.gb.iter().map(|g| g.terms[0].mono).collect();
            HilbertSeries {
                numerator: monomial_numerator(&leads, &self.poly.weights),
                weights: self.poly.weights.clone(),
            }
        })
    }

    pub fn krull_dimension(&self) -> usize {
        self.hilbert_series().pole_order().unwrap_or(0)
    }

    pub fn is_artinian(&self) -> bool {
        self.krull_dimension() == 0
    }

    /// Cached depth, filled by the invariants layer.
    pub fn cached_depth(&self) -> Option<i64> {
        self.depth.get().copied()
    }

    pub fn set_cached_depth(&self, d: i64) {
        let _ = self.depth.set(d);
    }

    pub fn describe(&self) -> String {
        let vars: Vec<String> = self
            .poly
            .names
            .iter()
            .zip(&self.poly.weights)
            .map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}:{w}") })
            .collect();
        let rels: Vec<String> = self.relations.iter().map(|f| self.poly.format_poly(f)).collect();
        if rels.is_empty() {
            format!("{}[{}]", self.poly.field.name(), vars.join(","))
        } else {
            format!("{}[{}]/({})", self.poly.field.name(), vars.join(","), rels.join(", "))
        }
    }
}
