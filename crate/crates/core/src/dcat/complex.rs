//! Bounded complexes of finitely presented graded modules, trust windows
//! and chain maps.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, GradedFree, GradedMatrix, Vector};
use crate::error::{Error, Result};
use crate::groebner::{gb_of, Ring};
use crate::modops::ModulePresentation;

/// Stand-in for ±∞ in window arithmetic.
pub const INF: i64 = 1 << 40;

/// Homological degrees `lo..=hi` in which the representative's homology
/// agrees with the object it stands for.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Window {
    pub lo: i64,
    pub hi: i64,
}

fn clamp(x: i64) -> i64 {
    x.clamp(-INF, INF)
}

impl Window {
    pub fn new(lo: i64, hi: i64) -> Self {
        Window {
            lo: clamp(lo),
            hi: clamp(hi),
        }
    }

    pub fn full() -> Self {
        Window { lo: -INF, hi: INF }
    }

    pub fn upto(hi: i64) -> Self {
        Window::new(-INF, hi)
    }

    pub fn empty() -> Self {
        Window { lo: INF, hi: -INF }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn contains(&self, n: i64) -> bool {
        self.lo <= n && n <= self.hi
    }

    pub fn lo_finite(&self) -> Option<i64> {
        (self.lo > -INF).then_some(self.lo)
    }

    pub fn hi_finite(&self) -> Option<i64> {
        (self.hi < INF).then_some(self.hi)
    }

    pub fn is_full(&self) -> bool {
        self.lo <= -INF && self.hi >= INF
    }

    pub fn intersect(&self, o: &Window) -> Window {
        Window {
            lo: self.lo.max(o.lo),
            hi: self.hi.min(o.hi),
        }
    }

    /// Moves both ends by `n`; infinite ends stay infinite.
    pub fn shift(&self, n: i64) -> Window {
        let mv = |x: i64| if x.abs() >= INF { x } else { clamp(x + n) };
        Window {
            lo: mv(self.lo),
            hi: mv(self.hi),
        }
    }

    /// Shrinks finite ends inward by the given amounts.
    pub fn shrink(&self, bottom: i64, top: i64) -> Window {
        Window {
            lo: if self.lo <= -INF { self.lo } else { self.lo + bottom },
            hi: if self.hi >= INF { self.hi } else { self.hi - top },
        }
    }

    pub fn describe(&self) -> String {
        let f = |x: i64, neg: bool| {
            if x.abs() >= INF {
                if neg { "-inf".to_string() } else { "inf".to_string() }
            } else {
                x.to_string()
            }
        };
        format!("[{}, {}]", f(self.lo, true), f(self.hi, false))
    }
}

/// A bounded complex `X_n` (n = lo..=hi) of modules `X_n = F_n / U_n` with
/// `F_n` free; free complexes have every `U_n = 0`.
#[derive(Clone, Debug)]
pub struct Complex<K: Field> {
    pub ring: Ring<K>,
    pub lo: i64,
    pub terms: Vec<GradedFree>,
    pub rels: Vec<Vec<Vector<K>>>,
    /// `diffs[k]` maps term `lo + k` to term `lo + k - 1`.
    pub diffs: Vec<GradedMatrix<K>>,
    pub window: Window,
}

impl<K: Field> Complex<K> {
    pub fn zero(ring: Ring<K>) -> Self {
        Complex {
            ring,
            lo: 0,
            terms: Vec::new(),
            rels: Vec::new(),
            diffs: Vec::new(),
            window: Window::full(),
        }
    }

    /// Assembles a complex from terms starting at `lo`; `diffs[k]` must map
    /// term `lo + k` to term `lo + k - 1` (the first one to the zero module).
    pub fn new(
        ring: Ring<K>,
        lo: i64,
        terms: Vec<GradedFree>,
        rels: Vec<Vec<Vector<K>>>,
        diffs: Vec<GradedMatrix<K>>,
        window: Window,
    ) -> Result<Self> {
        if terms.len() != rels.len() || terms.len() != diffs.len() {
            return Err(Error::ShapeMismatch("terms, relations and differentials differ in count".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            let below = if k == 0 { GradedFree::zero() } else { terms[k - 1].clone() };
            if d.source != terms[k] || d.target != below {
                return Err(Error::TwistMismatch(format!(
                    "differential at degree {} does not match its terms",
                    lo + k as i64
                )));
            }
            if !d.validate_homogeneous() {
                return Err(Error::NotHomogeneous(format!("differential at degree {}", lo + k as i64)));
            }
        }
        let mut c = Complex {
            ring,
            lo,
            terms,
            rels,
            diffs,
            window,
        };
        c.trim();
        Ok(c)
    }

    /// Drops zero terms at both ends.
    pub fn trim(&mut self) {
        while self.terms.last().map(|t| t.rank() == 0).unwrap_or(false) {
            self.terms.pop();
            self.rels.pop();
            self.diffs.pop();
        }
        let mut cut = 0;
        while cut < self.terms.len() && self.terms[cut].rank() == 0 {
            cut += 1;
        }
        if cut > 0 {
            self.terms.drain(..cut);
            self.rels.drain(..cut);
            self.diffs.drain(..cut);
            self.lo += cut as i64;
            if let Some(d) = self.diffs.first_mut() {
                *d = GradedMatrix::zero(d.source.clone(), GradedFree::zero());
            }
        }
        if self.terms.is_empty() {
            self.lo = 0;
        }
    }

    pub fn is_zero_complex(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree with a term (lo - 1 for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    fn idx(&self, n: i64) -> Option<usize> {
        if n < self.lo || n > self.hi() {
            None
        } else {
            Some((n - self.lo) as usize)
        }
    }

    pub fn term(&self, n: i64) -> GradedFree {
        self.idx(n).map(|i| self.terms[i].clone()).unwrap_or_default()
    }

    pub fn rank(&self, n: i64) -> usize {
        self.idx(n).map(|i| self.terms[i].rank()).unwrap_or(0)
    }

    pub fn rels_at(&self, n: i64) -> &[Vector<K>] {
        match self.idx(n) {
            Some(i) => &self.rels[i],
            None => &[],
        }
    }

    /// `∂_n : X_n -> X_{n-1}` (a zero matrix outside the support).
    pub fn diff(&self, n: i64) -> GradedMatrix<K> {
        match self.idx(n) {
            Some(i) => self.diffs[i].clone(),
            None => GradedMatrix::zero(self.term(n), self.term(n - 1)),
        }
    }

    pub fn is_free(&self) -> bool {
        self.rels.iter().all(|r| r.is_empty())
    }

    /// Degree of the first term that may differ from a genuine
    /// semi-projective resolution (∞ when the window is unbounded above).
    pub fn top(&self) -> i64 {
        if self.window.hi >= INF {
            INF
        } else {
            self.window.hi + 1
        }
    }

    /// The module M as a complex concentrated in degree 0.
    pub fn from_presentation(m: &ModulePresentation<K>) -> Self {
        let mut c = Complex {
            ring: m.ring.clone(),
            lo: 0,
            terms: vec![m.gens.clone()],
            rels: vec![m.rels.cols.clone()],
            diffs: vec![GradedMatrix::zero(m.gens.clone(), GradedFree::zero())],
            window: Window::full(),
        };
        c.trim();
        c
    }

    /// Checks `∂∂ = 0` and `∂(U_n) ⊆ U_{n-1}`, exactly.
    pub fn validate(&self) -> Result<()> {
        let poly = &self.ring.poly;
        for n in self.lo..=self.hi() {
            let d = self.diff(n);
            let below = self.term(n - 1);
            let gb = gb_of(&self.ring, &below, self.rels_at(n - 1));
            for u in self.rels_at(n) {
                if !gb.contains(&d.apply(poly, u)) {
                    return Err(Error::Invalid(format!("∂ does not preserve relations at degree {n}")));
                }
            }
            if n - 1 >= self.lo {
                let dd = self.diff(n - 1).compose(poly, &d)?;
                let below2 = self.term(n - 2);
                let gb2 = gb_of(&self.ring, &below2, self.rels_at(n - 2));
                if dd.cols.iter().any(|c| !gb2.contains(c)) {
                    return Err(Error::Invalid(format!("∂∂ ≠ 0 at degree {n}")));
                }
            }
        }
        Ok(())
    }
}

/// Degreewise maps of generator free modules commuting with the
/// differentials (modulo the target relations).
#[derive(Clone, Debug)]
pub struct ChainMap<K: Field> {
    pub source: Complex<K>,
    pub target: Complex<K>,
    /// `comps[k]` is the component at degree `source.lo + k`.
    pub comps: Vec<GradedMatrix<K>>,
    /// Degrees in which the map represents the intended morphism.
    pub window: Window,
}

impl<K: Field> ChainMap<K> {
    pub fn comp(&self, n: i64) -> GradedMatrix<K> {
        let k = n - self.source.lo;
        if k >= 0 && (k as usize) < self.comps.len() {
            self.comps[k as usize].clone()
        } else {
            GradedMatrix::zero(self.source.term(n), self.target.term(n))
        }
    }

    pub fn identity(x: &Complex<K>) -> Self {
        let comps = (x.lo..=x.hi())
            .map(|n| GradedMatrix::identity(&x.ring.poly, &x.term(n)))
            .collect();
        ChainMap {
            source: x.clone(),
            target: x.clone(),
            comps,
            window: x.window,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let ring = &self.source.ring;
        let poly = &ring.poly;
        let lo = self.source.lo.min(self.target.lo);
        let hi = self.source.hi().max(self.target.hi());
        for n in lo..=hi + 1 {
            let f = self.comp(n);
            if f.source != self.source.term(n) || f.target != self.target.term(n) {
                return Err(Error::TwistMismatch(format!("chain map component at degree {n}")));
            }
            let gbn = gb_of(ring, &self.target.term(n), self.target.rels_at(n));
            for u in self.source.rels_at(n) {
                if !gbn.contains(&f.apply(poly, u)) {
                    return Err(Error::Invalid(format!("relations not preserved at degree {n}")));
                }
            }
            let lhs = self.target.diff(n).compose(poly, &f)?;
            let rhs = self.comp(n - 1).compose(poly, &self.source.diff(n))?;
            let gb = gb_of(ring, &self.target.term(n - 1), self.target.rels_at(n - 1));
            for (a, b) in lhs.cols.iter().zip(&rhs.cols) {
                if !gb.contains(&poly.sub(a, b)) {
                    return Err(Error::Invalid(format!("chain map does not commute at degree {n}")));
                }
            }
        }
        Ok(())
    }
}
