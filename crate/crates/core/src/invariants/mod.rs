//! Betti and Bass tables, depth, dimension, type, Cohen–Macaulayness,
//! finiteness detectors for projective and injective dimension, Ext and
//! Tor dimensions and grade.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::dcat::{
    from_module, hom_complex, homology_dims, homology_hs, homology_module, resolve_complex,
    tensor_complex, truncate_quotient, Complex, HomologyDims,
};
use crate::error::{Error, Result};
use crate::groebner::Ring;
use crate::modops::{minimal_presentation, ModulePresentation};

/// Hard cap for automatic bound raising.
pub const BOUND_CAP: usize = 64;

/// A module or a complex, as accepted by the invariant functions.
#[derive(Clone, Debug)]
pub enum Object<K: Field> {
    Module(ModulePresentation<K>),
    Complex(Complex<K>),
}

impl<K: Field> From<ModulePresentation<K>> for Object<K> {
    fn from(m: ModulePresentation<K>) -> Self {
        Object::Module(m)
    }
}

impl<K: Field> From<Complex<K>> for Object<K> {
    fn from(c: Complex<K>) -> Self {
        Object::Complex(c)
    }
}

impl<K: Field> Object<K> {
    pub fn ring(&self) -> &Ring<K> {
        match self {
            Object::Module(m) => &m.ring,
            Object::Complex(c) => &c.ring,
        }
    }

    /// Homology within the trusted window (a module sits in degree 0).
    pub fn homology(&self) -> HomologyDims {
        match self {
            Object::Module(m) => homology_dims(&Complex::from_presentation(m)),
            Object::Complex(c) => homology_dims(c),
        }
    }

    /// When the homology is concentrated in a single degree s, returns
    /// `(s, H_s)`; the object is then `Σ^s H_s`.
    pub fn as_shifted_module(&self) -> Option<(i64, ModulePresentation<K>)> {
        match self {
            Object::Module(m) => Some((0, m.clone())),
            Object::Complex(c) => {
                let h = homology_dims(c);
                if !c.window.is_full() {
                    let hi = h.sup?;
                    if hi >= c.window.hi {
                        return None;
                    }
                }
                match (h.sup, h.inf) {
                    (Some(s), Some(i)) if s == i => Some((s, homology_module(c, s))),
                    (None, None) if c.window.is_full() => {
                        Some((0, ModulePresentation::zero(c.ring.clone())))
                    }
                    _ => None,
                }
            }
        }
    }

    /// A complex with the same homology in all degrees, built from
    /// presented terms. Truncated free representatives are cut at the
    /// highest homology seen in their window.
    pub fn exact_model(&self) -> Complex<K> {
        match self {
            Object::Module(m) => Complex::from_presentation(m),
            Object::Complex(c) => {
                if c.window.hi_finite().is_none() {
                    return c.clone();
                }
                let h = homology_dims(c);
                let b = h.sup.unwrap_or(c.lo - 1).min(c.window.hi);
                truncate_quotient(c, b)
            }
        }
    }

    /// A free resolution representative whose trusted part reaches at least
    /// `bound` degrees above its lowest term.
    pub fn resolution(&self, bound: usize) -> Complex<K> {
        match self {
            Object::Module(m) => from_module(m, bound),
            Object::Complex(c) => {
                if c.is_zero_complex() {
                    return c.clone();
                }
                let x = self.exact_model();
                let lo = x.window.lo_finite().unwrap_or(x.lo).max(x.lo);
                resolve_complex(&x, lo + bound as i64).0
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Object::Module(m) => m.is_zero(),
            Object::Complex(c) => homology_dims(c).sup.is_none(),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TableKind {
    Betti,
    Bass,
}

/// Values indexed by homological (Betti) or cohomological (Bass) degree;
/// indices outside `certified` are absent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantTable {
    pub kind: TableKind,
    pub values: BTreeMap<i64, u64>,
    pub certified: (i64, i64),
}

impl InvariantTable {
    pub fn get(&self, i: i64) -> Option<u64> {
        self.values.get(&i).copied()
    }

    /// Smallest index carrying a nonzero value.
    pub fn first_nonzero(&self) -> Option<i64> {
        self.values.iter().find(|(_, &v)| v != 0).map(|(&i, _)| i)
    }

    pub fn last_nonzero(&self) -> Option<i64> {
        self.values.iter().rev().find(|(_, &v)| v != 0).map(|(&i, _)| i)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", content = "value")]
pub enum FinitenessStatus {
    FiniteCertified(i64),
    FiniteLikely(i64),
    UnknownAtLeast(i64),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FinitenessVerdict {
    pub status: FinitenessStatus,
    pub witness: String,
}

impl FinitenessVerdict {
    pub fn certified(&self) -> Option<i64> {
        match self.status {
            FinitenessStatus::FiniteCertified(n) => Some(n),
            _ => None,
        }
    }

    pub fn is_finite(&self) -> bool {
        !matches!(self.status, FinitenessStatus::UnknownAtLeast(_))
    }
}

/// β_i for i in the certified range, read as ranks of a minimal free
/// resolution representative.
pub fn betti_table<K: Field>(x: &Object<K>, bound: usize) -> InvariantTable {
    let bound = bound.max(1);
    let q = x.resolution(bound);
    let mut values = BTreeMap::new();
    if q.is_zero_complex() {
        let lo = match x {
            Object::Module(_) => 0,
            Object::Complex(c) => c.lo,
        };
        for i in lo..lo + bound as i64 {
            values.insert(i, 0);
        }
        return InvariantTable {
            kind: TableKind::Betti,
            values,
            certified: (lo, lo + bound as i64 - 1),
        };
    }
    let lo = q.lo;
    let mut hi = lo + bound as i64 - 1;
    if let Some(w) = q.window.hi_finite() {
        hi = hi.min(w);
    }
    if let Object::Complex(c) = x {
        if let Some(w) = c.window.hi_finite() {
            hi = hi.min(w - 1);
        }
    }
    for i in lo..=hi {
        values.insert(i, q.rank(i) as u64);
    }
    InvariantTable {
        kind: TableKind::Betti,
        values,
        certified: (lo, hi),
    }
}

/// μ^i = dim_k H_{-i}(Hom(K, X)) for `i ≤ bound`, K the minimal resolution
/// of k.
pub fn bass_table<K: Field>(x: &Object<K>, bound: usize) -> InvariantTable {
    let ring = x.ring();
    let model = x.exact_model();
    let mut values = BTreeMap::new();
    if model.is_zero_complex() {
        for i in 0..=bound as i64 {
            values.insert(i, 0);
        }
        return InvariantTable {
            kind: TableKind::Bass,
            values,
            certified: (0, bound as i64),
        };
    }
    let lo = -model.hi();
    let need = (bound as i64 + model.hi() + 1).max(1) as usize;
    let kres = from_module(&ModulePresentation::residue_field(ring.clone()), need);
    let h = hom_complex(&kres, &model);
    let mut hi = bound as i64;
    if let Some(l) = h.window.lo_finite() {
        hi = hi.min(-l);
    }
    for i in lo..=hi {
        if !h.window.contains(-i) {
            continue;
        }
        let dim = homology_hs(&h, -i)
            .length()
            .expect("Ext(k, -) has finite length");
        values.insert(i, dim);
    }
    InvariantTable {
        kind: TableKind::Bass,
        values,
        certified: (lo, hi),
    }
}

/// depth X = smallest i with μ^i ≠ 0; the bound is doubled until a
/// nonzero Bass number appears.
pub fn depth<K: Field>(x: &Object<K>) -> Result<i64> {
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    if let Object::Module(m) = x {
        if m.ring.cached_depth().is_some() && m.is_free() {
            return Ok(m.ring.cached_depth().unwrap());
        }
    }
    let mut bound = (x.ring().krull_dimension() + 1).max(2);
    loop {
        let t = bass_table(x, bound);
        if let Some(i) = t.first_nonzero() {
            if let Object::Module(m) = x {
                if m.is_free() {
                    m.ring.set_cached_depth(i);
                }
            }
            return Ok(i);
        }
        if bound >= BOUND_CAP {
            return Err(Error::WindowInsufficient(BOUND_CAP));
        }
        bound = (bound * 2).min(BOUND_CAP);
    }
}

/// depth R, cached on the ring.
pub fn ring_depth<K: Field>(r: &Ring<K>) -> Result<i64> {
    if let Some(d) = r.cached_depth() {
        return Ok(d);
    }
    depth(&Object::Module(ModulePresentation::ring_module(r.clone())))
}

/// dim X = sup_i (dim H_i(X) - i); `None` for an object without homology.
pub fn kdim_complex<K: Field>(x: &Object<K>) -> Option<i64> {
    let h = x.homology();
    h.degrees
        .iter()
        .filter_map(|d| d.krull_dim.map(|k| k as i64 - d.degree))
        .max()
}

/// r(X) = μ^{depth X}.
pub fn type_of<K: Field>(x: &Object<K>) -> Result<u64> {
    if x.is_zero() {
        return Err(Error::ZeroModule);
    }
    let d = depth(x)?;
    let t = bass_table(x, d.max(0) as usize);
    Ok(t.get(d).unwrap_or(0))
}

/// Number of minimal generators.
pub fn nu<K: Field>(m: &ModulePresentation<K>) -> Result<usize> {
    if m.is_zero() {
        return Err(Error::ZeroModule);
    }
    Ok(minimal_presentation(m).ngens())
}

pub fn is_cohen_macaulay<K: Field>(x: &Object<K>) -> Result<bool> {
    let dim = kdim_complex(x).ok_or(Error::ZeroModule)?;
    Ok(depth(x)? == dim)
}

/// Certifies finite projective dimension when a Betti number vanishes
/// past sup X, which truncates the minimal resolution.
pub fn pd_verdict<K: Field>(x: &Object<K>, bound: usize) -> FinitenessVerdict {
    let t = betti_table(x, bound + 1);
    let sup = x.homology().sup.unwrap_or(i64::MIN);
    for (&i, &v) in &t.values {
        if i > sup && i <= t.certified.1 && v == 0 {
            let n = t
                .values
                .range(..i)
                .rev()
                .find(|(_, &v)| v != 0)
                .map(|(&j, _)| j)
                .unwrap_or(i64::MIN);
            return FinitenessVerdict {
                status: FinitenessStatus::FiniteCertified(n),
                witness: format!("minimal resolution truncates: β_{i} = 0"),
            };
        }
    }
    if t.values.is_empty() || t.values.values().all(|&v| v == 0) {
        return FinitenessVerdict {
            status: FinitenessStatus::FiniteCertified(i64::MIN),
            witness: "zero object".into(),
        };
    }
    FinitenessVerdict {
        status: FinitenessStatus::UnknownAtLeast(t.certified.1),
        witness: format!("β_i ≠ 0 for all certified i ≤ {}", t.certified.1),
    }
}

/// Bass numbers of a module have no gaps between depth and id, so a zero
/// at or above depth certifies finite injective dimension. A complex with
/// a single homology module is reduced to that module; genuine complexes
/// only reach `FiniteLikely` after a run of `dim R + amp + 2` zeros.
pub fn id_verdict<K: Field>(x: &Object<K>, bound: usize) -> FinitenessVerdict {
    if let Some((s, m)) = x.as_shifted_module() {
        if m.is_zero() {
            return FinitenessVerdict {
                status: FinitenessStatus::FiniteCertified(i64::MIN),
                witness: "zero object".into(),
            };
        }
        let shifted_bound = (bound as i64 + s).max(1) as usize;
        let v = id_verdict_module(&m, shifted_bound);
        return match v.status {
            FinitenessStatus::FiniteCertified(n) => FinitenessVerdict {
                status: FinitenessStatus::FiniteCertified(n - s),
                witness: v.witness,
            },
            FinitenessStatus::UnknownAtLeast(n) => FinitenessVerdict {
                status: FinitenessStatus::UnknownAtLeast(n - s),
                witness: v.witness,
            },
            other => FinitenessVerdict {
                status: other,
                witness: v.witness,
            },
        };
    }
    let h = x.homology();
    let amp = h.amp.unwrap_or(0);
    let width = x.ring().krull_dimension() as i64 + amp + 2;
    let t = bass_table(x, bound);
    let mut last = None;
    let mut run = 0;
    for (&i, &v) in &t.values {
        if v != 0 {
            last = Some(i);
            run = 0;
        } else if last.is_some() {
            run += 1;
            if run >= width {
                return FinitenessVerdict {
                    status: FinitenessStatus::FiniteLikely(last.unwrap()),
                    witness: format!("μ^i = 0 for {} consecutive i after {}", width, last.unwrap()),
                };
            }
        }
    }
    FinitenessVerdict {
        status: FinitenessStatus::UnknownAtLeast(t.certified.1),
        witness: format!("no zero run of width {width} up to {}", t.certified.1),
    }
}

/// Bass tables are computed at doubling bounds so that a small id is
/// certified without resolving k out to `bound`.
fn id_verdict_module<K: Field>(m: &ModulePresentation<K>, bound: usize) -> FinitenessVerdict {
    let x = Object::Module(m.clone());
    let mut b = bound.min(m.ring.krull_dimension() + 2);
    loop {
        let v = id_verdict_from_bass(&bass_table(&x, b));
        if b >= bound || matches!(v.status, FinitenessStatus::FiniteCertified(_)) {
            return v;
        }
        b = (2 * b).min(bound);
    }
}

fn id_verdict_from_bass(t: &InvariantTable) -> FinitenessVerdict {
    let Some(d) = t.first_nonzero() else {
        return FinitenessVerdict {
            status: FinitenessStatus::UnknownAtLeast(t.certified.1),
            witness: format!("no nonzero Bass number up to {}", t.certified.1),
        };
    };
    for (&i, &v) in t.values.range(d..) {
        if v == 0 {
            return FinitenessVerdict {
                status: FinitenessStatus::FiniteCertified(i - 1),
                witness: format!("no-gap property: μ^{i} = 0 with depth {d}"),
            };
        }
    }
    FinitenessVerdict {
        status: FinitenessStatus::UnknownAtLeast(t.certified.1),
        witness: format!("μ^i ≠ 0 for {d} ≤ i ≤ {}", t.certified.1),
    }
}

/// dim_k Ext^i(X, Y) for i in `lo..=hi`; entries outside the trusted
/// window are omitted.
pub fn ext_dims<K: Field>(x: &Object<K>, y: &Object<K>, lo: i64, hi: i64) -> BTreeMap<i64, HilbertDims> {
    let ym = y.exact_model();
    let yhi = if ym.is_zero_complex() { 0 } else { ym.hi() };
    let xlo = match x {
        Object::Module(_) => 0,
        Object::Complex(c) => c.lo,
    };
    let need = (hi + yhi - xlo + 2).max(1) as usize;
    let p = x.resolution(need);
    let h = hom_complex(&p, &ym);
    let mut out = BTreeMap::new();
    for i in lo..=hi {
        if h.window.contains(-i) {
            out.insert(i, HilbertDims::of(&homology_hs(&h, -i)));
        }
    }
    out
}

/// dim_k Tor_i(X, Y) for i in `lo..=hi` within the trusted window.
pub fn tor_dims<K: Field>(x: &Object<K>, y: &Object<K>, lo: i64, hi: i64) -> BTreeMap<i64, HilbertDims> {
    let ym = y.exact_model();
    let ylo = if ym.is_zero_complex() { 0 } else { ym.lo };
    let xlo = match x {
        Object::Module(_) => 0,
        Object::Complex(c) => c.lo,
    };
    let need = (hi - ylo - xlo + 2).max(1) as usize;
    let p = x.resolution(need);
    let t = tensor_complex(&p, &ym);
    let mut out = BTreeMap::new();
    for i in lo..=hi {
        if t.window.contains(i) {
            out.insert(i, HilbertDims::of(&homology_hs(&t, i)));
        }
    }
    out
}

/// Length (when finite) and Krull dimension of a graded module.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertDims {
    pub length: Option<u64>,
    pub krull_dim: Option<usize>,
}

impl HilbertDims {
    pub fn of(hs: &crate::groebner::HilbertSeries) -> Self {
        HilbertDims {
            length: hs.length(),
            krull_dim: hs.pole_order(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.krull_dim.is_none()
    }
}

/// gr_C X = inf{ i | Ext^i(X, C) ≠ 0 }, searched up to `bound`.
pub fn grade_wrt<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize) -> Result<i64> {
    let cm = c.exact_model();
    let lo = match x {
        Object::Module(_) => 0,
        Object::Complex(xc) => xc.lo,
    } - if cm.is_zero_complex() { 0 } else { cm.hi() };
    let e = ext_dims(x, c, lo, bound as i64);
    e.iter()
        .find(|(_, d)| !d.is_zero())
        .map(|(&i, _)| i)
        .ok_or(Error::WindowInsufficient(bound))
}
