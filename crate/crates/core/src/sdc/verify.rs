use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Field;
use crate::dcat::{hom_complex, homology_dims, homology_module, tensor_complex};
use crate::invariants::{
    bass_table, betti_table, ext_dims, grade_wrt, id_verdict, is_cohen_macaulay, kdim_complex, nu,
    pd_verdict, tor_dims, type_of, HilbertDims, Object,
};
use crate::modops::{ext_module, hom_modules, tensor_modules, ModulePresentation};

use super::certify::{dualizing_verdict, gcdim, semidualizing_certificate};
use super::theorem::*;
use super::{DualizingStatus, GcdimValue, GcdimVerdict, HypothesisStatus as H, Value, Verdict, VerificationReport};

fn lowest<K: Field>(x: &Object<K>) -> i64 {
    match x {
        Object::Module(_) => 0,
        Object::Complex(c) => c.lo,
    }
}

/// `Ext^i(X, C)` as a module, `None` outside the trusted window.
fn ext_module_at<K: Field>(x: &Object<K>, c: &Object<K>, i: i64, bound: usize) -> Option<ModulePresentation<K>> {
    if let (Some((s, m)), Some((t, cm))) = (x.as_shifted_module(), c.as_shifted_module()) {
        let j = i + t - s;
        if j < 0 {
            return Some(ModulePresentation::zero(m.ring.clone()));
        }
        return Some(ext_module(&m, &cm, j as usize).module);
    }
    let cm = c.exact_model();
    let chi = if cm.is_zero_complex() { 0 } else { cm.hi() };
    let need = (i + chi - lowest(x) + 2).max(bound as i64).max(1) as usize;
    let p = x.resolution(need);
    let h = hom_complex(&p, &cm);
    h.window.contains(-i).then(|| homology_module(&h, -i))
}

fn nu_or_zero<K: Field>(m: &ModulePresentation<K>) -> u64 {
    nu(m).map(|n| n as u64).unwrap_or(0)
}

/// First index in `lo..=hi` with nonzero value, or `Err(())` when some
/// index of the range was not computed.
fn first_nonzero(e: &BTreeMap<i64, HilbertDims>, lo: i64, hi: i64) -> Result<Option<i64>, ()> {
    for i in lo..=hi {
        match e.get(&i) {
            None => return Err(()),
            Some(d) if !d.is_zero() => return Ok(Some(i)),
            _ => {}
        }
    }
    Ok(None)
}

fn vanishing_hyp(rep: &mut VerificationReport, name: &str, e: &BTreeMap<i64, HilbertDims>, lo: i64, hi: i64) -> bool {
    let (status, detail) = match first_nonzero(e, lo, hi) {
        Ok(None) => (H::Met, format!("zero for {lo} ≤ i ≤ {hi}")),
        Ok(Some(i)) => (H::Failed, format!("nonzero at i = {i}")),
        Err(()) => (H::Uncertified, "window too short".to_string()),
    };
    rep.hyp(name, status, detail) == H::Met
}

fn gcdim_hyp<K: Field>(rep: &mut VerificationReport, x: &Object<K>, c: &Object<K>, bound: usize) -> Option<GcdimVerdict> {
    match gcdim(x, c, bound) {
        Ok(v) => {
            let (status, detail) = match &v.value {
                GcdimValue::FiniteEquals(g) => (H::Met, format!("G_C-dim = {g}")),
                GcdimValue::Infinite(w) => (H::Failed, w.clone()),
                GcdimValue::UncertifiedUpTo(b) => (H::Uncertified, format!("not certified up to {b}")),
            };
            rep.hyp("G_C-dim finite", status, detail);
            Some(v)
        }
        Err(e) => {
            rep.hyp("G_C-dim finite", H::Failed, e.to_string());
            None
        }
    }
}

fn sdc_hyp<K: Field>(rep: &mut VerificationReport, c: &Object<K>, bound: usize) -> bool {
    let cert = semidualizing_certificate(c, bound);
    let detail = match &cert.verdict {
        super::SdcVerdict::SemidualizingUpTo(b) => format!("certified up to {b}"),
        super::SdcVerdict::Failed(r) => r.clone(),
    };
    rep.hyp("C semidualizing", H::from_bool(cert.ok()), detail) == H::Met
}

fn int(v: Option<i64>) -> Value {
    v.map(Value::Int).unwrap_or(Value::None)
}

fn identity_checks(rep: &mut VerificationReport, v: &GcdimVerdict) -> bool {
    let g = v.finite();
    let a = rep.check(
        "G_C-dim = depth R - depth X",
        int(g),
        int(v.depth_formula),
        g.is_some() && g == v.depth_formula,
    );
    let b = rep.check(
        "inf RHom(X, C) = depth X - depth C",
        int(v.inf_rhom),
        int(v.depth_difference),
        v.inf_rhom.is_some() && v.inf_rhom == v.depth_difference,
    );
    a && b
}

/// `r(Z) = ν(Ext^{g - inf C}(Z, C)) · μ^{depth C}(C)` for Z of finite
/// G_C-dimension g.
pub fn verify_type_formula<K: Field>(z: &Object<K>, c: &Object<K>, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(TYPE_FORMULA, bound);
    if !sdc_hyp(&mut rep, c, bound) {
        rep.verdict = Verdict::HypothesesNotMet;
        return rep;
    }
    let gv = gcdim_hyp(&mut rep, z, c, bound);
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let gv = gv.expect("met");
    let g = gv.finite().expect("met");
    let ids = identity_checks(&mut rep, &gv);
    let inf_c = c.homology().inf.expect("nonzero C");
    let (r, mu) = match (type_of(z), type_of(c)) {
        (Ok(r), Ok(mu)) => (r, mu),
        (a, b) => {
            let e = a.err().or(b.err()).unwrap();
            rep.evidence.insert("error".into(), Value::Text(e.to_string()));
            rep.verdict = Verdict::Uncertified;
            return rep;
        }
    };
    let Some(e) = ext_module_at(z, c, g - inf_c, bound) else {
        rep.evidence.insert("error".into(), Value::Text("Ext module outside the window".into()));
        rep.verdict = Verdict::Uncertified;
        return rep;
    };
    let n = nu_or_zero(&e);
    rep.evidence.insert("g".into(), Value::Int(g));
    rep.evidence.insert("r(Z)".into(), Value::Int(r as i64));
    rep.evidence.insert("ν(Ext^{g-inf C}(Z,C))".into(), Value::Int(n as i64));
    rep.evidence.insert("μ^{depth C}(C)".into(), Value::Int(mu as i64));
    rep.left = Value::Int(r as i64);
    rep.right = Value::Int((n * mu) as i64);
    rep.verdict = if r == n * mu && ids { Verdict::Pass } else { Verdict::Fail };
    rep
}

struct Clauses {
    cm: bool,
    g: Option<i64>,
    r: Option<u64>,
    nu: Option<u64>,
    amp0: bool,
    dim_eq: Option<bool>,
}

impl Clauses {
    fn ineq(&self) -> bool {
        matches!((self.r, self.nu), (Some(r), Some(n)) if r <= n)
    }

    fn ii(&self) -> bool {
        self.cm && self.g.is_some() && self.ineq() && self.amp0
    }

    fn iii(&self) -> bool {
        self.cm && self.g.is_some() && self.ineq() && self.dim_eq == Some(true)
    }
}

fn clauses<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize, gv: Option<&GcdimVerdict>) -> Clauses {
    let cm = is_cohen_macaulay(x).unwrap_or(false);
    let g = gv.and_then(|v| v.finite());
    let r = type_of(x).ok();
    let inf_c = c.homology().inf.unwrap_or(0);
    let nu = g.and_then(|g| ext_module_at(x, c, g - inf_c, bound)).map(|e| nu_or_zero(&e));
    let amp0 = x.homology().amp == Some(0);
    let dim_eq = match (kdim_complex(x), kdim_complex(c), grade_wrt(x, c, bound)) {
        (Some(dx), Some(dc), Ok(gr)) => Some(dx == dc - gr),
        _ => None,
    };
    Clauses {
        cm,
        g,
        r,
        nu,
        amp0,
        dim_eq,
    }
}

/// Dualizing criteria through a Cohen–Macaulay object of finite G_C-dim
/// with `r(X) ≤ ν(Ext^{g - inf C}(X, C))`: with `amp X = 0`, or with
/// `dim X = dim C - gr_C X`, C must be dualizing. When C is dualizing the
/// converse is checked with X = C.
pub fn verify_dualizing_criteria<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(DUALIZING_CRITERIA, bound);
    if !sdc_hyp(&mut rep, c, bound) {
        rep.verdict = Verdict::HypothesesNotMet;
        return rep;
    }
    let gv = gcdim(x, c, bound).ok();
    let cl = clauses(x, c, bound, gv.as_ref());
    rep.hyp("X Cohen-Macaulay", H::from_bool(cl.cm), "");
    let gstatus = match gv.as_ref().map(|v| &v.value) {
        Some(GcdimValue::FiniteEquals(_)) => H::Met,
        Some(GcdimValue::UncertifiedUpTo(_)) => H::Uncertified,
        _ => H::Failed,
    };
    rep.hyp("G_C-dim X finite", gstatus, "");
    rep.hyp(
        "r(X) ≤ ν(Ext^{g-inf C}(X,C))",
        H::from_bool(cl.ineq()),
        format!("r = {:?}, ν = {:?}", cl.r, cl.nu),
    );
    rep.hyp("amp X = 0", H::from_bool(cl.amp0), "");
    rep.hyp(
        "dim X = dim C - gr_C X",
        match cl.dim_eq {
            Some(b) => H::from_bool(b),
            None => H::Uncertified,
        },
        "",
    );
    rep.left = cl.r.map(|r| Value::Int(r as i64)).unwrap_or(Value::None);
    rep.right = cl.nu.map(|n| Value::Int(n as i64)).unwrap_or(Value::None);
    let dv = dualizing_verdict(c, bound);
    rep.evidence.insert("dualizing".into(), Value::Text(format!("{:?}", dv.status)));
    let k_uncertified = matches!(dv.gcdim_k.value, GcdimValue::UncertifiedUpTo(_));
    let coherent = rep.check(
        "dualizing ⟺ G_C-dim k finite",
        Value::Bool(dv.is_dualizing()),
        Value::Bool(dv.gcdim_k.finite().is_some()),
        dv.coherent || k_uncertified,
    );
    let mut verdict = None;
    if cl.ii() || cl.iii() {
        let holds = rep.check("C dualizing", Value::Bool(true), Value::Bool(dv.is_dualizing()), dv.is_dualizing());
        verdict = Some(if holds {
            Verdict::Pass
        } else if matches!(dv.status, DualizingStatus::NotSemidualizing(_)) {
            Verdict::Fail
        } else {
            Verdict::Uncertified
        });
    }
    if dv.is_dualizing() {
        let gc = gcdim(c, c, bound).ok();
        let cc = clauses(c, c, bound, gc.as_ref());
        let a = rep.check("dualizing C satisfies (ii) with X = C", Value::None, Value::Bool(cc.ii()), cc.ii());
        let b = rep.check("dualizing C satisfies (iii) with X = C", Value::None, Value::Bool(cc.iii()), cc.iii());
        if !(a && b) {
            verdict = Some(Verdict::Fail);
        } else if verdict.is_none() {
            verdict = Some(Verdict::Pass);
        }
    }
    let mut verdict = verdict.unwrap_or(Verdict::HypothesesNotMet);
    if !coherent {
        verdict = Verdict::Fail;
    }
    rep.verdict = verdict;
    rep
}

/// A bounded complex whose homology modules have finite injective
/// dimension has finite injective dimension: `μ^j(X) = 0` for
/// `j > max_i (id H_i - i)`.
pub fn verify_finite_id_complex<K: Field>(x: &Object<K>, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(FINITE_ID_COMPLEX, bound);
    let model = x.exact_model();
    let h = x.homology();
    let mut pred: Option<i64> = None;
    for d in h.degrees.iter().filter(|d| d.krull_dim.is_some()) {
        let hm = homology_module(&model, d.degree);
        let v = id_verdict(&Object::Module(hm), bound);
        rep.evidence
            .insert(format!("id H_{}", d.degree), Value::Finiteness(v.status.clone()));
        rep.hyp(
            &format!("id H_{} finite", d.degree),
            H::from_finiteness(&v.status),
            v.witness.clone(),
        );
        if let Some(n) = v.certified() {
            pred = Some(pred.map_or(n - d.degree, |p: i64| p.max(n - d.degree)));
        }
    }
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let bass = bass_table(x, bound);
    let last = bass.last_nonzero();
    rep.left = int(pred);
    rep.right = int(last);
    rep.evidence.insert(
        "bass".into(),
        Value::Table(bass.values.iter().map(|(&i, &v)| (i, v as i64)).collect()),
    );
    let limit = pred.unwrap_or(i64::MIN);
    if bass.certified.1 <= limit {
        rep.verdict = Verdict::Uncertified;
        return rep;
    }
    let holds = bass.values.range(limit.saturating_add(1)..).all(|(_, &v)| v == 0);
    rep.check(
        "μ^j(X) = 0 above max(id H_i - i)",
        int(pred),
        int(last),
        holds,
    );
    let cv = id_verdict(x, bound);
    rep.evidence.insert("id X".into(), Value::Finiteness(cv.status.clone()));
    rep.verdict = if holds { Verdict::Pass } else { Verdict::Fail };
    rep
}

fn same_module<K: Field>(a: &ModulePresentation<K>, b: &ModulePresentation<K>) -> bool {
    a.gens == b.gens && a.rels == b.rels
}

/// Ext^i(M, N) vanishing for `tail ≤ i ≤ bound` (tail defaults to
/// bound/2) and finite injective dimension of the remaining Ext modules
/// force pd M and id N finite; with M = N, R is Gorenstein.
pub fn verify_ext_id_descent<K: Field>(
    m: &ModulePresentation<K>,
    n: &ModulePresentation<K>,
    bound: usize,
    tail: Option<usize>,
) -> VerificationReport {
    let mut rep = VerificationReport::new(EXT_ID_DESCENT, bound);
    let w = tail.unwrap_or(bound / 2).max(1) as i64;
    let mo = Object::Module(m.clone());
    let no = Object::Module(n.clone());
    let e = ext_dims(&mo, &no, 0, bound as i64);
    vanishing_hyp(&mut rep, "Ext^i(M,N) = 0 on the tail", &e, w, bound as i64);
    for i in 0..w {
        if e.get(&i).map(|d| d.is_zero()).unwrap_or(false) {
            continue;
        }
        let em = ext_module(m, n, i as usize).module;
        let v = id_verdict(&Object::Module(em), bound);
        rep.evidence
            .insert(format!("id Ext^{i}(M,N)"), Value::Finiteness(v.status.clone()));
        rep.hyp(
            &format!("id Ext^{i}(M,N) finite"),
            H::from_finiteness(&v.status),
            v.witness,
        );
    }
    let pdv = pd_verdict(&mo, bound);
    let idn = id_verdict(&no, bound);
    rep.evidence.insert("pd M".into(), Value::Finiteness(pdv.status.clone()));
    rep.evidence.insert("id N".into(), Value::Finiteness(idn.status.clone()));
    rep.left = Value::Finiteness(pdv.status.clone());
    rep.right = Value::Finiteness(idn.status.clone());
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let mut certified = rep.check("pd M finite", Value::Finiteness(pdv.status.clone()), Value::None, pdv.certified().is_some());
    certified &= rep.check("id N finite", Value::Finiteness(idn.status.clone()), Value::None, idn.certified().is_some());
    if same_module(m, n) {
        let rr = Object::Module(ModulePresentation::ring_module(m.ring.clone()));
        let t = type_of(&rr).ok();
        let idr = id_verdict(&rr, bound);
        let gor = t == Some(1) && idr.certified().is_some();
        certified &= rep.check(
            "R Gorenstein",
            int(t.map(|t| t as i64)),
            Value::Finiteness(idr.status),
            gor,
        );
    }
    rep.verdict = if certified { Verdict::Pass } else { Verdict::Uncertified };
    rep
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HomMode {
    #[serde(rename = "hom-MR")]
    HomMR,
    #[serde(rename = "hom-MM")]
    HomMM,
}

/// With `Ext^{≥1}(M, M ⊕ R) = 0` and Hom(M, R) (or Hom(M, M)) of finite
/// injective dimension, M is free and R Gorenstein. Independently, when
/// `Ext^{1..bound}(M, R) = 0`, checks
/// `μ^t(Hom(M, R)) = Σ_{i+j=t} β_i(M) μ^j(R)` for `t ≤ bound`.
pub fn verify_auslander_reiten<K: Field>(m: &ModulePresentation<K>, mode: HomMode, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(AUSLANDER_REITEN, bound);
    let ring = &m.ring;
    let r = ModulePresentation::ring_module(ring.clone());
    let mo = Object::Module(m.clone());
    let ro = Object::Module(r.clone());
    let b = bound as i64;
    let e_mr = ext_dims(&mo, &ro, 1, b);
    let e_mm = ext_dims(&mo, &mo, 1, b);
    let mr = vanishing_hyp(&mut rep, "Ext^i(M,R) = 0", &e_mr, 1, b);
    vanishing_hyp(&mut rep, "Ext^i(M,M) = 0", &e_mm, 1, b);
    let hom_mr = hom_modules(m, &r).module;
    let (hom, label) = match mode {
        HomMode::HomMR => (hom_mr.clone(), "id Hom(M,R) finite"),
        HomMode::HomMM => (hom_modules(m, m).module, "id Hom(M,M) finite"),
    };
    let v = id_verdict(&Object::Module(hom), bound);
    rep.hyp(label, H::from_finiteness(&v.status), v.witness);
    let mut conv_ok = true;
    if mr {
        let mu_h = bass_table(&Object::Module(hom_mr), bound);
        let beta = betti_table(&mo, bound + 1);
        let mu_r = bass_table(&ro, bound);
        let mut left = BTreeMap::new();
        let mut right = BTreeMap::new();
        for t in 0..=b {
            let (Some(l), Some(_)) = (mu_h.get(t), mu_r.get(t)) else { break };
            let s: u64 = (0..=t)
                .map(|i| beta.get(i).unwrap_or(0) * mu_r.get(t - i).unwrap_or(0))
                .sum();
            left.insert(t, l as i64);
            right.insert(t, s as i64);
        }
        conv_ok = rep.check(
            "μ^t(Hom(M,R)) = Σ β_i(M) μ^j(R)",
            Value::Table(left.clone()),
            Value::Table(right.clone()),
            left == right,
        );
        rep.left = Value::Table(left);
        rep.right = Value::Table(right);
    }
    if !conv_ok {
        rep.verdict = Verdict::Fail;
        return rep;
    }
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let free = m.is_free();
    let t = type_of(&ro).ok();
    let idr = id_verdict(&ro, bound);
    let gor = t == Some(1) && idr.certified().is_some();
    rep.check("M free", Value::Bool(free), Value::Bool(true), free);
    rep.check("R Gorenstein", int(t.map(|t| t as i64)), Value::Finiteness(idr.status), gor);
    rep.verdict = if !free {
        Verdict::Fail
    } else if gor {
        Verdict::Pass
    } else {
        Verdict::Uncertified
    };
    rep
}

/// With `C ⊗^L X` of finite injective dimension:
/// `β_t(X) = Σ_{i+j=t} μ^i(C) μ^{-j}(C ⊗^L X)` on the certified range.
pub fn verify_betti_bass_convolution<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(BETTI_BASS_CONVOLUTION, bound);
    if !sdc_hyp(&mut rep, c, bound) {
        rep.verdict = Verdict::HypothesesNotMet;
        return rep;
    }
    let fx = x.resolution(bound + 2);
    let cm = c.exact_model();
    let y = if cm.window.is_full() {
        tensor_complex(&fx, &cm)
    } else {
        tensor_complex(&c.resolution(bound + 2), &fx)
    };
    let hy = homology_dims(&y);
    let half = (bound as i64 + 1) / 2;
    let bounded = match (y.window.hi_finite(), hy.sup) {
        (Some(wh), Some(s)) => wh - s >= half,
        _ => true,
    };
    rep.hyp(
        "C ⊗^L X bounded",
        H::from_bool(bounded),
        format!("homology sup {:?} in window {}", hy.sup, y.window.describe()),
    );
    if !bounded {
        rep.hyp("id C ⊗^L X finite", H::Failed, "C ⊗^L X not bounded in the window");
        rep.verdict = Verdict::HypothesesNotMet;
        return rep;
    }
    let yo = Object::Complex(y);
    let v = id_verdict(&yo, bound);
    rep.evidence.insert("id C ⊗^L X".into(), Value::Finiteness(v.status.clone()));
    rep.hyp("id C ⊗^L X finite", H::from_finiteness(&v.status), v.witness.clone());
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let idy = v.certified().expect("met");
    let beta = betti_table(x, bound);
    if yo.is_zero() || idy == i64::MIN {
        let left: BTreeMap<i64, i64> = beta.values.iter().map(|(&i, &v)| (i, v as i64)).collect();
        let right = left.keys().map(|&i| (i, 0)).collect::<BTreeMap<_, _>>();
        rep.verdict = if left == right { Verdict::Pass } else { Verdict::Fail };
        rep.left = Value::Table(left);
        rep.right = Value::Table(right);
        return rep;
    }
    let by = bass_table(&yo, idy.max(0) as usize);
    let (_, thi) = beta.certified;
    let mu_c = bass_table(c, (thi + idy).max(0) as usize);
    let mut left = BTreeMap::new();
    let mut right = BTreeMap::new();
    for (&t, &bt) in &beta.values {
        let mut s: i64 = 0;
        for (&j, &my) in by.values.range(..=idy) {
            if my == 0 {
                continue;
            }
            let i = t + j;
            if i > mu_c.certified.1 {
                rep.verdict = Verdict::Uncertified;
                return rep;
            }
            s += (mu_c.get(i).unwrap_or(0) * my) as i64;
        }
        left.insert(t, bt as i64);
        right.insert(t, s);
    }
    rep.verdict = if left == right { Verdict::Pass } else { Verdict::Fail };
    rep.left = Value::Table(left);
    rep.right = Value::Table(right);
    rep
}

/// For a semidualizing module C and M with `Tor_{≥1}(C, M) = 0` and
/// `id C ⊗ M` finite: `ν(M) = μ^d(C) μ^d(C ⊗ M)`, d = dim R; ν(M) = 1
/// forces C dualizing.
pub fn verify_nu_formula<K: Field>(m: &ModulePresentation<K>, c: &ModulePresentation<K>, bound: usize) -> VerificationReport {
    let mut rep = VerificationReport::new(NU_FORMULA, bound);
    let co = Object::Module(c.clone());
    let mo = Object::Module(m.clone());
    if !sdc_hyp(&mut rep, &co, bound) {
        rep.verdict = Verdict::HypothesesNotMet;
        return rep;
    }
    let tor = tor_dims(&co, &mo, 1, bound as i64);
    vanishing_hyp(&mut rep, "Tor_i(C,M) = 0", &tor, 1, bound as i64);
    let cm = Object::Module(tensor_modules(c, m));
    let v = id_verdict(&cm, bound);
    rep.evidence.insert("id C⊗M".into(), Value::Finiteness(v.status.clone()));
    rep.hyp("id C⊗M finite", H::from_finiteness(&v.status), v.witness);
    if let Some(v) = rep.gate() {
        rep.verdict = v;
        return rep;
    }
    let d = m.ring.krull_dimension();
    let nm = nu_or_zero(m);
    let a = bass_table(&co, d).get(d as i64).unwrap_or(0);
    let b = bass_table(&cm, d).get(d as i64).unwrap_or(0);
    rep.evidence.insert("μ^d(C)".into(), Value::Int(a as i64));
    rep.evidence.insert("μ^d(C⊗M)".into(), Value::Int(b as i64));
    rep.left = Value::Int(nm as i64);
    rep.right = Value::Int((a * b) as i64);
    let mut verdict = if nm == a * b { Verdict::Pass } else { Verdict::Fail };
    if nm == 1 {
        let dv = dualizing_verdict(&co, bound);
        let holds = rep.check("C dualizing", Value::Bool(true), Value::Bool(dv.is_dualizing()), dv.is_dualizing());
        if !holds && verdict == Verdict::Pass {
            verdict = match dv.status {
                DualizingStatus::InjectiveDimensionUnknown(_) => Verdict::Uncertified,
                _ => Verdict::Fail,
            };
        }
    }
    rep.verdict = verdict;
    rep
}
