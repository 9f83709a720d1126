use crate::algebra::{Field, GradedFree, GradedMatrix, Term};
use crate::dcat::{
    biduality_rep, cone, gamma_rep, hom_blocks, hom_complex, homology_dims, resolve_complex,
    tensor_complex, ChainMap, Complex, HomologyDims,
};
use crate::error::{Error, Result};
use crate::invariants::{depth, ext_dims, grade_wrt, id_verdict, ring_depth, FinitenessStatus, Object};
use crate::modops::{evaluation_map, hom_modules, homothety_map, syzygy, ModulePresentation};

use super::{
    AuslanderVerdict, DualizingStatus, DualizingVerdict, GcdimValue, GcdimVerdict, SdcCertificate,
    SdcVerdict,
};

/// First degree in `lo..=hi` with nonzero homology.
fn first_homology(h: &HomologyDims, lo: i64, hi: i64) -> Option<i64> {
    h.degrees
        .iter()
        .find(|d| d.degree >= lo && d.degree <= hi && d.krull_dim.is_some())
        .map(|d| d.degree)
}

/// Cone of `χ: R -> Hom(Q, C)` where `Q -> C` resolves C far enough for
/// `Ext^i(C, C)` with `i ≤ bound` to be visible.
fn homothety_cone<K: Field>(cm: &Complex<K>, bound: usize) -> Complex<K> {
    let ring = &cm.ring;
    let poly = &ring.poly;
    let top = cm.hi() + bound as i64 + 4;
    let (q, qmap) = resolve_complex(cm, top);
    let h = hom_complex(&q, cm);
    let mut terms = Vec::new();
    for &(p, off, np, ry) in &hom_blocks(&q, cm, 0).blocks {
        let m = qmap.comp(p);
        for (a, col) in m.cols.iter().enumerate().take(np) {
            for t in &col.terms {
                terms.push(Term {
                    comp: (off + a * ry + t.comp as usize) as u32,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                });
            }
        }
    }
    let col = ring.reduce(&poly.normalize(terms));
    let rc = Complex::from_presentation(&ModulePresentation::ring_module(ring.clone()));
    let chi = ChainMap {
        source: rc,
        target: h.clone(),
        comps: vec![GradedMatrix {
            source: GradedFree::new(vec![0]),
            target: h.term(0),
            cols: vec![col],
        }],
        window: h.window,
    };
    cone(&chi)
}

/// Checks that `R -> RHom(C, C)` is a quasi-isomorphism in the window,
/// i.e. `H_0` is R through the homothety and `Ext^i(C, C) = 0` for
/// `1 ≤ i ≤ bound`. Shifts of modules use the module-level maps.
pub fn semidualizing_certificate<K: Field>(c: &Object<K>, bound: usize) -> SdcCertificate {
    let (homothety_ok, ext_vanishing_ok, reason) = match c.as_shifted_module() {
        Some((_, m)) => {
            if m.is_zero() {
                (false, false, "zero object".to_string())
            } else {
                let hom = homothety_map(&m).is_isomorphism();
                let e = ext_dims(&Object::Module(m.clone()), &Object::Module(m), 1, bound as i64);
                let bad = e.iter().find(|(_, d)| !d.is_zero()).map(|(&i, _)| i);
                let ext = bad.is_none() && e.len() == bound;
                let reason = if !hom {
                    "homothety R -> Hom(C, C) is not an isomorphism".to_string()
                } else if let Some(i) = bad {
                    format!("Ext^{i}(C, C) ≠ 0")
                } else {
                    format!("Ext^i(C, C) not visible up to {bound}")
                };
                (hom, ext, reason)
            }
        }
        None => chain_checks(&c.exact_model(), bound),
    };
    finish(bound, homothety_ok, ext_vanishing_ok, reason)
}

/// The same certificate computed at chain level for any complex, through
/// the cone of `χ: R -> Hom(Q, C)`.
pub fn semidualizing_certificate_chain<K: Field>(c: &Complex<K>, bound: usize) -> SdcCertificate {
    let (h, e, r) = chain_checks(c, bound);
    finish(bound, h, e, r)
}

fn chain_checks<K: Field>(cm: &Complex<K>, bound: usize) -> (bool, bool, String) {
    if cm.is_zero_complex() {
        return (false, false, "zero object".to_string());
    }
    let cn = homothety_cone(cm, bound);
    let hd = homology_dims(&cn);
    let hom = cn.window.contains(0) && cn.window.contains(1) && hd.vanishes_on(0, 1);
    let bad = first_homology(&hd, cn.window.lo, cn.window.hi).filter(|&n| n != 0 && n != 1);
    let reaches = cn.window.contains(-(bound as i64));
    let reason = if !hom {
        "homothety R -> RHom(C, C) is not a quasi-isomorphism".to_string()
    } else if let Some(n) = bad {
        format!("H_{n} RHom(C, C) ≠ 0")
    } else {
        format!("RHom(C, C) not visible down to -{bound}")
    };
    (hom, bad.is_none() && reaches, reason)
}

fn finish(bound: usize, homothety_ok: bool, ext_vanishing_ok: bool, reason: String) -> SdcCertificate {
    let verdict = if homothety_ok && ext_vanishing_ok {
        SdcVerdict::SemidualizingUpTo(bound)
    } else {
        SdcVerdict::Failed(reason)
    };
    SdcCertificate {
        bound,
        homothety_ok,
        ext_vanishing_ok,
        verdict,
    }
}

fn require_semidualizing<K: Field>(c: &Object<K>, bound: usize) -> Result<()> {
    match semidualizing_certificate(c, bound).verdict {
        SdcVerdict::SemidualizingUpTo(_) => Ok(()),
        SdcVerdict::Failed(r) => Err(Error::Invalid(format!("not semidualizing: {r}"))),
    }
}

/// Semidualizing with certified finite injective dimension. G_C-dim of k
/// is computed at the same bound as an independent signal.
pub fn dualizing_verdict<K: Field>(c: &Object<K>, bound: usize) -> DualizingVerdict {
    let certificate = semidualizing_certificate(c, bound);
    let idv = id_verdict(c, bound);
    let status = match (&certificate.verdict, &idv.status) {
        (SdcVerdict::Failed(r), _) => DualizingStatus::NotSemidualizing(r.clone()),
        (_, FinitenessStatus::FiniteCertified(_)) => DualizingStatus::Dualizing,
        (_, FinitenessStatus::FiniteLikely(n)) | (_, FinitenessStatus::UnknownAtLeast(n)) => {
            DualizingStatus::InjectiveDimensionUnknown(*n)
        }
    };
    let k = Object::Module(ModulePresentation::residue_field(c.ring().clone()));
    let gcdim_k = if certificate.ok() {
        gcdim(&k, c, bound).unwrap_or_else(|_| uncertified(bound))
    } else {
        uncertified(bound)
    };
    let coherent = (status == DualizingStatus::Dualizing) == gcdim_k.finite().is_some();
    DualizingVerdict {
        certificate,
        injective_dimension: idv.status,
        status,
        gcdim_k,
        coherent,
    }
}

fn uncertified(bound: usize) -> GcdimVerdict {
    GcdimVerdict {
        value: GcdimValue::UncertifiedUpTo(bound),
        depth_formula: None,
        inf_rhom: None,
        depth_difference: None,
    }
}

/// G_C-dimension of any object. Shifts of modules against shifts of a
/// module go through [`gcdim_module`]; everything else through
/// [`gcdim_complex`].
pub fn gcdim<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize) -> Result<GcdimVerdict> {
    if let (Some((s, m)), Some((t, cm))) = (x.as_shifted_module(), c.as_shifted_module()) {
        if m.is_zero() || cm.is_zero() {
            return Err(Error::ZeroModule);
        }
        let v = gcdim_module(&m, &cm, bound)?;
        let value = match v.value {
            GcdimValue::FiniteEquals(g) => GcdimValue::FiniteEquals(g + s),
            other => other,
        };
        return Ok(GcdimVerdict {
            value,
            depth_formula: v.depth_formula.map(|g| g + s),
            inf_rhom: v.inf_rhom.map(|i| i + t - s),
            depth_difference: v.depth_difference.map(|d| d - s + t),
        });
    }
    gcdim_complex(x, c, bound)
}

/// With `g = depth R - depth M`, tests the g-th syzygy for membership in
/// the G_C-class: `Ext^i(Ω, C) = 0` and `Ext^i(Hom(Ω, C), C) = 0` for
/// `1 ≤ i ≤ bound`, and `Ω -> Hom(Hom(Ω, C), C)` an isomorphism.
pub fn gcdim_module<K: Field>(
    m: &ModulePresentation<K>,
    c: &ModulePresentation<K>,
    bound: usize,
) -> Result<GcdimVerdict> {
    let co = Object::Module(c.clone());
    require_semidualizing(&co, bound)?;
    let mo = Object::Module(m.clone());
    let dm = depth(&mo)?;
    let dc = depth(&co)?;
    let g = ring_depth(&m.ring)? - dm;
    let mut out = GcdimVerdict {
        value: GcdimValue::UncertifiedUpTo(bound),
        depth_formula: Some(g),
        inf_rhom: None,
        depth_difference: Some(dm - dc),
    };
    if g < 0 {
        out.value = GcdimValue::Infinite(format!("depth M exceeds depth R by {}", -g));
        return Ok(out);
    }
    let e = ext_dims(&mo, &co, 0, g + bound as i64);
    out.inf_rhom = e.iter().rev().find(|(_, d)| !d.is_zero()).map(|(&i, _)| -i);
    if let Some((&i, _)) = e.range(g + 1..).find(|(_, d)| !d.is_zero()) {
        out.value = GcdimValue::Infinite(format!("Ext^{}(Ω^{g} M, C) ≠ 0", i - g));
        return Ok(out);
    }
    let om = syzygy(m, g as usize);
    if !evaluation_map(&om, c).is_isomorphism() {
        out.value = GcdimValue::Infinite(format!(
            "Ω^{g} M -> Hom(Hom(Ω^{g} M, C), C) is not an isomorphism"
        ));
        return Ok(out);
    }
    let dual = hom_modules(&om, c).module;
    if !dual.is_zero() {
        let e2 = ext_dims(&Object::Module(dual), &co, 1, bound as i64);
        if let Some((&i, _)) = e2.iter().find(|(_, d)| !d.is_zero()) {
            out.value = GcdimValue::Infinite(format!("Ext^{i}(Hom(Ω^{g} M, C), C) ≠ 0"));
            return Ok(out);
        }
    }
    out.value = GcdimValue::FiniteEquals(g);
    Ok(out)
}

/// Reflexivity through the biduality map: the cone of δ must be acyclic
/// in its window and `RHom(Z, C)` must be bounded there (no homology in
/// the lower half of the bound). The value is `inf C - inf RHom(Z, C)`.
pub fn gcdim_complex<K: Field>(z: &Object<K>, c: &Object<K>, bound: usize) -> Result<GcdimVerdict> {
    require_semidualizing(c, bound)?;
    let dz = depth(z)?;
    let dc = depth(c)?;
    let dr = ring_depth(z.ring())?;
    let inf_c = c.homology().inf.ok_or(Error::ZeroModule)?;
    let zh = z.homology();
    let (zinf, zsup) = zh.inf.zip(zh.sup).ok_or(Error::ZeroModule)?;
    let mut out = GcdimVerdict {
        value: GcdimValue::UncertifiedUpTo(bound),
        depth_formula: Some(dr - dz),
        inf_rhom: None,
        depth_difference: Some(dz - dc),
    };
    let cm = c.exact_model();
    let amp_c = (cm.hi() - cm.lo).max(0) as usize;
    let p = z.resolution(bound + amp_c + 3);
    let d = biduality_rep(&p, &cm, bound);
    let cn = cone(&d);
    let hd = homology_dims(&cn);
    if let Some(n) = first_homology(&hd, cn.window.lo, cn.window.hi) {
        out.value = GcdimValue::Infinite(format!("cone of the biduality map has homology in degree {n}"));
        return Ok(out);
    }
    if !cn.window.contains(zinf) || !cn.window.contains(zsup + 1) {
        return Ok(out);
    }
    let h = hom_complex(&p, &cm);
    let hh = homology_dims(&h);
    let Some(inf_r) = hh.inf else {
        return Ok(out);
    };
    out.inf_rhom = Some(inf_r);
    let half = (bound as i64 + 1) / 2;
    if let Some(wl) = h.window.lo_finite() {
        if inf_r - wl < half {
            return Ok(out);
        }
    }
    out.value = GcdimValue::FiniteEquals(inf_c - inf_r);
    Ok(out)
}

/// Membership of X in the Auslander class of C: `C ⊗^L X` bounded in the
/// window and `γ: X -> RHom(C, C ⊗^L X)` a quasi-isomorphism there.
pub fn in_auslander_class<K: Field>(x: &Object<K>, c: &Object<K>, bound: usize) -> Result<AuslanderVerdict> {
    require_semidualizing(c, bound)?;
    let pc = c.resolution(bound);
    let f = x.resolution(bound);
    let y = tensor_complex(&pc, &f);
    let hy = homology_dims(&y);
    let half = (bound as i64 + 1) / 2;
    if let (Some(wh), Some(s)) = (y.window.hi_finite(), hy.sup) {
        if wh - s < half {
            return Ok(AuslanderVerdict::Uncertified(format!(
                "C ⊗^L X has homology in degree {s}, within {half} of the window top {wh}"
            )));
        }
    }
    let g = gamma_rep(&f, &pc);
    let cn = cone(&g);
    let hd = homology_dims(&cn);
    if let Some(n) = first_homology(&hd, cn.window.lo, cn.window.hi) {
        return Ok(AuslanderVerdict::NotMember(format!("cone of γ has homology in degree {n}")));
    }
    let xh = x.homology();
    if let (Some(i), Some(s)) = (xh.inf, xh.sup) {
        if !cn.window.contains(i) || !cn.window.contains(s + 1) {
            return Ok(AuslanderVerdict::Uncertified(format!(
                "cone window {} misses the homology of X",
                cn.window.describe()
            )));
        }
    }
    Ok(AuslanderVerdict::MemberAtBound(bound))
}

/// `gr_C M = G_C-dim M`; an error unless the G_C-dimension is certified
/// finite.
pub fn is_g_perfect<K: Field>(m: &Object<K>, c: &Object<K>, bound: usize) -> Result<bool> {
    let g = gcdim(m, c, bound)?
        .finite()
        .ok_or_else(|| Error::Invalid("G_C-dimension not certified finite".into()))?;
    Ok(grade_wrt(m, c, bound)? == g)
}
