//! Representatives of the biduality morphism and of the map
//! `γ: X -> RHom(C, C ⊗^L X)`.

use crate::algebra::{Field, GradedMatrix, Term, Vector};

use super::complex::{ChainMap, Complex, Window, INF};
use super::ops::{hom_blocks, hom_complex, tensor_blocks, tensor_complex, truncate_quotient};
use super::resolve::{homology_dims, resolve_complex};

/// `δ: P -> Hom(Q, C)` where `q: Q -> Hom(P, C)` resolves the Hom complex
/// up to degree `C.hi - P.lo + bound`; on a basis element x of `P_p` and
/// ψ of `Q_m`, `δ(x)(ψ) = (-1)^{pm} q(ψ)(x)`.
pub fn biduality_rep<K: Field>(p: &Complex<K>, c: &Complex<K>, bound: usize) -> ChainMap<K> {
    let ring = &p.ring;
    let poly = &ring.poly;
    let h = hom_complex(p, c);
    let top = if c.is_zero_complex() || p.is_zero_complex() {
        0
    } else {
        c.hi() - p.lo + bound as i64
    };
    let (q, qmap) = resolve_complex(&h, top);
    let target = hom_complex(&q, c);
    let mut comps = Vec::new();
    for pd in p.lo..=p.hi() {
        let src = p.term(pd);
        let tb = hom_blocks(&q, c, pd);
        let mut cols: Vec<Vec<Term<K::Elem>>> = vec![Vec::new(); src.rank()];
        for &(m, off_t, nb, rc) in &tb.blocks {
            let sign_odd = (pd * m).rem_euclid(2) == 1;
            let qm = qmap.comp(m);
            let Some((off_h, _, rc2)) = hom_blocks(p, c, m).find(pd) else { continue };
            debug_assert_eq!(rc, rc2);
            for b in 0..nb {
                let col = &qm.cols[b];
                for t in &col.terms {
                    let idx = t.comp as usize;
                    if idx < off_h || idx >= off_h + src.rank() * rc {
                        continue;
                    }
                    let a = (idx - off_h) / rc;
                    let i = (idx - off_h) % rc;
                    let coeff = if sign_odd { poly.field.neg(&t.coeff) } else { t.coeff.clone() };
                    cols[a].push(Term {
                        comp: (off_t + b * rc + i) as u32,
                        mono: t.mono,
                        coeff,
                    });
                }
            }
        }
        comps.push(GradedMatrix {
            source: src,
            target: target.term(pd),
            cols: cols.into_iter().map(|t| ring.reduce(&poly.normalize(t))).collect(),
        });
    }
    let mut window = p.window.intersect(&target.window);
    if let Some(l) = h.window.lo_finite() {
        let clo = if c.is_zero_complex() { 0 } else { c.lo };
        window = window.intersect(&Window::new(-INF, clo - l - 1));
    }
    ChainMap {
        source: p.clone(),
        target,
        comps,
        window,
    }
}

/// `γ: F -> Hom(P_C, τ(P_C ⊗ F))`, `γ(f)(x) = (-1)^{|x||f|} x ⊗ f`, where τ
/// is the quotient truncation at the highest degree in the window of
/// `P_C ⊗ F` carrying homology. The result is valid under the assumption
/// that `C ⊗^L X` has no homology above that degree.
pub fn gamma_rep<K: Field>(f: &Complex<K>, pc: &Complex<K>) -> ChainMap<K> {
    let ring = &f.ring;
    let y = tensor_complex(pc, f);
    let dims = homology_dims(&y);
    let b = match dims.sup {
        Some(s) => s,
        None => y.lo - 1,
    };
    let yt = truncate_quotient(&y, b.min(y.window.hi));
    let target = hom_complex(pc, &yt);
    let mut comps = Vec::new();
    for n in f.lo..=f.hi() {
        let src = f.term(n);
        let hb = hom_blocks(pc, &yt, n);
        let mut cols: Vec<Vec<Term<K::Elem>>> = vec![Vec::new(); src.rank()];
        for &(p, off, np, ry) in &hb.blocks {
            let Some((toff, _, rf)) = tensor_blocks(pc, f, p + n).find(p) else { continue };
            let odd = (p * n).rem_euclid(2) == 1;
            let fld = &ring.poly.field;
            let s = if odd { fld.neg(&fld.one()) } else { fld.one() };
            for (a, col) in cols.iter_mut().enumerate() {
                for g in 0..np {
                    col.push(Term {
                        comp: (off + g * ry + toff + g * rf + a) as u32,
                        mono: crate::algebra::Monomial::ONE,
                        coeff: s.clone(),
                    });
                }
            }
        }
        comps.push(GradedMatrix {
            source: src,
            target: target.term(n),
            cols: cols
                .into_iter()
                .map(|t| if t.is_empty() { Vector::zero() } else { ring.poly.normalize(t) })
                .collect(),
        });
    }
    let window = f.window.intersect(&target.window);
    ChainMap {
        source: f.clone(),
        target,
        comps,
        window,
    }
}
