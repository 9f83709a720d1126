//! Minimization by Gaussian cancellation, semi-free resolutions of
//! complexes, and homology.

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, GradedFree, GradedMatrix, Monomial, Vector};
use crate::groebner::{hilbert_series, minimal_generators, syzygy_basis, HilbertSeries};
use crate::modops::{matrix_of, subquotient, ModulePresentation};

use super::complex::{ChainMap, Complex, Window, INF};

/// Cancels every unit entry of the differentials. Maps out of `x` listed
/// in `outgoing` (one matrix per degree, from `x.lo`) are precomposed with
/// the inclusion of the smaller complex.
fn cancel<K: Field>(x: &Complex<K>, outgoing: &mut [Vec<GradedMatrix<K>>]) -> Complex<K> {
    assert!(x.is_free(), "minimize needs a free complex");
    let ring = &x.ring;
    let poly = &ring.poly;
    let f = &poly.field;
    let len = x.terms.len();
    let mut cols: Vec<Vec<Vector<K>>> = x
        .diffs
        .iter()
        .map(|d| d.cols.iter().map(|c| ring.reduce(c)).collect())
        .collect();
    let mut alive: Vec<Vec<bool>> = x.terms.iter().map(|t| vec![true; t.rank()]).collect();
    for k in 1..len {
        loop {
            let mut pivot = None;
            'search: for (j, c) in cols[k].iter().enumerate() {
                if !alive[k][j] {
                    continue;
                }
                for t in &c.terms {
                    if t.mono.is_one() {
                        pivot = Some((j, t.comp as usize, t.coeff.clone()));
                        break 'search;
                    }
                }
            }
            let Some((j, i, c)) = pivot else { break };
            let cinv = f.inv(&c).expect("unit pivot");
            let pcol = cols[k][j].clone();
            for l in 0..cols[k].len() {
                if l == j || !alive[k][l] {
                    continue;
                }
                let a = poly.component(&cols[k][l], i as u32);
                if a.is_zero() {
                    continue;
                }
                let fac = poly.scale(&a, &f.neg(&cinv), &Monomial::ONE);
                let prod = poly.mul_poly(&fac, &pcol);
                cols[k][l] = ring.reduce(&poly.add(&cols[k][l], &prod));
                for maps in outgoing.iter_mut() {
                    if let Some(m) = maps.get_mut(k) {
                        let p = poly.mul_poly(&fac, &m.cols[j]);
                        m.cols[l] = ring.reduce(&poly.add(&m.cols[l], &p));
                    }
                }
            }
            alive[k][j] = false;
            alive[k - 1][i] = false;
            cols[k][j] = Vector::zero();
            for col in cols[k].iter_mut() {
                *col = poly.normalize(col.terms.iter().filter(|t| t.comp as usize != i).cloned().collect());
            }
            cols[k - 1][i] = Vector::zero();
            if k + 1 < len {
                for col in cols[k + 1].iter_mut() {
                    *col = poly.normalize(col.terms.iter().filter(|t| t.comp as usize != j).cloned().collect());
                }
            }
        }
    }
    let newidx: Vec<Vec<u32>> = alive
        .iter()
        .map(|a| {
            let mut n = 0;
            a.iter()
                .map(|&b| {
                    let v = if b { n } else { u32::MAX };
                    if b {
                        n += 1;
                    }
                    v
                })
                .collect()
        })
        .collect();
    let terms: Vec<GradedFree> = (0..len)
        .map(|k| {
            GradedFree::new(
                x.terms[k]
                    .twists
                    .iter()
                    .zip(&alive[k])
                    .filter(|(_, &a)| a)
                    .map(|(&t, _)| t)
                    .collect(),
            )
        })
        .collect();
    let diffs: Vec<GradedMatrix<K>> = (0..len)
        .map(|k| {
            let target = if k == 0 { GradedFree::zero() } else { terms[k - 1].clone() };
            let cs = cols[k]
                .iter()
                .zip(&alive[k])
                .filter(|(_, &a)| a)
                .map(|(c, _)| {
                    if k == 0 {
                        Vector::zero()
                    } else {
                        poly.map_comps(c, |q| newidx[k - 1][q as usize])
                    }
                })
                .collect();
            GradedMatrix {
                source: terms[k].clone(),
                target,
                cols: cs,
            }
        })
        .collect();
    for maps in outgoing.iter_mut() {
        for (k, m) in maps.iter_mut().enumerate() {
            if k >= len {
                continue;
            }
            m.cols = m
                .cols
                .iter()
                .zip(&alive[k])
                .filter(|(_, &a)| a)
                .map(|(c, _)| c.clone())
                .collect();
            m.source = terms[k].clone();
        }
    }
    let mut c = Complex {
        ring: x.ring.clone(),
        lo: x.lo,
        terms,
        rels: vec![Vec::new(); len],
        diffs,
        window: x.window,
    };
    c.trim();
    c
}

/// Homotopy-equivalent free complex whose differentials have all entries
/// in the maximal ideal; the window is unchanged.
pub fn minimize<K: Field>(x: &Complex<K>) -> Complex<K> {
    cancel(x, &mut [])
}

/// Minimizes the source of `q`, keeping `q` a chain map.
pub fn minimize_source<K: Field>(q: &ChainMap<K>) -> ChainMap<K> {
    let x = &q.source;
    let mut maps = vec![(x.lo..=x.hi()).map(|n| q.comp(n)).collect::<Vec<_>>()];
    let m = cancel(x, &mut maps);
    let shift = (m.lo - x.lo).max(0) as usize;
    let comps = if m.is_zero_complex() {
        Vec::new()
    } else {
        maps.pop().unwrap().into_iter().skip(shift).take(m.terms.len()).collect()
    };
    ChainMap {
        source: m,
        target: q.target.clone(),
        comps,
        window: q.window,
    }
}

/// A minimal free complex Q with a map `q: Q -> x` inducing isomorphisms
/// on `H_n` for `L ≤ n ≤ top - 1`, where L is the bottom of the window of
/// x (or its lowest term). Q stands for the truncation `τ_{≥L} x`, so its
/// own window is `(-∞, top - 1]` (all of ℤ when the construction stops).
pub fn resolve_complex<K: Field>(x: &Complex<K>, top: i64) -> (Complex<K>, ChainMap<K>) {
    let ring = &x.ring;
    let poly = &ring.poly;
    if x.is_zero_complex() {
        let z = Complex::zero(ring.clone());
        let q = ChainMap {
            source: z.clone(),
            target: x.clone(),
            comps: Vec::new(),
            window: Window::full(),
        };
        return (z, q);
    }
    let l = x.window.lo_finite().unwrap_or(x.lo).max(x.lo);
    let mut qterms: Vec<GradedFree> = Vec::new();
    let mut qdiffs: Vec<GradedMatrix<K>> = Vec::new();
    let mut qmaps: Vec<GradedMatrix<K>> = Vec::new();
    let mut finished = false;
    let mut n = l;
    while n <= top {
        let k = (n - l) as usize;
        let qprev = if k >= 1 { qterms[k - 1].clone() } else { GradedFree::zero() };
        let qprev2 = if k >= 2 { qterms[k - 2].clone() } else { GradedFree::zero() };
        let rq1 = qprev.rank() as u32;
        let rq2 = qprev2.rank() as u32;
        let yn = x.term(n);
        let amb = qprev.sum(&yn);
        let tgt = qprev2.sum(&x.term(n - 1));
        let mut cols = Vec::new();
        let mut twists = Vec::new();
        if k >= 1 {
            for j in 0..qprev.rank() {
                let d = &qdiffs[k - 1].cols[j];
                let q = &qmaps[k - 1].cols[j];
                cols.push(poly.add(d, &poly.offset(q, rq2)));
                twists.push(qprev.twists[j]);
            }
        }
        let dy = x.diff(n);
        for (j, c) in dy.cols.iter().enumerate() {
            cols.push(poly.offset(c, rq2));
            twists.push(yn.twists[j]);
        }
        for u in x.rels_at(n - 1) {
            if let Some(d) = u.degree(&x.term(n - 1).twists) {
                cols.push(poly.offset(u, rq2));
                twists.push(d);
            }
        }
        let na = amb.rank() as u32;
        let cycles: Vec<Vector<K>> = if cols.iter().all(|c| ring.reduce(c).is_zero()) {
            (0..na).map(|i| poly.basis_vector(i)).collect()
        } else {
            let big = GradedMatrix {
                source: GradedFree::new(twists),
                target: tgt,
                cols,
            };
            syzygy_basis(ring, &big)
                .cols
                .iter()
                .map(|c| ring.reduce(&poly.slice(c, 0, na)))
                .filter(|c| !c.is_zero())
                .collect()
        };
        let mut must: Vec<Vector<K>> = x.diff(n + 1).cols.iter().map(|c| poly.offset(c, rq1)).collect();
        must.extend(x.rels_at(n).iter().map(|u| poly.offset(u, rq1)));
        let kept = minimal_generators(ring, &amb, &must, &cycles);
        let mut tw = Vec::with_capacity(kept.len());
        let mut dcols = Vec::with_capacity(kept.len());
        let mut qcols = Vec::with_capacity(kept.len());
        for &i in &kept {
            let z = &cycles[i];
            tw.push(z.degree(&amb.twists).unwrap());
            dcols.push(poly.neg(&poly.slice(z, 0, rq1)));
            qcols.push(poly.slice(z, rq1, na));
        }
        let qn = GradedFree::new(tw);
        qdiffs.push(GradedMatrix {
            source: qn.clone(),
            target: qprev,
            cols: dcols,
        });
        qmaps.push(GradedMatrix {
            source: qn.clone(),
            target: yn,
            cols: qcols,
        });
        let empty = qn.rank() == 0;
        qterms.push(qn);
        if empty && n >= x.hi() {
            finished = true;
            break;
        }
        n += 1;
    }
    let hi = if finished { x.window.hi } else { (top - 1).min(x.window.hi) };
    let len = qterms.len();
    let mut qc = Complex {
        ring: ring.clone(),
        lo: l,
        terms: qterms,
        rels: vec![Vec::new(); len],
        diffs: qdiffs,
        window: Window::new(-INF, hi),
    };
    let lo_before = qc.lo;
    qc.trim();
    let skip = (qc.lo - lo_before).max(0) as usize;
    if qc.is_zero_complex() {
        qmaps.clear();
    } else {
        qmaps = qmaps.into_iter().skip(skip).take(qc.terms.len()).collect();
    }
    let q = ChainMap {
        source: qc,
        target: x.clone(),
        comps: qmaps,
        window: Window::new(l, hi),
    };
    let q = minimize_source(&q);
    (q.source.clone(), q)
}

/// Hilbert series of `H_n(x) = Z_n / (B_n + U_n)`, from three Gröbner bases
/// and no syzygies.
pub fn homology_hs<K: Field>(x: &Complex<K>, n: i64) -> HilbertSeries {
    let ring = &x.ring;
    let w = &ring.poly.weights;
    let fn_ = x.term(n);
    if fn_.rank() == 0 {
        return HilbertSeries::zero(w);
    }
    let mut bu: Vec<Vector<K>> = x.diff(n + 1).cols;
    bu.extend(x.rels_at(n).iter().cloned());
    let top = hilbert_series(ring, &fn_, &bu);
    let below = x.term(n - 1);
    let u1 = x.rels_at(n - 1).to_vec();
    let mut im = x.diff(n).cols;
    im.extend(u1.iter().cloned());
    let image = hilbert_series(ring, &below, &u1).sub(&hilbert_series(ring, &below, &im));
    top.sub(&image)
}

/// A minimal presentation of `H_n(x)`.
pub fn homology_module<K: Field>(x: &Complex<K>, n: i64) -> ModulePresentation<K> {
    let ring = &x.ring;
    let poly = &ring.poly;
    let fn_ = x.term(n);
    if fn_.rank() == 0 {
        return ModulePresentation::zero(ring.clone());
    }
    let below = x.term(n - 1);
    let d = x.diff(n);
    let u1 = x.rels_at(n - 1);
    let r = fn_.rank() as u32;
    let z = if d.cols.iter().all(|c| ring.reduce(c).is_zero()) {
        GradedMatrix::identity(poly, &fn_)
    } else {
        let mut cols = d.cols.clone();
        let mut tw = fn_.twists.clone();
        for u in u1 {
            if let Some(dg) = u.degree(&below.twists) {
                cols.push(u.clone());
                tw.push(dg);
            }
        }
        let big = GradedMatrix {
            source: GradedFree::new(tw),
            target: below,
            cols,
        };
        let syz = syzygy_basis(ring, &big);
        matrix_of(&fn_, syz.cols.iter().map(|c| poly.slice(c, 0, r)).collect())
    };
    let mut rels = x.diff(n + 1).cols;
    rels.extend(x.rels_at(n).iter().cloned());
    subquotient(ring, &fn_, &z, &rels).0
}

/// Graded homology data of one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeHomology {
    pub degree: i64,
    pub hilbert_numerator: Vec<(i64, i64)>,
    pub length: Option<u64>,
    pub krull_dim: Option<usize>,
}

/// Homology over the part of the window where x has terms, plus sup, inf
/// and amplitude read inside that range.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyDims {
    pub window: Window,
    pub degrees: Vec<DegreeHomology>,
    pub sup: Option<i64>,
    pub inf: Option<i64>,
    pub amp: Option<i64>,
}

pub fn homology_dims<K: Field>(x: &Complex<K>) -> HomologyDims {
    let mut degrees = Vec::new();
    if !x.is_zero_complex() {
        let lo = x.lo.max(x.window.lo);
        let hi = x.hi().min(x.window.hi);
        for n in lo..=hi {
            let hs = homology_hs(x, n);
            degrees.push(DegreeHomology {
                degree: n,
                hilbert_numerator: hs.numerator.terms.iter().map(|(&e, &c)| (e, c)).collect(),
                length: hs.length(),
                krull_dim: hs.pole_order(),
            });
        }
    }
    let nz: Vec<i64> = degrees
        .iter()
        .filter(|d| d.krull_dim.is_some())
        .map(|d| d.degree)
        .collect();
    let sup = nz.iter().max().copied();
    let inf = nz.iter().min().copied();
    HomologyDims {
        window: x.window,
        degrees,
        sup,
        inf,
        amp: sup.zip(inf).map(|(s, i)| s - i),
    }
}

impl HomologyDims {
    pub fn at(&self, n: i64) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|d| d.degree == n)
    }

    /// True when every degree of `lo..=hi` inside the window has zero
    /// homology.
    pub fn vanishes_on(&self, lo: i64, hi: i64) -> bool {
        self.degrees
            .iter()
            .filter(|d| d.degree >= lo && d.degree <= hi)
            .all(|d| d.krull_dim.is_none())
    }
}
