//! Resolutions of modules, shifts, cones, total Hom and tensor complexes
//! and quotient truncation.

use crate::algebra::{Field, GradedFree, GradedMatrix, Term, Vector};
use crate::groebner::Ring;
use crate::modops::{postcompose, precompose, resolution, ModulePresentation};

use super::complex::{ChainMap, Complex, Window, INF};

fn sign_elem<K: Field>(ring: &Ring<K>, odd: bool) -> K::Elem {
    let f = &ring.poly.field;
    if odd {
        f.neg(&f.one())
    } else {
        f.one()
    }
}

fn scale_vec<K: Field>(ring: &Ring<K>, v: &Vector<K>, odd: bool) -> Vector<K> {
    if odd {
        ring.poly.neg(v)
    } else {
        v.clone()
    }
}

/// Minimal free resolution `F_bound -> ... -> F_0` of M. The window is all
/// of ℤ when the resolution stops before `bound`, else `(-∞, bound - 1]`.
pub fn from_module<K: Field>(m: &ModulePresentation<K>, bound: usize) -> Complex<K> {
    let ring = m.ring.clone();
    let bound = bound.max(1);
    let m = crate::modops::minimal_presentation(m);
    let ds = resolution(&m, bound);
    let mut terms = vec![m.gens.clone()];
    let mut diffs = vec![GradedMatrix::zero(m.gens.clone(), GradedFree::zero())];
    let mut exact = m.gens.rank() == 0;
    for d in ds {
        if d.ncols() == 0 {
            exact = true;
            break;
        }
        terms.push(d.source.clone());
        diffs.push(d);
    }
    if terms.len() <= bound {
        exact = true;
    }
    let rels = vec![Vec::new(); terms.len()];
    let window = if exact { Window::full() } else { Window::upto(bound as i64 - 1) };
    let mut c = Complex {
        ring,
        lo: 0,
        terms,
        rels,
        diffs,
        window,
    };
    c.trim();
    c
}

/// `(Σⁿ X)_v = X_{v-n}` with differentials multiplied by `(-1)^n`.
pub fn shift<K: Field>(x: &Complex<K>, n: i64) -> Complex<K> {
    let odd = n.rem_euclid(2) == 1;
    let diffs = x
        .diffs
        .iter()
        .map(|d| GradedMatrix {
            source: d.source.clone(),
            target: d.target.clone(),
            cols: d.cols.iter().map(|c| scale_vec(&x.ring, c, odd)).collect(),
        })
        .collect();
    Complex {
        ring: x.ring.clone(),
        lo: if x.terms.is_empty() { 0 } else { x.lo + n },
        terms: x.terms.clone(),
        rels: x.rels.clone(),
        diffs,
        window: x.window.shift(n),
    }
}

/// Shifts a chain map along with its source and target.
pub fn shift_map<K: Field>(f: &ChainMap<K>, n: i64) -> ChainMap<K> {
    ChainMap {
        source: shift(&f.source, n),
        target: shift(&f.target, n),
        comps: f.comps.clone(),
        window: f.window.shift(n),
    }
}

/// Builds a complex from a degree range and per-degree constructors.
pub(crate) fn assemble<K: Field>(
    ring: &Ring<K>,
    lo: i64,
    hi: i64,
    term: impl Fn(i64) -> GradedFree,
    rels: impl Fn(i64) -> Vec<Vector<K>>,
    diff: impl Fn(i64, &GradedFree, &GradedFree) -> Vec<Vector<K>>,
    window: Window,
) -> Complex<K> {
    if lo > hi {
        let mut z = Complex::zero(ring.clone());
        z.window = window;
        return z;
    }
    let terms: Vec<GradedFree> = (lo..=hi).map(&term).collect();
    let mut diffs = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        let below = if k == 0 { GradedFree::zero() } else { terms[k - 1].clone() };
        let cols = if k == 0 {
            vec![Vector::zero(); t.rank()]
        } else {
            diff(lo + k as i64, t, &below)
        };
        diffs.push(GradedMatrix {
            source: t.clone(),
            target: below,
            cols,
        });
    }
    let mut c = Complex {
        ring: ring.clone(),
        lo,
        terms,
        rels: (lo..=hi).map(rels).collect(),
        diffs,
        window,
    };
    c.trim();
    c
}

/// Mapping cone: `Cone_n = X_{n-1} ⊕ Y_n`, `d(x, y) = (-∂x, f(x) + ∂y)`.
pub fn cone<K: Field>(f: &ChainMap<K>) -> Complex<K> {
    let (x, y) = (&f.source, &f.target);
    let ring = &x.ring;
    let poly = &ring.poly;
    let window = x
        .window
        .shift(1)
        .intersect(&y.window)
        .intersect(&f.window.shift(1))
        .intersect(&f.window)
        .shrink(1, 1);
    let lo = (x.lo + 1).min(y.lo);
    let hi = (x.hi() + 1).max(y.hi());
    if x.is_zero_complex() && y.is_zero_complex() {
        return Complex::zero(ring.clone());
    }
    assemble(
        ring,
        lo,
        hi,
        |n| x.term(n - 1).sum(&y.term(n)),
        |n| {
            let off = x.rank(n - 1) as u32;
            let mut r: Vec<Vector<K>> = x.rels_at(n - 1).to_vec();
            r.extend(y.rels_at(n).iter().map(|u| poly.offset(u, off)));
            r
        },
        |n, _, _| {
            let dx = x.diff(n - 1);
            let fx = f.comp(n - 1);
            let dy = y.diff(n);
            let off = x.rank(n - 2) as u32;
            let mut cols = Vec::with_capacity(dx.ncols() + dy.ncols());
            for (a, b) in dx.cols.iter().zip(&fx.cols) {
                cols.push(poly.add(&poly.neg(a), &poly.offset(b, off)));
            }
            for c in &dy.cols {
                cols.push(poly.offset(c, off));
            }
            cols
        },
        window,
    )
}

/// Position of each block `(p, offset, rank_p, rank_q)` inside a total
/// degree of a double complex.
#[derive(Clone, Debug)]
pub struct Blocks {
    pub blocks: Vec<(i64, usize, usize, usize)>,
    pub total: usize,
}

impl Blocks {
    pub fn find(&self, p: i64) -> Option<(usize, usize, usize)> {
        self.blocks
            .iter()
            .find(|b| b.0 == p)
            .map(|&(_, o, a, b)| (o, a, b))
    }
}

/// Blocks of `Hom(P, Y)_n = ⊕_p Hom(P_p, Y_{p+n})`.
pub fn hom_blocks<K: Field>(p: &Complex<K>, y: &Complex<K>, n: i64) -> Blocks {
    let mut blocks = Vec::new();
    let mut total = 0;
    for i in p.lo..=p.hi() {
        let (a, b) = (p.rank(i), y.rank(i + n));
        if a > 0 && b > 0 {
            blocks.push((i, total, a, b));
            total += a * b;
        }
    }
    Blocks { blocks, total }
}

fn hom_term<K: Field>(p: &Complex<K>, y: &Complex<K>, n: i64) -> GradedFree {
    let mut t = Vec::new();
    for i in p.lo..=p.hi() {
        if p.rank(i) > 0 && y.rank(i + n) > 0 {
            t.extend(crate::modops::hom_free(&p.term(i), &y.term(i + n)).twists);
        }
    }
    GradedFree::new(t)
}

/// Window of `Hom(P, Y)` for a free `P` whose first untrusted term is
/// `P.top()`.
fn hom_window<K: Field>(p: &Complex<K>, y: &Complex<K>) -> Window {
    if p.is_zero_complex() || y.is_zero_complex() {
        return Window::full();
    }
    let tp = p.top();
    let mut lo = -INF;
    let mut hi = INF;
    if tp < INF {
        // The missing part Hom(P̃_{>T}, Y) lives in degrees ≤ y.hi - T - 1.
        lo = lo.max(y.hi() - tp + 1);
    }
    if let Some(wlo) = y.window.lo_finite() {
        lo = lo.max(wlo - p.lo + 1);
    }
    if let Some(whi) = y.window.hi_finite() {
        if tp < INF {
            hi = -INF;
        } else {
            hi = hi.min(whi - p.hi() - 1);
        }
    }
    Window::new(lo, hi)
}

/// Total Hom complex of a free complex P into Y:
/// `D(φ) = ∂^Y φ - (-1)^{|φ|} φ ∂^P`.
pub fn hom_complex<K: Field>(p: &Complex<K>, y: &Complex<K>) -> Complex<K> {
    assert!(p.is_free(), "hom_complex needs a free source");
    let ring = &p.ring;
    let poly = &ring.poly;
    let window = hom_window(p, y);
    if p.is_zero_complex() || y.is_zero_complex() {
        let mut z = Complex::zero(ring.clone());
        z.window = window;
        return z;
    }
    let lo = y.lo - p.hi();
    let hi = y.hi() - p.lo;
    assemble(
        ring,
        lo,
        hi,
        |n| hom_term(p, y, n),
        |n| {
            let bl = hom_blocks(p, y, n);
            let mut r = Vec::new();
            for &(i, off, _, _) in &bl.blocks {
                let u = crate::modops::matrix_of(&y.term(i + n), y.rels_at(i + n).to_vec());
                for c in postcompose(ring, &p.term(i), &u).cols {
                    r.push(poly.offset(&c, off as u32));
                }
            }
            r
        },
        |n, _, _| {
            let src = hom_blocks(p, y, n);
            let dst = hom_blocks(p, y, n - 1);
            let odd = n.rem_euclid(2) == 0; // -(-1)^n is -1 for even n
            let mut cols = Vec::with_capacity(src.total);
            for &(i, _, a, b) in &src.blocks {
                let post = postcompose(ring, &p.term(i), &y.diff(i + n));
                let pre = precompose(ring, &p.diff(i + 1), &y.term(i + n));
                let d_post = dst.find(i);
                let d_pre = dst.find(i + 1);
                for k in 0..a * b {
                    let mut v = Vector::zero();
                    if let Some((o, _, _)) = d_post {
                        v = poly.add(&v, &poly.offset(&post.cols[k], o as u32));
                    }
                    if let Some((o, _, _)) = d_pre {
                        let w = scale_vec(ring, &pre.cols[k], odd);
                        v = poly.add(&v, &poly.offset(&w, o as u32));
                    }
                    cols.push(ring.reduce(&v));
                }
            }
            cols
        },
        window,
    )
}

/// Blocks of `(P ⊗ Y)_n = ⊕_p P_p ⊗ Y_{n-p}`.
pub fn tensor_blocks<K: Field>(p: &Complex<K>, y: &Complex<K>, n: i64) -> Blocks {
    let mut blocks = Vec::new();
    let mut total = 0;
    for i in p.lo..=p.hi() {
        let (a, b) = (p.rank(i), y.rank(n - i));
        if a > 0 && b > 0 {
            blocks.push((i, total, a, b));
            total += a * b;
        }
    }
    Blocks { blocks, total }
}

fn tensor_window<K: Field>(p: &Complex<K>, y: &Complex<K>) -> Window {
    if p.is_zero_complex() || y.is_zero_complex() {
        return Window::full();
    }
    let mut hi = INF;
    if p.top() < INF {
        hi = hi.min(p.top() + y.lo - 1);
    }
    if y.top() < INF {
        hi = hi.min(y.top() + p.lo - 1);
    }
    let mut lo = -INF;
    if let Some(l) = p.window.lo_finite() {
        lo = lo.max(l + y.hi() + 1);
    }
    if let Some(l) = y.window.lo_finite() {
        lo = lo.max(l + p.hi() + 1);
    }
    Window::new(lo, hi)
}

/// Total tensor complex `∂(a ⊗ y) = ∂a ⊗ y + (-1)^{|a|} a ⊗ ∂y` of a free
/// complex P with Y.
pub fn tensor_complex<K: Field>(p: &Complex<K>, y: &Complex<K>) -> Complex<K> {
    assert!(p.is_free(), "tensor_complex needs a free left factor");
    let ring = &p.ring;
    let poly = &ring.poly;
    let window = tensor_window(p, y);
    if p.is_zero_complex() || y.is_zero_complex() {
        let mut z = Complex::zero(ring.clone());
        z.window = window;
        return z;
    }
    assemble(
        ring,
        p.lo + y.lo,
        p.hi() + y.hi(),
        |n| {
            let mut t = Vec::new();
            for &(i, _, _, _) in &tensor_blocks(p, y, n).blocks {
                for &s in &p.term(i).twists {
                    for &u in &y.term(n - i).twists {
                        t.push(s + u);
                    }
                }
            }
            GradedFree::new(t)
        },
        |n| {
            let mut r = Vec::new();
            for &(i, off, a, b) in &tensor_blocks(p, y, n).blocks {
                for ai in 0..a {
                    for u in y.rels_at(n - i) {
                        r.push(poly.offset(u, (off + ai * b) as u32));
                    }
                }
            }
            r
        },
        |n, _, _| {
            let src = tensor_blocks(p, y, n);
            let dst = tensor_blocks(p, y, n - 1);
            let mut cols = Vec::with_capacity(src.total);
            for &(i, _, a, b) in &src.blocks {
                let dp = p.diff(i);
                let dy = y.diff(n - i);
                let odd = i.rem_euclid(2) == 1;
                let to_p = dst.find(i - 1);
                let to_y = dst.find(i);
                for ai in 0..a {
                    for bi in 0..b {
                        let mut terms: Vec<Term<K::Elem>> = Vec::new();
                        if let Some((o, _, rb)) = to_p {
                            for t in &dp.cols[ai].terms {
                                terms.push(Term {
                                    comp: (o + t.comp as usize * rb + bi) as u32,
                                    mono: t.mono,
                                    coeff: t.coeff.clone(),
                                });
                            }
                        }
                        if let Some((o, _, rb)) = to_y {
                            let s = sign_elem(ring, odd);
                            for t in &dy.cols[bi].terms {
                                terms.push(Term {
                                    comp: (o + ai * rb + t.comp as usize) as u32,
                                    mono: t.mono,
                                    coeff: poly.field.mul(&s, &t.coeff),
                                });
                            }
                        }
                        cols.push(ring.reduce(&poly.normalize(terms)));
                    }
                }
            }
            cols
        },
        window,
    )
}

/// Replaces `X` by `0 -> X_b / ∂X_{b+1} -> X_{b-1} -> ...`; this is a model
/// of X whenever its homology vanishes above b, which the caller asserts.
pub fn truncate_quotient<K: Field>(x: &Complex<K>, b: i64) -> Complex<K> {
    if b >= x.hi() {
        let mut c = x.clone();
        c.window = Window::new(x.window.lo, INF);
        return c;
    }
    let mut c = x.clone();
    if b < x.lo {
        let mut z = Complex::zero(x.ring.clone());
        z.window = Window::new(x.window.lo, INF);
        return z;
    }
    let keep = (b - x.lo + 1) as usize;
    let extra = x.diff(b + 1).cols;
    c.terms.truncate(keep);
    c.rels.truncate(keep);
    c.diffs.truncate(keep);
    c.rels[keep - 1].extend(extra.into_iter().filter(|v| !v.is_zero()));
    c.window = Window::new(x.window.lo, INF);
    c.trim();
    c
}

/// The chain map `X -> truncate_quotient(X, b)` (identity in degrees ≤ b).
pub fn truncation_map<K: Field>(x: &Complex<K>, b: i64) -> ChainMap<K> {
    let t = truncate_quotient(x, b);
    let comps = (x.lo..=x.hi())
        .map(|n| {
            if n <= b {
                GradedMatrix::identity(&x.ring.poly, &x.term(n))
            } else {
                GradedMatrix::zero(x.term(n), t.term(n))
            }
        })
        .collect();
    ChainMap {
        source: x.clone(),
        target: t,
        comps,
        window: x.window,
    }
}

/// Degreewise direct sum; the window is the intersection.
pub fn direct_sum<K: Field>(x: &Complex<K>, y: &Complex<K>) -> Complex<K> {
    let ring = &x.ring;
    let poly = &ring.poly;
    let window = x.window.intersect(&y.window);
    if x.is_zero_complex() && y.is_zero_complex() {
        let mut z = Complex::zero(ring.clone());
        z.window = window;
        return z;
    }
    let (lo, hi) = match (x.is_zero_complex(), y.is_zero_complex()) {
        (true, _) => (y.lo, y.hi()),
        (_, true) => (x.lo, x.hi()),
        _ => (x.lo.min(y.lo), x.hi().max(y.hi())),
    };
    assemble(
        ring,
        lo,
        hi,
        |n| x.term(n).sum(&y.term(n)),
        |n| {
            let off = x.rank(n) as u32;
            let mut r = x.rels_at(n).to_vec();
            r.extend(y.rels_at(n).iter().map(|u| poly.offset(u, off)));
            r
        },
        |n, _, _| {
            let off = x.rank(n - 1) as u32;
            let mut cols = x.diff(n).cols;
            cols.extend(y.diff(n).cols.iter().map(|c| poly.offset(c, off)));
            cols
        },
        window,
    )
}
