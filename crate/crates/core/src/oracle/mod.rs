//! Brute-force invariants of artinian rings by finite-dimensional linear
//! algebra.
//!
//! The ring is realized degree by degree: the ideal's homogeneous piece
//! `I_d` is spanned by monomial multiples of the relations and row reduced
//! with columns in decreasing monomial order. Non-pivot columns are the
//! standard monomials and the reduced rows give normal forms. Modules are
//! k-spaces with one action matrix per variable; resolutions, Ext and Tor
//! come from nullspaces and ranks, computed separately in each internal
//! degree. Nothing here calls the Gröbner engine or the complex machinery.

mod linalg;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algebra::{Field, Monomial, Vector};
use crate::error::{Error, Result};
use crate::groebner::Ring;
use crate::modops::ModulePresentation;
use linalg::{kernel, rank, rref, Row};

/// Sparse vector: (coordinate, nonzero coefficient).
pub type Sparse<K> = Vec<(usize, <K as Field>::Elem)>;

/// R as a k-algebra with basis of standard monomials.
#[derive(Clone, Debug)]
pub struct FiniteAlgebra<K: Field> {
    pub field: K,
    pub weights: Vec<u32>,
    pub basis: Vec<Monomial>,
    pub degrees: Vec<i64>,
    /// `table[a][b]` is `basis[a] * basis[b]` in the basis.
    pub table: Vec<Vec<Sparse<K>>>,
    relations: Vec<Vec<(Monomial, K::Elem)>>,
    index: HashMap<Monomial, usize>,
    normal_forms: HashMap<Monomial, Sparse<K>>,
    /// Monomials above this degree vanish.
    top: i64,
}

fn monomials_of_degree(weights: &[u32], d: u32) -> Vec<Monomial> {
    fn go(weights: &[u32], i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == weights.len() {
            if left == 0 {
                out.push(Monomial::new(exps, weights));
            }
            return;
        }
        let w = weights[i];
        for e in 0..=left / w {
            exps[i] = e as u16;
            go(weights, i + 1, left - e * w, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    go(weights, 0, d, &mut vec![0; weights.len()], &mut out);
    out
}

/// dim_k M_d for lo ≤ d ≤ hi by linear algebra in each degree: M_d is F_d
/// modulo monomial multiples of the relation columns and of the ring's
/// defining relations times each generator. Works in any Krull dimension.
pub fn brute_force_graded_dims<K: Field>(m: &ModulePresentation<K>, lo: i64, hi: i64) -> GradedDims {
    let field = m.ring.field().clone();
    let weights = &m.ring.poly.weights;
    let twists = &m.gens.twists;
    let ideal: Vec<&Vector<K>> = m.ring.relations().iter().filter(|v| !v.is_zero()).collect();
    let cols: Vec<(&Vector<K>, i64)> = m
        .rels
        .cols
        .iter()
        .filter_map(|c| c.degree(twists).map(|e| (c, e)))
        .collect();
    let mut out = BTreeMap::new();
    for d in lo..=hi {
        let mut col: HashMap<(u32, Monomial), usize> = HashMap::new();
        for (j, &t) in twists.iter().enumerate() {
            if t <= d {
                for u in monomials_of_degree(weights, (d - t) as u32) {
                    let n = col.len();
                    col.insert((j as u32, u), n);
                }
            }
        }
        let width = col.len();
        let mut rows: Vec<Row<K>> = Vec::new();
        let mut push = |v: &Vector<K>, comp: Option<u32>, u: &Monomial| {
            let mut row = vec![field.zero(); width];
            for t in &v.terms {
                let i = col[&(comp.unwrap_or(t.comp), t.mono.mul(u))];
                row[i] = field.add(&row[i], &t.coeff);
            }
            rows.push(row);
        };
        for &(v, e) in &cols {
            if e <= d {
                for u in monomials_of_degree(weights, (d - e) as u32) {
                    push(v, None, &u);
                }
            }
        }
        for f in &ideal {
            let e = f.terms[0].mono.deg() as i64;
            for (j, &t) in twists.iter().enumerate() {
                if t + e <= d {
                    for u in monomials_of_degree(weights, (d - t - e) as u32) {
                        push(f, Some(j as u32), &u);
                    }
                }
            }
        }
        let r = if rows.is_empty() { 0 } else { rank(&field, rows) };
        out.insert(d, (width - r) as u64);
    }
    GradedDims(out)
}

/// Finite-dimensional model of an artinian ring.
pub fn realize<K: Field>(r: &Ring<K>) -> Result<Arc<FiniteAlgebra<K>>> {
    if r.krull_dimension() != 0 {
        return Err(Error::NotArtinian);
    }
    let field = r.field().clone();
    let poly = &r.poly;
    let weights = poly.weights.clone();
    let relations: Vec<Vec<(Monomial, K::Elem)>> = r
        .relations()
        .iter()
        .filter(|v| !v.is_zero())
        .map(|v| v.terms.iter().map(|t| (t.mono, t.coeff.clone())).collect())
        .collect();
    let wmax = weights.iter().copied().max().unwrap_or(1) as i64;
    let mut basis = Vec::new();
    let mut degrees = Vec::new();
    let mut index = HashMap::new();
    let mut reduced: HashMap<Monomial, Vec<(Monomial, K::Elem)>> = HashMap::new();
    let mut top = -1;
    let mut run = 0;
    let mut d = 0u32;
    while run < wmax {
        let mut monos = monomials_of_degree(&weights, d);
        monos.sort_by(|a, b| poly.order.cmp_mono(b, a));
        let col: HashMap<Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut rows: Vec<Row<K>> = Vec::new();
        for f in &relations {
            let e = f[0].0.deg();
            if e > d {
                continue;
            }
            for m in monomials_of_degree(&weights, d - e) {
                let mut row = vec![field.zero(); monos.len()];
                for (u, c) in f {
                    let i = col[&u.mul(&m)];
                    row[i] = field.add(&row[i], c);
                }
                rows.push(row);
            }
        }
        let pivots = rref(&field, &mut rows);
        let mut is_pivot = vec![false; monos.len()];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let standard: Vec<usize> = (0..monos.len()).filter(|&i| !is_pivot[i]).collect();
        for (row, &p) in rows.iter().zip(&pivots) {
            let nf = standard
                .iter()
                .filter(|&&c| !field.is_zero(&row[c]))
                .map(|&c| (monos[c], field.neg(&row[c])))
                .collect();
            reduced.insert(monos[p], nf);
        }
        for &c in &standard {
            index.insert(monos[c], basis.len());
            basis.push(monos[c]);
            degrees.push(d as i64);
        }
        if standard.is_empty() {
            run += 1;
        } else {
            run = 0;
            top = d as i64;
        }
        d += 1;
    }
    let normal_forms = reduced
        .into_iter()
        .map(|(m, nf)| (m, nf.into_iter().map(|(s, c)| (index[&s], c)).collect()))
        .collect();
    let mut alg = FiniteAlgebra {
        field,
        weights,
        basis,
        degrees,
        table: Vec::new(),
        relations,
        index,
        normal_forms,
        top,
    };
    alg.table = (0..alg.dim())
        .map(|a| (0..alg.dim()).map(|b| alg.monomial(&alg.basis[a].mul(&alg.basis[b]))).collect())
        .collect();
    Ok(Arc::new(alg))
}

impl<K: Field> FiniteAlgebra<K> {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn nvars(&self) -> usize {
        self.weights.len()
    }

    /// Normal form of a monomial.
    pub fn monomial(&self, m: &Monomial) -> Sparse<K> {
        if m.deg() as i64 > self.top {
            return Vec::new();
        }
        if let Some(&i) = self.index.get(m) {
            return vec![(i, self.field.one())];
        }
        self.normal_forms.get(m).cloned().unwrap_or_default()
    }

    /// Index of the variable `x_i` in the basis, if it is standard.
    fn var_image(&self, i: usize) -> Sparse<K> {
        self.monomial(&Monomial::var(i, &self.weights))
    }

    /// `a * b` for dense elements.
    pub fn mul(&self, a: &[K::Elem], b: &[K::Elem]) -> Vec<K::Elem> {
        let f = &self.field;
        let mut out = vec![f.zero(); self.dim()];
        for (i, x) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
            for (j, y) in b.iter().enumerate().filter(|(_, y)| !f.is_zero(y)) {
                let xy = f.mul(x, y);
                for (k, c) in &self.table[i][j] {
                    out[*k] = f.add(&out[*k], &f.mul(&xy, c));
                }
            }
        }
        out
    }

    /// Associativity, unit and commutativity of the table.
    pub fn is_consistent(&self) -> bool {
        let n = self.dim();
        let unit = self.index.get(&Monomial::ONE).copied();
        let e = |i: usize| {
            let mut v = vec![self.field.zero(); n];
            v[i] = self.field.one();
            v
        };
        let Some(u) = unit else {
            return n == 0;
        };
        (0..n).all(|a| {
            self.mul(&e(u), &e(a)) == e(a)
                && (0..n).all(|b| {
                    self.mul(&e(a), &e(b)) == self.mul(&e(b), &e(a))
                        && (0..n).all(|c| {
                            self.mul(&self.mul(&e(a), &e(b)), &e(c)) == self.mul(&e(a), &self.mul(&e(b), &e(c)))
                        })
                })
        })
    }
}

/// Finite-dimensional graded module: a homogeneous k-basis and the action
/// of each variable on it.
#[derive(Clone, Debug)]
pub struct FiniteModule<K: Field> {
    pub algebra: Arc<FiniteAlgebra<K>>,
    pub degrees: Vec<i64>,
    /// `action[i][b]` is `x_i` applied to basis vector b.
    pub action: Vec<Vec<Sparse<K>>>,
}

fn densify<K: Field>(f: &K, s: &Sparse<K>, n: usize) -> Vec<K::Elem> {
    let mut v = vec![f.zero(); n];
    for (i, c) in s {
        v[*i] = c.clone();
    }
    v
}

fn sparsify<K: Field>(f: &K, v: &[K::Elem]) -> Sparse<K> {
    v.iter()
        .enumerate()
        .filter(|(_, c)| !f.is_zero(c))
        .map(|(i, c)| (i, c.clone()))
        .collect()
}

/// Action of basis monomial `b` of the algebra on free module vectors with
/// `dim R`-sized blocks.
fn free_mul<K: Field>(alg: &FiniteAlgebra<K>, b: usize, v: &[K::Elem]) -> Vec<K::Elem> {
    let f = &alg.field;
    let n = alg.dim();
    let mut out = vec![f.zero(); v.len()];
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
        let (blk, a) = (i / n, i % n);
        for (k, t) in &alg.table[b][a] {
            let o = blk * n + k;
            out[o] = f.add(&out[o], &f.mul(c, t));
        }
    }
    out
}

fn free_mul_var<K: Field>(alg: &FiniteAlgebra<K>, var: usize, v: &[K::Elem]) -> Vec<K::Elem> {
    let f = &alg.field;
    let n = alg.dim();
    let x = alg.var_image(var);
    let mut out = vec![f.zero(); v.len()];
    for (i, c) in v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
        let (blk, a) = (i / n, i % n);
        for (xb, xc) in &x {
            for (k, t) in &alg.table[*xb][a] {
                let o = blk * n + k;
                out[o] = f.add(&out[o], &f.mul(&f.mul(c, xc), t));
            }
        }
    }
    out
}

impl<K: Field> FiniteModule<K> {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    fn field(&self) -> &K {
        &self.algebra.field
    }

    /// `⊕ R(-t)` over the given twists.
    pub fn free(alg: &Arc<FiniteAlgebra<K>>, twists: &[i64]) -> Self {
        let n = alg.dim();
        let degrees = twists
            .iter()
            .flat_map(|t| alg.degrees.iter().map(move |d| t + d))
            .collect();
        let action = (0..alg.nvars())
            .map(|i| {
                let x = alg.var_image(i);
                (0..twists.len() * n)
                    .map(|c| {
                        let (blk, a) = (c / n, c % n);
                        let mut v = vec![alg.field.zero(); twists.len() * n];
                        for (xb, xc) in &x {
                            for (k, t) in &alg.table[*xb][a] {
                                let o = blk * n + k;
                                v[o] = alg.field.add(&v[o], &alg.field.mul(xc, t));
                            }
                        }
                        sparsify(&alg.field, &v)
                    })
                    .collect()
            })
            .collect();
        FiniteModule {
            algebra: alg.clone(),
            degrees,
            action,
        }
    }

    pub fn regular(alg: &Arc<FiniteAlgebra<K>>) -> Self {
        Self::free(alg, &[0])
    }

    pub fn residue_field(alg: &Arc<FiniteAlgebra<K>>) -> Self {
        FiniteModule {
            algebra: alg.clone(),
            degrees: vec![0],
            action: vec![vec![Vec::new()]; alg.nvars()],
        }
    }

    /// The cokernel of a presentation matrix, read through normal forms of
    /// its entries.
    pub fn from_presentation(alg: &Arc<FiniteAlgebra<K>>, m: &ModulePresentation<K>) -> Result<Self> {
        if m.ring.nvars() != alg.nvars() {
            return Err(Error::MixedRings);
        }
        let f = &alg.field;
        let n = alg.dim();
        let ambient = Self::free(alg, &m.gens.twists);
        let big = ambient.dim();
        let to_dense = |v: &Vector<K>| {
            let mut out = vec![f.zero(); big];
            for t in &v.terms {
                for (k, c) in alg.monomial(&t.mono) {
                    let o = t.comp as usize * n + k;
                    out[o] = f.add(&out[o], &f.mul(&t.coeff, &c));
                }
            }
            out
        };
        let mut span = Vec::new();
        for col in &m.rels.cols {
            let v = to_dense(col);
            for b in 0..n {
                span.push(free_mul(alg, b, &v));
            }
        }
        Ok(ambient.quotient(span))
    }

    /// M / U for U spanned by homogeneous vectors and closed under the
    /// action.
    pub fn quotient(&self, mut span: Vec<Row<K>>) -> Self {
        let f = self.field();
        let n = self.dim();
        let pivots = if span.is_empty() { Vec::new() } else { rref(f, &mut span) };
        let mut is_pivot = vec![false; n];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let keep: Vec<usize> = (0..n).filter(|&i| !is_pivot[i]).collect();
        let mut pos = vec![usize::MAX; n];
        for (j, &i) in keep.iter().enumerate() {
            pos[i] = j;
        }
        let project = |s: &Sparse<K>| -> Sparse<K> {
            let mut v = densify(f, s, n);
            for (row, &p) in span.iter().zip(&pivots) {
                if !f.is_zero(&v[p]) {
                    let c = v[p].clone();
                    for (x, y) in v.iter_mut().zip(row) {
                        if !f.is_zero(y) {
                            *x = f.sub(x, &f.mul(&c, y));
                        }
                    }
                }
            }
            keep.iter()
                .enumerate()
                .filter(|(_, &i)| !f.is_zero(&v[i]))
                .map(|(j, &i)| (j, v[i].clone()))
                .collect()
        };
        let action = self
            .action
            .iter()
            .map(|a| keep.iter().map(|&i| project(&a[i])).collect())
            .collect();
        FiniteModule {
            algebra: self.algebra.clone(),
            degrees: keep.iter().map(|&i| self.degrees[i]).collect(),
            action,
        }
    }

    pub fn apply_var(&self, i: usize, v: &[K::Elem]) -> Vec<K::Elem> {
        let f = self.field();
        let mut out = vec![f.zero(); self.dim()];
        for (b, c) in v.iter().enumerate().filter(|(_, c)| !f.is_zero(c)) {
            for (k, t) in &self.action[i][b] {
                out[*k] = f.add(&out[*k], &f.mul(c, t));
            }
        }
        out
    }

    pub fn apply_monomial(&self, m: &Monomial, v: &[K::Elem]) -> Vec<K::Elem> {
        let mut out = v.to_vec();
        for (i, &e) in m.exps().iter().take(self.algebra.nvars()).enumerate() {
            for _ in 0..e {
                out = self.apply_var(i, &out);
            }
        }
        out
    }

    /// `basis[b] * e_t` for every algebra basis element b and module basis
    /// vector t.
    fn monomial_table(&self) -> Vec<Vec<Sparse<K>>> {
        let f = self.field();
        (0..self.algebra.dim())
            .map(|b| {
                (0..self.dim())
                    .map(|t| {
                        let e = densify(f, &vec![(t, f.one())], self.dim());
                        sparsify(f, &self.apply_monomial(&self.algebra.basis[b], &e))
                    })
                    .collect()
            })
            .collect()
    }

    /// The variables act by commuting, degree-raising maps killed by the
    /// ring's relations.
    pub fn is_consistent(&self) -> bool {
        let f = self.field();
        let nv = self.algebra.nvars();
        (0..self.dim()).all(|t| {
            let e = densify(f, &vec![(t, f.one())], self.dim());
            let graded = (0..nv).all(|i| {
                self.action[i][t]
                    .iter()
                    .all(|(k, _)| self.degrees[*k] == self.degrees[t] + self.algebra.weights[i] as i64)
            });
            let commute = (0..nv).all(|i| {
                (0..nv).all(|j| self.apply_var(i, &self.apply_var(j, &e)) == self.apply_var(j, &self.apply_var(i, &e)))
            });
            let relations = self.algebra.relations.iter().all(|rel| {
                let mut acc = vec![f.zero(); self.dim()];
                for (m, c) in rel {
                    for (k, x) in self.apply_monomial(m, &e).iter().enumerate() {
                        acc[k] = f.add(&acc[k], &f.mul(c, x));
                    }
                }
                acc.iter().all(|x| f.is_zero(x))
            });
            graded && commute && relations
        })
    }

    /// dim_k of each graded piece.
    pub fn hilbert_function(&self) -> GradedDims {
        let mut out = BTreeMap::new();
        for &d in &self.degrees {
            *out.entry(d).or_insert(0) += 1;
        }
        GradedDims(out)
    }

    /// Basis indices spanning a complement of `mM`.
    fn minimal_generators(&self) -> Vec<usize> {
        let images: Vec<(i64, Sparse<K>)> = self
            .action
            .iter()
            .flat_map(|a| a.iter())
            .filter(|s| !s.is_empty())
            .map(|s| (self.degrees[s[0].0], s.clone()))
            .collect();
        let mut gens = Vec::new();
        for (d, coords) in by_degree(&self.degrees) {
            let local = local_positions(&coords, self.dim());
            let mut rows: Vec<Row<K>> = images
                .iter()
                .filter(|(e, _)| *e == d)
                .map(|(_, s)| restrict(self.field(), s, &local, coords.len()))
                .collect();
            let pivots = if rows.is_empty() { Vec::new() } else { rref(self.field(), &mut rows) };
            gens.extend(
                coords
                    .iter()
                    .enumerate()
                    .filter(|(j, _)| !pivots.contains(j))
                    .map(|(_, &c)| c),
            );
        }
        gens.sort_unstable();
        gens
    }
}

fn by_degree(degrees: &[i64]) -> BTreeMap<i64, Vec<usize>> {
    let mut out: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (i, &d) in degrees.iter().enumerate() {
        out.entry(d).or_default().push(i);
    }
    out
}

fn local_positions(coords: &[usize], n: usize) -> Vec<usize> {
    let mut pos = vec![usize::MAX; n];
    for (j, &c) in coords.iter().enumerate() {
        pos[c] = j;
    }
    pos
}

fn restrict<K: Field>(f: &K, s: &Sparse<K>, local: &[usize], len: usize) -> Row<K> {
    let mut v = vec![f.zero(); len];
    for (i, c) in s {
        let j = local[*i];
        debug_assert!(j != usize::MAX, "inhomogeneous vector");
        v[j] = c.clone();
    }
    v
}

/// Graded linear map between coordinate spaces with given degrees;
/// `images[c]` is the image of source coordinate c.
struct GradedMap<K: Field> {
    source: Vec<i64>,
    target: Vec<i64>,
    images: Vec<Sparse<K>>,
}

impl<K: Field> GradedMap<K> {
    /// (row-major matrix, source coordinates) of the degree-d block.
    fn block(&self, f: &K, d: i64, cols: &[usize]) -> Vec<Row<K>> {
        let rows_idx: Vec<usize> = (0..self.target.len()).filter(|&i| self.target[i] == d).collect();
        let local = local_positions(&rows_idx, self.target.len());
        let mut rows = vec![vec![f.zero(); cols.len()]; rows_idx.len()];
        for (j, &c) in cols.iter().enumerate() {
            for (i, x) in &self.images[c] {
                debug_assert_eq!(self.target[*i], d, "map is not degree preserving");
                rows[local[*i]][j] = x.clone();
            }
        }
        rows
    }

    fn ranks(&self, f: &K) -> BTreeMap<i64, u64> {
        by_degree(&self.source)
            .into_iter()
            .map(|(d, cols)| {
                let rows = self.block(f, d, &cols);
                (d, if rows.is_empty() { 0 } else { rank(f, rows) as u64 })
            })
            .collect()
    }
}

/// Minimal graded free resolution `F_length -> ... -> F_0 -> M`.
#[derive(Clone, Debug)]
pub struct OracleResolution<K: Field> {
    pub algebra: Arc<FiniteAlgebra<K>>,
    pub ranks: Vec<usize>,
    /// Degrees of the generators of each F_i.
    pub degrees: Vec<Vec<i64>>,
    /// `differentials[i - 1]` is `d_i: F_i -> F_{i-1}`: one column per
    /// generator of F_i, a k-vector indexed by (generator of F_{i-1}, basis
    /// monomial of R).
    pub differentials: Vec<Vec<Row<K>>>,
}

impl<K: Field> OracleResolution<K> {
    /// Entry `(l, j)` of `d_i` as a dense element of R.
    fn entry(&self, i: usize, l: usize, j: usize) -> &[K::Elem] {
        let n = self.algebra.dim();
        &self.differentials[i - 1][j][l * n..(l + 1) * n]
    }
}

/// Minimal generators are a basis of `M/mM`; each syzygy module is the
/// nullspace of the previous generator map.
pub fn oracle_minimal_resolution<K: Field>(m: &FiniteModule<K>, length: usize) -> OracleResolution<K> {
    let alg = m.algebra.clone();
    let f = &alg.field;
    let n = alg.dim();
    let mut ranks = Vec::new();
    let mut degrees = Vec::new();
    let mut differentials = Vec::new();
    let mut cur = m.clone();
    // basis of `cur` inside the previous free module
    let mut embedding: Option<Vec<Row<K>>> = None;
    for i in 0..=length {
        let gens = cur.minimal_generators();
        ranks.push(gens.len());
        let gdeg: Vec<i64> = gens.iter().map(|&g| cur.degrees[g]).collect();
        degrees.push(gdeg.clone());
        if let Some(emb) = &embedding {
            differentials.push(gens.iter().map(|&g| emb[g].clone()).collect());
        }
        if i == length || gens.is_empty() {
            break;
        }
        let table = cur.monomial_table();
        let map = GradedMap::<K> {
            source: gdeg.iter().flat_map(|t| alg.degrees.iter().map(move |d| t + d)).collect(),
            target: cur.degrees.clone(),
            images: gens.iter().flat_map(|&g| (0..n).map(move |b| (b, g))).map(|(b, g)| table[b][g].clone()).collect(),
        };
        let big = map.source.len();
        let mut basis: Vec<Row<K>> = Vec::new();
        let mut basis_deg = Vec::new();
        let mut free_cols = Vec::new();
        for (d, cols) in by_degree(&map.source) {
            let rows = map.block(f, d, &cols);
            let (free, vecs) = if rows.is_empty() {
                (
                    (0..cols.len()).collect(),
                    (0..cols.len())
                        .map(|j| densify(f, &vec![(j, f.one())], cols.len()))
                        .collect(),
                )
            } else {
                kernel(f, rows, cols.len())
            };
            for (fc, v) in free.into_iter().zip(vecs) {
                let mut g = vec![f.zero(); big];
                for (j, x) in v.into_iter().enumerate() {
                    g[cols[j]] = x;
                }
                free_cols.push(cols[fc]);
                basis.push(g);
                basis_deg.push(d);
            }
        }
        let pos = local_positions(&free_cols, big);
        let action = (0..alg.nvars())
            .map(|var| {
                basis
                    .iter()
                    .map(|v| {
                        let w = free_mul_var(&alg, var, v);
                        w.iter()
                            .enumerate()
                            .filter(|(_, x)| !f.is_zero(x))
                            .map(|(c, x)| (pos[c], x.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        cur = FiniteModule {
            algebra: alg.clone(),
            degrees: basis_deg,
            action,
        };
        embedding = Some(basis);
    }
    while ranks.len() <= length {
        ranks.push(0);
        degrees.push(Vec::new());
        differentials.push(Vec::new());
    }
    OracleResolution {
        algebra: alg,
        ranks,
        degrees,
        differentials,
    }
}

/// k-dimensions by internal degree.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDims(pub BTreeMap<i64, u64>);

impl GradedDims {
    pub fn total(&self) -> u64 {
        self.0.values().sum()
    }

    pub fn get(&self, d: i64) -> u64 {
        self.0.get(&d).copied().unwrap_or(0)
    }

    fn homology(dims: BTreeMap<i64, u64>, outgoing: &BTreeMap<i64, u64>, incoming: &BTreeMap<i64, u64>) -> Self {
        let mut out = BTreeMap::new();
        for (d, n) in dims {
            let h = n - outgoing.get(&d).copied().unwrap_or(0) - incoming.get(&d).copied().unwrap_or(0);
            if h != 0 {
                out.insert(d, h);
            }
        }
        GradedDims(out)
    }
}

fn count_degrees(degrees: &[i64]) -> BTreeMap<i64, u64> {
    let mut out = BTreeMap::new();
    for &d in degrees {
        *out.entry(d).or_insert(0) += 1;
    }
    out
}

/// `Σ_b a_b (b · e_t)` in N.
fn act<K: Field>(f: &K, a: &[K::Elem], table: &[Vec<Sparse<K>>], t: usize, out: &mut Vec<K::Elem>, offset: usize) {
    for (b, ab) in a.iter().enumerate().filter(|(_, x)| !f.is_zero(x)) {
        for (k, c) in &table[b][t] {
            out[offset + k] = f.add(&out[offset + k], &f.mul(ab, c));
        }
    }
}

/// `Ext^i(M, N)` for `0 ≤ i ≤ length` from `Hom(F, N)`. The degree-e piece
/// consists of maps raising degree by e.
pub fn oracle_ext<K: Field>(m: &FiniteModule<K>, n: &FiniteModule<K>, length: usize) -> Vec<GradedDims> {
    let res = oracle_minimal_resolution(m, length + 1);
    oracle_ext_from(&res, n, length)
}

fn oracle_ext_from<K: Field>(res: &OracleResolution<K>, n: &FiniteModule<K>, length: usize) -> Vec<GradedDims> {
    let f = &n.algebra.field;
    let table = n.monomial_table();
    let dn = n.dim();
    let coords = |i: usize| -> Vec<i64> {
        res.degrees[i]
            .iter()
            .flat_map(|g| n.degrees.iter().map(move |t| t - g))
            .collect()
    };
    // δ^i: Hom(F_i, N) -> Hom(F_{i+1}, N)
    let delta = |i: usize| -> GradedMap<K> {
        let source = coords(i);
        let target = coords(i + 1);
        let mut images = Vec::with_capacity(source.len());
        for l in 0..res.ranks[i] {
            for t in 0..dn {
                let mut v = vec![f.zero(); target.len()];
                for j in 0..res.ranks[i + 1] {
                    act(f, res.entry(i + 1, l, j), &table, t, &mut v, j * dn);
                }
                images.push(sparsify(f, &v));
            }
        }
        GradedMap { source, target, images }
    };
    let ranks: Vec<BTreeMap<i64, u64>> = (0..=length).map(|i| delta(i).ranks(f)).collect();
    (0..=length)
        .map(|i| {
            let none = BTreeMap::new();
            let incoming = if i == 0 { &none } else { &ranks[i - 1] };
            GradedDims::homology(count_degrees(&coords(i)), &ranks[i], incoming)
        })
        .collect()
}

/// `Tor_i(M, N)` for `0 ≤ i ≤ length` from `F ⊗ N`.
pub fn oracle_tor<K: Field>(m: &FiniteModule<K>, n: &FiniteModule<K>, length: usize) -> Vec<GradedDims> {
    let res = oracle_minimal_resolution(m, length + 1);
    let f = &n.algebra.field;
    let table = n.monomial_table();
    let dn = n.dim();
    let coords = |i: usize| -> Vec<i64> {
        res.degrees[i]
            .iter()
            .flat_map(|g| n.degrees.iter().map(move |t| t + g))
            .collect()
    };
    // ∂_i: F_i ⊗ N -> F_{i-1} ⊗ N
    let boundary = |i: usize| -> GradedMap<K> {
        let source = coords(i);
        let target = coords(i - 1);
        let mut images = Vec::with_capacity(source.len());
        for j in 0..res.ranks[i] {
            for t in 0..dn {
                let mut v = vec![f.zero(); target.len()];
                for l in 0..res.ranks[i - 1] {
                    act(f, res.entry(i, l, j), &table, t, &mut v, l * dn);
                }
                images.push(sparsify(f, &v));
            }
        }
        GradedMap { source, target, images }
    };
    let ranks: Vec<BTreeMap<i64, u64>> = (1..=length + 1).map(|i| boundary(i).ranks(f)).collect();
    (0..=length)
        .map(|i| {
            let none = BTreeMap::new();
            let outgoing = if i == 0 { &none } else { &ranks[i - 1] };
            GradedDims::homology(count_degrees(&coords(i)), outgoing, &ranks[i])
        })
        .collect()
}

/// Betti and Bass numbers of M and Ext/Tor against N, indices `0..=length`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleInvariants {
    pub betti: Vec<u64>,
    pub bass: Vec<u64>,
    pub ext: Vec<GradedDims>,
    pub tor: Vec<GradedDims>,
}

pub fn oracle_invariants<K: Field>(m: &FiniteModule<K>, n: &FiniteModule<K>, length: usize) -> OracleInvariants {
    let res = oracle_minimal_resolution(m, length + 1);
    let k = FiniteModule::residue_field(&m.algebra);
    let bass = oracle_ext(&k, m, length).iter().map(GradedDims::total).collect();
    OracleInvariants {
        betti: res.ranks[..=length].iter().map(|&r| r as u64).collect(),
        bass,
        ext: oracle_ext_from(&res, n, length),
        tor: oracle_tor(m, n, length),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Fp;
    use crate::groebner::QuotientRing;

    fn alg(vars: &[&str], rels: &[&str]) -> Arc<FiniteAlgebra<Fp>> {
        let w = vec![1; vars.len()];
        realize(&QuotientRing::parse(Fp::default(), vars, &w, rels).unwrap()).unwrap()
    }

    #[test]
    fn dual_numbers_basis() {
        let a = alg(&["x"], &["x^2"]);
        assert_eq!(a.dim(), 2);
        assert!(a.table[1][1].is_empty());
        assert!(a.is_consistent());
    }

    #[test]
    fn ranks_of_k() {
        let a = alg(&["x", "y"], &["x^2", "x*y", "y^2"]);
        assert_eq!(a.dim(), 3);
        let k = FiniteModule::residue_field(&a);
        assert_eq!(oracle_minimal_resolution(&k, 4).ranks, vec![1, 2, 4, 8, 16]);
        let r = FiniteModule::regular(&a);
        assert_eq!(oracle_minimal_resolution(&r, 3).ranks, vec![1, 0, 0, 0]);
    }

    #[test]
    fn not_artinian() {
        let r = QuotientRing::parse(Fp::default(), &["x", "y"], &[1, 1], &["x*y"]).unwrap();
        assert_eq!(realize(&r).unwrap_err(), Error::NotArtinian);
    }
}
