//! Homogeneous Buchberger algorithm for submodules of S^r modulo I·S^r.
//!
//! Elements are processed degree by degree. Within one degree the S-pairs
//! are reduced first, then the obligatory inputs, then the candidate inputs;
//! a candidate is kept exactly when it is not in the span of everything seen
//! so far, which yields minimal generators modulo the obligatory part.
//! Inputs marked for tracking carry their representation, and every
//! reduction to zero records a syzygy in tracked coordinates.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::{Field, Monomial, PolyRing, Vector};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Role {
    /// Always part of the submodule.
    Must,
    /// Kept only if not already generated.
    Candidate,
}

#[derive(Clone, Debug)]
pub struct Input<K: Field> {
    pub vec: Vector<K>,
    pub degree: i64,
    pub role: Role,
    pub track: bool,
}

impl<K: Field> Input<K> {
    pub fn must(vec: Vector<K>, degree: i64) -> Self {
        Input {
            vec,
            degree,
            role: Role::Must,
            track: false,
        }
    }

    pub fn tracked(vec: Vector<K>, degree: i64) -> Self {
        Input {
            vec,
            degree,
            role: Role::Must,
            track: true,
        }
    }

    pub fn candidate(vec: Vector<K>, degree: i64) -> Self {
        Input {
            vec,
            degree,
            role: Role::Candidate,
            track: false,
        }
    }
}

#[derive(Clone, Debug)]
struct Elem<K: Field> {
    v: Vector<K>,
    rep: Vector<K>,
    comp: u32,
    lead: Monomial,
    deg: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Partner {
    Mod(usize),
    Ring(usize),
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: Partner,
    lcm: Monomial,
    alive: bool,
}

/// A Gröbner basis under construction or completed.
#[derive(Clone, Debug)]
pub struct Gb<K: Field> {
    ring: Arc<PolyRing<K>>,
    ideal: Arc<Vec<Vector<K>>>,
    twists: Vec<i64>,
    elems: Vec<Elem<K>>,
    by_comp: Vec<Vec<usize>>,
    pairs: Vec<Pair>,
    comp_pairs: Vec<Vec<usize>>,
    queue: BTreeMap<i64, Vec<usize>>,
    tracking: bool,
    ntracked: usize,
    syzygies: Vec<Vector<K>>,
    syzygy_degrees: Vec<i64>,
    tracked_degrees: Vec<i64>,
    kept: Vec<bool>,
    tail_reduce: bool,
}

impl<K: Field> Gb<K> {
    /// `ideal` must be a monic Gröbner basis of I in S (component 0).
    pub fn new(ring: Arc<PolyRing<K>>, ideal: Arc<Vec<Vector<K>>>, twists: Vec<i64>) -> Self {
        let r = twists.len();
        Gb {
            ring,
            ideal,
            twists,
            elems: Vec::new(),
            by_comp: vec![Vec::new(); r],
            pairs: Vec::new(),
            comp_pairs: vec![Vec::new(); r],
            queue: BTreeMap::new(),
            tracking: false,
            ntracked: 0,
            syzygies: Vec::new(),
            syzygy_degrees: Vec::new(),
            tracked_degrees: Vec::new(),
            kept: Vec::new(),
            tail_reduce: true,
        }
    }

    pub fn set_tail_reduce(&mut self, on: bool) {
        self.tail_reduce = on;
    }

    pub fn rank(&self) -> usize {
        self.twists.len()
    }

    pub fn twists(&self) -> &[i64] {
        &self.twists
    }

    /// Runs the algorithm over all inputs to completion.
    pub fn run(&mut self, inputs: Vec<Input<K>>) {
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        order.sort_by_key(|&i| inputs[i].degree);
        self.kept = vec![false; inputs.len()];
        let mut tracked_index = vec![usize::MAX; inputs.len()];
        for (i, inp) in inputs.iter().enumerate() {
            if inp.track {
                tracked_index[i] = self.ntracked;
                self.ntracked += 1;
                self.tracked_degrees.push(inp.degree);
                self.tracking = true;
            }
        }
        let mut next = 0;
        loop {
            let pd = self.queue.keys().next().copied();
            let id = order.get(next).map(|&i| inputs[i].degree);
            let d = match (pd, id) {
                (None, None) => break,
                (Some(a), None) => a,
                (None, Some(b)) => b,
                (Some(a), Some(b)) => a.min(b),
            };
            if let Some(batch) = self.queue.remove(&d) {
                for p in batch {
                    if !self.pairs[p].alive {
                        continue;
                    }
                    self.pairs[p].alive = false;
                    let (s, rep) = self.spair(p);
                    let (nf, rep) = self.reduce(s, rep, false);
                    if nf.is_zero() {
                        self.push_syzygy(rep, d);
                    } else {
                        self.insert(nf, rep, d);
                    }
                }
            }
            let start = next;
            while next < order.len() && inputs[order[next]].degree == d {
                next += 1;
            }
            for pass in [Role::Must, Role::Candidate] {
                for &i in &order[start..next] {
                    let inp = &inputs[i];
                    if inp.role != pass {
                        continue;
                    }
                    let rep = if inp.track {
                        self.ring.basis_vector(tracked_index[i] as u32)
                    } else {
                        Vector::zero()
                    };
                    let (nf, rep) = self.reduce(inp.vec.clone(), rep, false);
                    if nf.is_zero() {
                        if inp.track {
                            self.push_syzygy(rep, d);
                        }
                    } else {
                        if pass == Role::Candidate {
                            self.kept[i] = true;
                        }
                        self.insert(nf, rep, d);
                    }
                }
            }
        }
    }

    fn push_syzygy(&mut self, rep: Vector<K>, d: i64) {
        if self.tracking && !rep.is_zero() {
            self.syzygies.push(rep);
            self.syzygy_degrees.push(d);
        }
    }

    fn spair(&self, p: usize) -> (Vector<K>, Vector<K>) {
        let r = &self.ring;
        let pair = &self.pairs[p];
        let ei = &self.elems[pair.i];
        let qi = ei.lead.quotient_of(&pair.lcm);
        let one = r.field.one();
        let mone = r.field.neg(&one);
        let a = r.scale(&ei.v, &one, &qi);
        match pair.j {
            Partner::Mod(j) => {
                let ej = &self.elems[j];
                let qj = ej.lead.quotient_of(&pair.lcm);
                let s = r.axpy(&a, &mone, &qj, &ej.v);
                let rep = if self.tracking {
                    r.axpy(&r.scale(&ei.rep, &one, &qi), &mone, &qj, &ej.rep)
                } else {
                    Vector::zero()
                };
                (s, rep)
            }
            Partner::Ring(g) => {
                let gv = r.embed(&self.ideal[g], ei.comp);
                let qj = gv.terms[0].mono.quotient_of(&pair.lcm);
                let s = r.axpy(&a, &mone, &qj, &gv);
                let rep = if self.tracking {
                    r.scale(&ei.rep, &one, &qi)
                } else {
                    Vector::zero()
                };
                (s, rep)
            }
        }
    }

    fn find_divisor(&self, comp: u32, m: &Monomial, skip: usize) -> Option<Partner> {
        for (gi, g) in self.ideal.iter().enumerate() {
            if g.terms[0].mono.divides(m) {
                return Some(Partner::Ring(gi));
            }
        }
        for &e in &self.by_comp[comp as usize] {
            if e != skip && self.elems[e].lead.divides(m) {
                return Some(Partner::Mod(e));
            }
        }
        None
    }

    /// Reduces `v`; with `full` the tail is reduced as well. The
    /// representation `rep` is updated alongside when tracking.
    pub fn reduce(&self, v: Vector<K>, rep: Vector<K>, full: bool) -> (Vector<K>, Vector<K>) {
        self.reduce_skipping(v, rep, full, usize::MAX)
    }

    fn reduce_skipping(
        &self,
        v: Vector<K>,
        rep: Vector<K>,
        full: bool,
        skip: usize,
    ) -> (Vector<K>, Vector<K>) {
        let r = &self.ring;
        let k = &r.field;
        let mut v = v;
        let mut rep = rep;
        let mut done: Vec<crate::algebra::Term<K::Elem>> = Vec::new();
        while let Some(t) = v.terms.first() {
            match self.find_divisor(t.comp, &t.mono, skip) {
                Some(Partner::Ring(g)) => {
                    let gv = &self.ideal[g];
                    let q = gv.terms[0].mono.quotient_of(&t.mono);
                    let c = k.neg(&t.coeff);
                    let emb = r.embed(gv, t.comp);
                    v = r.axpy(&v, &c, &q, &emb);
                }
                Some(Partner::Mod(e)) => {
                    let el = &self.elems[e];
                    let q = el.lead.quotient_of(&t.mono);
                    let c = k.neg(&t.coeff);
                    v = r.axpy(&v, &c, &q, &el.v);
                    if self.tracking {
                        rep = r.axpy(&rep, &c, &q, &el.rep);
                    }
                }
                None => {
                    if !full {
                        break;
                    }
                    done.push(v.terms.remove(0));
                }
            }
        }
        if full {
            done.extend(v.terms);
            v = Vector { terms: done };
        }
        (v, rep)
    }

    fn insert(&mut self, v: Vector<K>, rep: Vector<K>, deg: i64) {
        let r = self.ring.clone();
        let (v, rep) = if self.tail_reduce {
            self.reduce(v, rep, true)
        } else {
            (v, rep)
        };
        let lc = v.terms[0].coeff.clone();
        let inv = r.field.inv(&lc).expect("nonzero lead");
        let v = r.scale(&v, &inv, &Monomial::ONE);
        let rep = if self.tracking {
            r.scale(&rep, &inv, &Monomial::ONE)
        } else {
            rep
        };
        let comp = v.terms[0].comp;
        let lead = v.terms[0].mono;
        let h = self.elems.len();
        let weights = r.weights.clone();

        // chain criterion on existing pairs of this component
        for &p in &self.comp_pairs[comp as usize] {
            let pair = &self.pairs[p];
            if !pair.alive || !lead.divides(&pair.lcm) {
                continue;
            }
            let li = self.elems[pair.i].lead;
            let lj = match pair.j {
                Partner::Mod(j) => self.elems[j].lead,
                Partner::Ring(g) => self.ideal[g].terms[0].mono,
            };
            if lead.lcm(&li, &weights) != pair.lcm && lead.lcm(&lj, &weights) != pair.lcm {
                self.pairs[p].alive = false;
            }
        }

        // candidate pairs with the new element
        let rank_one = self.rank() == 1;
        let mut cands: Vec<(Partner, Monomial, bool)> = Vec::new();
        for &e in &self.by_comp[comp as usize] {
            let l = self.elems[e].lead;
            let coprime = rank_one && lead.coprime(&l);
            cands.push((Partner::Mod(e), lead.lcm(&l, &weights), coprime));
        }
        for (g, gv) in self.ideal.iter().enumerate() {
            let l = gv.terms[0].mono;
            cands.push((Partner::Ring(g), lead.lcm(&l, &weights), lead.coprime(&l)));
        }
        // drop pairs whose lcm is a proper multiple of another lcm
        let mut keep = vec![true; cands.len()];
        for a in 0..cands.len() {
            for b in 0..cands.len() {
                if a != b && cands[b].1 != cands[a].1 && cands[b].1.divides(&cands[a].1) {
                    keep[a] = false;
                    break;
                }
            }
        }
        // one pair per lcm class; classes containing a coprime pair vanish
        let mut koszul: Vec<usize> = Vec::new();
        let mut chosen: Vec<(Partner, Monomial)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for a in 0..cands.len() {
            if !keep[a] || seen.contains(&cands[a].1) {
                continue;
            }
            let lcm = cands[a].1;
            seen.push(lcm);
            let class: Vec<usize> = (0..cands.len())
                .filter(|&b| keep[b] && cands[b].1 == lcm)
                .collect();
            if let Some(&c) = class.iter().find(|&&b| cands[b].2) {
                if let Partner::Mod(e) = cands[c].0 {
                    koszul.push(e);
                }
            } else {
                chosen.push((cands[a].0, lcm));
            }
        }

        self.elems.push(Elem {
            v,
            rep,
            comp,
            lead,
            deg,
        });
        self.by_comp[comp as usize].push(h);

        if self.tracking {
            for e in koszul {
                // coprime leads in rank one: f*rep(g) - g*rep(f) is a syzygy
                let f = &self.elems[h];
                let g = &self.elems[e];
                let s = r.sub(&r.mul_poly(&g.v, &f.rep), &r.mul_poly(&f.v, &g.rep));
                let d = f.deg + g.deg - self.twists[0];
                self.push_syzygy(s, d);
            }
        }

        for (partner, lcm) in chosen {
            let idx = self.pairs.len();
            self.pairs.push(Pair {
                i: h,
                j: partner,
                lcm,
                alive: true,
            });
            self.comp_pairs[comp as usize].push(idx);
            let d = lcm.deg() as i64 + self.twists[comp as usize];
            self.queue.entry(d).or_default().push(idx);
        }
    }

    /// Normal form with respect to the completed basis.
    pub fn normal_form(&self, v: &Vector<K>) -> Vector<K> {
        self.reduce(v.clone(), Vector::zero(), true).0
    }

    /// Normal form and the representation in tracked coordinates of the
    /// subtracted part, i.e. `v = nf + Σ rep_i g_i` modulo I.
    pub fn normal_form_tracked(&self, v: &Vector<K>) -> (Vector<K>, Vector<K>) {
        let (nf, rep) = self.reduce(v.clone(), Vector::zero(), true);
        (nf, self.ring.neg(&rep))
    }

    pub fn contains(&self, v: &Vector<K>) -> bool {
        self.reduce(v.clone(), Vector::zero(), false).0.is_zero()
    }

    pub fn basis(&self) -> Vec<Vector<K>> {
        self.elems.iter().map(|e| e.v.clone()).collect()
    }

    pub fn basis_degrees(&self) -> Vec<i64> {
        self.elems.iter().map(|e| e.deg).collect()
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Leading monomials of the module elements in component `c`.
    pub fn leads_in(&self, c: usize) -> Vec<Monomial> {
        self.by_comp[c].iter().map(|&e| self.elems[e].lead).collect()
    }

    pub fn ideal_leads(&self) -> Vec<Monomial> {
        self.ideal.iter().map(|g| g.terms[0].mono).collect()
    }

    pub fn kept(&self) -> &[bool] {
        &self.kept
    }

    pub fn syzygies(&self) -> &[Vector<K>] {
        &self.syzygies
    }

    pub fn syzygy_degrees(&self) -> &[i64] {
        &self.syzygy_degrees
    }

    pub fn tracked_degrees(&self) -> &[i64] {
        &self.tracked_degrees
    }

    /// Fully interreduced basis (each element reduced by the others).
    pub fn reduced_basis(&self) -> Vec<Vector<K>> {
        let mut out = Vec::with_capacity(self.elems.len());
        for (idx, e) in self.elems.iter().enumerate() {
            let head = Vector {
                terms: vec![e.v.terms[0].clone()],
            };
            let tail = Vector {
                terms: e.v.terms[1..].to_vec(),
            };
            let nf = self.reduce_skipping(tail, Vector::zero(), true, idx).0;
            out.push(self.ring.add(&head, &nf));
        }
        out
    }
}
