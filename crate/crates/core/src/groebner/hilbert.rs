//! Hilbert series as exact rational functions N(t) / ∏(1 - t^{w_i}).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::Monomial;

/// Laurent polynomial with integer coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Laurent {
    /// exponent -> nonzero coefficient
    pub terms: BTreeMap<i64, i64>,
}

impl Laurent {
    pub fn zero() -> Self {
        Laurent::default()
    }

    pub fn one() -> Self {
        Laurent::monomial(0, 1)
    }

    pub fn monomial(e: i64, c: i64) -> Self {
        let mut terms = BTreeMap::new();
        if c != 0 {
            terms.insert(e, c);
        }
        Laurent { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, e: i64, c: i64) {
        if c == 0 {
            return;
        }
        let v = self.terms.entry(e).or_insert(0);
        *v += c;
        if *v == 0 {
            self.terms.remove(&e);
        }
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(e, c);
        }
        r
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        let mut r = self.clone();
        for (&e, &c) in &o.terms {
            r.add_term(e, -c);
        }
        r
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        let mut r = Laurent::zero();
        for (&a, &x) in &self.terms {
            for (&b, &y) in &o.terms {
                r.add_term(a + b, x * y);
            }
        }
        r
    }

    pub fn shift(&self, d: i64) -> Laurent {
        Laurent {
            terms: self.terms.iter().map(|(&e, &c)| (e + d, c)).collect(),
        }
    }

    pub fn eval_one(&self) -> i64 {
        self.terms.values().sum()
    }

    /// Exact division by `1 - t^w`, if it divides.
    pub fn div_one_minus(&self, w: u32) -> Option<Laurent> {
        if self.is_zero() {
            return Some(Laurent::zero());
        }
        let w = w as i64;
        let mut rem = self.clone();
        let mut q = Laurent::zero();
        // divide from the lowest exponent upwards: rem = q(1 - t^w)
        while let Some((&e, &c)) = rem.terms.iter().next() {
            let hi = *self.terms.keys().next_back().unwrap();
            if e > hi - w {
                return None;
            }
            q.add_term(e, c);
            rem.add_term(e, -c);
            rem.add_term(e + w, c);
        }
        Some(q)
    }

    pub fn low(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn high(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

/// Hilbert series `numerator / ∏(1 - t^{w_i})`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertSeries {
    pub numerator: Laurent,
    pub weights: Vec<u32>,
}

impl HilbertSeries {
    pub fn zero(weights: &[u32]) -> Self {
        HilbertSeries {
            numerator: Laurent::zero(),
            weights: weights.to_vec(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    pub fn add(&self, o: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.weights, o.weights);
        HilbertSeries {
            numerator: self.numerator.add(&o.numerator),
            weights: self.weights.clone(),
        }
    }

    pub fn sub(&self, o: &HilbertSeries) -> HilbertSeries {
        assert_eq!(self.weights, o.weights);
        HilbertSeries {
            numerator: self.numerator.sub(&o.numerator),
            weights: self.weights.clone(),
        }
    }

    /// Multiplication by t^d (a degree twist).
    pub fn shift(&self, d: i64) -> HilbertSeries {
        HilbertSeries {
            numerator: self.numerator.shift(d),
            weights: self.weights.clone(),
        }
    }

    /// Order of the pole at t = 1, i.e. the Krull dimension; `None` for the
    /// zero series.
    pub fn pole_order(&self) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut n = self.numerator.clone();
        let mut mult = 0usize;
        while let Some(q) = n.div_one_minus(1) {
            n = q;
            mult += 1;
        }
        Some(self.weights.len().saturating_sub(mult))
    }

    /// The series as a Laurent polynomial, when the module has finite length.
    pub fn polynomial(&self) -> Option<Laurent> {
        let mut n = self.numerator.clone();
        for &w in &self.weights {
            n = n.div_one_minus(w)?;
        }
        Some(n)
    }

    /// k-dimension of a finite length module.
    pub fn length(&self) -> Option<u64> {
        self.polynomial().map(|p| p.eval_one() as u64)
    }

    /// Coefficients of t^lo ..= t^hi of the power series expansion.
    pub fn coefficients(&self, lo: i64, hi: i64) -> Vec<i64> {
        let mut series: BTreeMap<i64, i64> = self.numerator.terms.clone();
        for &w in &self.weights {
            // multiply by 1/(1 - t^w) truncated at hi
            let mut next = BTreeMap::new();
            let keys: Vec<i64> = series.keys().copied().collect();
            let start = match keys.first() {
                Some(&s) => s,
                None => break,
            };
            for e in start..=hi {
                let mut c = series.get(&e).copied().unwrap_or(0);
                if e - w as i64 >= start {
                    c += next.get(&(e - w as i64)).copied().unwrap_or(0);
                }
                if c != 0 {
                    next.insert(e, c);
                }
            }
            series = next;
        }
        (lo..=hi).map(|e| series.get(&e).copied().unwrap_or(0)).collect()
    }
}

/// Numerator of the Hilbert series of S / J for a monomial ideal J,
/// by pivoting: N(J) = N(J + (p)) + t^{deg p} N(J : p).
pub fn monomial_numerator(gens: &[Monomial], weights: &[u32]) -> Laurent {
    let gens = minimalize(gens.to_vec());
    numerator_rec(gens, weights)
}

fn minimalize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.deg());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn numerator_rec(gens: Vec<Monomial>, weights: &[u32]) -> Laurent {
    if gens.is_empty() {
        return Laurent::one();
    }
    if gens.iter().any(|g| g.is_one()) {
        return Laurent::zero();
    }
    let n = weights.len();
    // a variable shared by at least two generators
    let mut best: Option<(usize, usize)> = None;
    for i in 0..n {
        let c = gens.iter().filter(|g| g.exp(i) > 0).count();
        if c >= 2 && best.map(|(_, bc)| c > bc).unwrap_or(true) {
            best = Some((i, c));
        }
    }
    let Some((var, _)) = best else {
        // pairwise coprime
        let mut acc = Laurent::one();
        for g in &gens {
            acc = acc.mul(&Laurent::one().sub(&Laurent::monomial(g.deg() as i64, 1)));
        }
        return acc;
    };
    let is_pure = |g: &Monomial| (0..n).all(|j| j == var || g.exp(j) == 0);
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.exp(var) > 0 && !is_pure(g))
        .map(|g| g.exp(var))
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pe = vec![0u16; n];
    pe[var] = e;
    let p = Monomial::new(&pe, weights);

    let mut with_p = gens.clone();
    with_p.push(p);
    let a = numerator_rec(minimalize(with_p), weights);
    let colon: Vec<Monomial> = gens.iter().map(|g| g.colon(&p, weights)).collect();
    let b = numerator_rec(minimalize(colon), weights);
    a.add(&b.shift(p.deg() as i64))
}
