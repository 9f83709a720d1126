//! Polynomial rings, sparse module elements and polynomials.

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use super::field::Field;
use super::monomial::{Monomial, TermOrder, MAX_VARS};
use crate::error::{Error, Result};

/// k[x_1..x_n] with positive weights and a term order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyRing<K: Field> {
    pub field: K,
    pub names: Vec<String>,
    pub weights: Vec<u32>,
    pub order: TermOrder,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term<E> {
    pub comp: u32,
    pub mono: Monomial,
    pub coeff: E,
}

/// Element of a free module S^r, terms sorted decreasingly. A polynomial is
/// a vector supported on component 0.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Vector<K: Field> {
    pub terms: Vec<Term<K::Elem>>,
}

impl<K: Field> Default for Vector<K> {
    fn default() -> Self {
        Vector { terms: Vec::new() }
    }
}

impl<K: Field> Vector<K> {
    pub fn zero() -> Self {
        Vector { terms: Vec::new() }
    }

    #[inline]
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    #[inline]
    pub fn lead(&self) -> Option<&Term<K::Elem>> {
        self.terms.first()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Degree of the leading term given the ambient twists.
    pub fn degree(&self, twists: &[i64]) -> Option<i64> {
        self.lead()
            .map(|t| t.mono.deg() as i64 + twists[t.comp as usize])
    }

    pub fn is_homogeneous(&self, twists: &[i64]) -> bool {
        match self.degree(twists) {
            None => true,
            Some(d) => self
                .terms
                .iter()
                .all(|t| t.mono.deg() as i64 + twists[t.comp as usize] == d),
        }
    }

    pub fn max_comp(&self) -> Option<u32> {
        self.terms.iter().map(|t| t.comp).max()
    }
}

impl<K: Field> PolyRing<K> {
    pub fn new(field: K, names: Vec<String>, weights: Vec<u32>, order: TermOrder) -> Result<Self> {
        if names.len() != weights.len() {
            return Err(Error::InvalidRing("names and weights differ in length".into()));
        }
        if names.len() > MAX_VARS {
            return Err(Error::InvalidRing(format!("at most {MAX_VARS} variables")));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::InvalidRing("weights must be positive".into()));
        }
        for (i, n) in names.iter().enumerate() {
            let ok = n
                .chars()
                .next()
                .map(|c| c.is_ascii_alphabetic() || c == '_')
                .unwrap_or(false)
                && n.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok {
                return Err(Error::InvalidRing(format!("bad variable name {n:?}")));
            }
            if names[..i].contains(n) {
                return Err(Error::InvalidRing(format!("duplicate variable {n:?}")));
            }
        }
        Ok(PolyRing {
            field,
            names,
            weights,
            order,
        })
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var(&self, i: usize) -> Monomial {
        Monomial::var(i, &self.weights)
    }

    pub fn monomial(&self, exps: &[u16]) -> Monomial {
        Monomial::new(exps, &self.weights)
    }

    #[inline]
    pub fn cmp_terms(&self, a: &Term<K::Elem>, b: &Term<K::Elem>) -> Ordering {
        self.order.cmp_term(a.comp, &a.mono, b.comp, &b.mono)
    }

    /// Sorts, merges equal terms and drops zero coefficients.
    pub fn normalize(&self, mut terms: Vec<Term<K::Elem>>) -> Vector<K> {
        terms.sort_by(|a, b| self.cmp_terms(b, a));
        let k = &self.field;
        let mut out: Vec<Term<K::Elem>> = Vec::with_capacity(terms.len());
        for t in terms {
            if let Some(last) = out.last_mut() {
                if last.comp == t.comp && last.mono == t.mono {
                    last.coeff = k.add(&last.coeff, &t.coeff);
                    continue;
                }
            }
            out.push(t);
        }
        out.retain(|t| !k.is_zero(&t.coeff));
        Vector { terms: out }
    }

    pub fn constant(&self, c: K::Elem, comp: u32) -> Vector<K> {
        if self.field.is_zero(&c) {
            return Vector::zero();
        }
        Vector {
            terms: vec![Term {
                comp,
                mono: Monomial::ONE,
                coeff: c,
            }],
        }
    }

    pub fn basis_vector(&self, comp: u32) -> Vector<K> {
        self.constant(self.field.one(), comp)
    }

    pub fn monomial_vector(&self, mono: Monomial, comp: u32) -> Vector<K> {
        Vector {
            terms: vec![Term {
                comp,
                mono,
                coeff: self.field.one(),
            }],
        }
    }

    /// `a + c * m * b`.
    pub fn axpy(&self, a: &Vector<K>, c: &K::Elem, m: &Monomial, b: &Vector<K>) -> Vector<K> {
        let k = &self.field;
        if k.is_zero(c) || b.is_zero() {
            return a.clone();
        }
        let mut out = Vec::with_capacity(a.len() + b.len());
        let mut i = 0;
        let mut j = 0;
        let at = &a.terms;
        let bt = &b.terms;
        while i < at.len() && j < bt.len() {
            let bm = m.mul(&bt[j].mono);
            match self
                .order
                .cmp_term(at[i].comp, &at[i].mono, bt[j].comp, &bm)
            {
                Ordering::Greater => {
                    out.push(at[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    out.push(Term {
                        comp: bt[j].comp,
                        mono: bm,
                        coeff: k.mul(c, &bt[j].coeff),
                    });
                    j += 1;
                }
                Ordering::Equal => {
                    let s = k.add(&at[i].coeff, &k.mul(c, &bt[j].coeff));
                    if !k.is_zero(&s) {
                        out.push(Term {
                            comp: at[i].comp,
                            mono: at[i].mono,
                            coeff: s,
                        });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(at[i..].iter().cloned());
        while j < bt.len() {
            out.push(Term {
                comp: bt[j].comp,
                mono: m.mul(&bt[j].mono),
                coeff: k.mul(c, &bt[j].coeff),
            });
            j += 1;
        }
        Vector { terms: out }
    }

    pub fn add(&self, a: &Vector<K>, b: &Vector<K>) -> Vector<K> {
        self.axpy(a, &self.field.one(), &Monomial::ONE, b)
    }

    pub fn sub(&self, a: &Vector<K>, b: &Vector<K>) -> Vector<K> {
        self.axpy(a, &self.field.neg(&self.field.one()), &Monomial::ONE, b)
    }

    pub fn neg(&self, a: &Vector<K>) -> Vector<K> {
        Vector {
            terms: a
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: t.mono,
                    coeff: self.field.neg(&t.coeff),
                })
                .collect(),
        }
    }

    /// `c * m * v`; order is preserved because the order is multiplicative.
    pub fn scale(&self, v: &Vector<K>, c: &K::Elem, m: &Monomial) -> Vector<K> {
        if self.field.is_zero(c) {
            return Vector::zero();
        }
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp,
                    mono: m.mul(&t.mono),
                    coeff: self.field.mul(c, &t.coeff),
                })
                .collect(),
        }
    }

    /// Product of the polynomial `p` (component 0) with the vector `v`.
    pub fn mul_poly(&self, p: &Vector<K>, v: &Vector<K>) -> Vector<K> {
        if p.is_zero() || v.is_zero() {
            return Vector::zero();
        }
        if p.len() == 1 {
            return self.scale(v, &p.terms[0].coeff, &p.terms[0].mono);
        }
        let mut terms = Vec::with_capacity(p.len() * v.len());
        for a in &p.terms {
            for b in &v.terms {
                terms.push(Term {
                    comp: b.comp,
                    mono: a.mono.mul(&b.mono),
                    coeff: self.field.mul(&a.coeff, &b.coeff),
                });
            }
        }
        self.normalize(terms)
    }

    /// Component `i` of `v`, as a polynomial.
    pub fn component(&self, v: &Vector<K>, i: u32) -> Vector<K> {
        let terms: Vec<_> = v
            .terms
            .iter()
            .filter(|t| t.comp == i)
            .map(|t| Term {
                comp: 0,
                mono: t.mono,
                coeff: t.coeff.clone(),
            })
            .collect();
        // filtering keeps the relative order under either module order
        Vector { terms }
    }

    /// Re-indexes components through `f`; the result is re-sorted.
    pub fn map_comps(&self, v: &Vector<K>, f: impl Fn(u32) -> u32) -> Vector<K> {
        let terms = v
            .terms
            .iter()
            .map(|t| Term {
                comp: f(t.comp),
                mono: t.mono,
                coeff: t.coeff.clone(),
            })
            .collect();
        self.normalize(terms)
    }

    /// Places the polynomial `p` into component `comp`.
    pub fn embed(&self, p: &Vector<K>, comp: u32) -> Vector<K> {
        Vector {
            terms: p
                .terms
                .iter()
                .map(|t| Term {
                    comp,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Keeps components in `lo..hi` and shifts them down by `lo`.
    pub fn slice(&self, v: &Vector<K>, lo: u32, hi: u32) -> Vector<K> {
        Vector {
            terms: v
                .terms
                .iter()
                .filter(|t| t.comp >= lo && t.comp < hi)
                .map(|t| Term {
                    comp: t.comp - lo,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Shifts all components up by `offset`.
    pub fn offset(&self, v: &Vector<K>, offset: u32) -> Vector<K> {
        Vector {
            terms: v
                .terms
                .iter()
                .map(|t| Term {
                    comp: t.comp + offset,
                    mono: t.mono,
                    coeff: t.coeff.clone(),
                })
                .collect(),
        }
    }

    /// Makes the leading coefficient 1.
    pub fn monic(&self, v: &Vector<K>) -> Vector<K> {
        match v.lead() {
            None => Vector::zero(),
            Some(t) => {
                let inv = self.field.inv(&t.coeff).expect("nonzero lead");
                self.scale(v, &inv, &Monomial::ONE)
            }
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        let mut parts = Vec::new();
        for (i, name) in self.names.iter().enumerate() {
            match m.exp(i) {
                0 => {}
                1 => parts.push(name.clone()),
                e => parts.push(format!("{name}^{e}")),
            }
        }
        parts.join("*")
    }

    pub fn format_poly(&self, p: &Vector<K>) -> String {
        if p.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (idx, t) in p.terms.iter().enumerate() {
            let c = self.field.format(&t.coeff);
            let (neg, mag) = match c.strip_prefix('-') {
                Some(rest) => (true, rest.to_string()),
                None => (false, c),
            };
            if idx == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let m = self.format_monomial(&t.mono);
            if m.is_empty() {
                s.push_str(&mag);
            } else if mag == "1" {
                s.push_str(&m);
            } else {
                s.push_str(&mag);
                s.push('*');
                s.push_str(&m);
            }
        }
        s
    }

    /// Parses a polynomial in the ASCII grammar
    /// `expr := ['+'|'-'] term (('+'|'-') term)*`,
    /// `term := factor (('*'|'/') factor)*`,
    /// `factor := atom ['^' integer]`,
    /// `atom := integer | variable | '(' expr ')'`.
    /// Division is only allowed by nonzero constants.
    pub fn parse(&self, text: &str) -> Result<Vector<K>> {
        let mut p = Parser {
            ring: self,
            src: text.as_bytes(),
            pos: 0,
        };
        let v = p.expr()?;
        p.skip_ws();
        if p.pos < p.src.len() {
            return Err(p.err("unexpected character"));
        }
        Ok(v)
    }
}

struct Parser<'a, K: Field> {
    ring: &'a PolyRing<K>,
    src: &'a [u8],
    pos: usize,
}

impl<K: Field> Parser<'_, K> {
    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn expr(&mut self) -> Result<Vector<K>> {
        let r = self.ring;
        let mut acc = Vector::zero();
        let mut first = true;
        loop {
            let sign = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    1
                }
                Some(b'-') => {
                    self.pos += 1;
                    -1
                }
                _ if first => 1,
                _ => break,
            };
            first = false;
            let t = self.term()?;
            acc = if sign > 0 { r.add(&acc, &t) } else { r.sub(&acc, &t) };
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Vector<K>> {
        let r = self.ring;
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(b'*') => {
                    self.pos += 1;
                    let f = self.factor()?;
                    acc = r.mul_poly(&acc, &f);
                }
                Some(b'/') => {
                    self.pos += 1;
                    let at = self.pos;
                    let f = self.factor()?;
                    let c = match f.terms.as_slice() {
                        [t] if t.mono.is_one() => t.coeff.clone(),
                        _ => {
                            return Err(Error::Parse {
                                pos: at + 1,
                                msg: "division by a nonconstant or zero".into(),
                            })
                        }
                    };
                    let inv = r.field.inv(&c)?;
                    acc = r.scale(&acc, &inv, &Monomial::ONE);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<Vector<K>> {
        let base = self.atom()?;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            self.skip_ws();
            let start = self.pos;
            while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            if start == self.pos {
                return Err(self.err("expected exponent"));
            }
            let e: u32 = std::str::from_utf8(&self.src[start..self.pos])
                .unwrap()
                .parse()
                .map_err(|_| self.err("exponent too large"))?;
            if e > 1000 {
                return Err(self.err("exponent too large"));
            }
            let r = self.ring;
            let mut acc = r.constant(r.field.one(), 0);
            for _ in 0..e {
                acc = r.mul_poly(&acc, &base);
            }
            return Ok(acc);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<Vector<K>> {
        let r = self.ring;
        match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let v = self.expr()?;
                if self.peek() != Some(b')') {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                Ok(v)
            }
            Some(c) if c.is_ascii_digit() => {
                let start = self.pos;
                while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                    self.pos += 1;
                }
                let digits = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                let c = r.field.parse_integer(digits)?;
                Ok(r.constant(c, 0))
            }
            Some(c) if c.is_ascii_alphabetic() || c == b'_' => {
                let start = self.pos;
                while self.pos < self.src.len()
                    && (self.src[self.pos].is_ascii_alphanumeric() || self.src[self.pos] == b'_')
                {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                match r.names.iter().position(|n| n == name) {
                    Some(i) => Ok(r.monomial_vector(r.var(i), 0)),
                    None => Err(Error::Parse {
                        pos: start + 1,
                        msg: format!("unknown variable {name:?}"),
                    }),
                }
            }
            Some(_) => Err(self.err("unexpected character")),
            None => Err(self.err("unexpected end of input")),
        }
    }
}

/// A polynomial bound to its ring; arithmetic rejects mixed-ring operands.
#[derive(Clone, Debug)]
pub struct Poly<K: Field> {
    ring: Arc<PolyRing<K>>,
    body: Vector<K>,
}

impl<K: Field> PartialEq for Poly<K> {
    fn eq(&self, other: &Self) -> bool {
        self.same_ring(other) && self.body == other.body
    }
}

impl<K: Field> Poly<K> {
    pub fn new(ring: Arc<PolyRing<K>>, body: Vector<K>) -> Self {
        debug_assert!(body.terms.iter().all(|t| t.comp == 0));
        Poly { ring, body }
    }

    pub fn parse(ring: &Arc<PolyRing<K>>, text: &str) -> Result<Self> {
        Ok(Poly {
            ring: ring.clone(),
            body: ring.parse(text)?,
        })
    }

    pub fn zero(ring: &Arc<PolyRing<K>>) -> Self {
        Poly {
            ring: ring.clone(),
            body: Vector::zero(),
        }
    }

    pub fn ring(&self) -> &Arc<PolyRing<K>> {
        &self.ring
    }

    pub fn body(&self) -> &Vector<K> {
        &self.body
    }

    pub fn into_body(self) -> Vector<K> {
        self.body
    }

    pub fn is_zero(&self) -> bool {
        self.body.is_zero()
    }

    pub fn degree(&self) -> Option<u32> {
        self.body.lead().map(|t| t.mono.deg())
    }

    pub fn is_homogeneous(&self) -> bool {
        self.body.is_homogeneous(&[0])
    }

    fn same_ring(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.same_ring(other) {
            Ok(())
        } else {
            Err(Error::MixedRings)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Poly::new(self.ring.clone(), self.ring.add(&self.body, &other.body)))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Poly::new(self.ring.clone(), self.ring.sub(&self.body, &other.body)))
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Poly::new(
            self.ring.clone(),
            self.ring.mul_poly(&self.body, &other.body),
        ))
    }
}

impl<K: Field> fmt::Display for Poly<K> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.ring.format_poly(&self.body))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::field::Fp;

    fn ring() -> Arc<PolyRing<Fp>> {
        Arc::new(
            PolyRing::new(
                Fp::default(),
                vec!["x".into(), "y".into()],
                vec![1, 1],
                TermOrder::default(),
            )
            .unwrap(),
        )
    }

    #[test]
    fn difference_of_squares() {
        let r = ring();
        let a = Poly::parse(&r, "x+y").unwrap();
        let b = Poly::parse(&r, "x-y").unwrap();
        assert_eq!(a.mul(&b).unwrap(), Poly::parse(&r, "x^2-y^2").unwrap());
        assert_eq!(a.add(&Poly::zero(&r)).unwrap(), a);
    }

    #[test]
    fn unit_coefficient_mod_three() {
        let r = Arc::new(
            PolyRing::new(Fp::new(3).unwrap(), vec!["x".into()], vec![1], TermOrder::default())
                .unwrap(),
        );
        let x = Poly::parse(&r, "x").unwrap();
        let sq = x.mul(&x).unwrap();
        assert_eq!(sq.body().terms.len(), 1);
        assert_eq!(sq.body().terms[0].coeff, 1);
        assert_eq!(sq.to_string(), "x^2");
    }

    #[test]
    fn mixed_rings_rejected() {
        let r1 = ring();
        let r2 = Arc::new(
            PolyRing::new(Fp::default(), vec!["x".into(), "y".into()], vec![1, 2], TermOrder::default())
                .unwrap(),
        );
        let a = Poly::parse(&r1, "x").unwrap();
        let b = Poly::parse(&r2, "x").unwrap();
        assert_eq!(a.add(&b), Err(Error::MixedRings));
    }

    #[test]
    fn parse_errors_are_located() {
        let r = ring();
        match r.parse("x + z") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(r.parse("x/y").is_err());
        assert!(r.parse("(x+y").is_err());
    }

    #[test]
    fn parse_powers_and_division() {
        let r = ring();
        let a = r.parse("(x+y)^2 - 2*x*y").unwrap();
        assert_eq!(a, r.parse("x^2+y^2").unwrap());
        let half = r.parse("x/2 + x/2").unwrap();
        assert_eq!(half, r.parse("x").unwrap());
        assert_eq!(r.format_poly(&r.parse("3*x*y - y^2").unwrap()), "3*x*y - y^2");
    }
}
