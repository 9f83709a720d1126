//! Monomials, monomial orders and module orders.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

pub const MAX_VARS: usize = 12;

/// Exponent vector with its cached weighted degree.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    exps: [u16; MAX_VARS],
    deg: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial {
        exps: [0; MAX_VARS],
        deg: 0,
    };

    pub fn new(exps: &[u16], weights: &[u32]) -> Monomial {
        assert!(exps.len() <= MAX_VARS && exps.len() == weights.len());
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0u32;
        for (i, (&a, &w)) in exps.iter().zip(weights).enumerate() {
            e[i] = a;
            deg += a as u32 * w;
        }
        Monomial { exps: e, deg }
    }

    pub fn var(i: usize, weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        e[i] = 1;
        Monomial {
            exps: e,
            deg: weights[i],
        }
    }

    #[inline]
    pub fn deg(&self) -> u32 {
        self.deg
    }

    #[inline]
    pub fn exps(&self) -> &[u16; MAX_VARS] {
        &self.exps
    }

    #[inline]
    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    #[inline]
    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    #[inline]
    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut e = self.exps;
        for (a, b) in e.iter_mut().zip(other.exps.iter()) {
            *a += *b;
        }
        Monomial {
            exps: e,
            deg: self.deg + other.deg,
        }
    }

    #[inline]
    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    #[inline]
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        let mut e = other.exps;
        for (a, b) in e.iter_mut().zip(self.exps.iter()) {
            *a -= *b;
        }
        Monomial {
            exps: e,
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..weights.len() {
            e[i] = self.exps[i].max(other.exps[i]);
            deg += e[i] as u32 * weights[i];
        }
        Monomial { exps: e, deg }
    }

    /// Colon `self : other` in the monoid sense.
    pub fn colon(&self, other: &Monomial, weights: &[u32]) -> Monomial {
        let mut e = [0u16; MAX_VARS];
        let mut deg = 0;
        for i in 0..weights.len() {
            e[i] = self.exps[i].saturating_sub(other.exps[i]);
            deg += e[i] as u32 * weights[i];
        }
        Monomial { exps: e, deg }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(other.exps.iter())
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrderKind {
    /// Weighted degree, ties broken reverse lexicographically.
    #[default]
    Degrevlex,
    /// Weighted degree, ties broken lexicographically.
    Deglex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum ModuleOrderKind {
    /// Compare monomials first, component index second.
    #[default]
    Top,
    /// Compare component index first.
    Pot,
}

/// Monomial order together with the induced order on module terms.
///
/// Smaller component indices are larger. On homogeneous elements the
/// term-over-position order coincides with its twisted variant because
/// every term has the same total degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
pub struct TermOrder {
    pub mono: MonomialOrderKind,
    pub module: ModuleOrderKind,
}

impl TermOrder {
    #[inline]
    pub fn cmp_mono(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match a.deg.cmp(&b.deg) {
            Ordering::Equal => {}
            o => return o,
        }
        match self.mono {
            MonomialOrderKind::Degrevlex => {
                for i in (0..MAX_VARS).rev() {
                    if a.exps[i] != b.exps[i] {
                        return b.exps[i].cmp(&a.exps[i]);
                    }
                }
                Ordering::Equal
            }
            MonomialOrderKind::Deglex => {
                for i in 0..MAX_VARS {
                    if a.exps[i] != b.exps[i] {
                        return a.exps[i].cmp(&b.exps[i]);
                    }
                }
                Ordering::Equal
            }
        }
    }

    #[inline]
    pub fn cmp_term(&self, ca: u32, a: &Monomial, cb: u32, b: &Monomial) -> Ordering {
        match self.module {
            ModuleOrderKind::Top => self.cmp_mono(a, b).then(cb.cmp(&ca)),
            ModuleOrderKind::Pot => cb.cmp(&ca).then_with(|| self.cmp_mono(a, b)),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degrevlex_basics() {
        let w = [1, 1, 1];
        let o = TermOrder::default();
        let x = Monomial::new(&[1, 0, 0], &w);
        let y = Monomial::new(&[0, 1, 0], &w);
        let z = Monomial::new(&[0, 0, 1], &w);
        assert_eq!(o.cmp_mono(&x, &y), Ordering::Greater);
        assert_eq!(o.cmp_mono(&y, &z), Ordering::Greater);
        let xz = x.mul(&z);
        let yy = y.mul(&y);
        // degrevlex: y^2 > xz
        assert_eq!(o.cmp_mono(&yy, &xz), Ordering::Greater);
        let lex = TermOrder {
            mono: MonomialOrderKind::Deglex,
            ..o
        };
        assert_eq!(lex.cmp_mono(&yy, &xz), Ordering::Less);
    }

    #[test]
    fn weighted_degree() {
        let w = [3, 4, 5];
        let m = Monomial::new(&[2, 1, 0], &w);
        assert_eq!(m.deg(), 10);
        let l = m.lcm(&Monomial::new(&[0, 0, 1], &w), &w);
        assert_eq!(l.deg(), 15);
        assert!(m.divides(&l));
        assert_eq!(m.quotient_of(&l), Monomial::new(&[0, 0, 1], &w));
    }
}
