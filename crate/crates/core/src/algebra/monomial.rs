use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use smallvec::SmallVec;

/// Exponent vector of a monomial. The length is fixed by the ring context.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u32; 8]>,
    degree: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: SmallVec::from_elem(0, nvars),
            degree: 0,
        }
    }

    pub fn from_exponents(exps: &[u32]) -> Self {
        Monomial {
            exps: SmallVec::from_slice(exps),
            degree: exps.iter().sum(),
        }
    }

    pub fn variable(nvars: usize, var: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.exps[var] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, var: usize) -> u32 {
        self.exps[var]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            degree: self.degree + other.degree,
        }
    }

    pub fn pow(&self, e: u32) -> Monomial {
        Monomial {
            exps: self.exps.iter().map(|a| a * e).collect(),
            degree: self.degree * e,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            degree: other.degree - self.degree,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let exps: SmallVec<[u32; 8]> = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(a, b)| *a.max(b))
            .collect();
        let degree = exps.iter().sum();
        Monomial { exps, degree }
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Formal derivative with respect to `var`: returns the multiplier and the new monomial.
    pub fn derivative(&self, var: usize) -> Option<(u32, Monomial)> {
        let e = self.exps[var];
        if e == 0 {
            return None;
        }
        let mut m = self.clone();
        m.exps[var] -= 1;
        m.degree -= 1;
        Some((e, m))
    }

    /// Reindexes the exponent vector: variable `i` moves to position `map[i]`.
    pub fn remap(&self, map: &[usize], nvars: usize) -> Monomial {
        let mut exps: SmallVec<[u32; 8]> = SmallVec::from_elem(0, nvars);
        for (i, &e) in self.exps.iter().enumerate() {
            exps[map[i]] += e;
        }
        Monomial {
            exps,
            degree: self.degree,
        }
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, e)| **e > 0)
            .map(|(i, _)| i)
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// A monomial order. `Block { split }` compares the first `split` variables by
/// graded reverse lexicographic order and breaks ties with grevlex on the rest,
/// so it eliminates the first block.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block { split: usize },
}

fn grevlex_range(a: &[u32], b: &[u32]) -> Ordering {
    let da: u32 = a.iter().sum();
    let db: u32 = b.iter().sum();
    match da.cmp(&db) {
        Ordering::Equal => {}
        o => return o,
    }
    for i in (0..a.len()).rev() {
        if a[i] != b[i] {
            // smaller exponent in the last differing variable wins
            return b[i].cmp(&a[i]);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::GrevLex => match a.degree.cmp(&b.degree) {
                Ordering::Equal => {
                    for i in (0..a.exps.len()).rev() {
                        if a.exps[i] != b.exps[i] {
                            return b.exps[i].cmp(&a.exps[i]);
                        }
                    }
                    Ordering::Equal
                }
                o => o,
            },
            MonomialOrder::Block { split } => {
                let split = split.min(a.exps.len());
                match grevlex_range(&a.exps[..split], &b.exps[..split]) {
                    Ordering::Equal => grevlex_range(&a.exps[split..], &b.exps[split..]),
                    o => o,
                }
            }
        }
    }
}
