//! Buchberger's algorithm over content-free integer polynomials.
//!
//! Pairs are selected by the normal strategy (smallest lcm degree, ties by the
//! monomial order) and filtered with the Gebauer–Möller installation of the
//! coprime and chain criteria.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::{Monomial, MonomialOrder, Polynomial, Rational, Ring};

#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct IntPoly {
    pub(crate) terms: Vec<(Monomial, BigInt)>,
}

impl IntPoly {
    pub(crate) fn from_polynomial(p: &Polynomial, ord: MonomialOrder) -> (Rational, IntPoly) {
        let (scalar, mut terms) = p.primitive_part();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        (scalar, IntPoly { terms })
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub(crate) fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &BigInt {
        &self.terms[0].1
    }

    /// Divides out the content and makes the leading coefficient positive.
    /// Returns the factor divided out (signed).
    fn make_primitive(&mut self) -> BigInt {
        if self.terms.is_empty() {
            return BigInt::one();
        }
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        if self.terms[0].1.is_negative() {
            g = -g;
        }
        if !g.is_one() {
            for (_, c) in self.terms.iter_mut() {
                *c = &*c / &g;
            }
        }
        g
    }

    pub(crate) fn to_polynomial(&self, ring: &Arc<Ring>, scale: &Rational) -> Polynomial {
        let ord = ring.order();
        let mut terms: Vec<(Monomial, Rational)> = self
            .terms
            .iter()
            .map(|(m, c)| (m.clone(), scale * Rational::from_integer(c.clone())))
            .collect();
        terms.sort_by(|a, b| ord.cmp(&b.0, &a.0));
        Polynomial::from_terms(ring, terms)
    }
}

/// `a*f[start..] - b*m*g`, with `f[..start]` scaled by `a` and kept in front.
fn combine(
    f: &IntPoly,
    start: usize,
    a: &BigInt,
    b: &BigInt,
    m: &Monomial,
    g: &IntPoly,
    ord: MonomialOrder,
) -> IntPoly {
    let mut out = Vec::with_capacity(f.terms.len() + g.terms.len());
    let scale_a = !a.is_one();
    for (mm, c) in &f.terms[..start] {
        out.push((mm.clone(), if scale_a { c * a } else { c.clone() }));
    }
    let mut i = start;
    let mut j = 0;
    let gt = &g.terms;
    let mut gm: Option<Monomial> = gt.first().map(|t| t.0.mul(m));
    while i < f.terms.len() || j < gt.len() {
        let ord_ij = match (i < f.terms.len(), &gm) {
            (true, Some(gmj)) => ord.cmp(&f.terms[i].0, gmj),
            (true, None) => Ordering::Greater,
            (false, _) => Ordering::Less,
        };
        match ord_ij {
            Ordering::Greater => {
                let (mm, c) = &f.terms[i];
                out.push((mm.clone(), if scale_a { c * a } else { c.clone() }));
                i += 1;
            }
            Ordering::Less => {
                out.push((gm.take().unwrap(), -(b * &gt[j].1)));
                j += 1;
                gm = gt.get(j).map(|t| t.0.mul(m));
            }
            Ordering::Equal => {
                let c = if scale_a { &f.terms[i].1 * a } else { f.terms[i].1.clone() } - b * &gt[j].1;
                let mono = gm.take().unwrap();
                if !c.is_zero() {
                    out.push((mono, c));
                }
                i += 1;
                j += 1;
                gm = gt.get(j).map(|t| t.0.mul(m));
            }
        }
    }
    IntPoly { terms: out }
}

/// Reduces `f` by `basis`. With `full` every term is reduced, otherwise only
/// the leading term. Returns the remainder `r` and a rational `mult` with
/// `r ≡ mult * f` modulo the ideal.
pub(crate) fn reduce(
    mut f: IntPoly,
    basis: &[&IntPoly],
    ord: MonomialOrder,
    full: bool,
) -> (IntPoly, Rational) {
    let mut mult = Rational::one();
    let mut i = 0;
    while i < f.terms.len() {
        let divisor = {
            let m = &f.terms[i].0;
            basis.iter().find(|g| g.lm().divides(m))
        };
        match divisor {
            Some(g) => {
                let (m, c) = f.terms[i].clone();
                let q = g.lm().quotient_of(&m);
                let lcg = g.lc();
                let gcd = c.gcd(lcg);
                let a = lcg / &gcd;
                let b = &c / &gcd;
                f = combine(&f, i, &a, &b, &q, g, ord);
                mult *= Rational::from_integer(a);
                let content = f.make_primitive();
                if !content.is_one() {
                    mult /= Rational::from_integer(content);
                }
            }
            None => {
                if !full {
                    break;
                }
                i += 1;
            }
        }
    }
    (f, mult)
}

fn s_polynomial(f: &IntPoly, g: &IntPoly, ord: MonomialOrder) -> IntPoly {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&lcm);
    let mg = g.lm().quotient_of(&lcm);
    let gcd = f.lc().gcd(g.lc());
    let a = g.lc() / &gcd;
    let b = f.lc() / &gcd;
    let fm = IntPoly {
        terms: f.terms.iter().map(|(m, c)| (m.mul(&mf), c.clone())).collect(),
    };
    combine(&fm, 0, &a, &b, &mg, g, ord)
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

pub(crate) struct Engine {
    ord: MonomialOrder,
    polys: Vec<IntPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    pub(crate) fn new(ord: MonomialOrder) -> Self {
        Engine {
            ord,
            polys: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        }
    }

    /// Seeds the engine with a reduced Gröbner basis: no pairs are created among them.
    pub(crate) fn with_basis(ord: MonomialOrder, basis: &[IntPoly]) -> Self {
        let mut e = Engine::new(ord);
        for p in basis {
            e.polys.push(p.clone());
            e.active.push(true);
        }
        e
    }

    fn active_refs(&self) -> Vec<&IntPoly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p)
            .collect()
    }

    /// Reduces `f` against the current basis and installs it if nonzero.
    pub(crate) fn add(&mut self, f: IntPoly) {
        let (mut r, _) = reduce(f, &self.active_refs(), self.ord, true);
        if r.is_zero() {
            return;
        }
        r.make_primitive();
        self.install(r);
    }

    fn install(&mut self, h: IntPoly) {
        let hlm = h.lm().clone();
        let idx = self.polys.len();
        let cand: Vec<(usize, Monomial)> = (0..self.polys.len())
            .filter(|&g| self.active[g])
            .map(|g| (g, hlm.lcm(self.polys[g].lm())))
            .collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        for (k, (g, l)) in cand.iter().enumerate() {
            let coprime = hlm.is_coprime(self.polys[*g].lm());
            let dominated = cand[k + 1..].iter().any(|(_, l2)| l2.divides(l))
                || kept.iter().any(|(_, l2)| l2.divides(l));
            if coprime || !dominated {
                kept.push((*g, l.clone()));
            }
        }
        let polys = &self.polys;
        self.pairs.retain(|p| {
            !(hlm.divides(&p.lcm)
                && polys[p.i].lm().lcm(&hlm) != p.lcm
                && polys[p.j].lm().lcm(&hlm) != p.lcm)
        });
        for (g, l) in kept {
            if !hlm.is_coprime(self.polys[g].lm()) {
                self.pairs.push(Pair { i: g, j: idx, lcm: l });
            }
        }
        for g in 0..self.polys.len() {
            if self.active[g] && hlm.divides(self.polys[g].lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn select(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let ord = self.ord;
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let c = a
                .lcm
                .degree()
                .cmp(&b.lcm.degree())
                .then_with(|| ord.cmp(&a.lcm, &b.lcm))
                .then_with(|| (a.i, a.j).cmp(&(b.i, b.j)));
            if c == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }

    pub(crate) fn run(&mut self) {
        while let Some(p) = self.select() {
            let s = s_polynomial(&self.polys[p.i], &self.polys[p.j], self.ord);
            if s.is_zero() {
                continue;
            }
            let (mut r, _) = reduce(s, &self.active_refs(), self.ord, true);
            if r.is_zero() {
                continue;
            }
            r.make_primitive();
            if r.lm().is_one() {
                // unit ideal: nothing else matters
                self.polys.push(r);
                let n = self.polys.len();
                self.active = vec![false; n];
                self.active[n - 1] = true;
                self.pairs.clear();
                return;
            }
            self.install(r);
        }
    }

    /// Inter-reduced basis, sorted by increasing leading monomial.
    pub(crate) fn reduced_basis(&self) -> Vec<IntPoly> {
        let act: Vec<&IntPoly> = self.active_refs();
        let mut out: Vec<IntPoly> = Vec::with_capacity(act.len());
        for (k, p) in act.iter().enumerate() {
            let others: Vec<&IntPoly> = act
                .iter()
                .enumerate()
                .filter(|(j, _)| *j != k)
                .map(|(_, q)| *q)
                .collect();
            // leading term is irreducible; reduce the tail
            let head = IntPoly {
                terms: vec![p.terms[0].clone()],
            };
            let tail = IntPoly {
                terms: p.terms[1..].to_vec(),
            };
            let (rt, mult) = reduce(tail, &others, self.ord, true);
            // p ≡ head + tail, and rt ≡ mult*tail; combine as mult*head + rt
            let mut terms: Vec<(Monomial, BigInt)> = Vec::with_capacity(rt.terms.len() + 1);
            let (mn, md) = (mult.numer().clone(), mult.denom().clone());
            terms.push((head.terms[0].0.clone(), &head.terms[0].1 * &mn));
            for (m, c) in rt.terms {
                terms.push((m, c * &md));
            }
            let mut q = IntPoly { terms };
            q.make_primitive();
            out.push(q);
        }
        let ord = self.ord;
        out.sort_by(|a, b| ord.cmp(a.lm(), b.lm()));
        out
    }
}

pub(crate) fn s_polynomial_reduces_to_zero(f: &IntPoly, g: &IntPoly, basis: &[&IntPoly], ord: MonomialOrder) -> bool {
    let s = s_polynomial(f, g, ord);
    reduce(s, basis, ord, true).0.is_zero()
}
