//! Ideals with cached Gröbner bases: normal forms, membership, elimination,
//! saturation, products and Krull dimension.

mod buchberger;

use std::sync::{Arc, Mutex};

use num_traits::One;

use crate::algebra::{MonomialOrder, Polynomial, Rational, Ring};
use crate::error::{Error, Result};
use buchberger::{Engine, IntPoly};

/// A reduced Gröbner basis under the order of `ring`.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    elements: Vec<Polynomial>,
    internal: Vec<IntPoly>,
}

impl GroebnerBasis {
    fn from_internal(ring: &Arc<Ring>, internal: Vec<IntPoly>) -> Self {
        let elements = internal
            .iter()
            .map(|p| p.to_polynomial(ring, &Rational::one()).monic())
            .collect();
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            internal,
        }
    }

    /// Runs Buchberger on `generators` (which must live in `ring`).
    pub fn compute(ring: &Arc<Ring>, generators: &[Polynomial]) -> Self {
        let ord = ring.order();
        let mut inputs: Vec<IntPoly> = generators
            .iter()
            .filter(|g| !g.is_zero())
            .map(|g| IntPoly::from_polynomial(g, ord).1)
            .collect();
        // sparse, low-degree inputs first keeps intermediate swell down
        inputs.sort_by(|a, b| {
            a.lm().degree()
                .cmp(&b.lm().degree())
                .then_with(|| ord.cmp(a.lm(), b.lm()))
        });
        let mut engine = Engine::new(ord);
        for p in inputs {
            engine.add(p);
            engine.run();
        }
        Self::from_internal(ring, engine.reduced_basis())
    }

    /// Gröbner basis of `self + (extra)`, reusing the existing basis.
    pub fn extend(&self, extra: &[Polynomial]) -> Self {
        let ord = self.ring.order();
        let mut engine = Engine::with_basis(ord, &self.internal);
        for p in extra {
            if p.is_zero() {
                continue;
            }
            engine.add(IntPoly::from_polynomial(&p.reorder(&self.ring), ord).1);
            engine.run();
        }
        Self::from_internal(&self.ring, engine.reduced_basis())
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_constant()
    }

    /// Full remainder of `f` (any order on the same variables) modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        let f = if Arc::ptr_eq(f.ring(), &self.ring) || **f.ring() == *self.ring {
            f.clone()
        } else {
            f.reorder(&self.ring)
        };
        if self.internal.is_empty() {
            return f;
        }
        let ord = self.ring.order();
        let (scalar, ip) = IntPoly::from_polynomial(&f, ord);
        let refs: Vec<&IntPoly> = self.internal.iter().collect();
        let (r, mult) = buchberger::reduce(ip, &refs, ord, true);
        if r.is_zero() {
            return Polynomial::zero(&self.ring);
        }
        r.to_polynomial(&self.ring, &(scalar / mult))
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Buchberger's criterion on the stored basis.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let ord = self.ring.order();
        let refs: Vec<&IntPoly> = self.internal.iter().collect();
        for i in 0..refs.len() {
            for j in i + 1..refs.len() {
                if !buchberger::s_polynomial_reduces_to_zero(refs[i], refs[j], &refs, ord) {
                    return false;
                }
            }
        }
        true
    }

    /// True if no element's leading term divides a term of another element.
    pub fn is_reduced(&self) -> bool {
        let lms: Vec<_> = self.internal.iter().map(|p| p.lm().clone()).collect();
        self.elements.iter().enumerate().all(|(i, p)| {
            p.leading_coefficient().map_or(true, |c| c.is_one())
                && p.terms().iter().all(|(m, _)| {
                    lms.iter()
                        .enumerate()
                        .all(|(j, lm)| j == i || !lm.divides(m))
                })
        })
    }
}

type BasisCache = Arc<Mutex<Vec<(MonomialOrder, Arc<GroebnerBasis>)>>>;

/// An ideal given by generators, with Gröbner bases cached per monomial order.
/// The cache is write-once per order; racing first computations produce equal
/// bases and the first insertion wins.
#[derive(Clone)]
pub struct Ideal {
    ring: Arc<Ring>,
    generators: Vec<Polynomial>,
    cache: BasisCache,
}

impl std::fmt::Debug for Ideal {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let gens: Vec<String> = self.generators.iter().map(|g| g.to_string()).collect();
        write!(f, "Ideal({})", gens.join(", "))
    }
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, generators: Vec<Polynomial>) -> Result<Self> {
        for g in &generators {
            if !crate::algebra::same_ring(g.ring(), ring) {
                return Err(Error::Context(format!(
                    "generator {g} is not in the ring [{}]",
                    ring.names().join(",")
                )));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            cache: Arc::new(Mutex::new(Vec::new())),
        })
    }

    pub fn zero(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, Vec::new()).expect("empty generator list")
    }

    pub fn unit(ring: &Arc<Ring>) -> Self {
        Ideal::new(ring, vec![Polynomial::one(ring)]).expect("same ring")
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Gröbner basis under the ring's own order.
    pub fn groebner_basis(&self) -> Arc<GroebnerBasis> {
        self.groebner_basis_in(self.ring.order())
    }

    pub fn groebner_basis_in(&self, order: MonomialOrder) -> Arc<GroebnerBasis> {
        if let Some((_, gb)) = self.cache.lock().unwrap().iter().find(|(o, _)| *o == order) {
            return gb.clone();
        }
        let ring = if order == self.ring.order() {
            self.ring.clone()
        } else {
            self.ring.with_order(order)
        };
        let gens: Vec<Polynomial> = self.generators.iter().map(|g| g.reorder(&ring)).collect();
        let gb = Arc::new(GroebnerBasis::compute(&ring, &gens));
        let mut cache = self.cache.lock().unwrap();
        if let Some((_, existing)) = cache.iter().find(|(o, _)| *o == order) {
            return existing.clone();
        }
        cache.push((order, gb.clone()));
        gb
    }

    /// Normal form under the ring's order.
    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        self.groebner_basis().normal_form(f)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_unit(&self) -> bool {
        self.groebner_basis().is_unit()
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn with_generators(&self, extra: &[Polynomial]) -> Ideal {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// Product ideal generated by pairwise products of generators.
    pub fn product(&self, other: &Ideal) -> Result<Ideal> {
        if !crate::algebra::same_ring(&self.ring, &other.ring) {
            return Err(Error::Context("ideal product across rings".into()));
        }
        let mut gens = Vec::with_capacity(self.generators.len() * other.generators.len());
        for a in &self.generators {
            for b in &other.generators {
                let p = a * b;
                if !gens.iter().any(|q: &Polynomial| q.is_scalar_multiple_of(&p)) {
                    gens.push(p);
                }
            }
        }
        Ideal::new(&self.ring, gens)
    }

    pub fn power(&self, e: u32) -> Ideal {
        let mut acc = Ideal::unit(&self.ring);
        for _ in 0..e {
            acc = acc.product(self).expect("same ring");
        }
        acc
    }

    /// `I ∩ k[keep]`, computed with a block order that eliminates the other
    /// variables. The result lives in the same ring.
    pub fn eliminate(&self, keep: &[usize]) -> Ideal {
        let n = self.ring.nvars();
        let elim: Vec<usize> = (0..n).filter(|v| !keep.contains(v)).collect();
        if elim.is_empty() {
            let gb = self.groebner_basis();
            return Ideal::new(&self.ring, gb.elements().to_vec()).expect("same ring");
        }
        let kept: Vec<usize> = (0..n).filter(|v| keep.contains(v)).collect();
        let order: Vec<usize> = elim.iter().chain(kept.iter()).copied().collect();
        let mut map = vec![0; n];
        for (pos, &v) in order.iter().enumerate() {
            map[v] = pos;
        }
        let names: Vec<&str> = order.iter().map(|&v| self.ring.names()[v].as_str()).collect();
        let block = Ring::new(&names, MonomialOrder::Block { split: elim.len() });
        let gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(&block, &map)).collect();
        let gb = GroebnerBasis::compute(&block, &gens);
        let back: Vec<usize> = order.clone();
        let out: Vec<Polynomial> = gb
            .elements()
            .iter()
            .filter(|p| p.support().iter().all(|&v| v >= elim.len()))
            .map(|p| p.remap(&self.ring, &back))
            .collect();
        Ideal::new(&self.ring, out).expect("same ring")
    }

    /// `I : f^∞` via an auxiliary inverse variable that is then eliminated.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Argument("saturation by the zero polynomial".into()));
        }
        let n = self.ring.nvars();
        let mut names: Vec<&str> = vec!["_sat"];
        names.extend(self.ring.names().iter().map(|s| s.as_str()));
        let ext = Ring::new(&names, MonomialOrder::Block { split: 1 });
        let map: Vec<usize> = (1..=n).collect();
        let mut gens: Vec<Polynomial> = self.generators.iter().map(|g| g.remap(&ext, &map)).collect();
        let w = Polynomial::var(&ext, 0);
        gens.push(&(&w * &f.remap(&ext, &map)) - &Polynomial::one(&ext));
        let gb = GroebnerBasis::compute(&ext, &gens);
        let out = drop_first_variable(gb.elements(), &self.ring);
        Ideal::new(&self.ring, out)
    }

    /// `I ∩ J` via `t·I + (1 − t)·J` with `t` eliminated.
    pub fn intersect(&self, other: &Ideal) -> Ideal {
        let n = self.ring.nvars();
        let mut names: Vec<&str> = vec!["_int"];
        names.extend(self.ring.names().iter().map(|s| s.as_str()));
        let ext = Ring::new(&names, MonomialOrder::Block { split: 1 });
        let map: Vec<usize> = (1..=n).collect();
        let t = Polynomial::var(&ext, 0);
        let one_minus_t = &Polynomial::one(&ext) - &t;
        let mut gens: Vec<Polynomial> = self
            .generators
            .iter()
            .map(|g| &t * &g.remap(&ext, &map))
            .collect();
        gens.extend(other.generators.iter().map(|g| &one_minus_t * &g.remap(&ext, &map)));
        let gb = GroebnerBasis::compute(&ext, &gens);
        Ideal::new(&self.ring, drop_first_variable(gb.elements(), &self.ring)).expect("same ring")
    }

    /// The colon ideal `I : f`.
    pub fn quotient(&self, f: &Polynomial) -> Result<Ideal> {
        if f.is_zero() {
            return Err(Error::Argument("colon by the zero polynomial".into()));
        }
        let principal = Ideal::new(&self.ring, vec![f.clone()])?;
        let gens = self
            .intersect(&principal)
            .generators
            .iter()
            .map(|g| g.div_exact(f).expect("element of (f)"))
            .collect();
        Ideal::new(&self.ring, gens)
    }

    /// Krull dimension of the quotient ring from the leading-term ideal
    /// (largest set of independent variables); −1 for the unit ideal.
    pub fn dimension(&self) -> i64 {
        self.dimension_in(MonomialOrder::GrevLex)
    }

    pub fn dimension_in(&self, order: MonomialOrder) -> i64 {
        let gb = self.groebner_basis_in(order);
        if gb.is_unit() {
            return -1;
        }
        let n = self.ring.nvars();
        let lead_supports: Vec<u64> = gb
            .elements()
            .iter()
            .map(|p| {
                p.leading_term()
                    .expect("nonzero")
                    .0
                    .support()
                    .fold(0u64, |acc, v| acc | (1 << v))
            })
            .collect();
        assert!(n < 64, "dimension supports fewer than 64 variables");
        let mut best = 0;
        for mask in 0u64..(1u64 << n) {
            let size = mask.count_ones() as i64;
            if size <= best {
                continue;
            }
            if lead_supports.iter().all(|s| s & !mask != 0) {
                best = size;
            }
        }
        best
    }
}

/// Keeps the elements free of the first variable and moves them to `ring`,
/// whose variables are the remaining ones.
fn drop_first_variable(elements: &[Polynomial], ring: &Arc<Ring>) -> Vec<Polynomial> {
    elements
        .iter()
        .filter(|p| p.terms().iter().all(|(m, _)| m.exponent(0) == 0))
        .map(|p| {
            let terms = p.terms().iter().map(|(m, c)| {
                (crate::algebra::Monomial::from_exponents(&m.exponents()[1..]), c.clone())
            });
            Polynomial::from_terms(ring, terms)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, parse_polynomial, rat};

    fn ring(vars: &[&str], ord: MonomialOrder) -> Arc<Ring> {
        Ring::new(vars, ord)
    }

    fn ideal(r: &Arc<Ring>, gens: &[&str]) -> Ideal {
        Ideal::new(r, gens.iter().map(|g| parse_polynomial(g, r).unwrap()).collect()).unwrap()
    }

    fn basis_strings(gb: &GroebnerBasis) -> Vec<String> {
        gb.elements().iter().map(|p| p.to_string()).collect()
    }

    #[test]
    fn groebner_examples() {
        let r1 = ring(&["x"], MonomialOrder::Lex);
        assert_eq!(basis_strings(&ideal(&r1, &["x"]).groebner_basis()), vec!["x"]);

        // S(x^2+y^2-1, x-y) by hand: x^2+y^2-1 - x(x-y) = xy + y^2 - 1 -> 2y^2 - 1
        let r = ring(&["x", "y"], MonomialOrder::Lex);
        let gb = ideal(&r, &["x^2 + y^2 - 1", "x - y"]).groebner_basis();
        assert_eq!(basis_strings(&gb), vec!["y^2 - 1/2", "x - y"]);
        assert!(gb.satisfies_buchberger_criterion());

        let gb = ideal(&r, &["1", "x"]).groebner_basis();
        assert!(gb.is_unit());
        assert_eq!(basis_strings(&gb), vec!["1"]);

        let gb = Ideal::zero(&r).groebner_basis();
        assert!(gb.elements().is_empty());
    }

    #[test]
    fn groebner_is_idempotent_and_reduced() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        let i = ideal(&r, &["x*y - z^2", "x^2 - y", "y*z - x"]);
        let gb = i.groebner_basis();
        assert!(gb.is_reduced());
        assert!(gb.satisfies_buchberger_criterion());
        let again = Ideal::new(&r, gb.elements().to_vec()).unwrap().groebner_basis();
        assert_eq!(gb.elements(), again.elements());
    }

    #[test]
    fn normal_form_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let cusp = ideal(&r, &["y^2 - x^3"]);
        assert!(cusp.normal_form(&parse_polynomial("y^2 - x^3", &r).unwrap()).is_zero());
        let i = ideal(&r, &["y"]);
        assert_eq!(i.normal_form(&parse_polynomial("x", &r).unwrap()).to_string(), "x");
        // x^2 y reduced by x^2 - y (lex x > y, leading term x^2): x^2 y -> y*y
        let rl = ring(&["x", "y"], MonomialOrder::Lex);
        let i = ideal(&rl, &["x^2 - y"]);
        assert_eq!(i.normal_form(&parse_polynomial("x^2*y", &rl).unwrap()).to_string(), "y^2");
        // exact coefficients survive the integer reduction path
        let i = ideal(&rl, &["2x - 3"]);
        let nf = i.normal_form(&parse_polynomial("x^2", &rl).unwrap());
        assert_eq!(nf.constant_value(), Some(rat(9, 4)));
    }

    #[test]
    fn eliminate_examples() {
        let r = ring(&["t", "x", "y"], MonomialOrder::GrevLex);
        let e = ideal(&r, &["y - x^2", "x - t"]).eliminate(&[1, 2]);
        assert_eq!(e.generators().len(), 1);
        assert!(e.generators()[0].is_scalar_multiple_of(&parse_polynomial("y - x^2", &r).unwrap()));

        let r1 = ring(&["x"], MonomialOrder::GrevLex);
        let e = ideal(&r1, &["x"]).eliminate(&[0]);
        assert_eq!(e.generators()[0].to_string(), "x");

        let r2 = ring(&["t", "x"], MonomialOrder::GrevLex);
        assert!(ideal(&r2, &["t*x - 1"]).eliminate(&[1]).is_zero_ideal());
    }

    #[test]
    fn saturate_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let y = parse_polynomial("y", &r).unwrap();
        let x = parse_polynomial("x", &r).unwrap();
        let s = ideal(&r, &["x*y"]).saturate(&y).unwrap();
        assert_eq!(basis_strings(&s.groebner_basis()), vec!["x"]);
        let s = ideal(&r, &["x"]).saturate(&y).unwrap();
        assert_eq!(basis_strings(&s.groebner_basis()), vec!["x"]);
        // inverting x makes x^2 a unit
        let s = ideal(&r, &["x^2", "x*y"]).saturate(&x).unwrap();
        assert!(s.is_unit());
        assert!(matches!(ideal(&r, &["x"]).saturate(&Polynomial::zero(&r)), Err(Error::Argument(_))));
        // a single colon step stops at (x, y)
        let q = ideal(&r, &["x^2", "x*y"]).quotient(&x).unwrap();
        assert_eq!(basis_strings(&q.groebner_basis()), vec!["y", "x"]);
        let meet = ideal(&r, &["x"]).intersect(&ideal(&r, &["y"]));
        assert_eq!(basis_strings(&meet.groebner_basis()), vec!["x*y"]);
    }

    #[test]
    fn product_examples() {
        let r = ring(&["x", "y"], MonomialOrder::GrevLex);
        let p = ideal(&r, &["x"]).product(&ideal(&r, &["y"])).unwrap();
        assert_eq!(p.generators()[0].to_string(), "x*y");
        let p = ideal(&r, &["x", "y"]).product(&ideal(&r, &["1"])).unwrap();
        assert_eq!(p.generators().len(), 2);
        let sq = ideal(&r, &["x", "y"]).power(2);
        let strs: Vec<String> = sq.generators().iter().map(|g| g.to_string()).collect();
        assert_eq!(strs, vec!["x^2", "x*y", "y^2"]);
    }

    #[test]
    fn dimension_examples() {
        let r = ring(&["x", "y", "z"], MonomialOrder::GrevLex);
        assert_eq!(ideal(&r, &["x*y - z^2"]).dimension(), 2);
        let r2 = ring(&["x", "y"], MonomialOrder::GrevLex);
        assert_eq!(Ideal::zero(&r2).dimension(), 2);
        assert_eq!(ideal(&r2, &["1"]).dimension(), -1);
        let i = ideal(&r, &["x*y - z^2", "x - y^2"]);
        assert_eq!(i.dimension_in(MonomialOrder::Lex), i.dimension_in(MonomialOrder::GrevLex));
        assert_eq!(i.dimension(), 1);
        let _ = int(0);
    }
}
