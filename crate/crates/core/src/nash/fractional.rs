use std::collections::HashMap;
use std::fmt;

use num_traits::Zero;

use crate::algebra::{Monomial, Polynomial, Rational, RationalFunction};
use crate::geometry::AffineChart;

/// A finitely generated fractional ideal on a chart: generators
/// `numerators[i] / denominator`, with the denominator kept as a product of
/// powers so that valuations along arcs stay additive.
#[derive(Clone)]
pub struct FractionalIdeal {
    chart: AffineChart,
    numerators: Vec<Polynomial>,
    denominator: Vec<(Polynomial, u32)>,
}

impl fmt::Debug for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for FractionalIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let nums: Vec<String> = self.numerators.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", nums.join(", "))?;
        if !self.denominator.is_empty() {
            write!(f, " / {}", self.denominator_text())?;
        }
        Ok(())
    }
}

impl FractionalIdeal {
    /// Numerators are reduced on the chart; zeros and scalar duplicates are dropped.
    pub fn new(chart: &AffineChart, numerators: Vec<Polynomial>, denominator: Vec<(Polynomial, u32)>) -> Self {
        let mut nums: Vec<Polynomial> = Vec::with_capacity(numerators.len());
        for p in numerators {
            let r = chart.normal_form(&p);
            if !r.is_zero() && !nums.iter().any(|q| q.is_scalar_multiple_of(&r)) {
                nums.push(r);
            }
        }
        FractionalIdeal {
            chart: chart.clone(),
            numerators: nums,
            denominator: merge_factors(denominator),
        }
    }

    pub fn unit(chart: &AffineChart) -> Self {
        FractionalIdeal {
            chart: chart.clone(),
            numerators: vec![Polynomial::one(chart.ring())],
            denominator: Vec::new(),
        }
    }

    pub fn chart(&self) -> &AffineChart {
        &self.chart
    }

    pub fn numerators(&self) -> &[Polynomial] {
        &self.numerators
    }

    pub fn denominator_factors(&self) -> &[(Polynomial, u32)] {
        &self.denominator
    }

    pub fn denominator(&self) -> Polynomial {
        let mut d = Polynomial::one(self.chart.ring());
        for (f, e) in &self.denominator {
            d = &d * &f.pow(*e);
        }
        d
    }

    pub fn denominator_text(&self) -> String {
        if self.denominator.is_empty() {
            return "1".into();
        }
        let parts: Vec<String> = self
            .denominator
            .iter()
            .map(|(f, e)| if *e == 1 { format!("({f})") } else { format!("({f})^{e}") })
            .collect();
        parts.join("*")
    }

    pub fn generators(&self) -> Vec<RationalFunction> {
        let d = self.denominator();
        self.numerators
            .iter()
            .map(|p| RationalFunction::new(p.clone(), d.clone()).expect("nonzero denominator"))
            .collect()
    }

    pub fn len(&self) -> usize {
        self.numerators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.numerators.is_empty()
    }

    /// Generated by a single nonzero element.
    pub fn is_principal(&self) -> bool {
        self.numerators.len() == 1
    }

    /// Pairwise products with redundant generators pruned.
    pub fn product(&self, other: &FractionalIdeal) -> FractionalIdeal {
        let mut nums = Vec::with_capacity(self.numerators.len() * other.numerators.len());
        for a in &self.numerators {
            for b in &other.numerators {
                nums.push(a * b);
            }
        }
        let mut den = self.denominator.clone();
        den.extend(other.denominator.iter().cloned());
        let nums = prune_generators(&self.chart, nums);
        FractionalIdeal {
            chart: self.chart.clone(),
            numerators: nums,
            denominator: merge_factors(den),
        }
    }

    pub fn power(&self, e: u32) -> FractionalIdeal {
        let mut acc = FractionalIdeal::unit(&self.chart);
        for _ in 0..e {
            acc = acc.product(self);
        }
        acc
    }

    /// Same ideal with a minimal-ish generator list (see `prune_generators`).
    pub fn pruned(&self) -> FractionalIdeal {
        FractionalIdeal {
            chart: self.chart.clone(),
            numerators: prune_generators(&self.chart, self.numerators.clone()),
            denominator: self.denominator.clone(),
        }
    }
}

fn merge_factors(factors: Vec<(Polynomial, u32)>) -> Vec<(Polynomial, u32)> {
    let mut out: Vec<(Polynomial, u32)> = Vec::new();
    for (f, e) in factors {
        if e == 0 || f.is_constant() {
            continue;
        }
        let f = f.monic();
        match out.iter_mut().find(|(g, _)| *g == f) {
            Some(slot) => slot.1 += e,
            None => out.push((f, e)),
        }
    }
    out
}

/// Keeps the polynomials that are linearly independent over the rationals
/// from the ones before them, in input order.
pub fn rational_basis(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    // echelon rows keyed by pivot monomial; each row is a sparse map
    let mut pivots: Vec<(Monomial, HashMap<Monomial, Rational>)> = Vec::new();
    let mut out = Vec::new();
    for p in polys {
        if p.is_zero() {
            continue;
        }
        let mut row: HashMap<Monomial, Rational> = p.terms().iter().cloned().collect();
        for (pm, prow) in &pivots {
            if let Some(c) = row.get(pm).cloned() {
                for (m, v) in prow {
                    let e = row.entry(m.clone()).or_insert_with(Rational::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        row.remove(m);
                    }
                }
            }
        }
        if row.is_empty() {
            continue;
        }
        let pivot = row.keys().max_by(|a, b| a.exponents().cmp(b.exponents())).unwrap().clone();
        let inv = row[&pivot].recip();
        for v in row.values_mut() {
            *v *= &inv;
        }
        // keep existing rows reduced with respect to the new pivot
        for (_, prow) in pivots.iter_mut() {
            if let Some(c) = prow.get(&pivot).cloned() {
                for (m, v) in &row {
                    let e = prow.entry(m.clone()).or_insert_with(Rational::zero);
                    *e -= &c * v;
                    if e.is_zero() {
                        prow.remove(m);
                    }
                }
            }
        }
        pivots.push((pivot, row));
        out.push(p);
    }
    out
}

/// Drops generators that lie in the ideal generated by the chart equations
/// and the other generators. Candidates are scanned by increasing degree;
/// a final reverse pass removes generators made redundant by later ones.
pub fn prune_generators(chart: &AffineChart, polys: Vec<Polynomial>) -> Vec<Polynomial> {
    let mut cands: Vec<Polynomial> = Vec::new();
    for p in polys {
        let r = chart.normal_form(&p);
        if r.is_zero() {
            continue;
        }
        let r = r.monic();
        if !cands.contains(&r) {
            cands.push(r);
        }
    }
    let ord = chart.ring().order();
    cands.sort_by(|a, b| {
        let (la, lb) = (&a.leading_term().unwrap().0, &b.leading_term().unwrap().0);
        la.degree()
            .cmp(&lb.degree())
            .then_with(|| ord.cmp(la, lb))
            .then_with(|| a.nterms().cmp(&b.nterms()))
            .then_with(|| a.to_string().cmp(&b.to_string()))
    });
    let cands = rational_basis(cands);
    if cands.len() <= 1 {
        return cands;
    }
    let base = chart.ideal().groebner_basis();
    let mut kept: Vec<Polynomial> = Vec::new();
    let mut gb = (*base).clone();
    for p in cands {
        if gb.contains(&p) {
            continue;
        }
        gb = gb.extend(std::slice::from_ref(&p));
        if gb.is_unit() {
            return vec![Polynomial::one(chart.ring())];
        }
        kept.push(p);
    }
    let mut i = kept.len();
    while i > 0 && kept.len() > 1 {
        i -= 1;
        let others: Vec<Polynomial> = kept
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != i)
            .map(|(_, q)| q.clone())
            .collect();
        let gb = base.extend(&others);
        if gb.contains(&kept[i]) {
            kept.remove(i);
        }
    }
    kept
}
