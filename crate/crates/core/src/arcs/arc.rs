use std::fmt::Write as _;
use std::sync::Arc as Shared;

use num_traits::Zero;

use super::series::{TruncatedSeries, Valuation};
use crate::algebra::{parse_polynomial_at, same_ring, MonomialOrder, Polynomial, Position, Rational, RationalFunction, Ring};
use crate::error::{Error, Result};
use crate::geometry::AffineChart;
use crate::nash::FractionalIdeal;
use crate::text::{parse_error, statements};

/// Default number of modeled coefficients.
pub const DEFAULT_TRUNCATION: usize = 64;

/// A formal arc `t ↦ (x_1(t), …, x_N(t))` on a chart, modeled modulo `t^T`.
#[derive(Clone, Debug)]
pub struct Arc {
    chart: Shared<AffineChart>,
    components: Vec<TruncatedSeries>,
    truncation: usize,
}

/// Ring of the arc parameter, for parsing component series.
pub fn parameter_ring() -> Shared<Ring> {
    Ring::new(&["t"], MonomialOrder::GrevLex)
}

/// Coefficients of a polynomial in `t`, lowest degree first.
pub fn univariate_coefficients(p: &Polynomial) -> Result<Vec<Rational>> {
    if p.ring().nvars() != 1 {
        return Err(Error::Context("arc components are polynomials in t".into()));
    }
    let deg = p.total_degree().unwrap_or(0) as usize;
    let mut c = vec![Rational::zero(); deg + 1];
    for (m, v) in p.terms() {
        c[m.exponent(0) as usize] = v.clone();
    }
    Ok(c)
}

impl Arc {
    /// Checks the component count and that every chart equation vanishes
    /// along the arc below `min(T, known precision)`.
    pub fn new(chart: &Shared<AffineChart>, components: Vec<TruncatedSeries>, truncation: usize) -> Result<Arc> {
        if components.len() != chart.nvars() {
            return Err(Error::Size(format!(
                "{} arc components for {} chart variables",
                components.len(),
                chart.nvars()
            )));
        }
        if truncation == 0 {
            return Err(Error::Argument("arc truncation must be positive".into()));
        }
        let arc = Arc {
            chart: chart.clone(),
            components,
            truncation,
        };
        if let Some(i) = arc.violated_equation()? {
            return Err(Error::Argument(format!(
                "the arc does not lie on the chart: equation {} does not vanish to order {truncation}",
                arc.chart.generators()[i]
            )));
        }
        Ok(arc)
    }

    /// Components known modulo `t^T`.
    pub fn truncated(chart: &Shared<AffineChart>, components: &[Polynomial], truncation: usize) -> Result<Arc> {
        let series = components
            .iter()
            .map(|p| Ok(TruncatedSeries::new(univariate_coefficients(p)?, truncation)))
            .collect::<Result<Vec<_>>>()?;
        Arc::new(chart, series, truncation)
    }

    /// A polynomial curve: components are exact, `T` only bounds divisions
    /// that do not terminate.
    pub fn polynomial(chart: &Shared<AffineChart>, components: &[Polynomial], truncation: usize) -> Result<Arc> {
        let series = components
            .iter()
            .map(|p| Ok(TruncatedSeries::exact(univariate_coefficients(p)?)))
            .collect::<Result<Vec<_>>>()?;
        Arc::new(chart, series, truncation)
    }

    /// Parses `trunc N;` and one `name = series;` per chart variable.
    /// Statements may be given in any order; `trunc` defaults to 64.
    pub fn parse(chart: &Shared<AffineChart>, text: &str) -> Result<Arc> {
        let mut trunc = None;
        let mut assignments = Vec::new();
        for st in statements(text)? {
            let (kw, rest, at) = st.keyword();
            if kw == "trunc" {
                trunc = Some(parse_truncation(&rest, at)?);
            } else {
                assignments.push((st.text.clone(), st.start));
            }
        }
        let comps = parse_assignments(chart, &assignments)?;
        Arc::truncated(chart, &comps, trunc.unwrap_or(DEFAULT_TRUNCATION))
    }

    pub fn chart(&self) -> &Shared<AffineChart> {
        &self.chart
    }

    pub fn components(&self) -> &[TruncatedSeries] {
        &self.components
    }

    pub fn truncation(&self) -> usize {
        self.truncation
    }

    /// All components are exact polynomials.
    pub fn is_polynomial(&self) -> bool {
        self.components.iter().all(|c| c.is_exact())
    }

    /// The point `γ(0)`.
    pub fn center_point(&self) -> Vec<Rational> {
        self.components
            .iter()
            .map(|c| c.coefficient(0).unwrap_or_else(Rational::zero))
            .collect()
    }

    /// Same components on another chart with the same coordinates (used by
    /// lifting, which builds the arc before the chart check is meaningful).
    pub(crate) fn unchecked(chart: &Shared<AffineChart>, components: Vec<TruncatedSeries>, truncation: usize) -> Arc {
        Arc {
            chart: chart.clone(),
            components,
            truncation,
        }
    }

    /// Index of a chart equation that fails to vanish, if any.
    pub fn violated_equation(&self) -> Result<Option<usize>> {
        for (i, g) in self.chart.generators().iter().enumerate() {
            let s = self.evaluate(g)?;
            if let Valuation::Finite(v) = s.valuation() {
                if (v as usize) < self.truncation {
                    return Ok(Some(i));
                }
            }
        }
        Ok(None)
    }

    /// Substitutes the component series into `f`.
    pub fn evaluate(&self, f: &Polynomial) -> Result<TruncatedSeries> {
        if !same_ring(f.ring(), self.chart.ring()) {
            return Err(Error::Context(format!(
                "polynomial over [{}] evaluated on an arc over [{}]",
                f.ring().names().join(","),
                self.chart.ring().names().join(",")
            )));
        }
        Ok(evaluate_with(f, &self.components))
    }

    /// Pulls back `num/den`; the denominator must have finite valuation.
    pub fn evaluate_rational(&self, f: &RationalFunction) -> Result<TruncatedSeries> {
        let num = self.evaluate(f.numerator())?;
        let den = self.evaluate(f.denominator())?;
        match den.valuation() {
            Valuation::Finite(_) => num.div_or(&den, self.truncation),
            _ => Err(Error::IndeterminatePullback(format!(
                "denominator {} vanishes along the arc to order {}",
                f.denominator(),
                self.truncation
            ))),
        }
    }

    /// Order of vanishing of `f` along the arc; zero to order `T` counts as infinite.
    pub fn valuation(&self, f: &Polynomial) -> Result<Valuation> {
        Ok(self.classify(&self.evaluate(f)?))
    }

    fn classify(&self, s: &TruncatedSeries) -> Valuation {
        match s.valuation() {
            Valuation::AtLeast(p) if p as usize >= self.truncation => Valuation::Infinite,
            v => v,
        }
    }

    /// Minimum over the generators of a fractional ideal, denominators
    /// subtracted. A generator counts as infinite when the quotient is known
    /// to vanish to order `T`.
    pub fn ideal_valuation(&self, ideal: &FractionalIdeal) -> Result<Valuation> {
        let mut den = 0i64;
        for (f, e) in ideal.denominator_factors() {
            match self.valuation(f)? {
                Valuation::Finite(v) => den += v * *e as i64,
                _ => {
                    return Err(Error::IndeterminatePullback(format!(
                        "denominator factor {f} vanishes along the arc"
                    )))
                }
            }
        }
        let mut finite: Option<i64> = None;
        let mut unresolved: Option<i64> = None;
        let t = self.truncation as i64;
        for g in ideal.numerators() {
            match self.evaluate(g)?.valuation() {
                Valuation::Finite(v) => finite = Some(finite.map_or(v, |m| m.min(v))),
                Valuation::AtLeast(p) if p - den < t => unresolved = Some(unresolved.map_or(p, |m| m.min(p))),
                Valuation::AtLeast(_) | Valuation::Infinite => {}
            }
        }
        Ok(match (finite, unresolved) {
            (Some(v), Some(p)) if p <= v => Valuation::AtLeast(p - den),
            (Some(v), _) => Valuation::Finite(v - den),
            (None, Some(p)) => Valuation::AtLeast(p - den),
            (None, None) => Valuation::Infinite,
        })
    }

    /// `trunc T;` followed by one assignment per variable (known coefficients only).
    pub fn to_text(&self) -> String {
        let mut out = format!("trunc {};\n", self.truncation);
        for (name, c) in self.chart.ring().names().iter().zip(&self.components) {
            let p = series_polynomial(c);
            let _ = writeln!(out, "{name} = {p};");
        }
        out
    }
}

fn parse_truncation(body: &str, at: Position) -> Result<usize> {
    body.trim()
        .parse::<usize>()
        .ok()
        .filter(|&t| t > 0)
        .ok_or_else(|| parse_error(at, format!("expected a positive truncation, found '{}'", body.trim())))
}

/// Parses `name = series` statements (text, position) against the chart variables.
pub fn parse_assignments(chart: &AffineChart, assignments: &[(String, Position)]) -> Result<Vec<Polynomial>> {
    let tring = parameter_ring();
    let names = chart.ring().names();
    let mut comps: Vec<Option<Polynomial>> = vec![None; names.len()];
    for (text, at) in assignments {
        let Some(eq) = text.find('=') else {
            return Err(parse_error(*at, format!("expected 'variable = series', found '{}'", text.trim())));
        };
        let name = text[..eq].trim();
        let Some(idx) = chart.ring().index_of(name) else {
            return Err(parse_error(*at, format!("'{name}' is not a chart variable")));
        };
        if comps[idx].is_some() {
            return Err(parse_error(*at, format!("variable '{name}' assigned twice")));
        }
        let rhs_at = crate::text::advance(*at, &text[..eq + 1]);
        comps[idx] = Some(parse_polynomial_at(&text[eq + 1..], &tring, rhs_at)?);
    }
    comps
        .into_iter()
        .zip(names)
        .map(|(c, n)| c.ok_or_else(|| parse_error(Position::start(), format!("no series given for variable '{n}'"))))
        .collect()
}

fn series_polynomial(s: &TruncatedSeries) -> Polynomial {
    let tring = parameter_ring();
    let terms = s.coefficients().iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| {
        (crate::algebra::Monomial::from_exponents(&[i as u32]), c.clone())
    });
    Polynomial::from_terms(&tring, terms)
}

/// Substitution with per-variable power caches.
pub(crate) fn evaluate_with(f: &Polynomial, components: &[TruncatedSeries]) -> TruncatedSeries {
    let n = components.len();
    let mut max_exp = vec![0u32; n];
    for (m, _) in f.terms() {
        for (v, e) in m.exponents().iter().enumerate() {
            max_exp[v] = max_exp[v].max(*e);
        }
    }
    let powers: Vec<Vec<TruncatedSeries>> = (0..n)
        .map(|v| {
            let mut p = vec![TruncatedSeries::one()];
            for k in 1..=max_exp[v] as usize {
                let next = p[k - 1].mul(&components[v]);
                p.push(next);
            }
            p
        })
        .collect();
    let mut acc = TruncatedSeries::zero();
    for (m, c) in f.terms() {
        let mut term = TruncatedSeries::constant(c.clone());
        for (v, e) in m.exponents().iter().enumerate() {
            if *e > 0 {
                term = term.mul(&powers[v][*e as usize]);
            }
        }
        acc = acc.add(&term);
    }
    acc
}
