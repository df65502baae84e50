use rayon::prelude::*;
use serde::Serialize;

use super::blowup::{gauss_minor_ideal, GaussMinors};
use super::fractional::{prune_generators, rational_basis, FractionalIdeal};
use super::wedge::wedge_numerator;
use crate::algebra::{subsets, Polynomial};
use crate::error::{Error, Result};
use crate::geometry::{AffineChart, DifferentialFrame};

/// Sizes seen while building one ladder entry.
#[derive(Clone, Debug, Default, Serialize)]
pub struct StepStats {
    /// Products `t_j·x_k` before and after removing rational dependencies.
    pub spanning: usize,
    pub independent: usize,
    /// Nonzero wedges and the generators kept after pruning.
    pub wedges: usize,
    pub generators: usize,
}

/// The entry after `entries` (which hold `F_1, F_{n+2}, …, F_{(n+2)^{i-1}}`).
///
/// With `I` the product of the given entries and `x_k` ranging over 1 and
/// the chart variables, the sections are the products `t_j·x_k` for the
/// generators `t_j` of `I`; the new entry is generated by the wedges of all
/// (n+1)-subsets of a rational basis of their span. Sections sharing the
/// denominator `D` of `I`, each wedge is `W / (D^{n+1}·δ^n)` with `W` the
/// polynomial wedge and `δ` the frame certificate.
///
/// This is a reconstruction of the inductive step from the forms-mod-torsion
/// formula and the connection-free wedge, not a closed form.
pub fn next_f(entries: &[FractionalIdeal], frame: &DifferentialFrame) -> Result<(FractionalIdeal, StepStats)> {
    let chart = frame.chart();
    let n = frame.rank();
    let mut ideal = FractionalIdeal::unit(chart);
    for e in entries {
        ideal = ideal.product(e);
    }
    let ring = chart.ring();
    let mut multipliers = vec![Polynomial::one(ring)];
    multipliers.extend((0..chart.nvars()).map(|v| Polynomial::var(ring, v)));
    let mut spanning = Vec::new();
    for t in ideal.numerators() {
        for x in &multipliers {
            spanning.push(chart.normal_form(&(t * x)));
        }
    }
    let mut stats = StepStats {
        spanning: spanning.len(),
        ..Default::default()
    };
    let basis = rational_basis(spanning);
    stats.independent = basis.len();
    if basis.len() < n + 1 {
        return Err(Error::DegenerateLadder(format!(
            "the sections span only {} dimensions, {} needed",
            basis.len(),
            n + 1
        )));
    }
    let gradients: Vec<Vec<Polynomial>> = basis
        .par_iter()
        .map(|s| frame.scaled_differential(s).iter().map(|g| chart.normal_form(g)).collect())
        .collect();
    let picks = subsets(basis.len(), n + 1);
    let wedges: Vec<Polynomial> = picks
        .par_iter()
        .map(|pick| {
            let secs: Vec<Polynomial> = pick.iter().map(|&i| basis[i].clone()).collect();
            let grads: Vec<Vec<Polynomial>> = pick.iter().map(|&i| gradients[i].clone()).collect();
            chart.normal_form(&wedge_numerator(&secs, &grads))
        })
        .filter(|w| !w.is_zero())
        .collect();
    stats.wedges = wedges.len();
    if wedges.is_empty() {
        return Err(Error::DegenerateLadder("every wedge of sections vanishes on the chart".into()));
    }
    let numerators = prune_generators(chart, wedges);
    stats.generators = numerators.len();
    let mut denominator: Vec<(Polynomial, u32)> = ideal
        .denominator_factors()
        .iter()
        .map(|(f, e)| (f.clone(), e * (n as u32 + 1)))
        .collect();
    denominator.push((frame.certificate().clone(), n as u32));
    Ok((FractionalIdeal::new(chart, numerators, denominator), stats))
}

/// Nonzero base-(n+2) digits of `i` as `(position, digit)`, lowest first.
pub fn composite_f_digits(i: u64, n: usize) -> Vec<(usize, u64)> {
    let base = n as u64 + 2;
    let mut out = Vec::new();
    let mut rest = i;
    let mut pos = 0;
    while rest > 0 {
        let d = rest % base;
        if d != 0 {
            out.push((pos, d));
        }
        rest /= base;
        pos += 1;
    }
    out
}

/// `F_1, F_{n+2}, F_{(n+2)^2}, …` on a base chart, all over one frame.
#[derive(Clone, Debug)]
pub struct Ladder {
    n: usize,
    frame: DifferentialFrame,
    minors: GaussMinors,
    entries: Vec<FractionalIdeal>,
    stats: Vec<StepStats>,
}

impl Ladder {
    /// Builds entries for the powers `(n+2)^0 … (n+2)^depth`.
    pub fn build(chart: &AffineChart, depth: usize, preferred_frame: Option<&[usize]>, seed: u64) -> Result<Ladder> {
        let frame = DifferentialFrame::new(chart, preferred_frame)?;
        let minors = gauss_minor_ideal(chart, seed)?;
        let mut ladder = Ladder {
            n: frame.rank(),
            frame,
            entries: vec![minors.ideal.clone()],
            minors,
            stats: vec![StepStats::default()],
        };
        for _ in 0..depth {
            ladder.extend()?;
        }
        Ok(ladder)
    }

    pub fn extend(&mut self) -> Result<()> {
        let (next, stats) = next_f(&self.entries, &self.frame)?;
        self.entries.push(next);
        self.stats.push(stats);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base(&self) -> u64 {
        self.n as u64 + 2
    }

    pub fn depth(&self) -> usize {
        self.entries.len() - 1
    }

    pub fn frame(&self) -> &DifferentialFrame {
        &self.frame
    }

    pub fn chart(&self) -> &AffineChart {
        self.frame.chart()
    }

    pub fn minors(&self) -> &GaussMinors {
        &self.minors
    }

    /// `F_{(n+2)^i}`.
    pub fn entry(&self, i: usize) -> Option<&FractionalIdeal> {
        self.entries.get(i)
    }

    pub fn entries(&self) -> &[FractionalIdeal] {
        &self.entries
    }

    pub fn stats(&self) -> &[StepStats] {
        &self.stats
    }

    /// `F_i = ∏ F_{(n+2)^j}^{a_j}` over the base-(n+2) digits of `i`.
    pub fn composite(&self, i: u64) -> Result<FractionalIdeal> {
        if i == 0 {
            return Err(Error::Argument("ladder indices start at 1".into()));
        }
        let mut acc = FractionalIdeal::unit(self.chart());
        for (pos, digit) in composite_f_digits(i, self.n) {
            let e = self.entries.get(pos).ok_or_else(|| {
                Error::Argument(format!("F_{i} needs ladder depth {pos}, have {}", self.depth()))
            })?;
            acc = acc.product(&e.power(digit as u32));
        }
        Ok(acc)
    }
}
