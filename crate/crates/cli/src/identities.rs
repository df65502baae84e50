//! Randomized checks of the principal-parts wedge identities: the dlog form
//! agrees with the connection expansion, does not depend on the connection,
//! and is homogeneous of degree n+1 in the sections.

use std::sync::Arc as Shared;

use nashlift_core::algebra::{int, Monomial, Polynomial, RationalFunction};
use nashlift_core::geometry::{AffineChart, DifferentialFrame};
use nashlift_core::nash::{connection_wedge, principal_parts_wedge};
use nashlift_core::Result;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

/// Charts sampled for each dimension; trials cycle through them.
pub fn identity_charts(n: usize) -> &'static [(&'static str, &'static str)] {
    match n {
        1 => &[
            ("cusp", "vars x y; ideal y^2 - x^3;"),
            ("a4", "vars x y; ideal y^2 - x^5;"),
            ("parabola", "vars x y; ideal y - x^2;"),
        ],
        2 => &[("cone", "vars x y z; ideal x*y - z^2;"), ("plane", "vars x y;")],
        3 => &[("quadric", "vars x y z w; ideal x*y - z*w;"), ("space", "vars x y z;")],
        _ => &[],
    }
}

pub const IDENTITY_DIMENSIONS: [usize; 3] = [1, 2, 3];

#[derive(Clone, Debug, Serialize)]
pub struct IdentityTally {
    pub n: usize,
    pub charts: Vec<String>,
    pub trials: usize,
    /// Trials where the dlog form equals the expansion with `∇ = d`.
    pub dlog: usize,
    /// Trials where `∇ = d + η` gives the same wedge.
    pub connection: usize,
    /// Trials where scaling the sections by `λ` scales the wedge by `λ^{n+1}`.
    pub homogeneity: usize,
    /// Trials where all three hold.
    pub held: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    pub tallies: Vec<IdentityTally>,
    pub held: usize,
    pub total: usize,
}

fn random_polynomial(chart: &AffineChart, rng: &mut ChaCha8Rng, max_deg: u32) -> Polynomial {
    let nv = chart.nvars();
    let nterms = rng.gen_range(1..=3);
    let terms = (0..nterms).map(|_| {
        let mut e = vec![0u32; nv];
        for _ in 0..rng.gen_range(0..=max_deg) {
            e[rng.gen_range(0..nv)] += 1;
        }
        let c = rng.gen_range(1..=3) * if rng.gen_bool(0.5) { 1 } else { -1 };
        (Monomial::from_exponents(&e), int(c))
    });
    Polynomial::from_terms(chart.ring(), terms.collect::<Vec<_>>())
}

fn random_nonvanishing(chart: &AffineChart, rng: &mut ChaCha8Rng, max_deg: u32) -> Polynomial {
    loop {
        let p = random_polynomial(chart, rng, max_deg);
        if !chart.is_zero_on(&p) {
            return p;
        }
    }
}

/// `count` random functions over one shared random denominator. Sharing it
/// keeps the wedge determinants on a single denominator per row.
fn random_functions(chart: &AffineChart, rng: &mut ChaCha8Rng, count: usize) -> Vec<RationalFunction> {
    let den = random_nonvanishing(chart, rng, 1);
    (0..count)
        .map(|_| RationalFunction::new(random_nonvanishing(chart, rng, 2), den.clone()).expect("nonzero denominator"))
        .collect()
}

fn agree_on(chart: &AffineChart, a: &RationalFunction, b: &RationalFunction) -> bool {
    let d = a.sub(b);
    d.is_zero() || chart.is_zero_on(d.numerator())
}

struct TrialOutcome {
    dlog: bool,
    connection: bool,
    homogeneity: bool,
}

fn trial(frame: &DifferentialFrame, rng: &mut ChaCha8Rng) -> Result<TrialOutcome> {
    let chart = frame.chart();
    let n = frame.rank();
    let sections = random_functions(chart, rng, n + 1);
    let eta = random_functions(chart, rng, n);
    let lambda = random_functions(chart, rng, 1).remove(0);

    let w = principal_parts_wedge(frame, &sections)?;
    let plain = connection_wedge(frame, &sections, None)?;
    let twisted = connection_wedge(frame, &sections, Some(&eta))?;
    let scaled: Vec<RationalFunction> = sections.iter().map(|s| s.mul(&lambda)).collect();
    let ws = principal_parts_wedge(frame, &scaled)?;
    Ok(TrialOutcome {
        dlog: agree_on(chart, &w, &plain),
        connection: agree_on(chart, &plain, &twisted),
        homogeneity: agree_on(chart, &ws, &w.mul(&lambda.pow(n as u32 + 1))),
    })
}

/// Runs `trials` random trials for each requested dimension. The stream for
/// dimension `n` is ChaCha8 seeded with `seed`, stream `n`.
pub fn dlog_check(dims: &[usize], trials: usize, seed: u64) -> Result<IdentityReport> {
    let mut tallies = Vec::new();
    for &n in dims {
        let charts = identity_charts(n);
        if charts.is_empty() {
            return Err(nashlift_core::Error::Argument(format!(
                "identity checks are available for n in {{1, 2, 3}}, not {n}"
            )));
        }
        let frames = charts
            .iter()
            .map(|(_, text)| {
                let chart = Shared::new(AffineChart::from_text(text)?);
                DifferentialFrame::new(&chart, None)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(n as u64);
        let mut tally = IdentityTally {
            n,
            charts: charts.iter().map(|(name, _)| name.to_string()).collect(),
            trials,
            dlog: 0,
            connection: 0,
            homogeneity: 0,
            held: 0,
        };
        for k in 0..trials {
            let o = trial(&frames[k % frames.len()], &mut rng)?;
            tally.dlog += o.dlog as usize;
            tally.connection += o.connection as usize;
            tally.homogeneity += o.homogeneity as usize;
            tally.held += (o.dlog && o.connection && o.homogeneity) as usize;
        }
        tallies.push(tally);
    }
    let held = tallies.iter().map(|t| t.held).sum();
    let total = tallies.iter().map(|t| t.trials).sum();
    Ok(IdentityReport { tallies, held, total })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_runs_hold_and_repeat() {
        let a = dlog_check(&[1, 2], 6, 7).unwrap();
        assert_eq!((a.held, a.total), (12, 12));
        let b = dlog_check(&[1, 2], 6, 7).unwrap();
        assert_eq!(serde_json::to_string(&a).unwrap(), serde_json::to_string(&b).unwrap());
        assert!(dlog_check(&[4], 1, 0).is_err());
    }
}
