use serde::Serialize;

use super::arc::Arc;
use super::lift::{lift_through_tower, LiftLevelSummary};
use super::series::Valuation;
use crate::algebra::{parse_polynomial, Polynomial, Rational};
use crate::error::{Error, Result};
use crate::nash::Ladder;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Verdict {
    /// `v_{i+1} = ratio·v_i` for every `i ≥ onset` within depth, `v_onset > 0`.
    EventuallyGeometric { ratio: u64, onset: usize },
    NotYetDetermined { reason: String },
    /// `v_index` is infinite: the arc lies in that ladder divisor.
    Divergent { index: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderValuation {
    /// Ladder level `i`, for the entry `F_{(n+2)^i}`.
    pub level: usize,
    pub index: u64,
    pub valuation: Valuation,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub n: usize,
    pub depth: usize,
    /// Valuation of `F_1` (the Gauss minors), outside the tested range.
    pub base_valuation: Valuation,
    /// `v_1 … v_d`.
    pub valuations: Vec<LadderValuation>,
    pub verdict: Verdict,
    pub truncation_adequate: bool,
    /// Valuation of the frame certificate along the arc. When positive the
    /// arc meets the frame's degeneracy locus and the valuations above are
    /// relative to this frame.
    pub frame_certificate_valuation: Valuation,
}

impl CriterionReport {
    pub fn frame_dependent(&self) -> bool {
        self.frame_certificate_valuation != Valuation::Finite(0)
    }
}

/// Valuations of `F_{(n+2)^i}` for `i = 1…d` along the arc and the verdict.
pub fn geometric_criterion_test(arc: &Arc, ladder: &Ladder) -> Result<CriterionReport> {
    let lc = ladder.chart();
    if lc.ring().names() != arc.chart().ring().names() || lc.generators() != arc.chart().generators() {
        return Err(Error::Context("the arc and the ladder live on different charts".into()));
    }
    let base = ladder.base();
    let base_valuation = arc.ideal_valuation(&ladder.entries()[0])?;
    let mut valuations = Vec::new();
    for (i, e) in ladder.entries().iter().enumerate().skip(1) {
        valuations.push(LadderValuation {
            level: i,
            index: base.pow(i as u32),
            valuation: arc.ideal_valuation(e)?,
        });
    }
    let truncation_adequate = valuations.iter().all(|v| !matches!(v.valuation, Valuation::AtLeast(_)));
    let verdict = decide(&valuations, base, truncation_adequate);
    let frame_certificate_valuation = arc.valuation(ladder.frame().certificate())?;
    Ok(CriterionReport {
        n: ladder.n(),
        depth: ladder.depth(),
        base_valuation,
        valuations,
        verdict,
        truncation_adequate,
        frame_certificate_valuation,
    })
}

fn decide(vals: &[LadderValuation], base: u64, adequate: bool) -> Verdict {
    if let Some(v) = vals.iter().find(|v| v.valuation == Valuation::Infinite) {
        return Verdict::Divergent { index: v.level };
    }
    if !adequate {
        return Verdict::NotYetDetermined {
            reason: "truncation too small to resolve every valuation".into(),
        };
    }
    let v: Vec<i64> = vals.iter().map(|x| x.valuation.finite().expect("adequate")).collect();
    if v.len() < 2 {
        return Verdict::NotYetDetermined {
            reason: format!("depth {} gives no ratio to check", v.len()),
        };
    }
    // longest geometric tail
    let mut onset = v.len() - 1;
    while onset > 0 && v[onset] == base as i64 * v[onset - 1] {
        onset -= 1;
    }
    if onset == v.len() - 1 {
        return Verdict::NotYetDetermined {
            reason: "the last two valuations are not in ratio n+2".into(),
        };
    }
    if v[onset] <= 0 {
        return Verdict::NotYetDetermined {
            reason: "the geometric tail is zero".into(),
        };
    }
    Verdict::EventuallyGeometric {
        ratio: base,
        onset: vals[onset].level,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProbeVerdict {
    /// Every sampled point of the curve lifts to a smooth point by this level.
    StableByLevel { level: usize },
    UndeterminedAtDepth { depth: usize },
}

#[derive(Clone, Debug, Serialize)]
pub struct ProbeSample {
    /// The curve is re-centered at this parameter value.
    pub parameter: String,
    pub point: Vec<String>,
    pub stabilized_at: Option<usize>,
    pub levels: Vec<LiftLevelSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StableTransformReport {
    pub max_levels: usize,
    pub samples: Vec<ProbeSample>,
    pub verdict: ProbeVerdict,
}

/// Parameter values at which the curve is re-centered and lifted.
pub const PROBE_PARAMETERS: [i64; 3] = [0, 1, -1];

/// Lifts a polynomial curve, re-centered at each probe parameter, through
/// its Nash tower and records when its center point becomes smooth.
pub fn stable_transform_probe(curve: &Arc, max_levels: usize, seed: u64) -> Result<StableTransformReport> {
    if !curve.is_polynomial() {
        return Err(Error::Argument("the probe needs a polynomial curve with exact components".into()));
    }
    if curve.components().iter().all(|c| c.coefficients().len() <= 1) {
        return Err(Error::Hypothesis(
            "image contains a nonsingular point: a constant curve is a single point".into(),
        ));
    }
    let tring = super::arc::parameter_ring();
    let mut samples = Vec::new();
    for t0 in PROBE_PARAMETERS {
        let shift = parse_polynomial(&format!("t + {t0}"), &tring)?;
        let comps: Vec<Polynomial> = curve
            .components()
            .iter()
            .map(|c| {
                let p = Polynomial::from_terms(
                    &tring,
                    c.coefficients().iter().enumerate().map(|(i, v)| {
                        (crate::algebra::Monomial::from_exponents(&[i as u32]), v.clone())
                    }),
                );
                p.substitute(std::slice::from_ref(&shift), &tring)
            })
            .collect();
        let arc = Arc::polynomial(curve.chart(), &comps, curve.truncation())?;
        let lift = lift_through_tower(&arc, max_levels, seed)?;
        samples.push(ProbeSample {
            parameter: t0.to_string(),
            point: arc.center_point().iter().map(Rational::to_string).collect(),
            stabilized_at: lift.stabilized_at,
            levels: lift.levels.iter().map(|l| l.summary()).collect(),
        });
    }
    let verdict = if samples.iter().all(|s| s.stabilized_at.is_some()) {
        ProbeVerdict::StableByLevel {
            level: samples.iter().filter_map(|s| s.stabilized_at).max().unwrap_or(0),
        }
    } else {
        ProbeVerdict::UndeterminedAtDepth { depth: max_levels }
    };
    Ok(StableTransformReport {
        max_levels,
        samples,
        verdict,
    })
}
