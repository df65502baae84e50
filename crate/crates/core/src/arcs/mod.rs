//! Formal arcs as truncated power series: pullbacks and valuations, lifting
//! through blowup charts and Nash towers, the geometric-series criterion and
//! the stable-transform probe.

mod arc;
mod criterion;
mod lift;
mod series;

pub use arc::{parameter_ring, parse_assignments, univariate_coefficients, Arc, DEFAULT_TRUNCATION};
pub use criterion::{
    geometric_criterion_test, stable_transform_probe, CriterionReport, LadderValuation, ProbeSample, ProbeVerdict,
    StableTransformReport, Verdict, PROBE_PARAMETERS,
};
pub use lift::{
    check_generic_smoothness, lift_into_chart, lift_through_blowup, lift_through_tower, BlowupLift, LiftLevel,
    LiftLevelSummary, TowerLift,
};
pub use series::{TruncatedSeries, Valuation, EXACT_DIVISION_PRECISION};
