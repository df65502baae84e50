use std::sync::Arc as Shared;

use serde::Serialize;

use super::arc::{evaluate_with, Arc};
use super::series::{TruncatedSeries, Valuation};
use crate::error::{Error, Result};
use crate::geometry::AffineChart;
use crate::nash::{nash_blowup, BlowupChart};

/// Result of lifting an arc into one blowup chart.
#[derive(Clone, Debug)]
pub struct BlowupLift {
    /// Position of the receiving chart in the chart list.
    pub chart_index: usize,
    /// Center generator made exceptional in that chart.
    pub selected: usize,
    /// Valuation of the center along the arc; also the truncation loss.
    pub center_valuation: i64,
    pub arc: Arc,
}

/// Lifts into the given chart: keeps the components and appends
/// `u_j = g_j(γ)/g_k(γ)` for `j != k`. Fails when some `g_j` vanishes to
/// lower order than `g_k`.
pub fn lift_into_chart(arc: &Arc, chart: &BlowupChart) -> Result<Arc> {
    let gens = chart.center.numerators();
    let k = chart.selected;
    let series: Vec<TruncatedSeries> = gens.iter().map(|g| arc.evaluate(g)).collect::<Result<_>>()?;
    let m = match series[k].valuation() {
        Valuation::Finite(m) => m as usize,
        _ => {
            return Err(Error::IndeterminatePullback(format!(
                "center generator {} vanishes along the arc",
                gens[k]
            )))
        }
    };
    if m >= arc.truncation() {
        return Err(Error::InsufficientPrecision {
            required: arc.truncation() + m + 1,
        });
    }
    let reduced = arc.truncation() - m;
    let mut comps: Vec<TruncatedSeries> = arc.components().to_vec();
    for (j, s) in series.iter().enumerate() {
        if j != k {
            comps.push(s.div_or(&series[k], reduced)?);
        }
    }
    let lifted = Arc::unchecked(&chart.chart, comps, reduced);
    if let Some(i) = lifted.violated_equation()? {
        return Err(Error::DegenerateInput(format!(
            "lifted arc does not satisfy chart equation {}",
            chart.chart.generators()[i]
        )));
    }
    Ok(lifted)
}

/// Chooses the chart whose center generator has minimal valuation along the
/// arc (lowest index on ties) and lifts into it.
pub fn lift_through_blowup(arc: &Arc, charts: &[BlowupChart]) -> Result<BlowupLift> {
    let Some(first) = charts.first() else {
        return Err(Error::Argument("no blowup charts to lift into".into()));
    };
    let gens = first.center.numerators();
    let vals: Vec<Valuation> = gens.iter().map(|g| arc.valuation(g)).collect::<Result<_>>()?;
    let best = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.finite().map(|x| (x, i)))
        .min();
    let unresolved = vals
        .iter()
        .filter_map(|v| match v {
            Valuation::AtLeast(p) => Some(*p),
            _ => None,
        })
        .min();
    let (m, k) = match (best, unresolved) {
        (None, None) => return Err(Error::NotLiftable),
        (None, Some(p)) => {
            return Err(Error::InsufficientPrecision {
                required: arc.truncation() + (arc.truncation() - p.min(arc.truncation() as i64) as usize) + 1,
            })
        }
        (Some((m, _)), Some(p)) if p <= m => {
            return Err(Error::InsufficientPrecision {
                required: arc.truncation() + (m - p) as usize + 1,
            })
        }
        (Some(b), _) => b,
    };
    let chart_index = charts
        .iter()
        .position(|c| c.selected == k)
        .ok_or_else(|| Error::DegenerateInput(format!("no blowup chart for center generator {k}")))?;
    let lifted = lift_into_chart(arc, &charts[chart_index])?;
    Ok(BlowupLift {
        chart_index,
        selected: k,
        center_valuation: m,
        arc: lifted,
    })
}

/// One level of a tower lift.
#[derive(Clone, Debug)]
pub struct LiftLevel {
    pub level: usize,
    pub path: String,
    pub arc: Arc,
    /// Center generator selected to reach this level (none at the root).
    pub selected: Option<usize>,
    /// Truncation lost entering this level.
    pub loss: Option<i64>,
    pub smooth_at_center: bool,
}

#[derive(Clone, Debug)]
pub struct TowerLift {
    pub levels: Vec<LiftLevel>,
    /// Level at which the arc's center point became smooth.
    pub stabilized_at: Option<usize>,
    pub max_levels: usize,
    /// Parent maps carry every lifted arc back to the input coefficients.
    pub round_trip: bool,
}

impl TowerLift {
    pub fn lifted(&self) -> &Arc {
        &self.levels.last().expect("at least the root level").arc
    }
}

/// Summary of a tower lift for reports.
#[derive(Clone, Debug, Serialize)]
pub struct LiftLevelSummary {
    pub level: usize,
    pub path: String,
    pub variables: Vec<String>,
    pub selected: Option<usize>,
    pub loss: Option<i64>,
    pub truncation: usize,
    pub smooth_at_center: bool,
    pub components: Vec<String>,
}

impl LiftLevel {
    pub fn summary(&self) -> LiftLevelSummary {
        LiftLevelSummary {
            level: self.level,
            path: self.path.clone(),
            variables: self.arc.chart().ring().names().to_vec(),
            selected: self.selected,
            loss: self.loss,
            truncation: self.arc.truncation(),
            smooth_at_center: self.smooth_at_center,
            components: self.arc.components().iter().map(|c| c.to_string()).collect(),
        }
    }
}

/// Requires some c×c Jacobian minor to have finite valuation along the arc,
/// i.e. the arc's generic point is a smooth point of the chart.
pub fn check_generic_smoothness(arc: &Arc) -> Result<()> {
    let chart = arc.chart();
    let c = chart.codim();
    if c == 0 {
        return Ok(());
    }
    let minors = chart.jacobian().minors(c)?;
    let mut unresolved = false;
    for m in &minors {
        match arc.valuation(m)? {
            Valuation::Finite(_) => return Ok(()),
            Valuation::AtLeast(_) => unresolved = true,
            Valuation::Infinite => {}
        }
    }
    if unresolved {
        return Err(Error::InsufficientPrecision {
            required: 2 * arc.truncation(),
        });
    }
    Err(Error::Hypothesis(
        "image contains a nonsingular point: every Jacobian minor vanishes along the arc, so it lies in the singular locus".into(),
    ))
}

/// Nash-blows up and lifts until the chart is smooth at the arc's center
/// point or `max_levels` blowups were taken.
pub fn lift_through_tower(arc: &Arc, max_levels: usize, seed: u64) -> Result<TowerLift> {
    if max_levels == 0 {
        return Err(Error::Argument("max levels must be at least 1".into()));
    }
    check_generic_smoothness(arc)?;
    let mut levels: Vec<LiftLevel> = Vec::new();
    let mut cur = arc.clone();
    let mut path = "root".to_string();
    let mut selected = None;
    let mut loss = None;
    let mut stabilized_at = None;
    loop {
        let level = levels.len();
        let smooth = cur.chart().is_smooth_at(&cur.center_point());
        levels.push(LiftLevel {
            level,
            path: path.clone(),
            arc: cur.clone(),
            selected,
            loss,
            smooth_at_center: smooth,
        });
        if smooth {
            stabilized_at = Some(level);
            break;
        }
        if level == max_levels {
            break;
        }
        let (_, charts) = nash_blowup(cur.chart(), seed)?;
        let lift = lift_through_blowup(&cur, &charts)?;
        path = format!("{path}/k{}", lift.selected);
        selected = Some(lift.selected);
        loss = Some(lift.center_valuation);
        cur = lift.arc;
    }
    let round_trip = round_trip_holds(&levels);
    Ok(TowerLift {
        levels,
        stabilized_at,
        max_levels,
        round_trip,
    })
}

/// Pushes the top arc down through the parent maps and compares with every
/// stored level below, coefficientwise to the top truncation.
fn round_trip_holds(levels: &[LiftLevel]) -> bool {
    let top = levels.last().expect("nonempty");
    let t = top.arc.truncation();
    let mut chart: Shared<AffineChart> = top.arc.chart().clone();
    let mut comps = top.arc.components().to_vec();
    for below in levels[..levels.len() - 1].iter().rev() {
        let Some(parent) = chart.parent() else {
            return false;
        };
        comps = parent.coordinates.iter().map(|c| evaluate_with(c, &comps)).collect();
        chart = parent.parent.clone();
        if comps.len() != below.arc.components().len()
            || !comps.iter().zip(below.arc.components()).all(|(a, b)| a.agrees_with(b, t))
        {
            return false;
        }
    }
    true
}
