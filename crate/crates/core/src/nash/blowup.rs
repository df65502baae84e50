use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::fractional::FractionalIdeal;
use crate::algebra::{Polynomial, Ring};
use crate::error::{Error, Result};
use crate::geometry::{AffineChart, ParentMap};

/// Number of random row combinations tried for over-determined Jacobians.
pub const ROW_REDUCTION_ATTEMPTS: u32 = 5;

/// How the Gauss minor ideal was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum MinorPath {
    /// Codimension zero: nothing to blow up.
    Unit,
    /// As many equations as the codimension: minors of the Jacobian itself.
    CompleteIntersection,
    /// More equations than the codimension: minors of random integer row
    /// combinations, `attempt` counting from 0 with seed `seed + attempt`.
    RowReduced { seed: u64, attempt: u32, coefficients: Vec<Vec<i64>> },
}

#[derive(Clone, Debug)]
pub struct GaussMinors {
    pub ideal: FractionalIdeal,
    pub path: MinorPath,
}

/// The c×c minors of the Jacobian (after row reduction when there are more
/// equations than the codimension), reduced on the chart, zeros and scalar
/// duplicates dropped.
pub fn gauss_minor_ideal(chart: &AffineChart, seed: u64) -> Result<GaussMinors> {
    let c = chart.codim();
    if chart.is_empty() {
        return Err(Error::DegenerateInput("empty chart".into()));
    }
    if c == 0 {
        return Ok(GaussMinors {
            ideal: FractionalIdeal::unit(chart),
            path: MinorPath::Unit,
        });
    }
    let jac = chart.jacobian();
    let m = jac.nrows();
    if m < c {
        return Err(Error::DegenerateInput(format!(
            "{m} equations cannot cut out codimension {c}"
        )));
    }
    if m == c {
        let ideal = FractionalIdeal::new(chart, monic_all(jac.minors(c)?), Vec::new());
        if ideal.is_empty() {
            return Err(Error::DegenerateInput(
                "all Jacobian minors vanish on the chart (non-reduced input?)".into(),
            ));
        }
        return Ok(GaussMinors {
            ideal,
            path: MinorPath::CompleteIntersection,
        });
    }
    for attempt in 0..ROW_REDUCTION_ATTEMPTS {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(attempt as u64));
        let coefficients: Vec<Vec<i64>> = (0..c)
            .map(|_| (0..m).map(|_| rng.gen_range(-3i64..=3)).collect())
            .collect();
        let reduced = jac.combine_rows(&coefficients);
        let ideal = FractionalIdeal::new(chart, monic_all(reduced.minors(c)?), Vec::new());
        if !ideal.is_empty() {
            return Ok(GaussMinors {
                ideal,
                path: MinorPath::RowReduced {
                    seed,
                    attempt,
                    coefficients,
                },
            });
        }
    }
    Err(Error::DegenerateInput(format!(
        "all minors vanished after {ROW_REDUCTION_ATTEMPTS} random row reductions"
    )))
}

/// One affine chart of a blowup: the generator `selected` is made the
/// local equation of the exceptional divisor.
#[derive(Clone, Debug)]
pub struct BlowupChart {
    pub chart: Arc<AffineChart>,
    pub center: FractionalIdeal,
    pub selected: usize,
    /// The selected center generator, pulled back to the new chart.
    pub exceptional: Polynomial,
}

/// Number of blowups between the chart and the root of its tower.
pub fn chart_level(chart: &AffineChart) -> usize {
    let mut level = 0;
    let mut cur = chart.parent();
    while let Some(p) = cur {
        level += 1;
        cur = p.parent.parent();
    }
    level
}

/// Charts of the blowup of `chart` along the numerators of `center` (the
/// common denominator does not change the blowup). Chart `k` adjoins
/// `u{level}_{j} = g_j / g_k` for `j != k` and saturates by `g_k`.
pub fn blowup_charts(chart: &Arc<AffineChart>, center: &FractionalIdeal) -> Result<Vec<BlowupChart>> {
    let gens = center.numerators();
    if gens.is_empty() {
        return Err(Error::Argument("blowup along an empty center".into()));
    }
    let level = chart_level(chart) + 1;
    let nv = chart.nvars();
    let charts: Vec<Result<Option<BlowupChart>>> = (0..gens.len())
        .into_par_iter()
        .map(|k| {
            if chart.is_zero_on(&gens[k]) {
                return Ok(None);
            }
            let others: Vec<usize> = (0..gens.len()).filter(|&j| j != k).collect();
            let names: Vec<String> = others.iter().map(|j| format!("u{level}_{j}")).collect();
            let ring: Arc<Ring> = chart.ring().extended(&names);
            let gk = gens[k].embed(&ring);
            let mut eqs: Vec<Polynomial> = chart.generators().iter().map(|g| g.embed(&ring)).collect();
            for (pos, &j) in others.iter().enumerate() {
                let u = Polynomial::var(&ring, nv + pos);
                eqs.push(&(&u * &gk) - &gens[j].embed(&ring));
            }
            let raw = crate::groebner::Ideal::new(&ring, eqs)?;
            let sat = raw.saturate(&gk)?;
            let basis = sat.groebner_basis().elements().to_vec();
            let new_chart = AffineChart::new(&ring, basis, None)?;
            if new_chart.is_empty() {
                return Ok(None);
            }
            let coordinates: Vec<Polynomial> = (0..nv).map(|v| Polynomial::var(new_chart.ring(), v)).collect();
            let new_chart = new_chart.with_parent(ParentMap {
                parent: chart.clone(),
                coordinates,
            })?;
            let exceptional = gens[k].embed(new_chart.ring());
            Ok(Some(BlowupChart {
                chart: Arc::new(new_chart),
                center: center.clone(),
                selected: k,
                exceptional,
            }))
        })
        .collect();
    let mut out = Vec::new();
    for c in charts {
        if let Some(c) = c? {
            out.push(c);
        }
    }
    Ok(out)
}

pub fn nash_blowup(chart: &Arc<AffineChart>, seed: u64) -> Result<(GaussMinors, Vec<BlowupChart>)> {
    if chart.dim() <= 0 {
        return Err(Error::Argument("Nash blowup needs a positive-dimensional chart".into()));
    }
    let minors = gauss_minor_ideal(chart, seed)?;
    let charts = blowup_charts(chart, &minors.ideal)?;
    Ok((minors, charts))
}

/// A chart reached in a tower, keyed by its path (`root/k1/k0`).
#[derive(Clone, Debug)]
pub struct TowerNode {
    pub path: String,
    pub level: usize,
    pub chart: Arc<AffineChart>,
    pub selected: Option<usize>,
    pub smooth: bool,
    pub minor_path: Option<MinorPath>,
}

#[derive(Clone, Debug)]
pub struct TowerReport {
    /// Nodes level by level, each level sorted by path.
    pub levels: Vec<Vec<TowerNode>>,
    /// First level at which every frontier chart is smooth.
    pub smooth_at_level: Option<usize>,
    pub max_iter: usize,
}

/// Breadth-first Nash blowups of the non-smooth charts until every chart of
/// the newest level is smooth or `max_iter` blowups have been taken.
pub fn iterate_until_smooth(chart: &Arc<AffineChart>, max_iter: usize, seed: u64) -> Result<TowerReport> {
    if max_iter == 0 {
        return Err(Error::Argument("max-iter must be at least 1".into()));
    }
    let root = TowerNode {
        path: "root".into(),
        level: 0,
        chart: chart.clone(),
        selected: None,
        smooth: chart.is_smooth(),
        minor_path: None,
    };
    let mut levels = vec![vec![root]];
    let mut smooth_at_level = None;
    loop {
        let level = levels.len() - 1;
        let frontier = &levels[level];
        if frontier.iter().all(|n| n.smooth) {
            smooth_at_level = Some(level);
            break;
        }
        if level == max_iter {
            break;
        }
        let expanded: Vec<Result<(usize, MinorPath, Vec<BlowupChart>)>> = frontier
            .par_iter()
            .enumerate()
            .filter(|(_, n)| !n.smooth)
            .map(|(i, n)| nash_blowup(&n.chart, seed).map(|(m, c)| (i, m.path, c)))
            .collect();
        let mut next = Vec::new();
        let mut minor_paths = Vec::new();
        for r in expanded {
            let (i, mpath, charts) = r?;
            minor_paths.push((i, mpath));
            let parent_path = levels[level][i].path.clone();
            for bc in charts {
                let smooth = bc.chart.is_smooth();
                next.push(TowerNode {
                    path: format!("{parent_path}/k{}", bc.selected),
                    level: level + 1,
                    chart: bc.chart,
                    selected: Some(bc.selected),
                    smooth,
                    minor_path: None,
                });
            }
        }
        for (i, p) in minor_paths {
            levels[level][i].minor_path = Some(p);
        }
        next.sort_by(|a, b| a.path.cmp(&b.path));
        levels.push(next);
    }
    Ok(TowerReport {
        levels,
        smooth_at_level,
        max_iter,
    })
}

fn monic_all(polys: Vec<Polynomial>) -> Vec<Polynomial> {
    polys.into_iter().map(|p| if p.is_zero() { p } else { p.monic() }).collect()
}
