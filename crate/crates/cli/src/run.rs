use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc as Shared;

use nashlift_core::algebra::Polynomial;
use nashlift_core::arcs::{
    check_generic_smoothness, geometric_criterion_test, lift_through_tower, stable_transform_probe, CriterionReport,
    LiftLevelSummary, ProbeVerdict, StableTransformReport, Valuation, Verdict, DEFAULT_TRUNCATION,
};
use nashlift_core::geometry::{AffineChart, DifferentialFrame};
use nashlift_core::nash::{iterate_until_smooth, nash_blowup, Ladder, MinorPath, StepStats, TowerNode};
use serde::Serialize;

use crate::document::Document;
use crate::error::CliError;
use crate::identities::{dlog_check, IdentityReport, IDENTITY_DIMENSIONS};

pub const TOOL: &str = "nashlift";
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Smooth,
    Nash,
    Tower,
    Ladder,
    Lift,
    Criterion,
    Probe,
    DlogCheck,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Smooth => "smooth",
            Command::Nash => "nash",
            Command::Tower => "tower",
            Command::Ladder => "ladder",
            Command::Lift => "lift",
            Command::Criterion => "criterion",
            Command::Probe => "probe",
            Command::DlogCheck => "dlog-check",
        }
    }

    fn uses_arc(self) -> bool {
        matches!(self, Command::Lift | Command::Criterion | Command::Probe)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub max_iter: usize,
    pub depth: usize,
    /// Overrides the arc file's `trunc` directive.
    pub trunc: Option<usize>,
    pub seed: u64,
    pub format: Format,
    /// Preferred frame basis, by variable name.
    pub frame: Option<Vec<String>>,
    /// Dimension for `dlog-check`; all of 1, 2, 3 when absent.
    pub n: Option<usize>,
    pub trials: usize,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            max_iter: 8,
            depth: 4,
            trunc: None,
            seed: 0,
            format: Format::Text,
            frame: None,
            n: None,
            trials: 100,
        }
    }
}

pub const MAX_ITER_RANGE: (usize, usize) = (1, 32);
pub const DEPTH_RANGE: (usize, usize) = (1, 8);
pub const TRUNC_RANGE: (usize, usize) = (1, 4096);
pub const TRIALS_RANGE: (usize, usize) = (1, 100_000);

impl Options {
    pub fn validate(&self) -> Result<(), CliError> {
        let check = |name: &str, v: usize, (lo, hi): (usize, usize)| {
            if v < lo || v > hi {
                Err(CliError::Usage(format!("--{name} must lie in {lo}..={hi}, got {v}")))
            } else {
                Ok(())
            }
        };
        check("max-iter", self.max_iter, MAX_ITER_RANGE)?;
        check("depth", self.depth, DEPTH_RANGE)?;
        if let Some(t) = self.trunc {
            check("trunc", t, TRUNC_RANGE)?;
        }
        check("trials", self.trials, TRIALS_RANGE)?;
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct JobSpec {
    pub command: Command,
    /// Variety file, then an optional arc file.
    pub inputs: Vec<PathBuf>,
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Verified,
    Assumed,
    Failed,
    NotApplicable,
}

#[derive(Clone, Debug, Serialize)]
pub struct Hypotheses {
    /// The arc's generic point is a smooth point of the variety.
    pub smooth_point_on_image: Status,
    pub normality: Status,
    /// The chart ideal is reduced at the generic point.
    pub generically_reduced: Status,
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct OptionsSummary {
    pub max_iter: usize,
    pub depth: usize,
    pub frame: Option<Vec<String>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub tool: &'static str,
    pub version: &'static str,
    pub command: &'static str,
    pub inputs: Vec<String>,
    pub seed: u64,
    pub truncation: usize,
    pub options: OptionsSummary,
    pub hypotheses: Hypotheses,
    pub result: Outcome,
}

#[derive(Clone, Debug, Serialize)]
#[serde(untagged)]
pub enum Outcome {
    Smooth(SmoothResult),
    Nash(NashResult),
    Tower(TowerResult),
    Ladder(LadderResult),
    Lift(LiftResult),
    Criterion(CriterionResult),
    Probe(StableTransformReport),
    Identities(IdentityReport),
}

#[derive(Clone, Debug, Serialize)]
pub struct SmoothResult {
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub dim: i64,
    pub codim: usize,
    pub smooth: bool,
    /// Reduced Gröbner basis of the singular locus.
    pub singular_locus: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChartSummary {
    pub path: String,
    pub level: usize,
    pub selected: Option<usize>,
    pub variables: Vec<String>,
    pub equations: Vec<String>,
    pub smooth: bool,
    pub minor_path: Option<MinorPath>,
}

#[derive(Clone, Debug, Serialize)]
pub struct NashResult {
    pub minors: Vec<String>,
    pub minor_path: MinorPath,
    pub charts: Vec<ChartSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TowerResult {
    pub max_iter: usize,
    pub smooth_at_level: Option<usize>,
    pub levels: Vec<Vec<ChartSummary>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct FrameSummary {
    pub basis: Vec<String>,
    pub certificate: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderEntry {
    pub level: usize,
    pub index: u64,
    pub denominator: String,
    pub numerators: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LadderResult {
    pub n: usize,
    pub ratio: u64,
    pub depth: usize,
    pub frame: FrameSummary,
    pub entries: Vec<LadderEntry>,
    pub stats: Vec<StepStats>,
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftResult {
    pub max_levels: usize,
    pub stabilized_at: Option<usize>,
    pub round_trip: bool,
    pub levels: Vec<LiftLevelSummary>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub frame: FrameSummary,
    pub frame_dependent: bool,
    #[serde(flatten)]
    pub report: CriterionReport,
}

fn strings(ps: &[Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn chart_summary(node: &TowerNode) -> ChartSummary {
    ChartSummary {
        path: node.path.clone(),
        level: node.level,
        selected: node.selected,
        variables: node.chart.ring().names().to_vec(),
        equations: strings(node.chart.generators()),
        smooth: node.smooth,
        minor_path: node.minor_path.clone(),
    }
}

fn frame_summary(frame: &DifferentialFrame) -> FrameSummary {
    let names = frame.chart().ring().names();
    FrameSummary {
        basis: frame.basis().iter().map(|&i| names[i].clone()).collect(),
        certificate: frame.certificate().to_string(),
    }
}

fn frame_indices(chart: &AffineChart, frame: &Option<Vec<String>>) -> Result<Option<Vec<usize>>, CliError> {
    let Some(names) = frame else {
        return Ok(None);
    };
    names
        .iter()
        .map(|n| {
            chart
                .ring()
                .index_of(n)
                .ok_or_else(|| CliError::Usage(format!("--frame names '{n}', which is not a chart variable")))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(Some)
}

struct Loaded {
    chart: Shared<AffineChart>,
    arc: Option<crate::document::ArcBlock>,
}

fn load(job: &JobSpec) -> Result<Loaded, CliError> {
    let name = job.command.name();
    let max_inputs = if job.command.uses_arc() { 2 } else { 1 };
    if job.inputs.is_empty() || job.inputs.len() > max_inputs {
        return Err(CliError::Usage(format!(
            "{name} takes {} input file{}",
            if max_inputs == 2 { "a variety file and an optional arc file," } else { "one" },
            if max_inputs == 2 { "s" } else { "" }
        )));
    }
    let variety = Document::load(&job.inputs[0])?;
    let chart = variety.require_chart()?.clone();
    let mut arc = variety.arc.clone();
    if let Some(p) = job.inputs.get(1) {
        let doc = Document::load(p)?;
        if let Some(c) = &doc.chart {
            if c.to_text() != chart.to_text() {
                return Err(CliError::Input(format!(
                    "{} defines a different chart than {}",
                    p.display(),
                    job.inputs[0].display()
                )));
            }
        }
        arc = Some(doc.require_arc()?.clone());
    }
    if job.command.uses_arc() && arc.is_none() {
        return Err(CliError::Input(format!(
            "{name} needs an arc: give an arc file or put the assignments in {}",
            job.inputs[0].display()
        )));
    }
    Ok(Loaded { chart, arc })
}

fn base_hypotheses(chart: Option<&AffineChart>) -> Hypotheses {
    let mut warnings = Vec::new();
    let generically_reduced = match chart {
        Some(c) if c.is_generically_reduced() => Status::Verified,
        Some(_) => {
            warnings.push("the chart ideal is not generically reduced; Gauss minors are taken on the given scheme".into());
            Status::Failed
        }
        None => Status::NotApplicable,
    };
    Hypotheses {
        smooth_point_on_image: Status::NotApplicable,
        normality: if chart.is_some() { Status::Assumed } else { Status::NotApplicable },
        generically_reduced,
        warnings,
    }
}

/// Runs a job and builds its report. Deterministic in (inputs, options).
pub fn run(job: &JobSpec) -> Result<Report, CliError> {
    let o = &job.options;
    o.validate()?;
    let seed = o.seed;
    let mut truncation = o.trunc.unwrap_or(DEFAULT_TRUNCATION);

    let (hypotheses, result) = if job.command == Command::DlogCheck {
        if !job.inputs.is_empty() {
            return Err(CliError::Usage("dlog-check takes no input files".into()));
        }
        let dims: Vec<usize> = match o.n {
            Some(n) => vec![n],
            None => IDENTITY_DIMENSIONS.to_vec(),
        };
        (base_hypotheses(None), Outcome::Identities(dlog_check(&dims, o.trials, seed)?))
    } else {
        let Loaded { chart, arc } = load(job)?;
        let mut hyp = base_hypotheses(Some(&chart));
        if let Some(a) = &arc {
            truncation = a.effective_truncation(o.trunc);
        }
        let outcome = match job.command {
            Command::Smooth => Outcome::Smooth(SmoothResult {
                variables: chart.ring().names().to_vec(),
                equations: strings(chart.generators()),
                dim: chart.dim(),
                codim: chart.codim(),
                smooth: chart.is_smooth(),
                singular_locus: strings(chart.singular_locus().groebner_basis().elements()),
            }),
            Command::Nash => {
                let (minors, charts) = nash_blowup(&chart, seed)?;
                Outcome::Nash(NashResult {
                    minors: strings(minors.ideal.numerators()),
                    minor_path: minors.path,
                    charts: charts
                        .iter()
                        .map(|bc| ChartSummary {
                            path: format!("root/k{}", bc.selected),
                            level: 1,
                            selected: Some(bc.selected),
                            variables: bc.chart.ring().names().to_vec(),
                            equations: strings(bc.chart.generators()),
                            smooth: bc.chart.is_smooth(),
                            minor_path: None,
                        })
                        .collect(),
                })
            }
            Command::Tower => {
                let t = iterate_until_smooth(&chart, o.max_iter, seed)?;
                Outcome::Tower(TowerResult {
                    max_iter: t.max_iter,
                    smooth_at_level: t.smooth_at_level,
                    levels: t.levels.iter().map(|l| l.iter().map(chart_summary).collect()).collect(),
                })
            }
            Command::Ladder => {
                let pref = frame_indices(&chart, &o.frame)?;
                let ladder = Ladder::build(&chart, o.depth, pref.as_deref(), seed)?;
                let base = ladder.base();
                Outcome::Ladder(LadderResult {
                    n: ladder.n(),
                    ratio: base,
                    depth: ladder.depth(),
                    frame: frame_summary(ladder.frame()),
                    entries: ladder
                        .entries()
                        .iter()
                        .enumerate()
                        .map(|(i, e)| LadderEntry {
                            level: i,
                            index: base.pow(i as u32),
                            denominator: e.denominator_text(),
                            numerators: strings(e.numerators()),
                        })
                        .collect(),
                    stats: ladder.stats().to_vec(),
                })
            }
            Command::Lift => {
                let a = arc.as_ref().expect("checked by load").truncated(&chart, o.trunc)?;
                check_generic_smoothness(&a)?;
                hyp.smooth_point_on_image = Status::Verified;
                let lift = lift_through_tower(&a, o.max_iter, seed)?;
                Outcome::Lift(LiftResult {
                    max_levels: lift.max_levels,
                    stabilized_at: lift.stabilized_at,
                    round_trip: lift.round_trip,
                    levels: lift.levels.iter().map(|l| l.summary()).collect(),
                })
            }
            Command::Criterion => {
                let a = arc.as_ref().expect("checked by load").truncated(&chart, o.trunc)?;
                check_generic_smoothness(&a)?;
                hyp.smooth_point_on_image = Status::Verified;
                let pref = frame_indices(&chart, &o.frame)?;
                let ladder = Ladder::build(&chart, o.depth, pref.as_deref(), seed)?;
                let report = geometric_criterion_test(&a, &ladder)?;
                if report.frame_dependent() {
                    hyp.warnings.push(
                        "the arc meets the frame's degeneracy locus: valuations are relative to this frame".into(),
                    );
                }
                if !report.truncation_adequate {
                    hyp.warnings.push("truncation too small for some valuation; raise --trunc".into());
                }
                Outcome::Criterion(CriterionResult {
                    frame: frame_summary(ladder.frame()),
                    frame_dependent: report.frame_dependent(),
                    report,
                })
            }
            Command::Probe => {
                let a = arc.as_ref().expect("checked by load").polynomial(&chart, o.trunc)?;
                let report = stable_transform_probe(&a, o.max_iter, seed)?;
                hyp.smooth_point_on_image = Status::Verified;
                Outcome::Probe(report)
            }
            Command::DlogCheck => unreachable!("handled above"),
        };
        (hyp, outcome)
    };
    Ok(Report {
        tool: TOOL,
        version: VERSION,
        command: job.command.name(),
        inputs: job.inputs.iter().map(|p| p.display().to_string()).collect(),
        seed,
        truncation,
        options: OptionsSummary {
            max_iter: o.max_iter,
            depth: o.depth,
            frame: o.frame.clone(),
        },
        hypotheses,
        result,
    })
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Json => {
                let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
                s.push('\n');
                s
            }
            Format::Text => self.text(),
        }
    }

    fn text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {} {}", self.tool, self.version, self.command);
        if !self.inputs.is_empty() {
            let _ = writeln!(out, "inputs: {}", self.inputs.join(" "));
        }
        let _ = writeln!(out, "seed {}, truncation {}", self.seed, self.truncation);
        let h = &self.hypotheses;
        let _ = writeln!(
            out,
            "hypotheses: smooth point on image {}, normality {}, generically reduced {}",
            status(h.smooth_point_on_image),
            status(h.normality),
            status(h.generically_reduced)
        );
        for w in &h.warnings {
            let _ = writeln!(out, "warning: {w}");
        }
        match &self.result {
            Outcome::Smooth(r) => {
                let _ = writeln!(out, "dimension {}, codimension {}", r.dim, r.codim);
                if r.smooth {
                    let _ = writeln!(out, "smooth");
                } else {
                    let _ = writeln!(out, "singular along V({})", r.singular_locus.join(", "));
                }
            }
            Outcome::Nash(r) => {
                let _ = writeln!(out, "gauss minors ({}): {}", path_name(&r.minor_path), r.minors.join(", "));
                for c in &r.charts {
                    let _ = writeln!(out, "{}", chart_line(c));
                }
            }
            Outcome::Tower(r) => {
                for (i, level) in r.levels.iter().enumerate() {
                    let smooth = level.iter().filter(|c| c.smooth).count();
                    let _ = writeln!(out, "level {i}: {} charts, {smooth} smooth", level.len());
                    for c in level {
                        let _ = writeln!(out, "  {}", chart_line(c));
                    }
                }
                match r.smooth_at_level {
                    Some(l) => {
                        let _ = writeln!(out, "smooth at level {l}");
                    }
                    None => {
                        let _ = writeln!(out, "not smooth after {} iterations", r.max_iter);
                    }
                }
            }
            Outcome::Ladder(r) => {
                let _ = writeln!(
                    out,
                    "n = {}, ratio {}, frame basis {} (certificate {})",
                    r.n,
                    r.ratio,
                    r.frame.basis.join(","),
                    r.frame.certificate
                );
                for e in &r.entries {
                    let _ = writeln!(
                        out,
                        "F_{}: {} generators over {}",
                        e.index,
                        e.numerators.len(),
                        e.denominator
                    );
                }
            }
            Outcome::Lift(r) => {
                for l in &r.levels {
                    let _ = writeln!(
                        out,
                        "level {} {} (trunc {}{}): {}",
                        l.level,
                        l.path,
                        l.truncation,
                        l.loss.map(|x| format!(", lost {x}")).unwrap_or_default(),
                        l.variables
                            .iter()
                            .zip(&l.components)
                            .map(|(v, c)| format!("{v} = {c}"))
                            .collect::<Vec<_>>()
                            .join("; ")
                    );
                }
                match r.stabilized_at {
                    Some(l) => {
                        let _ = writeln!(out, "stabilized at level {l}");
                    }
                    None => {
                        let _ = writeln!(out, "not stabilized after {} levels", r.max_levels);
                    }
                }
                let _ = writeln!(out, "round trip {}", if r.round_trip { "exact" } else { "FAILED" });
            }
            Outcome::Criterion(r) => {
                let c = &r.report;
                let _ = writeln!(out, "n = {}, depth {}, frame basis {}", c.n, c.depth, r.frame.basis.join(","));
                let _ = writeln!(out, "v(F_1) = {}", c.base_valuation);
                for v in &c.valuations {
                    let _ = writeln!(out, "v_{} = v(F_{}) = {}", v.level, v.index, v.valuation);
                }
                let _ = writeln!(out, "verdict: {}", verdict_text(&c.verdict));
            }
            Outcome::Probe(r) => {
                for s in &r.samples {
                    let _ = writeln!(
                        out,
                        "t = {} at ({}): {}",
                        s.parameter,
                        s.point.join(", "),
                        s.stabilized_at
                            .map(|l| format!("smooth at level {l}"))
                            .unwrap_or_else(|| "not stabilized".into())
                    );
                }
                let _ = match &r.verdict {
                    ProbeVerdict::StableByLevel { level } => writeln!(out, "stable by level {level}"),
                    ProbeVerdict::UndeterminedAtDepth { depth } => writeln!(out, "undetermined at depth {depth}"),
                };
            }
            Outcome::Identities(r) => {
                for t in &r.tallies {
                    let _ = writeln!(
                        out,
                        "n = {} ({}): dlog {}/{}, connection {}/{}, homogeneity {}/{}",
                        t.n,
                        t.charts.join(", "),
                        t.dlog,
                        t.trials,
                        t.connection,
                        t.trials,
                        t.homogeneity,
                        t.trials
                    );
                }
                let _ = writeln!(out, "{}/{} identities hold", r.held, r.total);
            }
        }
        out
    }
}

fn status(s: Status) -> &'static str {
    match s {
        Status::Verified => "verified",
        Status::Assumed => "assumed",
        Status::Failed => "FAILED",
        Status::NotApplicable => "n/a",
    }
}

fn path_name(p: &MinorPath) -> String {
    match p {
        MinorPath::Unit => "unit".into(),
        MinorPath::CompleteIntersection => "complete intersection".into(),
        MinorPath::RowReduced { seed, attempt, .. } => format!("row reduced, seed {seed}, attempt {attempt}"),
    }
}

fn chart_line(c: &ChartSummary) -> String {
    format!(
        "{} [{}] V({}){}",
        c.path,
        c.variables.join(" "),
        if c.equations.is_empty() { "0".to_string() } else { c.equations.join(", ") },
        if c.smooth { " smooth" } else { "" }
    )
}

fn verdict_text(v: &Verdict) -> String {
    match v {
        Verdict::EventuallyGeometric { ratio, onset } => {
            format!("eventually-geometric ratio {ratio} (onset level {onset})")
        }
        Verdict::NotYetDetermined { reason } => format!("not-yet-determined ({reason})"),
        Verdict::Divergent { index } => format!("divergent (v_{index} = {})", Valuation::Infinite),
    }
}
