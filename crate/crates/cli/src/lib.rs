//! Batch front end: definition files in, text or JSON reports out.

pub mod document;
pub mod error;
pub mod identities;
pub mod run;

use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

pub use document::{ArcBlock, Document};
pub use error::CliError;
pub use run::{run, Command, Format, JobSpec, Options, Report};

#[derive(Debug, Parser)]
#[command(name = "nashlift", version, about = "Nash blowup towers, ladders and arc lifting over the rationals")]
pub struct Cli {
    #[command(subcommand)]
    pub command: CliCommand,

    /// Blowup levels for tower, lift and probe
    #[arg(long, global = true, default_value_t = 8)]
    pub max_iter: usize,

    /// Ladder depth d: entries F_1 … F_{(n+2)^d}
    #[arg(long, global = true, default_value_t = 4)]
    pub depth: usize,

    /// Arc truncation order, overriding the arc file's `trunc`
    #[arg(long, global = true)]
    pub trunc: Option<usize>,

    /// Seed for row reduction and identity sampling
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Preferred frame basis, e.g. `x,y`
    #[arg(long, global = true, value_delimiter = ',')]
    pub frame: Option<Vec<String>>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Subcommand)]
pub enum CliCommand {
    /// Jacobian criterion and singular locus
    Smooth { variety: PathBuf },
    /// One Nash blowup: Gauss minors and charts
    Nash { variety: PathBuf },
    /// Iterated Nash blowups until every chart is smooth
    Tower { variety: PathBuf },
    /// The ladder F_1, F_{n+2}, F_{(n+2)^2}, …
    Ladder { variety: PathBuf },
    /// Lift an arc through the Nash tower
    Lift { variety: PathBuf, arc: Option<PathBuf> },
    /// Ladder valuations along an arc and the geometric verdict
    Criterion { variety: PathBuf, arc: Option<PathBuf> },
    /// Lift a polynomial curve re-centered at several parameters
    Probe { variety: PathBuf, curve: Option<PathBuf> },
    /// Randomized checks of the wedge identities
    DlogCheck {
        /// Dimension (1, 2 or 3); all three when omitted
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
}

impl Cli {
    pub fn job(self) -> JobSpec {
        let mut options = Options {
            max_iter: self.max_iter,
            depth: self.depth,
            trunc: self.trunc,
            seed: self.seed,
            format: match self.format {
                OutputFormat::Text => Format::Text,
                OutputFormat::Json => Format::Json,
            },
            frame: self.frame,
            ..Options::default()
        };
        let one = |p: PathBuf| vec![p];
        let two = |p: PathBuf, q: Option<PathBuf>| std::iter::once(p).chain(q).collect();
        let (command, inputs) = match self.command {
            CliCommand::Smooth { variety } => (Command::Smooth, one(variety)),
            CliCommand::Nash { variety } => (Command::Nash, one(variety)),
            CliCommand::Tower { variety } => (Command::Tower, one(variety)),
            CliCommand::Ladder { variety } => (Command::Ladder, one(variety)),
            CliCommand::Lift { variety, arc } => (Command::Lift, two(variety, arc)),
            CliCommand::Criterion { variety, arc } => (Command::Criterion, two(variety, arc)),
            CliCommand::Probe { variety, curve } => (Command::Probe, two(variety, curve)),
            CliCommand::DlogCheck { n, trials } => {
                options.n = n;
                options.trials = trials;
                (Command::DlogCheck, Vec::new())
            }
        };
        JobSpec { command, inputs, options }
    }
}

/// Parses arguments, runs the job and returns (exit code, stdout, stderr).
/// Usage errors exit with 1; exit code 2 is reserved for hypothesis violations.
pub fn execute<I, T>(args: I) -> (i32, String, String)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 { (0, text, String::new()) } else { (1, String::new(), text) };
        }
    };
    let job = cli.job();
    match run(&job) {
        Ok(report) => (0, report.render(job.options.format), String::new()),
        Err(e) => (e.exit_code(), String::new(), format!("error: {e}\n")),
    }
}
