//! Command-line front end: argument parsing, job validation and dispatch.
//!
//! Exit status is 0 on success, 1 for malformed input and 2 for domain
//! errors or failed checks. Domain errors are reported on stderr as a single
//! `Kind: message` line.

mod check;
mod commands;

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::sync::Arc;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use ktwist_core::{HighestWeight, LevelForm, LieType, RootDatum, Weight};

pub use check::{CheckLine, CheckReport, Status};

#[derive(Parser, Debug)]
#[command(name = "ktwist", version, about = "Fusion rings from twisted equivariant K-theory")]
struct Cli {
    #[command(subcommand)]
    command: CommandArgs,
}

#[derive(Subcommand, Debug)]
enum CommandArgs {
    /// List the regular orbit representatives indexing the basis.
    Basis(CommonArgs),
    /// Show the identity class.
    Identity(CommonArgs),
    /// Show the detection image of a basis class, or the detection matrix.
    Theta {
        #[command(flatten)]
        common: CommonArgs,
        /// Weight in fundamental-weight coordinates, e.g. 1,2.
        #[arg(long, allow_hyphen_values = true)]
        chi: Option<String>,
        /// Dump the full detection matrix.
        #[arg(long)]
        matrix: bool,
    },
    /// Print the structure constants of the product.
    FusionTable(CommonArgs),
    /// Print the coform matrix.
    Coform(CommonArgs),
    /// Run the invariant checks and report PASS/FAIL per check.
    Check {
        #[command(flatten)]
        common: CommonArgs,
        #[arg(value_enum, default_value_t = Suite::All)]
        suite: Suite,
    },
}

#[derive(Args, Debug)]
struct CommonArgs {
    /// Cartan type, e.g. A2 or G2.
    #[arg(long = "type")]
    lie_type: String,
    /// Twist level.
    #[arg(long, allow_hyphen_values = true, conflicts_with = "rep", required_unless_present = "rep")]
    level: Option<i64>,
    /// Highest weight of a representation whose trace form defines the level.
    #[arg(long, allow_hyphen_values = true)]
    rep: Option<String>,
    /// Character twisting the coform, as weight coordinates.
    #[arg(long, allow_hyphen_values = true)]
    omega: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Pretty)]
    format: Format,
    /// Seed for randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Write the document to this file instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Pretty,
    Json,
    Csv,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    All,
    Duality,
    Counting,
    Detection,
    Ring,
    Oracle,
    Coform,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LevelSource {
    Level(i64),
    Rep(Weight),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Command {
    Basis,
    Identity,
    Theta { chi: Option<Weight>, matrix: bool },
    FusionTable,
    Coform,
    Check(Suite),
}

/// A validated request.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JobSpec {
    pub lie_type: LieType,
    pub level_source: LevelSource,
    pub command: Command,
    pub format: Format,
    pub omega: Option<Weight>,
    pub seed: Option<u64>,
    pub out: Option<PathBuf>,
}

/// Rejected before any computation; exit status 1 unless `informational`
/// (help and version output).
#[derive(Debug)]
pub struct UsageError {
    pub message: String,
    pub informational: bool,
}

impl UsageError {
    fn new(message: impl Into<String>) -> Self {
        Self {
            message: message.into(),
            informational: false,
        }
    }
}

/// A rendered document and whether the job succeeded.
#[derive(Debug)]
pub struct Output {
    pub document: String,
    pub success: bool,
}

fn parse_weight(flag: &str, s: &str) -> Result<Weight, UsageError> {
    s.parse()
        .map_err(|_| UsageError::new(format!("--{flag}: expected comma-separated integers, got {s:?}")))
}

impl JobSpec {
    pub fn parse_from<I, T>(args: I) -> Result<Self, UsageError>
    where
        I: IntoIterator<Item = T>,
        T: Into<OsString> + Clone,
    {
        let cli = Cli::try_parse_from(args).map_err(|e| UsageError {
            message: e.render().to_string(),
            informational: matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion),
        })?;
        let (common, command) = match cli.command {
            CommandArgs::Basis(c) => (c, Command::Basis),
            CommandArgs::Identity(c) => (c, Command::Identity),
            CommandArgs::Theta { common, chi, matrix } => {
                let chi = chi.map(|s| parse_weight("chi", &s)).transpose()?;
                if chi.is_none() && !matrix {
                    return Err(UsageError::new("theta: pass --chi <coords> or --matrix"));
                }
                (common, Command::Theta { chi, matrix })
            }
            CommandArgs::FusionTable(c) => (c, Command::FusionTable),
            CommandArgs::Coform(c) => (c, Command::Coform),
            CommandArgs::Check { common, suite } => (common, Command::Check(suite)),
        };
        let lie_type: LieType = common
            .lie_type
            .parse()
            .map_err(|e: ktwist_core::Error| UsageError::new(format!("--type: {e}")))?;
        let level_source = match (common.level, common.rep) {
            (Some(k), None) if k > 0 => LevelSource::Level(k),
            (Some(k), None) => return Err(UsageError::new(format!("--level: level must be positive, got {k}"))),
            (None, Some(rep)) => LevelSource::Rep(parse_weight("rep", &rep)?),
            _ => return Err(UsageError::new("pass exactly one of --level and --rep")),
        };
        let omega = common.omega.map(|s| parse_weight("omega", &s)).transpose()?;
        let mut weights: Vec<&Weight> = omega.iter().collect();
        if let Command::Theta { chi: Some(chi), .. } = &command {
            weights.push(chi);
        }
        if let LevelSource::Rep(w) = &level_source {
            weights.push(w);
        }
        if let Some(w) = weights.into_iter().find(|w| w.rank() != lie_type.rank()) {
            return Err(UsageError::new(format!(
                "weight {w} has {} coordinates, {lie_type} needs {}",
                w.rank(),
                lie_type.rank()
            )));
        }
        Ok(JobSpec {
            lie_type,
            level_source,
            command,
            format: common.format,
            omega,
            seed: common.seed,
            out: common.out,
        })
    }

    pub fn level_form(&self) -> ktwist_core::Result<LevelForm> {
        let datum = Arc::new(RootDatum::new(self.lie_type)?);
        match &self.level_source {
            LevelSource::Level(k) => LevelForm::new(datum, *k),
            LevelSource::Rep(w) => {
                let hw = HighestWeight::new(&datum, w.clone())?;
                LevelForm::from_representation(datum, &hw)
            }
        }
    }
}

/// Runs a validated job.
pub fn run(spec: &JobSpec) -> ktwist_core::Result<Output> {
    let lf = spec.level_form()?;
    match &spec.command {
        Command::Check(suite) => {
            let report = check::run_checks(&lf, *suite, spec.seed.unwrap_or(0));
            Ok(Output {
                success: report.passed(),
                document: report.render(spec.format),
            })
        }
        command => Ok(Output {
            document: commands::render(&lf, command, spec)?,
            success: true,
        }),
    }
}

/// Runs a job through the standard check suite.
pub fn check(spec: &JobSpec) -> ktwist_core::Result<CheckReport> {
    let suite = match spec.command {
        Command::Check(s) => s,
        _ => Suite::All,
    };
    Ok(check::run_checks(&spec.level_form()?, suite, spec.seed.unwrap_or(0)))
}

/// Parses arguments, runs the job and writes the result. Returns the exit
/// status.
pub fn main_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let spec = match JobSpec::parse_from(args) {
        Ok(spec) => spec,
        Err(e) if e.informational => {
            let _ = write!(stdout, "{}", e.message);
            return 0;
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}", e.message.trim_end());
            return 1;
        }
    };
    match run(&spec) {
        Ok(out) => {
            let written = match &spec.out {
                Some(path) => std::fs::write(path, &out.document),
                None => stdout.write_all(out.document.as_bytes()),
            };
            if let Err(e) = written {
                let _ = writeln!(stderr, "IoError: {e}");
                return 2;
            }
            if out.success {
                0
            } else {
                2
            }
        }
        Err(e) => {
            let _ = writeln!(stderr, "{}: {e}", e.kind());
            2
        }
    }
}
