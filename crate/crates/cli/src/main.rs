//! `jclean`: analyze finite rings, decide clean-type properties of 2x2
//! formal matrices, and run the structural check suite.

mod render;

use std::path::Path;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use jclean_core::catalog::{self, CatalogRing};
use jclean_core::clean::{decide, CleanKind, DecideMethod};
use jclean_core::formal::{parse_matrix, FMContext};
use jclean_core::ring::{ElementId, RingSpec};
use jclean_core::suite::{self, CheckId, CheckReport, Status};
use jclean_core::{Caps, Error};

#[derive(Parser)]
#[command(
    name = "jclean",
    version,
    about = "Clean-type decompositions in 2x2 formal matrix rings"
)]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Table)]
    format: Format,

    /// Worker threads for parallel sweeps (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Cap overrides, e.g. `similarity=27,sample=500`. Applied after JCLEAN_CAPS.
    #[arg(long, global = true)]
    caps: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Table,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Ring-level commands.
    Ring {
        #[command(subcommand)]
        command: RingCommand,
    },
    /// Matrix-level commands.
    Matrix {
        #[command(subcommand)]
        command: MatrixCommand,
    },
    /// Structural check suite.
    Suite {
        #[command(subcommand)]
        command: SuiteCommand,
    },
    /// Counts of units, idempotents, radical and clean-type elements.
    Census {
        /// Catalog name or path to a ring spec JSON file.
        ring: String,
        /// Central element s; all central elements when omitted.
        #[arg(long)]
        s: Option<String>,
    },
    /// Built-in rings.
    Catalog {
        #[command(subcommand)]
        command: CatalogCommand,
    },
}

#[derive(Subcommand)]
enum RingCommand {
    /// Units, radical, idempotents, center, locality and weak bleaching.
    Analyze {
        ring: String,
        /// Also print J_s(R) for this central element.
        #[arg(long = "j-s")]
        j_s: Option<String>,
    },
}

#[derive(Subcommand)]
enum MatrixCommand {
    /// Decide one matrix, e.g. `matrix decide z4 --s 1 "[[3,2],[2,2]]" --kind sjc`.
    Decide {
        ring: String,
        /// Matrix as `[[a,b],[c,d]]` or `{"a":..,"b":..,"c":..,"d":..}`.
        matrix: String,
        #[arg(long)]
        s: String,
        /// sc, sjc or snc (long names accepted).
        #[arg(long, default_value = "sjc")]
        kind: String,
        #[arg(long, value_enum, default_value_t = MethodArg::Oracle)]
        method: MethodArg,
        /// Cross-check a structural decision against the oracle.
        #[arg(long)]
        verify: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Oracle,
    Auto,
}

#[derive(Subcommand)]
enum SuiteCommand {
    /// Run checks; exits 1 if any check fails.
    Run(SuiteArgs),
}

#[derive(Args)]
struct SuiteArgs {
    /// Every check over the default catalog and every central s.
    #[arg(long, conflicts_with_all = ["ring", "s"])]
    default_catalog: bool,
    /// Check id such as T2.16; all checks when omitted.
    #[arg(long)]
    check: Vec<String>,
    #[arg(long)]
    ring: Option<String>,
    /// Central element s; all central elements when omitted.
    #[arg(long, requires = "ring")]
    s: Option<String>,
}

#[derive(Subcommand)]
enum CatalogCommand {
    /// List the built-in rings.
    List,
}

/// Failure carrying its exit code: 1 check failure, 2 input, 3 hypothesis.
#[derive(Debug)]
pub struct Failure {
    code: u8,
    error: anyhow::Error,
}

impl Failure {
    fn input(error: impl Into<anyhow::Error>) -> Self {
        Failure {
            code: 2,
            error: error.into(),
        }
    }

    fn check(error: anyhow::Error) -> Self {
        Failure { code: 1, error }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if e.is_hypothesis() { 3 } else { 2 };
        Failure {
            code,
            error: e.into(),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(error: anyhow::Error) -> Self {
        Failure::input(error)
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {:#}", f.error);
            ExitCode::from(f.code)
        }
    }
}

fn run(cli: Cli) -> Outcome {
    if let Some(jobs) = cli.jobs {
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs.max(1))
            .build_global()
            .context("configuring the worker pool")?;
    }
    let caps = load_caps(cli.caps.as_deref())?;
    let format = cli.format;
    match cli.command {
        Command::Ring {
            command: RingCommand::Analyze { ring, j_s },
        } => {
            let ring = load_ring(&ring, &caps)?;
            let s = j_s.map(|s| parse_element(&ring, &s)).transpose()?;
            render::analysis(&ring, s, format)
        }
        Command::Matrix {
            command:
                MatrixCommand::Decide {
                    ring,
                    matrix,
                    s,
                    kind,
                    method,
                    verify,
                },
        } => {
            let ring = load_ring(&ring, &caps)?;
            let s = parse_element(&ring, &s)?;
            let kind: CleanKind = kind.parse()?;
            let ctx = FMContext::from_catalog(&ring, s, caps)?;
            let a = parse_matrix(&ring.ring, &matrix)?;
            let method = match method {
                MethodArg::Oracle => DecideMethod::Oracle,
                MethodArg::Auto => DecideMethod::Auto,
            };
            let verdict = decide(&ctx, &a, kind, method, verify)?;
            render::verdict(&ctx, &verdict, format)?;
            if verdict.agrees_with_oracle == Some(false) {
                return Err(Failure::check(anyhow!(
                    "the structural decision disagrees with the oracle"
                )));
            }
            Ok(())
        }
        Command::Suite {
            command: SuiteCommand::Run(args),
        } => suite_run(args, &caps, format),
        Command::Census { ring, s } => {
            let ring = load_ring(&ring, &caps)?;
            let values = match s {
                Some(s) => vec![parse_element(&ring, &s)?],
                None => ring.central_elements(),
            };
            let mut rows = Vec::new();
            for s in values {
                let ctx = FMContext::from_catalog(&ring, s, caps)?;
                rows.push(suite::census(&ctx, &ring.name)?);
            }
            render::census(&rows, format)
        }
        Command::Catalog {
            command: CatalogCommand::List,
        } => render::catalog(format),
    }
}

fn load_caps(flag: Option<&str>) -> Result<Caps, Failure> {
    let mut caps = Caps::default();
    if let Ok(env) = std::env::var("JCLEAN_CAPS") {
        caps = caps.with_overrides(&env).context("in JCLEAN_CAPS")?;
    }
    if let Some(flag) = flag {
        caps = caps.with_overrides(flag).context("in --caps")?;
    }
    caps.validate()?;
    Ok(caps)
}

/// A catalog name, or a path to a ring spec JSON file.
fn load_ring(arg: &str, caps: &Caps) -> Result<CatalogRing, Failure> {
    if catalog::spec(arg).is_some() && !Path::new(arg).exists() {
        return Ok(catalog::get(arg)?);
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path)
        .with_context(|| format!("{arg} is neither a catalog ring nor a readable file"))
        .map_err(Failure::input)?;
    let spec = RingSpec::from_json(&text)
        .with_context(|| format!("{}: malformed ring spec", path.display()))
        .map_err(Failure::input)?;
    let name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| arg.to_string());
    Ok(CatalogRing::from_spec(name, &spec, caps)?)
}

fn parse_element(ring: &CatalogRing, text: &str) -> Result<ElementId, Failure> {
    Ok(ring.ring.parse_element(text)?)
}

fn suite_run(args: SuiteArgs, caps: &Caps, format: Format) -> Outcome {
    let checks: Vec<CheckId> = if args.check.is_empty() {
        CheckId::ALL.to_vec()
    } else {
        args.check
            .iter()
            .map(|c| c.parse())
            .collect::<Result<_, _>>()?
    };
    let reports: Vec<CheckReport> = if args.default_catalog {
        let all = suite::run_all(&catalog::default_catalog(), caps);
        all.into_iter()
            .filter(|r| checks.contains(&r.check))
            .collect()
    } else {
        let name = args
            .ring
            .ok_or_else(|| Failure::input(anyhow!("give --default-catalog or --ring")))?;
        let ring = load_ring(&name, caps)?;
        let values = match &args.s {
            Some(s) => vec![parse_element(&ring, s)?],
            None => ring.central_elements(),
        };
        let mut out = Vec::new();
        for s in values {
            let ctx = FMContext::from_catalog(&ring, s, *caps)?;
            out.extend(suite::run_checks_in(&checks, &ring.name, &ctx));
        }
        out
    };
    render::reports(&reports, format)?;

    let count = |status| reports.iter().filter(|r| r.status == status).count();
    let (failed, aborted, gated) = (
        count(Status::Fail),
        count(Status::Aborted),
        count(Status::HypothesesNotMet),
    );
    eprintln!(
        "{} checks: {} pass, {failed} fail, {gated} hypotheses-not-met, {aborted} aborted",
        reports.len(),
        count(Status::Pass)
    );
    if gated > 0 && gated == reports.len() {
        eprintln!("notice: no check had its hypotheses met");
    }
    if failed > 0 {
        return Err(Failure::check(anyhow!("{failed} check(s) failed")));
    }
    if aborted > 0 {
        return Err(Failure::input(anyhow!(
            "{aborted} check(s) aborted; see notes"
        )));
    }
    Ok(())
}
