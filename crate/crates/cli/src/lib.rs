//! The `fed` command-line front end: document loading, subcommand dispatch
//! and report rendering.

pub mod fixtures;
pub mod report;
pub mod suite;
pub mod workspace;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand};
use fed_core::audit::{audit_module, enumerate_cyclic_family, gorenstein_symmetry_check, projective_dimension};
use fed_core::ext::{ext_dims, self_ext_degree};
use fed_core::resolution::{detect_periodicity, detect_termination, Resolution};
use serde::Serialize;

use report::{
    CriterionJson, ExtDegreeJson, ExtJson, FamilyAuditJson, InjdimJson, ModuleAuditJson, PdJson, PeriodicityJson,
    ResolveJson,
};
use workspace::{fixtures_dir, parse_workspace, Config, Format, Workspace, DEFAULT_CUTOFF, DEFAULT_SEED};

/// Exit code for parse and validation errors.
pub const EXIT_INPUT: i32 = 1;
/// Exit code for certified violations and internal-consistency failures.
pub const EXIT_FAILURE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "fed", version, about = "Extension degrees and homological invariants of finite-dimensional algebras")]
pub struct Cli {
    #[arg(long, global = true, value_enum, default_value = "text")]
    pub format: Format,
    #[arg(long, global = true, default_value_t = DEFAULT_CUTOFF)]
    pub cutoff: usize,
    #[arg(long, global = true, default_value_t = DEFAULT_SEED)]
    pub seed: u64,
    /// Documents or directories to load instead of the shipped fixtures.
    #[arg(long, global = true)]
    pub load: Vec<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parse and validate algebra and module documents.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Betti numbers and syzygy dimensions of a resolution.
    Resolve {
        module: String,
        #[arg(long)]
        upto: Option<usize>,
    },
    /// Dimensions of Ext^i(M, N) for i up to the cutoff.
    Ext { source: String, target: String },
    /// Certified self-extension degree.
    Extdeg { module: String },
    /// Certified projective dimension.
    Pd { module: String },
    /// Injective dimension of the regular module on both sides.
    Injdim { algebra: String },
    /// Every module-level check.
    AuditModule { module: String },
    /// Audit of the cyclic quotients generated by small radical elements.
    AuditFamily {
        algebra: String,
        /// Comma-separated coefficients for the generators.
        #[arg(long, default_value = "0,1")]
        coeffs: String,
        #[arg(long, default_value_t = 1)]
        max_gens: usize,
        #[arg(long, default_value_t = fed_core::audit::DEFAULT_ENUMERATION_LIMIT)]
        limit: usize,
    },
    /// Shipped fixture tasks.
    Fixtures {
        #[command(subcommand)]
        action: FixturesAction,
    },
}

#[derive(Debug, Subcommand)]
pub enum FixturesAction {
    /// Run the acceptance suite over the fixtures.
    Run,
    /// Write the fixture documents into a directory.
    Emit { dir: PathBuf },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: 0,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(e: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {e}\n"),
        }
    }
}

/// Parses `args` (program name first) and executes the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome::ok(text)
            };
        }
    };
    execute(cli)
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> String {
    match format {
        Format::Json => report::to_json(value),
        Format::Text => text(value),
    }
}

fn with_code(code: i32, stdout: String) -> Outcome {
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn load(cli: &Cli) -> std::result::Result<Workspace, workspace::WorkspaceError> {
    let paths = if cli.load.is_empty() { vec![fixtures_dir()] } else { cli.load.clone() };
    let mut ws = parse_workspace(&paths)?;
    ws.config = Config {
        cutoff: cli.cutoff,
        seed: cli.seed,
        format: cli.format,
        ..Config::default()
    };
    Ok(ws)
}

pub fn execute(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Validate { files } => return validate(files),
        Command::Fixtures {
            action: FixturesAction::Emit { dir },
        } => {
            return match emit_fixtures(dir) {
                Ok(n) => Outcome::ok(format!("wrote {n} files to {}\n", dir.display())),
                Err(e) => Outcome::input_error(format!("{e:#}")),
            }
        }
        _ => {}
    }
    let ws = match load(&cli) {
        Ok(ws) => ws,
        Err(e) => return Outcome::input_error(e),
    };
    match dispatch(&cli, &ws) {
        Ok(out) => out,
        Err(e) => Outcome::input_error(format!("{e:#}")),
    }
}

fn validate(files: &[PathBuf]) -> Outcome {
    let ws = match parse_workspace(files) {
        Ok(ws) => ws,
        Err(e) => return Outcome::input_error(e),
    };
    let mut lines = Vec::new();
    for (name, a) in &ws.algebras {
        let locality = if a.algebra.is_local() { "local" } else { "not local" };
        lines.push((name.clone(), format!("ok: {locality}, dim {}", a.algebra.dim())));
    }
    for (name, m) in &ws.modules {
        lines.push((name.clone(), format!("ok: module over {}, dim {}", m.algebra, m.module.dim())));
    }
    let out = match lines.as_slice() {
        [(_, only)] => format!("{only}\n"),
        _ => lines.iter().map(|(n, l)| format!("{n}: {l}\n")).collect(),
    };
    Outcome::ok(out)
}

fn emit_fixtures(dir: &std::path::Path) -> Result<usize> {
    let docs = fixtures::documents();
    for (rel, text) in &docs {
        let path = dir.join(rel);
        if let Some(parent) = path.parent() {
            fs::create_dir_all(parent).with_context(|| parent.display().to_string())?;
        }
        fs::write(&path, text).with_context(|| path.display().to_string())?;
    }
    Ok(docs.len())
}

fn dispatch(cli: &Cli, ws: &Workspace) -> Result<Outcome> {
    let (format, cutoff, seed) = (cli.format, cli.cutoff, cli.seed);
    let out = match &cli.command {
        Command::Validate { .. } | Command::Fixtures { action: FixturesAction::Emit { .. } } => unreachable!(),
        Command::Resolve { module, upto } => {
            let upto = upto.unwrap_or(cutoff);
            let m = ws.module(module)?;
            let mut r = Resolution::auto(m.clone());
            r.extend_to(upto)?;
            let betti = r.betti();
            let syzygy_dims = (0..=betti.len()).map(|n| r.syzygy(n).map_or(0, |s| s.dim())).collect();
            let terminated_at = detect_termination(&r);
            let periodicity = match terminated_at {
                None if m.algebra().is_local() => detect_periodicity(&r, upto, seed).map(|c| PeriodicityJson {
                    start: c.start,
                    period: c.period,
                    seed: c.iso.seed_used,
                    trial: c.iso.trial,
                }),
                _ => None,
            };
            let report = ResolveJson {
                module: module.clone(),
                upto,
                betti,
                syzygy_dims,
                minimal: r.is_minimal(),
                terminated_at,
                periodicity,
            };
            Outcome::ok(emit(format, &report, report::render_resolve))
        }
        Command::Ext { source, target } => {
            let p = ext_dims(ws.module(source)?, ws.module(target)?, cutoff)?;
            let report = ExtJson {
                source: source.clone(),
                target: target.clone(),
                cutoff,
                dims: p.dims,
            };
            Outcome::ok(emit(format, &report, report::render_ext))
        }
        Command::Extdeg { module } => {
            let r = self_ext_degree(ws.module(module)?, cutoff, seed)?;
            let report = ExtDegreeJson::new(module, &r);
            Outcome::ok(emit(format, &report, report::render_extdeg))
        }
        Command::Pd { module } => {
            let r = projective_dimension(ws.module(module)?, cutoff, seed)?;
            let code = if r.internal_failure() { EXIT_FAILURE } else { 0 };
            let report = PdJson::new(module, &r);
            with_code(code, emit(format, &report, report::render_pd))
        }
        Command::Injdim { algebra } => {
            let g = gorenstein_symmetry_check(ws.algebra(algebra)?, cutoff, seed)?;
            let report = InjdimJson::new(algebra, &g);
            let broken = report.symmetry_equality == Some(false) || report.symmetry_inequality == Some(false);
            let code = if broken { EXIT_FAILURE } else { 0 };
            with_code(code, emit(format, &report, report::render_injdim))
        }
        Command::AuditModule { module } => {
            let a = audit_module(module.clone(), ws.module(module)?, cutoff, seed)?;
            let report = ModuleAuditJson::new(&a);
            let code = if report.has_failure() { EXIT_FAILURE } else { 0 };
            with_code(code, emit(format, &report, report::render_module_audit))
        }
        Command::AuditFamily {
            algebra,
            coeffs,
            max_gens,
            limit,
        } => {
            let a = ws.algebra(algebra)?;
            let coefficients = coeffs
                .split(',')
                .map(|c| a.field().parse(c.trim()))
                .collect::<std::result::Result<Vec<_>, _>>()
                .with_context(|| format!("bad coefficient list {coeffs:?}"))?;
            let family = enumerate_cyclic_family(a, &coefficients, *max_gens, *limit, seed)?;
            let r = fed_core::audit::audit_family(a, &family, cutoff, seed)?;
            let code = if r.has_failure() { EXIT_FAILURE } else { 0 };
            let report = FamilyAuditJson::new(algebra, seed, &r);
            with_code(code, emit(format, &report, report::render_family))
        }
        Command::Fixtures {
            action: FixturesAction::Run,
        } => {
            let results: Vec<CriterionJson> = suite::run_all(ws);
            let code = if results.iter().all(|r| r.passed) { 0 } else { EXIT_FAILURE };
            with_code(code, emit(format, &results, |r| report::render_criteria(r)))
        }
    };
    Ok(out)
}
