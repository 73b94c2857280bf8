//! Command-line interface: one subcommand per operation.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::checks::{run_criterion, CheckError, CheckOptions, Groups, CRITERIA};
use crate::coset::{EnumLimits, Strategy};
use crate::group::{GroupCtx, GroupError};
use crate::hyperocta::{kernel, theta_plane_word};
use crate::models::{
    format_profile, stem_report, verify_2o, verify_matrix_model, Model, ModelError,
};
use crate::report::Report;
use crate::sopath::{
    compile_path, contract, perm_matrix, reduce_local_word, snap_to_word_refining, stall_witness,
    FlowParams, FlowResult, PathError, RotationPath,
};
use crate::words::{
    format_plane_word, parse_plane_word, parse_word, presentation_for, Variant, WordError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Dot,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "spincover",
    version,
    about = "Finite groups of generating paths in SO(n) and their checks"
)]
pub struct Cli {
    /// Rank n (number of axes).
    #[arg(long, global = true, default_value_t = 3)]
    pub n: usize,
    #[arg(long, global = true, default_value = "standard")]
    pub variant: Variant,
    /// Seed for jittered flows and random samples.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Group order by coset enumeration.
    Order {
        #[arg(long, default_value = "hlt")]
        strategy: Strategy,
    },
    /// Element table: id, canonical form, order, θ image.
    Elements,
    /// Canonical form of the element of a word.
    NormalForm {
        #[arg(long)]
        word: String,
    },
    /// Canonical form of a product.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// Elements mapped to the identity signed permutation.
    Kernel,
    /// Central elements.
    Center,
    /// Quotient by a central element of order 2.
    Quotient {
        #[arg(long, default_value = "R1^4")]
        z: String,
    },
    /// Cayley graph in DOT.
    Cayley,
    /// Coset table over the trivial subgroup.
    Table,
    /// Exact models of the order-48 extensions.
    #[command(subcommand)]
    Models(ModelsCommand),
    /// Paths in SO(n).
    #[command(subcommand)]
    Path(PathCommand),
    /// Presentations.
    #[command(subcommand)]
    Presentations(PresentationsCommand),
    /// Acceptance criteria.
    Verify {
        /// Criterion number, 1 to 14.
        #[arg(long, conflicts_with = "all")]
        criterion: Option<usize>,
        #[arg(long)]
        all: bool,
    },
}

#[derive(Debug, Subcommand)]
pub enum ModelsCommand {
    Verify {
        #[arg(long, default_value = "2o")]
        which: Model,
    },
    Stem {
        #[arg(long, default_value = "2o")]
        which: Model,
    },
}

#[derive(Debug, Args)]
pub struct PathWord {
    /// Plane-letter word such as `R21 R32 R13 R23`.
    #[arg(long)]
    pub word: String,
    #[arg(long, default_value_t = 16)]
    pub samples: usize,
}

#[derive(Debug, Subcommand)]
pub enum PathCommand {
    /// Samples of the compiled path as CSV.
    Compile(PathWord),
    /// Contract a closed path by the flow.
    Contract(PathWord),
    /// Run the flow as a stall witness.
    Stall(PathWord),
    /// Word of nearest-element crossings along a compiled path, or along the
    /// retracted straight path to the endpoint with `--geodesic`.
    Snap {
        #[command(flatten)]
        path: PathWord,
        #[arg(long)]
        geodesic: bool,
    },
    /// Reduce a local closed word to the empty word.
    Reduce {
        #[arg(long)]
        word: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum PresentationsCommand {
    Emit,
}

#[derive(thiserror::Error, Debug)]
pub enum CliError {
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Path(#[from] PathError),
    #[error(transparent)]
    Check(#[from] CheckError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("{0}")]
    Usage(String),
}

/// Outcome of a command that ran to completion.
enum Outcome {
    Done,
    Checked(bool),
}

/// Parses `args` (including the program name) and runs the command.
///
/// Exit status: 0 on success or all checks passing, 1 on a failed check or
/// a module error, 2 on a usage error.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(Outcome::Done) | Ok(Outcome::Checked(true)) => 0,
        Ok(Outcome::Checked(false)) => 1,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(CliError::Io(e)) if e.kind() == std::io::ErrorKind::BrokenPipe => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            1
        }
    }
}

fn group(cli: &Cli) -> Result<GroupCtx, CliError> {
    Ok(GroupCtx::new(cli.n, cli.variant)?)
}

fn emit_json(out: &mut dyn Write, v: &Value) -> Result<(), CliError> {
    writeln!(
        out,
        "{}",
        serde_json::to_string_pretty(v).expect("json value serializes")
    )?;
    Ok(())
}

fn emit_report(cli: &Cli, out: &mut dyn Write, r: &Report) -> Result<Outcome, CliError> {
    match cli.format {
        Format::Json => writeln!(out, "{}", r.to_json())?,
        _ => {
            write!(out, "{}", r.to_text())?;
            writeln!(out, "{}: {}", r.title, if r.pass { "PASS" } else { "FAIL" })?;
        }
    }
    Ok(Outcome::Checked(r.pass))
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Order { strategy } => {
            let p = presentation_for(cli.n, cli.variant)?;
            let limits = EnumLimits {
                strategy: *strategy,
                ..EnumLimits::default()
            };
            let order = crate::coset::group_order(&p, limits).map_err(GroupError::from)?;
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &json!({"n": cli.n, "order": order, "variant": cli.variant.to_string()}),
                )?,
                _ => writeln!(out, "{order}")?,
            }
        }
        Command::Elements => {
            let g = group(cli)?;
            let recs = g.element_records()?;
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &serde_json::to_value(&recs).expect("records serialize"),
                )?,
                _ => {
                    for r in recs {
                        writeln!(out, "{} {} {} {}", r.id, r.canonical, r.order, r.theta)?;
                    }
                }
            }
        }
        Command::NormalForm { word } => {
            let g = group(cli)?;
            let e = g.element_from_word(&parse_word(word, cli.n)?)?;
            let label = g.label(e)?;
            match cli.format {
                Format::Json => emit_json(out, &json!({"canonical": label, "id": e.id()}))?,
                _ => writeln!(out, "{label}")?,
            }
        }
        Command::Mul { a, b } => {
            let g = group(cli)?;
            let x = g.element_from_word(&parse_word(a, cli.n)?)?;
            let y = g.element_from_word(&parse_word(b, cli.n)?)?;
            let p = g.multiply(x, y)?;
            let label = g.label(p)?;
            match cli.format {
                Format::Json => emit_json(out, &json!({"canonical": label, "id": p.id()}))?,
                _ => writeln!(out, "{label}")?,
            }
        }
        Command::Kernel => {
            let g = group(cli)?;
            let ker = kernel(&g)?;
            element_list(cli, out, &g, &ker)?;
        }
        Command::Center => {
            let g = group(cli)?;
            let c = g.center();
            element_list(cli, out, &g, &c)?;
        }
        Command::Quotient { z } => {
            let g = group(cli)?;
            let ze = g.element_from_word(&parse_word(z, cli.n)?)?;
            let q = g.quotient(ze, EnumLimits::default())?;
            match cli.format {
                Format::Dot => write!(out, "{}", q.cayley_dot()?)?,
                Format::Json => {
                    let prof = q.order_profile()?;
                    let prof: serde_json::Map<String, Value> = prof
                        .iter()
                        .map(|(k, v)| (k.to_string(), json!(v)))
                        .collect();
                    emit_json(out, &json!({"order": q.order(), "profile": prof}))?
                }
                _ => {
                    writeln!(out, "order: {}", q.order())?;
                    writeln!(out, "profile: {}", format_profile(&q.order_profile()?))?;
                }
            }
        }
        Command::Cayley => {
            let g = group(cli)?;
            write!(out, "{}", g.cayley_dot()?)?;
        }
        Command::Table => {
            let g = group(cli)?;
            write!(out, "{}", g.table().to_text())?;
        }
        Command::Models(m) => {
            let r = match m {
                ModelsCommand::Verify { which } => match which {
                    Model::BinaryOctahedral => verify_2o()?,
                    other => verify_matrix_model(*other)?,
                },
                ModelsCommand::Stem { which } => stem_report(*which)?,
            };
            return emit_report(cli, out, &r);
        }
        Command::Presentations(PresentationsCommand::Emit) => {
            let p = presentation_for(cli.n, cli.variant)?;
            write!(out, "{}", p.to_text())?;
        }
        Command::Path(pc) => return path_command(cli, pc, out),
        Command::Verify { criterion, all } => {
            let ks: Vec<usize> = match (criterion, all) {
                (Some(k), _) => vec![*k],
                (None, true) => (1..=CRITERIA).collect(),
                (None, false) => {
                    return Err(CliError::Usage("pass --criterion <k> or --all".into()))
                }
            };
            if ks.iter().any(|&k| k == 0 || k > CRITERIA) {
                return Err(CliError::Usage(format!(
                    "criteria are numbered 1 to {CRITERIA}"
                )));
            }
            let groups = Groups::new();
            let opts = CheckOptions {
                seed: cli.seed,
                ..CheckOptions::default()
            };
            let mut pass = true;
            let mut reports = Vec::new();
            for k in ks {
                let r = run_criterion(k, &groups, &opts)?;
                pass &= r.pass;
                reports.push(r);
            }
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &serde_json::to_value(&reports).expect("reports serialize"),
                )?,
                _ => {
                    for r in &reports {
                        write!(out, "{}", r.to_text())?;
                    }
                    for r in &reports {
                        writeln!(out, "{}: {}", r.title, if r.pass { "PASS" } else { "FAIL" })?;
                    }
                }
            }
            return Ok(Outcome::Checked(pass));
        }
    }
    Ok(Outcome::Done)
}

fn element_list(
    cli: &Cli,
    out: &mut dyn Write,
    g: &GroupCtx,
    es: &[crate::group::Element],
) -> Result<(), CliError> {
    match cli.format {
        Format::Json => {
            let v: Vec<Value> = es
                .iter()
                .map(|&e| Ok(json!({"canonical": g.label(e)?, "id": e.id()})))
                .collect::<Result<_, GroupError>>()?;
            emit_json(out, &Value::Array(v))?;
        }
        _ => {
            for &e in es {
                writeln!(out, "{}", g.label(e)?)?;
            }
        }
    }
    Ok(())
}

fn flow_params(cli: &Cli) -> FlowParams {
    FlowParams {
        seed: cli.seed,
        ..FlowParams::default()
    }
}

fn emit_flow(cli: &Cli, out: &mut dyn Write, r: &FlowResult) -> Result<(), CliError> {
    match cli.format {
        Format::Csv => write!(out, "{}", r.trace_csv())?,
        Format::Json => {
            let attempts: Vec<Value> = r
                .attempts
                .iter()
                .map(|a| {
                    json!({
                        "iterations": a.iterations,
                        "max_d": a.max_d,
                        "path_max_d": a.path_max_d,
                        "samples": a.samples,
                        "seed": a.seed,
                        "verdict": a.verdict.as_str(),
                    })
                })
                .collect();
            emit_json(
                out,
                &json!({
                    "attempts": attempts,
                    "final_max_d": r.final_max_d,
                    "final_path_max_d": r.final_path_max_d,
                    "iterations": r.iterations,
                    "verdict": r.verdict.as_str(),
                }),
            )?
        }
        _ => {
            for (k, a) in r.attempts.iter().enumerate() {
                let seed = a.seed.map_or("none".to_string(), |s| s.to_string());
                writeln!(
                    out,
                    "attempt {k} seed {seed}: {} after {} iterations, max-D {:.6e}, path max-D {:.12}",
                    a.verdict.as_str(),
                    a.iterations,
                    a.max_d,
                    a.path_max_d
                )?;
            }
            writeln!(out, "verdict: {}", r.verdict.as_str())?;
            writeln!(out, "iterations: {}", r.iterations)?;
            writeln!(out, "final max-D: {:.6e}", r.final_max_d)?;
        }
    }
    Ok(())
}

fn path_command(cli: &Cli, pc: &PathCommand, out: &mut dyn Write) -> Result<Outcome, CliError> {
    let n = cli.n;
    match pc {
        PathCommand::Compile(pw) => {
            let w = parse_plane_word(&pw.word, n)?;
            write!(out, "{}", compile_path(&w, n, pw.samples)?.to_csv())?;
        }
        PathCommand::Contract(pw) => {
            let p = compile_path(&parse_plane_word(&pw.word, n)?, n, pw.samples)?;
            let r = contract(&p, &flow_params(cli))?;
            emit_flow(cli, out, &r)?;
        }
        PathCommand::Stall(pw) => {
            let p = compile_path(&parse_plane_word(&pw.word, n)?, n, pw.samples)?;
            let r = stall_witness(&p, &flow_params(cli))?;
            emit_flow(cli, out, &r)?;
        }
        PathCommand::Snap { path, geodesic } => {
            let w = parse_plane_word(&path.word, n)?;
            let p = if *geodesic {
                let target = perm_matrix(&theta_plane_word(&w, n).map_err(PathError::from)?);
                RotationPath::interpolate_to(&target, path.samples.max(2))?
            } else {
                compile_path(&w, n, path.samples)?
            };
            let s = snap_to_word_refining(&p, 4)?;
            match cli.format {
                Format::Json => emit_json(out, &json!({"word": format_plane_word(&s)}))?,
                _ => writeln!(out, "{}", format_plane_word(&s))?,
            }
        }
        PathCommand::Reduce { word } => {
            let w = parse_plane_word(word, n)?;
            let r = reduce_local_word(&w, n)?;
            match cli.format {
                Format::Json => emit_json(
                    out,
                    &serde_json::to_value(&r).expect("reduction serializes"),
                )?,
                _ => write!(out, "{}", r.to_text()?)?,
            }
        }
    }
    Ok(Outcome::Done)
}
