//! Command-line front end. [`execute`] does all the work and returns the text
//! to print plus the exit code, so it can be driven from tests.

use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use crate::deform::{check_module, verify_catalog, ModuleCheck};
use crate::error::{Error, Result};
use crate::format::{parse_quiver_file, parse_rep_file, write_rep_file, QuiverFile};
use crate::indec::construct_indecomposable;
use crate::par::Execution;
use crate::quiver::{classify, euler_form, require_finite_type, Classification, DimVector, Quiver};
use crate::rep::{ext1_space, hom_space, is_schur, Representation};
use crate::roots::positive_roots;
use crate::xlinalg::{FieldSpec, Matrix};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Table,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "quiver-udr",
    version,
    about = "Exact computations with quiver representations"
)]
pub struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = OutputFormat::Table, global = true)]
    pub format: OutputFormat,
    /// Seed for every randomized step.
    #[arg(long, default_value_t = 0, global = true)]
    pub seed: u64,
    /// Run catalog work on one thread.
    #[arg(long, global = true)]
    pub sequential: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Finite or infinite representation type, with the Dynkin components.
    Classify { quiver: PathBuf },
    /// Positive roots of a finite-type quiver.
    Roots { quiver: PathBuf },
    /// The indecomposable with a given dimension vector, as a representation file.
    Indec {
        quiver: PathBuf,
        /// Comma-separated dimensions in vertex declaration order.
        #[arg(long)]
        dim: String,
        #[arg(long, default_value = "Q")]
        field: String,
    },
    /// dim Hom, dim Ext^1 and the Euler form between two representations.
    Ext {
        quiver: PathBuf,
        #[arg(long)]
        from: PathBuf,
        #[arg(long)]
        to: PathBuf,
    },
    /// Checks End = k and Ext^1 = 0 for every indecomposable (or one of them).
    VerifyUdr {
        quiver: PathBuf,
        #[arg(long, default_value = "Q")]
        field: String,
        #[arg(long)]
        dim: Option<String>,
        /// Random first-order lifts to test against the trivial lift, per module.
        #[arg(long, default_value_t = 2)]
        lifts: usize,
    },
}

/// What the process should print to stdout and exit with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Output {
    pub stdout: String,
    pub exit_code: i32,
}

impl Output {
    fn ok(stdout: String) -> Self {
        Self {
            stdout,
            exit_code: 0,
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        message: e.to_string(),
    })
}

fn load_quiver(path: &Path) -> Result<QuiverFile> {
    parse_quiver_file(&read(path)?)
}

pub fn parse_dim(text: &str, q: &Quiver) -> Result<DimVector> {
    let coords = text
        .split(',')
        .map(|c| c.trim().parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| {
            Error::InvalidArgument(format!(
                "`{text}` is not a comma-separated list of dimensions"
            ))
        })?;
    if coords.len() != q.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "--dim has {} coordinates but the quiver has {} vertices",
            coords.len(),
            q.vertex_count()
        )));
    }
    Ok(DimVector::new(coords))
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|i| {
                Value::Array(
                    (0..m.cols())
                        .map(|j| Value::String(m.get(i, j).to_string()))
                        .collect(),
                )
            })
            .collect(),
    )
}

fn report(command: &str, quiver: &str, field: Option<FieldSpec>, result: Value) -> String {
    let doc = json!({
        "command": command,
        "quiver": quiver,
        "field": field.map(|f| f.to_string()),
        "result": result,
        "version": VERSION,
    });
    let mut out = serde_json::to_string_pretty(&doc).expect("plain JSON values serialize");
    out.push('\n');
    out
}

pub fn execute(cli: &Cli) -> Result<Output> {
    let execution = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match &cli.command {
        Command::Classify { quiver } => cmd_classify(&load_quiver(quiver)?, cli.format),
        Command::Roots { quiver } => cmd_roots(&load_quiver(quiver)?, cli.format),
        Command::Indec { quiver, dim, field } => {
            let qf = load_quiver(quiver)?;
            let d = parse_dim(dim, &qf.quiver)?;
            cmd_indec(&qf, &d, field.parse()?, cli.format)
        }
        Command::Ext { quiver, from, to } => {
            let qf = load_quiver(quiver)?;
            let m = parse_rep_file(&read(from)?, &qf.quiver)?;
            let n = parse_rep_file(&read(to)?, &qf.quiver)?;
            cmd_ext(&qf, &m.name, &m.rep, &n.name, &n.rep, cli.format)
        }
        Command::VerifyUdr {
            quiver,
            field,
            dim,
            lifts,
        } => {
            let qf = load_quiver(quiver)?;
            let d = dim
                .as_deref()
                .map(|d| parse_dim(d, &qf.quiver))
                .transpose()?;
            cmd_verify_udr(
                &qf,
                field.parse()?,
                d.as_ref(),
                *lifts,
                cli.seed,
                execution,
                cli.format,
            )
        }
    }
}

pub fn cmd_classify(qf: &QuiverFile, format: OutputFormat) -> Result<Output> {
    let q = &qf.quiver;
    let verdict = classify(q)?;
    let labels = |vs: &[usize]| {
        vs.iter()
            .map(|&v| q.label(v).to_string())
            .collect::<Vec<_>>()
    };
    let stdout = match (&verdict, format) {
        (Classification::FiniteType(comps), OutputFormat::Table) => {
            let mut out = format!("{}: finite type\n", qf.name);
            for c in comps {
                out.push_str(&format!(
                    "  {} on {{{}}}\n",
                    c.dynkin,
                    labels(&c.vertices).join(", ")
                ));
            }
            out
        }
        (Classification::InfiniteType(w), OutputFormat::Table) => {
            format!("{}: infinite type ({w})\n", qf.name)
        }
        (Classification::FiniteType(comps), OutputFormat::Json) => {
            let comps: Vec<Value> = comps
                .iter()
                .map(|c| json!({"type": c.dynkin.to_string(), "vertices": labels(&c.vertices)}))
                .collect();
            report(
                "classify",
                &qf.name,
                None,
                json!({"finite": true, "components": comps, "witness": null}),
            )
        }
        (Classification::InfiniteType(w), OutputFormat::Json) => report(
            "classify",
            &qf.name,
            None,
            json!({"finite": false, "components": [], "witness": w}),
        ),
    };
    Ok(Output {
        stdout,
        exit_code: if verdict.is_finite() { 0 } else { 2 },
    })
}

pub fn cmd_roots(qf: &QuiverFile, format: OutputFormat) -> Result<Output> {
    let roots = positive_roots(&qf.quiver)?;
    Ok(Output::ok(match format {
        OutputFormat::Table => {
            let mut out = format!("{}: {} positive roots\n", qf.name, roots.len());
            for r in roots.roots() {
                out.push_str(&format!("  {r}\n"));
            }
            out
        }
        OutputFormat::Json => report(
            "roots",
            &qf.name,
            None,
            json!({"count": roots.len(), "roots": roots.roots()}),
        ),
    }))
}

pub fn cmd_indec(
    qf: &QuiverFile,
    d: &DimVector,
    field: FieldSpec,
    format: OutputFormat,
) -> Result<Output> {
    let q = &qf.quiver;
    let m = construct_indecomposable(q, d, field)?;
    let name = format!(
        "M{}",
        d.coords()
            .iter()
            .map(|c| format!("_{c}"))
            .collect::<String>()
    );
    let text = write_rep_file(&name, &m);
    let back = parse_rep_file(&text, q)?;
    if back.rep != m {
        return Err(Error::Internal(
            "emitted representation file does not re-parse to itself".into(),
        ));
    }
    let ext_dim = ext1_space(&m, &m)?.dimension();
    if !is_schur(&m)? || ext_dim != 0 {
        return Err(Error::Internal(format!(
            "constructed module at {d} is not a brick without self-extensions"
        )));
    }
    Ok(Output::ok(match format {
        OutputFormat::Table => text,
        OutputFormat::Json => {
            let maps: serde_json::Map<String, Value> = q
                .arrows()
                .iter()
                .zip(m.maps())
                .map(|(a, f)| (a.id.clone(), matrix_json(f)))
                .collect();
            report(
                "indec",
                &qf.name,
                Some(field),
                json!({"dims": d, "end_dim": 1, "ext_dim": ext_dim, "maps": maps, "rep_file": text}),
            )
        }
    }))
}

pub fn cmd_ext(
    qf: &QuiverFile,
    from_name: &str,
    m: &Representation,
    to_name: &str,
    n: &Representation,
    format: OutputFormat,
) -> Result<Output> {
    if m.field() != n.field() {
        return Err(Error::Mismatch(format!(
            "`{from_name}` is over {} but `{to_name}` is over {}",
            m.field(),
            n.field()
        )));
    }
    if m.quiver() != &qf.quiver || n.quiver() != &qf.quiver {
        return Err(Error::Mismatch(
            "representations live on a different quiver".into(),
        ));
    }
    let hom = hom_space(m, n)?.dimension();
    let ext = ext1_space(m, n)?.dimension();
    let euler = euler_form(&qf.quiver, m.dims(), n.dims())?;
    if hom as i64 - ext as i64 != euler {
        return Err(Error::Internal(format!(
            "dim Hom - dim Ext^1 = {hom} - {ext} but the Euler form gives {euler}"
        )));
    }
    Ok(Output::ok(match format {
        OutputFormat::Table => format!(
            "{from_name} -> {to_name} over {}\n  hom   {hom}\n  ext   {ext}\n  euler {euler}\n",
            m.field()
        ),
        OutputFormat::Json => report(
            "ext",
            &qf.name,
            Some(m.field()),
            json!({"from": from_name, "to": to_name, "hom_dim": hom, "ext_dim": ext, "euler": euler}),
        ),
    }))
}

fn check_json(c: &ModuleCheck) -> Value {
    json!({
        "dims": c.report.dims,
        "end_dim": c.report.end_dim,
        "ext_dim": c.report.ext_dim,
        "verdict": c.report.verdict.to_string(),
        "lifts_sampled": c.lifts_sampled,
        "lifts_trivial": c.lifts_trivial,
        "verified": c.verified(),
    })
}

pub fn summary_line(verified: usize, total: usize) -> String {
    let head = if verified == total {
        "THEOREM VERIFIED"
    } else {
        "THEOREM FAILED"
    };
    format!("{head}: {verified}/{total} indecomposables have R(kQ,M) ≅ k")
}

pub fn cmd_verify_udr(
    qf: &QuiverFile,
    field: FieldSpec,
    dim: Option<&DimVector>,
    lifts: usize,
    seed: u64,
    execution: Execution,
    format: OutputFormat,
) -> Result<Output> {
    let q = &qf.quiver;
    require_finite_type(q)?;
    let checks = match dim {
        Some(d) => {
            let m = construct_indecomposable(q, d, field)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            vec![check_module(q, &m, lifts, &mut rng)?]
        }
        None => verify_catalog(q, field, lifts, seed, execution)?,
    };
    let verified = checks.iter().filter(|c| c.verified()).count();
    let summary = summary_line(verified, checks.len());
    let stdout = match format {
        OutputFormat::Table => {
            let width = checks
                .iter()
                .map(|c| c.report.dims.to_string().len())
                .max()
                .unwrap_or(4)
                .max(4);
            let mut out = format!("{:<width$}  end  ext  lifts  verdict\n", "root");
            for c in &checks {
                out.push_str(&format!(
                    "{:<width$}  {:>3}  {:>3}  {:>5}  {}\n",
                    c.report.dims.to_string(),
                    c.report.end_dim,
                    c.report.ext_dim,
                    format!("{}/{}", c.lifts_trivial, c.lifts_sampled),
                    c.report.verdict
                ));
            }
            out.push_str(&summary);
            out.push('\n');
            out
        }
        OutputFormat::Json => report(
            "verify-udr",
            &qf.name,
            Some(field),
            json!({
                "entries": checks.iter().map(check_json).collect::<Vec<_>>(),
                "lifts_per_module": lifts,
                "seed": seed,
                "total": checks.len(),
                "verified": verified,
                "all_isomorphic_to_k": verified == checks.len(),
                "summary": summary,
            }),
        ),
    };
    Ok(Output {
        stdout,
        exit_code: if verified == checks.len() { 0 } else { 5 },
    })
}
