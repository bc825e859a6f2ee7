//! Command-line front end.
//!
//! Exit codes: 0 success, 1 invalid configuration or usage, 2 closed-form
//! mismatch against enumeration, 3 certification failure. Errors are written
//! to stderr as a JSON object `{"error": {"kind", "detail"}}`; requested
//! output files are written atomically.

use clap::{Parser, Subcommand, ValueEnum};
use kssdom::certify::CertifyError;
use kssdom::document::{certify_only, run_compute, to_json_string, write_atomic, ResultDocument, RunConfigFile};
use kssdom::render::{render_polygon_svg, render_polytope_mesh, RenderError};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const MAX_CLI_BOUNDARIES: usize = 6;
const DEFAULT_SCALE: u32 = 400;

#[derive(Parser)]
#[command(
    name = "kssdom",
    version,
    about = "Compute and certify stability domains of Fano pair families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the domain and write the full result document.
    Compute {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also compare the enumeration against the closed-form vertex lists.
        #[arg(long)]
        check_closed_form: bool,
    },
    /// Compute with the closed-form comparison always on.
    Check {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit only the certification report.
    Certify {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Draw the domain: SVG for two boundary divisors, OFF mesh for three.
    Render {
        #[arg(long)]
        config: PathBuf,
        #[arg(long, value_enum)]
        format: RenderFormat,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Pixels per unit coordinate (SVG only).
        #[arg(long)]
        scale: Option<u32>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RenderFormat {
    Svg,
    Mesh,
}

struct Failure {
    code: u8,
    kind: &'static str,
    detail: String,
}

impl Failure {
    fn new(code: u8, kind: &'static str, detail: impl Into<String>) -> Self {
        Failure { code, kind, detail: detail.into() }
    }
}

fn load_config(path: &Path) -> Result<RunConfigFile, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::new(1, "io", format!("cannot read {}: {e}", path.display())))?;
    let file: RunConfigFile = serde_json::from_str(&text)
        .map_err(|e| Failure::new(1, "parse", format!("{}: {e}", path.display())))?;
    if file.boundary_degrees.len() > MAX_CLI_BOUNDARIES {
        return Err(Failure::new(
            1,
            "unsupported",
            format!(
                "at most {MAX_CLI_BOUNDARIES} boundary divisors are supported here, configuration has {}",
                file.boundary_degrees.len()
            ),
        ));
    }
    Ok(file)
}

fn pipeline_failure(err: CertifyError) -> Failure {
    match err {
        CertifyError::Config(c) => Failure::new(1, "invalid_config", c.to_string()),
        other => Failure::new(3, "certification", other.to_string()),
    }
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(path) => write_atomic(path, contents)
            .map_err(|e| Failure::new(1, "io", format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn certification_gate(doc_all_verified: bool, vertex_count: usize) -> Result<(), Failure> {
    if doc_all_verified {
        Ok(())
    } else {
        Err(Failure::new(
            3,
            "certification",
            format!("certification did not verify all {vertex_count} vertices"),
        ))
    }
}

fn closed_form_gate(doc: &ResultDocument) -> Result<(), Failure> {
    match &doc.closed_form {
        Some(block) if block.matches_enumeration => Ok(()),
        Some(block) => {
            let listed: Vec<String> = block
                .points
                .iter()
                .map(|p| {
                    let coords: Vec<String> = p.iter().map(|c| c.to_string()).collect();
                    format!("({})", coords.join(", "))
                })
                .collect();
            Err(Failure::new(
                2,
                "closed_form_mismatch",
                format!("closed-form vertex list [{}] differs from enumeration", listed.join(", ")),
            ))
        }
        None => Err(Failure::new(
            1,
            "unsupported",
            "closed-form comparison needs at most three boundary divisors",
        )),
    }
}

fn compute_command(config: &Path, out: Option<&Path>, check_closed_form: bool) -> Result<(), Failure> {
    let file = load_config(config)?;
    let doc = run_compute(&file).map_err(pipeline_failure)?;
    emit(out, &to_json_string(&doc))?;
    if check_closed_form {
        closed_form_gate(&doc)?;
    }
    certification_gate(doc.certification.all_verified, doc.certification.vertex_count)
}

fn certify_command(config: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let file = load_config(config)?;
    let doc = certify_only(&file).map_err(pipeline_failure)?;
    emit(out, &to_json_string(&doc))?;
    certification_gate(doc.certification.all_verified, doc.certification.vertex_count)
}

fn render_command(
    config: &Path,
    format: RenderFormat,
    out: Option<&Path>,
    scale: Option<u32>,
) -> Result<(), Failure> {
    let file = load_config(config)?;
    let scale = scale
        .or_else(|| file.output.as_ref().and_then(|o| o.scale))
        .unwrap_or(DEFAULT_SCALE);
    if scale == 0 {
        return Err(Failure::new(1, "render", "scale must be positive"));
    }
    let doc = run_compute(&file).map_err(pipeline_failure)?;
    let rendered = match format {
        RenderFormat::Svg => render_polygon_svg(&doc, scale),
        RenderFormat::Mesh => render_polytope_mesh(&doc),
    }
    .map_err(|e: RenderError| Failure::new(1, "render", e.to_string()))?;
    emit(out, &rendered)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Compute { config, out, check_closed_form } => {
            compute_command(&config, out.as_deref(), check_closed_form)
        }
        Command::Check { config, out } => compute_command(&config, out.as_deref(), true),
        Command::Certify { config, out } => certify_command(&config, out.as_deref()),
        Command::Render { config, format, out, scale } => {
            render_command(&config, format, out.as_deref(), scale)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            let block = serde_json::json!({
                "error": { "kind": failure.kind, "detail": failure.detail }
            });
            eprintln!("{block}");
            ExitCode::from(failure.code)
        }
    }
}
