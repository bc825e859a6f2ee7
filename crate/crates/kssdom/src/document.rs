//! Run configuration files, result documents, and the full pipeline.
//!
//! Documents are JSON with every rational rendered as a `p/q` string; no
//! decimals appear anywhere. Serialization round-trips losslessly, which the
//! test suite checks by structural equality after a parse of the serialized
//! form.

use crate::certify::{certify_domain, CertificationReport, CertifyError};
use crate::closed_form::closed_form_vertices;
use crate::config::{Branch, ConfigError, PairConfig};
use crate::numeric::{RatVector, Rational};
use crate::polytope::{build_halfspace_system, enumerate_vertices};
use serde::{Deserialize, Serialize};
use std::io::{self, Write};
use std::path::Path;

fn default_true() -> bool {
    true
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AmbientBlock {
    pub projective_dim: usize,
    #[serde(default)]
    pub ci_degrees: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputOptions {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub scale: Option<u32>,
}

/// On-disk run request.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfigFile {
    pub ambient: AmbientBlock,
    pub boundary_degrees: Vec<u32>,
    #[serde(default = "default_true")]
    pub assume_ci_kss: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<OutputOptions>,
}

impl RunConfigFile {
    pub fn to_pair_config(&self) -> Result<PairConfig, ConfigError> {
        Ok(PairConfig::validate(
            self.ambient.projective_dim,
            self.ambient.ci_degrees.clone(),
            self.boundary_degrees.clone(),
        )?
        .with_assume_ci_kss(self.assume_ci_kss))
    }

    pub fn from_parts(projective_dim: usize, ci_degrees: Vec<u32>, boundary_degrees: Vec<u32>) -> Self {
        RunConfigFile {
            ambient: AmbientBlock { projective_dim, ci_degrees },
            boundary_degrees,
            assume_ci_kss: true,
            output: None,
        }
    }
}

/// Input echo plus the derived dimension and level.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub ambient: AmbientBlock,
    pub boundary_degrees: Vec<u32>,
    pub assume_ci_kss: bool,
    pub dimension: i64,
    pub level: i64,
}

impl ConfigEcho {
    fn from_config(config: &PairConfig) -> Self {
        ConfigEcho {
            ambient: AmbientBlock {
                projective_dim: config.projective_dim(),
                ci_degrees: config.ci_degrees().to_vec(),
            },
            boundary_degrees: config.boundary_degrees().to_vec(),
            assume_ci_kss: config.assume_ci_kss(),
            dimension: config.dimension(),
            level: config.level(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HalfspaceDoc {
    pub label: String,
    pub constant: Rational,
    pub coefficients: Vec<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexDoc {
    pub point: RatVector,
    pub active: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormNoteDoc {
    pub source: String,
    pub point: RatVector,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosedFormDoc {
    pub branch: Branch,
    pub points: Vec<RatVector>,
    pub notes: Vec<ClosedFormNoteDoc>,
    pub matches_enumeration: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub config: ConfigEcho,
    pub branch: Branch,
    pub halfspaces: Vec<HalfspaceDoc>,
    pub vertices: Vec<VertexDoc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedFormDoc>,
    pub certification: CertificationReport,
}

/// Certification-only document, the `certify` subcommand output.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyDocument {
    pub config: ConfigEcho,
    pub certification: CertificationReport,
}

/// Full pipeline: validate, build the halfspace system, enumerate vertices,
/// attach the closed-form comparison where available (k <= 3), certify.
pub fn run_compute(file: &RunConfigFile) -> Result<ResultDocument, CertifyError> {
    let config = file.to_pair_config()?;
    let system = build_halfspace_system(&config);
    let vertex_set = enumerate_vertices(&system);

    let halfspaces = system
        .forms()
        .iter()
        .map(|f| HalfspaceDoc {
            label: f.label.to_string(),
            constant: f.constant.clone(),
            coefficients: f.coefficients.clone(),
        })
        .collect();
    let vertices = vertex_set
        .vertices
        .iter()
        .map(|v| VertexDoc {
            point: v.point.clone(),
            active: v.active.iter().map(|l| l.to_string()).collect(),
        })
        .collect();

    let closed_form = if config.boundary_count() <= 3 {
        let closed = closed_form_vertices(&config).expect("k <= 3");
        let enumerated: Vec<RatVector> = vertex_set.points();
        Some(ClosedFormDoc {
            branch: closed.branch,
            matches_enumeration: closed.points == enumerated,
            points: closed.points,
            notes: closed
                .notes
                .into_iter()
                .map(|e| ClosedFormNoteDoc { source: e.source, point: e.point })
                .collect(),
        })
    } else {
        None
    };

    let certification = certify_domain(&config)?;

    Ok(ResultDocument {
        config: ConfigEcho::from_config(&config),
        branch: config.branch(),
        halfspaces,
        vertices,
        closed_form,
        certification,
    })
}

pub fn certify_only(file: &RunConfigFile) -> Result<CertifyDocument, CertifyError> {
    let config = file.to_pair_config()?;
    let certification = certify_domain(&config)?;
    Ok(CertifyDocument { config: ConfigEcho::from_config(&config), certification })
}

/// Serializes with a trailing newline; documents are meant to be diffable.
pub fn to_json_string<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("document types serialize");
    s.push('\n');
    s
}

/// Write via a temporary file in the destination directory plus rename, so
/// readers never observe a partial document.
pub fn write_atomic(path: &Path, contents: &str) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents.as_bytes())?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}
