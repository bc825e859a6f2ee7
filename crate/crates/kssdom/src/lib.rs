//! Exact computation of K-semistability domains for log Fano pairs on
//! complete intersections.
//!
//! A pair configuration names a smooth complete intersection `X` inside a
//! projective space together with a list of boundary hypersurface degrees.
//! The region of boundary coefficient vectors whose pair stays K-semistable
//! is a rational polytope; this crate builds its defining halfspace system,
//! enumerates the vertices by exact rational elimination, cross-checks the
//! result against closed-form vertex lists where those are available, and
//! replays a stability certificate for every vertex.
//!
//! All arithmetic is exact. Nothing here rounds.

pub mod beta;
pub mod certify;
pub mod closed_form;
pub mod config;
pub mod document;
pub mod numeric;
pub mod polytope;
pub mod render;

pub use beta::{beta, beta_affine_form, log_discrepancy, s_invariant, volume_profile, AffineForm, BetaError, ConstraintLabel};
pub use certify::{certify_domain, certify_vertex, classify_vertex, Certificate, CertificationReport, CertifyError, CertNode, VertexClass};
pub use closed_form::{closed_form_vertices, interior_vertex, kss_interval_k1, ClosedFormError, ClosedFormResult};
pub use config::{Branch, ConfigError, ConfigErrorKind, PairConfig};
pub use document::{certify_only, run_compute, to_json_string, write_atomic, CertifyDocument, ResultDocument, RunConfigFile};
pub use numeric::{rat, ratio, Rational};
pub use polytope::{build_halfspace_system, contains, enumerate_vertices, vertex_sets_equal, HalfspaceSystem, Vertex, VertexSet};
pub use render::{render_polygon_svg, render_polytope_mesh, RenderError};
