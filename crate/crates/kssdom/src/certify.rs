//! Vertex classification and certificate replay.
//!
//! Every vertex of the stability domain is certified by reducing it to one
//! of three terminal facts: an interpolation bound on a single-divisor
//! interval, a log Calabi-Yau wall membership, or an explicitly recorded
//! assumption. The two reduction moves both shrink the boundary count:
//! dropping zero coordinates restricts to a face configuration, and a cone
//! step absorbs the first boundary divisor into the complete intersection,
//! trading `(n, L, d_1..d_k)` for `(n - 1, L - d_1, d_2..d_k)`. The cone
//! step is sound exactly when `v_1 = 1 - r/n` for the residual ratio
//! `r = (L - d_1 - Σ_{j>=2} v_j d_j) / d_1`; the certifier recomputes that
//! identity from the raw configuration data, independent of the beta form
//! code it is checking.

use crate::beta::ConstraintLabel;
use crate::closed_form::{kss_interval_k1, ClosedFormError};
use crate::config::{ConfigError, PairConfig};
use crate::numeric::{NumericError, RatVector, Rational};
use crate::polytope::{build_halfspace_system, contains, enumerate_vertices};
use serde::{Deserialize, Serialize};

pub const CI_KSS_ASSUMPTION: &str =
    "base complete intersection is K-semistable, as are the cones produced by absorption steps";
pub const GENERAL_LC_ASSUMPTION: &str =
    "boundary members in general position, so the wall pair is log canonical log Calabi-Yau";

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CertifyError {
    #[error("not a vertex at {point}: {detail}")]
    NotAVertex { point: String, detail: String },
    #[error("identity failure at {point}: {identity}")]
    IdentityFailure { point: String, identity: String },
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    ClosedForm(#[from] ClosedFormError),
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

fn point_string(v: &[Rational]) -> String {
    let coords: Vec<String> = v.iter().map(|c| c.to_string()).collect();
    format!("({})", coords.join(", "))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VertexClass {
    Origin,
    LogCalabiYau,
    InteriorBetaZero,
    FaceEmbedded,
    IntervalEndpoint,
}

/// One node of a certificate tree. Leaves are interpolation bounds,
/// wall memberships, assumptions, or (never on verified trees) recorded
/// identity failures.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CertNode {
    LogCalabiYau {
        boundary_level: Rational,
        level: Rational,
        coefficients_at_most_one: bool,
        assumption: Box<CertNode>,
    },
    Interpolation {
        value: Rational,
        endpoint: Rational,
        at_endpoint: bool,
    },
    ConeStep {
        /// One-based position of the absorbed boundary divisor.
        absorbed: usize,
        radius: Rational,
        expected_coordinate: Rational,
        identity_holds: bool,
        child: Box<Certificate>,
    },
    FaceReduction {
        /// One-based positions of the dropped (zero) coordinates.
        dropped: Vec<usize>,
        child: Box<Certificate>,
    },
    Assumption {
        text: String,
    },
    IdentityFailure {
        identity: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub vertex: RatVector,
    pub class: VertexClass,
    pub verified: bool,
    pub assumptions: Vec<String>,
    pub node: CertNode,
}

impl Certificate {
    /// Nodes on the longest reduction chain. Each cone step or face
    /// reduction adds one; leaves count one.
    pub fn depth(&self) -> usize {
        match &self.node {
            CertNode::ConeStep { child, .. } | CertNode::FaceReduction { child, .. } => {
                1 + child.depth()
            }
            _ => 1,
        }
    }
}

fn node_verified(node: &CertNode) -> bool {
    match node {
        CertNode::LogCalabiYau {
            boundary_level,
            level,
            coefficients_at_most_one,
            assumption,
        } => *coefficients_at_most_one && boundary_level == level && node_verified(assumption),
        CertNode::Interpolation { value, endpoint, .. } => {
            !value.is_negative() && value <= endpoint
        }
        CertNode::ConeStep { radius, identity_holds, child, .. } => {
            *identity_holds && radius.is_positive() && child.verified
        }
        CertNode::FaceReduction { child, .. } => child.verified,
        CertNode::Assumption { .. } => true,
        CertNode::IdentityFailure { .. } => false,
    }
}

/// Classifies a point that must already be a vertex: contained in the
/// domain with active constraints of full rank.
///
/// Precedence: Origin, then LogCalabiYau, then InteriorBetaZero, then
/// FaceEmbedded, then IntervalEndpoint. A point with a coordinate equal to
/// one always saturates the Calabi-Yau wall (beta feasibility forces it),
/// so every genuine vertex lands in one of the first four classes; the
/// last is kept for completeness of the declared taxonomy.
pub fn classify_vertex(config: &PairConfig, v: &[Rational]) -> Result<VertexClass, CertifyError> {
    let k = config.boundary_count();
    let system = build_halfspace_system(config);
    if v.len() != k {
        return Err(CertifyError::NotAVertex {
            point: point_string(v),
            detail: format!("expected {k} coordinates, found {}", v.len()),
        });
    }
    if !contains(&system, v)? {
        return Err(CertifyError::NotAVertex {
            point: point_string(v),
            detail: "outside the stability domain".into(),
        });
    }
    let active = system.active_labels_at(v)?;
    let active_rank = system.active_rank(v)?;
    if active_rank < k {
        return Err(CertifyError::NotAVertex {
            point: point_string(v),
            detail: format!("active constraints have rank {active_rank} < {k}"),
        });
    }

    if v.iter().all(|c| c.is_zero()) {
        return Ok(VertexClass::Origin);
    }
    if active.contains(&ConstraintLabel::CalabiYau) {
        return Ok(VertexClass::LogCalabiYau);
    }
    let all_beta_active =
        (0..k).all(|i| active.contains(&ConstraintLabel::Beta(i)));
    if all_beta_active && v.iter().all(|c| c.is_positive()) {
        return Ok(VertexClass::InteriorBetaZero);
    }
    if v.iter().any(|c| c.is_zero()) {
        return Ok(VertexClass::FaceEmbedded);
    }
    if k == 1 {
        return Ok(VertexClass::IntervalEndpoint);
    }
    Err(CertifyError::IdentityFailure {
        point: point_string(v),
        identity: format!("vertex escapes the classification taxonomy; active set {active:?}"),
    })
}

fn interpolation_node(config: &PairConfig, value: Rational) -> Result<CertNode, CertifyError> {
    let single = if config.boundary_count() == 1 {
        config.clone()
    } else {
        config.restrict_to(0)?
    };
    let endpoint = kss_interval_k1(&single)?;
    let at_endpoint = value == endpoint;
    Ok(CertNode::Interpolation { value, endpoint, at_endpoint })
}

fn certify_node(config: &PairConfig, v: &[Rational]) -> Result<(VertexClass, CertNode), CertifyError> {
    let class = classify_vertex(config, v)?;
    let k = config.boundary_count();
    let node = match class {
        VertexClass::Origin => interpolation_node(config, Rational::zero())?,
        VertexClass::LogCalabiYau => {
            let boundary_level: Rational = v
                .iter()
                .enumerate()
                .map(|(j, c)| Rational::from_int(config.boundary_degree(j)) * c)
                .sum();
            CertNode::LogCalabiYau {
                boundary_level,
                level: config.level_rational(),
                coefficients_at_most_one: v.iter().all(|c| c <= &Rational::one()),
                assumption: Box::new(CertNode::Assumption {
                    text: GENERAL_LC_ASSUMPTION.to_string(),
                }),
            }
        }
        VertexClass::InteriorBetaZero | VertexClass::IntervalEndpoint if k == 1 => {
            interpolation_node(config, v[0].clone())?
        }
        VertexClass::InteriorBetaZero | VertexClass::IntervalEndpoint => {
            let d1 = Rational::from_int(config.boundary_degree(0));
            let absorbed_twist: Rational = v
                .iter()
                .enumerate()
                .skip(1)
                .map(|(j, c)| Rational::from_int(config.boundary_degree(j)) * c)
                .sum();
            let radius = (config.level_rational() - &d1 - absorbed_twist) / &d1;
            let n = Rational::from_int(config.dimension());
            let expected_coordinate = Rational::one() - &radius / &n;
            let identity_holds = v[0] == expected_coordinate;
            let child_config = config.absorb_boundary(0)?;
            let child = certify_vertex(&child_config, &v[1..])?;
            CertNode::ConeStep {
                absorbed: 1,
                radius,
                expected_coordinate,
                identity_holds,
                child: Box::new(child),
            }
        }
        VertexClass::FaceEmbedded => {
            let dropped_zero_based: Vec<usize> =
                (0..k).filter(|&i| v[i].is_zero()).collect();
            let mut face_config = config.clone();
            for &i in dropped_zero_based.iter().rev() {
                face_config = face_config.face_config(i)?;
            }
            let sub_vertex: RatVector =
                v.iter().filter(|c| !c.is_zero()).cloned().collect();
            let child = certify_vertex(&face_config, &sub_vertex)?;
            CertNode::FaceReduction {
                dropped: dropped_zero_based.iter().map(|i| i + 1).collect(),
                child: Box::new(child),
            }
        }
    };
    Ok((class, node))
}

/// Builds and checks the certificate for one vertex.
pub fn certify_vertex(config: &PairConfig, v: &[Rational]) -> Result<Certificate, CertifyError> {
    let (class, node) = certify_node(config, v)?;
    let assumptions = if config.assume_ci_kss() {
        vec![CI_KSS_ASSUMPTION.to_string()]
    } else {
        Vec::new()
    };
    Ok(Certificate {
        vertex: v.to_vec(),
        class,
        verified: node_verified(&node),
        assumptions,
        node,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificationReport {
    pub vertex_count: usize,
    pub all_verified: bool,
    pub certificates: Vec<Certificate>,
}

/// Enumerates the domain and certifies every vertex.
pub fn certify_domain(config: &PairConfig) -> Result<CertificationReport, CertifyError> {
    let vertex_set = enumerate_vertices(&build_halfspace_system(config));
    let mut certificates = Vec::with_capacity(vertex_set.len());
    for vertex in &vertex_set.vertices {
        certificates.push(certify_vertex(config, &vertex.point)?);
    }
    let all_verified = certificates.iter().all(|c| c.verified);
    Ok(CertificationReport { vertex_count: certificates.len(), all_verified, certificates })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::ratio;

    fn pt(coords: &[(i64, i64)]) -> RatVector {
        coords.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn classification_frozen_examples() {
        let c = PairConfig::validate(3, vec![], vec![2, 1]).unwrap();
        assert_eq!(classify_vertex(&c, &pt(&[(0, 1), (0, 1)])).unwrap(), VertexClass::Origin);
        assert_eq!(
            classify_vertex(&c, &pt(&[(3, 4), (1, 2)])).unwrap(),
            VertexClass::InteriorBetaZero
        );
        assert_eq!(
            classify_vertex(&c, &pt(&[(2, 3), (0, 1)])).unwrap(),
            VertexClass::FaceEmbedded
        );

        let c = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        assert_eq!(
            classify_vertex(&c, &pt(&[(1, 1), (1, 1)])).unwrap(),
            VertexClass::LogCalabiYau
        );
    }

    #[test]
    fn non_vertices_are_rejected() {
        let c = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        // Interior point: contained, but no constraints active.
        let err = classify_vertex(&c, &pt(&[(1, 3), (1, 3)])).unwrap_err();
        assert!(matches!(err, CertifyError::NotAVertex { .. }));
        // Outside the domain.
        let err = classify_vertex(&c, &pt(&[(9, 10), (0, 1)])).unwrap_err();
        assert!(matches!(err, CertifyError::NotAVertex { .. }));
        // Edge midpoint: one active constraint, rank 1 < 2.
        let err = classify_vertex(&c, &pt(&[(1, 3), (0, 1)])).unwrap_err();
        assert!(matches!(err, CertifyError::NotAVertex { .. }));
    }

    #[test]
    fn cone_chain_for_the_interior_vertex() {
        let c = PairConfig::validate(3, vec![], vec![2, 1]).unwrap();
        let cert = certify_vertex(&c, &pt(&[(3, 4), (1, 2)])).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.class, VertexClass::InteriorBetaZero);
        assert_eq!(cert.depth(), 2);
        assert_eq!(cert.assumptions, vec![CI_KSS_ASSUMPTION.to_string()]);
        match &cert.node {
            CertNode::ConeStep { absorbed, radius, expected_coordinate, identity_holds, child } => {
                assert_eq!(*absorbed, 1);
                assert_eq!(radius, &ratio(3, 4));
                assert_eq!(expected_coordinate, &ratio(3, 4));
                assert!(identity_holds);
                assert_eq!(child.vertex, pt(&[(1, 2)]));
                match &child.node {
                    CertNode::Interpolation { value, endpoint, at_endpoint } => {
                        assert_eq!(value, &ratio(1, 2));
                        assert_eq!(endpoint, &ratio(1, 2));
                        assert!(at_endpoint);
                    }
                    other => panic!("expected interpolation leaf, got {other:?}"),
                }
            }
            other => panic!("expected cone step, got {other:?}"),
        }
    }

    #[test]
    fn wall_vertex_with_zero_coordinate_certifies_directly() {
        // (1, 1, 0) saturates the wall (2 + 2 + 0 = 4), so the wall
        // certificate applies without any face reduction.
        let c = PairConfig::validate(3, vec![], vec![2, 2, 2]).unwrap();
        let cert = certify_vertex(&c, &pt(&[(1, 1), (1, 1), (0, 1)])).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.class, VertexClass::LogCalabiYau);
        assert_eq!(cert.depth(), 1);
        match &cert.node {
            CertNode::LogCalabiYau { boundary_level, level, coefficients_at_most_one, assumption } => {
                assert_eq!(boundary_level, level);
                assert!(coefficients_at_most_one);
                assert_eq!(
                    **assumption,
                    CertNode::Assumption { text: GENERAL_LC_ASSUMPTION.to_string() }
                );
            }
            other => panic!("expected wall node, got {other:?}"),
        }
    }

    #[test]
    fn face_reduction_drops_zero_coordinates() {
        let c = PairConfig::validate(3, vec![], vec![2, 2, 2]).unwrap();
        let cert = certify_vertex(&c, &pt(&[(0, 1), (0, 1), (2, 3)])).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.class, VertexClass::FaceEmbedded);
        assert_eq!(cert.depth(), 2);
        match &cert.node {
            CertNode::FaceReduction { dropped, child } => {
                assert_eq!(dropped, &vec![1, 2]);
                assert_eq!(child.class, VertexClass::InteriorBetaZero);
                assert_eq!(child.vertex, pt(&[(2, 3)]));
                match &child.node {
                    CertNode::Interpolation { value, endpoint, at_endpoint } => {
                        assert_eq!(value, &ratio(2, 3));
                        assert_eq!(endpoint, &ratio(2, 3));
                        assert!(at_endpoint);
                    }
                    other => panic!("expected interpolation leaf, got {other:?}"),
                }
            }
            other => panic!("expected face reduction, got {other:?}"),
        }
    }

    #[test]
    fn origin_gets_a_trivial_interpolation_leaf() {
        let c = PairConfig::validate(4, vec![2], vec![1, 1, 1]).unwrap();
        let cert = certify_vertex(&c, &pt(&[(0, 1), (0, 1), (0, 1)])).unwrap();
        assert!(cert.verified);
        assert_eq!(cert.class, VertexClass::Origin);
        match &cert.node {
            CertNode::Interpolation { value, endpoint, .. } => {
                assert!(value.is_zero());
                assert_eq!(endpoint, &ratio(1, 3));
            }
            other => panic!("expected interpolation leaf, got {other:?}"),
        }
    }

    #[test]
    fn domain_report_for_two_quadrics() {
        let c = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        let report = certify_domain(&c).unwrap();
        assert_eq!(report.vertex_count, 4);
        assert!(report.all_verified);
        let classes: Vec<VertexClass> = report.certificates.iter().map(|c| c.class).collect();
        assert_eq!(
            classes,
            vec![
                VertexClass::Origin,
                VertexClass::FaceEmbedded,
                VertexClass::FaceEmbedded,
                VertexClass::LogCalabiYau,
            ]
        );
    }

    #[test]
    fn domain_report_for_three_planes_on_quadric() {
        let c = PairConfig::validate(4, vec![2], vec![1, 1, 1]).unwrap();
        let report = certify_domain(&c).unwrap();
        assert_eq!(report.vertex_count, 8);
        assert!(report.all_verified);
        // The deepest chains run face reduction, then a cone step, then the
        // interpolation base.
        let max_depth = report.certificates.iter().map(|c| c.depth()).max().unwrap();
        assert_eq!(max_depth, 3);
    }

    #[test]
    fn every_vertex_classifies_even_for_four_boundaries() {
        let c = PairConfig::validate(5, vec![], vec![2, 1, 1, 2]).unwrap();
        let report = certify_domain(&c).unwrap();
        assert!(report.vertex_count > 0);
        assert!(report.all_verified);
    }

    #[test]
    fn unverified_nodes_propagate() {
        let node = CertNode::ConeStep {
            absorbed: 1,
            radius: ratio(1, 2),
            expected_coordinate: ratio(1, 2),
            identity_holds: true,
            child: Box::new(Certificate {
                vertex: pt(&[(1, 2)]),
                class: VertexClass::InteriorBetaZero,
                verified: false,
                assumptions: vec![],
                node: CertNode::IdentityFailure { identity: "forced".into() },
            }),
        };
        assert!(!node_verified(&node));
    }
}
