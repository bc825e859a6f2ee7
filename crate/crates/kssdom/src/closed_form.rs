//! Closed-form vertex lists for one, two, or three boundary divisors.
//!
//! These formulas are an independent route to the same vertex sets the
//! enumeration engine produces, and the test suite holds the two routes
//! equal. The structure splits on the wall `Σ d_j = L`: below it the domain
//! has a unique all-coordinates-positive vertex where every beta form
//! vanishes; on or above it that point escapes the box and the Calabi-Yau
//! wall contributes corner vertices instead. On the wall itself both
//! descriptions are evaluated; they collide and deduplication removes the
//! copies.

use crate::config::{Branch, PairConfig};
use crate::numeric::{RatVector, Rational};
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ClosedFormError {
    #[error("no closed-form vertex list for k = {k} boundary divisors (supported: 1..=3)")]
    UnsupportedK { k: usize },
}

/// One nominal vertex with the name of the formula that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormEntry {
    pub source: String,
    pub point: RatVector,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedFormResult {
    pub branch: Branch,
    /// Deduplicated, lexicographically sorted.
    pub points: Vec<RatVector>,
    /// Nominal formula outputs in derivation order, before deduplication.
    pub notes: Vec<ClosedFormEntry>,
}

/// Right endpoint of the stability interval for a single boundary divisor:
/// `((n + 1) d - L) / (n d)`.
pub fn kss_interval_k1(config: &PairConfig) -> Result<Rational, ClosedFormError> {
    let k = config.boundary_count();
    if k != 1 {
        return Err(ClosedFormError::UnsupportedK { k });
    }
    let n = config.dimension();
    let d = config.boundary_degree(0);
    Ok(Rational::from_int((n + 1) * d - config.level()) / Rational::from_int(n * d))
}

/// The unique vertex with every beta form vanishing and all coordinates
/// positive: `a_j = (Σ_{i≠j} d_i + (n - k + 2) d_j - L) / ((n - k + 1) d_j)`.
/// Present exactly when `Σ d_j < L` and `k <= n`.
pub fn interior_vertex(config: &PairConfig) -> Option<RatVector> {
    let k = config.boundary_count() as i64;
    let n = config.dimension();
    if k > n || config.boundary_degree_sum() >= config.level() {
        return None;
    }
    let level = config.level();
    let total = config.boundary_degree_sum();
    let point = (0..config.boundary_count())
        .map(|j| {
            let d_j = config.boundary_degree(j);
            let numer = (total - d_j) + (n - k + 2) * d_j - level;
            Rational::from_int(numer) / Rational::from_int((n - k + 1) * d_j)
        })
        .collect();
    Some(point)
}

fn entry(notes: &mut Vec<ClosedFormEntry>, source: impl Into<String>, point: RatVector) {
    notes.push(ClosedFormEntry { source: source.into(), point });
}

/// Endpoint of the interval for boundary `j` alone, placed on axis `j`.
fn axis_point(config: &PairConfig, j: usize) -> RatVector {
    let endpoint = kss_interval_k1(&config.restrict_to(j).expect("index in range"))
        .expect("single boundary");
    let mut point = vec![Rational::zero(); config.boundary_count()];
    point[j] = endpoint;
    point
}

/// Embeds a point of the face configuration (boundary `drop` removed) back
/// into full coordinates with zero at `drop`.
fn embed(drop: usize, face_point: &[Rational], k: usize) -> RatVector {
    let mut point = vec![Rational::zero(); k];
    let mut src = face_point.iter();
    for (i, slot) in point.iter_mut().enumerate() {
        if i != drop {
            *slot = src.next().expect("face point has k - 1 coordinates").clone();
        }
    }
    point
}

/// Closed-form vertex list for `k <= 3`.
pub fn closed_form_vertices(config: &PairConfig) -> Result<ClosedFormResult, ClosedFormError> {
    let k = config.boundary_count();
    if !(1..=3).contains(&k) {
        return Err(ClosedFormError::UnsupportedK { k });
    }
    let level = config.level();
    let branch = config.branch();
    let mut notes: Vec<ClosedFormEntry> = Vec::new();

    entry(&mut notes, "origin", vec![Rational::zero(); k]);
    if k == 1 {
        entry(&mut notes, "interval_endpoint", vec![kss_interval_k1(config)?]);
    } else {
        for j in 0..k {
            entry(&mut notes, format!("axis_{}", j + 1), axis_point(config, j));
        }
    }

    match k {
        1 => {}
        2 => {
            let total = config.boundary_degree_sum();
            if total < level {
                entry(
                    &mut notes,
                    "interior",
                    interior_vertex(config).expect("subcritical with k <= n"),
                );
            }
            if total >= level {
                let (d1, d2) = (config.boundary_degree(0), config.boundary_degree(1));
                entry(
                    &mut notes,
                    "wall_corner_1",
                    vec![
                        Rational::one(),
                        Rational::from_int(level - d1) / Rational::from_int(d2),
                    ],
                );
                entry(
                    &mut notes,
                    "wall_corner_2",
                    vec![
                        Rational::from_int(level - d2) / Rational::from_int(d1),
                        Rational::one(),
                    ],
                );
                // On the wall itself the interior formula lands on the same
                // corner; keep both descriptions and deduplicate.
                if total == level {
                    if let Some(p) = interior_vertex(config) {
                        entry(&mut notes, "interior", p);
                    }
                }
            }
        }
        3 => {
            let total = config.boundary_degree_sum();
            if total < level {
                for drop in 0..3 {
                    let face = config.face_config(drop).expect("index in range");
                    let face_interior =
                        interior_vertex(&face).expect("face of a subcritical triple");
                    entry(
                        &mut notes,
                        format!("face_interior_{}", drop + 1),
                        embed(drop, &face_interior, 3),
                    );
                }
                entry(
                    &mut notes,
                    "interior",
                    interior_vertex(config).expect("subcritical with k <= n"),
                );
            } else {
                for special in 0..3 {
                    let face = config.face_config(special).expect("index in range");
                    let face_sum = face.boundary_degree_sum();
                    let kept: Vec<usize> = (0..3).filter(|&j| j != special).collect();
                    if face_sum >= level {
                        let (da, db) =
                            (config.boundary_degree(kept[0]), config.boundary_degree(kept[1]));
                        let mut corner = vec![Rational::zero(); 3];
                        corner[kept[0]] = Rational::one();
                        corner[kept[1]] =
                            Rational::from_int(level - da) / Rational::from_int(db);
                        entry(&mut notes, format!("face_wall_corner_{}a", special + 1), corner);
                        let mut corner = vec![Rational::zero(); 3];
                        corner[kept[0]] =
                            Rational::from_int(level - db) / Rational::from_int(da);
                        corner[kept[1]] = Rational::one();
                        entry(&mut notes, format!("face_wall_corner_{}b", special + 1), corner);
                    }
                    if face_sum <= level {
                        if let Some(face_interior) = interior_vertex(&face) {
                            entry(
                                &mut notes,
                                format!("face_interior_{}", special + 1),
                                embed(special, &face_interior, 3),
                            );
                        }
                        let mut corner = vec![Rational::one(); 3];
                        corner[special] = Rational::from_int(level - face_sum)
                            / Rational::from_int(config.boundary_degree(special));
                        entry(&mut notes, format!("wall_corner_{}", special + 1), corner);
                    }
                }
            }
        }
        _ => unreachable!("k checked above"),
    }

    let points: BTreeSet<RatVector> = notes.iter().map(|e| e.point.clone()).collect();
    Ok(ClosedFormResult { branch, points: points.into_iter().collect(), notes })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polytope::{build_halfspace_system, enumerate_vertices};
    use crate::numeric::ratio;

    fn pt(coords: &[(i64, i64)]) -> RatVector {
        coords.iter().map(|&(n, d)| ratio(n, d)).collect()
    }

    #[test]
    fn interval_endpoint_frozen_values() {
        let cubic_surface_pair = PairConfig::validate(3, vec![], vec![3]).unwrap();
        assert_eq!(kss_interval_k1(&cubic_surface_pair).unwrap(), ratio(8, 9));
        let plane_on_quadric = PairConfig::validate(4, vec![2], vec![1]).unwrap();
        assert_eq!(kss_interval_k1(&plane_on_quadric).unwrap(), ratio(1, 3));
        let quadric_on_quadric = PairConfig::validate(4, vec![2], vec![2]).unwrap();
        assert_eq!(kss_interval_k1(&quadric_on_quadric).unwrap(), ratio(5, 6));
        let two = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        assert!(matches!(kss_interval_k1(&two), Err(ClosedFormError::UnsupportedK { k: 2 })));
    }

    #[test]
    fn interior_vertex_frozen_values() {
        let c = PairConfig::validate(5, vec![], vec![2, 1]).unwrap();
        assert_eq!(interior_vertex(&c), Some(pt(&[(5, 8), (1, 4)])));
        let c = PairConfig::validate(3, vec![], vec![2, 1]).unwrap();
        assert_eq!(interior_vertex(&c), Some(pt(&[(3, 4), (1, 2)])));
        let critical = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        assert_eq!(interior_vertex(&critical), None);
    }

    #[test]
    fn interior_vertex_absent_when_k_exceeds_dimension() {
        let c = PairConfig::validate(2, vec![], vec![1, 1, 1]).unwrap();
        assert_eq!(interior_vertex(&c), None);
    }

    #[test]
    fn closed_form_matches_frozen_lists() {
        let c = PairConfig::validate(3, vec![], vec![2, 1]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(result.branch, Branch::Subcritical);
        assert_eq!(
            result.points,
            vec![pt(&[(0, 1), (0, 1)]), pt(&[(2, 3), (0, 1)]), pt(&[(3, 4), (1, 2)])]
        );

        let c = PairConfig::validate(3, vec![], vec![2, 2]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(result.branch, Branch::Critical);
        assert_eq!(
            result.points,
            vec![
                pt(&[(0, 1), (0, 1)]),
                pt(&[(0, 1), (2, 3)]),
                pt(&[(2, 3), (0, 1)]),
                pt(&[(1, 1), (1, 1)]),
            ]
        );
        // Both nominal wall corners collide at (1, 1).
        let corners: Vec<&ClosedFormEntry> =
            result.notes.iter().filter(|e| e.source.starts_with("wall_corner")).collect();
        assert_eq!(corners.len(), 2);
        assert_eq!(corners[0].point, corners[1].point);

        let c = PairConfig::validate(4, vec![2], vec![1, 1]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(result.branch, Branch::Subcritical);
        assert_eq!(
            result.points,
            vec![
                pt(&[(0, 1), (0, 1)]),
                pt(&[(0, 1), (1, 3)]),
                pt(&[(1, 3), (0, 1)]),
                pt(&[(1, 2), (1, 2)]),
            ]
        );
    }

    #[test]
    fn closed_form_for_three_boundaries() {
        let c = PairConfig::validate(3, vec![], vec![2, 2, 2]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(result.branch, Branch::Critical);
        assert_eq!(
            result.points,
            vec![
                pt(&[(0, 1), (0, 1), (0, 1)]),
                pt(&[(0, 1), (0, 1), (2, 3)]),
                pt(&[(0, 1), (2, 3), (0, 1)]),
                pt(&[(0, 1), (1, 1), (1, 1)]),
                pt(&[(2, 3), (0, 1), (0, 1)]),
                pt(&[(1, 1), (0, 1), (1, 1)]),
                pt(&[(1, 1), (1, 1), (0, 1)]),
            ]
        );

        let c = PairConfig::validate(3, vec![], vec![2, 2, 1]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(
            result.points,
            vec![
                pt(&[(0, 1), (0, 1), (0, 1)]),
                pt(&[(0, 1), (2, 3), (0, 1)]),
                pt(&[(0, 1), (3, 4), (1, 2)]),
                pt(&[(1, 2), (1, 1), (1, 1)]),
                pt(&[(2, 3), (0, 1), (0, 1)]),
                pt(&[(3, 4), (0, 1), (1, 2)]),
                pt(&[(1, 1), (1, 2), (1, 1)]),
                pt(&[(1, 1), (1, 1), (0, 1)]),
            ]
        );

        let c = PairConfig::validate(4, vec![2], vec![1, 1, 1]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(result.branch, Branch::Critical);
        assert_eq!(result.points.len(), 8);
        assert!(result.points.contains(&pt(&[(1, 1), (1, 1), (1, 1)])));

        let c = PairConfig::validate(3, vec![], vec![2, 1, 1]).unwrap();
        let result = closed_form_vertices(&c).unwrap();
        assert_eq!(
            result.points,
            vec![
                pt(&[(0, 1), (0, 1), (0, 1)]),
                pt(&[(2, 3), (0, 1), (0, 1)]),
                pt(&[(3, 4), (0, 1), (1, 2)]),
                pt(&[(3, 4), (1, 2), (0, 1)]),
                pt(&[(1, 1), (1, 1), (1, 1)]),
            ]
        );
    }

    #[test]
    fn closed_form_rejects_large_k() {
        let c = PairConfig::validate(5, vec![], vec![1, 1, 1, 1]).unwrap();
        assert!(matches!(
            closed_form_vertices(&c),
            Err(ClosedFormError::UnsupportedK { k: 4 })
        ));
    }

    #[test]
    fn closed_form_agrees_with_enumeration_on_sample_grid() {
        // Full sweep for n in 3..=5 over the supported k range; the acceptance
        // suite runs the wide randomized version.
        for n in 3..=5i64 {
            for m in 0..=1usize {
                let ci: Vec<u32> = vec![2; m];
                let projective_dim = (n + m as i64) as usize;
                let level = projective_dim as i64 + 1 - ci.iter().map(|&e| e as i64).sum::<i64>();
                if level < 1 {
                    continue;
                }
                for d1 in 1..=level.min(4) as u32 {
                    for d2 in 0..=level.min(3) as u32 {
                        for d3 in 0..=level.min(2) as u32 {
                            if d2 == 0 && d3 > 0 {
                                continue;
                            }
                            let degrees: Vec<u32> =
                                [d1, d2, d3].into_iter().filter(|&d| d > 0).collect();
                            let config = PairConfig::validate(
                                projective_dim,
                                ci.clone(),
                                degrees,
                            )
                            .unwrap();
                            let enumerated =
                                enumerate_vertices(&build_halfspace_system(&config));
                            let closed = closed_form_vertices(&config).unwrap();
                            assert_eq!(
                                closed.points,
                                enumerated.points(),
                                "vertex mismatch for {config}"
                            );
                        }
                    }
                }
            }
        }
    }
}
