//! Halfspace representation of the stability domain and exact vertex
//! enumeration.
//!
//! The domain in coefficient space is cut out by `3k + 1` affine forms:
//! the box `0 <= x_i <= 1`, the Calabi-Yau wall `L - Σ d_j x_j >= 0`, and one
//! beta form per boundary divisor. Enumeration solves every size-`k` subset
//! of constraint equalities exactly and keeps solutions satisfying the whole
//! system, so the output is the complete vertex set, deduplicated and sorted.

use crate::beta::{beta_affine_form, AffineForm, ConstraintLabel};
use crate::config::PairConfig;
use crate::numeric::{rank, solve_square_system, NumericError, RatMatrix, RatVector, Rational};
use itertools::Itertools;
use std::collections::BTreeSet;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfspaceSystem {
    dim: usize,
    forms: Vec<AffineForm>,
}

impl HalfspaceSystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn forms(&self) -> &[AffineForm] {
        &self.forms
    }

    pub fn form(&self, label: ConstraintLabel) -> Option<&AffineForm> {
        self.forms.iter().find(|f| f.label == label)
    }

    /// Labels of every form vanishing at `x`, in system order.
    pub fn active_labels_at(&self, x: &[Rational]) -> Result<Vec<ConstraintLabel>, NumericError> {
        let mut labels = Vec::new();
        for form in &self.forms {
            if form.eval(x)?.is_zero() {
                labels.push(form.label);
            }
        }
        Ok(labels)
    }

    /// Rank of the linear parts of the forms active at `x`.
    pub fn active_rank(&self, x: &[Rational]) -> Result<usize, NumericError> {
        let mut rows = Vec::new();
        for form in &self.forms {
            if form.eval(x)?.is_zero() {
                rows.push(form.coefficients.clone());
            }
        }
        if rows.is_empty() {
            return Ok(0);
        }
        Ok(rank(&RatMatrix::from_rows(rows)?))
    }
}

/// Vertex of the domain: the point plus every constraint active there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Vertex {
    pub point: RatVector,
    pub active: Vec<ConstraintLabel>,
}

/// All vertices, sorted lexicographically by point.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexSet {
    pub dim: usize,
    pub vertices: Vec<Vertex>,
}

impl VertexSet {
    pub fn points(&self) -> Vec<RatVector> {
        self.vertices.iter().map(|v| v.point.clone()).collect()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }
}

/// Assembles the `3k + 1` forms in canonical order: axis lower bounds, axis
/// upper bounds, the Calabi-Yau wall, then the beta forms.
pub fn build_halfspace_system(config: &PairConfig) -> HalfspaceSystem {
    let k = config.boundary_count();
    let mut forms = Vec::with_capacity(3 * k + 1);
    for i in 0..k {
        let mut coefficients = vec![Rational::zero(); k];
        coefficients[i] = Rational::one();
        forms.push(AffineForm {
            label: ConstraintLabel::AxisLower(i),
            constant: Rational::zero(),
            coefficients,
        });
    }
    for i in 0..k {
        let mut coefficients = vec![Rational::zero(); k];
        coefficients[i] = -Rational::one();
        forms.push(AffineForm {
            label: ConstraintLabel::AxisUpper(i),
            constant: Rational::one(),
            coefficients,
        });
    }
    forms.push(AffineForm {
        label: ConstraintLabel::CalabiYau,
        constant: config.level_rational(),
        coefficients: (0..k).map(|j| Rational::from_int(-config.boundary_degree(j))).collect(),
    });
    for i in 0..k {
        let form = beta_affine_form(config, i).expect("index in range");
        forms.push(form);
    }
    HalfspaceSystem { dim: k, forms }
}

/// Whether `x` satisfies every inequality.
pub fn contains(system: &HalfspaceSystem, x: &[Rational]) -> Result<bool, NumericError> {
    if x.len() != system.dim {
        return Err(NumericError::DimensionMismatch { expected: system.dim, found: x.len() });
    }
    for form in &system.forms {
        if form.eval(x)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exhaustive exact vertex enumeration.
pub fn enumerate_vertices(system: &HalfspaceSystem) -> VertexSet {
    let k = system.dim;
    let mut points: BTreeSet<RatVector> = BTreeSet::new();
    for subset in (0..system.forms.len()).combinations(k) {
        let rows: Vec<RatVector> =
            subset.iter().map(|&i| system.forms[i].coefficients.clone()).collect();
        let rhs: Vec<Rational> = subset.iter().map(|&i| -&system.forms[i].constant).collect();
        let matrix = RatMatrix::from_rows(rows).expect("uniform row length");
        let solution = solve_square_system(&matrix, &rhs).expect("square by construction");
        let point = match solution {
            Some(p) => p,
            None => continue,
        };
        if contains(system, &point).expect("dimension matches") {
            points.insert(point);
        }
    }
    let vertices = points
        .into_iter()
        .map(|point| {
            let active = system.active_labels_at(&point).expect("dimension matches");
            Vertex { point, active }
        })
        .collect();
    VertexSet { dim: k, vertices }
}

/// Set equality on vertex points, ignoring order and active-set annotations.
pub fn vertex_sets_equal(a: &VertexSet, b: &VertexSet) -> bool {
    if a.dim != b.dim {
        return false;
    }
    let mut pa = a.points();
    let mut pb = b.points();
    pa.sort();
    pb.sort();
    pa == pb
}
