//! Pair configurations: a complete intersection ambient together with
//! boundary hypersurface degrees.
//!
//! `PairConfig` fixes `X = S_{e_1} ∩ … ∩ S_{e_m} ⊂ P^N` and boundary degrees
//! `d_1, …, d_k`, from which two derived quantities drive everything else:
//! the dimension `n = N - m` and the anticanonical level `L = N + 1 - Σ e_i`,
//! so that `-K_X` is the restriction of `O(L)`. Validity means `n ≥ 2`
//! (top level), `L ≥ 1`, and every boundary degree in `[1, L]`.

use crate::numeric::Rational;
use serde::{Deserialize, Serialize};
use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConfigErrorKind {
    DimensionTooSmall,
    NotFano,
    DegreeExceedsLevel,
    EmptyBoundary,
    IndexOutOfRange,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid pair configuration ({kind:?}): {detail}")]
pub struct ConfigError {
    pub kind: ConfigErrorKind,
    pub detail: String,
}

impl ConfigError {
    fn new(kind: ConfigErrorKind, detail: impl Into<String>) -> Self {
        ConfigError { kind, detail: detail.into() }
    }
}

/// Which side of the wall `Σ d_j = L` a configuration sits on. The vertex
/// structure of the domain changes across it.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Branch {
    Subcritical,
    Critical,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairConfig {
    projective_dim: usize,
    ci_degrees: Vec<u32>,
    boundary_degrees: Vec<u32>,
    assume_ci_kss: bool,
}

impl PairConfig {
    /// Validates a top-level configuration (`n ≥ 2`).
    pub fn validate(
        projective_dim: usize,
        ci_degrees: Vec<u32>,
        boundary_degrees: Vec<u32>,
    ) -> Result<Self, ConfigError> {
        Self::assemble(projective_dim, ci_degrees, boundary_degrees, true, 2)
    }

    pub fn with_assume_ci_kss(mut self, flag: bool) -> Self {
        self.assume_ci_kss = flag;
        self
    }

    /// Dimension bound 1 is permitted inside certification recursion.
    fn assemble(
        projective_dim: usize,
        ci_degrees: Vec<u32>,
        boundary_degrees: Vec<u32>,
        assume_ci_kss: bool,
        min_dim: i64,
    ) -> Result<Self, ConfigError> {
        if boundary_degrees.is_empty() {
            return Err(ConfigError::new(
                ConfigErrorKind::EmptyBoundary,
                "at least one boundary degree is required",
            ));
        }
        let n = projective_dim as i64 - ci_degrees.len() as i64;
        if n < min_dim {
            return Err(ConfigError::new(
                ConfigErrorKind::DimensionTooSmall,
                format!("dimension n = {n} is below the minimum {min_dim}"),
            ));
        }
        let level =
            projective_dim as i64 + 1 - ci_degrees.iter().map(|&e| e as i64).sum::<i64>();
        if level < 1 {
            return Err(ConfigError::new(
                ConfigErrorKind::NotFano,
                format!("anticanonical level L = {level} must be at least 1"),
            ));
        }
        for (pos, &e) in ci_degrees.iter().enumerate() {
            if e < 1 {
                return Err(ConfigError::new(
                    ConfigErrorKind::DegreeExceedsLevel,
                    format!("ambient degree e_{} = 0 is out of range [1, ..]", pos + 1),
                ));
            }
        }
        for (pos, &d) in boundary_degrees.iter().enumerate() {
            if d < 1 || d as i64 > level {
                return Err(ConfigError::new(
                    ConfigErrorKind::DegreeExceedsLevel,
                    format!("boundary degree d_{} = {d} is out of range [1, {level}]", pos + 1),
                ));
            }
        }
        Ok(PairConfig { projective_dim, ci_degrees, boundary_degrees, assume_ci_kss })
    }

    pub fn projective_dim(&self) -> usize {
        self.projective_dim
    }

    pub fn ci_degrees(&self) -> &[u32] {
        &self.ci_degrees
    }

    pub fn boundary_degrees(&self) -> &[u32] {
        &self.boundary_degrees
    }

    /// Number of boundary divisors `k`.
    pub fn boundary_count(&self) -> usize {
        self.boundary_degrees.len()
    }

    /// Dimension `n` of the complete intersection.
    pub fn dimension(&self) -> i64 {
        self.projective_dim as i64 - self.ci_degrees.len() as i64
    }

    /// Anticanonical level `L`, the hyperplane multiple cutting out `-K_X`.
    pub fn level(&self) -> i64 {
        self.projective_dim as i64 + 1
            - self.ci_degrees.iter().map(|&e| e as i64).sum::<i64>()
    }

    pub fn boundary_degree(&self, index: usize) -> i64 {
        self.boundary_degrees[index] as i64
    }

    /// Degree of `X` in its ambient projective space.
    pub fn ci_degree_product(&self) -> i64 {
        self.ci_degrees.iter().map(|&e| e as i64).product()
    }

    pub fn assume_ci_kss(&self) -> bool {
        self.assume_ci_kss
    }

    pub fn boundary_degree_sum(&self) -> i64 {
        self.boundary_degrees.iter().map(|&d| d as i64).sum()
    }

    pub fn branch(&self) -> Branch {
        if self.boundary_degree_sum() < self.level() {
            Branch::Subcritical
        } else {
            Branch::Critical
        }
    }

    /// Sub-configuration with one boundary divisor removed; ambient, level,
    /// and dimension are unchanged.
    pub fn face_config(&self, drop_index: usize) -> Result<PairConfig, ConfigError> {
        let k = self.boundary_count();
        if drop_index >= k {
            return Err(ConfigError::new(
                ConfigErrorKind::IndexOutOfRange,
                format!("boundary index {drop_index} out of range for k = {k}"),
            ));
        }
        let mut degrees = self.boundary_degrees.clone();
        degrees.remove(drop_index);
        Self::assemble(self.projective_dim, self.ci_degrees.clone(), degrees, self.assume_ci_kss, 1)
    }

    /// Sub-configuration keeping a single boundary divisor.
    pub(crate) fn restrict_to(&self, keep_index: usize) -> Result<PairConfig, ConfigError> {
        let k = self.boundary_count();
        if keep_index >= k {
            return Err(ConfigError::new(
                ConfigErrorKind::IndexOutOfRange,
                format!("boundary index {keep_index} out of range for k = {k}"),
            ));
        }
        Self::assemble(
            self.projective_dim,
            self.ci_degrees.clone(),
            vec![self.boundary_degrees[keep_index]],
            self.assume_ci_kss,
            1,
        )
    }

    /// Moves one boundary divisor into the complete intersection: the
    /// recursion target of a cone step. Dimension drops by one, the level
    /// drops by the absorbed degree. Errs with `EmptyBoundary` on `k = 1`
    /// (the recursion base has nothing left to absorb).
    pub fn absorb_boundary(&self, index: usize) -> Result<PairConfig, ConfigError> {
        let k = self.boundary_count();
        if k == 1 {
            return Err(ConfigError::new(
                ConfigErrorKind::EmptyBoundary,
                "cannot absorb the last boundary divisor",
            ));
        }
        if index >= k {
            return Err(ConfigError::new(
                ConfigErrorKind::IndexOutOfRange,
                format!("boundary index {index} out of range for k = {k}"),
            ));
        }
        let mut ci = self.ci_degrees.clone();
        let mut degrees = self.boundary_degrees.clone();
        ci.push(degrees.remove(index));
        Self::assemble(self.projective_dim, ci, degrees, self.assume_ci_kss, 1)
    }

    pub fn level_rational(&self) -> Rational {
        Rational::from_int(self.level())
    }
}

impl fmt::Display for PairConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "X(N={}, ci={:?}) with boundary degrees {:?}",
            self.projective_dim, self.ci_degrees, self.boundary_degrees
        )
    }
}
