//! Stability thresholds for torus-invariant divisorial valuations.
//!
//! For a pair configuration with level `L`, dimension `n`, and boundary
//! degrees `d_1..d_k`, the valuation attached to the `i`-th boundary divisor
//! has log discrepancy `A_i = 1 - x_i` and expected vanishing order
//! `S_i = (L - Σ_j d_j x_j) / (d_i (n + 1))`; the pair is K-semistable on the
//! locus where every `beta_i = A_i - S_i` is nonnegative. `beta_i` is affine
//! in the coefficient vector, and `beta_affine_form` is the normal form used
//! to assemble the halfspace system: everything downstream consumes the
//! affine forms, the pointwise evaluators exist for spot checks and tests.

use crate::config::PairConfig;
use crate::numeric::{dot, NumericError, RatVector, Rational};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum BetaError {
    #[error("boundary index {index} out of range for k = {count}")]
    IndexOutOfRange { index: usize, count: usize },
    #[error("pair is not log Fano: {detail}")]
    NotLogFano { detail: String },
    #[error(transparent)]
    Numeric(#[from] NumericError),
}

/// Identity of one inequality in the halfspace system. Boundary indices are
/// zero-based in the API; rendered labels are one-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConstraintLabel {
    /// `x_i >= 0`
    AxisLower(usize),
    /// `1 - x_i >= 0`
    AxisUpper(usize),
    /// `L - Σ d_j x_j >= 0`
    CalabiYau,
    /// `beta_i(x) >= 0`
    Beta(usize),
}

impl fmt::Display for ConstraintLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConstraintLabel::AxisLower(i) => write!(f, "x{}>=0", i + 1),
            ConstraintLabel::AxisUpper(i) => write!(f, "x{}<=1", i + 1),
            ConstraintLabel::CalabiYau => write!(f, "calabi_yau"),
            ConstraintLabel::Beta(i) => write!(f, "beta{}>=0", i + 1),
        }
    }
}

impl FromStr for ConstraintLabel {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "calabi_yau" {
            return Ok(ConstraintLabel::CalabiYau);
        }
        let parse_index = |digits: &str| -> Result<usize, String> {
            let one_based: usize =
                digits.parse().map_err(|_| format!("bad constraint label `{s}`"))?;
            if one_based == 0 {
                return Err(format!("bad constraint label `{s}`"));
            }
            Ok(one_based - 1)
        };
        if let Some(rest) = s.strip_prefix("beta").and_then(|r| r.strip_suffix(">=0")) {
            return Ok(ConstraintLabel::Beta(parse_index(rest)?));
        }
        if let Some(rest) = s.strip_prefix('x') {
            if let Some(digits) = rest.strip_suffix(">=0") {
                return Ok(ConstraintLabel::AxisLower(parse_index(digits)?));
            }
            if let Some(digits) = rest.strip_suffix("<=1") {
                return Ok(ConstraintLabel::AxisUpper(parse_index(digits)?));
            }
        }
        Err(format!("bad constraint label `{s}`"))
    }
}

/// Labeled affine inequality `constant + Σ coefficients[j] * x_j >= 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AffineForm {
    pub label: ConstraintLabel,
    pub constant: Rational,
    pub coefficients: RatVector,
}

impl AffineForm {
    pub fn eval(&self, x: &[Rational]) -> Result<Rational, NumericError> {
        Ok(&self.constant + &dot(&self.coefficients, x)?)
    }
}

fn check_index(config: &PairConfig, index: usize) -> Result<(), BetaError> {
    let count = config.boundary_count();
    if index >= count {
        return Err(BetaError::IndexOutOfRange { index, count });
    }
    Ok(())
}

fn check_point(config: &PairConfig, x: &[Rational]) -> Result<(), BetaError> {
    let k = config.boundary_count();
    if x.len() != k {
        return Err(BetaError::Numeric(NumericError::DimensionMismatch {
            expected: k,
            found: x.len(),
        }));
    }
    Ok(())
}

/// Remaining level `L - Σ d_j x_j` after twisting by the boundary.
fn remaining_level(config: &PairConfig, x: &[Rational]) -> Rational {
    let twist: Rational = x
        .iter()
        .enumerate()
        .map(|(j, xj)| Rational::from_int(config.boundary_degree(j)) * xj)
        .sum();
    config.level_rational() - twist
}

/// Log discrepancy of the `i`-th boundary divisor: `1 - x_i`.
pub fn log_discrepancy(
    config: &PairConfig,
    x: &[Rational],
    index: usize,
) -> Result<Rational, BetaError> {
    check_index(config, index)?;
    check_point(config, x)?;
    Ok(Rational::one() - &x[index])
}

/// Expected vanishing order `S_i = (L - Σ d_j x_j) / (d_i (n + 1))`.
pub fn s_invariant(
    config: &PairConfig,
    x: &[Rational],
    index: usize,
) -> Result<Rational, BetaError> {
    check_index(config, index)?;
    check_point(config, x)?;
    let remaining = remaining_level(config, x);
    if !remaining.is_positive() {
        return Err(BetaError::NotLogFano {
            detail: format!("remaining level {remaining} is not positive"),
        });
    }
    let denom = Rational::from_int(config.boundary_degree(index) * (config.dimension() + 1));
    Ok(remaining / denom)
}

/// Anticanonical volume of the twist by `t` along the `i`-th divisor:
/// `deg(X) * (L - Σ d_j x_j - t d_i)^n`, zero past the threshold.
pub fn volume_profile(
    config: &PairConfig,
    x: &[Rational],
    index: usize,
    t: &Rational,
) -> Result<Rational, BetaError> {
    check_index(config, index)?;
    check_point(config, x)?;
    let remaining = remaining_level(config, x);
    if !remaining.is_positive() {
        return Err(BetaError::NotLogFano {
            detail: format!("remaining level {remaining} is not positive"),
        });
    }
    let shifted = remaining - Rational::from_int(config.boundary_degree(index)) * t;
    if !shifted.is_positive() {
        return Ok(Rational::zero());
    }
    Ok(Rational::from_int(config.ci_degree_product()) * shifted.pow(config.dimension() as u32))
}

/// `beta_i = A_i - S_i`, evaluated pointwise.
pub fn beta(config: &PairConfig, x: &[Rational], index: usize) -> Result<Rational, BetaError> {
    Ok(log_discrepancy(config, x, index)? - s_invariant(config, x, index)?)
}

/// `beta_i` as an affine form in the coefficient vector:
/// constant `(d_i (n+1) - L) / (d_i (n+1))`, own coefficient `-n/(n+1)`,
/// cross coefficients `d_j / (d_i (n+1))`.
pub fn beta_affine_form(config: &PairConfig, index: usize) -> Result<AffineForm, BetaError> {
    check_index(config, index)?;
    let n = config.dimension();
    let level = config.level();
    let d_i = config.boundary_degree(index);
    let scale = d_i * (n + 1);
    let constant = Rational::from_int(scale - level) / Rational::from_int(scale);
    let coefficients = (0..config.boundary_count())
        .map(|j| {
            if j == index {
                Rational::from_int(-n) / Rational::from_int(n + 1)
            } else {
                Rational::from_int(config.boundary_degree(j)) / Rational::from_int(scale)
            }
        })
        .collect();
    Ok(AffineForm { label: ConstraintLabel::Beta(index), constant, coefficients })
}
