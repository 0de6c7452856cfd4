//! The Sugeno-Weber t-norm family and its two residual operators.
//!
//! For a parameter `λ > -1` the family is
//!
//! ```text
//! T_λ(x, y) = max{ (x + y - 1 + λxy) / (1 + λ), 0 },    x, y ∈ [0, 1].
//! ```
//!
//! `λ = 0` recovers the Łukasiewicz t-norm; as `λ → ∞` the family tends to the
//! product t-norm, and as `λ → -1` to the drastic product. Every member is
//! commutative, associative, monotone, and has `1` as neutral element.
//!
//! The solver never inverts `T_λ` directly. It asks two threshold questions,
//! each with a closed-form answer:
//!
//! * [`residual_leq`] finds the largest `x` with `T_λ(a, x) ≤ b`, used to build
//!   the maximum solution of an upper system of inequalities;
//! * [`residual_geq`] finds the smallest `x` with `T_λ(d, x) ≥ b`, used to
//!   build minimal candidate vectors for a lower system. Because `T_λ(d, 1) = d`,
//!   the question is only solvable when `d ≥ b`.
//!
//! The quotient denominators have the form `1 + λa` with `a ∈ [0, 1]`, which is
//! bounded below by `min(1, 1 + λ) > 0`, so the formulas need no division guard.

use thiserror::Error;

/// Errors raised by parameter validation and threshold queries.
#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum TnormError {
    /// The family is defined for finite parameters strictly greater than -1.
    #[error("lambda = {value} is not a valid parameter: it must be finite and greater than -1")]
    InvalidLambda { value: f64 },
    /// Membership grades live in the closed unit interval.
    #[error("grade {value} lies outside [0, 1]")]
    GradeOutOfRange { value: f64 },
    /// `T(d, x) >= b` has no solution when `d < b`, since `T(d, x) <= T(d, 1) = d`.
    #[error("threshold {b} is unreachable from grade {d}: T(d, 1) = d < b")]
    UnsatisfiableThreshold { d: f64, b: f64 },
}

/// A validated Sugeno-Weber parameter, finite and strictly greater than -1.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Lambda(f64);

impl Lambda {
    pub fn new(value: f64) -> Result<Self, TnormError> {
        if value.is_finite() && value > -1.0 {
            Ok(Lambda(value))
        } else {
            Err(TnormError::InvalidLambda { value })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// A membership grade, validated to lie in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct UnitScalar(f64);

impl UnitScalar {
    pub const ZERO: UnitScalar = UnitScalar(0.0);
    pub const ONE: UnitScalar = UnitScalar(1.0);

    pub fn new(value: f64) -> Result<Self, TnormError> {
        if (0.0..=1.0).contains(&value) {
            Ok(UnitScalar(value))
        } else {
            Err(TnormError::GradeOutOfRange { value })
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl From<UnitScalar> for f64 {
    fn from(grade: UnitScalar) -> f64 {
        grade.0
    }
}

/// `T_λ(x, y)`.
///
/// The result is clamped into `[0, 1]`. The neutral element is handled before
/// the formula: evaluating `x + 1 - 1` would round tiny grades away and break
/// the exact identity `T(x, 1) = x`.
pub fn tnorm(lambda: Lambda, x: UnitScalar, y: UnitScalar) -> UnitScalar {
    UnitScalar(tnorm_raw(lambda.0, x.0, y.0))
}

pub(crate) fn tnorm_raw(lambda: f64, x: f64, y: f64) -> f64 {
    if x == 1.0 {
        return y;
    }
    if y == 1.0 {
        return x;
    }
    // x*y before multiplying by lambda keeps the expression symmetric in the
    // arguments, so commutativity holds bit for bit.
    let numerator = (x + y - 1.0) + lambda * (x * y);
    if numerator <= 0.0 {
        0.0
    } else {
        (numerator / (1.0 + lambda)).min(1.0)
    }
}

/// The largest `x ∈ [0, 1]` with `T_λ(a, x) ≤ b`.
///
/// When `a ≤ b` every grade qualifies and the answer is `1`; otherwise it is
/// `((1 + λ)b + 1 - a) / (1 + λa)`. A single clamped quotient covers both
/// branches, because the quotient is `≥ 1` exactly when `a ≤ b`.
pub fn residual_leq(lambda: Lambda, a: UnitScalar, b: UnitScalar) -> UnitScalar {
    UnitScalar(residual_leq_raw(lambda.0, a.0, b.0))
}

pub(crate) fn residual_leq_raw(lambda: f64, a: f64, b: f64) -> f64 {
    (((1.0 + lambda) * b + (1.0 - a)) / (1.0 + lambda * a)).clamp(0.0, 1.0)
}

/// The smallest `x ∈ [0, 1]` with `T_λ(d, x) ≥ b`.
///
/// Returns `0` when `b = 0` (every grade qualifies) and
/// `((1 + λ)b + 1 - d) / (1 + λd)` otherwise;
/// at that point the inequality is tight, `T_λ(d, x) = b`.
///
/// # Errors
///
/// [`TnormError::UnsatisfiableThreshold`] when `d < b`, as no grade reaches
/// the threshold.
pub fn residual_geq(
    lambda: Lambda,
    d: UnitScalar,
    b: UnitScalar,
) -> Result<UnitScalar, TnormError> {
    if d.0 < b.0 {
        return Err(TnormError::UnsatisfiableThreshold { d: d.0, b: b.0 });
    }
    Ok(UnitScalar(residual_geq_raw(lambda.0, d.0, b.0)))
}

/// Unchecked form of [`residual_geq`]; callers guarantee `d >= b`.
pub(crate) fn residual_geq_raw(lambda: f64, d: f64, b: f64) -> f64 {
    if b == 0.0 {
        return 0.0;
    }
    (((1.0 + lambda) * b + (1.0 - d)) / (1.0 + lambda * d)).clamp(0.0, 1.0)
}
