//! Problem representation and feasibility analysis.
//!
//! A problem couples an upper and a lower system of relational inequalities
//! over the same unknown vector `x ∈ [0, 1]^n`:
//!
//! ```text
//! A ∘ x ≤ b¹      (m1 rows, may be absent)
//! D ∘ x ≥ b²      (m2 rows)
//! ```
//!
//! where `∘` is max-T_λ composition: row `i` of `A ∘ x` is
//! `max_j T_λ(a_ij, x_j)`.
//!
//! The upper system alone is always consistent and its solution set is the
//! box `[0, x̄]`, with the maximum solution `x̄` given componentwise by a
//! residual: `x̄_j = min_i residual_leq(a_ij, b¹_i)`. The lower system alone
//! is consistent iff every row has at least one entry reaching its threshold
//! (iff the all-ones vector is a solution). The joint system is feasible iff
//! on top of that `x̄` itself satisfies the lower system.

use crate::tnorm::{self, Lambda};
use std::fmt;

pub const DEFAULT_TOLERANCE: f64 = 1e-9;

/// Dense row-major matrix of membership grades.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<f64>,
}

impl Matrix {
    /// Builds a matrix of grades. Rows must be rectangular, non-empty, and
    /// entirely inside `[0, 1]`.
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Matrix, InvalidProblem> {
        let mut violations = Vec::new();
        if rows.is_empty() {
            violations.push(ValidationError::EmptyMatrix);
        }
        check_block("matrix", &rows, &mut violations);
        if violations.is_empty() {
            Ok(Matrix::from_validated_rows(rows))
        } else {
            Err(InvalidProblem { violations })
        }
    }

    /// Skips validation; rows must already be known rectangular and in range,
    /// as [`Problem::new`] guarantees.
    pub(crate) fn from_validated_rows(rows: Vec<Vec<f64>>) -> Matrix {
        let n_rows = rows.len();
        let n_cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(n_rows * n_cols);
        for row in rows {
            data.extend(row);
        }
        Matrix {
            rows: n_rows,
            cols: n_cols,
            data,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        assert!(row < self.rows && col < self.cols);
        self.data[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        assert!(row < self.rows);
        &self.data[row * self.cols..(row + 1) * self.cols]
    }
}

/// A single reason a problem definition was rejected. Indices in messages are
/// 1-based to match the usual way systems of inequalities are written down.
#[derive(Debug, Clone, PartialEq)]
pub enum ValidationError {
    LambdaOutOfRange {
        value: f64,
    },
    /// One of `A`, `b1` is present without the other.
    UpperSystemIncomplete,
    EmptyLowerSystem,
    EmptyMatrix,
    NoColumns,
    RaggedRow {
        block: &'static str,
        row: usize,
        found: usize,
        expected: usize,
    },
    EntryOutOfRange {
        block: &'static str,
        row: usize,
        col: usize,
        value: f64,
    },
    ThresholdLength {
        vector: &'static str,
        found: usize,
        rows: usize,
    },
    ThresholdOutOfRange {
        vector: &'static str,
        index: usize,
        value: f64,
    },
    ColumnMismatch {
        upper: usize,
        lower: usize,
    },
}

impl fmt::Display for ValidationError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValidationError::LambdaOutOfRange { value } => {
                write!(f, "lambda = {value} must be finite and greater than -1")
            }
            ValidationError::UpperSystemIncomplete => {
                write!(
                    f,
                    "the upper system needs both a matrix and a threshold vector, or neither"
                )
            }
            ValidationError::EmptyLowerSystem => {
                write!(f, "the lower system must have at least one row")
            }
            ValidationError::EmptyMatrix => write!(f, "a matrix must have at least one row"),
            ValidationError::NoColumns => write!(f, "rows must have at least one column"),
            ValidationError::RaggedRow {
                block,
                row,
                found,
                expected,
            } => write!(
                f,
                "{block} row {row} has {found} entries, expected {expected}"
            ),
            ValidationError::EntryOutOfRange {
                block,
                row,
                col,
                value,
            } => write!(f, "{block}[{row}][{col}] = {value} lies outside [0, 1]"),
            ValidationError::ThresholdLength {
                vector,
                found,
                rows,
            } => write!(
                f,
                "{vector} has {found} entries but its matrix has {rows} rows"
            ),
            ValidationError::ThresholdOutOfRange {
                vector,
                index,
                value,
            } => write!(f, "{vector}[{index}] = {value} lies outside [0, 1]"),
            ValidationError::ColumnMismatch { upper, lower } => write!(
                f,
                "upper system has {upper} columns, lower system has {lower}"
            ),
        }
    }
}

/// All the ways a problem definition failed validation, collected in one pass.
#[derive(Debug, Clone, PartialEq)]
pub struct InvalidProblem {
    pub violations: Vec<ValidationError>,
}

impl fmt::Display for InvalidProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "invalid problem: ")?;
        for (k, violation) in self.violations.iter().enumerate() {
            if k > 0 {
                write!(f, "; ")?;
            }
            write!(f, "{violation}")?;
        }
        Ok(())
    }
}

impl std::error::Error for InvalidProblem {}

/// A validated problem instance. Construction checks every structural and
/// range constraint, so downstream code can index freely.
#[derive(Debug, Clone, PartialEq)]
pub struct Problem {
    lambda: Lambda,
    a: Matrix,
    b1: Vec<f64>,
    d: Matrix,
    b2: Vec<f64>,
}

fn check_block(
    block: &'static str,
    rows: &[Vec<f64>],
    violations: &mut Vec<ValidationError>,
) -> Option<usize> {
    let expected = rows.first().map(Vec::len)?;
    if expected == 0 {
        violations.push(ValidationError::NoColumns);
        return None;
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != expected {
            violations.push(ValidationError::RaggedRow {
                block,
                row: i + 1,
                found: row.len(),
                expected,
            });
            continue;
        }
        for (j, &value) in row.iter().enumerate() {
            if !(0.0..=1.0).contains(&value) {
                violations.push(ValidationError::EntryOutOfRange {
                    block,
                    row: i + 1,
                    col: j + 1,
                    value,
                });
            }
        }
    }
    Some(expected)
}

fn check_thresholds(
    vector: &'static str,
    values: &[f64],
    rows: usize,
    violations: &mut Vec<ValidationError>,
) {
    if values.len() != rows {
        violations.push(ValidationError::ThresholdLength {
            vector,
            found: values.len(),
            rows,
        });
    }
    for (i, &value) in values.iter().enumerate() {
        if !(0.0..=1.0).contains(&value) {
            violations.push(ValidationError::ThresholdOutOfRange {
                vector,
                index: i + 1,
                value,
            });
        }
    }
}

impl Problem {
    /// Validates and constructs a problem. Pass empty `a` and `b1` for a
    /// problem without an upper system. All violations are collected, not
    /// just the first.
    pub fn new(
        lambda: f64,
        a: Vec<Vec<f64>>,
        b1: Vec<f64>,
        d: Vec<Vec<f64>>,
        b2: Vec<f64>,
    ) -> Result<Problem, InvalidProblem> {
        let mut violations = Vec::new();

        let lambda = match Lambda::new(lambda) {
            Ok(l) => Some(l),
            Err(_) => {
                violations.push(ValidationError::LambdaOutOfRange { value: lambda });
                None
            }
        };

        if a.is_empty() != b1.is_empty() {
            violations.push(ValidationError::UpperSystemIncomplete);
        }
        if d.is_empty() {
            violations.push(ValidationError::EmptyLowerSystem);
        }

        let upper_cols = check_block("A", &a, &mut violations);
        let lower_cols = check_block("D", &d, &mut violations);
        if !a.is_empty() {
            check_thresholds("b1", &b1, a.len(), &mut violations);
        }
        check_thresholds("b2", &b2, d.len(), &mut violations);

        if let (Some(upper), Some(lower)) = (upper_cols, lower_cols) {
            if upper != lower {
                violations.push(ValidationError::ColumnMismatch { upper, lower });
            }
        }

        if !violations.is_empty() {
            return Err(InvalidProblem { violations });
        }

        Ok(Problem {
            lambda: lambda.unwrap(),
            a: Matrix::from_validated_rows(a),
            b1,
            d: Matrix::from_validated_rows(d),
            b2,
        })
    }

    pub fn lambda(&self) -> Lambda {
        self.lambda
    }

    /// Number of unknowns.
    pub fn n(&self) -> usize {
        self.d.cols()
    }

    /// Number of upper-system rows; zero when the problem has none.
    pub fn m1(&self) -> usize {
        self.a.rows()
    }

    /// Number of lower-system rows.
    pub fn m2(&self) -> usize {
        self.d.rows()
    }

    pub fn a(&self) -> &Matrix {
        &self.a
    }

    pub fn b1(&self) -> &[f64] {
        &self.b1
    }

    pub fn d(&self) -> &Matrix {
        &self.d
    }

    pub fn b2(&self) -> &[f64] {
        &self.b2
    }

    /// For each lower row `i`, the columns whose grade reaches the threshold:
    /// `{ j : d_ij ≥ b²_i }`. These are the only columns able to satisfy the
    /// row, since `T(d, x) ≤ d`. Columns come out in ascending order.
    pub fn j2_sets(&self) -> Vec<Vec<usize>> {
        (0..self.m2())
            .map(|i| {
                (0..self.n())
                    .filter(|&j| self.d.get(i, j) >= self.b2[i])
                    .collect()
            })
            .collect()
    }

    /// The greatest vector satisfying the upper system: all-ones when there is
    /// no upper system, otherwise the row-wise minimum of upper residuals.
    pub fn max_solution(&self) -> Vec<f64> {
        let lambda = self.lambda.value();
        (0..self.n())
            .map(|j| {
                (0..self.m1())
                    .map(|i| tnorm::residual_leq_raw(lambda, self.a.get(i, j), self.b1[i]))
                    .fold(1.0, f64::min)
            })
            .collect()
    }

    /// Checks both systems at `x` within an absolute tolerance: every upper
    /// composition at most `b¹_i + tol`, every lower composition at least
    /// `b²_i - tol`, and every coordinate inside `[-tol, 1 + tol]`.
    pub fn is_solution(&self, x: &[f64], tol: f64) -> bool {
        assert_eq!(
            x.len(),
            self.n(),
            "candidate has {} coordinates, problem has {}",
            x.len(),
            self.n()
        );
        if x.iter().any(|&v| v < -tol || v > 1.0 + tol) {
            return false;
        }
        let lambda = self.lambda.value();
        let row_composition = |matrix: &Matrix, i: usize| {
            x.iter()
                .enumerate()
                .map(|(j, &xj)| tnorm::tnorm_raw(lambda, matrix.get(i, j), xj.clamp(0.0, 1.0)))
                .fold(0.0, f64::max)
        };
        (0..self.m1()).all(|i| row_composition(&self.a, i) <= self.b1[i] + tol)
            && (0..self.m2()).all(|i| row_composition(&self.d, i) >= self.b2[i] - tol)
    }

    /// Runs the two consistency checks that decide feasibility outright.
    pub fn check_feasibility(&self, tol: f64) -> FeasibilityReport {
        let j2_sets = self.j2_sets();
        let lower_system_consistent = j2_sets.iter().all(|set| !set.is_empty());
        let x_max = self.max_solution();
        let joint_feasible = lower_system_consistent && self.lower_holds_at(&x_max, tol);
        FeasibilityReport {
            j2_sets,
            x_max,
            lower_system_consistent,
            joint_feasible,
        }
    }

    fn lower_holds_at(&self, x: &[f64], tol: f64) -> bool {
        let lambda = self.lambda.value();
        (0..self.m2()).all(|i| {
            let value = x
                .iter()
                .enumerate()
                .map(|(j, &xj)| tnorm::tnorm_raw(lambda, self.d.get(i, j), xj))
                .fold(0.0, f64::max);
            value >= self.b2[i] - tol
        })
    }
}

/// Outcome of [`Problem::check_feasibility`].
///
/// `lower_system_consistent` says whether each lower row can be satisfied at
/// all (its threshold-reaching column set is non-empty). `joint_feasible` adds
/// the upper system: the maximum solution of the upper system must itself
/// satisfy the lower one, since anything feasible is dominated by it.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibilityReport {
    pub j2_sets: Vec<Vec<usize>>,
    pub x_max: Vec<f64>,
    pub lower_system_consistent: bool,
    pub joint_feasible: bool,
}

/// Error from [`max_composition`] when the vector length does not match the
/// matrix width.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DimensionMismatch {
    pub cols: usize,
    pub len: usize,
}

impl fmt::Display for DimensionMismatch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "matrix has {} columns but the vector has {} entries",
            self.cols, self.len
        )
    }
}

impl std::error::Error for DimensionMismatch {}

/// Max-T_λ composition `M ∘ x`: component `i` is `max_j T_λ(m_ij, x_j)`.
pub fn max_composition(
    lambda: Lambda,
    matrix: &Matrix,
    x: &[f64],
) -> Result<Vec<f64>, DimensionMismatch> {
    if matrix.cols() != x.len() {
        return Err(DimensionMismatch {
            cols: matrix.cols(),
            len: x.len(),
        });
    }
    Ok((0..matrix.rows())
        .map(|i| {
            x.iter()
                .enumerate()
                .map(|(j, &xj)| tnorm::tnorm_raw(lambda.value(), matrix.get(i, j), xj))
                .fold(0.0, f64::max)
        })
        .collect())
}
