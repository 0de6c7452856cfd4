//! Candidate construction, minimal-solution enumeration, and the solver
//! front end.
//!
//! The feasible region of a joint system is a finite union of boxes: it is
//! bounded above by the single maximum solution `x̄` of the upper system and
//! below by the finitely many minimal solutions of the lower one. Every
//! minimal solution arises from an assignment that picks, for each lower row,
//! one column able to reach its threshold; the chosen column `j` is raised to
//! the residual value `v_ij = residual_geq(d_ij, b²_i)` and the vector is the
//! componentwise maximum of those spikes. Minimizing `z(x) = max_j x_j` over
//! the region therefore reduces to inspecting candidate values, and its
//! optimum has a closed form: the largest over rows of the smallest feasible
//! candidate in that row.
//!
//! The number of assignments is the product of the per-row candidate counts
//! and grows too fast to enumerate directly (it is in the billions for a
//! dense 10 x 10 system). [`enumerate_minimal_solutions`] instead runs a
//! depth-first search over rows that only ever raises coordinates when a row
//! is still unsatisfied, prunes branches dominated by an already recorded
//! vector, and reduces the recorded set to the antichain of its minima. The
//! first branching level is split into independent tasks, which is where the
//! `parallel` feature takes effect.

use crate::system::{FeasibilityReport, Problem};
use crate::tnorm;
use num_bigint::BigUint;
use std::fmt;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};
use thiserror::Error;

/// Solutions whose objective is within this of the optimum count as optimal.
pub const TIE_TOLERANCE: f64 = 1e-9;

/// Componentwise slack used when one vector is tested for dominating another,
/// and when two near-identical vectors are merged.
pub const DOMINANCE_TOLERANCE: f64 = 1e-9;

/// One admissible choice for a lower row: raising column `col` to `value`
/// satisfies the row, and `feasible` says whether that value stays inside
/// the box `[0, x̄]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate {
    pub col: usize,
    pub value: f64,
    pub feasible: bool,
}

/// Candidates of a single lower row, in ascending column order.
///
/// A row with threshold `0` is `vacuous`: every candidate value is `0`, any
/// vector satisfies it, and the search skips it entirely.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateRow {
    candidates: Vec<Candidate>,
    vacuous: bool,
}

impl CandidateRow {
    pub fn candidates(&self) -> &[Candidate] {
        &self.candidates
    }

    pub fn is_vacuous(&self) -> bool {
        self.vacuous
    }
}

/// All candidates of a problem, one row per lower inequality.
#[derive(Debug, Clone, PartialEq)]
pub struct CandidateMatrix {
    n: usize,
    rows: Vec<CandidateRow>,
    assignment_count: BigUint,
}

impl CandidateMatrix {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[CandidateRow] {
        &self.rows
    }

    /// Number of assignments the naive product enumeration would visit. Zero
    /// when some row has no candidate at all, i.e. the lower system is
    /// inconsistent.
    pub fn assignment_count(&self) -> &BigUint {
        &self.assignment_count
    }

    /// A copy whose feasible set is narrowed to candidates with value at most
    /// `cap`. Enumerating the capped matrix yields exactly the minimal
    /// solutions with objective at most `cap`.
    pub fn capped(&self, cap: f64) -> CandidateMatrix {
        CandidateMatrix {
            n: self.n,
            rows: self
                .rows
                .iter()
                .map(|row| CandidateRow {
                    candidates: row
                        .candidates
                        .iter()
                        .map(|c| Candidate {
                            feasible: c.feasible && c.value <= cap,
                            ..*c
                        })
                        .collect(),
                    vacuous: row.vacuous,
                })
                .collect(),
            assignment_count: self.assignment_count.clone(),
        }
    }
}

/// Computes every row's candidates against the box bound `report.x_max`.
/// A candidate is feasible when its value is at most `x̄_j + tolerance`.
pub fn build_candidates(
    problem: &Problem,
    report: &FeasibilityReport,
    tolerance: f64,
) -> CandidateMatrix {
    let lambda = problem.lambda().value();
    let mut assignment_count = BigUint::from(1u32);
    let mut rows = Vec::with_capacity(problem.m2());
    for i in 0..problem.m2() {
        let b = problem.b2()[i];
        let candidates: Vec<Candidate> = report.j2_sets[i]
            .iter()
            .map(|&j| {
                let value = tnorm::residual_geq_raw(lambda, problem.d().get(i, j), b);
                Candidate {
                    col: j,
                    value,
                    feasible: value <= report.x_max[j] + tolerance,
                }
            })
            .collect();
        assignment_count *= BigUint::from(candidates.len());
        rows.push(CandidateRow {
            candidates,
            vacuous: b == 0.0,
        });
    }
    CandidateMatrix {
        n: problem.n(),
        rows,
        assignment_count,
    }
}

/// Why a problem admits no solution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InfeasibilityReason {
    /// Some lower row has no column reaching its threshold; even the all-ones
    /// vector fails.
    LowerSystemInconsistent,
    /// The lower system is consistent on its own, but the upper system caps
    /// the box too low: its maximum solution violates a lower inequality.
    MaxSolutionViolatesLowerSystem,
}

impl InfeasibilityReason {
    pub fn as_str(self) -> &'static str {
        match self {
            InfeasibilityReason::LowerSystemInconsistent => "lower-system-inconsistent",
            InfeasibilityReason::MaxSolutionViolatesLowerSystem => {
                "max-solution-violates-lower-system"
            }
        }
    }
}

impl fmt::Display for InfeasibilityReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Error)]
pub enum SolveError {
    #[error("assignment has {found} entries, expected one per lower row ({expected})")]
    AssignmentLength { found: usize, expected: usize },
    #[error("assignment picks column {col} for row {row}, but that column cannot reach the row's threshold")]
    AssignmentColumn { row: usize, col: usize },
    #[error("row {row} has no candidate inside the box [0, x_max]; the instance is infeasible")]
    InfeasibleRow { row: usize },
    #[error("search budget exhausted before the enumeration completed")]
    BudgetExceeded { partial: Box<SolveResult> },
}

/// The componentwise maximum of one candidate spike per row: entry `i` of
/// `assignment` names the column chosen for lower row `i`. Candidates need
/// not be feasible; this is the plain algebraic map from assignments to
/// vectors.
pub fn assemble(
    candidates: &CandidateMatrix,
    assignment: &[usize],
) -> Result<Vec<f64>, SolveError> {
    if assignment.len() != candidates.rows.len() {
        return Err(SolveError::AssignmentLength {
            found: assignment.len(),
            expected: candidates.rows.len(),
        });
    }
    let mut x = vec![0.0f64; candidates.n];
    for (row, (&col, cands)) in assignment.iter().zip(&candidates.rows).enumerate() {
        let candidate = cands
            .candidates
            .iter()
            .find(|c| c.col == col)
            .ok_or(SolveError::AssignmentColumn { row, col })?;
        x[col] = x[col].max(candidate.value);
    }
    Ok(x)
}

/// `z*`, the smallest achievable objective: the maximum over rows of the
/// smallest feasible candidate value in that row. Vacuous rows contribute
/// nothing; a non-vacuous row with no feasible candidate makes the instance
/// infeasible and is reported as an error.
pub fn optimal_value(candidates: &CandidateMatrix) -> Result<f64, SolveError> {
    let mut z = 0.0f64;
    for (row, cands) in candidates.rows.iter().enumerate() {
        let best = cands
            .candidates
            .iter()
            .filter(|c| c.feasible)
            .map(|c| c.value)
            .fold(f64::INFINITY, f64::min);
        if best.is_infinite() {
            return Err(SolveError::InfeasibleRow { row });
        }
        z = z.max(best);
    }
    Ok(z)
}

/// A minimal solution of the joint system. `objective` is `max_j x_j`;
/// `witness`, when requested, is an assignment (one column per lower row)
/// that assembles back into `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct MinimalSolution {
    pub x: Vec<f64>,
    pub objective: f64,
    pub witness: Option<Vec<usize>>,
}

/// Optional caps on the search. A cap that trips marks the enumeration
/// incomplete; the solutions found so far are still reduced and returned.
#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub max_solutions: Option<u64>,
    pub max_nodes: Option<u64>,
    pub time_budget: Option<Duration>,
}

/// Output of [`enumerate_minimal_solutions`]: the reduced solution set in
/// lexicographic order, plus the raw search counters. The counters do not
/// depend on how many threads ran the search.
#[derive(Debug, Clone)]
pub struct Enumeration {
    pub solutions: Vec<MinimalSolution>,
    pub complete: bool,
    pub nodes_expanded: u64,
    pub solutions_recorded: u64,
}

struct ActiveRow {
    index: usize,
    cands: Vec<(usize, f64)>,
}

impl ActiveRow {
    fn satisfied(&self, p: &[f64]) -> bool {
        self.cands.iter().any(|&(col, value)| value <= p[col])
    }
}

struct Shared<'a> {
    rows: &'a [ActiveRow],
    limits: &'a SearchLimits,
    deadline: Option<Instant>,
    nodes: AtomicU64,
    recorded: AtomicU64,
    stopped: AtomicBool,
}

impl Shared<'_> {
    fn halt_requested(&self) -> bool {
        if self.stopped.load(Ordering::Relaxed) {
            return true;
        }
        if let Some(max) = self.limits.max_nodes {
            if self.nodes.load(Ordering::Relaxed) >= max {
                self.stopped.store(true, Ordering::Relaxed);
                return true;
            }
        }
        if let Some(deadline) = self.deadline {
            if Instant::now() >= deadline {
                self.stopped.store(true, Ordering::Relaxed);
                return true;
            }
        }
        false
    }

    fn try_record(&self) -> bool {
        if let Some(max) = self.limits.max_solutions {
            if self.recorded.load(Ordering::Relaxed) >= max {
                self.stopped.store(true, Ordering::Relaxed);
                return false;
            }
        }
        self.recorded.fetch_add(1, Ordering::Relaxed);
        true
    }
}

fn dominates(y: &[f64], x: &[f64]) -> bool {
    y.iter()
        .zip(x)
        .all(|(yi, xi)| *yi <= xi + DOMINANCE_TOLERANCE)
}

/// Core recursion. `p` is the partial vector built so far; `found` holds the
/// leaves recorded by this task only, so pruning never observes another
/// task's progress and the node count is reproducible under any scheduling.
fn dfs(shared: &Shared, found: &mut Vec<Vec<f64>>, p: &mut Vec<f64>) {
    if shared.halt_requested() {
        return;
    }
    shared.nodes.fetch_add(1, Ordering::Relaxed);
    if found.iter().any(|r| dominates(r, p)) {
        return;
    }
    let unsatisfied = shared.rows.iter().find(|row| !row.satisfied(p));
    let Some(row) = unsatisfied else {
        if shared.try_record() {
            found.push(p.clone());
        }
        return;
    };
    for &(col, value) in &row.cands {
        if shared.stopped.load(Ordering::Relaxed) {
            return;
        }
        debug_assert!(value > p[col], "branching must raise the coordinate");
        let prev = p[col];
        p[col] = value;
        dfs(shared, found, p);
        p[col] = prev;
    }
}

/// Sorts ascending, merges vectors equal within [`DOMINANCE_TOLERANCE`], and
/// keeps only undominated ones. Of two survivors that dominate each other
/// (possible only at tolerance knife edges), the lexicographically smaller
/// stays.
fn reduce_to_minima(mut recorded: Vec<Vec<f64>>) -> Vec<Vec<f64>> {
    recorded.sort_by(|a, b| a.partial_cmp(b).unwrap());
    recorded.dedup_by(|a, b| {
        a.iter()
            .zip(b.iter())
            .all(|(x, y)| (x - y).abs() <= DOMINANCE_TOLERANCE)
    });
    let keep: Vec<bool> = (0..recorded.len())
        .map(|i| {
            !(0..recorded.len()).any(|j| {
                j != i
                    && dominates(&recorded[j], &recorded[i])
                    && (!dominates(&recorded[i], &recorded[j]) || j < i)
            })
        })
        .collect();
    recorded
        .into_iter()
        .zip(keep)
        .filter_map(|(x, k)| k.then_some(x))
        .collect()
}

/// For each row, the first feasible candidate already covered by `x`. Only
/// called for vectors that satisfy every row.
fn canonical_witness(candidates: &CandidateMatrix, x: &[f64]) -> Vec<usize> {
    candidates
        .rows
        .iter()
        .map(|row| {
            row.candidates
                .iter()
                .find(|c| c.feasible && c.value <= x[c.col])
                .map(|c| c.col)
                .expect("an enumerated solution satisfies every row")
        })
        .collect()
}

/// Enumerates the minimal solutions encoded by a candidate matrix.
///
/// Only feasible candidates are branched on. The result is sorted
/// lexicographically; `complete` is false when a limit tripped first, in
/// which case the reduced set found so far is returned. With the `parallel`
/// feature the first branching level fans out across the ambient rayon pool.
pub fn enumerate_minimal_solutions(
    candidates: &CandidateMatrix,
    limits: &SearchLimits,
    witnesses: bool,
) -> Enumeration {
    enumerate_with(candidates, limits, witnesses, !cfg!(feature = "parallel"))
}

fn enumerate_with(
    candidates: &CandidateMatrix,
    limits: &SearchLimits,
    witnesses: bool,
    sequential: bool,
) -> Enumeration {
    let n = candidates.n;
    let mut active: Vec<ActiveRow> = candidates
        .rows
        .iter()
        .enumerate()
        .filter(|(_, row)| !row.vacuous)
        .map(|(index, row)| ActiveRow {
            index,
            cands: row
                .candidates
                .iter()
                .filter(|c| c.feasible)
                .map(|c| (c.col, c.value))
                .collect(),
        })
        .collect();

    if active.iter().any(|row| row.cands.is_empty()) {
        return Enumeration {
            solutions: Vec::new(),
            complete: true,
            nodes_expanded: 0,
            solutions_recorded: 0,
        };
    }

    if active.is_empty() {
        let x = vec![0.0; n];
        let witness = witnesses.then(|| canonical_witness(candidates, &x));
        return Enumeration {
            solutions: vec![MinimalSolution {
                objective: 0.0,
                witness,
                x,
            }],
            complete: true,
            nodes_expanded: 1,
            solutions_recorded: 1,
        };
    }

    // Fail-first: rows with few candidates branch early, shrinking the tree.
    // The order is fixed up front so every run expands the same nodes.
    active.sort_by_key(|row| (row.cands.len(), row.index));

    let shared = Shared {
        rows: &active,
        limits,
        deadline: limits.time_budget.map(|budget| Instant::now() + budget),
        nodes: AtomicU64::new(0),
        recorded: AtomicU64::new(0),
        stopped: AtomicBool::new(false),
    };

    let tasks = active[0].cands.clone();
    let run_task = |&(col, value): &(usize, f64)| -> Vec<Vec<f64>> {
        let mut p = vec![0.0; n];
        p[col] = value;
        let mut found = Vec::new();
        dfs(&shared, &mut found, &mut p);
        found
    };

    #[cfg(feature = "parallel")]
    let buckets: Vec<Vec<Vec<f64>>> = if sequential {
        tasks.iter().map(run_task).collect()
    } else {
        use rayon::prelude::*;
        tasks.par_iter().map(run_task).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let buckets: Vec<Vec<Vec<f64>>> = {
        let _ = sequential;
        tasks.iter().map(run_task).collect()
    };

    let recorded: Vec<Vec<f64>> = buckets.into_iter().flatten().collect();
    let solutions = reduce_to_minima(recorded)
        .into_iter()
        .map(|x| MinimalSolution {
            objective: x.iter().copied().fold(0.0, f64::max),
            witness: witnesses.then(|| canonical_witness(candidates, &x)),
            x,
        })
        .collect();

    Enumeration {
        solutions,
        complete: !shared.stopped.load(Ordering::Relaxed),
        nodes_expanded: shared.nodes.load(Ordering::Relaxed),
        solutions_recorded: shared.recorded.load(Ordering::Relaxed),
    }
}

#[derive(Debug, Clone)]
pub struct SolveOptions {
    /// Absolute tolerance for feasibility checks and the candidate box test.
    pub tolerance: f64,
    /// Enumerate the full minimal-solution set instead of only the optimal
    /// ones. Considerably more work on instances with many minima.
    pub all_minimal: bool,
    /// Attach an assignment witness to each solution.
    pub witnesses: bool,
    pub limits: SearchLimits,
    /// `None` uses the ambient rayon pool, `Some(1)` a plain sequential loop,
    /// `Some(k)` a dedicated pool of `k` threads. Ignored when the crate is
    /// built without the `parallel` feature; the search is sequential then.
    pub threads: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> SolveOptions {
        SolveOptions {
            tolerance: crate::system::DEFAULT_TOLERANCE,
            all_minimal: false,
            witnesses: false,
            limits: SearchLimits::default(),
            threads: None,
        }
    }
}

#[derive(Debug, Clone)]
pub struct SolveStats {
    pub nodes_expanded: u64,
    pub solutions_recorded: u64,
    /// Size of the full assignment space the search avoided enumerating.
    pub assignment_count: BigUint,
    pub elapsed: Duration,
}

/// Everything [`solve`] establishes about an instance.
///
/// For an infeasible instance, `reason` names the failed consistency check
/// and the solution fields are empty. For a feasible one, `z_star` holds the
/// optimum, `optimal_solutions` the minimal solutions attaining it, and
/// `minimal_solutions` the full minimal set when it was requested. `report`
/// always carries the box bound and the per-row threshold-reaching columns.
#[derive(Debug, Clone)]
pub struct SolveResult {
    pub feasible: bool,
    pub reason: Option<InfeasibilityReason>,
    pub report: FeasibilityReport,
    pub z_star: Option<f64>,
    pub optimal_solutions: Vec<MinimalSolution>,
    pub minimal_solutions: Option<Vec<MinimalSolution>>,
    pub stats: SolveStats,
}

#[cfg(feature = "parallel")]
fn run_enumeration(
    candidates: &CandidateMatrix,
    limits: &SearchLimits,
    witnesses: bool,
    threads: Option<usize>,
) -> Enumeration {
    match threads {
        Some(1) => enumerate_with(candidates, limits, witnesses, true),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .expect("building a dedicated rayon pool")
            .install(|| enumerate_with(candidates, limits, witnesses, false)),
        None => enumerate_with(candidates, limits, witnesses, false),
    }
}

#[cfg(not(feature = "parallel"))]
fn run_enumeration(
    candidates: &CandidateMatrix,
    limits: &SearchLimits,
    witnesses: bool,
    _threads: Option<usize>,
) -> Enumeration {
    enumerate_with(candidates, limits, witnesses, true)
}

/// Decides feasibility, computes the optimum, and enumerates solutions.
///
/// Infeasible instances come back as `Ok` with `feasible == false`; the
/// `Err` cases are exhausted budgets (carrying the partial result) and the
/// knife-edge situation where the feasibility probe and the candidate box
/// test disagree within tolerance.
pub fn solve(problem: &Problem, options: &SolveOptions) -> Result<SolveResult, SolveError> {
    let start = Instant::now();
    let report = problem.check_feasibility(options.tolerance);
    let candidates = build_candidates(problem, &report, options.tolerance);
    let assignment_count = candidates.assignment_count.clone();

    let reason = if !report.lower_system_consistent {
        Some(InfeasibilityReason::LowerSystemInconsistent)
    } else if !report.joint_feasible {
        Some(InfeasibilityReason::MaxSolutionViolatesLowerSystem)
    } else {
        None
    };
    if reason.is_some() {
        return Ok(SolveResult {
            feasible: false,
            reason,
            report,
            z_star: None,
            optimal_solutions: Vec::new(),
            minimal_solutions: None,
            stats: SolveStats {
                nodes_expanded: 0,
                solutions_recorded: 0,
                assignment_count,
                elapsed: start.elapsed(),
            },
        });
    }

    let z = optimal_value(&candidates)?;

    let enumeration = if options.all_minimal {
        run_enumeration(
            &candidates,
            &options.limits,
            options.witnesses,
            options.threads,
        )
    } else {
        let capped = candidates.capped(z + TIE_TOLERANCE);
        run_enumeration(&capped, &options.limits, options.witnesses, options.threads)
    };

    let optimal_solutions: Vec<MinimalSolution> = enumeration
        .solutions
        .iter()
        .filter(|s| s.objective <= z + TIE_TOLERANCE)
        .cloned()
        .collect();

    let result = SolveResult {
        feasible: true,
        reason: None,
        report,
        z_star: Some(z),
        optimal_solutions,
        minimal_solutions: options.all_minimal.then(|| enumeration.solutions.clone()),
        stats: SolveStats {
            nodes_expanded: enumeration.nodes_expanded,
            solutions_recorded: enumeration.solutions_recorded,
            assignment_count,
            elapsed: start.elapsed(),
        },
    };

    if !enumeration.complete {
        return Err(SolveError::BudgetExceeded {
            partial: Box::new(result),
        });
    }

    let enumerated_minimum = result
        .optimal_solutions
        .iter()
        .map(|s| s.objective)
        .fold(f64::INFINITY, f64::min);
    assert!(
        (enumerated_minimum - z).abs() <= TIE_TOLERANCE,
        "closed-form optimum {z} disagrees with enumerated minimum {enumerated_minimum}"
    );

    Ok(result)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::DEFAULT_TOLERANCE;

    fn two_row_problem() -> Problem {
        Problem::new(
            1.0,
            vec![],
            vec![],
            vec![vec![0.9, 0.5], vec![0.4, 0.8]],
            vec![0.3, 0.3],
        )
        .unwrap()
    }

    fn candidates_of(problem: &Problem) -> CandidateMatrix {
        let report = problem.check_feasibility(DEFAULT_TOLERANCE);
        build_candidates(problem, &report, DEFAULT_TOLERANCE)
    }

    fn close(a: &[f64], b: &[f64]) -> bool {
        a.len() == b.len() && a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
    }

    #[test]
    fn candidate_values_are_row_residuals() {
        let problem = two_row_problem();
        let candidates = candidates_of(&problem);
        assert_eq!(candidates.n(), 2);
        assert_eq!(*candidates.assignment_count(), BigUint::from(4u32));

        let row0 = candidates.rows()[0].candidates();
        assert_eq!(row0[0].col, 0);
        assert!((row0[0].value - 0.7 / 1.9).abs() < 1e-12);
        assert!((row0[1].value - 1.1 / 1.5).abs() < 1e-12);
        assert!(row0.iter().all(|c| c.feasible));

        let row1 = candidates.rows()[1].candidates();
        assert!((row1[0].value - 1.2 / 1.4).abs() < 1e-12);
        assert!((row1[1].value - 0.8 / 1.8).abs() < 1e-12);
        assert!(!candidates.rows().iter().any(CandidateRow::is_vacuous));
    }

    #[test]
    fn enumeration_finds_the_three_minima() {
        let problem = two_row_problem();
        let candidates = candidates_of(&problem);
        let out = enumerate_minimal_solutions(&candidates, &SearchLimits::default(), true);
        assert!(out.complete);
        assert_eq!(out.solutions.len(), 3);
        assert!(close(&out.solutions[0].x, &[0.0, 1.1 / 1.5]));
        assert!(close(&out.solutions[1].x, &[0.7 / 1.9, 0.8 / 1.8]));
        assert!(close(&out.solutions[2].x, &[1.2 / 1.4, 0.0]));
        assert_eq!(out.nodes_expanded, 4);
        assert_eq!(out.solutions_recorded, 3);

        for solution in &out.solutions {
            assert!(problem.is_solution(&solution.x, DEFAULT_TOLERANCE));
            let witness = solution.witness.as_ref().unwrap();
            assert_eq!(assemble(&candidates, witness).unwrap(), solution.x);
        }
    }

    #[test]
    fn closed_form_optimum_matches_enumeration() {
        let candidates = candidates_of(&two_row_problem());
        let z = optimal_value(&candidates).unwrap();
        assert!((z - 0.8 / 1.8).abs() < 1e-12);

        let capped = candidates.capped(z + TIE_TOLERANCE);
        let out = enumerate_minimal_solutions(&capped, &SearchLimits::default(), false);
        assert_eq!(out.solutions.len(), 1);
        assert!(close(&out.solutions[0].x, &[0.7 / 1.9, 0.8 / 1.8]));
    }

    #[test]
    fn assemble_validates_the_assignment() {
        let candidates = candidates_of(&two_row_problem());
        let x = assemble(&candidates, &[0, 1]).unwrap();
        assert!(close(&x, &[0.7 / 1.9, 0.8 / 1.8]));

        assert!(matches!(
            assemble(&candidates, &[0]),
            Err(SolveError::AssignmentLength {
                found: 1,
                expected: 2
            })
        ));
        assert!(matches!(
            assemble(&candidates, &[0, 7]),
            Err(SolveError::AssignmentColumn { row: 1, col: 7 })
        ));
    }

    #[test]
    fn assignment_column_must_reach_the_threshold() {
        let problem = Problem::new(1.0, vec![], vec![], vec![vec![0.9, 0.1]], vec![0.5]).unwrap();
        let candidates = candidates_of(&problem);
        assert!(matches!(
            assemble(&candidates, &[1]),
            Err(SolveError::AssignmentColumn { row: 0, col: 1 })
        ));
    }

    #[test]
    fn solve_reports_the_unique_optimal_solution() {
        let problem = two_row_problem();
        let result = solve(&problem, &SolveOptions::default()).unwrap();
        assert!(result.feasible);
        assert_eq!(result.reason, None);
        assert!((result.z_star.unwrap() - 0.8 / 1.8).abs() < 1e-12);
        assert_eq!(result.optimal_solutions.len(), 1);
        assert!(result.minimal_solutions.is_none());
        assert!(result.stats.nodes_expanded > 0);
    }

    #[test]
    fn solve_all_minimal_keeps_both_sets() {
        let problem = two_row_problem();
        let options = SolveOptions {
            all_minimal: true,
            witnesses: true,
            ..SolveOptions::default()
        };
        let result = solve(&problem, &options).unwrap();
        let minimal = result.minimal_solutions.as_ref().unwrap();
        assert_eq!(minimal.len(), 3);
        assert_eq!(result.optimal_solutions.len(), 1);
        assert!(minimal
            .iter()
            .all(|s| s.witness.is_some() && s.objective <= 1.0));
    }

    #[test]
    fn inconsistent_lower_system_is_reported_not_searched() {
        let problem = Problem::new(1.0, vec![], vec![], vec![vec![0.2, 0.3]], vec![0.9]).unwrap();
        let result = solve(&problem, &SolveOptions::default()).unwrap();
        assert!(!result.feasible);
        assert_eq!(
            result.reason,
            Some(InfeasibilityReason::LowerSystemInconsistent)
        );
        assert_eq!(result.z_star, None);
        assert!(result.optimal_solutions.is_empty());
        assert_eq!(result.stats.nodes_expanded, 0);
        assert_eq!(result.stats.assignment_count, BigUint::from(0u32));
    }

    #[test]
    fn upper_system_can_make_the_joint_problem_infeasible() {
        let problem = Problem::new(
            1.0,
            vec![vec![0.95]],
            vec![0.025],
            vec![vec![0.7]],
            vec![0.35],
        )
        .unwrap();
        let result = solve(&problem, &SolveOptions::default()).unwrap();
        assert!(!result.feasible);
        assert_eq!(
            result.reason,
            Some(InfeasibilityReason::MaxSolutionViolatesLowerSystem)
        );

        let candidates = candidates_of(&problem);
        assert!(matches!(
            optimal_value(&candidates),
            Err(SolveError::InfeasibleRow { row: 0 })
        ));
    }

    #[test]
    fn zero_thresholds_solve_to_the_zero_vector() {
        let problem = Problem::new(
            2.0,
            vec![],
            vec![],
            vec![vec![0.4, 0.6], vec![0.5, 0.2]],
            vec![0.0, 0.0],
        )
        .unwrap();
        let options = SolveOptions {
            all_minimal: true,
            witnesses: true,
            ..SolveOptions::default()
        };
        let result = solve(&problem, &options).unwrap();
        assert_eq!(result.z_star, Some(0.0));
        let minimal = result.minimal_solutions.unwrap();
        assert_eq!(minimal.len(), 1);
        assert_eq!(minimal[0].x, vec![0.0, 0.0]);
        assert_eq!(minimal[0].witness, Some(vec![0, 0]));
    }

    #[test]
    fn node_budget_returns_the_partial_result() {
        let problem = two_row_problem();
        let options = SolveOptions {
            all_minimal: true,
            limits: SearchLimits {
                max_nodes: Some(1),
                ..SearchLimits::default()
            },
            ..SolveOptions::default()
        };
        let err = solve(&problem, &options).unwrap_err();
        let SolveError::BudgetExceeded { partial } = err else {
            panic!("expected a budget error");
        };
        assert!(partial.feasible);
        assert_eq!(partial.stats.nodes_expanded, 1);
    }

    #[test]
    fn solution_cap_marks_the_run_incomplete() {
        let problem = two_row_problem();
        let options = SolveOptions {
            all_minimal: true,
            limits: SearchLimits {
                max_solutions: Some(1),
                ..SearchLimits::default()
            },
            ..SolveOptions::default()
        };
        let err = solve(&problem, &options).unwrap_err();
        let SolveError::BudgetExceeded { partial } = err else {
            panic!("expected a budget error");
        };
        assert_eq!(partial.stats.solutions_recorded, 1);
    }

    #[test]
    fn reduce_drops_dominated_and_duplicate_vectors() {
        let reduced = reduce_to_minima(vec![
            vec![0.5, 0.2],
            vec![0.5, 0.2 + 1e-12],
            vec![0.6, 0.3],
            vec![0.1, 0.9],
        ]);
        assert_eq!(reduced, vec![vec![0.1, 0.9], vec![0.5, 0.2]]);
    }

    #[test]
    fn sequential_and_parallel_agree() {
        let problem = Problem::new(
            0.5,
            vec![],
            vec![],
            vec![
                vec![0.9, 0.5, 0.7],
                vec![0.4, 0.8, 0.6],
                vec![0.7, 0.7, 0.9],
            ],
            vec![0.3, 0.3, 0.4],
        )
        .unwrap();
        let base = solve(
            &problem,
            &SolveOptions {
                all_minimal: true,
                threads: Some(1),
                ..SolveOptions::default()
            },
        )
        .unwrap();
        for threads in [None, Some(2), Some(4)] {
            let other = solve(
                &problem,
                &SolveOptions {
                    all_minimal: true,
                    threads,
                    ..SolveOptions::default()
                },
            )
            .unwrap();
            assert_eq!(base.minimal_solutions, other.minimal_solutions);
            assert_eq!(base.stats.nodes_expanded, other.stats.nodes_expanded);
            assert_eq!(
                base.stats.solutions_recorded,
                other.stats.solutions_recorded
            );
        }
    }
}
