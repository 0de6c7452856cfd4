//! Reference implementations for testing: a brute-force enumerator that walks
//! the entire assignment space, and a seeded random instance generator.
//!
//! The brute force shares nothing with the search in [`crate::solver`] beyond
//! the residual formulas themselves. It assembles every assignment directly
//! from the definitions, filters against the box bound, and reduces by exact
//! pairwise comparison, so agreement between the two is meaningful evidence.

use crate::system::{Problem, DEFAULT_TOLERANCE};
use crate::tnorm;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

/// Assignment spaces beyond this are refused by [`brute_force_minimal`]
/// unless the caller raises the cap.
pub const DEFAULT_BRUTE_FORCE_CAP: u64 = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{assignments} assignments exceed the brute-force cap of {cap}")]
    CapExceeded { assignments: BigUint, cap: u64 },
}

/// Enumerates the minimal solutions of the joint system by full assignment
/// sweep: one spike per lower row, componentwise maximum, keep vectors inside
/// `[0, x̄]`, then drop exact duplicates and dominated vectors. Returns them
/// in lexicographic order. An inconsistent lower system yields an empty set.
pub fn brute_force_minimal(problem: &Problem, cap: u64) -> Result<Vec<Vec<f64>>, OracleError> {
    let j2 = problem.j2_sets();
    if j2.iter().any(Vec::is_empty) {
        return Ok(Vec::new());
    }
    let assignments = j2.iter().fold(BigUint::from(1u32), |acc, set| {
        acc * BigUint::from(set.len())
    });
    if assignments > BigUint::from(cap) {
        return Err(OracleError::CapExceeded { assignments, cap });
    }

    let lambda = problem.lambda().value();
    let x_max = problem.max_solution();
    let n = problem.n();
    let m2 = problem.m2();

    let spikes: Vec<Vec<(usize, f64)>> = (0..m2)
        .map(|i| {
            j2[i]
                .iter()
                .map(|&j| {
                    let v = tnorm::residual_geq_raw(lambda, problem.d().get(i, j), problem.b2()[i]);
                    (j, v)
                })
                .collect()
        })
        .collect();

    let mut inside_box = Vec::new();
    let mut index = vec![0usize; m2];
    'sweep: loop {
        let mut x = vec![0.0; n];
        for (row, &choice) in index.iter().enumerate() {
            let (col, value) = spikes[row][choice];
            if value > x[col] {
                x[col] = value;
            }
        }
        if x.iter()
            .zip(&x_max)
            .all(|(xj, bound)| *xj <= bound + DEFAULT_TOLERANCE)
        {
            inside_box.push(x);
        }
        let mut position = m2;
        loop {
            if position == 0 {
                break 'sweep;
            }
            position -= 1;
            index[position] += 1;
            if index[position] < spikes[position].len() {
                break;
            }
            index[position] = 0;
        }
    }

    inside_box.sort_by(|a, b| a.partial_cmp(b).unwrap());
    inside_box.dedup();
    let minimal = inside_box
        .iter()
        .filter(|x| {
            !inside_box
                .iter()
                .any(|y| y != *x && y.iter().zip(x.iter()).all(|(yi, xi)| yi <= xi))
        })
        .cloned()
        .collect();
    Ok(minimal)
}

/// Shape and distribution of a generated instance.
#[derive(Debug, Clone)]
pub struct GeneratorConfig {
    pub n: usize,
    /// Upper rows; zero omits the upper system entirely.
    pub m1: usize,
    pub m2: usize,
    /// The parameter is drawn uniformly from this closed interval.
    pub lambda_range: (f64, f64),
    /// Probability that a lower row gets at least one column reaching its
    /// threshold. At `1.0` the lower system is consistent by construction;
    /// below that, rows are deliberately spoiled so infeasible instances show
    /// up too.
    pub density: f64,
    pub seed: u64,
}

/// Draws an instance from a fixed-seed ChaCha stream, so every call with the
/// same config yields the same problem on every platform.
///
/// Satisfiable lower rows get a 5% chance of a zero threshold, exercising the
/// vacuous-row path; spoiled rows have all entries scaled below the threshold
/// so their column set comes out empty.
pub fn random_instance(config: &GeneratorConfig) -> Problem {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let (lo, hi) = config.lambda_range;
    let lambda = rng.random_range(lo..=hi);

    let a: Vec<Vec<f64>> = (0..config.m1)
        .map(|_| (0..config.n).map(|_| rng.random()).collect())
        .collect();
    let b1: Vec<f64> = (0..config.m1).map(|_| rng.random()).collect();

    let mut d = Vec::with_capacity(config.m2);
    let mut b2 = Vec::with_capacity(config.m2);
    for _ in 0..config.m2 {
        let mut row: Vec<f64> = (0..config.n).map(|_| rng.random()).collect();
        if rng.random::<f64>() < config.density {
            if rng.random::<f64>() < 0.05 {
                b2.push(0.0);
            } else {
                let threshold = rng.random_range(0.0..1.0);
                let lucky = rng.random_range(0..config.n);
                row[lucky] = row[lucky].max(rng.random_range(threshold..=1.0));
                b2.push(threshold);
            }
        } else {
            for value in &mut row {
                *value *= 0.9;
            }
            let row_max = row.iter().fold(0.0f64, |m, &v| m.max(v));
            b2.push(rng.random_range((row_max + 1e-6)..1.0));
        }
        d.push(row);
    }

    Problem::new(lambda, a, b1, d, b2).expect("generated data is valid by construction")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_on_a_two_row_system() {
        let problem = Problem::new(
            1.0,
            vec![],
            vec![],
            vec![vec![0.9, 0.5], vec![0.4, 0.8]],
            vec![0.3, 0.3],
        )
        .unwrap();
        let minimal = brute_force_minimal(&problem, DEFAULT_BRUTE_FORCE_CAP).unwrap();
        assert_eq!(minimal.len(), 3);
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9);
        assert!(close(&minimal[0], &[0.0, 1.1 / 1.5]));
        assert!(close(&minimal[1], &[0.7 / 1.9, 0.8 / 1.8]));
        assert!(close(&minimal[2], &[1.2 / 1.4, 0.0]));

        assert!(matches!(
            brute_force_minimal(&problem, 3),
            Err(OracleError::CapExceeded { cap: 3, .. })
        ));
    }

    #[test]
    fn brute_force_is_empty_when_the_box_excludes_every_spike() {
        let problem = Problem::new(
            1.0,
            vec![vec![0.95]],
            vec![0.025],
            vec![vec![0.7]],
            vec![0.35],
        )
        .unwrap();
        assert_eq!(
            brute_force_minimal(&problem, DEFAULT_BRUTE_FORCE_CAP).unwrap(),
            Vec::<Vec<f64>>::new()
        );
    }

    #[test]
    fn generation_is_reproducible_and_seed_sensitive() {
        let config = GeneratorConfig {
            n: 5,
            m1: 2,
            m2: 4,
            lambda_range: (-0.9, 20.0),
            density: 0.8,
            seed: 42,
        };
        assert_eq!(random_instance(&config), random_instance(&config));
        let other = random_instance(&GeneratorConfig {
            seed: 43,
            ..config.clone()
        });
        assert_ne!(random_instance(&config), other);
    }

    #[test]
    fn density_controls_lower_consistency() {
        for seed in 0..20 {
            let consistent = random_instance(&GeneratorConfig {
                n: 4,
                m1: 0,
                m2: 5,
                lambda_range: (0.0, 5.0),
                density: 1.0,
                seed,
            });
            assert!(consistent.j2_sets().iter().all(|set| !set.is_empty()));

            let spoiled = random_instance(&GeneratorConfig {
                n: 4,
                m1: 0,
                m2: 5,
                lambda_range: (0.0, 5.0),
                density: 0.0,
                seed,
            });
            assert!(spoiled.j2_sets().iter().all(Vec::is_empty));
        }
    }
}
