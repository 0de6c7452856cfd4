//! A dense 10 x 10 instance with both systems active and an assignment space
//! of 3,732,480,000, far too large to enumerate naively. Tests and benchmarks
//! use it as a fixed nontrivial workload.

use crate::system::Problem;

pub const LAMBDA: f64 = 2.0;

pub const A: [[f64; 10]; 10] = [
    [
        0.1576, 0.6557, 0.7060, 0.4387, 0.2760, 0.7513, 0.8407, 0.3517, 0.0759, 0.1622,
    ],
    [
        0.9706, 0.0357, 0.0318, 0.3816, 0.6797, 0.2551, 0.2543, 0.8308, 0.0540, 0.7943,
    ],
    [
        0.9572, 0.8491, 0.2769, 0.7655, 0.6551, 0.5060, 0.8143, 0.5853, 0.5308, 0.3112,
    ],
    [
        0.4854, 0.9340, 0.0462, 0.7952, 0.1626, 0.6991, 0.2435, 0.5497, 0.7792, 0.5285,
    ],
    [
        0.8003, 0.6787, 0.0971, 0.1869, 0.1190, 0.8909, 0.9293, 0.9172, 0.9340, 0.1656,
    ],
    [
        0.1419, 0.7577, 0.8235, 0.4898, 0.4984, 0.9593, 0.3500, 0.2858, 0.1299, 0.6020,
    ],
    [
        0.4218, 0.7431, 0.6948, 0.4456, 0.9597, 0.5472, 0.1966, 0.7572, 0.5688, 0.2630,
    ],
    [
        0.9157, 0.3922, 0.3171, 0.6463, 0.3404, 0.1386, 0.2511, 0.7537, 0.4694, 0.6541,
    ],
    [
        0.7922, 0.6555, 0.9502, 0.7094, 0.5853, 0.1493, 0.6160, 0.3804, 0.0119, 0.6892,
    ],
    [
        0.9595, 0.1712, 0.0344, 0.7547, 0.2238, 0.2575, 0.4733, 0.5678, 0.3371, 0.7482,
    ],
];

pub const B1: [f64; 10] = [
    0.4505, 0.0838, 0.2290, 0.9133, 0.1524, 0.8258, 0.5383, 0.9961, 0.0782, 0.4427,
];

pub const D: [[f64; 10]; 10] = [
    [
        0.3674, 0.4899, 0.9730, 0.6099, 0.3909, 0.4588, 0.6797, 0.9810, 0.8909, 0.0714,
    ],
    [
        0.9880, 0.1679, 0.6490, 0.6177, 0.8314, 0.7984, 0.1366, 0.0855, 0.3342, 0.5216,
    ],
    [
        0.9995, 0.9787, 0.8003, 0.8594, 0.8034, 0.9631, 0.7212, 0.2625, 0.6987, 0.0967,
    ],
    [
        0.0377, 0.7127, 0.4538, 0.8055, 0.0605, 0.5468, 0.7982, 0.8010, 0.1978, 0.8181,
    ],
    [
        0.8852, 0.5005, 0.4324, 0.5767, 0.3993, 0.5211, 0.1068, 0.0292, 0.8241, 0.8175,
    ],
    [
        0.9133, 0.4711, 0.8253, 0.8643, 0.5269, 0.2316, 0.6538, 0.9289, 0.0305, 0.7224,
    ],
    [
        0.7962, 0.9426, 0.0835, 0.1829, 0.4168, 0.4889, 0.4942, 0.7303, 0.7441, 0.1499,
    ],
    [
        0.0987, 0.0596, 0.1332, 0.2399, 0.6569, 0.6241, 0.7791, 0.4886, 0.5000, 0.7311,
    ],
    [
        0.2619, 0.6820, 0.8822, 0.8865, 0.6280, 0.6791, 0.7150, 0.5785, 0.4799, 0.6596,
    ],
    [
        0.3354, 0.0424, 0.1734, 0.0287, 0.8612, 0.3955, 0.9037, 0.2373, 0.9047, 0.5186,
    ],
];

pub const B2: [f64; 10] = [
    0.0492, 0.0876, 0.0864, 0.0810, 0.0471, 0.1292, 0.1511, 0.0392, 0.0291, 0.1028,
];

/// Builds the instance; the data is valid by construction.
pub fn problem() -> Problem {
    Problem::new(
        LAMBDA,
        A.iter().map(|row| row.to_vec()).collect(),
        B1.to_vec(),
        D.iter().map(|row| row.to_vec()).collect(),
        B2.to_vec(),
    )
    .expect("the bundled instance is valid")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;

    #[test]
    fn shape_and_assignment_space() {
        let p = problem();
        assert_eq!((p.n(), p.m1(), p.m2()), (10, 10, 10));

        let sizes: Vec<usize> = p.j2_sets().iter().map(Vec::len).collect();
        assert_eq!(sizes, vec![10, 9, 10, 8, 9, 9, 8, 10, 10, 8]);

        let report = p.check_feasibility(1e-9);
        let candidates = crate::solver::build_candidates(&p, &report, 1e-9);
        assert_eq!(
            *candidates.assignment_count(),
            BigUint::from(3_732_480_000u64)
        );
    }

    #[test]
    fn the_instance_is_feasible() {
        let p = problem();
        let report = p.check_feasibility(1e-9);
        assert!(report.lower_system_consistent);
        assert!(report.joint_feasible);
        assert!(p.is_solution(&report.x_max, 1e-9));

        assert!((report.x_max[0] - 0.09547123623011017).abs() < 1e-15);
        assert!((report.x_max[7] - 0.15802524797114520).abs() < 1e-15);
    }
}
