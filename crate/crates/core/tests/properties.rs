mod common;

use std::collections::HashSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use symdisc_core::nearest::{critical_points, nearest_in_discriminant, project_eigenvalues, verify_criticality};
use symdisc_core::randgeom::{gap_probability, gauss_hermite};
use symdisc_core::rng::replica_rng;
use symdisc_core::strata::{
    count_planes, enumerate_multiplicity_vectors, enumerate_partitions_of_type, multiplicity_pattern,
    MultiplicityVector,
};
use symdisc_core::symmat::{char_poly, discriminant, goe_sample, random_orthogonal};
use symdisc_core::SymmetricMatrix;

fn matrix_strategy(max_n: usize) -> impl Strategy<Value = SymmetricMatrix> {
    (1..=max_n).prop_flat_map(|n| {
        prop::collection::vec(-10.0f64..10.0, n * (n + 1) / 2)
            .prop_map(move |packed| SymmetricMatrix::from_packed(n, packed).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn spectral_decomposition_reconstructs(a in matrix_strategy(12)) {
        let sd = a.eigendecompose().unwrap();
        let bound = 1.0 + a.frobenius_norm();
        prop_assert!(sd.reconstruction_residual(&a) <= 1e-10 * bound);
        prop_assert!(sd.orthogonality_residual() <= 1e-10 * bound);
        prop_assert!(sd.eigenvalues.windows(2).all(|w| w[0] >= w[1]));
        let tr: f64 = sd.eigenvalues.iter().sum();
        prop_assert!((tr - a.trace()).abs() <= 1e-10 * bound);
    }

    #[test]
    fn frobenius_norm_is_spectral(a in matrix_strategy(10)) {
        let eig = a.eigenvalues().unwrap();
        let s: f64 = eig.iter().map(|l| l * l).sum();
        prop_assert!((s.sqrt() - a.frobenius_norm()).abs() <= 1e-10 * (1.0 + a.frobenius_norm()));
    }

    #[test]
    fn discriminant_is_nonnegative(a in matrix_strategy(7)) {
        prop_assert!(discriminant(&a).unwrap() >= 0.0);
    }

    #[test]
    fn char_poly_is_monic_with_trace(a in matrix_strategy(6)) {
        let p = char_poly(&a);
        prop_assert!(p.is_monic());
        prop_assert_eq!(p.degree(), Some(a.n()));
        // The subleading coefficient is exactly −tr(A) over the rationals.
        let sum: num_rational::BigRational = (0..a.n())
            .map(|i| num_rational::BigRational::from_float(a.get(i, i)).unwrap())
            .sum();
        prop_assert_eq!(p.coeff(a.n() - 1), -sum);
    }

    #[test]
    fn projection_is_orthogonal(lam in prop::collection::vec(-5.0f64..5.0, 2..7), pick in 0usize..1000) {
        let n = lam.len();
        let strata = enumerate_multiplicity_vectors(n, false);
        let w = &strata[pick % strata.len()];
        let parts = enumerate_partitions_of_type(w);
        let p = &parts[pick % parts.len()];
        let mu = project_eigenvalues(&lam, p).unwrap();
        // Residual is orthogonal to every block indicator and μ is constant on blocks.
        for b in p.blocks() {
            let r: f64 = b.iter().map(|&i| lam[i] - mu[i]).sum();
            prop_assert!(r.abs() <= 1e-12 * (1.0 + b.len() as f64));
            prop_assert!(b.iter().all(|&i| mu[i] == mu[b[0]]));
        }
        let twice = project_eigenvalues(&mu, p).unwrap();
        for (x, y) in mu.iter().zip(&twice) {
            prop_assert!((x - y).abs() <= 1e-12);
        }
    }

    #[test]
    fn gauss_hermite_weights_positive_and_sum_to_sqrt_pi(m in 1usize..=64) {
        let r = gauss_hermite(m).unwrap();
        prop_assert!(r.weights.iter().all(|&w| w > 0.0));
        let total: f64 = r.weights.iter().sum();
        prop_assert!((total - std::f64::consts::PI.sqrt()).abs() <= 1e-12);
    }
}

#[test]
fn nearest_matches_pair_formula_and_is_equivariant() {
    let mut rng = replica_rng(90, 0);
    for n in 2..=8 {
        for _ in 0..20 {
            let a = goe_sample(n, &mut rng);
            let cp = nearest_in_discriminant(&a).unwrap();
            let eig = a.eigenvalues().unwrap();
            let gap = eig.windows(2).map(|w| w[0] - w[1]).fold(f64::INFINITY, f64::min);
            assert!((cp.distance - gap / std::f64::consts::SQRT_2).abs() <= 1e-10 * cp.distance);

            let q = random_orthogonal(n, &mut rng);
            let b = a.conjugate(&q);
            let cq = nearest_in_discriminant(&b).unwrap();
            assert!((cq.distance - cp.distance).abs() <= 1e-8);
            assert!((&cq.matrix - &cp.matrix.conjugate(&q)).frobenius_norm() <= 1e-8);
        }
    }
}

#[test]
fn critical_points_are_equivariant_as_sets() {
    let mut rng = replica_rng(91, 0);
    for n in 3..=5 {
        let a = goe_sample(n, &mut rng);
        let q = random_orthogonal(n, &mut rng);
        let b = a.conjugate(&q);
        for w in enumerate_multiplicity_vectors(n, true) {
            let ca = critical_points(&a, &w).unwrap();
            let cb = critical_points(&b, &w).unwrap();
            assert_eq!(ca.len(), cb.len());
            for x in &ca {
                let xq = x.matrix.conjugate(&q);
                assert!(cb.iter().any(|y| (&y.matrix - &xq).frobenius_norm() <= 1e-8), "{w}");
            }
            for cp in &ca {
                assert!(verify_criticality(&a, cp, &w).unwrap() <= 1e-8);
            }
        }
    }
}

#[test]
fn global_minimum_beats_descent_oracle() {
    let mut rng = replica_rng(92, 0);
    for n in 2..=6 {
        for _ in 0..5 {
            let a = goe_sample(n, &mut rng);
            let d = nearest_in_discriminant(&a).unwrap().distance;
            let found = common::descent_oracle(&a, 200, 60, &mut rng);
            assert!(found >= d - 1e-6, "n={n}: oracle {found} < {d}");
        }
    }
}

#[test]
fn prescribed_multiplicities_are_detected() {
    let mut rng = replica_rng(93, 0);
    for n in 1..=7 {
        for w in enumerate_multiplicity_vectors(n, false) {
            // Distinct block values spaced ≥ 0.5 apart, each repeated by its block size.
            let mut lam = Vec::new();
            for (k, size) in w.block_sizes().into_iter().enumerate() {
                let v = k as f64 * 0.75 - 1.0 + 0.1 * rand::Rng::random::<f64>(&mut rng);
                lam.extend(std::iter::repeat_n(v, size));
            }
            let q = random_orthogonal(n, &mut rng);
            let a = SymmetricMatrix::from_diagonal(&lam).conjugate(&q);
            assert_eq!(multiplicity_pattern(&a).unwrap(), w);
        }
    }
}

#[test]
fn set_partition_counts_match_brute_force() {
    for n in 1..=9 {
        let brute = common::partition_counts_by_type(n);
        for w in enumerate_multiplicity_vectors(n, false) {
            let listed = enumerate_partitions_of_type(&w);
            let distinct: HashSet<_> = listed.iter().collect();
            assert_eq!(distinct.len(), listed.len());
            assert_eq!(BigUint::from(listed.len()), count_planes(&w));
            assert_eq!(listed.len() as u64, brute[w.as_slice()], "{w}");
        }
        let total: u64 = brute.values().sum();
        assert_eq!(total, common::bell(n));
    }
    assert_eq!(common::bell(4), 15);
    assert_eq!(common::bell(5), 52);
}

#[test]
fn gap_probability_is_quadratic_at_small_eps() {
    // P(gap ≤ ε)/ε² should not increase as ε grows in the small-ε regime.
    let eps = [0.05, 0.1, 0.2];
    let reports: Vec<_> = eps
        .iter()
        .map(|&e| gap_probability(3, e, 400_000, 94).unwrap())
        .collect();
    for (i, j) in [(0usize, 1usize), (1, 2)] {
        let ri = reports[i].estimate / (eps[i] * eps[i]);
        let rj = reports[j].estimate / (eps[j] * eps[j]);
        let se = reports[i].std_error / (eps[i] * eps[i]) + reports[j].std_error / (eps[j] * eps[j]);
        assert!(rj <= ri + 3.0 * se, "ratio rose from {ri} to {rj}");
    }
}

#[test]
fn strata_covering_on_random_one_double() {
    let w = MultiplicityVector::one_double(4).unwrap();
    let mut rng = replica_rng(95, 0);
    let q = random_orthogonal(4, &mut rng);
    let a = SymmetricMatrix::from_diagonal(&[2.0, 1.0, 1.0, -1.0]).conjugate(&q);
    assert_eq!(multiplicity_pattern(&a).unwrap(), w);
}
