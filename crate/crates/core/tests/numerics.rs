mod common;

use aaa_lawson::{generalized_eigenvalues, smallest_singular_vector, ComplexMatrix};
use common::*;
use proptest::prelude::*;

#[test]
fn random_10x4_matches_jacobi_oracle() {
    let mut r = rng(20240611);
    let a = random_matrix(&mut r, 10, 4);
    let (v, s) = smallest_singular_vector(&a).unwrap();
    let (w, so) = jacobi_smallest(&a);
    let fro = a.frobenius_norm();
    assert!((s - so).abs() <= 1e-12 * fro, "{s} vs {so}");
    let ip: C = w.iter().zip(&v).map(|(x, y)| x.conj() * y).sum();
    assert!((ip.norm() - 1.0).abs() < 1e-10, "vectors differ beyond a phase: |<w,v>| = {}", ip.norm());
}

#[test]
fn smallest_sigma_is_minimal_over_random_probes() {
    let mut r = rng(7);
    for trial in 0..1000 {
        let cols = r_usize(&mut r, 1, 20);
        let rows = r_usize(&mut r, cols, 50);
        let a = random_matrix(&mut r, rows, cols);
        let fro = a.frobenius_norm();
        let (v, s) = smallest_singular_vector(&a).unwrap();
        assert!((vnorm(&v) - 1.0).abs() <= 1e-14, "trial {trial}");
        let av = vnorm(&a.mul_vec(&v).unwrap());
        assert!((av - s).abs() <= 4.0 * f64::EPSILON * s.max(f64::MIN_POSITIVE), "{av} vs {s}");
        for _ in 0..100 {
            let u = random_unit(&mut r, cols);
            let au = vnorm(&a.mul_vec(&u).unwrap());
            assert!(av <= au + 1e-12 * fro, "trial {trial}: {av} > {au}");
        }
    }
}

#[test]
fn sigma_agrees_with_oracle_on_ill_conditioned_columns() {
    let mut r = rng(99);
    for _ in 0..50 {
        let mut a = random_matrix(&mut r, 30, 6);
        for i in 0..30 {
            let x = a[(i, 0)] + a[(i, 1)] * 1e-3;
            a[(i, 5)] = x + randn(&mut r) * 1e-9;
        }
        let (_, s) = smallest_singular_vector(&a).unwrap();
        let (_, so) = jacobi_smallest(&a);
        assert!((s - so).abs() <= 1e-12 * a.frobenius_norm());
    }
}

#[test]
fn random_6x6_pencil_matches_determinant_roots() {
    let mut r = rng(31337);
    let a = random_matrix(&mut r, 6, 6);
    let b = random_matrix(&mut r, 6, 6);
    let ev = generalized_eigenvalues(&a, &b).unwrap();
    assert_eq!(ev.infinite, 0);
    assert_eq!(ev.finite.len(), 6);
    let roots = poly_roots(&char_poly(&a, &b));
    for (z, d) in ev.finite.iter().zip(match_sets(&ev.finite, &roots)) {
        assert!(d <= 1e-8 * z.norm().max(1.0), "{z} off by {d}");
    }
}

#[test]
fn pencil_residuals_are_small() {
    let mut r = rng(5);
    for _ in 0..100 {
        let n = r_usize(&mut r, 1, 12);
        let a = random_matrix(&mut r, n, n);
        let b = random_matrix(&mut r, n, n);
        let ev = generalized_eigenvalues(&a, &b).unwrap();
        assert_eq!(ev.finite.len() + ev.infinite, n);
        for &l in &ev.finite {
            // smallest singular value of A - λB bounds the residual of the best eigenvector
            let m = ComplexMatrix::from_fn(n, n, |i, j| a[(i, j)] - l * b[(i, j)]);
            let (_, s) = jacobi_smallest(&m);
            assert!(s <= 1e-10 * (a.frobenius_norm() + l.norm() * b.frobenius_norm()), "residual {s}");
        }
    }
}

#[test]
fn arrowhead_pencils_shed_exactly_two_infinite_eigenvalues() {
    let mut r = rng(11);
    for _ in 0..200 {
        let n = r_usize(&mut r, 1, 20);
        let t: Vec<C> = (0..=n).map(|_| randn(&mut r) * 2.0).collect();
        let beta: Vec<C> = (0..=n).map(|_| randn(&mut r)).collect();
        let m = n + 2;
        let a = ComplexMatrix::from_fn(m, m, |i, j| match (i, j) {
            (0, 0) => c(0.0, 0.0),
            (0, j) => beta[j - 1],
            (_, 0) => c(1.0, 0.0),
            (i, j) if i == j => t[i - 1],
            _ => c(0.0, 0.0),
        });
        let mut b = ComplexMatrix::identity(m);
        b[(0, 0)] = c(0.0, 0.0);
        let ev = generalized_eigenvalues(&a, &b).unwrap();
        assert_eq!(ev.infinite, 2, "n = {n}: {:?}", ev.finite);
    }
}

#[test]
fn kernels_are_deterministic() {
    let mut r = rng(3);
    let a = random_matrix(&mut r, 40, 12);
    assert_eq!(smallest_singular_vector(&a).unwrap(), smallest_singular_vector(&a).unwrap());
    let p = random_matrix(&mut r, 9, 9);
    let q = random_matrix(&mut r, 9, 9);
    assert_eq!(generalized_eigenvalues(&p, &q).unwrap(), generalized_eigenvalues(&p, &q).unwrap());
}

fn r_usize(r: &mut rand::rngs::StdRng, lo: usize, hi: usize) -> usize {
    use rand::Rng;
    r.gen_range(lo..=hi)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eigenvalue_count_is_size(n in 1usize..10, seed in any::<u64>(), zero_rows in 0usize..3) {
        let mut r = rng(seed);
        let a = random_matrix(&mut r, n, n);
        let mut b = random_matrix(&mut r, n, n);
        for i in 0..zero_rows.min(n) {
            for j in 0..n {
                b[(i, j)] = c(0.0, 0.0);
            }
        }
        let ev = generalized_eigenvalues(&a, &b).unwrap();
        prop_assert_eq!(ev.finite.len() + ev.infinite, n);
        prop_assert!(ev.infinite >= zero_rows.min(n));
    }

    #[test]
    fn singular_vector_has_unit_norm(rows in 1usize..30, extra in 0usize..10, seed in any::<u64>()) {
        let cols = rows.min(1 + extra);
        let mut r = rng(seed);
        let a = random_matrix(&mut r, rows, cols);
        let (v, _) = smallest_singular_vector(&a).unwrap();
        prop_assert!((vnorm(&v) - 1.0).abs() <= 1e-14);
    }
}
