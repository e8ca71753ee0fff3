//! Cross-class properties: the equivalence of the two B-Nekrasov routes,
//! the containments along the class chain, the scaling certificate, and
//! the matrix degeneration of the `Lambda` recursion.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tenclass_core::bnekrasov::{
    check_conditions, decompose, is_b_nekrasov_conditions, is_b_nekrasov_definition,
};
use tenclass_core::nekrasov::{is_nekrasov, lambda_vector};
use tenclass_core::sample;
use tenclass_core::scaling::{
    build_w, has_trailing_nonzero, is_nonsingular_h, spectral_radius_nonneg,
};
use tenclass_core::tensor::{offdiag_row_sum, rank_index, scale_columns, DenseTensor};

/// Strict diagonal dominance re-checked with direct offset arithmetic,
/// independent of the library predicate.
fn strictly_dominant_by_hand(t: &DenseTensor) -> bool {
    let n = t.dim();
    let row_len = t.row_len();
    for i in 1..=n {
        let diag_off = rank_index(n, &vec![i; t.order() - 1]).unwrap();
        let row = &t.entries()[(i - 1) * row_len..i * row_len];
        let mut r = 0.0;
        for (off, &x) in row.iter().enumerate() {
            if off != diag_off {
                r += x.abs();
            }
        }
        if !(row[diag_off].abs() > r) {
            return false;
        }
    }
    true
}

/// Smallest strictness margin shared by the two B-Nekrasov routes; instances
/// this close to a boundary are not float-decidable and get skipped.
fn equivalence_margin(a: &DenseTensor) -> f64 {
    let dec = decompose(a);
    let mut margin = f64::INFINITY;
    match lambda_vector(&dec.bplus) {
        Ok(lambda) => {
            for i0 in 0..a.dim() {
                let d = dec.bplus.diagonal_entry(i0 + 1).unwrap();
                margin = margin.min((d.abs() - lambda.values[i0]).abs());
                margin = margin.min(d.abs());
            }
        }
        Err(_) => return 0.0, // a zero B+ diagonal is itself a boundary case
    }
    let report = check_conditions(a, 0.0);
    margin = margin.min(report.row1_sum.abs());
    if report.mean_gap.is_finite() {
        margin = margin.min(report.mean_gap.abs());
    }
    for g in &report.margins_b {
        margin = margin.min(g.abs());
    }
    margin
}

#[test]
fn b_nekrasov_routes_agree_on_random_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(1234);
    let mut checked = 0usize;
    let mut skipped = 0usize;
    while checked < 300 {
        let m = if rng.random_range(0.0..1.0) < 0.5 { 2 } else { 4 };
        let n = rng.random_range(2..=4);
        let a = sample::uniform_diag_boosted(&mut rng, m, n);
        if equivalence_margin(&a) <= 100.0 * f64::EPSILON * 256.0 {
            skipped += 1;
            continue;
        }
        let by_def = is_b_nekrasov_definition(&a, 0.0).holds();
        let by_cond = is_b_nekrasov_conditions(&a, 0.0).holds();
        assert_eq!(by_def, by_cond, "routes disagree on m={m}, n={n}: {a:?}");

        // whenever condition (a) holds the first B+ diagonal entry must
        // dominate its Lambda value
        let report = check_conditions(&a, 0.0);
        if report.cond_a {
            let dec = decompose(&a);
            let d = dec.bplus.diagonal_entry(1).unwrap();
            assert!(d > 0.0);
            let lambda1 = offdiag_row_sum(&dec.bplus, 1).unwrap();
            assert!(lambda1 < d);
        }
        checked += 1;
    }
    assert!(skipped < 100, "too many boundary instances skipped: {skipped}");
}

#[test]
fn both_routes_hold_on_members_and_split_on_verdicts() {
    // sanity: the generator pool must produce members as well as failures,
    // otherwise the agreement test is vacuous
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    let mut holds = 0;
    let mut fails = 0;
    for _ in 0..200 {
        let a = sample::uniform_diag_boosted(&mut rng, 4, 3);
        if is_b_nekrasov_definition(&a, 0.0).holds() {
            holds += 1;
        } else {
            fails += 1;
        }
    }
    assert!(holds >= 20, "only {holds} members generated");
    assert!(fails >= 20, "only {fails} failures generated");
}

#[test]
fn nekrasov_z_with_positive_diagonal_is_b_nekrasov() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..100 {
        let m = rng.random_range(3..=4);
        let n = rng.random_range(2..=4);
        let a = sample::nekrasov_z_posdiag(&mut rng, m, n);
        assert!(is_b_nekrasov_definition(&a, 0.0).holds());
    }
}

#[test]
fn strictly_dominant_tensors_are_nekrasov() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for _ in 0..100 {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(2..=4);
        let a = sample::sdd(&mut rng, m, n);
        assert!(is_nekrasov(&a, 0.0).holds(), "{a:?}");
    }
}

#[test]
fn lambda_stays_below_the_row_sums_on_nekrasov_instances() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..100 {
        let m = rng.random_range(3..=4);
        let n = rng.random_range(2..=4);
        let a = sample::nekrasov(&mut rng, m, n);
        let lambda = lambda_vector(&a).unwrap();
        assert!(lambda.ratios.iter().all(|&r| r < 1.0));
        for i in 1..=a.dim() {
            let r = offdiag_row_sum(&a, i).unwrap();
            assert!(lambda.values[i - 1] <= r + 1e-12 * (1.0 + r));
        }
    }
}

#[test]
fn verdicts_are_stable_under_tolerance_choice() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..50 {
        let a = sample::nekrasov(&mut rng, 3, 3);
        let lambda = lambda_vector(&a).unwrap();
        let min_margin = (0..a.dim())
            .map(|i0| a.diagonal_entry(i0 + 1).unwrap().abs() - lambda.values[i0])
            .fold(f64::INFINITY, f64::min);
        assert!(min_margin > 0.0);
        let tol = min_margin / 20.0; // margins exceed 10 * tol
        assert_eq!(is_nekrasov(&a, 0.0).holds(), is_nekrasov(&a, tol).holds());
    }
}

#[test]
fn scaling_certificate_dominates_for_every_eps_fraction() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..60 {
        let m = rng.random_range(3..=4);
        let n = rng.random_range(2..=4);
        let b = sample::nekrasov(&mut rng, m, n);
        for i in 1..n {
            assert!(has_trailing_nonzero(&b, i, false).unwrap());
        }
        for frac in [0.1, 0.5, 0.9] {
            let cert = build_w(&b, frac).unwrap();
            assert!(cert.w.iter().all(|&wi| wi > 0.0 && wi < 1.0));
            let scaled = scale_columns(&b, &cert.w).unwrap();
            assert!(strictly_dominant_by_hand(&scaled));
            assert!(cert.margins.iter().all(|&g| g > 0.0));
        }
    }
}

#[test]
fn nekrasov_tensors_are_nonsingular_h() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..60 {
        let m = rng.random_range(3..=4);
        let n = rng.random_range(2..=4);
        let a = sample::nekrasov(&mut rng, m, n);
        assert!(is_nonsingular_h(&a, 0.0).unwrap().holds(), "{a:?}");
    }
}

#[test]
fn spectral_radius_is_monotone_in_the_entries() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..40 {
        let m: usize = rng.random_range(2..=3);
        let n: usize = rng.random_range(2..=3);
        let len = n.pow(m as u32);
        let big: Vec<f64> = (0..len).map(|_| rng.random_range(0.0..2.0)).collect();
        let small: Vec<f64> = big
            .iter()
            .map(|&x| x * rng.random_range(0.0..1.0))
            .collect();
        let b_small = DenseTensor::new(m, n, small).unwrap();
        let b_big = DenseTensor::new(m, n, big).unwrap();
        let rho_small = spectral_radius_nonneg(&b_small, 1e-9, 20_000).unwrap();
        let rho_big = spectral_radius_nonneg(&b_big, 1e-9, 20_000).unwrap();
        assert!(rho_small <= rho_big + 1e-7, "{rho_small} vs {rho_big}");
    }
}

/// Direct matrix implementation of the Nekrasov recursion, used to pin the
/// `m = 2` degeneration of the tensor code path.
fn matrix_lambda(a: &DenseTensor) -> Option<Vec<f64>> {
    let n = a.dim();
    let e = a.entries();
    let mut lam = vec![0.0; n];
    for j in 1..n {
        lam[0] += e[j].abs();
    }
    for i in 1..n {
        if e[(i - 1) * n + (i - 1)] == 0.0 {
            return None;
        }
        let mut s = 0.0;
        for j in 0..i {
            s += e[i * n + j].abs() * lam[j] / e[j * n + j].abs();
        }
        for j in i + 1..n {
            s += e[i * n + j].abs();
        }
        lam[i] = s;
    }
    Some(lam)
}

fn matrix_is_nekrasov(a: &DenseTensor) -> bool {
    let n = a.dim();
    let e = a.entries();
    if (0..n).any(|i| e[i * n + i] == 0.0) {
        return false;
    }
    match matrix_lambda(a) {
        Some(lam) => (0..n).all(|i| e[i * n + i].abs() > lam[i]),
        None => false,
    }
}

#[test]
fn matrix_degeneration_matches_direct_implementation() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..100 {
        let a = sample::matrix(&mut rng, 5);
        let direct = matrix_lambda(&a).unwrap();
        let tensor_path = lambda_vector(&a).unwrap();
        for (d, t) in direct.iter().zip(&tensor_path.values) {
            assert!((d - t).abs() <= 1e-12 * (1.0 + d.abs()));
        }
        assert_eq!(matrix_is_nekrasov(&a), is_nekrasov(&a, 0.0).holds());
    }
}
