//! Oracle-backed checks for the tensor primitives: the contraction against
//! literal nested-loop summation, the scalar form against the contraction
//! identity, and structural invariants of the derived tensors.

use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tenclass_core::bnekrasov::decompose;
use tenclass_core::tensor::{
    add, comparison_tensor, contract_vector, is_z_tensor, polyval, scale_columns, DenseTensor,
};

// Naive summation oracles written as explicit nested loops with direct
// offset arithmetic; deliberately independent of the library's index
// machinery.

fn naive_contract_m2(a: &DenseTensor, v: &[f64]) -> Vec<f64> {
    let n = a.dim();
    let e = a.entries();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            out[i] += e[i * n + j] * v[j];
        }
    }
    out
}

fn naive_contract_m3(a: &DenseTensor, v: &[f64]) -> Vec<f64> {
    let n = a.dim();
    let e = a.entries();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                out[i] += e[(i * n + j) * n + k] * v[j] * v[k];
            }
        }
    }
    out
}

fn naive_contract_m4(a: &DenseTensor, v: &[f64]) -> Vec<f64> {
    let n = a.dim();
    let e = a.entries();
    let mut out = vec![0.0; n];
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    out[i] += e[((i * n + j) * n + k) * n + l] * v[j] * v[k] * v[l];
                }
            }
        }
    }
    out
}

fn naive_contract(a: &DenseTensor, v: &[f64]) -> Vec<f64> {
    match a.order() {
        2 => naive_contract_m2(a, v),
        3 => naive_contract_m3(a, v),
        4 => naive_contract_m4(a, v),
        m => panic!("no naive oracle for order {m}"),
    }
}

fn random_tensor(rng: &mut ChaCha8Rng, m: usize, n: usize) -> DenseTensor {
    let len = n.pow(m as u32);
    let entries = (0..len).map(|_| rng.random_range(-5.0..5.0)).collect();
    DenseTensor::new(m, n, entries).unwrap()
}

#[test]
fn contraction_matches_nested_loop_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for case in 0..100 {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(2..=4);
        let a = random_tensor(&mut rng, m, n);
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let got = contract_vector(&a, &v).unwrap();
        let want = naive_contract(&a, &v);
        for (g, w) in got.iter().zip(&want) {
            let scale = 1.0f64.max(w.abs());
            assert!(
                (g - w).abs() <= 1e-12 * scale,
                "case {case}: {g} vs {w} (m={m}, n={n})"
            );
        }
    }
}

#[test]
fn polyval_matches_contraction_dot_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(77);
    for _ in 0..100 {
        let m = rng.random_range(2..=4);
        let n = rng.random_range(2..=4);
        let a = random_tensor(&mut rng, m, n);
        let v: Vec<f64> = (0..n).map(|_| rng.random_range(-2.0..2.0)).collect();
        let direct = polyval(&a, &v).unwrap();
        let via_contraction: f64 = contract_vector(&a, &v)
            .unwrap()
            .iter()
            .zip(&v)
            .map(|(w, x)| w * x)
            .sum();
        let scale = 1.0f64.max(direct.abs());
        assert!((direct - via_contraction).abs() <= 1e-12 * scale);
    }
}

fn tensor_strategy() -> impl Strategy<Value = DenseTensor> {
    (2usize..=4, 1usize..=4).prop_flat_map(|(m, n)| {
        let len = n.pow(m as u32);
        proptest::collection::vec(-5.0f64..5.0, len)
            .prop_map(move |entries| DenseTensor::new(m, n, entries).unwrap())
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn comparison_tensor_is_idempotent(a in tensor_strategy()) {
        let c = comparison_tensor(&a);
        prop_assert_eq!(comparison_tensor(&c), c);
    }

    #[test]
    fn scaling_by_ones_is_the_identity_map(a in tensor_strategy()) {
        let ones = vec![1.0; a.dim()];
        prop_assert_eq!(scale_columns(&a, &ones).unwrap(), a);
    }

    #[test]
    fn decomposition_reassembles_bit_exact(a in tensor_strategy()) {
        let dec = decompose(&a);
        prop_assert_eq!(add(&dec.bplus, &dec.c).unwrap(), a.clone());
        prop_assert!(is_z_tensor(&dec.bplus));
        // C is nonnegative with constant rows
        for i0 in 0..a.dim() {
            let row = dec.c.row(i0 + 1).unwrap();
            prop_assert!(dec.rplus[i0] >= 0.0);
            prop_assert!(row.iter().all(|&x| x == dec.rplus[i0]));
        }
    }
}
