//! Seeded generators for the random instances the property and stress
//! suites run on. All sampling goes through a caller-supplied RNG so runs
//! are reproducible from a single seed.

use rand::Rng;

use crate::tensor::{diag_offset, DenseTensor};

/// Entries uniform in `[-2, 2]` with most diagonals boosted to the scale
/// where the membership boundaries of the dominance-style classes sit.
/// Spans members, near-members and clear failures.
pub fn uniform_diag_boosted<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    let row_len = dim.pow(order as u32 - 1);
    let mut entries: Vec<f64> = (0..dim * row_len)
        .map(|_| rng.random_range(-2.0..2.0))
        .collect();
    for i0 in 0..dim {
        let diag = i0 * row_len + diag_offset(dim, order - 1, i0);
        if rng.random_range(0.0..1.0) < 0.15 {
            continue; // leave an unboosted diagonal now and then
        }
        entries[diag] = rng.random_range(1.0..3.5) * row_len as f64;
    }
    DenseTensor::new(order, dim, entries).expect("generated shape is valid")
}

/// Random Nekrasov tensor: off-diagonals uniform in `[-1, 1]`, then each
/// diagonal entry is placed just above the row's `Lambda` value, so the
/// tensor is usually Nekrasov without being strictly diagonally dominant.
/// Every row short of the last keeps a nonzero entry reaching beyond it.
pub fn nekrasov<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    build_nekrasov(rng, order, dim, false)
}

/// Nekrasov Z-tensor with positive diagonal: as [`nekrasov`] but with
/// nonpositive off-diagonals.
pub fn nekrasov_z_posdiag<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    build_nekrasov(rng, order, dim, true)
}

fn build_nekrasov<R: Rng>(rng: &mut R, order: usize, dim: usize, z: bool) -> DenseTensor {
    let row_len = dim.pow(order as u32 - 1);
    let mut entries: Vec<f64> = (0..dim * row_len)
        .map(|_| {
            if z {
                rng.random_range(-1.0..0.0)
            } else {
                rng.random_range(-1.0..1.0)
            }
        })
        .collect();
    for i0 in 0..dim {
        entries[i0 * row_len + diag_offset(dim, order - 1, i0)] = 0.0;
    }
    // keep the trailing-nonzero scaling hypothesis available
    for i0 in 0..dim.saturating_sub(1) {
        let beyond = i0 * row_len + row_len - 1; // tuple (n, ..., n)
        if entries[beyond] == 0.0 {
            entries[beyond] = if z { -0.3 } else { 0.3 };
        }
    }
    set_diagonal_above_lambda(rng, &mut entries, order, dim, row_len);
    DenseTensor::new(order, dim, entries).expect("generated shape is valid")
}

/// Walks rows in order, computing each row's `Lambda` from the diagonals
/// already fixed and then placing that diagonal slightly above it.
fn set_diagonal_above_lambda<R: Rng>(
    rng: &mut R,
    entries: &mut [f64],
    order: usize,
    dim: usize,
    row_len: usize,
) {
    let exponent = 1.0 / (order as f64 - 1.0);
    let mut root_ratios: Vec<f64> = Vec::with_capacity(dim);
    for i0 in 0..dim {
        let diag = diag_offset(dim, order - 1, i0);
        let row = &entries[i0 * row_len..(i0 + 1) * row_len];
        let mut lambda = 0.0;
        let mut tuple = vec![1usize; order - 1];
        for (off, &x) in row.iter().enumerate() {
            if off != diag {
                if i0 > 0 && tuple.iter().all(|&c| c <= i0) {
                    let mut term = x.abs();
                    for &c in &tuple {
                        term *= root_ratios[c - 1];
                    }
                    lambda += term;
                } else {
                    lambda += x.abs();
                }
            }
            for pos in (0..order - 1).rev() {
                if tuple[pos] < dim {
                    tuple[pos] += 1;
                    break;
                }
                tuple[pos] = 1;
            }
        }
        let d = (lambda + 0.05) * rng.random_range(1.02..1.7);
        entries[i0 * row_len + diag] = d;
        root_ratios.push((lambda / d).powf(exponent));
    }
}

/// Strictly diagonally dominant tensor with randomly signed diagonal.
pub fn sdd<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    let row_len = dim.pow(order as u32 - 1);
    let mut entries: Vec<f64> = (0..dim * row_len)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    for i0 in 0..dim {
        let diag = diag_offset(dim, order - 1, i0);
        let row_sum: f64 = entries[i0 * row_len..(i0 + 1) * row_len]
            .iter()
            .enumerate()
            .filter(|(off, _)| *off != diag)
            .map(|(_, x)| x.abs())
            .sum();
        let sign = if rng.random_range(0.0..1.0) < 0.5 {
            1.0
        } else {
            -1.0
        };
        entries[i0 * row_len + diag] = sign * (row_sum + rng.random_range(0.1..2.0));
    }
    DenseTensor::new(order, dim, entries).expect("generated shape is valid")
}

/// Guaranteed B-Nekrasov instance: a Nekrasov Z-tensor with positive
/// diagonal and one exact zero off-diagonal per row, plus nonnegative
/// constant rows. The zero per row pins `r_i^+` to the added constant, so
/// the decomposition recovers the Z part exactly.
pub fn b_nekrasov<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    let mut base = nekrasov_z_posdiag(rng, order, dim);
    let row_len = base.row_len();
    let mut entries = base.entries().to_vec();
    for i0 in 0..dim {
        let diag = diag_offset(dim, order - 1, i0);
        if row_len > 1 {
            let mut off = rng.random_range(0..row_len - 1);
            if off >= diag {
                off += 1;
            }
            entries[i0 * row_len + off] = 0.0;
        }
        let c = if rng.random_range(0.0..1.0) < 0.3 {
            0.0
        } else {
            rng.random_range(0.0..2.0)
        };
        for x in entries[i0 * row_len..(i0 + 1) * row_len].iter_mut() {
            *x += c;
        }
    }
    base = DenseTensor::new(order, dim, entries).expect("generated shape is valid");
    base
}

/// Random tensor with one diagonal entry forced negative; for even order
/// the matching axis vector disproves the P property.
pub fn negative_diagonal<R: Rng>(rng: &mut R, order: usize, dim: usize) -> DenseTensor {
    let row_len = dim.pow(order as u32 - 1);
    let mut entries: Vec<f64> = (0..dim * row_len)
        .map(|_| rng.random_range(-1.0..1.0))
        .collect();
    let k0 = rng.random_range(0..dim);
    entries[k0 * row_len + diag_offset(dim, order - 1, k0)] = -rng.random_range(0.5..2.0);
    DenseTensor::new(order, dim, entries).expect("generated shape is valid")
}

/// Random matrix (order 2) with diagonal entries bounded away from zero.
pub fn matrix<R: Rng>(rng: &mut R, dim: usize) -> DenseTensor {
    let mut entries: Vec<f64> = (0..dim * dim)
        .map(|_| rng.random_range(-3.0..3.0))
        .collect();
    for i0 in 0..dim {
        let d = &mut entries[i0 * dim + i0];
        if d.abs() < 0.1 {
            *d = if *d < 0.0 { -0.5 } else { 0.5 };
        }
        // scale some diagonals up so verdicts split both ways
        if rng.random_range(0.0..1.0) < 0.5 {
            *d *= rng.random_range(2.0..6.0);
        }
    }
    DenseTensor::new(2, dim, entries).expect("generated shape is valid")
}

/// Right-hand side with at least one negative component.
pub fn q_with_negative<R: Rng>(rng: &mut R, dim: usize) -> Vec<f64> {
    let mut q: Vec<f64> = (0..dim).map(|_| rng.random_range(-3.0..1.0)).collect();
    if q.iter().all(|&x| x >= 0.0) {
        let k = rng.random_range(0..dim);
        q[k] = -rng.random_range(0.5..2.0);
    }
    q
}
