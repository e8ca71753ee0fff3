//! Falsification search for the P and P0 tensor properties.
//!
//! A vector `v != 0` disproves the P property when `v_i (A v^{m-1})_i <= 0`
//! on every coordinate where `v` is nonzero, i.e. when the objective
//! `f(v) = max_{i: v_i != 0} v_i (A v^{m-1})_i` is nonpositive. The search
//! combines an exhaustive sign-pattern layer (small dimensions), seeded
//! random unit vectors and a projected finite-difference descent on the
//! unit sphere. A NotFalsified outcome is evidence, not a proof: deciding
//! the P property is co-NP-hard in general.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::tensor::{contract_vector, DenseTensor, TensorError, TupleCursor};

/// Coordinates with `|v_i| <= MASK_REL_TOL * max|v|` are treated as zero
/// when the objective takes its maximum.
pub const MASK_REL_TOL: f64 = 1e-9;
/// Finite-difference step of the descent refinement.
const FD_STEP: f64 = 1e-6;
/// Descent iterations per start.
const DESCENT_ITERS: usize = 200;
/// Sign patterns are enumerated exhaustively up to this dimension.
const SIGN_PATTERN_MAX_DIM: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PStatus {
    Falsified,
    NotFalsified,
}

/// Outcome of a falsification run.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PVerdict {
    pub status: PStatus,
    /// Unit-norm counterexample, present iff falsified.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<Vec<f64>>,
    /// Objective value at the worst vector seen.
    pub worst_value: f64,
    /// Total objective evaluations spent.
    pub samples_used: usize,
}

impl PVerdict {
    pub fn falsified(&self) -> bool {
        self.status == PStatus::Falsified
    }
}

/// The search objective `max_{i masked in} v_i (A v^{m-1})_i`.
///
/// Returns `+inf` for the zero vector, which therefore never falsifies.
pub fn worst_component_value(a: &DenseTensor, v: &[f64]) -> f64 {
    let w = contract_vector(a, v).expect("dimension checked by caller");
    let vinf = v.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    if vinf == 0.0 {
        return f64::INFINITY;
    }
    let cut = MASK_REL_TOL * vinf;
    let mut worst = f64::NEG_INFINITY;
    for (vi, wi) in v.iter().zip(&w) {
        if vi.abs() > cut {
            worst = worst.max(vi * wi);
        }
    }
    worst
}

/// Searches for a vector disproving the P property; falsified iff the best
/// objective value found is `<= -tol`.
pub fn p_falsify(a: &DenseTensor, budget: usize, starts: usize, tol: f64, seed: u64) -> PVerdict {
    let (best_value, best_vector, samples) = search(a, budget, starts, seed);
    finish(best_value, best_vector, samples, best_value <= -tol)
}

/// P0 variant: falsified only on a strictly negative margin, `f < -tol`.
pub fn p0_falsify(a: &DenseTensor, budget: usize, starts: usize, tol: f64, seed: u64) -> PVerdict {
    let (best_value, best_vector, samples) = search(a, budget, starts, seed);
    finish(best_value, best_vector, samples, best_value < -tol)
}

fn finish(value: f64, vector: Vec<f64>, samples: usize, falsified: bool) -> PVerdict {
    PVerdict {
        status: if falsified {
            PStatus::Falsified
        } else {
            PStatus::NotFalsified
        },
        witness: falsified.then_some(vector),
        worst_value: value,
        samples_used: samples,
    }
}

fn search(a: &DenseTensor, budget: usize, starts: usize, seed: u64) -> (f64, Vec<f64>, usize) {
    let n = a.dim();
    let mut samples = 0usize;
    let mut pool: Vec<(f64, Vec<f64>)> = Vec::new();
    let eval = |v: Vec<f64>, samples: &mut usize, pool: &mut Vec<(f64, Vec<f64>)>| {
        let f = worst_component_value(a, &v);
        *samples += 1;
        pool.push((f, v));
    };

    // exhaustive sign patterns catch axis-aligned counterexamples exactly
    if n <= SIGN_PATTERN_MAX_DIM {
        let mut cursor = TupleCursor::new(3, n);
        for _ in 0..3usize.pow(n as u32) {
            let v: Vec<f64> = cursor.digits().iter().map(|&d| d as f64 - 2.0).collect();
            cursor.advance();
            if v.iter().all(|&x| x == 0.0) {
                continue;
            }
            eval(normalized(v), &mut samples, &mut pool);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..budget {
        let v: Vec<f64> = (0..n).map(|_| rng.sample(StandardNormal)).collect();
        if v.iter().all(|&x| x == 0.0) {
            continue;
        }
        eval(normalized(v), &mut samples, &mut pool);
    }

    pool.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("objective values are finite"));
    let mut best = pool
        .first()
        .cloned()
        .unwrap_or((f64::INFINITY, vec![0.0; n]));

    for (f0, v0) in pool.iter().take(starts).cloned() {
        let (f, v, used) = descend(a, v0, f0);
        samples += used;
        if f < best.0 {
            best = (f, v);
        }
    }
    (best.0, best.1, samples)
}

/// Finite-difference descent of the objective along the unit sphere.
fn descend(a: &DenseTensor, mut v: Vec<f64>, mut fv: f64) -> (f64, Vec<f64>, usize) {
    let n = v.len();
    let mut used = 0usize;
    let mut step = 0.1f64;
    for _ in 0..DESCENT_ITERS {
        // ambient central-difference gradient
        let mut grad = vec![0.0; n];
        for j in 0..n {
            let mut plus = v.clone();
            let mut minus = v.clone();
            plus[j] += FD_STEP;
            minus[j] -= FD_STEP;
            grad[j] = (worst_component_value(a, &plus) - worst_component_value(a, &minus))
                / (2.0 * FD_STEP);
            used += 2;
        }
        // project onto the tangent space of the sphere
        let radial: f64 = grad.iter().zip(&v).map(|(g, x)| g * x).sum();
        for (g, x) in grad.iter_mut().zip(&v) {
            *g -= radial * x;
        }
        let gnorm: f64 = grad.iter().map(|g| g * g).sum::<f64>().sqrt();
        if gnorm < 1e-14 {
            break;
        }
        let candidate: Vec<f64> = v
            .iter()
            .zip(&grad)
            .map(|(x, g)| x - step * g / gnorm)
            .collect();
        let candidate = normalized(candidate);
        let fc = worst_component_value(a, &candidate);
        used += 1;
        if fc < fv {
            v = candidate;
            fv = fc;
            step = (step * 1.5).min(0.5);
        } else {
            step *= 0.5;
            if step < 1e-12 {
                break;
            }
        }
    }
    (fv, v, used)
}

fn normalized(mut v: Vec<f64>) -> Vec<f64> {
    let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm > 0.0 {
        for x in v.iter_mut() {
            *x /= norm;
        }
    }
    v
}

/// Adds a nonnegative constant-row tensor: row `i` of the added part is
/// `c_i` everywhere.
pub fn add_constant_rows(a: &DenseTensor, c: &[f64]) -> Result<DenseTensor, TensorError> {
    if c.len() != a.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: a.dim(),
            actual: c.len(),
        });
    }
    for (idx, &ci) in c.iter().enumerate() {
        if !(ci >= 0.0) {
            return Err(TensorError::NegativeConstant {
                index: idx + 1,
                value: ci,
            });
        }
    }
    let mut entries = Vec::with_capacity(a.entries().len());
    for i0 in 0..a.dim() {
        for &x in a.row_unchecked(i0) {
            entries.push(x + c[i0]);
        }
    }
    // reuse the shape-preserving constructor on a's shape
    DenseTensor::with_cap(a.order(), a.dim(), entries, usize::MAX)
}
