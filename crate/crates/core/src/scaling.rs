//! Diagonal scaling of Nekrasov tensors into strict diagonal dominance,
//! a power-iteration bound for the spectral radius of nonnegative tensors,
//! and the nonsingular M / H membership tests built on them.

use serde::Serialize;
use thiserror::Error;

use crate::bnekrasov::{decompose, is_b_nekrasov_definition};
use crate::nekrasov::{is_nekrasov, lambda_vector};
use crate::tensor::{
    comparison_tensor, contract_vector, diag_offset, is_z_tensor, offdiag_row_sum, scale_columns,
    DenseTensor, TensorError, TupleCursor,
};
use crate::verdict::{ClassVerdict, Violation};

/// Convergence tolerance used by the class checkers' power iterations.
pub const POWER_TOL: f64 = 1e-10;
/// Iteration cap for the power method.
pub const POWER_MAX_ITER: usize = 50_000;
/// Relative size of the positivity shift that makes the iterated tensor
/// irreducible. The returned radius carries an error of the same order.
pub const POWER_SHIFT_REL: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ScalingError {
    #[error("tensor is not Nekrasov: {0}")]
    NotNekrasov(String),
    #[error("row {row} has no nonzero off-diagonal entry with a component beyond {row}")]
    HypothesisViolated { row: usize },
    #[error("eps fraction must lie strictly between 0 and 1, got {value}")]
    InvalidEpsFraction { value: f64 },
    #[error("power iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error("entry at flat offset {offset} is negative; the spectral bound needs a nonnegative tensor")]
    NegativeEntry { offset: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// Weights that scale a Nekrasov tensor into strict diagonal dominance,
/// together with the dominance slack they achieve per row.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScalingCertificate {
    pub w: Vec<f64>,
    pub epsilon: f64,
    pub margins: Vec<f64>,
}

/// True iff row `i` holds a nonzero entry at a tuple reaching beyond `i`:
/// with `all_components` unset, some component `> i` suffices; set, every
/// component must exceed `i`.
pub fn has_trailing_nonzero(
    b: &DenseTensor,
    i: usize,
    all_components: bool,
) -> Result<bool, TensorError> {
    if i == 0 || i + 1 > b.dim() {
        return Err(TensorError::IndexOutOfRange {
            index: i,
            dim: b.dim().saturating_sub(1),
        });
    }
    let mut cursor = TupleCursor::new(b.dim(), b.order() - 1);
    for &x in b.row_unchecked(i - 1) {
        let tuple = cursor.digits();
        let reaches = if all_components {
            tuple.iter().all(|&c| c > i)
        } else {
            tuple.iter().any(|&c| c > i)
        };
        if reaches && x != 0.0 {
            return Ok(true);
        }
        cursor.advance();
    }
    Ok(false)
}

/// Builds the diagonal weights `w_i = (Lambda_i / |b_{i...i}|)^{1/(m-1)}`
/// (last row nudged up by `eps_fraction` of its headroom below 1) and
/// records the strict-dominance margins of the scaled tensor.
///
/// Requires `b` to be Nekrasov and every row short of the last to have a
/// trailing nonzero entry, which keeps all weights positive.
pub fn build_w(b: &DenseTensor, eps_fraction: f64) -> Result<ScalingCertificate, ScalingError> {
    if !(eps_fraction > 0.0 && eps_fraction < 1.0) {
        return Err(ScalingError::InvalidEpsFraction {
            value: eps_fraction,
        });
    }
    match is_nekrasov(b, 0.0) {
        ClassVerdict::Holds => {}
        ClassVerdict::Fails { violation } => {
            return Err(ScalingError::NotNekrasov(violation.message))
        }
        ClassVerdict::NotApplicable { reason } => return Err(ScalingError::NotNekrasov(reason)),
    }
    let n = b.dim();
    for i in 1..n {
        if !has_trailing_nonzero(b, i, false)? {
            return Err(ScalingError::HypothesisViolated { row: i });
        }
    }
    let lambda = lambda_vector(b).expect("Nekrasov tensors have nonzero diagonals");
    let exponent = 1.0 / (b.order() as f64 - 1.0);
    let mut w: Vec<f64> = lambda
        .ratios
        .iter()
        .map(|r| r.powf(exponent))
        .collect();
    let headroom = 1.0 - w[n - 1];
    let epsilon = eps_fraction * headroom;
    w[n - 1] += epsilon;

    let scaled = scale_columns(b, &w)?;
    let margins = (1..=n)
        .map(|i| {
            scaled.diagonal_entry(i).unwrap().abs() - offdiag_row_sum(&scaled, i).unwrap()
        })
        .collect();
    Ok(ScalingCertificate {
        w,
        epsilon,
        margins,
    })
}

/// Power-iteration estimate of the spectral radius of a nonnegative tensor.
///
/// The iterate is `x <- (B x^{m-1})^{[1/(m-1)]}` with a tiny uniform shift
/// to enforce irreducibility; the bracket of componentwise ratios encloses
/// the radius and its midpoint is returned once the width drops below `tol`.
pub fn spectral_radius_nonneg(
    b: &DenseTensor,
    tol: f64,
    max_iter: usize,
) -> Result<f64, ScalingError> {
    if let Some(offset) = b.entries().iter().position(|&x| x < 0.0) {
        return Err(ScalingError::NegativeEntry { offset });
    }
    let max_entry = b.entries().iter().cloned().fold(0.0f64, f64::max);
    if max_entry == 0.0 {
        return Ok(0.0);
    }
    let shift = POWER_SHIFT_REL * max_entry;
    let n = b.dim();
    let m = b.order();
    let root = 1.0 / (m as f64 - 1.0);
    let mut x = vec![1.0f64; n];
    for _ in 0..max_iter {
        let base = contract_vector(b, &x)?;
        let uniform = shift * x.iter().sum::<f64>().powi(m as i32 - 1);
        let y: Vec<f64> = base.iter().map(|&v| v + uniform).collect();
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for i in 0..n {
            let ratio = y[i] / x[i].powi(m as i32 - 1);
            lo = lo.min(ratio);
            hi = hi.max(ratio);
        }
        if hi - lo < tol {
            return Ok(0.5 * (lo + hi));
        }
        let mut norm = 0.0f64;
        for xi in x.iter_mut().zip(&y) {
            *xi.0 = xi.1.powf(root);
            norm = norm.max(*xi.0);
        }
        for xi in x.iter_mut() {
            *xi /= norm;
        }
    }
    Err(ScalingError::NoConvergence {
        iterations: max_iter,
    })
}

/// Nonsingular M test for Z-tensors: with `s` the largest diagonal entry
/// and `B = sI - A`, membership holds iff `s > rho(B) + tol`.
pub fn is_nonsingular_m(a: &DenseTensor, tol: f64) -> Result<ClassVerdict, ScalingError> {
    if !is_z_tensor(a) {
        return Ok(ClassVerdict::fails(Violation::plain(
            "some off-diagonal entry is positive; not a Z-tensor",
        )));
    }
    let s = a
        .diagonal()
        .into_iter()
        .fold(f64::NEG_INFINITY, f64::max);
    if !(s > 0.0) {
        return Ok(ClassVerdict::fails(Violation {
            index: None,
            lhs: Some(s),
            rhs: Some(0.0),
            message: "no positive diagonal entry to shift against".into(),
        }));
    }
    let row_len = a.row_len();
    let mut entries = Vec::with_capacity(a.entries().len());
    for i0 in 0..a.dim() {
        let diag = diag_offset(a.dim(), a.order() - 1, i0);
        for (off, &x) in a.row_unchecked(i0).iter().enumerate() {
            entries.push(if off == diag { s - x } else { -x });
        }
    }
    debug_assert_eq!(entries.len(), row_len * a.dim());
    let b = DenseTensor::with_cap(a.order(), a.dim(), entries, usize::MAX)?;
    let rho = spectral_radius_nonneg(&b, POWER_TOL, POWER_MAX_ITER)?;
    if s > rho + tol {
        Ok(ClassVerdict::Holds)
    } else {
        Ok(ClassVerdict::fails(Violation {
            index: None,
            lhs: Some(s),
            rhs: Some(rho),
            message: format!("shift {s} does not exceed spectral radius {rho}"),
        }))
    }
}

/// Nonsingular H test: the comparison tensor must be a nonsingular M-tensor.
pub fn is_nonsingular_h(a: &DenseTensor, tol: f64) -> Result<ClassVerdict, ScalingError> {
    is_nonsingular_m(&comparison_tensor(a), tol)
}

/// Second, independent H certificate: when `A` is Nekrasov and its
/// comparison tensor satisfies the scaling hypotheses, the certificate
/// scales it into strict diagonal dominance.
pub fn h_scaling_witness(a: &DenseTensor) -> Option<ScalingCertificate> {
    if !is_nekrasov(a, 0.0).holds() {
        return None;
    }
    build_w(&comparison_tensor(a), 0.5).ok()
}

/// When the constant part of the decomposition vanishes, a B-Nekrasov
/// tensor is its own `B+` and must be a nonsingular H-tensor.
pub fn c_zero_implies_h(a: &DenseTensor, tol: f64) -> Result<ClassVerdict, ScalingError> {
    if !is_b_nekrasov_definition(a, tol).holds() {
        return Ok(ClassVerdict::not_applicable(
            "tensor is not B-Nekrasov by the definitional route",
        ));
    }
    let dec = decompose(a);
    if dec.c.entries().iter().any(|&x| x != 0.0) {
        return Ok(ClassVerdict::not_applicable(
            "decomposition has a nonzero constant part",
        ));
    }
    is_nonsingular_h(a, tol)
}
