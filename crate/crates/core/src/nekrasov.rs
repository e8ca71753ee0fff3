//! The recursive row quantities `Lambda_i` and the Nekrasov / Nekrasov-Z
//! membership tests.
//!
//! `Lambda_1 = R_1`, and for `i >= 2` every tuple of row `i` contributes
//! either to the first block (all components `<= i-1`, weighted by the
//! `(m-1)`-th roots of the earlier ratios `Lambda_j / |a_{j...j}|`) or, when
//! it is off-diagonal, with its plain absolute value. A tensor is Nekrasov
//! when `|a_{i...i}| > Lambda_i` in every row.

use thiserror::Error;

use crate::tensor::{diag_offset, offdiag_row_sum, DenseTensor, TupleCursor};
use crate::verdict::{ClassVerdict, Violation};
use crate::tensor::is_z_tensor;

/// The recursion divides by `|a_{j...j}|`; a zero diagonal entry leaves
/// `Lambda` undefined.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("diagonal entry at row {index} is zero; Lambda is undefined")]
pub struct ZeroDiagonal {
    /// 1-based row with the zero diagonal entry.
    pub index: usize,
}

/// The `Lambda` recursion values together with the ratios
/// `Lambda_i / |a_{i...i}|`.
#[derive(Debug, Clone, PartialEq)]
pub struct LambdaVector {
    pub values: Vec<f64>,
    pub ratios: Vec<f64>,
}

/// Computes `Lambda_i` for every row. Errors if any diagonal entry is zero.
pub fn lambda_vector(a: &DenseTensor) -> Result<LambdaVector, ZeroDiagonal> {
    for i0 in 0..a.dim() {
        if a.diag_unchecked(i0) == 0.0 {
            return Err(ZeroDiagonal { index: i0 + 1 });
        }
    }
    let values = lambda_prefix(a, a.dim())?;
    let ratios = values
        .iter()
        .enumerate()
        .map(|(i0, lam)| lam / a.diag_unchecked(i0).abs())
        .collect();
    Ok(LambdaVector { values, ratios })
}

/// `Lambda_1 .. Lambda_upto`, requiring nonzero diagonals only at rows
/// `1 .. upto-1` (the ones the recursion divides by).
pub(crate) fn lambda_prefix(a: &DenseTensor, upto: usize) -> Result<Vec<f64>, ZeroDiagonal> {
    debug_assert!(upto <= a.dim());
    let m = a.order();
    let n = a.dim();
    let mut values = Vec::with_capacity(upto);
    // (Lambda_j / |a_{j...j}|)^{1/(m-1)}, memoized as rows complete
    let mut root_ratios = Vec::with_capacity(upto);
    for i0 in 0..upto {
        let lam = if i0 == 0 {
            offdiag_row_sum(a, 1).expect("row 1 exists")
        } else {
            let diag = diag_offset(n, m - 1, i0);
            let row = a.row_unchecked(i0);
            let mut cursor = TupleCursor::new(n, m - 1);
            let mut first_block = 0.0;
            let mut rest = 0.0;
            for (off, &x) in row.iter().enumerate() {
                let tuple = cursor.digits();
                if tuple.iter().all(|&c| c <= i0) {
                    // all components <= i-1 in 1-based terms
                    let mut term = x.abs();
                    for &c in tuple {
                        term *= root_ratios[c - 1];
                    }
                    first_block += term;
                } else if off != diag {
                    rest += x.abs();
                }
                cursor.advance();
            }
            first_block + rest
        };
        values.push(lam);
        if i0 + 1 < upto {
            let d = a.diag_unchecked(i0).abs();
            if d == 0.0 {
                return Err(ZeroDiagonal { index: i0 + 1 });
            }
            root_ratios.push((lam / d).powf(1.0 / (m as f64 - 1.0)));
        }
    }
    Ok(values)
}

/// Nekrasov test: nonzero diagonals and `|a_{i...i}| > Lambda_i + tol` in
/// every row.
pub fn is_nekrasov(a: &DenseTensor, tol: f64) -> ClassVerdict {
    let lambda = match lambda_vector(a) {
        Ok(l) => l,
        Err(e) => {
            return ClassVerdict::fails(Violation {
                index: Some(e.index),
                lhs: Some(0.0),
                rhs: None,
                message: e.to_string(),
            })
        }
    };
    for i0 in 0..a.dim() {
        let lhs = a.diag_unchecked(i0).abs();
        let rhs = lambda.values[i0];
        if !(lhs > rhs + tol) {
            return ClassVerdict::fails(Violation::at(
                i0 + 1,
                lhs,
                rhs,
                format!("|a| = {lhs} does not exceed Lambda = {rhs} at row {}", i0 + 1),
            ));
        }
    }
    ClassVerdict::Holds
}

/// Nekrasov-Z test: Nekrasov and Z, optionally also requiring a strictly
/// positive diagonal.
pub fn is_nekrasov_z(a: &DenseTensor, tol: f64, require_positive_diag: bool) -> ClassVerdict {
    if !is_z_tensor(a) {
        return ClassVerdict::fails(Violation::plain(
            "some off-diagonal entry is positive; not a Z-tensor",
        ));
    }
    if require_positive_diag {
        for i0 in 0..a.dim() {
            let d = a.diag_unchecked(i0);
            if !(d > 0.0) {
                return ClassVerdict::fails(Violation::at(
                    i0 + 1,
                    d,
                    0.0,
                    format!("diagonal entry {d} at row {} is not positive", i0 + 1),
                ));
            }
        }
    }
    is_nekrasov(a, tol)
}
