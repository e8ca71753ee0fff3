//! Dense real tensors of order `m` and dimension `n` with flat lexicographic
//! storage, plus the index arithmetic, contractions, row statistics and
//! elementary structural predicates the class checkers are built on.
//!
//! Multi-indices are 1-based at the API boundary; internal offsets are
//! 0-based. A tensor is immutable after construction and every stored entry
//! is finite.

use thiserror::Error;

/// Default cap on `n^m`; construction beyond it fails.
pub const DEFAULT_MAX_ENTRIES: usize = 10_000_000;

/// Errors raised by tensor construction and elementary operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum TensorError {
    #[error("tensor order must be at least 2, got {order}")]
    OrderTooSmall { order: usize },
    #[error("tensor dimension must be at least 1")]
    ZeroDim,
    #[error("entry count mismatch: expected {expected}, got {actual}")]
    EntryCount { expected: usize, actual: usize },
    #[error("entry at flat offset {offset} is not finite")]
    NonFinite { offset: usize },
    #[error("tensor would hold {required} entries, cap is {cap}")]
    TooLarge { required: u128, cap: usize },
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },
    #[error("index {index} out of range [1, {dim}]")]
    IndexOutOfRange { index: usize, dim: usize },
    #[error("rank {rank} out of range for {len} components over dimension {dim}")]
    RankOutOfRange { rank: usize, len: usize, dim: usize },
    #[error("scaling vector entry d[{index}] = {value} is not positive")]
    NonPositiveScale { index: usize, value: f64 },
    #[error("constant-row vector entry c[{index}] = {value} is negative")]
    NegativeConstant { index: usize, value: f64 },
}

/// Dense real tensor of order `m >= 2` and dimension `n >= 1`.
///
/// Entries are stored flat in lexicographic order over the multi-index
/// `(i_1, ..., i_m)`, so row subtensor `i` is the contiguous slice of
/// length `n^{m-1}` starting at `(i-1) * n^{m-1}`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseTensor {
    order: usize,
    dim: usize,
    entries: Vec<f64>,
}

impl DenseTensor {
    /// Builds a tensor from a flat entry vector, enforcing the shape,
    /// finiteness and size-cap invariants.
    pub fn new(order: usize, dim: usize, entries: Vec<f64>) -> Result<Self, TensorError> {
        Self::with_cap(order, dim, entries, default_cap())
    }

    /// As [`DenseTensor::new`] with an explicit entry cap.
    pub fn with_cap(
        order: usize,
        dim: usize,
        entries: Vec<f64>,
        cap: usize,
    ) -> Result<Self, TensorError> {
        let expected = checked_len(order, dim, cap)?;
        if entries.len() != expected {
            return Err(TensorError::EntryCount {
                expected,
                actual: entries.len(),
            });
        }
        if let Some(offset) = entries.iter().position(|x| !x.is_finite()) {
            return Err(TensorError::NonFinite { offset });
        }
        Ok(Self {
            order,
            dim,
            entries,
        })
    }

    /// The zero tensor.
    pub fn zeros(order: usize, dim: usize) -> Result<Self, TensorError> {
        let len = checked_len(order, dim, default_cap())?;
        Ok(Self {
            order,
            dim,
            entries: vec![0.0; len],
        })
    }

    /// Tensor with every entry equal to `value`.
    pub fn constant(order: usize, dim: usize, value: f64) -> Result<Self, TensorError> {
        Self::new(order, dim, vec![value; checked_len(order, dim, default_cap())?])
    }

    /// The identity tensor: 1 on the diagonal, 0 elsewhere.
    pub fn identity(order: usize, dim: usize) -> Result<Self, TensorError> {
        let mut t = Self::zeros(order, dim)?;
        let row_len = t.row_len();
        for i in 0..dim {
            let diag = diag_offset(dim, order - 1, i);
            t.entries[i * row_len + diag] = 1.0;
        }
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` on every 1-based multi-index in
    /// lexicographic order.
    pub fn from_fn<F>(order: usize, dim: usize, mut f: F) -> Result<Self, TensorError>
    where
        F: FnMut(&[usize]) -> f64,
    {
        let len = checked_len(order, dim, default_cap())?;
        let mut entries = Vec::with_capacity(len);
        let mut cursor = TupleCursor::new(dim, order);
        for _ in 0..len {
            entries.push(f(cursor.digits()));
            cursor.advance();
        }
        Self::new(order, dim, entries)
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Flat entry slice, lexicographic over `(i_1, ..., i_m)`.
    pub fn entries(&self) -> &[f64] {
        &self.entries
    }

    /// Number of entries in one row subtensor, `n^{m-1}`.
    pub fn row_len(&self) -> usize {
        self.entries.len() / self.dim
    }

    /// Entry at a full 1-based multi-index.
    pub fn entry(&self, index: &[usize]) -> Result<f64, TensorError> {
        if index.len() != self.order {
            return Err(TensorError::DimensionMismatch {
                expected: self.order,
                actual: index.len(),
            });
        }
        let rank = rank_index(self.dim, index)?;
        Ok(self.entries[rank])
    }

    /// Row subtensor `i` (1-based) as a contiguous slice of length `n^{m-1}`.
    pub fn row(&self, i: usize) -> Result<&[f64], TensorError> {
        check_row(i, self.dim)?;
        let row_len = self.row_len();
        Ok(&self.entries[(i - 1) * row_len..i * row_len])
    }

    /// Diagonal entry `a_{i i ... i}` (1-based).
    pub fn diagonal_entry(&self, i: usize) -> Result<f64, TensorError> {
        check_row(i, self.dim)?;
        Ok(self.diag_unchecked(i - 1))
    }

    /// All diagonal entries `(a_{1...1}, ..., a_{n...n})`.
    pub fn diagonal(&self) -> Vec<f64> {
        (0..self.dim).map(|i| self.diag_unchecked(i)).collect()
    }

    pub(crate) fn diag_unchecked(&self, i0: usize) -> f64 {
        let row_len = self.row_len();
        self.entries[i0 * row_len + diag_offset(self.dim, self.order - 1, i0)]
    }

    pub(crate) fn row_unchecked(&self, i0: usize) -> &[f64] {
        let row_len = self.row_len();
        &self.entries[i0 * row_len..(i0 + 1) * row_len]
    }

    /// Rebuilds a tensor of the same shape from derived entries, keeping the
    /// finiteness invariant but skipping the cap check (the shape already
    /// passed it).
    pub(crate) fn same_shape(&self, entries: Vec<f64>) -> Result<Self, TensorError> {
        Self::with_cap(self.order, self.dim, entries, usize::MAX)
    }
}

fn default_cap() -> usize {
    DEFAULT_MAX_ENTRIES
}

fn checked_len(order: usize, dim: usize, cap: usize) -> Result<usize, TensorError> {
    if order < 2 {
        return Err(TensorError::OrderTooSmall { order });
    }
    if dim == 0 {
        return Err(TensorError::ZeroDim);
    }
    let required = (dim as u128)
        .checked_pow(order as u32)
        .unwrap_or(u128::MAX);
    if required > cap as u128 {
        return Err(TensorError::TooLarge { required, cap });
    }
    Ok(required as usize)
}

fn check_row(i: usize, dim: usize) -> Result<(), TensorError> {
    if i == 0 || i > dim {
        return Err(TensorError::IndexOutOfRange { index: i, dim });
    }
    Ok(())
}

/// Lexicographic rank of a 1-based multi-index over `[dim]^len`.
pub fn rank_index(dim: usize, index: &[usize]) -> Result<usize, TensorError> {
    let mut rank = 0usize;
    for &c in index {
        if c == 0 || c > dim {
            return Err(TensorError::IndexOutOfRange { index: c, dim });
        }
        rank = rank * dim + (c - 1);
    }
    Ok(rank)
}

/// Inverse of [`rank_index`]: the 1-based multi-index of length `len` with
/// the given lexicographic rank.
pub fn unrank_index(dim: usize, len: usize, rank: usize) -> Result<Vec<usize>, TensorError> {
    let total = (dim as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    if (rank as u128) >= total {
        return Err(TensorError::RankOutOfRange { rank, len, dim });
    }
    let mut index = vec![1usize; len];
    let mut r = rank;
    for pos in (0..len).rev() {
        index[pos] = r % dim + 1;
        r /= dim;
    }
    Ok(index)
}

/// Flat offset of the diagonal tuple `(i, ..., i)` within row `i0` (0-based)
/// for tuples of `len` components.
pub(crate) fn diag_offset(dim: usize, len: usize, i0: usize) -> usize {
    let mut off = 0usize;
    for _ in 0..len {
        off = off * dim + i0;
    }
    off
}

/// In-place odometer over 1-based tuples of fixed length, lexicographic.
///
/// Advancing past the last tuple wraps to all-ones; callers drive it for
/// exactly `dim^len` steps.
pub(crate) struct TupleCursor {
    digits: Vec<usize>,
    dim: usize,
}

impl TupleCursor {
    pub(crate) fn new(dim: usize, len: usize) -> Self {
        Self {
            digits: vec![1; len],
            dim,
        }
    }

    pub(crate) fn digits(&self) -> &[usize] {
        &self.digits
    }

    pub(crate) fn advance(&mut self) -> bool {
        for pos in (0..self.digits.len()).rev() {
            if self.digits[pos] < self.dim {
                self.digits[pos] += 1;
                return true;
            }
            self.digits[pos] = 1;
        }
        false
    }
}

/// Iterator over all 1-based multi-indices in `[dim]^len`, lexicographic.
pub fn multi_indices(dim: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (dim as u128).checked_pow(len as u32).unwrap_or(u128::MAX);
    let mut cursor = TupleCursor::new(dim, len);
    let mut emitted = 0u128;
    std::iter::from_fn(move || {
        if emitted >= total {
            return None;
        }
        let out = cursor.digits().to_vec();
        cursor.advance();
        emitted += 1;
        Some(out)
    })
}

/// The contraction `(A v^{m-1})_i = sum a_{i i_2 ... i_m} v_{i_2} ... v_{i_m}`.
///
/// Terms are accumulated in lexicographic tuple order so results are
/// bit-reproducible across runs.
pub fn contract_vector(a: &DenseTensor, v: &[f64]) -> Result<Vec<f64>, TensorError> {
    if v.len() != a.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: a.dim(),
            actual: v.len(),
        });
    }
    let row_len = a.row_len();
    let mut out = vec![0.0; a.dim()];
    for (i0, acc) in out.iter_mut().enumerate() {
        let row = a.row_unchecked(i0);
        let mut cursor = TupleCursor::new(a.dim(), a.order() - 1);
        let mut sum = 0.0;
        for &entry in row.iter().take(row_len) {
            let mut term = entry;
            for &c in cursor.digits() {
                term *= v[c - 1];
            }
            sum += term;
            cursor.advance();
        }
        *acc = sum;
    }
    Ok(out)
}

/// The scalar `A v^m = sum a_{i_1 ... i_m} v_{i_1} ... v_{i_m}`, accumulated
/// over the full lexicographic order of all `n^m` tuples.
pub fn polyval(a: &DenseTensor, v: &[f64]) -> Result<f64, TensorError> {
    if v.len() != a.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: a.dim(),
            actual: v.len(),
        });
    }
    let mut cursor = TupleCursor::new(a.dim(), a.order());
    let mut sum = 0.0;
    for &entry in a.entries() {
        let mut term = entry;
        for &c in cursor.digits() {
            term *= v[c - 1];
        }
        sum += term;
        cursor.advance();
    }
    Ok(sum)
}

/// Off-diagonal absolute row sum `R_i(A)`, the sum of `|a_{i i_2 ... i_m}|`
/// over every tuple except the diagonal one.
pub fn offdiag_row_sum(a: &DenseTensor, i: usize) -> Result<f64, TensorError> {
    check_row(i, a.dim())?;
    let i0 = i - 1;
    let diag = diag_offset(a.dim(), a.order() - 1, i0);
    let row = a.row_unchecked(i0);
    let mut sum = 0.0;
    for (off, &x) in row.iter().enumerate() {
        if off != diag {
            sum += x.abs();
        }
    }
    Ok(sum)
}

/// Comparison tensor: `|a|` on the diagonal, `-|a|` off it.
pub fn comparison_tensor(a: &DenseTensor) -> DenseTensor {
    let row_len = a.row_len();
    let mut entries = Vec::with_capacity(a.entries().len());
    for i0 in 0..a.dim() {
        let diag = diag_offset(a.dim(), a.order() - 1, i0);
        for (off, &x) in a.row_unchecked(i0).iter().enumerate() {
            entries.push(if off == diag { x.abs() } else { -x.abs() });
        }
    }
    debug_assert_eq!(entries.len(), row_len * a.dim());
    a.same_shape(entries)
        .expect("comparison tensor preserves shape and finiteness")
}

/// Right-scales a tensor by a positive diagonal matrix: the entry at
/// `(i, i_2, ..., i_m)` becomes `a_{i i_2 ... i_m} d_{i_2} ... d_{i_m}`.
/// The first index is never scaled.
pub fn scale_columns(a: &DenseTensor, d: &[f64]) -> Result<DenseTensor, TensorError> {
    if d.len() != a.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: a.dim(),
            actual: d.len(),
        });
    }
    for (idx, &di) in d.iter().enumerate() {
        if !(di > 0.0) {
            return Err(TensorError::NonPositiveScale {
                index: idx + 1,
                value: di,
            });
        }
    }
    let mut entries = Vec::with_capacity(a.entries().len());
    for i0 in 0..a.dim() {
        let mut cursor = TupleCursor::new(a.dim(), a.order() - 1);
        for &x in a.row_unchecked(i0) {
            let mut scaled = x;
            for &c in cursor.digits() {
                scaled *= d[c - 1];
            }
            entries.push(scaled);
            cursor.advance();
        }
    }
    a.same_shape(entries)
}

/// True iff every off-diagonal entry is nonpositive.
pub fn is_z_tensor(a: &DenseTensor) -> bool {
    for i0 in 0..a.dim() {
        let diag = diag_offset(a.dim(), a.order() - 1, i0);
        for (off, &x) in a.row_unchecked(i0).iter().enumerate() {
            if off != diag && x > 0.0 {
                return false;
            }
        }
    }
    true
}

/// Diagonal dominance test. Strict mode requires `|a_{i...i}| > R_i + tol`
/// in every row; non-strict requires `|a_{i...i}| >= R_i - tol`.
pub fn is_diag_dominant(a: &DenseTensor, strict: bool, tol: f64) -> bool {
    for i in 1..=a.dim() {
        let lhs = a.diag_unchecked(i - 1).abs();
        let rhs = offdiag_row_sum(a, i).expect("row index in range");
        let ok = if strict {
            lhs > rhs + tol
        } else {
            lhs >= rhs - tol
        };
        if !ok {
            return false;
        }
    }
    true
}

/// True iff every diagonal entry is strictly positive.
pub fn has_positive_diagonal(a: &DenseTensor) -> bool {
    (0..a.dim()).all(|i0| a.diag_unchecked(i0) > 0.0)
}

/// Elementwise sum of two tensors of identical shape.
pub fn add(a: &DenseTensor, b: &DenseTensor) -> Result<DenseTensor, TensorError> {
    if a.order() != b.order() || a.dim() != b.dim() {
        return Err(TensorError::DimensionMismatch {
            expected: a.entries().len(),
            actual: b.entries().len(),
        });
    }
    let entries = a
        .entries()
        .iter()
        .zip(b.entries())
        .map(|(x, y)| x + y)
        .collect();
    a.same_shape(entries)
}
