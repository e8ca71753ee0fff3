//! Reference tensors shared by the test suites and the shipped example data.

use crate::tensor::DenseTensor;

/// Order-4, dimension-4 tensor that is B-Nekrasov by both routes while
/// failing the plain Nekrasov test at row 1 (`R_1 = 122` against a diagonal
/// entry of 10). Its decomposition has `r+ = (2, 3, 0, 0)` and `B+`
/// diagonal `(8, 3.8, 3, 10)`.
pub fn b_nekrasov_example() -> DenseTensor {
    DenseTensor::from_fn(4, 4, |idx| match idx {
        [1, 1, 1, 1] => 10.0,
        [2, 2, 2, 2] => 6.8,
        [3, 3, 3, 3] => 3.0,
        [4, 4, 4, 4] => 10.0,
        [1, 1, 1, 2] | [1, 2, 1, 1] | [1, 1, 2, 1] => 1.0,
        [1, 4, 4, 4] => -1.0,
        [1, ..] => 2.0,
        [2, 1, 1, 1] => 2.0,
        [2, 3, 2, 2] | [2, 2, 3, 2] | [2, 2, 2, 3] => 2.0,
        [2, ..] => 3.0,
        [3, 2, 2, 2] => -1.0,
        [4, 4, 4, 1] | [4, 4, 1, 4] | [4, 1, 4, 4] => -3.0,
        _ => 0.0,
    })
    .expect("fixture shape is valid")
}
