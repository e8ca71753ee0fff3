//! Membership tests for structured tensor classes (diagonally dominant,
//! Z, Nekrasov, Nekrasov-Z, B-Nekrasov, nonsingular M and H), the
//! constructive `B+ + C` decomposition and diagonal scaling behind them,
//! a falsification oracle for the P property, and desk-scale solvers for
//! the tensor complementarity problem.
//!
//! Tensors are dense, real, of order `m >= 2` and dimension `n >= 1`, with
//! 1-based indices at the API boundary. Everything is a pure function over
//! immutable tensors and safe to call concurrently.

pub mod bnekrasov;
pub mod fixtures;
pub mod nekrasov;
pub mod poracle;
pub mod sample;
pub mod scaling;
pub mod tcp;
pub mod tensor;
pub mod verdict;

pub use bnekrasov::{check_conditions, decompose, ConditionReport, Decomposition};
pub use nekrasov::{lambda_vector, LambdaVector, ZeroDiagonal};
pub use poracle::{p0_falsify, p_falsify, PStatus, PVerdict};
pub use scaling::{build_w, spectral_radius_nonneg, ScalingCertificate, ScalingError};
pub use tcp::{
    residual, solve_fixed_point, solve_support_enumeration, TcpError, TcpInstance, TcpSolution,
};
pub use tensor::{DenseTensor, TensorError, DEFAULT_MAX_ENTRIES};
pub use verdict::{ClassVerdict, Violation};
