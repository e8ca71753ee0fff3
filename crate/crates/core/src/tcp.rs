//! Desk-scale solvers for the tensor complementarity problem: find
//! `v >= 0` with `A v^{m-1} + q >= 0` and `v^T (A v^{m-1} + q) = 0`.
//!
//! The primary solver enumerates complementary supports in cardinality
//! order and solves each restricted polynomial system by damped Newton
//! with a finite-difference Jacobian; a projected fixed-point iteration is
//! available as a fallback for larger dimensions.

use itertools::Itertools;
use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::tensor::{contract_vector, DenseTensor, TensorError};

/// Support enumeration walks `2^n` candidate supports; beyond this the
/// fixed-point solver is the intended path.
pub const SUPPORT_ENUM_MAX_DIM: usize = 8;

/// Random Newton restarts per support after the all-ones start fails.
const NEWTON_RESTARTS: usize = 5;
/// Step-halving budget of the damped Newton line search.
const NEWTON_MAX_HALVINGS: usize = 30;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum TcpError {
    #[error("dimension {n} exceeds the support-enumeration limit {max}")]
    TooLarge { n: usize, max: usize },
    #[error("support enumeration exhausted without an accepted solution")]
    NoSolutionFound,
    #[error("fixed-point iteration did not converge within {iterations} iterations")]
    NoConvergence { iterations: usize },
    #[error(transparent)]
    Tensor(#[from] TensorError),
}

/// A complementarity instance `(A, q)` with agreeing dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct TcpInstance {
    a: DenseTensor,
    q: Vec<f64>,
}

impl TcpInstance {
    pub fn new(a: DenseTensor, q: Vec<f64>) -> Result<Self, TensorError> {
        if q.len() != a.dim() {
            return Err(TensorError::DimensionMismatch {
                expected: a.dim(),
                actual: q.len(),
            });
        }
        Ok(Self { a, q })
    }

    pub fn tensor(&self) -> &DenseTensor {
        &self.a
    }

    pub fn q(&self) -> &[f64] {
        &self.q
    }

    pub fn dim(&self) -> usize {
        self.a.dim()
    }

    /// `A v^{m-1} + q`.
    pub fn map(&self, v: &[f64]) -> Vec<f64> {
        let mut w = contract_vector(&self.a, v).expect("dimensions agree");
        for (wi, qi) in w.iter_mut().zip(&self.q) {
            *wi += qi;
        }
        w
    }
}

/// A candidate solution with its support and the natural-map residual it
/// achieves; the residual is measured on the raw vector, never clamped.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TcpSolution {
    pub v: Vec<f64>,
    /// 1-based indices where `v` is positive beyond tolerance.
    pub support: Vec<usize>,
    pub residual: f64,
}

/// Natural-map merit: `max_i |min(v_i, (A v^{m-1} + q)_i)|`; zero exactly
/// at solutions.
pub fn residual(inst: &TcpInstance, v: &[f64]) -> f64 {
    assert_eq!(v.len(), inst.dim(), "residual: dimension mismatch");
    let w = inst.map(v);
    v.iter()
        .zip(&w)
        .map(|(&vi, &wi)| vi.min(wi).abs())
        .fold(0.0, f64::max)
}

/// Feasibility within slack `tol`: `v >= -tol` and `A v^{m-1} + q >= -tol`.
pub fn is_feasible(inst: &TcpInstance, v: &[f64], tol: f64) -> bool {
    assert_eq!(v.len(), inst.dim(), "is_feasible: dimension mismatch");
    v.iter().all(|&vi| vi >= -tol) && inst.map(v).iter().all(|&wi| wi >= -tol)
}

/// Options for the support-enumeration solver.
#[derive(Debug, Clone)]
pub struct EnumOptions {
    pub tol: f64,
    pub newton_iters: usize,
    pub seed: u64,
}

impl Default for EnumOptions {
    fn default() -> Self {
        Self {
            tol: 1e-8,
            newton_iters: 80,
            seed: 42,
        }
    }
}

/// Options for the projected fixed-point iteration.
#[derive(Debug, Clone)]
pub struct FixedPointOptions {
    pub step: f64,
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self {
            step: 0.05,
            max_iter: 100_000,
            tol: 1e-8,
        }
    }
}

/// First solution in support-cardinality order (zero vector checked first),
/// ties broken lexicographically on the support.
pub fn solve_support_enumeration(
    inst: &TcpInstance,
    opts: &EnumOptions,
) -> Result<TcpSolution, TcpError> {
    let mut found = enumerate_solutions_inner(inst, opts, true)?;
    found.pop().ok_or(TcpError::NoSolutionFound)
}

/// Every accepted solution over all supports; the solution set need not be
/// a singleton.
pub fn enumerate_solutions(
    inst: &TcpInstance,
    opts: &EnumOptions,
) -> Result<Vec<TcpSolution>, TcpError> {
    enumerate_solutions_inner(inst, opts, false)
}

fn enumerate_solutions_inner(
    inst: &TcpInstance,
    opts: &EnumOptions,
    stop_at_first: bool,
) -> Result<Vec<TcpSolution>, TcpError> {
    let n = inst.dim();
    if n > SUPPORT_ENUM_MAX_DIM {
        return Err(TcpError::TooLarge {
            n,
            max: SUPPORT_ENUM_MAX_DIM,
        });
    }
    let mut found = Vec::new();

    let zero = vec![0.0; n];
    let r0 = residual(inst, &zero);
    if r0 <= opts.tol {
        found.push(TcpSolution {
            v: zero,
            support: Vec::new(),
            residual: r0,
        });
        if stop_at_first {
            return Ok(found);
        }
    }

    let mut support_counter = 0u64;
    for k in 1..=n {
        for support in (1..=n).combinations(k) {
            support_counter += 1;
            let mut rng = ChaCha8Rng::seed_from_u64(opts.seed.wrapping_add(support_counter));
            if let Some(sol) = solve_on_support(inst, &support, opts, &mut rng) {
                found.push(sol);
                if stop_at_first {
                    return Ok(found);
                }
            }
        }
    }
    if found.is_empty() && stop_at_first {
        return Err(TcpError::NoSolutionFound);
    }
    Ok(found)
}

/// Damped-Newton solve of `(A v^{m-1} + q)_S = 0, v restricted to S`, then
/// the acceptance checks: support entries positive, global feasibility and
/// residual within tolerance.
fn solve_on_support(
    inst: &TcpInstance,
    support: &[usize],
    opts: &EnumOptions,
    rng: &mut ChaCha8Rng,
) -> Option<TcpSolution> {
    let k = support.len();
    for attempt in 0..=NEWTON_RESTARTS {
        let x0: Vec<f64> = if attempt == 0 {
            vec![1.0; k]
        } else {
            (0..k).map(|_| rng.random_range(0.1..2.0)).collect()
        };
        let Some(x) = newton_on_support(inst, support, x0, opts) else {
            continue;
        };
        if x.iter().any(|&xj| !(xj > opts.tol)) {
            continue;
        }
        let mut v = vec![0.0; inst.dim()];
        for (j, &i) in support.iter().enumerate() {
            v[i - 1] = x[j];
        }
        let w = inst.map(&v);
        if w.iter().any(|&wi| wi < -opts.tol) {
            continue;
        }
        let r = residual(inst, &v);
        if r <= opts.tol {
            return Some(TcpSolution {
                v,
                support: support.to_vec(),
                residual: r,
            });
        }
    }
    None
}

fn newton_on_support(
    inst: &TcpInstance,
    support: &[usize],
    x0: Vec<f64>,
    opts: &EnumOptions,
) -> Option<Vec<f64>> {
    let k = support.len();
    let eval = |x: &[f64]| -> Vec<f64> {
        let mut v = vec![0.0; inst.dim()];
        for (j, &i) in support.iter().enumerate() {
            v[i - 1] = x[j];
        }
        let w = inst.map(&v);
        support.iter().map(|&i| w[i - 1]).collect()
    };
    let norm_inf = |f: &[f64]| f.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));

    let mut x = x0;
    let mut fx = eval(&x);
    let mut fnorm = norm_inf(&fx);
    for _ in 0..opts.newton_iters {
        if fnorm <= 0.01 * opts.tol {
            return Some(x);
        }
        // finite-difference Jacobian, column by column
        let mut jac = DMatrix::zeros(k, k);
        for j in 0..k {
            let h = 1e-7 * (1.0 + x[j].abs());
            let mut xp = x.clone();
            let mut xm = x.clone();
            xp[j] += h;
            xm[j] -= h;
            let fp = eval(&xp);
            let fm = eval(&xm);
            for r in 0..k {
                jac[(r, j)] = (fp[r] - fm[r]) / (2.0 * h);
            }
        }
        let rhs = DVector::from_iterator(k, fx.iter().map(|f| -f));
        let delta = jac.lu().solve(&rhs)?;
        let mut t = 1.0;
        let mut advanced = false;
        for _ in 0..=NEWTON_MAX_HALVINGS {
            let xt: Vec<f64> = x.iter().zip(delta.iter()).map(|(xi, d)| xi + t * d).collect();
            let ft = eval(&xt);
            let fnorm_t = norm_inf(&ft);
            if fnorm_t < fnorm {
                x = xt;
                fx = ft;
                fnorm = fnorm_t;
                advanced = true;
                break;
            }
            t *= 0.5;
        }
        if !advanced {
            return None;
        }
    }
    if fnorm <= 0.01 * opts.tol {
        Some(x)
    } else {
        None
    }
}

/// Projected iteration `v <- max(0, v - step (A v^{m-1} + q))`, started at
/// the origin. Convergence is not guaranteed; the residual is checked every
/// sweep.
pub fn solve_fixed_point(
    inst: &TcpInstance,
    opts: &FixedPointOptions,
) -> Result<TcpSolution, TcpError> {
    let n = inst.dim();
    let mut v = vec![0.0; n];
    for _ in 0..opts.max_iter {
        let w = inst.map(&v);
        let r = v
            .iter()
            .zip(&w)
            .map(|(&vi, &wi)| vi.min(wi).abs())
            .fold(0.0, f64::max);
        if r <= opts.tol {
            let support = v
                .iter()
                .enumerate()
                .filter(|(_, &vi)| vi > opts.tol)
                .map(|(i0, _)| i0 + 1)
                .collect();
            return Ok(TcpSolution {
                v,
                support,
                residual: r,
            });
        }
        for (vi, wi) in v.iter_mut().zip(&w) {
            *vi = (*vi - opts.step * wi).max(0.0);
        }
    }
    Err(TcpError::NoConvergence {
        iterations: opts.max_iter,
    })
}
