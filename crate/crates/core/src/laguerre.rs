//! Associated Laguerre polynomials L_n^alpha(x) and the identities the
//! bound-state algebra rests on.
//!
//! Evaluation uses the upward three-term recurrence
//!
//! ```text
//! L_0 = 1,   L_1 = 1 + alpha - x,
//! (k+1) L_{k+1} = (2k + 1 + alpha - x) L_k - (k + alpha) L_{k-1}
//! ```
//!
//! which is stable in the degree direction for the argument ranges used
//! here (x bounded by the quadrature node range, well below the turning
//! point where downward recursion would be needed).

use thiserror::Error;

/// Highest polynomial degree accepted; all downstream quadrature nodes and
/// physics states sit far below this.
pub const DEGREE_CAP: u32 = 200;

/// Largest argument accepted, bounding loss of significance in the
/// recurrence.
pub const ARGUMENT_CAP: f64 = 1.0e4;

#[derive(Debug, Error, PartialEq)]
pub enum LaguerreError {
    #[error("polynomial degree {n} exceeds the cap {cap}")]
    DegreeCapExceeded { n: u32, cap: u32 },
    #[error("argument must be finite and in [0, {cap}], got {x}")]
    ArgumentOutOfRange { x: f64, cap: f64 },
    #[error("upper index alpha must be finite and non-negative, got {alpha}")]
    InvalidAlpha { alpha: f64 },
}

/// Degree / upper-index pair (n, alpha) identifying one associated Laguerre
/// polynomial. The physics modules use odd integral alpha = 2L + 1 and its
/// neighbours; the evaluator accepts any real alpha >= 0.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaguerreIndex {
    pub n: u32,
    pub alpha: f64,
}

impl LaguerreIndex {
    pub fn new(n: u32, alpha: f64) -> Result<Self, LaguerreError> {
        if !alpha.is_finite() || alpha < 0.0 {
            return Err(LaguerreError::InvalidAlpha { alpha });
        }
        if n > DEGREE_CAP {
            return Err(LaguerreError::DegreeCapExceeded { n, cap: DEGREE_CAP });
        }
        Ok(Self { n, alpha })
    }
}

fn check_argument(x: f64) -> Result<(), LaguerreError> {
    if !x.is_finite() || !(0.0..=ARGUMENT_CAP).contains(&x) {
        return Err(LaguerreError::ArgumentOutOfRange {
            x,
            cap: ARGUMENT_CAP,
        });
    }
    Ok(())
}

/// L_n^alpha(x) by the three-term degree recurrence.
///
/// At x = 0 this returns binomial(n + alpha, n) exactly for integral alpha
/// within the f64 integer range.
pub fn eval(idx: LaguerreIndex, x: f64) -> Result<f64, LaguerreError> {
    check_argument(x)?;
    Ok(eval_unchecked(idx.n, idx.alpha, x))
}

/// Recurrence core without argument validation; callers guarantee the
/// preconditions (quadrature nodes are always in range).
pub(crate) fn eval_unchecked(n: u32, alpha: f64, x: f64) -> f64 {
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + alpha - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + alpha - x) * cur - (kf + alpha) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// d/dx L_n^alpha(x) via the derivative identity
/// d/dx L_n^alpha = -L_{n-1}^{alpha+1}; exactly 0 for n = 0.
pub fn deriv(idx: LaguerreIndex, x: f64) -> Result<f64, LaguerreError> {
    check_argument(x)?;
    if idx.n == 0 {
        return Ok(0.0);
    }
    Ok(-eval_unchecked(idx.n - 1, idx.alpha + 1.0, x))
}

/// Floating-point residual of the ladder identity
///
/// ```text
/// x L_n^a = (2n + a + 1) L_n^a - (n + 1) L_{n+1}^a - (n + a) L_{n-1}^a
/// ```
///
/// The return value is mathematically zero; what comes back measures
/// rounding only. For n = 0 the L_{n-1} term is taken as zero with its
/// coefficient (n + alpha) retained.
pub fn recurrence_residual(idx: LaguerreIndex, x: f64) -> Result<f64, LaguerreError> {
    check_argument(x)?;
    let (n, alpha) = (idx.n, idx.alpha);
    if n + 1 > DEGREE_CAP {
        return Err(LaguerreError::DegreeCapExceeded {
            n: n + 1,
            cap: DEGREE_CAP,
        });
    }
    let nf = n as f64;
    let ln = eval_unchecked(n, alpha, x);
    let ln_up = eval_unchecked(n + 1, alpha, x);
    let ln_down = if n == 0 {
        0.0
    } else {
        eval_unchecked(n - 1, alpha, x)
    };
    let rhs = (2.0 * nf + alpha + 1.0) * ln - (nf + 1.0) * ln_up - (nf + alpha) * ln_down;
    Ok(x * ln - rhs)
}
