//! Generalized Gauss-Laguerre quadrature for the weight x^alpha e^{-x} on
//! [0, inf).
//!
//! Nodes and weights come from the Golub-Welsch construction: the
//! eigenvalues of the symmetric Jacobi matrix with diagonal
//! a_k = 2k + alpha + 1 and off-diagonal b_k = sqrt(k (k + alpha)) are the
//! nodes, and the squared first eigenvector components scaled by the
//! zeroth moment Gamma(alpha + 1) are the weights. An m-point rule
//! integrates every polynomial of degree <= 2m - 1 exactly against the
//! weight, which is the property the closed-form audit leans on: every
//! integrand there is a polynomial, so a rule of sufficient order is an
//! exact oracle up to rounding.

use crate::gamma::gamma;
use crate::symtridiag;
use thiserror::Error;

/// Hard cap on the node count; the audit ranges need far fewer.
pub const MAX_NODES: usize = 512;

#[derive(Debug, Error, PartialEq)]
pub enum QuadratureError {
    #[error("node count must be in 1..={max}, got {m}", max = MAX_NODES)]
    NodeCountOutOfRange { m: usize },
    #[error("weight exponent alpha must be finite and >= 0, got {alpha}")]
    InvalidAlpha { alpha: f64 },
    #[error("Jacobi eigendecomposition did not converge: {0}")]
    EigenNonConvergence(#[from] symtridiag::NonConvergence),
    #[error("integrand is not finite at node {node}")]
    NonFiniteIntegrand { node: f64 },
}

/// An immutable m-point rule for weight x^alpha e^{-x}.
#[derive(Debug, Clone, PartialEq)]
pub struct QuadratureRule {
    alpha: f64,
    nodes: Vec<f64>,
    weights: Vec<f64>,
}

impl QuadratureRule {
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    /// Nodes in strictly ascending order, all positive.
    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Highest polynomial degree integrated exactly: 2m - 1.
    pub fn exact_degree(&self) -> usize {
        2 * self.nodes.len() - 1
    }
}

/// Build the m-point generalized Gauss-Laguerre rule.
pub fn build_rule(alpha: f64, m: usize) -> Result<QuadratureRule, QuadratureError> {
    if !alpha.is_finite() || alpha < 0.0 {
        return Err(QuadratureError::InvalidAlpha { alpha });
    }
    if m == 0 || m > MAX_NODES {
        return Err(QuadratureError::NodeCountOutOfRange { m });
    }

    let diag: Vec<f64> = (0..m).map(|k| 2.0 * k as f64 + alpha + 1.0).collect();
    let off: Vec<f64> = (1..m)
        .map(|k| (k as f64 * (k as f64 + alpha)).sqrt())
        .collect();
    let (nodes, firsts) = symtridiag::eigen_first_components(&diag, &off)?;

    let mu0 = gamma(alpha + 1.0);
    let weights: Vec<f64> = firsts.iter().map(|z| mu0 * z * z).collect();
    Ok(QuadratureRule {
        alpha,
        nodes,
        weights,
    })
}

/// Sum w_i f(x_i); exact to rounding whenever f is a polynomial of degree
/// at most [`QuadratureRule::exact_degree`].
pub fn integrate<F>(rule: &QuadratureRule, mut f: F) -> Result<f64, QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    let mut acc = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand { node: x });
        }
        acc += w * v;
    }
    Ok(acc)
}

/// Like [`integrate`], also returning sum w_i |f(x_i)| — the natural
/// magnitude against which the (possibly cancelling) signed sum should be
/// compared.
pub fn integrate_with_scale<F>(
    rule: &QuadratureRule,
    mut f: F,
) -> Result<(f64, f64), QuadratureError>
where
    F: FnMut(f64) -> f64,
{
    let mut acc = 0.0;
    let mut scale = 0.0;
    for (&x, &w) in rule.nodes.iter().zip(&rule.weights) {
        let v = f(x);
        if !v.is_finite() {
            return Err(QuadratureError::NonFiniteIntegrand { node: x });
        }
        acc += w * v;
        scale += w * v.abs();
    }
    Ok((acc, scale))
}

/// Smallest node count whose rule is exact for polynomials of the given
/// degree: m = ceil((degree + 1) / 2).
pub fn nodes_for_degree(degree: usize) -> usize {
    degree / 2 + 1
}
