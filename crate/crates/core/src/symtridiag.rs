//! Symmetric tridiagonal eigenvalue routines.
//!
//! Two specialised solvers, both standard:
//!
//! * [`eigen_first_components`] — implicit-shift QL (a translation of the
//!   classic TQL2 scheme) that accumulates only the first row of the
//!   eigenvector matrix. That row is exactly what the Golub-Welsch
//!   construction of Gaussian quadrature weights needs, and tracking it
//!   alone keeps the sweep O(n^2).
//! * [`lowest_eigenvalues`] — bisection on the Sturm sign count, for the
//!   few lowest eigenvalues of large matrices (the finite-difference
//!   radial operator), O(k n log(1/tol)) with O(1) extra memory.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("QL iteration failed to converge for eigenvalue index {index} after {iterations} sweeps")]
pub struct NonConvergence {
    pub index: usize,
    pub iterations: usize,
}

const MAX_QL_SWEEPS: usize = 50;

/// Eigenvalues (ascending) of the symmetric tridiagonal matrix with the
/// given diagonal and off-diagonal, together with the first component of
/// each normalized eigenvector.
///
/// `off.len()` must be `diag.len() - 1` (empty `off` for a 1x1 matrix).
pub fn eigen_first_components(
    diag: &[f64],
    off: &[f64],
) -> Result<(Vec<f64>, Vec<f64>), NonConvergence> {
    let n = diag.len();
    assert!(n > 0, "empty matrix");
    assert_eq!(off.len(), n - 1, "off-diagonal length mismatch");

    let mut d = diag.to_vec();
    // e[i] couples rows i and i+1; e[n-1] is workspace
    let mut e = vec![0.0; n];
    e[..n - 1].copy_from_slice(off);
    let mut z = vec![0.0; n];
    z[0] = 1.0;

    for l in 0..n {
        let mut iter = 0;
        loop {
            // look for a negligible off-diagonal element splitting the matrix
            let mut m = l;
            while m + 1 < n {
                let dd = d[m].abs() + d[m + 1].abs();
                if e[m].abs() <= f64::EPSILON * dd {
                    break;
                }
                m += 1;
            }
            if m == l {
                break;
            }
            iter += 1;
            if iter > MAX_QL_SWEEPS {
                return Err(NonConvergence {
                    index: l,
                    iterations: iter,
                });
            }

            // implicit shift from the 2x2 block at l
            let mut g = (d[l + 1] - d[l]) / (2.0 * e[l]);
            let mut r = g.hypot(1.0);
            g = d[m] - d[l] + e[l] / (g + r.copysign(g));
            let (mut s, mut c) = (1.0f64, 1.0f64);
            let mut p = 0.0;
            let mut underflow = false;

            for i in (l..m).rev() {
                let mut f = s * e[i];
                let b = c * e[i];
                r = f.hypot(g);
                e[i + 1] = r;
                if r == 0.0 {
                    // rotation annihilated; deflate and retry the sweep
                    d[i + 1] -= p;
                    e[m] = 0.0;
                    underflow = true;
                    break;
                }
                s = f / r;
                c = g / r;
                g = d[i + 1] - p;
                r = (d[i] - g) * s + 2.0 * c * b;
                p = s * r;
                d[i + 1] = g + p;
                g = c * r - b;

                // carry the first eigenvector row through the rotation
                f = z[i + 1];
                z[i + 1] = s * z[i] + c * f;
                z[i] = c * z[i] - s * f;
            }
            if underflow {
                continue;
            }
            d[l] -= p;
            e[l] = g;
            e[m] = 0.0;
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| d[a].total_cmp(&d[b]));
    let values = order.iter().map(|&i| d[i]).collect();
    let firsts = order.iter().map(|&i| z[i]).collect();
    Ok((values, firsts))
}

/// Number of eigenvalues strictly below `x` (Sturm sign count via the
/// LDL^T pivots).
fn count_below(diag: &[f64], off: &[f64], x: f64, pivmin: f64) -> usize {
    let mut count = 0usize;
    let mut d = diag[0] - x;
    if d.abs() < pivmin {
        d = -pivmin;
    }
    if d < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        d = diag[i] - x - off[i - 1] * off[i - 1] / d;
        if d.abs() < pivmin {
            d = -pivmin;
        }
        if d < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` lowest eigenvalues (ascending) by Sturm bisection, each
/// converged to `rel_tol` relative (floored at 1e-14 absolute).
pub fn lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize, rel_tol: f64) -> Vec<f64> {
    let n = diag.len();
    assert!(n > 0 && off.len() == n - 1);
    assert!(k <= n, "asked for {k} eigenvalues of an order-{n} matrix");

    // Gershgorin enclosure
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    let mut max_b2 = 0.0f64;
    for i in 0..n {
        let radius =
            if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - radius);
        hi = hi.max(diag[i] + radius);
        if i + 1 < n {
            max_b2 = max_b2.max(off[i] * off[i]);
        }
    }
    let pivmin = (f64::MIN_POSITIVE / f64::EPSILON) * max_b2.max(1.0);

    let mut out = Vec::with_capacity(k);
    let mut left_base = lo;
    for j in 0..k {
        let mut a = left_base;
        let mut b = hi;
        while b - a > rel_tol * a.abs().max(b.abs()).max(1e-14) {
            let mid = 0.5 * (a + b);
            if mid <= a || mid >= b {
                break; // interval at rounding resolution
            }
            if count_below(diag, off, mid, pivmin) > j {
                b = mid;
            } else {
                a = mid;
            }
        }
        let lambda = 0.5 * (a + b);
        out.push(lambda);
        // the next eigenvalue cannot lie below this one
        left_base = a;
    }
    out
}
