//! The published table of Laguerre product integrals, stored verbatim, and
//! the audit that compares every entry against exact quadrature.
//!
//! Two integral families over the weight e^{-x}, with alpha = 2L + 1 and
//! i = n + shift:
//!
//! ```text
//! I(eta,1) = int_0^inf e^{-x} x^{2L+eta} L_n^{2L+1}(x) L_i^{2L+1}(x) dx
//! J(eta,1) = int_0^inf e^{-x} x^{2L+eta} L_n^{2L+1}(x) d/dx L_i^{2L+1}(x) dx
//! ```
//!
//! Every integrand is a polynomial times the weight, so Gauss-Laguerre
//! quadrature of sufficient order evaluates the defining integral exactly
//! (to rounding) and serves as ground truth. The closed forms are kept
//! exactly as printed — including the entries that disagree with the
//! defining integral — and the audit reports MATCH / MISMATCH /
//! DEGENERATE per entry instead of silently repairing the table. Closed
//! forms are evaluated in exact big-integer rational arithmetic and only
//! promoted to floating point at the end, so a MISMATCH verdict can never
//! be an overflow artifact.

use crate::laguerre::eval_unchecked;
use crate::quadrature::{self, build_rule};
use crate::report;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;
use std::fmt;
use thiserror::Error;

/// Relative deviation at or below which a closed form counts as matching
/// the quadrature value.
pub const MATCH_TOLERANCE: f64 = 1e-9;

/// Largest radial index accepted by [`audit`].
pub const AUDIT_N_MAX: u32 = 30;
/// Largest orbital index accepted by [`audit`].
pub const AUDIT_L_MAX: u32 = 10;

#[derive(Debug, Error, PartialEq)]
pub enum ClosedFormError {
    #[error("no printed row for {family}({eta},{xi}) with shift {shift}")]
    InvalidId {
        family: Family,
        eta: u8,
        xi: u8,
        shift: i8,
    },
    #[error(
        "audit range (n_max={n_max}, l_max={l_max}) exceeds validated bounds ({}, {})",
        AUDIT_N_MAX,
        AUDIT_L_MAX
    )]
    RangeExceeded { n_max: u32, l_max: u32 },
    #[error("closed form overflows f64 at n={n}, L={l}")]
    NonRepresentable { n: u32, l: u32 },
    #[error(transparent)]
    Quadrature(#[from] quadrature::QuadratureError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Family {
    I,
    J,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::I => write!(f, "I"),
            Family::J => write!(f, "J"),
        }
    }
}

/// One printed table row: family, x-power offset eta, Laguerre upper-index
/// offset xi (only xi = 1 is printed), and the index shift i - n.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct IntegralId {
    pub family: Family,
    pub eta: u8,
    pub xi: u8,
    pub shift: i8,
}

/// The printed rows, in audit order (family, eta, shift).
const ALL_IDS: [IntegralId; 23] = {
    const fn id(family: Family, eta: u8, shift: i8) -> IntegralId {
        IntegralId {
            family,
            eta,
            xi: 1,
            shift,
        }
    }
    [
        id(Family::I, 0, -1),
        id(Family::I, 0, 0),
        id(Family::I, 0, 1),
        id(Family::I, 1, 0),
        id(Family::I, 2, -1),
        id(Family::I, 2, 0),
        id(Family::I, 2, 1),
        id(Family::I, 3, -2),
        id(Family::I, 3, -1),
        id(Family::I, 3, 0),
        id(Family::I, 3, 1),
        id(Family::I, 3, 2),
        id(Family::J, 1, -1),
        id(Family::J, 1, 0),
        id(Family::J, 1, 1),
        id(Family::J, 2, -1),
        id(Family::J, 2, 0),
        id(Family::J, 2, 1),
        id(Family::J, 3, -2),
        id(Family::J, 3, -1),
        id(Family::J, 3, 0),
        id(Family::J, 3, 1),
        id(Family::J, 3, 2),
    ]
};

impl IntegralId {
    pub fn new(family: Family, eta: u8, xi: u8, shift: i8) -> Result<Self, ClosedFormError> {
        let id = IntegralId {
            family,
            eta,
            xi,
            shift,
        };
        if ALL_IDS.contains(&id) {
            Ok(id)
        } else {
            Err(ClosedFormError::InvalidId {
                family,
                eta,
                xi,
                shift,
            })
        }
    }

    /// Every printed row, in deterministic audit order.
    pub fn all() -> &'static [IntegralId] {
        &ALL_IDS
    }
}

/// A closed form evaluated at one (n, L): either a number or the flag that
/// the printed expression is indeterminate (0/0) there and makes no claim.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ClosedForm {
    Value(f64),
    Degenerate,
}

impl ClosedForm {
    pub fn value(self) -> Option<f64> {
        match self {
            ClosedForm::Value(v) => Some(v),
            ClosedForm::Degenerate => None,
        }
    }
}

enum Exact {
    Rational(BigRational),
    Degenerate,
}

fn big_factorial(k: u64) -> BigInt {
    (1..=k).map(BigInt::from).product()
}

fn rat(v: u64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

fn fact_ratio(num: u64, den: u64) -> BigRational {
    BigRational::new(big_factorial(num), big_factorial(den))
}

/// The printed expression, transcribed exactly, in exact arithmetic.
/// Callers guarantee n + shift >= 0 (and hence every factorial argument
/// below is non-negative).
fn exact_closed_form(id: IntegralId, n: u64, l: u64) -> Exact {
    use Family::{I, J};
    let base = fact_ratio(n + 2 * l + 1, n); // (n+2L+1)!/n!
    let value = match (id.family, id.eta, id.shift) {
        (I, 0, 1) => -fact_ratio(n + 2 * l + 1, n + 1),
        (I, 0, 0) => {
            let num = rat(2 * n + 2 * l);
            let den = rat((n + 2 * l + 1) * (n + 2 * l));
            if den.is_zero() {
                // (2n+2L)/((n+2L+1)(n+2L)) is 0/0 at n = L = 0
                assert!(num.is_zero());
                return Exact::Degenerate;
            }
            base * num / den
        }
        (I, 0, -1) => -fact_ratio(n + 2 * l, n),
        (I, 1, 0) => base,
        (I, 2, 1) => -fact_ratio(n + 2 * l + 2, n),
        (I, 2, 0) => base * rat(2 * (n + l + 1)),
        (I, 2, -1) => -fact_ratio(n + 2 * l + 1, n - 1),
        (I, 3, 2) => base * rat((n + 2 * l + 2) * (n + 2 * l + 3)),
        (I, 3, 1) => -(base * rat(2 * (n + 2 * l + 2) * (2 * n + 2 * l + 3))),
        (I, 3, 0) => -(base * rat(2 * n * (n + 2 * l + 1))),
        (I, 3, -1) => base * rat(2 * n * (2 * n + 2 * l + 1)),
        (I, 3, -2) => base * rat(n * n.saturating_sub(1)),
        (J, 1, 1) => {
            -(base * BigRational::new(BigInt::from(2 * n + 2 * l + 1), BigInt::from(n + 1)))
        }
        (J, 1, 0) => {
            let inner = BigRational::new(
                BigInt::from(2 * n * (n + l + 1)),
                BigInt::from((n + 2 * l + 1) * (n + 1)),
            ) + rat(n + 2 * l + 2);
            base * inner
        }
        (J, 1, -1) => {
            -(base * BigRational::new(BigInt::from(2 * n + 2 * l + 1), BigInt::from(n + 2 * l + 1)))
        }
        (J, 2, 1) => BigRational::zero(),
        (J, 2, 0) => base * rat(n),
        (J, 2, -1) => -(base * rat(n)),
        (J, 3, 2) => -(base * rat(n * n.saturating_sub(1))),
        (J, 3, 1) => {
            let inner = BigRational::new(BigInt::from(n * n), BigInt::from(n + 2 * l + 1))
                + rat(2 * n * (n + l));
            -(base * inner)
        }
        (J, 3, 0) => base * rat(n * (3 * n + 4 * l + 3)),
        (J, 3, -1) => -(base * rat(n * (n + 2 * l + 2))),
        (J, 3, -2) => BigRational::zero(),
        _ => unreachable!("IntegralId is validated on construction"),
    };
    Exact::Rational(value)
}

/// The printed closed form at (n, L), promoted to f64 after exact
/// evaluation. Rows with i = n + shift < 0 are defined as the direct
/// integral with L_{i<0} taken as zero, i.e. 0.
pub fn closed_form_value(id: IntegralId, n: u32, l: u32) -> Result<ClosedForm, ClosedFormError> {
    if (n as i64 + id.shift as i64) < 0 {
        return Ok(ClosedForm::Value(0.0));
    }
    match exact_closed_form(id, n as u64, l as u64) {
        Exact::Degenerate => Ok(ClosedForm::Degenerate),
        Exact::Rational(r) => {
            let v = r.to_f64().unwrap_or(f64::NAN);
            if v.is_finite() {
                Ok(ClosedForm::Value(v))
            } else {
                Err(ClosedFormError::NonRepresentable { n, l })
            }
        }
    }
}

fn quadrature_value_with_scale(
    id: IntegralId,
    n: u32,
    l: u32,
) -> Result<(f64, f64), ClosedFormError> {
    let i = n as i64 + id.shift as i64;
    if i < 0 {
        return Ok((0.0, 0.0));
    }
    let i = i as u32;
    let degree = (2 * l + id.eta as u32 + n + i) as usize;
    let rule = build_rule(0.0, quadrature::nodes_for_degree(degree))?;
    let alpha = (2 * l + 1) as f64;
    let power = (2 * l + id.eta as u32) as i32;
    let pair = quadrature::integrate_with_scale(&rule, |x| {
        let left = eval_unchecked(n, alpha, x);
        let right = match id.family {
            Family::I => eval_unchecked(i, alpha, x),
            // d/dx L_i^a = -L_{i-1}^{a+1}, zero for i = 0
            Family::J => {
                if i == 0 {
                    0.0
                } else {
                    -eval_unchecked(i - 1, alpha + 1.0, x)
                }
            }
        };
        x.powi(power) * left * right
    })?;
    Ok(pair)
}

/// The defining integral evaluated by Gauss-Laguerre quadrature with the
/// node count chosen from the integrand's exact polynomial degree.
pub fn quadrature_value(id: IntegralId, n: u32, l: u32) -> Result<f64, ClosedFormError> {
    quadrature_value_with_scale(id, n, l).map(|(v, _)| v)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "MATCH")]
    Match,
    #[serde(rename = "MISMATCH")]
    Mismatch,
    #[serde(rename = "DEGENERATE")]
    Degenerate,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Match => write!(f, "MATCH"),
            Verdict::Mismatch => write!(f, "MISMATCH"),
            Verdict::Degenerate => write!(f, "DEGENERATE"),
        }
    }
}

/// One audited table entry at a specific (n, L).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditRecord {
    #[serde(flatten)]
    pub id: IntegralId,
    pub n: u32,
    #[serde(rename = "L")]
    pub l: u32,
    /// None when the printed expression is indeterminate at this point.
    pub closed_form: Option<f64>,
    pub quadrature: f64,
    /// |closed - quadrature| relative to the larger magnitude (or to the
    /// quadrature sum's own L1 scale when both are near zero); None for
    /// degenerate rows.
    pub rel_deviation: Option<f64>,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct AuditSummary {
    pub matches: usize,
    pub mismatches: usize,
    pub degenerate: usize,
    pub total: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AuditReport {
    pub records: Vec<AuditRecord>,
    pub summary: AuditSummary,
}

fn audit_one(id: IntegralId, n: u32, l: u32) -> Result<AuditRecord, ClosedFormError> {
    let (quad, l1_scale) = quadrature_value_with_scale(id, n, l)?;
    let record = match closed_form_value(id, n, l)? {
        ClosedForm::Degenerate => AuditRecord {
            id,
            n,
            l,
            closed_form: None,
            quadrature: quad,
            rel_deviation: None,
            verdict: Verdict::Degenerate,
        },
        ClosedForm::Value(cf) => {
            let diff = (cf - quad).abs();
            let rel = if diff == 0.0 {
                0.0
            } else {
                diff / cf.abs().max(quad.abs()).max(l1_scale)
            };
            let verdict = if rel <= MATCH_TOLERANCE {
                Verdict::Match
            } else {
                Verdict::Mismatch
            };
            AuditRecord {
                id,
                n,
                l,
                closed_form: Some(cf),
                quadrature: quad,
                rel_deviation: Some(rel),
                verdict,
            }
        }
    };
    Ok(record)
}

/// Audit every printed row over n <= n_max, L <= l_max (rows with
/// n + shift < 0 are skipped: the partner polynomial does not exist).
/// Output order is (family, eta, shift, n, L) and is deterministic.
pub fn audit(n_max: u32, l_max: u32) -> Result<AuditReport, ClosedFormError> {
    if n_max > AUDIT_N_MAX || l_max > AUDIT_L_MAX {
        return Err(ClosedFormError::RangeExceeded { n_max, l_max });
    }
    let mut records = Vec::new();
    for &id in IntegralId::all() {
        for n in 0..=n_max {
            if (n as i64 + id.shift as i64) < 0 {
                continue;
            }
            for l in 0..=l_max {
                records.push(audit_one(id, n, l)?);
            }
        }
    }
    let mut summary = AuditSummary {
        total: records.len(),
        ..Default::default()
    };
    for r in &records {
        match r.verdict {
            Verdict::Match => summary.matches += 1,
            Verdict::Mismatch => summary.mismatches += 1,
            Verdict::Degenerate => summary.degenerate += 1,
        }
    }
    Ok(AuditReport { records, summary })
}

impl AuditReport {
    /// CSV with header `family,eta,xi,shift,n,L,closed_form,quadrature,rel_deviation,verdict`.
    /// Degenerate rows print `degenerate` for the closed form and leave the
    /// deviation empty.
    pub fn to_csv(&self) -> Result<String, report::NonFiniteValue> {
        let mut out =
            String::from("family,eta,xi,shift,n,L,closed_form,quadrature,rel_deviation,verdict\n");
        for r in &self.records {
            let cf = match r.closed_form {
                Some(v) => report::fmt_f64(report::require_finite(v, "closed_form")?),
                None => "degenerate".to_string(),
            };
            let dev = match r.rel_deviation {
                Some(v) => report::fmt_f64(report::require_finite(v, "rel_deviation")?),
                None => String::new(),
            };
            let quad = report::fmt_f64(report::require_finite(r.quadrature, "quadrature")?);
            out.push_str(&format!(
                "{},{},{},{},{},{},{},{},{},{}\n",
                r.id.family, r.id.eta, r.id.xi, r.id.shift, r.n, r.l, cf, quad, dev, r.verdict
            ));
        }
        Ok(out)
    }

    /// JSON document with the record array and the verdict summary.
    pub fn to_json(&self) -> Result<String, serde_json::Error> {
        serde_json::to_string_pretty(self)
    }
}
