//! Deterministic report formatting shared by the audit table and the CLI.
//!
//! Numbers are rendered with the shortest representation that round-trips
//! the underlying binary double, so two runs with identical inputs emit
//! byte-identical files. Non-finite values are a defect by contract and
//! are rejected at serialization time rather than written out.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
#[error("non-finite value {value} produced for {context}")]
pub struct NonFiniteValue {
    pub value: f64,
    pub context: String,
}

/// Check a value destined for a report.
pub fn require_finite(value: f64, context: &str) -> Result<f64, NonFiniteValue> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(NonFiniteValue {
            value,
            context: context.to_string(),
        })
    }
}

/// Shortest round-trip decimal form of a double (std's Display is exactly
/// that).
pub fn fmt_f64(value: f64) -> String {
    format!("{value}")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_round_trips() {
        for v in [0.1, 1.0 / 3.0, 6.02e23, -1e-300, 120.0] {
            assert_eq!(fmt_f64(v).parse::<f64>().unwrap(), v);
        }
    }

    #[test]
    fn rejects_non_finite() {
        assert!(require_finite(f64::NAN, "x").is_err());
        assert!(require_finite(f64::INFINITY, "x").is_err());
        assert_eq!(require_finite(2.5, "x").unwrap(), 2.5);
    }
}
