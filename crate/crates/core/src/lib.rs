//! Bound-state spectra of the radial Pauli-Dirac equation for a neutral
//! spin-1/2 particle with anomalous magnetic moment in the electric field
//! E(r) = A + B r.
//!
//! The crate has three layers:
//!
//! * special-function machinery: associated Laguerre polynomials
//!   ([`laguerre`]) and generalized Gauss-Laguerre quadrature
//!   ([`quadrature`]), exact on polynomials up to the rule's degree;
//! * the published closed forms: an integral table of Laguerre products
//!   ([`closed_forms`]) audited entry-by-entry against quadrature, and the
//!   perturbative energy formulas ([`spectrum`]) in two modes — a literal
//!   transcription and a self-consistent Rayleigh-Schrödinger evaluation;
//! * an independent eigensolver ([`oracle`]) for the full radial problem
//!   (finite differences or a Laguerre Galerkin basis) that arbitrates
//!   between the two modes and measures the perturbative remainder.
//!
//! Natural units (hbar = c = 1) throughout.
//!
//! ```
//! use pdspec::spectrum::{self, Mode, ModelConfig, Sign};
//!
//! let cfg = ModelConfig {
//!     mass: 1.0,
//!     moment: 1.0,
//!     field_offset: 0.5,
//!     field_slope: 0.0,
//!     orbital_l: 0,
//!     branch: Sign::Plus,
//!     particle: Sign::Plus,
//! };
//! // with no field gradient the first excited level is closed-form
//! let eps = spectrum::unperturbed_energy(&cfg, 1)?;
//! assert!((eps - 1.1875f64.sqrt()).abs() < 1e-15);
//!
//! let breakdown = spectrum::total_energy(&cfg, 1, Mode::Consistent, 30)?;
//! assert_eq!(breakdown.total, eps);
//! # Ok::<(), pdspec::spectrum::SpectrumError>(())
//! ```

pub mod closed_forms;
pub mod gamma;
pub mod laguerre;
pub mod oracle;
pub mod quadrature;
pub mod report;
pub mod spectrum;
pub mod symtridiag;

pub use closed_forms::{audit, AuditRecord, AuditReport, Family, IntegralId, Verdict};
pub use laguerre::LaguerreIndex;
pub use oracle::{OracleResult, OracleSpec};
pub use quadrature::QuadratureRule;
pub use spectrum::{
    EnergyBreakdown, Mode, ModelConfig, PerturbationOperators, Sign, UnperturbedState,
};
