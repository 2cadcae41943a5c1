//! Essential arity, variable identification minors and arity gap of
//! functions on finite sets.
//!
//! Functions are explicit value tables ([`FiniteFunction`]). The arity gap is
//! computed by brute force over identification minors ([`gap_report`]); for
//! Boolean functions it is also available in closed form from the Zhegalkin
//! polynomial ([`gap_via_classifier`]). The [`verifier`] module sweeps whole
//! populations of functions and checks the known bounds on the gap.

pub mod anf;
pub mod budget;
pub mod classify;
pub mod error;
pub mod function;
pub mod generators;
pub mod minor;
pub mod packed;
pub mod rng;
pub mod verifier;

pub use anf::{anf_identify, from_anf, to_anf, Monomial, ZhegalkinPolynomial};
pub use budget::{Budget, DEFAULT_BUDGET};
pub use classify::{classify, gap_via_classifier, FormTag, SpecialForm};
pub use error::{Error, Result};
pub use function::{FiniteFunction, VariableIndex};
pub use minor::{gap_report, identify, leq, substitute, GapReport, Substitution};
pub use packed::PackedTable;
pub use rng::SampleRng;
