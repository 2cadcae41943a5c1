//! Checks of the known bounds, run on single functions or whole populations.

pub mod checks;
pub mod search;
pub mod sweep;

pub use checks::{
    check_boolean_bound, check_classifier_agreement, check_degree_two, check_gap_bound, check_kplus1_lemma,
    find_restriction_witness,
};
pub use search::{search_large_gap, verify_certificate, GapCertificate, GapSearchConfig, GapSearchReport};
pub use sweep::{sweep, Population, SweepReport, TheoremId, Violation, SCHEMA};
