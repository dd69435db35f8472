//! Seeded generation and batch oracle certification.
//!
//! ```
//! use setcover_reopt::harness::{certify, CertifyKind};
//!
//! let kind = CertifyKind::AddSetUnweighted;
//! let report = certify(kind, &kind.default_spec(7), 3).unwrap();
//! assert!(report.all_pass());
//! assert!(report.to_tsv().starts_with("kind\ttrial\tseed"));
//! ```

pub mod certify;
pub mod gen;

pub use certify::{
    certify, certify_with_limit, check_chain, check_gadget, CertifyKind, Outcome, Report,
    TrialRow, DEFAULT_TRIAL_TIME_LIMIT,
};
pub use gen::{generate, generate_graph, GenSpec, SplitMix64};
