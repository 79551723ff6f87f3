//! Jet rings, membership certificates for the constant-fraction identities,
//! and constant sections presented by fractions.

pub mod identities;
pub mod jet;
pub mod reduced;
pub mod sections;

pub use identities::{
    verify_lemma_4_3, verify_prop_4_2, verify_theta_lemma, Certificate, Lemma43Report, Prop42Report, DEFAULT_PROP42_MAX_N,
};
pub use jet::JetRing;
pub use reduced::{passes_reducedness_check, proper_power_generators};
pub use sections::{
    constants_comparison_report, extend_constant, is_constant_fraction, validate_kovacic_section, ComparisonEntry,
    ComparisonReport, Extension, FractionSection, KovacicCertificate, DEFAULT_EXTENSION_ORDER,
};
