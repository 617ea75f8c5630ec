//! Finite-check certification, lifting, filters and search.

pub mod certificate;
pub mod chain;
pub mod delta;
pub mod filters;
pub mod lift;
pub mod search;
pub mod verify;

pub use certificate::{
    Certificate, ChainOutcome, CheckedValue, CongruenceClaim, HypothesisRecord, LevelEvidence,
    Method, Refutation,
};
pub use chain::{
    certify_chain, certify_main, level_evidence, recheck, residue_shift_equivalence, ShiftReport,
};
pub use delta::{bound_numerator, delta, finite_bound, target_residue, DeltaParams};
pub use filters::{gandhi_params, ko_exceptional_filter, GandhiParams, KoCandidate};
pub use lift::{lift, lift_identity_check, DerivedClaim, LiftIdentityReport};
pub use search::{
    family_label, search, search_tasks, search_tasks_run, FamilyRow, Origin, SearchParams,
    SearchTable,
};
pub use verify::{
    verify_empirical, verify_empirical_exact, Counterexample, EmpiricalReport, ValuePath,
};
