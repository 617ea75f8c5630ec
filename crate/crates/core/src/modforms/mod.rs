//! Exact q-expansions: Eisenstein series, powers of the discriminant, the
//! constant-term identity for level one, and the weight bookkeeping used by
//! the finite check.

pub mod eisenstein;
pub mod qexp;
pub mod scaffold;
pub mod spaces;
pub mod tau;

pub use eisenstein::{
    bernoulli, eisenstein, eisenstein_congruence_check, eisenstein_integral, eisenstein_residues,
    sigma, EisensteinReport, BERNOULLI_CAP,
};
pub use qexp::{delta_power, discriminant, discriminant_power, QExpansion, TauSeries};
pub use scaffold::{
    expansion, expansion_check, induction_rows, k_candidates, scaffold, weight_class,
    ExpansionCheck, InductionRow, ProofScaffold, ScaffoldCheck, WeightClass,
};
pub use spaces::{basis_mk, cko_constant_term, dim_mk, e_tilde, leading_rank};
pub use tau::{tau_by_convolution, tau_congruence_check, tau_series, TauReport};
