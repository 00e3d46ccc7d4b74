//! Hasse-Witt matrices, Dwork-type congruences and their verifiers.
//!
//! `beta_m` collects coefficients of `f^{m-1}`, `gamma_m` the coefficients
//! of the truncated expansion of `1/f`. Verifiers return a
//! [`CongruenceReport`] recording the first failing coefficient.

mod legendre;
mod matrices;
mod report;
mod series;
mod verify;

pub use legendre::{
    hw_count_points_legendre, hw_legendre_truncation, hw_unit_root_ct, hw_unit_root_legendre, legendre_poly,
    legendre_sign_relation, Perturbation, UnitRootResult,
};
pub use matrices::{gamma_entries, hw_beta_matrix, hw_ct_sequence, hw_gamma_matrix, Phi};
pub use report::{CongruenceReport, Failure};
pub(crate) use series::check_prime;
pub use series::{
    constant_coeffs, ct_residues, embed_param_poly, embed_poly, hw_q_series, series_coeffs, specialize, truncation,
};
pub use verify::{
    any_m_inputs, derivative_inputs, hw_lambda_approx, hw_ndelta_approx, hw_verify_any_m, hw_verify_derivative,
    hw_verify_limits, hw_verify_mev, mev_inputs, Approx, DerivativeInputs, DworkInputs, LimitsConfig,
};
