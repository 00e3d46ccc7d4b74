//! A-hypergeometric period matrices of `f = sum v_r x^{a_r}`: the integer
//! kernel of the extended exponent matrix, the sets `L_i(m)`, the
//! normalised truncations `psi~_m` (by lattice enumeration and by constant
//! terms) and congruences between them.
//!
//! Series in `v` are kept modulo all monomials of grade above a bound for
//! an additive grading that is positive on the cone spanned by the `L_i`;
//! see [`AConfig::cone_shape`].

mod config;
mod lattice;
mod psi;
mod verify;

pub use config::{ah_kernel_lattice, AConfig, AConfigJson, AMu};
pub use lattice::{ah_enumerate_li, ah_gamma_star, degree_cap, extreme_rays, psi_coefficient, LatticeSolutionSet};
pub use psi::{
    ah_det_relation_rhs, ah_gamma_ct, ah_psi_tilde, ah_psi_tilde_ct_oracle, ah_psi_tilde_exact, ah_psi_tilde_int,
    reduce_matrix,
};
pub use verify::{
    ah_cone_check, ah_lambda, ah_ndelta_across_primes, ah_ndelta_exact, ah_period_series, ah_verify_main5, ConeVerdict,
    Main5Config, NdeltaCell,
};
