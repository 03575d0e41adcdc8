//! Rankin–Cohen bracket combinatorics and the explicit holomorphic
//! projection formulas, all in exact rational arithmetic.

pub mod gamma;
pub mod identities;
pub mod modular;

pub use gamma::HalfIntegerGamma;
pub use identities::{
    cohen_vanishing, comb_lemma2_checks, comb_lemma_check, pab, pab_alternate, prop_poly_identity_check,
};
pub use modular::{
    bracket_coefficient, cusp_coeffs, cusp_coeffs_2f1, deligne_bound_violations, growth_ratios, kappa, mertens_br_coefficient,
    theta_cube_coefficient, zagier_fminus,
};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RcError {
    #[error("P_{{a,b}} needs a >= 2, got {0}")]
    PabDegree(i64),
    #[error("the alternate P_{{a,b}} form excludes b = 1, 2")]
    PabExcludedB,
    #[error("need u > v >= 1, got u = {u}, v = {v}")]
    NotDecreasing { u: i64, v: i64 },
    #[error("kappa is only supported for k = 3/2 and l in {{1/2, 3/2}}")]
    UnsupportedWeights,
    #[error("expected a rational result, got a multiple of pi^({0}/2)")]
    NotRational(i32),
    #[error("class number table covers {bound}, need {needed}")]
    TableTooSmall { bound: u64, needed: u64 },
}
