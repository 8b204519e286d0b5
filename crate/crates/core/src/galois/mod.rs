//! The finite side of Serre's method for two-dimensional 2-adic
//! representations.
//!
//! If two such representations with equal determinant and the same
//! absolutely irreducible residual representation were not isomorphic, the
//! first deviation between them would give a homomorphism from the absolute
//! Galois group onto a subgroup of `G~` (see [`group`]). That subgroup must
//! contain an element of order 4 or 6, and the extension it cuts out has
//! Galois group `S3 x C2` or `S4`. The representations themselves are never
//! modelled here; only this finite consequence is, through candidate fields
//! and the primes whose Frobenius rules each candidate out.

pub mod fields;
pub mod group;

pub use fields::{
    certify_sufficient_set, compositum_coverage, enumerate_cubic_candidates, identify_residual, proposition1_check,
    quadratic_classes, same_field, FieldCandidate, FieldSource, PropositionVerdict, SufficiencyCertificate, Witness,
    WitnessTarget, PROPOSITION_PRIMES,
};
pub use group::{build_g_tilde, center, j_map, order_census, semidirect_mul, tau_tilde, GtElement, JImage, Mat2F2};
