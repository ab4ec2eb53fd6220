//! Generators `e_{i,μ}`, rewriting into them, and rank certificates.

pub mod certify;
pub mod linalg;
pub mod rewrite;

pub use certify::{
    certify_basis, certify_freeness, certify_generation, certify_generation_bound, certify_presentation,
    certify_product, certify_rational, certify_relation_span, certify_rewrite, generation_bound, multidegrees_up_to,
    Budget, RankCertificate, Verdict,
};
pub use linalg::{rank_over, smith_normal_form, Echelon, Field, Lattice};
pub use rewrite::{
    cached_rewrites, eval_e1_poly, eval_generator_poly, generator_monomials, generator_multidegree, is_rewrite_cached,
    preload_rewrite, rational_rewrite_to_e1, rewrite_in, rewrite_to_generators, sigma, sigma_e1, sigma_projected,
};
