//! Exact computation with plane curves over small finite fields.
//!
//! The crate builds finite fields deterministically, does univariate and
//! multivariate polynomial arithmetic over them, constructs the curve
//! families this project studies, and decides smoothness exactly — either
//! through closed-form criteria where a family admits one, or by solving
//! for the singular locus over the algebraic closure.

pub mod error;
pub mod curves;
pub mod fields;
pub mod poly;
pub mod goodk;
pub mod smoothness;

pub use curves::{build_curve, enumerate_proj_points, filling_generators, is_plane_filling, CurveSpec, ProjPoint};
pub use error::{Error, Result};
pub use fields::{Embedding, Field, FieldElement, DEFAULT_CARDINALITY_CAP};
pub use poly::{BiPoly, BinaryForm, Factorization, TriForm, UniPoly, Var};
pub use goodk::{
    bad_k_values, build_pair_graph, good_k_count, good_k_lower_bound, good_k_values, prime_power,
    verify_claims, BoundVerdict, ClaimReport, PairGraph,
};
pub use smoothness::{
    check_fq2_implication, exact_singular_locus, exact_singular_locus_with, has_linear_component,
    is_smooth, is_smooth_with, singular_points_up_to, singular_points_up_to_capped,
    smooth_at_base_points, Fq2Implication, Method, SingularPoint, SingularReport, SolveOptions,
    DEFAULT_RESIDUE_CAP,
};
