//! Polynomial algebra over finite fields: dense univariate polynomials,
//! sparse bivariate polynomials and homogeneous ternary forms, univariate
//! factorization, and resultants.

pub mod factor;
pub mod multi;
pub(crate) mod quotient;
pub mod resultant;
pub mod uni;

pub use factor::{
    factor, factor_seeded, is_irreducible, radical, roots_in_extension,
    roots_in_field, squarefree_decomposition, Factorization,
};
pub use multi::{BiPoly, BinaryForm, TriForm, Var};
pub use resultant::{resultant_y, resultant_y_interp, uni_resultant};
pub use uni::UniPoly;
