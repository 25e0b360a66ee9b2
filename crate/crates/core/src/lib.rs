//! Exact computer algebra for concomitants of ternary forms.
//!
//! The crate works in the polynomial ring `K[A, X, U]` spanned by the
//! coefficient variables `a[i,j]` of a ternary form of degree `n`, the point
//! variables `x1, x2, x3` and the dual variables `u1, u2, u3`, with exact
//! rational coefficients throughout.  On top of the ring sit the nine sl3
//! generator derivations, weight/order analysis, lowering-operator spans, and
//! the reconstruction of covariants, contravariants and mixed concomitants
//! from their lead coefficients, each result re-verified for invariance
//! before it is returned.

pub mod action;
pub mod linalg;
pub mod parse;
pub mod render;
pub mod rep;
pub mod ring;
pub mod roberts;

pub use action::{
    apply_generator, apply_word, is_highest_vector, order_of, weight_of, ActionTable, Generator,
    Order, Weight, Word,
};
pub use parse::{parse_polynomial, ParseError};
pub use render::RenderFormat;
pub use ring::{Monomial, Polynomial, Rational, RingConfig, VariableId};
pub use roberts::{
    dual_conic_oracle, generic_form, hessian_covariant, lead_coefficient, reconstruct_auto,
    reconstruct_contravariant, reconstruct_covariant, reconstruct_mixed, universal_covariant,
    verify_concomitant, ConcomitantKind, ConcomitantReport, RobertsError,
};
