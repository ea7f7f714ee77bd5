//! Newton-type interpolation series for holomorphic functions on discs and
//! annuli, with divided differences computed both by the classical
//! recursion and as Cauchy contour integrals.

mod dd;
pub mod divdiff;
pub mod expr;
pub mod quadrature;
pub mod series;

pub type ComplexValue = num_complex::Complex64;

pub use divdiff::{
    divided_difference_distinct, divided_difference_recursive, lemma1_partial, partial_fraction_lhs,
    reciprocal_expansion_converges, DivDiffError, TelescopingSplit,
};
pub use expr::{builtin, eval_fn, parse_function, Builtin, ExprError, HolomorphicFn};
pub use quadrature::{
    cauchy_coefficient_principal, cauchy_coefficient_regular, contour_integral, divided_difference_integral, Contour,
    Orientation, QuadConfig, QuadError, QuadResult,
};
pub use series::{
    convergence_report, eval_expansion, expand_annulus, expand_disc, expansion_from_json, expansion_to_json,
    AnnulusSpec, ConvergenceDiag, Expansion, Geometry, NodeSequence, SeriesError, TailRule, TailStatus,
};
