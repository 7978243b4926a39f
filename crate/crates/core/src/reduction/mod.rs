//! Reduction of polynomial 1-forms on a C_ab curve to the basis
//! `x^i y^j dx`, `0 <= i <= b-2`, `1 <= j <= a-1`.
//!
//! Pipeline: substitute `y^a` away, trade `dy` monomials for `dx` monomials
//! via `d(x^i y^j)`, drop the exact `x^i dx`, then repeatedly rewrite the
//! monomial of most negative order at infinity using `x^l y^j df = 0`.

mod engine;
mod form;
mod poly2;

pub use engine::{
    basis, check_certificate, eliminate_dy, normalize_y, reduce_step, reduce_to_basis, CurveEquation, Reducer,
    Reduction, ReductionStats,
};
pub use form::{CohomologyVector, DifferentialForm, ExactnessCertificate, Kind, MonomialForm};
pub use poly2::Poly2;
