//! Exact reduction of differential forms on C_ab curves.
//!
//! The crate reduces polynomial 1-forms on an affine curve
//! `y^a + f_{a-1}(x) y^{a-1} + ... + f_0(x) = 0` to coordinates in the basis
//! `{x^i y^j dx : 0 <= i <= b-2, 1 <= j <= a-1}` of first de Rham cohomology,
//! and computes p-adic valuations of the resulting coefficients. The
//! valuation module shows that the coefficients of the long reduction chains
//! `x^{(N+1)b+r-1} y^j dx -> C * x^{r-1} y^j dx` on superelliptic curves have
//! unbounded denominators, so the integral lattice cannot be finitely
//! generated.
//!
//! Everything is exact: rationals and integers are arbitrary precision and
//! there is no floating point anywhere.

pub mod curve;
pub mod error;
pub mod exactalg;
pub mod generic;
pub mod genus0;
pub mod reduction;
pub mod valuation;

pub use curve::{CabParams, SmoothnessCertificate, SuperellipticParams};
pub use error::{Error, Result};
pub use exactalg::{valp, BigInt, BigRational, BigUint, MultiLaurent, Valuation};
pub use reduction::{CohomologyVector, DifferentialForm, ExactnessCertificate, MonomialForm};
pub use valuation::{ProbeResult, ResidueChoice};
