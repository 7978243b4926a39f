//! Benchmark fixtures shared by the criterion targets.

use cabcoh::reduction::{DifferentialForm, MonomialForm};
use cabcoh::exactalg::UniPoly;
use cabcoh::{BigInt, BigRational, CabParams};

/// `y^a + x^b + alpha` over p.
pub fn superelliptic(p: u64, a: u32, b: u32, alpha: i64) -> CabParams {
    CabParams::validate(p, a, b, [((b, 0), BigInt::from(1)), ((0, 0), BigInt::from(alpha))])
        .expect("benchmark curves are valid")
}

pub fn monomial(i: u32, j: u32) -> DifferentialForm<BigRational> {
    DifferentialForm::monomial(BigRational::from_integer(1.into()), MonomialForm::dx(i, j))
}

/// A dense degree-`n` polynomial over F_p with a fixed coefficient pattern.
pub fn dense_poly(p: u64, n: usize) -> UniPoly<u64> {
    UniPoly::from_vec((0..=n as u64).map(|k| (k * k * 7 + 3 * k + 1) % p).chain([1]).collect())
}
