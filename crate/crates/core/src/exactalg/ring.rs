use num_rational::BigRational;
use num_traits::{One, Zero};

/// Commutative Q-algebra used as the coefficient ring of differential forms.
pub trait CoeffRing: Clone + PartialEq + std::fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_rational(q: BigRational) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn scale(&self, q: &BigRational) -> Self;
    /// Inverse when `self` is a unit of the ring.
    fn try_inv(&self) -> Option<Self>;
    /// Size measure used to monitor coefficient growth.
    fn term_count(&self) -> usize;
    /// Human-readable name, used in ring mismatch diagnostics.
    fn ring_name() -> &'static str;
}

impl CoeffRing for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn from_rational(q: BigRational) -> Self {
        q
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn scale(&self, q: &BigRational) -> Self {
        self * q
    }
    fn try_inv(&self) -> Option<Self> {
        (!Zero::is_zero(self)).then(|| self.recip())
    }
    fn term_count(&self) -> usize {
        usize::from(!Zero::is_zero(self))
    }
    fn ring_name() -> &'static str {
        "Q"
    }
}
