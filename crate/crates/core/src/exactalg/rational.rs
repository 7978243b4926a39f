use std::cmp::Ordering;
use std::fmt;
use std::ops::Add;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::prime::ensure_prime;
use crate::error::Result;

/// A p-adic valuation; `Infinite` is the valuation of zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Valuation {
    type Output = Valuation;

    fn add(self, rhs: Valuation) -> Valuation {
        match (self, rhs) {
            (Valuation::Finite(a), Valuation::Finite(b)) => Valuation::Finite(a + b),
            _ => Valuation::Infinite,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

/// `num/den` as a reduced big rational.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// p-adic valuation of a nonnegative integer. `p` is assumed prime and the
/// input nonzero; zero yields `u64::MAX`.
pub fn valp_uint(n: &BigUint, p: u64) -> u64 {
    if n.is_zero() {
        return u64::MAX;
    }
    // Strip the largest power of p that fits in a machine word first so that
    // huge valuations cost one long division per ~log_p(2^64) factors.
    let mut chunk = p;
    let mut chunk_exp = 1u64;
    while let Some(next) = chunk.checked_mul(p) {
        chunk = next;
        chunk_exp += 1;
    }
    let chunk_big = BigUint::from(chunk);
    let p_big = BigUint::from(p);
    let mut n = n.clone();
    let mut v = 0u64;
    loop {
        let (q, r) = n.div_rem(&chunk_big);
        if r.is_zero() {
            v += chunk_exp;
            n = q;
        } else {
            break;
        }
    }
    loop {
        let (q, r) = n.div_rem(&p_big);
        if r.is_zero() {
            v += 1;
            n = q;
        } else {
            break;
        }
    }
    v
}

/// p-adic valuation of an integer without a primality check.
pub fn valp_int(n: &BigInt, p: u64) -> Valuation {
    if n.is_zero() {
        Valuation::Infinite
    } else {
        Valuation::Finite(valp_uint(n.magnitude(), p) as i64)
    }
}

/// `ν_p(q) = ν_p(num) - ν_p(den)`; infinite for zero. Rejects composite `p`.
pub fn valp(q: &BigRational, p: u64) -> Result<Valuation> {
    ensure_prime(p)?;
    Ok(valp_unchecked(q, p))
}

pub(crate) fn valp_unchecked(q: &BigRational, p: u64) -> Valuation {
    if q.is_zero() {
        return Valuation::Infinite;
    }
    let num = valp_uint(q.numer().magnitude(), p) as i64;
    let den = if q.denom().is_one() {
        0
    } else {
        valp_uint(q.denom().magnitude(), p) as i64
    };
    Valuation::Finite(num - den)
}
