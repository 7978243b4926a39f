use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::prime::ensure_prime;
use super::rational::{valp_unchecked, Valuation};
use super::ring::CoeffRing;

use crate::error::{Error, Result};

/// A monomial as sorted `(variable, exponent)` pairs with nonzero exponents.
pub type Monomial = Vec<(u16, i32)>;

/// Sparse Laurent polynomial over Q in variables `z_0, z_1, ...` where only
/// `z_0` may carry a negative exponent. Callers map their distinguished
/// invertible variable to index 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MultiLaurent {
    terms: BTreeMap<Monomial, BigRational>,
}

/// The localized variable.
pub const INVERTED_VAR: u16 = 0;

fn mono_mul(a: &Monomial, b: &Monomial) -> Monomial {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].0.cmp(&b[j].0) {
            std::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            std::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let e = a[i].1 + b[j].1;
                if e != 0 {
                    out.push((a[i].0, e));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

impl MultiLaurent {
    pub fn constant(c: BigRational) -> Self {
        Self::monomial(c, Vec::new())
    }

    /// `c * m`; panics if `m` gives a negative exponent to a variable other
    /// than `z_0`.
    pub fn monomial(c: BigRational, mut m: Monomial) -> Self {
        m.retain(|&(_, e)| e != 0);
        m.sort_unstable();
        assert!(
            m.iter().all(|&(v, e)| e > 0 || v == INVERTED_VAR),
            "negative exponent on a non-localized variable"
        );
        let mut terms = BTreeMap::new();
        if !Zero::is_zero(&c) {
            terms.insert(m, c);
        }
        MultiLaurent { terms }
    }

    pub fn var(v: u16) -> Self {
        Self::monomial(<BigRational as One>::one(), vec![(v, 1)])
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigRational) {
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                if !Zero::is_zero(&c) {
                    e.insert(c);
                }
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if Zero::is_zero(e.get()) {
                    e.remove();
                }
            }
        }
    }

    /// Every exponent other than that of `z_0` is nonnegative.
    pub fn denominators_are_z0_powers(&self) -> bool {
        self.terms
            .keys()
            .all(|m| m.iter().all(|&(v, e)| e >= 0 || v == INVERTED_VAR))
    }

    /// Evaluates at `point[v]` for each variable; `z_0` must be nonzero if it
    /// appears with a negative exponent.
    pub fn eval(&self, point: &[BigRational]) -> Result<BigRational> {
        let mut acc = <BigRational as Zero>::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for &(v, e) in m {
                let x = point.get(v as usize).ok_or_else(|| {
                    Error::invalid(format!("no value supplied for variable {v}"))
                })?;
                if e < 0 {
                    if Zero::is_zero(x) {
                        return Err(Error::invalid("localized variable specialized to zero"));
                    }
                    t *= num_traits::pow(x.recip(), (-e) as usize);
                } else {
                    t *= num_traits::pow(x.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Reduction modulo p of a p-integral Laurent polynomial, coefficients in
    /// `[0, p)`; zero terms dropped.
    pub fn reduce_mod_p(&self, p: u64) -> Result<BTreeMap<Monomial, u64>> {
        let pb = BigInt::from(p);
        let mut out = BTreeMap::new();
        for (m, c) in &self.terms {
            let den = c.denom().mod_floor(&pb);
            if Zero::is_zero(&den) {
                return Err(Error::invalid("coefficient is not p-integral"));
            }
            let inv = den.extended_gcd(&pb).x;
            let r = (c.numer() * inv).mod_floor(&pb).to_u64().unwrap();
            if r != 0 {
                out.insert(m.clone(), r);
            }
        }
        Ok(out)
    }

    /// Most negative exponent of `z_0`, or 0.
    pub fn z0_denominator_power(&self) -> i32 {
        self.terms
            .keys()
            .filter_map(|m| m.iter().find(|(v, _)| *v == INVERTED_VAR).map(|&(_, e)| e))
            .filter(|&e| e < 0)
            .map(|e| -e)
            .max()
            .unwrap_or(0)
    }
}

/// Minimum p-adic valuation over the coefficients; infinite for zero.
pub fn laurent_min_valp(g: &MultiLaurent, p: u64) -> Result<Valuation> {
    ensure_prime(p)?;
    Ok(g.terms
        .values()
        .map(|c| valp_unchecked(c, p))
        .min()
        .unwrap_or(Valuation::Infinite))
}

impl MultiLaurent {
    pub fn zero() -> Self {
        MultiLaurent::default()
    }
    pub fn one() -> Self {
        Self::constant(<BigRational as One>::one())
    }
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    pub fn add(&self, other: &Self) -> Self {
        let (mut big, small) = if self.len() >= other.len() { (self.clone(), other) } else { (other.clone(), self) };
        for (m, c) in &small.terms {
            big.add_term(m.clone(), c.clone());
        }
        big
    }
    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }
    pub fn neg(&self) -> Self {
        MultiLaurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
    pub fn mul(&self, other: &Self) -> Self {
        let mut out = MultiLaurent::default();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                out.add_term(mono_mul(ma, mb), ca * cb);
            }
        }
        out
    }
    pub fn scale(&self, q: &BigRational) -> Self {
        if Zero::is_zero(q) {
            return MultiLaurent::default();
        }
        MultiLaurent { terms: self.terms.iter().map(|(m, c)| (m.clone(), c * q)).collect() }
    }
    pub fn try_inv(&self) -> Option<Self> {
        if self.terms.len() != 1 {
            return None;
        }
        let (m, c) = self.terms.iter().next().unwrap();
        if m.iter().any(|&(v, _)| v != INVERTED_VAR) {
            return None;
        }
        let inv: Monomial = m.iter().map(|&(v, e)| (v, -e)).collect();
        Some(MultiLaurent::monomial(c.recip(), inv))
    }
}

impl CoeffRing for MultiLaurent {
    fn zero() -> Self {
        MultiLaurent::zero()
    }
    fn one() -> Self {
        MultiLaurent::one()
    }
    fn from_rational(q: BigRational) -> Self {
        Self::constant(q)
    }
    fn is_zero(&self) -> bool {
        MultiLaurent::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        MultiLaurent::add(self, other)
    }
    fn sub(&self, other: &Self) -> Self {
        MultiLaurent::sub(self, other)
    }
    fn neg(&self) -> Self {
        MultiLaurent::neg(self)
    }
    fn mul(&self, other: &Self) -> Self {
        MultiLaurent::mul(self, other)
    }
    fn scale(&self, q: &BigRational) -> Self {
        MultiLaurent::scale(self, q)
    }
    fn try_inv(&self) -> Option<Self> {
        MultiLaurent::try_inv(self)
    }
    fn term_count(&self) -> usize {
        self.terms.len()
    }
    fn ring_name() -> &'static str {
        "Q[z][z0^-1]"
    }
}

impl fmt::Display for MultiLaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            write!(f, "{}", c.abs())?;
            for &(v, e) in m {
                if e == 1 {
                    write!(f, "*z{v}")?;
                } else {
                    write!(f, "*z{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}
