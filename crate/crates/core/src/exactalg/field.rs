use std::fmt::Debug;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rand::Rng;

use super::factor::is_irreducible;
use super::poly::{PolyRing, UniPoly};
use super::prime::ensure_prime;
use crate::error::{Error, Result};

/// A field given by a context object; elements are plain values and every
/// operation goes through the context.
#[allow(clippy::wrong_self_convention)]
pub trait Field: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Eq + Ord + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;
    fn from_int(&self, n: &BigInt) -> Self::Elem;
    /// 0 for fields of characteristic zero.
    fn characteristic(&self) -> u64;

    fn from_i64(&self, n: i64) -> Self::Elem {
        self.from_int(&BigInt::from(n))
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|ib| self.mul(a, &ib))
    }

    fn pow(&self, a: &Self::Elem, e: &BigUint) -> Self::Elem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if e.bit(i) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }
}

pub trait FiniteField: Field {
    /// Number of elements.
    fn order(&self) -> BigUint;
    /// Degree over the prime field.
    fn degree(&self) -> u32;
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Self::Elem;
    /// The `index`-th element in a fixed enumeration, `index < order`.
    fn element_at(&self, index: u64) -> Self::Elem;

    /// Inverse Frobenius, `a^(q/p)`.
    fn pth_root(&self, a: &Self::Elem) -> Self::Elem {
        let q = self.order();
        let p = BigUint::from(self.characteristic());
        self.pow(a, &(q / p))
    }
}

/// The rational numbers.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Rationals;

impl Field for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
    fn from_int(&self, n: &BigInt) -> BigRational {
        BigRational::from_integer(n.clone())
    }
    fn characteristic(&self) -> u64 {
        0
    }
}

/// The prime field F_p with elements in `[0, p)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        ensure_prime(p)?;
        Ok(PrimeField { p })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn reduce(&self, n: i64) -> u64 {
        n.rem_euclid(self.p as i64) as u64
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + (self.p - *b) as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        if *a == 0 {
            return None;
        }
        let g = BigInt::from(*a).extended_gcd(&BigInt::from(self.p));
        debug_assert!(g.gcd.is_one());
        Some(g.x.mod_floor(&BigInt::from(self.p)).to_u64().unwrap())
    }
    fn from_int(&self, n: &BigInt) -> u64 {
        n.mod_floor(&BigInt::from(self.p)).to_u64().unwrap()
    }
    fn characteristic(&self) -> u64 {
        self.p
    }
}

impl FiniteField for PrimeField {
    fn order(&self) -> BigUint {
        BigUint::from(self.p)
    }
    fn degree(&self) -> u32 {
        1
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        rng.random_range(0..self.p)
    }
    fn element_at(&self, index: u64) -> u64 {
        index % self.p
    }
    fn pth_root(&self, a: &u64) -> u64 {
        *a
    }
}

/// `F_p[t]/(q)` for a monic irreducible `q`; elements are dense residue
/// vectors of length `deg q`, lowest coefficient first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtField {
    base: PrimeField,
    modulus: UniPoly<u64>,
}

impl ExtField {
    /// Builds the extension after checking that `modulus` is irreducible.
    pub fn new(p: u64, modulus: &UniPoly<u64>) -> Result<Self> {
        let base = PrimeField::new(p)?;
        let ring = PolyRing::new(base);
        if modulus.degree().unwrap_or(0) < 1 {
            return Err(Error::invalid("extension modulus must have positive degree"));
        }
        let monic = ring.monic(modulus);
        if !is_irreducible(&ring, &monic) {
            return Err(Error::invalid(format!("modulus {monic:?} is reducible over F_{p}")));
        }
        Ok(ExtField { base, modulus: monic })
    }

    pub(crate) fn new_unchecked(base: PrimeField, monic_modulus: UniPoly<u64>) -> Self {
        ExtField { base, modulus: monic_modulus }
    }

    /// F_p viewed as the degree-one extension `F_p[t]/(t)`.
    pub fn prime(p: u64) -> Result<Self> {
        let base = PrimeField::new(p)?;
        Ok(ExtField { base, modulus: UniPoly::from_vec(vec![0, 1]) })
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn modulus(&self) -> &UniPoly<u64> {
        &self.modulus
    }

    fn n(&self) -> usize {
        self.modulus.degree().unwrap()
    }

    /// The class of `t`.
    pub fn generator(&self) -> Vec<u64> {
        self.from_poly(&UniPoly::from_vec(vec![0, 1]))
    }

    pub fn from_poly(&self, f: &UniPoly<u64>) -> Vec<u64> {
        let ring = PolyRing::new(self.base);
        let r = ring.rem(f, &self.modulus);
        let mut v = r.coeffs().to_vec();
        v.resize(self.n(), 0);
        v
    }

    pub fn to_poly(&self, a: &[u64]) -> UniPoly<u64> {
        UniPoly::from_vec(a.to_vec())
    }

    pub fn embed(&self, c: u64) -> Vec<u64> {
        let mut v = vec![0; self.n()];
        v[0] = c % self.base.p();
        v
    }
}

impl Field for ExtField {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.n()]
    }
    fn one(&self) -> Vec<u64> {
        self.embed(1)
    }
    fn is_zero(&self, a: &Vec<u64>) -> bool {
        a.iter().all(|&c| c == 0)
    }
    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.add(x, y)).collect()
    }
    fn sub(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(x, y)| self.base.sub(x, y)).collect()
    }
    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|x| self.base.neg(x)).collect()
    }
    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let n = self.n();
        let p = self.base.p() as u128;
        let mut prod = vec![0u128; 2 * n - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u128 * y as u128) % p;
            }
        }
        let m = self.modulus.coeffs();
        for k in (n..prod.len()).rev() {
            let c = prod[k];
            if c == 0 {
                continue;
            }
            prod[k] = 0;
            // t^k = t^(k-n) * t^n and t^n = -(m_0 + ... + m_{n-1} t^(n-1))
            for (i, &mi) in m[..n].iter().enumerate() {
                let idx = k - n + i;
                prod[idx] = (prod[idx] + (p - mi as u128) * c) % p;
            }
        }
        prod.truncate(n);
        prod.into_iter().map(|c| c as u64).collect()
    }
    fn inv(&self, a: &Vec<u64>) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let e = self.order() - BigUint::from(2u32);
        Some(self.pow(a, &e))
    }
    fn from_int(&self, n: &BigInt) -> Vec<u64> {
        self.embed(self.base.from_int(n))
    }
    fn characteristic(&self) -> u64 {
        self.base.p()
    }
}

impl FiniteField for ExtField {
    fn order(&self) -> BigUint {
        num_traits::pow(BigUint::from(self.base.p()), self.n())
    }
    fn degree(&self) -> u32 {
        self.n() as u32
    }
    fn random_elem<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<u64> {
        (0..self.n()).map(|_| self.base.random_elem(rng)).collect()
    }
    fn element_at(&self, mut index: u64) -> Vec<u64> {
        let p = self.base.p();
        (0..self.n())
            .map(|_| {
                let c = index % p;
                index /= p;
                c
            })
            .collect()
    }
}
