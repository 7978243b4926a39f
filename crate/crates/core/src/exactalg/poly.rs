use num_bigint::BigUint;

use super::field::Field;

/// Dense univariate polynomial, lowest coefficient first. The stored vector
/// never ends in a zero, so the zero polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UniPoly<E> {
    coeffs: Vec<E>,
}

impl<E> UniPoly<E> {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<E> {
        self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&E> {
        self.coeffs.last()
    }

    pub fn coeff(&self, i: usize) -> Option<&E> {
        self.coeffs.get(i)
    }
}

impl UniPoly<u64> {
    /// Builds a polynomial over a prime field from canonical residues,
    /// trimming trailing zeros.
    pub fn from_vec(mut coeffs: Vec<u64>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }
}

/// Arithmetic on `F[x]` for a field context `F`.
#[derive(Debug, Clone)]
pub struct PolyRing<F: Field> {
    field: F,
}

impl<F: Field> PolyRing<F> {
    pub fn new(field: F) -> Self {
        PolyRing { field }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn from_coeffs(&self, mut coeffs: Vec<F::Elem>) -> UniPoly<F::Elem> {
        while coeffs.last().is_some_and(|c| self.field.is_zero(c)) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn from_i64s(&self, coeffs: &[i64]) -> UniPoly<F::Elem> {
        self.from_coeffs(coeffs.iter().map(|&c| self.field.from_i64(c)).collect())
    }

    pub fn constant(&self, c: F::Elem) -> UniPoly<F::Elem> {
        self.from_coeffs(vec![c])
    }

    pub fn one(&self) -> UniPoly<F::Elem> {
        self.constant(self.field.one())
    }

    pub fn x(&self) -> UniPoly<F::Elem> {
        self.from_coeffs(vec![self.field.zero(), self.field.one()])
    }

    /// `c * x^k`
    pub fn monomial(&self, c: F::Elem, k: usize) -> UniPoly<F::Elem> {
        let mut v = vec![self.field.zero(); k];
        v.push(c);
        self.from_coeffs(v)
    }

    pub fn is_one(&self, f: &UniPoly<F::Elem>) -> bool {
        f.coeffs.len() == 1 && self.field.is_one(&f.coeffs[0])
    }

    pub fn add(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.field.zero();
        let v = (0..n)
            .map(|i| {
                let x = a.coeffs.get(i).unwrap_or(&zero);
                let y = b.coeffs.get(i).unwrap_or(&zero);
                self.field.add(x, y)
            })
            .collect();
        self.from_coeffs(v)
    }

    pub fn neg(&self, a: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        UniPoly { coeffs: a.coeffs.iter().map(|c| self.field.neg(c)).collect() }
    }

    pub fn sub(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        self.add(a, &self.neg(b))
    }

    pub fn scale(&self, a: &UniPoly<F::Elem>, c: &F::Elem) -> UniPoly<F::Elem> {
        self.from_coeffs(a.coeffs.iter().map(|x| self.field.mul(x, c)).collect())
    }

    pub fn mul(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        if a.is_zero() || b.is_zero() {
            return UniPoly::zero();
        }
        let mut v = vec![self.field.zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                v[i + j] = self.field.add(&v[i + j], &self.field.mul(x, y));
            }
        }
        self.from_coeffs(v)
    }

    pub fn pow(&self, a: &UniPoly<F::Elem>, e: u32) -> UniPoly<F::Elem> {
        (0..e).fold(self.one(), |acc, _| self.mul(&acc, a))
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn divrem(
        &self,
        a: &UniPoly<F::Elem>,
        b: &UniPoly<F::Elem>,
    ) -> (UniPoly<F::Elem>, UniPoly<F::Elem>) {
        let db = b.degree().expect("division by the zero polynomial");
        let lead_inv = self.field.inv(b.leading().unwrap()).unwrap();
        let mut rem = a.coeffs.clone();
        if rem.len() <= db {
            return (UniPoly::zero(), a.clone());
        }
        let mut quot = vec![self.field.zero(); rem.len() - db];
        for k in (db..rem.len()).rev() {
            let c = self.field.mul(&rem[k], &lead_inv);
            if self.field.is_zero(&c) {
                continue;
            }
            for (i, bi) in b.coeffs.iter().enumerate() {
                let idx = k - db + i;
                rem[idx] = self.field.sub(&rem[idx], &self.field.mul(&c, bi));
            }
            quot[k - db] = c;
        }
        rem.truncate(db);
        (self.from_coeffs(quot), self.from_coeffs(rem))
    }

    pub fn rem(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        self.divrem(a, b).1
    }

    pub fn div_exact(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let (q, r) = self.divrem(a, b);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self, a: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        match a.leading() {
            None => UniPoly::zero(),
            Some(l) => self.scale(a, &self.field.inv(l).unwrap()),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, a: &UniPoly<F::Elem>, b: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.rem(&x, &y);
            x = y;
            y = r;
        }
        self.monic(&x)
    }

    pub fn derivative(&self, a: &UniPoly<F::Elem>) -> UniPoly<F::Elem> {
        let v = a
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| self.field.mul(c, &self.field.from_i64(i as i64)))
            .collect();
        self.from_coeffs(v)
    }

    pub fn eval(&self, a: &UniPoly<F::Elem>, x: &F::Elem) -> F::Elem {
        a.coeffs
            .iter()
            .rev()
            .fold(self.field.zero(), |acc, c| self.field.add(&self.field.mul(&acc, x), c))
    }

    pub fn mulmod(
        &self,
        a: &UniPoly<F::Elem>,
        b: &UniPoly<F::Elem>,
        m: &UniPoly<F::Elem>,
    ) -> UniPoly<F::Elem> {
        self.rem(&self.mul(a, b), m)
    }

    /// `base^e mod m`.
    pub fn pow_mod(
        &self,
        base: &UniPoly<F::Elem>,
        e: &BigUint,
        m: &UniPoly<F::Elem>,
    ) -> UniPoly<F::Elem> {
        let base = self.rem(base, m);
        let mut acc = self.rem(&self.one(), m);
        for i in (0..e.bits()).rev() {
            acc = self.mulmod(&acc, &acc, m);
            if e.bit(i) {
                acc = self.mulmod(&acc, &base, m);
            }
        }
        acc
    }
}
