use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::exactalg::CoeffRing;

/// Sparse polynomial in `x, y` keyed by `(i, j)` for `x^i y^j`; zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct Poly2<R> {
    terms: BTreeMap<(u32, u32), R>,
}

impl<R: CoeffRing> Default for Poly2<R> {
    fn default() -> Self {
        Poly2 { terms: BTreeMap::new() }
    }
}

impl<R: CoeffRing> Poly2<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(c: R, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(i, j, c);
        p
    }

    pub fn from_terms(terms: impl IntoIterator<Item = ((u32, u32), R)>) -> Self {
        let mut p = Self::zero();
        for ((i, j), c) in terms {
            p.add_term(i, j, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &R)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Option<&R> {
        self.terms.get(&(i, j))
    }

    pub fn remove(&mut self, i: u32, j: u32) -> Option<R> {
        self.terms.remove(&(i, j))
    }

    pub fn add_term(&mut self, i: u32, j: u32, c: R) {
        use std::collections::btree_map::Entry;
        if c.is_zero() {
            return;
        }
        match self.terms.entry((i, j)) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                let s = e.get().add(&c);
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    /// `self += c * x^di * y^dj * other`
    pub fn add_scaled_shifted(&mut self, other: &Self, c: &R, di: u32, dj: u32) {
        for (&(i, j), v) in &other.terms {
            self.add_term(i + di, j + dj, v.mul(c));
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_shifted(other, &R::one(), 0, 0);
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled_shifted(other, &R::one().neg(), 0, 0);
        out
    }

    pub fn scale(&self, c: &R) -> Self {
        let mut out = Self::zero();
        out.add_scaled_shifted(self, c, 0, 0);
        out
    }

    pub fn scale_rational(&self, q: &BigRational) -> Self {
        self.scale(&R::from_rational(q.clone()))
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            out.add_scaled_shifted(other, c, i, j);
        }
        out
    }

    pub fn deriv_x(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(i - 1, j, c.scale(&int(i)));
            }
        }
        out
    }

    pub fn deriv_y(&self) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(i, j - 1, c.scale(&int(j)));
            }
        }
        out
    }

    pub fn max_term_count(&self) -> usize {
        self.terms.values().map(|c| c.term_count()).max().unwrap_or(0)
    }

    /// Division by a polynomial that is monic of degree `a` in `y`:
    /// returns `(q, r)` with `self = q f + r` and `deg_y r < a`.
    pub fn divrem_monic_y(&self, f_tail: &Self, a: u32) -> (Self, Self) {
        // f = y^a + f_tail; work keyed by (j, i) so the highest y-power pops first.
        let mut work: BTreeMap<(u32, u32), R> = self.terms.iter().map(|(&(i, j), c)| ((j, i), c.clone())).collect();
        let mut quot = Self::zero();
        let mut rem = Self::zero();
        while let Some(((j, i), c)) = work.pop_last() {
            if j < a {
                rem.add_term(i, j, c);
                for ((j, i), c) in std::mem::take(&mut work) {
                    rem.add_term(i, j, c);
                }
                break;
            }
            let (qi, qj) = (i, j - a);
            for (&(ti, tj), tc) in &f_tail.terms {
                let key = (qj + tj, qi + ti);
                let delta = tc.mul(&c).neg();
                let merged = match work.remove(&key) {
                    Some(old) => old.add(&delta),
                    None => delta,
                };
                if !merged.is_zero() {
                    work.insert(key, merged);
                }
            }
            quot.add_term(qi, qj, c);
        }
        (quot, rem)
    }
}

pub(crate) fn int(n: u32) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}
