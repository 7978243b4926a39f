use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use super::poly2::Poly2;
use crate::curve::basis_indices;
use crate::error::{Error, Result};
use crate::exactalg::CoeffRing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    Dx,
    Dy,
}

/// `x^i y^j dx` or `x^i y^j dy`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MonomialForm {
    pub i: u32,
    pub j: u32,
    pub kind: Kind,
}

impl MonomialForm {
    pub fn dx(i: u32, j: u32) -> Self {
        MonomialForm { i, j, kind: Kind::Dx }
    }

    pub fn dy(i: u32, j: u32) -> Self {
        MonomialForm { i, j, kind: Kind::Dy }
    }
}

impl fmt::Display for MonomialForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            Kind::Dx => "dx",
            Kind::Dy => "dy",
        };
        write!(f, "{} {} {}", self.i, self.j, kind)
    }
}

impl FromStr for MonomialForm {
    type Err = Error;

    /// Parses `"i j dx"` or `"i j dy"`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split_whitespace().collect();
        let [i, j, kind] = parts.as_slice() else {
            return Err(Error::invalid(format!("expected \"i j dx|dy\", got {s:?}")));
        };
        let i = i.parse().map_err(|_| Error::invalid(format!("bad x-exponent {i:?}")))?;
        let j = j.parse().map_err(|_| Error::invalid(format!("bad y-exponent {j:?}")))?;
        match *kind {
            "dx" => Ok(MonomialForm::dx(i, j)),
            "dy" => Ok(MonomialForm::dy(i, j)),
            other => Err(Error::invalid(format!("bad differential {other:?}"))),
        }
    }
}

/// A polynomial 1-form `P dx + Q dy`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferentialForm<R> {
    pub(crate) dx: Poly2<R>,
    pub(crate) dy: Poly2<R>,
}

impl<R: CoeffRing> Default for DifferentialForm<R> {
    fn default() -> Self {
        DifferentialForm { dx: Poly2::zero(), dy: Poly2::zero() }
    }
}

impl<R: CoeffRing> DifferentialForm<R> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_parts(dx: Poly2<R>, dy: Poly2<R>) -> Self {
        DifferentialForm { dx, dy }
    }

    pub fn monomial(c: R, m: MonomialForm) -> Self {
        let mut f = Self::zero();
        f.add_term(m, c);
        f
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (MonomialForm, R)>) -> Self {
        let mut f = Self::zero();
        for (m, c) in terms {
            f.add_term(m, c);
        }
        f
    }

    /// The exact form `dg`.
    pub fn exact(g: &Poly2<R>) -> Self {
        DifferentialForm { dx: g.deriv_x(), dy: g.deriv_y() }
    }

    pub fn add_term(&mut self, m: MonomialForm, c: R) {
        match m.kind {
            Kind::Dx => self.dx.add_term(m.i, m.j, c),
            Kind::Dy => self.dy.add_term(m.i, m.j, c),
        }
    }

    pub fn dx_part(&self) -> &Poly2<R> {
        &self.dx
    }

    pub fn dy_part(&self) -> &Poly2<R> {
        &self.dy
    }

    pub fn is_zero(&self) -> bool {
        self.dx.is_zero() && self.dy.is_zero()
    }

    pub fn terms(&self) -> impl Iterator<Item = (MonomialForm, &R)> {
        let dx = self.dx.terms().map(|(&(i, j), c)| (MonomialForm::dx(i, j), c));
        let dy = self.dy.terms().map(|(&(i, j), c)| (MonomialForm::dy(i, j), c));
        dx.chain(dy)
    }

    pub fn add(&self, other: &Self) -> Self {
        DifferentialForm { dx: self.dx.add(&other.dx), dy: self.dy.add(&other.dy) }
    }

    pub fn sub(&self, other: &Self) -> Self {
        DifferentialForm { dx: self.dx.sub(&other.dx), dy: self.dy.sub(&other.dy) }
    }

    pub fn scale(&self, c: &R) -> Self {
        DifferentialForm { dx: self.dx.scale(c), dy: self.dy.scale(c) }
    }
}

/// Coordinates in the basis `x^i y^j dx`, `0 <= i <= b-2`, `1 <= j <= a-1`,
/// stored in the order of [`basis_indices`].
#[derive(Debug, Clone, PartialEq)]
pub struct CohomologyVector<R> {
    a: u32,
    b: u32,
    coords: Vec<R>,
}

impl<R: CoeffRing> CohomologyVector<R> {
    pub fn zero(a: u32, b: u32) -> Self {
        let n = basis_indices(a, b).len();
        CohomologyVector { a, b, coords: vec![R::zero(); n] }
    }

    pub fn unit(a: u32, b: u32, i: u32, j: u32) -> Result<Self> {
        let mut v = Self::zero(a, b);
        let idx = v.index_of(i, j).ok_or_else(|| Error::invalid(format!("({i}, {j}) is not a basis index")))?;
        v.coords[idx] = R::one();
        Ok(v)
    }

    pub fn dims(&self) -> (u32, u32) {
        (self.a, self.b)
    }

    fn index_of(&self, i: u32, j: u32) -> Option<usize> {
        (j >= 1 && j < self.a && i + 1 < self.b).then(|| ((j - 1) * (self.b - 1) + i) as usize)
    }

    pub fn get(&self, i: u32, j: u32) -> Option<&R> {
        self.index_of(i, j).map(|k| &self.coords[k])
    }

    pub(crate) fn add_at(&mut self, i: u32, j: u32, c: &R) {
        let k = self.index_of(i, j).expect("basis index");
        self.coords[k] = self.coords[k].add(c);
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// `((i, j), coordinate)` in basis order.
    pub fn entries(&self) -> impl Iterator<Item = ((u32, u32), &R)> {
        basis_indices(self.a, self.b).into_iter().zip(self.coords.iter())
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dims(), other.dims());
        CohomologyVector {
            a: self.a,
            b: self.b,
            coords: self.coords.iter().zip(&other.coords).map(|(x, y)| x.add(y)).collect(),
        }
    }

    pub fn scale(&self, c: &R) -> Self {
        CohomologyVector { a: self.a, b: self.b, coords: self.coords.iter().map(|x| x.mul(c)).collect() }
    }

    /// The representative form `sum c_{ij} x^i y^j dx`.
    pub fn to_form(&self) -> DifferentialForm<R> {
        DifferentialForm::from_terms(self.entries().map(|((i, j), c)| (MonomialForm::dx(i, j), c.clone())))
    }

    pub fn map<S: CoeffRing>(&self, f: impl Fn(&R) -> Result<S>) -> Result<CohomologyVector<S>> {
        Ok(CohomologyVector { a: self.a, b: self.b, coords: self.coords.iter().map(f).collect::<Result<_>>()? })
    }
}

impl CohomologyVector<BigRational> {
    /// Coordinates as exact rational strings.
    pub fn to_strings(&self) -> Vec<((u32, u32), String)> {
        self.entries().map(|(k, c)| (k, c.to_string())).collect()
    }
}

/// Witness polynomials `(g, h, u, v)` for the identity
/// `before - after = dg + h df + u f dx + v f dy` in `R[x, y]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactnessCertificate<R> {
    pub g: Poly2<R>,
    pub h: Poly2<R>,
    pub u: Poly2<R>,
    pub v: Poly2<R>,
}

impl<R: CoeffRing> Default for ExactnessCertificate<R> {
    fn default() -> Self {
        ExactnessCertificate { g: Poly2::zero(), h: Poly2::zero(), u: Poly2::zero(), v: Poly2::zero() }
    }
}

impl<R: CoeffRing> ExactnessCertificate<R> {
    pub fn size(&self) -> usize {
        self.g.len() + self.h.len() + self.u.len() + self.v.len()
    }
}
