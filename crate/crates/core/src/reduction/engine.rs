use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::form::{CohomologyVector, DifferentialForm, ExactnessCertificate, MonomialForm};
use super::poly2::{int, Poly2};
use crate::curve::{basis_indices, CabParams};
use crate::error::{Error, Result};
use crate::exactalg::CoeffRing;

/// `f = y^a + tail(x, y)` over a coefficient ring, with `deg_y tail < a`
/// and `tail` supported on the C_ab support set.
#[derive(Debug, Clone, PartialEq)]
pub struct CurveEquation<R> {
    a: u32,
    b: u32,
    tail: Poly2<R>,
}

impl<R: CoeffRing> CurveEquation<R> {
    pub fn new(a: u32, b: u32, tail: Poly2<R>) -> Result<Self> {
        if a < 2 || b < 2 {
            return Err(Error::invalid(format!("need a, b >= 2, got ({a}, {b})")));
        }
        let support = crate::curve::support_set(a, b);
        if let Some((&(i, j), _)) = tail.terms().find(|(k, _)| !support.contains(k)) {
            return Err(Error::invalid(format!("term x^{i} y^{j} is outside the support set")));
        }
        if tail.coeff(b, 0).is_none() {
            return Err(Error::invalid("the x^b coefficient is zero"));
        }
        Ok(CurveEquation { a, b, tail })
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn tail(&self) -> &Poly2<R> {
        &self.tail
    }

    pub fn cb0(&self) -> &R {
        self.tail.coeff(self.b, 0).expect("checked in new")
    }

    /// The full polynomial `f`.
    pub fn f(&self) -> Poly2<R> {
        let mut f = self.tail.clone();
        f.add_term(0, self.a, R::one());
        f
    }

    pub fn f_x(&self) -> Poly2<R> {
        self.tail.deriv_x()
    }

    pub fn f_y(&self) -> Poly2<R> {
        self.f().deriv_y()
    }

    /// Weight `a i + b j`; the pole order at infinity of `x^i y^j dx` is
    /// `-(weight + a + 1)`, so a larger weight is a more negative order.
    pub fn weight(&self, i: u32, j: u32) -> u64 {
        self.a as u64 * i as u64 + self.b as u64 * j as u64
    }
}

impl CurveEquation<BigRational> {
    pub fn from_cab(curve: &CabParams) -> Self {
        let tail = Poly2::from_terms(
            curve.coeffs().iter().map(|(&k, c)| (k, BigRational::from_integer(c.clone()))),
        );
        CurveEquation { a: curve.a(), b: curve.b(), tail }
    }
}

/// Per-`j` data for the leading-term rewrite. With
/// `G = sum_{k=1}^{a} k/(j+k) f_k y^{j+k}` the identity
/// `x^l y^j df - d(x^l G) = (x^l A' + l x^{l-1} B') dx`
/// holds for `A' = y^j f_x - G_x`, `B' = -G`; `A`, `B` are the remainders of
/// `A'`, `B'` modulo `f` and `qa`, `qb` the quotients.
#[derive(Debug, Clone)]
struct StepData<R> {
    g: Poly2<R>,
    a_rem: Poly2<R>,
    b_rem: Poly2<R>,
    a_quo: Poly2<R>,
    b_quo: Poly2<R>,
}

/// Statistics of one reduction run.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReductionStats {
    pub steps: u64,
    /// Largest number of pending monomials at any time.
    pub max_pending: usize,
    /// Largest `term_count` of any coefficient seen while rewriting.
    pub max_coeff_terms: usize,
}

#[derive(Debug, Clone)]
pub struct Reduction<R> {
    pub vector: CohomologyVector<R>,
    pub certificate: Option<ExactnessCertificate<R>>,
    pub stats: ReductionStats,
}

/// The rewrite engine for one curve; construction precomputes the per-`j`
/// relations, after which reductions are read-only and may run in parallel.
#[derive(Debug, Clone)]
pub struct Reducer<R> {
    curve: CurveEquation<R>,
    steps: Vec<StepData<R>>,
}

type Cert<'a, R> = Option<&'a mut ExactnessCertificate<R>>;

impl<R: CoeffRing> Reducer<R> {
    pub fn new(curve: CurveEquation<R>) -> Self {
        let a = curve.a;
        let f = curve.f();
        let f_x = curve.f_x();
        let steps = (1..a)
            .map(|j| {
                let mut g = Poly2::zero();
                for (&(i, k), c) in f.terms() {
                    if k >= 1 {
                        g.add_term(i, j + k, c.scale(&BigRational::new(BigInt::from(k), BigInt::from(j + k))));
                    }
                }
                let mut a_raw = Poly2::zero();
                a_raw.add_scaled_shifted(&f_x, &R::one(), 0, j);
                let a_raw = a_raw.sub(&g.deriv_x());
                let b_raw = g.scale(&R::one().neg());
                let (a_quo, a_rem) = a_raw.divrem_monic_y(&curve.tail, a);
                let (b_quo, b_rem) = b_raw.divrem_monic_y(&curve.tail, a);
                StepData { g, a_rem, b_rem, a_quo, b_quo }
            })
            .collect();
        Reducer { curve, steps }
    }

    pub fn curve(&self) -> &CurveEquation<R> {
        &self.curve
    }

    fn normalize_poly(&self, p: &Poly2<R>) -> (Poly2<R>, Poly2<R>) {
        let (q, r) = p.divrem_monic_y(&self.curve.tail, self.curve.a);
        (r, q)
    }

    fn normalize_with(&self, form: &DifferentialForm<R>, cert: Cert<'_, R>) -> DifferentialForm<R> {
        let (dx, qx) = self.normalize_poly(&form.dx);
        let (dy, qy) = self.normalize_poly(&form.dy);
        if let Some(cert) = cert {
            cert.u = cert.u.add(&qx);
            cert.v = cert.v.add(&qy);
        }
        DifferentialForm::from_parts(dx, dy)
    }

    /// Replaces every `y^k`, `k >= a`, using the curve equation.
    pub fn normalize_y(&self, form: &DifferentialForm<R>) -> DifferentialForm<R> {
        self.normalize_with(form, None)
    }

    fn eliminate_dy_with(&self, form: &DifferentialForm<R>, cert: Cert<'_, R>) -> DifferentialForm<R> {
        let mut dx = form.dx.clone();
        let mut g = Poly2::zero();
        for (&(i, jm1), c) in form.dy.terms() {
            let j = jm1 + 1;
            let cj = c.scale(&BigRational::new(BigInt::from(1), BigInt::from(j)));
            if i > 0 {
                dx.add_term(i - 1, j, cj.scale(&int(i)).neg());
            }
            g.add_term(i, j, cj);
        }
        if let Some(cert) = cert {
            cert.g = cert.g.add(&g);
        }
        DifferentialForm::from_parts(dx, Poly2::zero())
    }

    /// Rewrites `x^i y^(j-1) dy` as `-(i/j) x^(i-1) y^j dx` modulo `d(x^i y^j)`.
    pub fn eliminate_dy(&self, form: &DifferentialForm<R>) -> DifferentialForm<R> {
        self.eliminate_dy_with(form, None)
    }

    fn leading_factor(&self, l: u32, j: u32) -> BigRational {
        let (a, b) = (self.curve.a as i64, self.curve.b as i64);
        BigRational::from_integer(BigInt::from(b)) + BigRational::new(BigInt::from(l as i64 * a), BigInt::from(a + j as i64))
    }

    /// Applies `c x^i y^j dx -> c x^i y^j dx - (c / lambda) (x^l A + l x^(l-1) B) dx`
    /// and hands every output monomial to `emit`. The monomial `x^i y^j`
    /// itself cancels and is not emitted.
    fn rewrite(
        &self,
        i: u32,
        j: u32,
        c: &R,
        cert: Cert<'_, R>,
        mut emit: impl FnMut(u32, u32, R) -> Result<()>,
    ) -> Result<()> {
        let b = self.curve.b;
        if i + 1 < b || j == 0 || j >= self.curve.a {
            return Err(Error::invalid(format!("x^{i} y^{j} dx is not reducible by the leading-term rule")));
        }
        let l = i + 1 - b;
        let data = &self.steps[(j - 1) as usize];
        let mut lambda = data.a_rem.coeff(b - 1, j).cloned().unwrap_or_else(R::zero);
        if l > 0 {
            if let Some(bc) = data.b_rem.coeff(b, j) {
                lambda = lambda.add(&bc.scale(&int(l)));
            }
        }
        let expected = self.curve.cb0().scale(&self.leading_factor(l, j));
        if lambda != expected {
            return Err(Error::Assertion(format!(
                "leading coefficient of the x^{i} y^{j} relation is {lambda:?}, expected {expected:?}"
            )));
        }
        let inv = lambda
            .try_inv()
            .ok_or_else(|| Error::Assertion(format!("leading coefficient of x^{i} y^{j} is not a unit")))?;
        let s = c.mul(&inv);
        let minus_s = s.neg();
        let w0 = self.curve.weight(i, j);
        let mut push = |ti: u32, tj: u32, v: R| -> Result<()> {
            if (ti, tj) == (i, j) {
                return Ok(());
            }
            if self.curve.weight(ti, tj) >= w0 {
                return Err(Error::Assertion(format!(
                    "rewriting x^{i} y^{j} dx produced x^{ti} y^{tj} dx of no larger order"
                )));
            }
            emit(ti, tj, v)
        };
        for (&(ti, tj), v) in data.a_rem.terms() {
            push(ti + l, tj, v.mul(&minus_s))?;
        }
        if l > 0 {
            let ls = minus_s.scale(&int(l));
            for (&(ti, tj), v) in data.b_rem.terms() {
                push(ti + l - 1, tj, v.mul(&ls))?;
            }
        }
        if let Some(cert) = cert {
            cert.h.add_term(l, j, s.clone());
            cert.g.add_scaled_shifted(&data.g, &minus_s, l, 0);
            cert.u.add_scaled_shifted(&data.a_quo, &minus_s, l, 0);
            if l > 0 {
                cert.u.add_scaled_shifted(&data.b_quo, &minus_s.scale(&int(l)), l - 1, 0);
            }
        }
        Ok(())
    }

    /// One leading-term rewrite of `x^i y^j dx` (`i >= b-1`, `1 <= j <= a-1`):
    /// a cohomologous form supported on monomials of strictly larger order.
    pub fn reduce_step(&self, i: u32, j: u32) -> Result<DifferentialForm<R>> {
        let mut out = DifferentialForm::zero();
        self.rewrite(i, j, &R::one(), None, |ti, tj, v| {
            out.add_term(MonomialForm::dx(ti, tj), v);
            Ok(())
        })?;
        Ok(out)
    }

    /// Coordinates of `[form]` in the basis `x^i y^j dx`, optionally with a
    /// certificate for `form - sum c_ij x^i y^j dx`.
    pub fn reduce_to_basis(&self, form: &DifferentialForm<R>, want_certificate: bool) -> Result<Reduction<R>> {
        let (a, b) = (self.curve.a, self.curve.b);
        let mut cert = want_certificate.then(ExactnessCertificate::default);
        let form = self.normalize_with(form, cert.as_mut());
        let form = self.eliminate_dy_with(&form, cert.as_mut());
        let form = self.normalize_with(&form, cert.as_mut());

        let mut vector = CohomologyVector::zero(a, b);
        // pending terms keyed by (weight, j); the largest weight has the most negative order
        let mut pending: BTreeMap<(u64, u32), R> = BTreeMap::new();
        let mut stats = ReductionStats::default();
        let mut exact_x = Poly2::zero();

        let place = |i: u32,
                         j: u32,
                         c: R,
                         pending: &mut BTreeMap<(u64, u32), R>,
                         vector: &mut CohomologyVector<R>,
                         exact_x: &mut Poly2<R>| {
            if j == 0 {
                exact_x.add_term(i + 1, 0, c.scale(&BigRational::new(BigInt::from(1), BigInt::from(i + 1))));
            } else if i + 1 < b {
                vector.add_at(i, j, &c);
            } else {
                use std::collections::btree_map::Entry;
                match pending.entry((self.curve.weight(i, j), j)) {
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
        };

        for (&(i, j), c) in form.dx.terms() {
            place(i, j, c.clone(), &mut pending, &mut vector, &mut exact_x);
        }
        while let Some(((w, j), c)) = pending.pop_last() {
            let i = ((w - b as u64 * j as u64) / a as u64) as u32;
            stats.steps += 1;
            stats.max_coeff_terms = stats.max_coeff_terms.max(c.term_count());
            let mut emitted = Vec::new();
            self.rewrite(i, j, &c, cert.as_mut(), |ti, tj, v| {
                emitted.push((ti, tj, v));
                Ok(())
            })?;
            for (ti, tj, v) in emitted {
                place(ti, tj, v, &mut pending, &mut vector, &mut exact_x);
            }
            stats.max_pending = stats.max_pending.max(pending.len());
        }
        if let Some(cert) = cert.as_mut() {
            cert.g = cert.g.add(&exact_x);
        }
        Ok(Reduction { vector, certificate: cert, stats })
    }

    /// Checks `form - sum c_ij x^i y^j dx = dg + h df + u f dx + v f dy`
    /// as an exact polynomial identity.
    pub fn check_certificate(
        &self,
        form: &DifferentialForm<R>,
        vector: &CohomologyVector<R>,
        cert: &ExactnessCertificate<R>,
    ) -> Result<bool> {
        let (a, b) = (self.curve.a, self.curve.b);
        if vector.dims() != (a, b) {
            return Err(Error::RingMismatch(format!(
                "vector lives on the ({}, {}) basis, curve is C_({a},{b})",
                vector.dims().0,
                vector.dims().1
            )));
        }
        let f = self.curve.f();
        let lhs = form.sub(&vector.to_form());
        let rhs_dx = cert.g.deriv_x().add(&cert.h.mul(&self.curve.f_x())).add(&cert.u.mul(&f));
        let rhs_dy = cert.g.deriv_y().add(&cert.h.mul(&self.curve.f_y())).add(&cert.v.mul(&f));
        Ok(lhs.dx == rhs_dx && lhs.dy == rhs_dy)
    }
}

impl Reducer<BigRational> {
    pub fn for_curve(curve: &CabParams) -> Self {
        Reducer::new(CurveEquation::from_cab(curve))
    }
}

pub fn normalize_y(form: &DifferentialForm<BigRational>, curve: &CabParams) -> DifferentialForm<BigRational> {
    Reducer::for_curve(curve).normalize_y(form)
}

pub fn eliminate_dy(form: &DifferentialForm<BigRational>, curve: &CabParams) -> DifferentialForm<BigRational> {
    Reducer::for_curve(curve).eliminate_dy(form)
}

pub fn reduce_step(i: u32, j: u32, curve: &CabParams) -> Result<DifferentialForm<BigRational>> {
    Reducer::for_curve(curve).reduce_step(i, j)
}

pub fn reduce_to_basis(
    form: &DifferentialForm<BigRational>,
    curve: &CabParams,
    want_certificate: bool,
) -> Result<(CohomologyVector<BigRational>, Option<ExactnessCertificate<BigRational>>)> {
    let r = Reducer::for_curve(curve).reduce_to_basis(form, want_certificate)?;
    Ok((r.vector, r.certificate))
}

pub fn check_certificate(
    form: &DifferentialForm<BigRational>,
    vector: &CohomologyVector<BigRational>,
    cert: &ExactnessCertificate<BigRational>,
    curve: &CabParams,
) -> Result<bool> {
    Reducer::for_curve(curve).check_certificate(form, vector, cert)
}

/// Basis slots in the order used by [`CohomologyVector`].
pub fn basis(curve: &CabParams) -> Vec<(u32, u32)> {
    basis_indices(curve.a(), curve.b())
}
