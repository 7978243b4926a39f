//! C_ab curves `y^a + sum_{j=1}^{a-1} f_j(x) y^j + f_0(x) = 0` with integral
//! lifts, their smoothness over F_p, and pole orders at infinity.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{
    factor, find_roots, is_prime, random_irreducible, resultant_y, squarefree_fp, BiPoly, ExtField,
    Field, PolyRing, PrimeField, UniPoly,
};

/// Exponent pairs allowed in `f - y^a`: `a i + b j < a b`, plus `(b, 0)`.
pub fn support_set(a: u32, b: u32) -> Vec<(u32, u32)> {
    let mut s: Vec<(u32, u32)> = (0..a)
        .flat_map(|j| (0..b).map(move |i| (i, j)))
        .filter(|&(i, j)| a * i + b * j < a * b)
        .collect();
    s.push((b, 0));
    s.sort_by_key(|&(i, j)| (j, i));
    s
}

/// Index set `{(i, j) : 0 <= i <= b-2, 1 <= j <= a-1}` of the cohomology
/// basis `x^i y^j dx`, ordered by `j` then `i`.
pub fn basis_indices(a: u32, b: u32) -> Vec<(u32, u32)> {
    (1..a).flat_map(|j| (0..b.saturating_sub(1)).map(move |i| (i, j))).collect()
}

/// Order at the point at infinity of `x^i y^j dx`.
pub fn ord_infinity(a: u32, b: u32, i: u32, j: u32) -> i64 {
    -((a as i64) * (i as i64 + 1) + (j as i64) * (b as i64) + 1)
}

/// Genus `(a-1)(b-1)/2` of the smooth compactification.
pub fn genus(a: u32, b: u32) -> Result<u32> {
    let g = a.gcd(&b);
    if g != 1 {
        return Err(Error::NotCoprime { a, b, gcd: g });
    }
    Ok((a.saturating_sub(1)) * (b.saturating_sub(1)) / 2)
}

/// A validated C_ab curve datum with integral lifts `c_{ij}` of its
/// coefficients. The coefficient of `y^a` is always 1 and is not stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CabParams {
    p: u64,
    a: u32,
    b: u32,
    coeffs: BTreeMap<(u32, u32), BigInt>,
}

impl CabParams {
    /// Checks every constraint and reports all violations at once.
    pub fn validate<I>(p: u64, a: u32, b: u32, coeffs: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), BigInt)>,
    {
        let mut errors = Vec::new();
        if !is_prime(p) {
            errors.push(format!("p = {p} is not prime"));
        }
        if a < 2 || b < 2 {
            errors.push(format!("need a >= 2 and b >= 2, got a = {a}, b = {b}"));
        }
        let g = a.gcd(&b);
        if g != 1 {
            errors.push(format!("gcd(a, b) = {g}"));
        }
        let ab = a as u64 * b as u64;
        if p != 0 && ab.is_multiple_of(p) {
            errors.push(format!("p = {p} divides ab = {ab}"));
        }
        let support = support_set(a, b);
        let mut map = BTreeMap::new();
        for ((i, j), c) in coeffs {
            if !support.contains(&(i, j)) {
                errors.push(format!("exponent pair ({i}, {j}) is outside the support set"));
                continue;
            }
            if c.is_zero() {
                continue;
            }
            let slot: &mut BigInt = map.entry((i, j)).or_default();
            *slot += c;
        }
        map.retain(|_, c: &mut BigInt| !c.is_zero());
        if p >= 2 {
            let cb0 = map.get(&(b, 0)).cloned().unwrap_or_default();
            if cb0.mod_floor(&BigInt::from(p)).is_zero() {
                errors.push(format!("leading coefficient c_(b,0) = {cb0} vanishes mod {p}"));
            }
        }
        if errors.is_empty() {
            Ok(CabParams { p, a, b, coeffs: map })
        } else {
            Err(Error::InvalidCurve(errors))
        }
    }

    /// Validates coefficients given mod p, lifting each to `[0, p-1]`.
    pub fn from_residues<I>(p: u64, a: u32, b: u32, residues: I) -> Result<Self>
    where
        I: IntoIterator<Item = ((u32, u32), i64)>,
    {
        let lifted: Vec<_> = residues
            .into_iter()
            .map(|(k, c)| (k, BigInt::from(c.rem_euclid(p.max(1) as i64))))
            .collect();
        Self::validate(p, a, b, lifted)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    pub fn coeffs(&self) -> &BTreeMap<(u32, u32), BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, i: u32, j: u32) -> BigInt {
        self.coeffs.get(&(i, j)).cloned().unwrap_or_default()
    }

    /// All `f_j` with `1 <= j <= a-1` vanish.
    pub fn is_superelliptic(&self) -> bool {
        self.coeffs.keys().all(|&(_, j)| j == 0)
    }

    pub fn genus(&self) -> u32 {
        genus(self.a, self.b).expect("validated curves have coprime exponents")
    }

    /// The curve equation reduced mod p, including the `y^a` term.
    pub fn reduction_mod_p(&self) -> BiPoly<u64> {
        let ring = PolyRing::new(PrimeField::new(self.p).expect("validated prime"));
        let field = *ring.field();
        let mut terms: Vec<(usize, usize, u64)> = self
            .coeffs
            .iter()
            .map(|(&(i, j), c)| (i as usize, j as usize, field.from_int(c)))
            .collect();
        terms.push((0, self.a as usize, 1));
        BiPoly::from_terms(&ring, &terms)
    }

    /// `f_0` reduced mod p.
    pub fn f0_mod_p(&self) -> UniPoly<u64> {
        let f = self.reduction_mod_p();
        f.ycoeffs()[0].clone()
    }

    pub fn to_spec(&self) -> CurveSpec {
        CurveSpec {
            p: self.p,
            a: self.a,
            b: self.b,
            coeffs: self
                .coeffs
                .iter()
                .map(|(&(i, j), c)| CoeffEntry { i, j, c: c.to_i64().expect("lift fits in i64") })
                .collect(),
        }
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self> {
        Self::validate(
            spec.p,
            spec.a,
            spec.b,
            spec.coeffs.iter().map(|e| ((e.i, e.j), BigInt::from(e.c))),
        )
    }
}

/// `y^a + x^b + alpha = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuperellipticParams {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub alpha: BigInt,
}

impl SuperellipticParams {
    pub fn new(p: u64, a: u32, b: u32, alpha: impl Into<BigInt>) -> Self {
        SuperellipticParams { p, a, b, alpha: alpha.into() }
    }

    /// Validates the curve; additionally requires `alpha` to be a unit mod p.
    pub fn to_cab(&self) -> Result<CabParams> {
        let curve = CabParams::validate(
            self.p,
            self.a,
            self.b,
            [((0, 0), self.alpha.clone()), ((self.b, 0), BigInt::from(1))],
        )?;
        if self.alpha.mod_floor(&BigInt::from(self.p)).is_zero() {
            return Err(Error::InvalidCurve(vec![format!(
                "alpha = {} vanishes mod {}",
                self.alpha, self.p
            )]));
        }
        Ok(curve)
    }
}

/// On-disk curve description. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub coeffs: Vec<CoeffEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoeffEntry {
    pub i: u32,
    pub j: u32,
    pub c: i64,
}

impl CurveSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed curve spec: {e}")))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Smooth,
    Singular,
}

/// A point `(x, y)` over `F_p[t]/(q)` where `f`, `f_x` and `f_y` all vanish.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularWitness {
    pub field: ExtField,
    pub x: Vec<u64>,
    pub y: Vec<u64>,
}

impl SingularWitness {
    /// Re-evaluates `f`, `f_x`, `f_y` at the witness.
    pub fn verify(&self, curve: &CabParams) -> bool {
        let base = PolyRing::new(*self.field.base());
        let f = curve.reduction_mod_p();
        let ring = PolyRing::new(self.field.clone());
        [f.clone(), f.deriv_x(&base), f.deriv_y(&base)].iter().all(|g| {
            let gy = g.eval_x(|c| self.field.embed(*c), &ring, &self.x);
            self.field.is_zero(&ring.eval(&gy, &self.y))
        })
    }

    /// Coordinates as F_p integers when the witness field is F_p itself.
    pub fn rational_coordinates(&self) -> Option<(u64, u64)> {
        (self.field.modulus().degree() == Some(1)).then(|| (self.x[0], self.y[0]))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SmoothnessEvidence {
    /// Superelliptic fast path: `f_0` has no repeated roots.
    SquarefreeF0,
    /// `gcd(Res_y(f, f_y), Res_y(f, f_x))` is constant.
    ResultantGcdConstant { res_fy: UniPoly<u64>, res_fx: UniPoly<u64> },
    /// Every irreducible factor of the resultant gcd was checked and shown
    /// to carry no common zero.
    ClearedFactors { gcd: UniPoly<u64>, factors: Vec<UniPoly<u64>> },
    Witness(SingularWitness),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessCertificate {
    pub verdict: Verdict,
    pub evidence: SmoothnessEvidence,
}

impl SmoothnessCertificate {
    pub fn is_smooth(&self) -> bool {
        self.verdict == Verdict::Smooth
    }

    pub fn witness(&self) -> Option<&SingularWitness> {
        match &self.evidence {
            SmoothnessEvidence::Witness(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SmoothnessOptions {
    /// Try the superelliptic squarefree test before elimination.
    pub fast_path: bool,
    /// Seed for randomized splitting over finite fields.
    pub seed: u64,
}

impl Default for SmoothnessOptions {
    fn default() -> Self {
        SmoothnessOptions { fast_path: true, seed: 0 }
    }
}

/// Jacobian criterion for the special fiber over the algebraic closure of F_p.
pub fn is_smooth(curve: &CabParams) -> Result<SmoothnessCertificate> {
    is_smooth_with(curve, SmoothnessOptions::default())
}

pub fn is_smooth_with(curve: &CabParams, opts: SmoothnessOptions) -> Result<SmoothnessCertificate> {
    let p = curve.p();
    let fp = PrimeField::new(p)?;
    let ring = PolyRing::new(fp);
    if opts.fast_path && curve.is_superelliptic() && squarefree_fp(&curve.f0_mod_p(), p)? {
        return Ok(SmoothnessCertificate { verdict: Verdict::Smooth, evidence: SmoothnessEvidence::SquarefreeF0 });
    }

    let f = curve.reduction_mod_p();
    let fx = f.deriv_x(&ring);
    let fy = f.deriv_y(&ring);
    let res_fy = resultant_y(&ring, &f, &fy)?;
    let res_fx = resultant_y(&ring, &f, &fx)?;
    if res_fy.is_zero() {
        // f is monic in y with p not dividing a, and C_ab curves are
        // irreducible, so f is separable in y.
        return Err(Error::Assertion("Res_y(f, f_y) vanishes identically".into()));
    }
    let common = ring.gcd(&res_fy, &res_fx);
    if common.degree() == Some(0) {
        return Ok(SmoothnessCertificate {
            verdict: Verdict::Smooth,
            evidence: SmoothnessEvidence::ResultantGcdConstant { res_fy, res_fx },
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut cleared = Vec::new();
    for (q, _) in factor(&ring, &common, &mut rng)? {
        if let Some(w) = singular_over_factor(&[&f, &fx, &fy], fp, &q, &mut rng)? {
            return Ok(SmoothnessCertificate { verdict: Verdict::Singular, evidence: SmoothnessEvidence::Witness(w) });
        }
        cleared.push(q);
    }
    Ok(SmoothnessCertificate {
        verdict: Verdict::Smooth,
        evidence: SmoothnessEvidence::ClearedFactors { gcd: common, factors: cleared },
    })
}

/// gcd in `y` of the specializations of `polys` at `x = xi`.
fn common_y_gcd(polys: &[&BiPoly<u64>], field: &ExtField, xi: &[u64]) -> UniPoly<Vec<u64>> {
    let ring = PolyRing::new(field.clone());
    let xi = xi.to_vec();
    polys.iter().fold(UniPoly::zero(), |acc, g| {
        let gy = g.eval_x(|c| field.embed(*c), &ring, &xi);
        ring.gcd(&acc, &gy)
    })
}

/// Looks for a common zero of `polys` with x-coordinate a root of the
/// irreducible `q`.
fn singular_over_factor(
    polys: &[&BiPoly<u64>],
    fp: PrimeField,
    q: &UniPoly<u64>,
    rng: &mut ChaCha8Rng,
) -> Result<Option<SingularWitness>> {
    let n = q.degree().unwrap();
    let field = ExtField::new_unchecked(fp, q.clone());
    let xi = field.generator();
    let h = common_y_gcd(polys, &field, &xi);
    if h.degree().unwrap_or(0) == 0 {
        return Ok(None);
    }
    let ring = PolyRing::new(field.clone());
    let factors = factor(&ring, &h, rng)?;
    let e = factors.iter().map(|(g, _)| g.degree().unwrap()).min().unwrap();
    if e == 1 {
        let (lin, _) = factors.iter().find(|(g, _)| g.degree() == Some(1)).unwrap();
        let y = field.neg(&lin.coeffs()[0]);
        return Ok(Some(SingularWitness { field, x: xi, y }));
    }
    // The y-coordinate lives in a degree-e extension of L; move to a single
    // field F_p[t]/(Q) of degree n*e containing both coordinates.
    let base_ring = PolyRing::new(fp);
    let big_mod = random_irreducible(&base_ring, n * e, rng);
    let big = ExtField::new_unchecked(fp, big_mod);
    let big_ring = PolyRing::new(big.clone());
    let q_big = big_ring.from_coeffs(q.coeffs().iter().map(|c| big.embed(*c)).collect());
    let xi_big = find_roots(&big_ring, &q_big, rng)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Assertion("irreducible factor does not split in its splitting field".into()))?;
    let h_big = common_y_gcd(polys, &big, &xi_big);
    let y = find_roots(&big_ring, &h_big, rng)?
        .into_iter()
        .next()
        .ok_or_else(|| Error::Assertion("common factor has no root in the extension".into()))?;
    Ok(Some(SingularWitness { field: big, x: xi_big, y }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn curve(p: u64, a: u32, b: u32, cs: &[((u32, u32), i64)]) -> Result<CabParams> {
        CabParams::validate(p, a, b, cs.iter().map(|&(k, c)| (k, BigInt::from(c))))
    }

    #[test]
    fn validation_examples() {
        assert!(curve(5, 2, 3, &[((0, 0), 1), ((3, 0), 1)]).is_ok());
        let err = curve(5, 2, 4, &[((0, 0), 1), ((4, 0), 1)]).unwrap_err();
        assert!(matches!(&err, Error::InvalidCurve(v) if v.iter().any(|m| m.contains("gcd(a, b) = 2"))));
        let err = curve(3, 2, 3, &[((0, 0), 1), ((3, 0), 1)]).unwrap_err();
        assert!(matches!(&err, Error::InvalidCurve(v) if v.iter().any(|m| m.contains("divides ab"))));
    }

    #[test]
    fn validation_collects_every_violation() {
        let err = curve(4, 2, 3, &[((2, 1), 1), ((3, 0), 8)]).unwrap_err();
        let Error::InvalidCurve(v) = err else { panic!() };
        assert!(v.iter().any(|m| m.contains("not prime")));
        assert!(v.iter().any(|m| m.contains("(2, 1)")));
        let err = curve(5, 2, 3, &[((3, 0), 10)]).unwrap_err();
        assert!(matches!(err, Error::InvalidCurve(v) if v[0].contains("vanishes mod 5")));
    }

    #[test]
    fn default_lift_is_nonnegative() {
        let c = CabParams::from_residues(5, 2, 3, [((0, 0), -1), ((3, 0), 1)]).unwrap();
        assert_eq!(c.coeff(0, 0), BigInt::from(4));
    }

    #[test]
    fn support_set_of_2_3() {
        assert_eq!(support_set(2, 3), vec![(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (1, 1)]);
        assert_eq!(support_set(3, 4).len(), 10);
    }

    #[test]
    fn ord_infinity_examples() {
        assert_eq!(ord_infinity(2, 3, 0, 1), -6);
        assert_eq!(ord_infinity(2, 3, 0, 0), -3);
        assert_eq!(ord_infinity(2, 3, 1, 1), -8);
    }

    #[test]
    fn genus_examples() {
        assert_eq!(genus(2, 3).unwrap(), 1);
        assert_eq!(genus(2, 5).unwrap(), 2);
        assert_eq!(genus(3, 4).unwrap(), 3);
        assert_eq!(genus(2, 4), Err(Error::NotCoprime { a: 2, b: 4, gcd: 2 }));
    }

    #[test]
    fn smoothness_examples() {
        let c = curve(5, 2, 3, &[((0, 0), 1), ((3, 0), 1)]).unwrap();
        assert!(is_smooth(&c).unwrap().is_smooth());
        let c = curve(5, 2, 3, &[((3, 0), 1)]).unwrap();
        let cert = is_smooth(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        let w = cert.witness().unwrap();
        assert_eq!(w.rational_coordinates(), Some((0, 0)));
        assert!(w.verify(&c));
        let c = curve(7, 2, 3, &[((1, 0), 1), ((3, 0), 1)]).unwrap();
        assert!(is_smooth(&c).unwrap().is_smooth());
    }

    #[test]
    fn singular_point_off_the_prime_field() {
        // y^2 + (x^2 + 1)^2 (x + 1) over F_7 = y^2 + x^5 + ... is singular at
        // the roots of x^2 + 1, which live in F_49.
        let ring = PolyRing::new(PrimeField::new(7).unwrap());
        let f0 = ring.mul(&ring.pow(&ring.from_i64s(&[1, 0, 1]), 2), &ring.from_i64s(&[1, 1]));
        let cs: Vec<_> = f0.coeffs().iter().enumerate().map(|(i, &c)| ((i as u32, 0), BigInt::from(c))).collect();
        let c = CabParams::validate(7, 2, 5, cs).unwrap();
        let cert = is_smooth(&c).unwrap();
        assert_eq!(cert.verdict, Verdict::Singular);
        let w = cert.witness().unwrap();
        assert_eq!(w.field.modulus().degree(), Some(2));
        assert!(w.verify(&c));
    }

    #[test]
    fn c34_witnesses_reverify() {
        let mut seen = 0;
        for c00 in 0..5i64 {
            for c10 in 0..5i64 {
                for c01 in 0..5i64 {
                    let c = curve(5, 3, 4, &[((0, 0), c00), ((1, 0), c10), ((0, 1), c01), ((4, 0), 1)]).unwrap();
                    let cert = is_smooth(&c).unwrap();
                    if let Some(w) = cert.witness() {
                        assert!(w.verify(&c));
                        seen += 1;
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn y_coordinate_outside_the_x_field() {
        // y^2 + 1 at x = 0 over F_7: the common root lies in F_49 only.
        let fp = PrimeField::new(7).unwrap();
        let ring = PolyRing::new(fp);
        let g = BiPoly::from_terms(&ring, &[(0, 2, 1), (0, 0, 1)]);
        let q = UniPoly::from_vec(vec![0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let w = singular_over_factor(&[&g], fp, &q, &mut rng).unwrap().unwrap();
        assert_eq!(w.field.modulus().degree(), Some(2));
        let big_ring = PolyRing::new(w.field.clone());
        let gy = g.eval_x(|c| w.field.embed(*c), &big_ring, &w.x);
        assert!(w.field.is_zero(&big_ring.eval(&gy, &w.y)));
        assert!(w.field.is_zero(&w.x));
    }

    #[test]
    fn curve_spec_json() {
        let text = r#"{"p":5,"a":2,"b":3,"coeffs":[{"i":0,"j":0,"c":1},{"i":3,"j":0,"c":1}]}"#;
        let spec = CurveSpec::from_json(text).unwrap();
        let c = CabParams::from_spec(&spec).unwrap();
        assert_eq!(c.to_spec(), spec);
        assert!(CurveSpec::from_json(r#"{"p":5,"a":2,"b":3,"coeffs":[],"extra":1}"#).is_err());
    }

    /// Brute-force singular points with coordinates in F_p.
    fn brute_singular_fp(c: &CabParams) -> bool {
        let p = c.p();
        let fp = PrimeField::new(p).unwrap();
        let ring = PolyRing::new(fp);
        let f = c.reduction_mod_p();
        let polys = [f.clone(), f.deriv_x(&ring), f.deriv_y(&ring)];
        (0..p).any(|x| {
            (0..p).any(|y| {
                polys.iter().all(|g| {
                    let gy = g.eval_x(|v| *v, &ring, &x);
                    ring.eval(&gy, &y) == 0
                })
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]
        #[test]
        fn superelliptic_fast_path_agrees(cs in proptest::collection::vec(0i64..7, 5), pi in 0usize..2) {
            let p = [7u64, 11][pi];
            let mut coeffs: Vec<_> = cs.iter().enumerate().map(|(i, &c)| ((i as u32, 0), c)).collect();
            coeffs.push(((5, 0), 1));
            let c = CabParams::from_residues(p, 2, 5, coeffs).unwrap();
            let fast = is_smooth(&c).unwrap();
            let full = is_smooth_with(&c, SmoothnessOptions { fast_path: false, seed: 1 }).unwrap();
            prop_assert_eq!(fast.verdict, full.verdict);
            prop_assert_eq!(fast.is_smooth(), squarefree_fp(&c.f0_mod_p(), p).unwrap());
            if let Some(w) = full.witness() {
                prop_assert!(w.verify(&c));
            }
            if brute_singular_fp(&c) {
                prop_assert!(!full.is_smooth());
            }
        }

        #[test]
        fn general_cab_witnesses_verify(cs in proptest::collection::vec(0i64..5, 5)) {
            // C_34 over F_5 with support (0,0),(1,0),(2,0),(0,1),(1,1),(0,2)... subset
            let keys = [(0u32, 0u32), (1, 0), (2, 0), (0, 1), (1, 1)];
            let mut coeffs: Vec<_> = keys.iter().zip(&cs).map(|(&k, &c)| (k, c)).collect();
            coeffs.push(((4, 0), 1));
            let c = CabParams::from_residues(5, 3, 4, coeffs).unwrap();
            let cert = is_smooth(&c).unwrap();
            if let Some(w) = cert.witness() {
                prop_assert!(w.verify(&c));
            }
            if brute_singular_fp(&c) {
                prop_assert!(!cert.is_smooth());
            }
        }
    }
}
