//! Differential forms on the punctured line `A^1 \ {alpha_1, ..., alpha_r}`.
//! Every class is a combination of `dx / (x - alpha_i)`, so the coordinates
//! are the residues and the integral lattice is finitely generated.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactalg::{ensure_prime, PolyRing, Rationals};

/// A rational function regular away from the punctures, kept as
/// `poly(x) + sum_i sum_{m >= 1} principal[i][m-1] (x - alpha_i)^{-m}`.
/// A form `f dx` uses the same representation for `f`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PuncturedLineForm {
    punctures: Vec<BigInt>,
    poly: Vec<BigRational>,
    principal: Vec<Vec<BigRational>>,
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn q(n: impl Into<BigInt>) -> BigRational {
    BigRational::from_integer(n.into())
}

impl PuncturedLineForm {
    pub fn new(punctures: Vec<BigInt>, mut poly: Vec<BigRational>, mut principal: Vec<Vec<BigRational>>) -> Result<Self> {
        for (k, a) in punctures.iter().enumerate() {
            if punctures[..k].contains(a) {
                return Err(Error::invalid(format!("puncture {a} appears twice")));
            }
        }
        if principal.len() > punctures.len() {
            return Err(Error::invalid("more principal parts than punctures"));
        }
        principal.resize(punctures.len(), Vec::new());
        trim(&mut poly);
        principal.iter_mut().for_each(trim);
        Ok(PuncturedLineForm { punctures, poly, principal })
    }

    pub fn zero(punctures: Vec<BigInt>) -> Result<Self> {
        Self::new(punctures, Vec::new(), Vec::new())
    }

    /// `numerator(x) / prod (x - alpha_i)^{e_i}`, split into polynomial and
    /// principal parts by division and a local expansion at each puncture.
    pub fn from_rational(punctures: &[(BigInt, u32)], numerator: &[BigRational]) -> Result<Self> {
        let ring = PolyRing::new(Rationals);
        let num = ring.from_coeffs(numerator.to_vec());
        let mut den = ring.one();
        for (a, e) in punctures {
            let lin = ring.from_coeffs(vec![q(-a.clone()), BigRational::one()]);
            den = ring.mul(&den, &ring.pow(&lin, *e));
        }
        let (quot, _) = ring.divrem(&num, &den);
        let mut principal = Vec::with_capacity(punctures.len());
        for (k, (a, e)) in punctures.iter().enumerate() {
            let e = *e as usize;
            // with x = a + t: numerator(a + t) / prod_{i != k} (a - alpha_i + t)^{e_i}, to order t^{e-1}
            let top = taylor_shift(numerator, a, e);
            let mut other = vec![BigRational::one()];
            for (i, (b, f)) in punctures.iter().enumerate() {
                if i != k {
                    let lin = [q(a - b), BigRational::one()];
                    for _ in 0..*f {
                        other = mul_trunc(&other, &lin, e);
                    }
                }
            }
            let series = div_trunc(&top, &other, e)?;
            // coefficient of t^s multiplies t^{s-e}, i.e. m = e - s
            principal.push((0..e).map(|m1| series.get(e - 1 - m1).cloned().unwrap_or_else(BigRational::zero)).collect());
        }
        Self::new(punctures.iter().map(|(a, _)| a.clone()).collect(), quot.into_coeffs(), principal)
    }

    pub fn punctures(&self) -> &[BigInt] {
        &self.punctures
    }

    pub fn poly(&self) -> &[BigRational] {
        &self.poly
    }

    pub fn principal(&self) -> &[Vec<BigRational>] {
        &self.principal
    }

    /// Punctures must stay distinct after reduction mod p.
    pub fn check_mod_p(&self, p: u64) -> Result<()> {
        ensure_prime(p)?;
        let pb = BigInt::from(p);
        let residues: Vec<BigInt> = self.punctures.iter().map(|a| a.mod_floor(&pb)).collect();
        for k in 0..residues.len() {
            if residues[..k].contains(&residues[k]) {
                return Err(Error::invalid(format!("punctures collide mod {p}")));
            }
        }
        Ok(())
    }

    fn same_punctures(&self, other: &Self) -> Result<()> {
        if self.punctures != other.punctures {
            return Err(Error::invalid("forms live on different punctured lines"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_punctures(other)?;
        let add = |x: &[BigRational], y: &[BigRational]| -> Vec<BigRational> {
            (0..x.len().max(y.len()))
                .map(|k| x.get(k).cloned().unwrap_or_default() + y.get(k).cloned().unwrap_or_default())
                .collect()
        };
        let principal = self.principal.iter().zip(&other.principal).map(|(x, y)| add(x, y)).collect();
        Self::new(self.punctures.clone(), add(&self.poly, &other.poly), principal)
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let s = |v: &Vec<BigRational>| v.iter().map(|x| x * c).collect();
        Self::new(self.punctures.clone(), s(&self.poly), self.principal.iter().map(s).collect())
            .expect("same punctures")
    }

    /// `dg` for a function `g` in the same representation.
    pub fn exact(g: &Self) -> Self {
        let poly = g.poly.iter().enumerate().skip(1).map(|(k, c)| c * q(k as u64)).collect();
        let principal = g
            .principal
            .iter()
            .map(|pp| {
                // d (x - a)^{-m} = -m (x - a)^{-m-1}
                let mut out = vec![BigRational::zero(); pp.len() + 1];
                for (m1, c) in pp.iter().enumerate() {
                    out[m1 + 1] = -(c * q(m1 as u64 + 1));
                }
                out
            })
            .collect();
        Self::new(g.punctures.clone(), poly, principal).expect("same punctures")
    }

    /// Value at a rational point away from the punctures.
    pub fn eval(&self, x: &BigRational) -> Result<BigRational> {
        let mut acc = BigRational::zero();
        for c in self.poly.iter().rev() {
            acc = acc * x + c;
        }
        for (a, pp) in self.punctures.iter().zip(&self.principal) {
            let t = x - q(a.clone());
            if t.is_zero() {
                if pp.is_empty() {
                    continue;
                }
                return Err(Error::invalid("evaluation at a pole"));
            }
            let inv = t.recip();
            let mut pw = inv.clone();
            for c in pp {
                acc += c * &pw;
                pw *= &inv;
            }
        }
        Ok(acc)
    }
}

/// Coefficients of `f(a + t)` up to `t^{n-1}`.
fn taylor_shift(f: &[BigRational], a: &BigInt, n: usize) -> Vec<BigRational> {
    let a = q(a.clone());
    let mut out: Vec<BigRational> = Vec::new();
    for c in f.iter().rev() {
        // out = out * (a + t) + c
        let mut next = vec![BigRational::zero(); (out.len() + 1).min(n.max(1))];
        for (k, v) in out.iter().enumerate() {
            if k < next.len() {
                next[k] += v * &a;
            }
            if k + 1 < next.len() {
                next[k + 1] += v;
            }
        }
        next[0] += c;
        out = next;
    }
    out.truncate(n);
    out
}

fn mul_trunc(x: &[BigRational], y: &[BigRational], n: usize) -> Vec<BigRational> {
    let mut out = vec![BigRational::zero(); (x.len() + y.len()).saturating_sub(1).min(n)];
    for (i, u) in x.iter().enumerate() {
        for (j, v) in y.iter().enumerate() {
            if i + j < out.len() {
                out[i + j] += u * v;
            }
        }
    }
    out
}

/// Power series quotient `x / y` to `n` terms; `y[0]` must be nonzero.
fn div_trunc(x: &[BigRational], y: &[BigRational], n: usize) -> Result<Vec<BigRational>> {
    let y0 = y.first().filter(|c| !c.is_zero()).ok_or_else(|| Error::invalid("punctures coincide"))?;
    let inv = y0.recip();
    let mut out: Vec<BigRational> = Vec::with_capacity(n);
    for k in 0..n {
        let mut s = x.get(k).cloned().unwrap_or_default();
        for i in 1..=k.min(y.len().saturating_sub(1)) {
            s -= &y[i] * &out[k - i];
        }
        out.push(s * &inv);
    }
    Ok(out)
}

/// One residue per puncture.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(transparent)]
pub struct ResidueVector(#[serde(serialize_with = "as_strings")] pub Vec<BigRational>);

fn as_strings<S: serde::Serializer>(v: &[BigRational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|c| c.to_string()))
}

impl ResidueVector {
    pub fn is_integral(&self) -> bool {
        self.0.iter().all(|c| c.is_integer())
    }
}

/// Residues of `form` together with a primitive `g` such that
/// `form - sum res_i dx / (x - alpha_i) = dg`.
pub fn residue_reduce_with_primitive(form: &PuncturedLineForm) -> (ResidueVector, PuncturedLineForm) {
    let residues = form.principal.iter().map(|pp| pp.first().cloned().unwrap_or_default()).collect();
    let mut poly = vec![BigRational::zero()];
    poly.extend(form.poly.iter().enumerate().map(|(k, c)| c / q(k as u64 + 1)));
    let principal = form
        .principal
        .iter()
        .map(|pp| {
            // (x - a)^{-m} dx = d( (x - a)^{1-m} / (1 - m) ) for m >= 2
            pp.iter().enumerate().skip(1).map(|(m1, c)| -(c / q(m1 as u64))).collect()
        })
        .collect();
    let g = PuncturedLineForm::new(form.punctures.clone(), poly, principal).expect("same punctures");
    (ResidueVector(residues), g)
}

pub fn residue_reduce(form: &PuncturedLineForm) -> ResidueVector {
    residue_reduce_with_primitive(form).0
}

/// On-disk description of a form on a punctured line. Either `poly` and
/// `principal` (partial fractions) or `numerator` and `multiplicities`
/// (a rational function) are given. Coefficients are integers or strings
/// such as `"-3/4"`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Genus0Spec {
    pub punctures: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub poly: Option<Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub principal: Option<Vec<Vec<RatText>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub numerator: Option<Vec<RatText>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub multiplicities: Option<Vec<u32>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RatText {
    Int(i64),
    Text(String),
}

impl RatText {
    pub fn parse(&self) -> Result<BigRational> {
        match self {
            RatText::Int(n) => Ok(q(*n)),
            RatText::Text(s) => s.trim().parse().map_err(|_| Error::invalid(format!("bad rational {s:?}"))),
        }
    }
}

fn parse_all(v: &[RatText]) -> Result<Vec<BigRational>> {
    v.iter().map(RatText::parse).collect()
}

impl Genus0Spec {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::invalid(format!("malformed form spec: {e}")))
    }

    pub fn to_form(&self) -> Result<PuncturedLineForm> {
        let punctures: Vec<BigInt> = self.punctures.iter().map(|&a| a.into()).collect();
        let form = match (&self.numerator, &self.multiplicities) {
            (Some(num), mult) => {
                if self.poly.is_some() || self.principal.is_some() {
                    return Err(Error::invalid("give either numerator or poly/principal, not both"));
                }
                let mult = mult.clone().unwrap_or_else(|| vec![1; punctures.len()]);
                if mult.len() != punctures.len() {
                    return Err(Error::invalid("one multiplicity per puncture"));
                }
                for (k, a) in punctures.iter().enumerate() {
                    if punctures[..k].contains(a) {
                        return Err(Error::invalid(format!("puncture {a} appears twice")));
                    }
                }
                let pairs: Vec<_> = punctures.into_iter().zip(mult).collect();
                PuncturedLineForm::from_rational(&pairs, &parse_all(num)?)?
            }
            (None, Some(_)) => return Err(Error::invalid("multiplicities need a numerator")),
            (None, None) => {
                let poly = self.poly.as_deref().map(parse_all).transpose()?.unwrap_or_default();
                let principal = self
                    .principal
                    .as_deref()
                    .unwrap_or_default()
                    .iter()
                    .map(|v| parse_all(v))
                    .collect::<Result<_>>()?;
                PuncturedLineForm::new(punctures, poly, principal)?
            }
        };
        if let Some(p) = self.p {
            form.check_mod_p(p)?;
        }
        Ok(form)
    }
}
