//! p-adic valuations of the reduction coefficients along the long chains
//! `[x^{(N+1)b+r-1} y^j dx] = C [x^{r-1} y^j dx]` on `y^a + x^b + alpha`.
//!
//! With `c = ra + jb + ab` and `p^M = N ab + c`,
//! `C = prod_{n=0}^{N} -(nb+r) a alpha / (n ab + c)`, so
//! `v_p(C) = sum_{M'=1}^{M} (|P_M'| - |Q_M'|)` where `P_M'`, `Q_M'` are the
//! `n` in `[0, N]` with `p^M'` dividing `nb + r`, resp. `n ab + c`.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use serde::Serialize;

use crate::curve::SuperellipticParams;
use crate::error::{Error, Result};
use crate::exactalg::{ensure_prime, valp, Valuation};
use crate::reduction::{DifferentialForm, MonomialForm, Reducer};

/// Default bound on `N` for computing `C` exactly.
pub const DEFAULT_EXACT_CAP: u64 = 100_000;
/// Default bound on `N` for running the reduction engine along the chain.
pub const DEFAULT_CROSSCHECK_CAP: u64 = 1_000;
/// Default bound on `N` for the enumerating oracle.
pub const DEFAULT_BRUTE_CAP: u64 = 10_000_000;

/// The residues `j`, `r` with `p = jb (mod a)`, `p = ra (mod b)`, and
/// `c = ra + jb + ab`, so that `p = c (mod ab)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ResidueChoice {
    pub j: u32,
    pub r: u32,
    pub c: u64,
}

pub fn solve_jr(p: u64, a: u32, b: u32) -> Result<ResidueChoice> {
    if a < 2 || b < 2 {
        return Err(Error::invalid(format!("need a, b >= 2, got ({a}, {b})")));
    }
    let g = a.gcd(&b);
    if g != 1 {
        return Err(Error::NotCoprime { a, b, gcd: g });
    }
    ensure_prime(p)?;
    let (a64, b64) = (a as u64, b as u64);
    if p.is_multiple_of(a64 * b64) || p.is_multiple_of(a64) || p.is_multiple_of(b64) {
        return Err(Error::invalid(format!("p = {p} divides ab = {}", a64 * b64)));
    }
    let j = (1..a).find(|&j| (j as u64 * b64) % a64 == p % a64);
    let r = (1..b).find(|&r| (r as u64 * a64) % b64 == p % b64);
    match (j, r) {
        (Some(j), Some(r)) => Ok(ResidueChoice { j, r, c: r as u64 * a64 + j as u64 * b64 + a64 * b64 }),
        _ => Err(Error::Assertion(format!("no residue choice for (p, a, b) = ({p}, {a}, {b})"))),
    }
}

/// Whether `M` belongs to the exponent set: `p^M = c (mod ab)` and `p^M >= c`.
pub fn in_mset(p: u64, a: u32, b: u32, rc: &ResidueChoice, m: u32) -> bool {
    let ab = a as u64 * b as u64;
    let residue = BigUint::from(p).modpow(&BigUint::from(m), &BigUint::from(ab));
    m >= 1 && residue == BigUint::from(rc.c % ab) && power_at_least(p, m, rc.c)
}

fn power_at_least(p: u64, m: u32, bound: u64) -> bool {
    let mut acc: u128 = 1;
    for _ in 0..m {
        acc *= p as u128;
        if acc >= bound as u128 {
            return true;
        }
    }
    acc >= bound as u128
}

/// The first `count` elements of the exponent set, increasing. The residue
/// of `p^M` mod `ab` is iterated and the search stops with an error if a full
/// period passes without a hit.
pub fn mset(p: u64, a: u32, b: u32, rc: &ResidueChoice, count: usize) -> Result<Vec<u32>> {
    let ab = a as u64 * b as u64;
    let target = rc.c % ab;
    let mut out = Vec::with_capacity(count);
    let mut residue = 1u64;
    let mut big_enough = false;
    let mut power: u128 = 1;
    let mut since_hit = 0u64;
    let mut m = 0u32;
    while out.len() < count {
        m = m.checked_add(1).ok_or_else(|| Error::invalid("exponent overflow"))?;
        residue = (residue as u128 * p as u128 % ab as u128) as u64;
        if !big_enough {
            power *= p as u128;
            big_enough = power >= rc.c as u128;
        }
        if residue == target && big_enough {
            out.push(m);
            since_hit = 0;
        } else {
            since_hit += 1;
            if since_hit > 2 * ab + 128 {
                return Err(Error::Assertion(format!("p^M never returns to {target} mod {ab}")));
            }
        }
    }
    Ok(out)
}

/// `N = (p^M - c) / ab`.
pub fn chain_length(p: u64, a: u32, b: u32, rc: &ResidueChoice, m: u32) -> Result<BigUint> {
    let pm = BigUint::from(p).pow(m);
    let c = BigUint::from(rc.c);
    let ab = BigUint::from(a as u64 * b as u64);
    if pm < c || !((&pm - &c) % &ab).is_zero() {
        return Err(Error::invalid(format!("M = {m} is not in the exponent set")));
    }
    Ok((pm - c) / ab)
}

/// Cardinalities of `P_M'` and `Q_M'` for one `M'`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SetCount {
    pub m_prime: u32,
    #[serde(serialize_with = "display")]
    pub p_count: BigUint,
    #[serde(serialize_with = "display")]
    pub q_count: BigUint,
}

impl SetCount {
    /// `|P_M'| - |Q_M'|`; both sets are residue classes modulo the same
    /// `p^M'` inside `[0, N]`, so the gap is in `{-1, 0, 1}`.
    pub fn gap(&self) -> i64 {
        let d = BigInt::from(self.p_count.clone()) - BigInt::from(self.q_count.clone());
        d.to_i64().expect("gap of two residue-class counts is at most 1")
    }
}

/// `#{0 <= n <= N : n = n0 (mod m)}` with `0 <= n0 < m`.
fn count_class(n_max: &BigUint, n0: &BigUint, m: &BigUint) -> BigUint {
    if n0 > n_max {
        BigUint::zero()
    } else {
        (n_max - n0) / m + 1u32
    }
}

/// Least `n >= 0` with `m | (k n + s)`, for `k` invertible mod `m`.
fn least_root(k: u64, s: u64, m: &BigUint) -> BigUint {
    let k = BigUint::from(k) % m;
    let inv = k.modinv(m).expect("k is a unit modulo p^M'");
    let s = BigUint::from(s) % m;
    ((m - s) % m * inv) % m
}

/// Closed-form cardinalities for `M' = 1..=M`; no enumeration over `n`.
pub fn set_counts(p: u64, a: u32, b: u32, rc: &ResidueChoice, m: u32) -> Result<Vec<SetCount>> {
    let n_max = chain_length(p, a, b, rc, m)?;
    let ab = a as u64 * b as u64;
    let mut modulus = BigUint::one();
    let mut out = Vec::with_capacity(m as usize);
    for m_prime in 1..=m {
        modulus *= p;
        let p_root = least_root(b as u64, rc.r as u64, &modulus);
        let q_root = least_root(ab, rc.c, &modulus);
        out.push(SetCount {
            m_prime,
            p_count: count_class(&n_max, &p_root, &modulus),
            q_count: count_class(&n_max, &q_root, &modulus),
        });
    }
    Ok(out)
}

/// `v_p(C)` by closed-form counting.
pub fn nu_count(p: u64, a: u32, b: u32, rc: &ResidueChoice, m: u32) -> Result<i64> {
    if !in_mset(p, a, b, rc, m) {
        return Err(Error::invalid(format!("M = {m} is not in the exponent set")));
    }
    Ok(set_counts(p, a, b, rc, m)?.iter().map(SetCount::gap).sum())
}

fn valp_u64(mut n: u64, p: u64) -> i64 {
    let mut v = 0;
    while n.is_multiple_of(p) {
        n /= p;
        v += 1;
    }
    v
}

/// `sum_{n=0}^{N} v_p(nb + r) - v_p(n ab + c)` by enumeration.
pub fn nu_brute(p: u64, a: u32, b: u32, rc: &ResidueChoice, m: u32, cap: u64) -> Result<i64> {
    ensure_prime(p)?;
    let n_max = chain_length(p, a, b, rc, m)?;
    let n_max = n_max
        .to_u64()
        .filter(|&n| n <= cap)
        .ok_or_else(|| Error::CapExceeded { what: format!("N = {n_max}"), cap })?;
    let (b64, ab) = (b as u64, a as u64 * b as u64);
    Ok((0..=n_max).map(|n| valp_u64(n * b64 + rc.r as u64, p) - valp_u64(n * ab + rc.c, p)).sum())
}

/// Smallest prime factor of every integer up to `limit`.
fn spf_sieve(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            spf[i] = i as u32;
            let mut k = i * i;
            while k <= limit {
                if spf[k] == 0 {
                    spf[k] = i as u32;
                }
                k += i;
            }
        }
    }
    spf
}

fn product_tree(mut xs: Vec<BigUint>) -> BigUint {
    if xs.is_empty() {
        return BigUint::one();
    }
    while xs.len() > 1 {
        let mut next = Vec::with_capacity(xs.len().div_ceil(2));
        let mut it = xs.into_iter();
        while let Some(x) = it.next() {
            next.push(match it.next() {
                Some(y) => x * y,
                None => x,
            });
        }
        xs = next;
    }
    xs.pop().unwrap()
}

/// `C = prod_{n=0}^{N} -(nb+r) a alpha / ((nb+r)a + jb + ab)` as a reduced
/// fraction. Factors are accumulated as prime exponents over a sieve, so the
/// result comes out in lowest terms without any big gcd.
pub fn exact_coefficient(a: u32, b: u32, alpha: &BigInt, rc: &ResidueChoice, n_max: u64) -> Result<BigRational> {
    if alpha.is_zero() {
        return Err(Error::invalid("alpha must be nonzero"));
    }
    let (b64, ab) = (b as u64, a as u64 * b as u64);
    let limit = (n_max * ab + rc.c).max(n_max * b64 + rc.r as u64).max(a as u64);
    let limit = usize::try_from(limit).map_err(|_| Error::CapExceeded { what: "sieve size".into(), cap: usize::MAX as u64 })?;
    let spf = spf_sieve(limit);
    let mut exps = vec![0i64; limit + 1];
    let mut add = |mut n: usize, e: i64| {
        while n > 1 {
            let q = spf[n] as usize;
            exps[q] += e;
            n /= q;
        }
    };
    let terms = n_max as i64 + 1;
    add(a as usize, terms);
    for n in 0..=n_max {
        add((n * b64 + rc.r as u64) as usize, 1);
        add((n * ab + rc.c) as usize, -1);
    }
    // alpha: strip primes up to the sieve limit; what remains has only larger
    // prime factors, which cannot cancel against the denominator
    let mut rest = alpha.magnitude().clone();
    for q in 2..=limit {
        if rest.is_one() {
            break;
        }
        if spf[q] as usize == q {
            let qb = BigUint::from(q);
            while (&rest % &qb).is_zero() {
                rest /= &qb;
                exps[q] += terms;
            }
        }
        if BigUint::from(q) * BigUint::from(q) > rest {
            break;
        }
    }
    if !rest.is_one() {
        if let Some(small) = rest.to_usize().filter(|&v| v <= limit) {
            exps[small] += terms;
            rest = BigUint::one();
        }
    }
    let mut num = Vec::new();
    let mut den = Vec::new();
    for (q, &e) in exps.iter().enumerate() {
        if e > 0 {
            num.push(BigUint::from(q).pow(e as u32));
        } else if e < 0 {
            den.push(BigUint::from(q).pow((-e) as u32));
        }
    }
    num.push(rest.pow(terms as u32));
    let num = product_tree(num);
    let den = product_tree(den);
    // each factor has the sign of -alpha
    let negative = terms % 2 == 1 && alpha.sign() == Sign::Plus;
    let sign = if negative { Sign::Minus } else { Sign::Plus };
    Ok(BigRational::new_raw(BigInt::from_biguint(sign, num), BigInt::from(den)))
}

/// The same product by plain rational multiplication; slow, used as an oracle.
pub fn exact_coefficient_naive(a: u32, b: u32, alpha: &BigInt, rc: &ResidueChoice, n_max: u64) -> BigRational {
    let mut acc = BigRational::one();
    for n in 0..=n_max {
        let t = BigInt::from(n * b as u64 + rc.r as u64);
        let num = -(&t * BigInt::from(a) * alpha);
        let den = t * BigInt::from(a) + BigInt::from(rc.j as u64 * b as u64 + a as u64 * b as u64);
        acc *= BigRational::new(num, den);
    }
    acc
}

/// Outcome of the `d`-th probe on one superelliptic curve.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbeResult {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    #[serde(serialize_with = "display")]
    pub alpha: BigInt,
    pub rc: ResidueChoice,
    pub d: u32,
    #[serde(rename = "M")]
    pub m: u32,
    #[serde(rename = "N", serialize_with = "display")]
    pub n: BigUint,
    pub nu: i64,
    #[serde(serialize_with = "display_opt")]
    pub c_exact: Option<BigRational>,
    pub bound_ok: bool,
    pub crosscheck: Option<bool>,
}

impl ProbeResult {
    pub fn n_digits(&self) -> usize {
        self.n.to_str_radix(10).len()
    }
}

fn display<T: std::fmt::Display, S: serde::Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn display_opt<T: std::fmt::Display, S: serde::Serializer>(
    v: &Option<T>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.collect_str(v),
        None => s.serialize_none(),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ProbeConfig {
    pub d_max: u32,
    /// Compute `C` exactly when `N` is at most this.
    pub exact_cap: u64,
    /// Run the reduction engine along the chain when `N` is at most this.
    pub crosscheck_cap: Option<u64>,
}

impl Default for ProbeConfig {
    fn default() -> Self {
        ProbeConfig { d_max: 1, exact_cap: DEFAULT_EXACT_CAP, crosscheck_cap: None }
    }
}

pub fn probe(p: u64, a: u32, b: u32, alpha: impl Into<BigInt>, d_max: u32, exact_cap: u64) -> Result<Vec<ProbeResult>> {
    probe_with(p, a, b, alpha, &ProbeConfig { d_max, exact_cap, crosscheck_cap: None })
}

pub fn probe_with(p: u64, a: u32, b: u32, alpha: impl Into<BigInt>, cfg: &ProbeConfig) -> Result<Vec<ProbeResult>> {
    let alpha = alpha.into();
    let params = SuperellipticParams::new(p, a, b, alpha.clone());
    params.to_cab()?;
    let rc = solve_jr(p, a, b)?;
    let ms = mset(p, a, b, &rc, cfg.d_max as usize)?;
    let mut out = Vec::with_capacity(ms.len());
    for (idx, &m) in ms.iter().enumerate() {
        let d = idx as u32 + 1;
        let n = chain_length(p, a, b, &rc, m)?;
        let nu = nu_count(p, a, b, &rc, m)?;
        let small_n = n.to_u64();
        let c_exact = match small_n.filter(|&v| v <= cfg.exact_cap) {
            Some(nv) => {
                let c = exact_coefficient(a, b, &alpha, &rc, nv)?;
                let v = valp(&c, p)?;
                if v != Valuation::Finite(nu) {
                    return Err(Error::Assertion(format!(
                        "v_{p}(C_{d}) = {v} from the exact product but {nu} from counting"
                    )));
                }
                Some(c)
            }
            None => None,
        };
        let crosscheck = match (cfg.crosscheck_cap, small_n) {
            (Some(cap), Some(nv)) if nv <= cap => {
                let c = match &c_exact {
                    Some(c) => c.clone(),
                    None => exact_coefficient(a, b, &alpha, &rc, nv)?,
                };
                Some(chain_matches(&params, &rc, nv, &c)?)
            }
            _ => None,
        };
        out.push(ProbeResult {
            p,
            a,
            b,
            alpha: alpha.clone(),
            rc,
            d,
            m,
            n,
            nu,
            c_exact,
            bound_ok: nu <= -(d as i64),
            crosscheck,
        });
    }
    Ok(out)
}

fn chain_matches(params: &SuperellipticParams, rc: &ResidueChoice, n_max: u64, c: &BigRational) -> Result<bool> {
    let curve = params.to_cab()?;
    let (b, r, j) = (params.b as u64, rc.r, rc.j);
    let i = u32::try_from((n_max + 1) * b + r as u64 - 1).map_err(|_| Error::CapExceeded {
        what: "x-exponent".into(),
        cap: u32::MAX as u64,
    })?;
    let form = DifferentialForm::monomial(BigRational::one(), MonomialForm::dx(i, j));
    let reduction = Reducer::for_curve(&curve).reduce_to_basis(&form, false)?;
    let matches = reduction
        .vector
        .entries()
        .all(|((bi, bj), v)| if (bi, bj) == (r - 1, j) { v == c } else { Zero::is_zero(v) });
    Ok(matches)
}

/// Reduces `x^{(N+1)b+r-1} y^j dx` with the general engine and compares the
/// result with `C` times the basis vector at `(r-1, j)`.
pub fn crosscheck_reduction(p: u64, a: u32, b: u32, alpha: impl Into<BigInt>, d: u32) -> Result<bool> {
    crosscheck_reduction_with(p, a, b, alpha, d, DEFAULT_CROSSCHECK_CAP)
}

pub fn crosscheck_reduction_with(p: u64, a: u32, b: u32, alpha: impl Into<BigInt>, d: u32, cap: u64) -> Result<bool> {
    if d == 0 {
        return Err(Error::invalid("d is 1-based"));
    }
    let alpha = alpha.into();
    let params = SuperellipticParams::new(p, a, b, alpha.clone());
    params.to_cab()?;
    let rc = solve_jr(p, a, b)?;
    let m = *mset(p, a, b, &rc, d as usize)?.last().expect("d >= 1");
    let n = chain_length(p, a, b, &rc, m)?;
    let nv = n.to_u64().filter(|&v| v <= cap).ok_or_else(|| Error::CapExceeded { what: format!("N = {n}"), cap })?;
    let c = exact_coefficient(a, b, &alpha, &rc, nv)?;
    chain_matches(&params, &rc, nv, &c)
}

#[cfg(test)]
mod tests;
