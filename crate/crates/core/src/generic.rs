//! Reduction over the generic C_ab family: every coefficient `c_st` of the
//! curve becomes a variable `z_st`, and the engine runs over
//! `Q[z][z_b0^{-1}]`. The coefficients of the result are Laurent polynomials
//! that specialize to the reduction on any concrete curve.

use std::collections::BTreeMap;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::curve::{support_set, CabParams};
use crate::error::{Error, Result};
use crate::exactalg::{ensure_prime, laurent_min_valp, Monomial, MultiLaurent, Valuation, INVERTED_VAR};
use crate::reduction::{CohomologyVector, CurveEquation, DifferentialForm, MonomialForm, Poly2, Reducer, ReductionStats};
use crate::valuation::{chain_length, mset, solve_jr, ResidueChoice};

/// Which coefficients of the family are symbolic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum FamilyKind {
    /// One variable per element of the support set.
    Full,
    /// Only `z_00` and `z_b0`: the superelliptic subfamily `y^a + z_b0 x^b + z_00`.
    Superelliptic,
}

/// The family of C_ab curves over `Q[z_st]` with `z_b0` inverted. Variable 0
/// is `z_b0`; the others follow the support set order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenericFamily {
    p: u64,
    a: u32,
    b: u32,
    kind: FamilyKind,
    vars: Vec<(u32, u32)>,
}

impl GenericFamily {
    pub fn new(p: u64, a: u32, b: u32) -> Result<Self> {
        Self::with_kind(p, a, b, FamilyKind::Full)
    }

    /// The two-variable subfamily `y^a + z_b0 x^b + z_00`, used for long
    /// chains where the full family is too large to reduce symbolically.
    pub fn superelliptic(p: u64, a: u32, b: u32) -> Result<Self> {
        Self::with_kind(p, a, b, FamilyKind::Superelliptic)
    }

    pub fn with_kind(p: u64, a: u32, b: u32, kind: FamilyKind) -> Result<Self> {
        ensure_prime(p)?;
        crate::curve::genus(a, b)?;
        let mut vars = vec![(b, 0)];
        match kind {
            FamilyKind::Full => vars.extend(support_set(a, b).into_iter().filter(|&k| k != (b, 0))),
            FamilyKind::Superelliptic => vars.push((0, 0)),
        }
        Ok(GenericFamily { p, a, b, kind, vars })
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

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    /// `(s, t)` for each variable index.
    pub fn variables(&self) -> &[(u32, u32)] {
        &self.vars
    }

    pub fn var_name(&self, v: u16) -> String {
        let (s, t) = self.vars[v as usize];
        format!("z{s}_{t}")
    }

    pub fn equation(&self) -> CurveEquation<MultiLaurent> {
        let tail = Poly2::from_terms(
            self.vars.iter().enumerate().map(|(v, &(s, t))| ((s, t), MultiLaurent::var(v as u16))),
        );
        CurveEquation::new(self.a, self.b, tail).expect("variables lie in the support set")
    }

    pub fn reducer(&self) -> Reducer<MultiLaurent> {
        Reducer::new(self.equation())
    }

    /// The point `z_st = c_st` for a coefficient map.
    pub fn point(&self, coeffs: &BTreeMap<(u32, u32), BigRational>) -> Result<Vec<BigRational>> {
        if let Some(k) = coeffs.keys().find(|&k| !self.vars.contains(k) && !coeffs[k].is_zero()) {
            return Err(Error::invalid(format!("coefficient {k:?} is not a variable of the family")));
        }
        let point: Vec<BigRational> =
            self.vars.iter().map(|k| coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)).collect();
        if point[INVERTED_VAR as usize].is_zero() {
            return Err(Error::invalid("the x^b coefficient must be nonzero"));
        }
        Ok(point)
    }
}

/// Default bound on the x-exponent for full symbolic reduction: `2b + 4`.
pub fn default_symbolic_cap(b: u32) -> u32 {
    2 * b + 4
}

/// The coordinates `G^{i,j}_{i',j'}` of `[x^i y^j dx]`.
#[derive(Debug, Clone, PartialEq)]
pub struct GenericReduction {
    pub source: (u32, u32),
    pub coords: CohomologyVector<MultiLaurent>,
    pub stats: ReductionStats,
}

impl GenericReduction {
    pub fn coefficient(&self, i: u32, j: u32) -> Option<&MultiLaurent> {
        self.coords.get(i, j)
    }
}

pub fn generic_reduce(family: &GenericFamily, i: u32, j: u32) -> Result<GenericReduction> {
    generic_reduce_with(family, i, j, default_symbolic_cap(family.b))
}

pub fn generic_reduce_with(family: &GenericFamily, i: u32, j: u32, cap: u32) -> Result<GenericReduction> {
    if i > cap {
        return Err(Error::CapExceeded { what: format!("symbolic reduction of x^{i} y^{j} dx"), cap: cap as u64 });
    }
    reduce_uncapped(&family.reducer(), i, j)
}

fn reduce_uncapped(reducer: &Reducer<MultiLaurent>, i: u32, j: u32) -> Result<GenericReduction> {
    let form = DifferentialForm::monomial(MultiLaurent::one(), MonomialForm::dx(i, j));
    let r = reducer.reduce_to_basis(&form, false)?;
    if let Some(((si, sj), _)) = r.vector.entries().find(|(_, g)| !g.denominators_are_z0_powers()) {
        return Err(Error::Assertion(format!("coefficient at ({si}, {sj}) inverts a variable other than z_b0")));
    }
    Ok(GenericReduction { source: (i, j), coords: r.vector, stats: r.stats })
}

/// Evaluates every coordinate at `z_st = c_st`.
pub fn specialize(
    family: &GenericFamily,
    g: &GenericReduction,
    coeffs: &BTreeMap<(u32, u32), BigRational>,
) -> Result<CohomologyVector<BigRational>> {
    let point = family.point(coeffs)?;
    g.coords.map(|c| c.eval(&point))
}

/// Coefficient map of a concrete curve, as rationals.
pub fn coefficient_map(curve: &CabParams) -> BTreeMap<(u32, u32), BigRational> {
    curve.coeffs().iter().map(|(&k, c)| (k, BigRational::from_integer(c.clone()))).collect()
}

/// One term of a locus polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LocusTerm {
    /// `[variable name, exponent]` pairs.
    pub exponents: Vec<(String, i32)>,
    pub num: String,
    pub den: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LocusReport {
    pub p: u64,
    pub a: u32,
    pub b: u32,
    pub family: FamilyKind,
    pub d: u32,
    #[serde(rename = "M")]
    pub m: u32,
    pub i_d: u32,
    pub j: u32,
    /// Basis slot `(r-1, j)` of the coefficient.
    pub slot: (u32, u32),
    pub l_d: u32,
    /// `p^{l_d} G` modulo p, coefficients in `[0, p)`.
    pub terms: Vec<LocusTerm>,
    /// Term count of `G` over Q.
    pub g_terms: usize,
    pub max_coeff_terms: usize,
    pub steps: u64,
}

/// `(M_d, i_d)` with `M_d` the `d`-th element of the exponent set and
/// `i_d = (N_d + 1) b + r - 1`.
pub fn chain_start(p: u64, a: u32, b: u32, rc: &ResidueChoice, d: u32) -> Result<(u32, BigUint)> {
    if d == 0 {
        return Err(Error::invalid("d is 1-based"));
    }
    let m = *mset(p, a, b, rc, d as usize)?.last().expect("d >= 1");
    let n = chain_length(p, a, b, rc, m)?;
    Ok((m, (n + 1u32) * b + rc.r - 1u32))
}

/// Long-chain bound for [`locus`]: the largest `i_d` reduced symbolically.
pub const DEFAULT_LOCUS_CAP: u32 = 200;

/// The renormalized coefficient `p^{l_d} G^{i_d,j}_{r-1,j}` mod p for the
/// `d`-th chain, where `i_d = (N_d + 1) b + r - 1`.
pub fn locus(family: &GenericFamily, rc: &ResidueChoice, d: u32) -> Result<LocusReport> {
    locus_with(family, rc, d, DEFAULT_LOCUS_CAP)
}

pub fn locus_with(family: &GenericFamily, rc: &ResidueChoice, d: u32, cap: u32) -> Result<LocusReport> {
    let (p, a, b) = (family.p, family.a, family.b);
    if *rc != solve_jr(p, a, b)? {
        return Err(Error::invalid("residue choice does not belong to (p, a, b)"));
    }
    let (m, i_d) = chain_start(p, a, b, rc, d)?;
    let i_d = i_d
        .to_u32()
        .filter(|&i| i <= cap)
        .ok_or_else(|| Error::CapExceeded { what: format!("chain exponent {i_d}"), cap: cap as u64 })?;
    let j = rc.j;
    let slot = (rc.r - 1, j);
    let g = reduce_uncapped(&family.reducer(), i_d, j)?;
    let coeff = g.coefficient(slot.0, slot.1).expect("slot is a basis index").clone();
    let l_d = match laurent_min_valp(&coeff, p)? {
        Valuation::Infinite => return Err(Error::Assertion(format!("G^({i_d},{j}) vanishes at slot {slot:?}"))),
        Valuation::Finite(v) => (-v).max(0) as u32,
    };
    if l_d < d {
        return Err(Error::Assertion(format!("l_d = {l_d} is smaller than d = {d}")));
    }
    let scaled = coeff.scale(&BigRational::from_integer(BigInt::from(p).pow(l_d)));
    let reduced = scaled.reduce_mod_p(p)?;
    if reduced.is_empty() {
        return Err(Error::Assertion("renormalized locus polynomial vanishes mod p".into()));
    }
    let name = |m: &Monomial| m.iter().map(|&(v, e)| (family.var_name(v), e)).collect();
    let terms = reduced
        .iter()
        .map(|(mono, c)| LocusTerm { exponents: name(mono), num: c.to_string(), den: "1".into() })
        .collect();
    Ok(LocusReport {
        p,
        a,
        b,
        family: family.kind,
        d,
        m,
        i_d,
        j,
        slot,
        l_d,
        terms,
        g_terms: coeff.len(),
        max_coeff_terms: g.stats.max_coeff_terms,
        steps: g.stats.steps,
    })
}

impl LocusReport {
    /// Evaluates the mod-p locus polynomial at a point given as residues per
    /// variable (same order as the family's variables).
    pub fn eval_mod_p(&self, family: &GenericFamily, point: &[u64]) -> Result<u64> {
        let p = self.p;
        let pb = BigInt::from(p);
        let mut acc = BigInt::zero();
        for t in &self.terms {
            let mut v: BigInt = t.num.parse().map_err(|_| Error::invalid("bad locus coefficient"))?;
            for (name, e) in &t.exponents {
                let idx = (0..family.vars.len() as u16)
                    .find(|&k| &family.var_name(k) == name)
                    .ok_or_else(|| Error::invalid(format!("unknown variable {name}")))?;
                let x = BigInt::from(point[idx as usize] % p);
                let x = if *e < 0 {
                    x.modinv(&pb).ok_or_else(|| Error::invalid("z_b0 vanishes mod p"))?
                } else {
                    x
                };
                v *= x.modpow(&BigInt::from(e.unsigned_abs()), &pb);
            }
            acc += v;
        }
        let r = ((acc % &pb) + &pb) % &pb;
        Ok(r.to_u64().expect("residue fits"))
    }
}

/// `l_d` of a rational coefficient: the least `l >= 0` making `p^l c` integral at p.
pub fn renormalization_exponent(c: &BigRational, p: u64) -> Result<u32> {
    match crate::exactalg::valp(c, p)? {
        Valuation::Infinite => Ok(0),
        Valuation::Finite(v) => Ok((-v).max(0) as u32),
    }
}
