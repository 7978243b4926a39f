//! Factorization over finite fields: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting.

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{FiniteField, PrimeField};
use super::poly::{PolyRing, UniPoly};
use crate::error::{Error, Result};

type Poly<F> = UniPoly<<F as super::field::Field>::Elem>;

/// Squarefree decomposition of a nonzero polynomial: monic pairwise coprime
/// squarefree `g_i` with `f = lc(f) * prod g_i^{m_i}`, sorted by multiplicity.
pub fn squarefree_decomposition<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F>) -> Vec<(Poly<F>, u32)> {
    let field = ring.field();
    let p = field.characteristic() as usize;
    let f = ring.monic(f);
    let mut out = Vec::new();
    if f.degree().unwrap_or(0) == 0 {
        return out;
    }
    let mut c = ring.gcd(&f, &ring.derivative(&f));
    let mut w = ring.div_exact(&f, &c);
    let mut i = 1u32;
    while !ring.is_one(&w) {
        let y = ring.gcd(&w, &c);
        let fac = ring.div_exact(&w, &y);
        if !ring.is_one(&fac) {
            out.push((fac, i));
        }
        w = y;
        c = ring.div_exact(&c, &w);
        i += 1;
    }
    if !ring.is_one(&c) {
        // c is a p-th power: c(x) = sum c_{pk} x^{pk}
        let root: Vec<_> = c
            .coeffs()
            .iter()
            .step_by(p)
            .map(|a| field.pth_root(a))
            .collect();
        let root = ring.from_coeffs(root);
        for (g, m) in squarefree_decomposition(ring, &root) {
            out.push((g, m * p as u32));
        }
    }
    out.sort_by_key(|(_, m)| *m);
    out
}

/// Splits a monic squarefree polynomial into products of irreducible factors
/// of equal degree, returned as `(product, degree)`.
pub fn distinct_degree<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F>) -> Vec<(Poly<F>, usize)> {
    let q = ring.field().order();
    let x = ring.x();
    let mut rest = ring.monic(f);
    let mut h = ring.rem(&x, &rest);
    let mut out = Vec::new();
    let mut d = 1;
    while rest.degree().unwrap_or(0) >= 2 * d {
        h = ring.pow_mod(&h, &q, &rest);
        let g = ring.gcd(&ring.sub(&h, &x), &rest);
        if !ring.is_one(&g) {
            rest = ring.div_exact(&rest, &g);
            h = ring.rem(&h, &rest);
            out.push((g, d));
        }
        d += 1;
    }
    if rest.degree().unwrap_or(0) > 0 {
        let deg = rest.degree().unwrap();
        out.push((rest, deg));
    }
    out
}

/// Cantor-Zassenhaus: splits a monic squarefree product of irreducibles of
/// degree `d` into its irreducible factors.
pub fn equal_degree<F: FiniteField, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    f: &Poly<F>,
    d: usize,
    rng: &mut R,
) -> Vec<Poly<F>> {
    let field = ring.field();
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    let r = n / d;
    let q = field.order();
    let mut factors = vec![ring.monic(f)];
    if r == 1 {
        return factors;
    }
    let odd = field.characteristic() != 2;
    let exponent = if odd {
        (num_traits::pow(q.clone(), d) - BigUint::one()) / BigUint::from(2u32)
    } else {
        BigUint::one()
    };
    // For characteristic 2, q = 2^k and the trace map sums k*d squarings.
    let trace_len = (field.degree() as usize) * d;
    while factors.len() < r {
        let a = ring.from_coeffs((0..n).map(|_| field.random_elem(rng)).collect());
        if a.degree().unwrap_or(0) == 0 {
            continue;
        }
        let b = if odd {
            ring.sub(&ring.pow_mod(&a, &exponent, f), &ring.one())
        } else {
            let mut term = ring.rem(&a, f);
            let mut acc = term.clone();
            for _ in 1..trace_len {
                term = ring.mulmod(&term, &term, f);
                acc = ring.add(&acc, &term);
            }
            acc
        };
        let mut next = Vec::with_capacity(factors.len() + 1);
        for u in factors {
            if u.degree().unwrap() > d {
                let g = ring.gcd(&b, &u);
                if !ring.is_one(&g) && g.degree() != u.degree() {
                    next.push(ring.div_exact(&u, &g));
                    next.push(g);
                    continue;
                }
            }
            next.push(u);
        }
        factors = next;
    }
    factors
}

/// Complete factorization into monic irreducibles with multiplicities,
/// sorted by `(degree, coefficients, multiplicity)`.
pub fn factor<F: FiniteField, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    f: &Poly<F>,
    rng: &mut R,
) -> Result<Vec<(Poly<F>, u32)>> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let mut out = Vec::new();
    for (g, m) in squarefree_decomposition(ring, f) {
        for (h, d) in distinct_degree(ring, &g) {
            for irr in equal_degree(ring, &h, d, rng) {
                out.push((irr, m));
            }
        }
    }
    out.sort_by(|(a, ma), (b, mb)| {
        a.degree().cmp(&b.degree()).then_with(|| a.cmp(b)).then(ma.cmp(mb))
    });
    Ok(out)
}

/// Factorization over F_p with a seeded generator for the randomized
/// equal-degree step, so results are reproducible.
pub fn factor_fp(f: &UniPoly<u64>, p: u64, seed: u64) -> Result<Vec<(UniPoly<u64>, u32)>> {
    let ring = PolyRing::new(PrimeField::new(p)?);
    let f = ring.from_coeffs(f.coeffs().iter().map(|c| c % p).collect());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    factor(&ring, &f, &mut rng)
}

/// True iff `f` has no repeated root over the algebraic closure of F_p.
pub fn squarefree_fp(f: &UniPoly<u64>, p: u64) -> Result<bool> {
    let ring = PolyRing::new(PrimeField::new(p)?);
    let f = ring.from_coeffs(f.coeffs().iter().map(|c| c % p).collect());
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let df = ring.derivative(&f);
    if df.is_zero() {
        // f is g(x)^p with g the coefficientwise p-th root; only constants
        // survive as squarefree.
        let root: Vec<u64> = f.coeffs().iter().step_by(p as usize).copied().collect();
        return Ok(ring.from_coeffs(root).degree() == Some(0));
    }
    Ok(ring.is_one(&ring.gcd(&f, &df)))
}

/// Irreducibility via the distinct-degree structure of a squarefree input.
pub fn is_irreducible<F: FiniteField>(ring: &PolyRing<F>, f: &Poly<F>) -> bool {
    let Some(n) = f.degree() else { return false };
    if n == 0 {
        return false;
    }
    let sff = squarefree_decomposition(ring, f);
    if sff.len() != 1 || sff[0].1 != 1 {
        return false;
    }
    let ddf = distinct_degree(ring, f);
    ddf.len() == 1 && ddf[0].1 == n
}

/// All roots of `f` in the field, sorted and without repetition.
pub fn find_roots<F: FiniteField, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    f: &Poly<F>,
    rng: &mut R,
) -> Result<Vec<F::Elem>> {
    let field = ring.field();
    let mut roots: Vec<_> = factor(ring, f, rng)?
        .into_iter()
        .filter(|(g, _)| g.degree() == Some(1))
        .map(|(g, _)| field.neg(&g.coeffs()[0]))
        .collect();
    roots.sort();
    roots.dedup();
    Ok(roots)
}

/// A random monic irreducible polynomial of the given degree.
pub fn random_irreducible<F: FiniteField, R: Rng + ?Sized>(
    ring: &PolyRing<F>,
    degree: usize,
    rng: &mut R,
) -> Poly<F> {
    let field = ring.field();
    loop {
        let mut v: Vec<_> = (0..degree).map(|_| field.random_elem(rng)).collect();
        v.push(field.one());
        let g = ring.from_coeffs(v);
        if is_irreducible(ring, &g) {
            return g;
        }
    }
}
