//! Exact arithmetic: big rationals and p-adic valuations, univariate
//! polynomials over Q and finite fields, factorization over finite fields,
//! bivariate resultants and sparse Laurent polynomials over Q.

mod bivariate;
mod factor;
mod field;
mod laurent;
mod poly;
mod prime;
mod rational;
mod ring;

pub use bivariate::{resultant_y, BiPoly};
pub use factor::{
    distinct_degree, equal_degree, factor, factor_fp, find_roots, is_irreducible,
    random_irreducible, squarefree_decomposition, squarefree_fp,
};
pub use field::{ExtField, Field, FiniteField, PrimeField, Rationals};
pub use laurent::{laurent_min_valp, Monomial, MultiLaurent, INVERTED_VAR};
pub use poly::{PolyRing, UniPoly};
pub use prime::{ensure_prime, is_prime};
pub use rational::{rat, valp, valp_int, valp_uint, Valuation};
pub use ring::CoeffRing;

pub use num_bigint::{BigInt, BigUint};
pub use num_rational::BigRational;
