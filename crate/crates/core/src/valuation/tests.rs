use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;

use super::*;
use crate::exactalg::rat;

const GRID: [(u32, u32); 4] = [(2, 3), (2, 5), (3, 4), (3, 5)];
const PRIMES: [u64; 4] = [5, 7, 11, 13];

fn grid() -> impl Iterator<Item = (u64, u32, u32)> {
    PRIMES
        .into_iter()
        .flat_map(|p| GRID.into_iter().map(move |(a, b)| (p, a, b)))
        .filter(|&(p, a, b)| !(a as u64 * b as u64).is_multiple_of(p))
}

#[test]
fn residue_choices() {
    assert_eq!(solve_jr(5, 2, 3).unwrap(), ResidueChoice { j: 1, r: 1, c: 11 });
    assert_eq!(solve_jr(7, 2, 3).unwrap(), ResidueChoice { j: 1, r: 2, c: 13 });
    assert_eq!(solve_jr(5, 3, 4).unwrap(), ResidueChoice { j: 2, r: 3, c: 29 });
    assert!(solve_jr(5, 2, 5).is_err());
    assert!(matches!(solve_jr(7, 2, 4), Err(Error::NotCoprime { .. })));
    assert!(matches!(solve_jr(9, 2, 5), Err(Error::NotPrime(9))));
}

#[test]
fn residue_choice_congruences_hold_on_grid() {
    for (p, a, b) in grid() {
        let rc = solve_jr(p, a, b).unwrap();
        let (a, b) = (a as u64, b as u64);
        assert_eq!(p % a, rc.j as u64 * b % a);
        assert_eq!(p % b, rc.r as u64 * a % b);
        assert_eq!(p % (a * b), rc.c % (a * b));
    }
}

#[test]
fn exponent_sets() {
    let rc = solve_jr(5, 2, 3).unwrap();
    assert_eq!(mset(5, 2, 3, &rc, 3).unwrap(), vec![3, 5, 7]);
    let rc = solve_jr(7, 2, 3).unwrap();
    assert_eq!(mset(7, 2, 3, &rc, 3).unwrap(), vec![2, 3, 4]);
    for (p, a, b) in grid() {
        let rc = solve_jr(p, a, b).unwrap();
        let ms = mset(p, a, b, &rc, 6).unwrap();
        assert!(power_at_least(p, ms[0], rc.c));
        assert!(ms.windows(2).all(|w| w[0] < w[1]));
        // brute-force membership for every exponent up to the last element
        let brute: Vec<u32> = (1..=*ms.last().unwrap()).filter(|&m| {
            let pm = BigUint::from(p).pow(m);
            pm >= BigUint::from(rc.c) && (pm - rc.c) % (a as u64 * b as u64) == BigUint::from(0u32)
        }).collect();
        assert_eq!(brute, ms);
    }
}

#[test]
fn base_case_counts() {
    let rc = solve_jr(5, 2, 3).unwrap();
    let counts: Vec<(u64, u64)> = set_counts(5, 2, 3, &rc, 3)
        .unwrap()
        .iter()
        .map(|s| (s.p_count.to_u64().unwrap(), s.q_count.to_u64().unwrap()))
        .collect();
    assert_eq!(counts, vec![(4, 4), (1, 1), (0, 1)]);
    assert_eq!(nu_count(5, 2, 3, &rc, 3).unwrap(), -1);
    assert_eq!(nu_brute(5, 2, 3, &rc, 3, 100).unwrap(), -1);
    assert!(nu_count(5, 2, 3, &rc, 4).is_err());
    assert!(matches!(nu_brute(5, 2, 3, &rc, 7, 100), Err(Error::CapExceeded { .. })));

    let rc = solve_jr(7, 2, 3).unwrap();
    assert_eq!(nu_count(7, 2, 3, &rc, 2).unwrap(), -1);
    assert_eq!(nu_brute(7, 2, 3, &rc, 2, 100).unwrap(), -1);
}

#[test]
fn brute_matches_counting_on_grid() {
    for (p, a, b) in grid() {
        let rc = solve_jr(p, a, b).unwrap();
        for m in mset(p, a, b, &rc, 5).unwrap() {
            let n = chain_length(p, a, b, &rc, m).unwrap();
            if n > BigUint::from(100_000u32) {
                break;
            }
            assert_eq!(nu_count(p, a, b, &rc, m).unwrap(), nu_brute(p, a, b, &rc, m, 100_000).unwrap(), "{p} {a} {b} {m}");
        }
    }
}

#[test]
fn set_inequalities_on_grid() {
    for (p, a, b) in grid() {
        let rc = solve_jr(p, a, b).unwrap();
        let ms = mset(p, a, b, &rc, 5).unwrap();
        for &m in &ms {
            for s in set_counts(p, a, b, &rc, m).unwrap() {
                assert!(s.p_count <= s.q_count);
                if ms.contains(&s.m_prime) {
                    assert!(s.gap() <= -1);
                }
            }
        }
    }
}

#[test]
fn base_case_exact_coefficient() {
    let mut expected = BigRational::one();
    for n in 0..20i64 {
        expected *= rat(-2 * (3 * n + 1), 6 * n + 11);
    }
    let rc = solve_jr(5, 2, 3).unwrap();
    assert_eq!(exact_coefficient(2, 3, &BigInt::from(1), &rc, 19).unwrap(), expected);
    let r = probe(5, 2, 3, 1, 1, DEFAULT_EXACT_CAP).unwrap();
    assert_eq!((r[0].m, r[0].n.to_u64(), r[0].nu, r[0].bound_ok), (3, Some(19), -1, true));
    assert_eq!(r[0].c_exact.as_ref(), Some(&expected));

    let r = probe(7, 2, 3, 1, 1, DEFAULT_EXACT_CAP).unwrap();
    assert_eq!((r[0].m, r[0].n.to_u64(), r[0].nu, r[0].bound_ok), (2, Some(6), -1, true));
}

#[test]
fn second_probe() {
    let r = probe(5, 2, 3, 1, 2, DEFAULT_EXACT_CAP).unwrap();
    assert_eq!((r[1].m, r[1].n.to_u64()), (5, Some(519)));
    assert!(r[1].nu <= -2);
    let rc = solve_jr(5, 2, 3).unwrap();
    assert_eq!(r[1].nu, nu_brute(5, 2, 3, &rc, 5, 1000).unwrap());
}

#[test]
fn probe_rejects_non_unit_alpha() {
    assert!(probe(5, 2, 3, 10, 1, 10).is_err());
}

#[test]
fn crosschecks() {
    assert!(crosscheck_reduction(5, 2, 3, 1, 1).unwrap());
    assert!(crosscheck_reduction(7, 2, 3, 1, 1).unwrap());
    assert!(crosscheck_reduction(11, 3, 4, 2, 1).unwrap());
    assert!(matches!(crosscheck_reduction_with(5, 2, 3, 1, 2, 100), Err(Error::CapExceeded { .. })));
}

#[test]
fn large_exponents_use_closed_form() {
    let rc = solve_jr(13, 3, 5).unwrap();
    let ms = mset(13, 3, 5, &rc, 200).unwrap();
    let m = *ms.last().unwrap();
    let nu = nu_count(13, 3, 5, &rc, m).unwrap();
    assert!(nu <= -200);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn sieve_product_matches_naive(idx in 0usize..10, alpha in prop_oneof![-40i64..-1, 1i64..40], n_max in 0u64..40) {
        let (p, a, b) = grid().nth(idx).unwrap();
        let rc = solve_jr(p, a, b).unwrap();
        let alpha = BigInt::from(alpha);
        prop_assert_eq!(
            exact_coefficient(a, b, &alpha, &rc, n_max).unwrap(),
            exact_coefficient_naive(a, b, &alpha, &rc, n_max)
        );
    }

    #[test]
    fn sieve_product_with_large_alpha(alpha in 1u64..u64::MAX, n_max in 0u64..8) {
        let rc = solve_jr(7, 2, 5).unwrap();
        let alpha = BigInt::from(alpha);
        prop_assert_eq!(
            exact_coefficient(2, 5, &alpha, &rc, n_max).unwrap(),
            exact_coefficient_naive(2, 5, &alpha, &rc, n_max)
        );
    }
}
