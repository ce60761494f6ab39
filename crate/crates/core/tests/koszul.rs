//! Koszul homology against direct monomial counts.

use chowcalc::koszul::{
    annihilation_check, is_regular_up_to, koszul_homology, regular_quotient_hilbert_function, tor_dimensions,
    GradedRing, HomogeneousSequence,
};
use chowcalc::poly::{monomials, Polynomial};
use chowcalc::Rational;
use num_bigint::BigInt;
use proptest::prelude::*;

fn var(m: usize, i: usize) -> Polynomial {
    Polynomial::variable(m, i).unwrap()
}

/// Hilbert function of `k[x]/(monomials)` by listing the standard monomials.
fn monomial_quotient_hf(m: usize, gens: &[Vec<u32>], max_degree: u32) -> Vec<u64> {
    (0..=max_degree)
        .map(|t| {
            monomials(m, t)
                .into_iter()
                .filter(|e| !gens.iter().any(|g| g.iter().zip(e).all(|(a, b)| a <= b)))
                .count() as u64
        })
        .collect()
}

fn monomial_sequence() -> impl Strategy<Value = (usize, Vec<Vec<u32>>)> {
    (1usize..=3, 1usize..=3).prop_flat_map(|(m, len)| {
        let exps = proptest::collection::vec(0u32..=2, m).prop_filter("nonconstant", |e| e.iter().sum::<u32>() > 0);
        (Just(m), proptest::collection::vec(exps, len))
    })
}

fn build(m: usize, gens: &[Vec<u32>]) -> HomogeneousSequence {
    let elements = gens.iter().map(|e| Polynomial::monomial(m, e.clone(), Rational::one())).collect();
    HomogeneousSequence::new(GradedRing::new(m).unwrap(), elements).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn h0_is_the_quotient((m, gens) in monomial_sequence()) {
        let report = koszul_homology(&build(m, &gens), 6).unwrap();
        prop_assert_eq!(report.quotient_hilbert_function(), &monomial_quotient_hf(m, &gens, 6)[..]);
        prop_assert!(report.euler_identity_holds());
    }

    #[test]
    fn homology_is_permutation_invariant((m, gens) in monomial_sequence(), rot in 0usize..3) {
        let s = build(m, &gens);
        let len = s.len();
        let order: Vec<usize> = (0..len).map(|i| (i + rot) % len).collect();
        let a = koszul_homology(&s, 5).unwrap();
        let b = koszul_homology(&s.permuted(&order).unwrap(), 5).unwrap();
        prop_assert_eq!(a, b);
    }

    #[test]
    fn ideal_kills_homology((m, gens) in monomial_sequence()) {
        let s = build(m, &gens);
        for k in 1..=s.len() {
            prop_assert!(annihilation_check(&s, k, 6).unwrap());
        }
    }

    #[test]
    fn pure_powers_are_regular(exps in proptest::collection::vec(1u32..=3, 1..=3)) {
        let m = exps.len();
        let gens: Vec<Vec<u32>> = (0..m).map(|i| { let mut e = vec![0; m]; e[i] = exps[i]; e }).collect();
        let s = build(m, &gens);
        let report = koszul_homology(&s, 8).unwrap();
        prop_assert!(report.is_acyclic());
        let series: Vec<BigInt> = regular_quotient_hilbert_function(m, &exps, 8);
        let counted: Vec<BigInt> = monomial_quotient_hf(m, &gens, 8).into_iter().map(BigInt::from).collect();
        prop_assert_eq!(series, counted);
    }
}

#[test]
fn generic_linear_forms_are_regular() {
    // x0 + x1, x0 - x1, x0 + x1 + x2 in three variables
    let m = 3;
    let forms = vec![
        var(m, 0).add(&var(m, 1)).unwrap(),
        var(m, 0).sub(&var(m, 1)).unwrap(),
        var(m, 0).add(&var(m, 1)).unwrap().add(&var(m, 2)).unwrap(),
    ];
    let s = HomogeneousSequence::new(GradedRing::new(m).unwrap(), forms).unwrap();
    assert!(is_regular_up_to(&s, 10).unwrap());
    let report = koszul_homology(&s, 10).unwrap();
    assert_eq!(report.quotient_hilbert_function(), &[1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0]);
}

#[test]
fn dependent_sequences_have_homology() {
    // (x0, x0) in one variable: H_1 = k in degree 1.
    let s = HomogeneousSequence::new(GradedRing::new(1).unwrap(), vec![var(1, 0), var(1, 0)]).unwrap();
    let r = koszul_homology(&s, 4).unwrap();
    assert_eq!(r.dims[1], vec![0, 1, 0, 0, 0]);
    assert!(matches!(tor_dimensions(&s, 4), Err(chowcalc::Error::Precondition(_))));
    // (x0 x1, x0 x2): syzygies A(-3)·(x2, -x1), boundaries x0 times that, so H_1 ≅ k[x1, x2](-3).
    let s = build(3, &[vec![1, 1, 0], vec![1, 0, 1]]);
    let r = koszul_homology(&s, 6).unwrap();
    assert_eq!(r.dims[1], vec![0, 0, 0, 1, 2, 3, 4]);
}

#[test]
fn tor_of_the_maximal_ideal() {
    for n in 0..=4usize {
        let tor = tor_dimensions(&HomogeneousSequence::variables(n + 1).unwrap(), n as u32 + 2).unwrap();
        for (k, row) in tor.iter().enumerate() {
            let total: u64 = row.iter().sum();
            assert_eq!(BigInt::from(total), chowcalc::rational::binomial(n as u64 + 1, k as u64));
            assert_eq!(BigInt::from(row[k]), BigInt::from(total));
        }
    }
}
