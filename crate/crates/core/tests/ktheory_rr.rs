//! K₀(ℙⁿ) ring structure and Riemann-Roch against independent oracles.

use chowcalc::bundle::BundleClass;
use chowcalc::checks::random_tracked;
use chowcalc::ktheory::KClass;
use chowcalc::rational::binomial;
use chowcalc::rr::{cohomology_oracle, hrr_check, hrr_rhs, residue_integral, TrackedBundle};
use chowcalc::{ChowClass, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn kclass() -> impl Strategy<Value = KClass> {
    (1usize..=6).prop_flat_map(|n| {
        proptest::collection::vec(-4i64..=4, n + 1).prop_map(move |c| KClass::from_ints(n, &c).unwrap())
    })
}

fn kpair() -> impl Strategy<Value = (KClass, KClass)> {
    (1usize..=6).prop_flat_map(|n| {
        let v = move || proptest::collection::vec(-4i64..=4, n + 1).prop_map(move |c| KClass::from_ints(n, &c).unwrap());
        (v(), v())
    })
}

/// `h⁰ - h¹ + ...` of `O(d)` by counting monomials and Serre duality,
/// written out independently of the library oracle.
fn chi_line_by_counting(n: usize, d: i64) -> BigInt {
    let n = n as i64;
    if d >= 0 {
        binomial((n + d) as u64, n as u64)
    } else if d < -n {
        let c = binomial((-d - 1) as u64, n as u64);
        if n % 2 == 0 { c } else { -c }
    } else {
        BigInt::from(0)
    }
}

#[test]
fn euler_characteristic_grid() {
    for n in 1..=8 {
        for d in -(n as i64) - 6..=12 {
            let want = chi_line_by_counting(n, d);
            assert_eq!(KClass::line(n, d).unwrap().euler_char(), want, "O({d}) on P^{n}");
            assert_eq!(cohomology_oracle(n, d).unwrap(), want);
            assert_eq!(hrr_rhs(&BundleClass::line(n, d).unwrap()).unwrap(), Rational::from(want));
        }
    }
}

#[test]
fn tangent_class_matches_euler_sequence() {
    for n in 1..=6 {
        let t = KClass::tangent(n).unwrap();
        let euler = KClass::line(n, 1).unwrap().scale(&BigInt::from(n + 1)).sub(&KClass::one(n).unwrap()).unwrap();
        assert_eq!(t, euler);
        assert_eq!(t.ch(), BundleClass::tangent(n).unwrap().chern_character());
        // χ(T) = h⁰(T) = (n+1)² - 1
        assert_eq!(t.euler_char(), BigInt::from((n + 1) * (n + 1) - 1));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ch_is_a_ring_homomorphism((a, b) in kpair()) {
        prop_assert_eq!(a.add(&b).unwrap().ch(), &a.ch() + &b.ch());
        prop_assert_eq!(a.mul(&b).unwrap().ch(), &a.ch() * &b.ch());
        prop_assert_eq!(a.euler_char() + b.euler_char(), a.add(&b).unwrap().euler_char());
    }

    #[test]
    fn dual_is_an_involution(a in kclass()) {
        let d = a.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), a.clone());
        prop_assert_eq!(d.rank(), a.rank());
        let n = a.ambient();
        for k in 0..=n {
            let sign = if k % 2 == 0 { Rational::one() } else { Rational::from(-1) };
            prop_assert_eq!(d.ch().part(k), &sign * &a.ch().part(k));
        }
    }

    #[test]
    fn euler_char_is_the_integral(a in kclass()) {
        let rhs = residue_integral(&a.ch()).unwrap();
        prop_assert_eq!(Rational::from(a.euler_char()), rhs);
    }

    #[test]
    fn residue_matches_todd_integral(n in 1usize..=6, cs in proptest::collection::vec(-5i64..=5, 7)) {
        let class = ChowClass::truncating(n, cs.into_iter().map(Rational::from));
        let td = chowcalc::rr::todd_of_projective_space(n).unwrap();
        prop_assert_eq!(residue_integral(&class).unwrap(), (&class * &td).integral());
    }

    #[test]
    fn hrr_on_tracked_bundles(seed in any::<u64>(), n in 1usize..=5) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let e = random_tracked(&mut rng, n, 3).unwrap();
        let report = hrr_check(&e).unwrap();
        prop_assert!(report.equal, "{:?}", report);
    }
}

#[test]
fn hrr_needs_a_tracked_class() {
    let det = TrackedBundle::untracked(BundleClass::tangent(2).unwrap().determinant().unwrap());
    assert!(matches!(hrr_check(&det), Err(chowcalc::Error::Unsupported(_))));
}
