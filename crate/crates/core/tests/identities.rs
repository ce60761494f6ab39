//! Characteristic-class identities on random bundles.

use chowcalc::bundle::BundleClass;
use chowcalc::checks::wedge_identity_sides;
use chowcalc::rational::binomial;
use chowcalc::{ChowClass, Rational};
use num_bigint::BigInt;
use proptest::prelude::*;

fn bundle_on(n: usize, max_rank: usize) -> impl Strategy<Value = BundleClass> {
    (0..=max_rank).prop_flat_map(move |rank| {
        proptest::collection::vec(-3i64..=3, rank.min(n)).prop_map(move |cs| {
            let parts = std::iter::once(Rational::one()).chain(cs.into_iter().map(Rational::from));
            BundleClass::new(rank, ChowClass::truncating(n, parts)).unwrap()
        })
    })
}

fn pair(max_rank: usize) -> impl Strategy<Value = (BundleClass, BundleClass)> {
    (1usize..=6).prop_flat_map(move |n| (bundle_on(n, max_rank), bundle_on(n, max_rank)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn whitney_and_additivity((e, f) in pair(4)) {
        let s = e.direct_sum(&f).unwrap();
        prop_assert_eq!(s.chern(), &(e.chern() * f.chern()));
        prop_assert_eq!(s.chern_character(), &e.chern_character() + &f.chern_character());
        prop_assert_eq!(s.todd(), &e.todd() * &f.todd());
        prop_assert_eq!(s.rank(), e.rank() + f.rank());
    }

    #[test]
    fn ch_is_multiplicative((e, f) in pair(3)) {
        let t = e.tensor(&f).unwrap();
        prop_assert_eq!(t.chern_character(), &e.chern_character() * &f.chern_character());
        prop_assert_eq!(t.rank(), e.rank() * f.rank());
    }

    #[test]
    fn segre_inverts_and_dual_involutes((e, _) in pair(4)) {
        let n = e.ambient();
        prop_assert_eq!(&e.segre() * e.chern(), ChowClass::one(n));
        let d = e.dual().unwrap();
        prop_assert_eq!(d.dual().unwrap(), e.clone());
        // ch(E∨) flips odd degrees.
        let (ch, chd) = (e.chern_character(), d.chern_character());
        for k in 0..=n {
            let sign = if k % 2 == 0 { Rational::one() } else { Rational::from(-1) };
            prop_assert_eq!(chd.part(k), &sign * &ch.part(k));
        }
    }

    #[test]
    fn wedge_sum_identity((e, _) in pair(4)) {
        let (lhs, rhs) = wedge_identity_sides(&e).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn newton_and_root_paths_agree((e, _) in pair(4)) {
        prop_assert_eq!(e.chern_character_by_roots().unwrap(), e.chern_character());
        prop_assert_eq!(e.todd_by_roots().unwrap(), e.todd());
    }

    #[test]
    fn determinant_and_top_wedge((e, f) in pair(3)) {
        let det = e.determinant().unwrap();
        prop_assert_eq!(det.rank(), 1);
        prop_assert_eq!(det.chern().part(1), e.chern().part(1));
        prop_assert_eq!(e.wedge(e.rank() as i64).unwrap(), det);
        // det(E ⊕ F) = det E ⊗ det F
        let lhs = e.direct_sum(&f).unwrap().determinant().unwrap();
        let rhs = e.determinant().unwrap().tensor(&f.determinant().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn exterior_and_symmetric_ranks((e, _) in pair(4), k in 0u64..=3) {
        let r = e.rank() as u64;
        let multisets = if r == 0 { BigInt::from(u8::from(k == 0)) } else { binomial(r + k - 1, k) };
        prop_assert_eq!(BigInt::from(e.wedge(k as i64).unwrap().rank()), binomial(r, k));
        prop_assert_eq!(BigInt::from(e.sym(k as i64).unwrap().rank()), multisets);
    }
}

/// `∧²(E ⊕ F) = ∧²E ⊕ (E ⊗ F) ⊕ ∧²F`, computed through the root machinery each way.
#[test]
fn wedge_square_of_sum() {
    let n = 3;
    let e = BundleClass::tangent(n).unwrap();
    let f = BundleClass::line(n, 2).unwrap().direct_sum(&BundleClass::line(n, -1).unwrap()).unwrap();
    let lhs = e.direct_sum(&f).unwrap().wedge(2).unwrap();
    let rhs = e
        .wedge(2)
        .unwrap()
        .direct_sum(&e.tensor(&f).unwrap())
        .unwrap()
        .direct_sum(&f.wedge(2).unwrap())
        .unwrap();
    assert_eq!(lhs, rhs);
}

/// `Sym²(O(a) ⊕ O(b)) = O(2a) ⊕ O(a+b) ⊕ O(2b)`.
#[test]
fn sym_square_of_lines() {
    let n = 4;
    let l = |d| BundleClass::line(n, d).unwrap();
    let got = l(1).direct_sum(&l(-3)).unwrap().sym(2).unwrap();
    let want = l(2).direct_sum(&l(-2)).unwrap().direct_sum(&l(-6)).unwrap();
    assert_eq!(got, want);
}
