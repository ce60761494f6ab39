//! Invariant suites over every module, run by `chowcalc check`.
//!
//! Random inputs come from a seeded ChaCha stream, so a failing case is
//! reproducible from the seed alone.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::bundle::BundleClass;
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::koszul::{
    annihilation_check, koszul_homology, regular_quotient_hilbert_function, tor_dimensions, GradedRing,
    HomogeneousSequence,
};
use crate::ktheory::{one_minus_xi_power, KClass};
use crate::linalg::rank_dense;
use crate::poly::Polynomial;
use crate::rational::{binomial, Rational};
use crate::rr::{
    cohomology_oracle, curve_chi, hrr_check, noether_chi, residue_integral, surface_chi, todd_of_projective_space,
    CurveContext, SurfaceContext, TrackedBundle,
};
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, Serialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: usize,
}

/// A bundle of rank `0..=max_rank` with small random Chern classes.
pub fn random_bundle<R: Rng>(rng: &mut R, ambient: usize, max_rank: usize) -> BundleClass {
    let rank = rng.gen_range(0..=max_rank);
    let mut parts = vec![Rational::one()];
    for _ in 1..=rank.min(ambient) {
        parts.push(Rational::from(rng.gen_range(-3i64..=3)));
    }
    BundleClass::new(rank, ChowClass::truncating(ambient, parts)).expect("valid by construction")
}

/// A bundle built from line bundles by sums, tensors and duals, with its K-class.
pub fn random_tracked<R: Rng>(rng: &mut R, ambient: usize, depth: u32) -> Result<TrackedBundle> {
    if depth == 0 || rng.gen_bool(0.3) {
        return TrackedBundle::line(ambient, rng.gen_range(-4..=4));
    }
    match rng.gen_range(0..3) {
        0 => random_tracked(rng, ambient, depth - 1)?.direct_sum(&random_tracked(rng, ambient, depth - 1)?),
        1 => random_tracked(rng, ambient, depth - 1)?.tensor(&random_tracked(rng, ambient, depth - 1)?),
        _ => random_tracked(rng, ambient, depth - 1)?.dual(),
    }
}

fn ensure(cond: bool, what: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Invariant(what()))
    }
}

/// Σ (-1)^k ch(∧^k E) and c_r(E∨)·td(E∨)^{-1}.
pub fn wedge_identity_sides(e: &BundleClass) -> Result<(ChowClass, ChowClass)> {
    let n = e.ambient();
    let r = e.rank();
    let mut lhs = ChowClass::zero(n);
    for k in 0..=r {
        let ch = e.wedge(k as i64)?.chern_character();
        lhs = if k % 2 == 0 { &lhs + &ch } else { &lhs - &ch };
    }
    let dual = e.dual()?;
    let rhs = dual.chern_class(r).try_mul(&dual.todd().inverse()?)?;
    Ok((lhs, rhs))
}

pub fn exact_core(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..cases {
        let order = rng.gen_range(0..=12);
        let coeffs = std::iter::once(Rational::one())
            .chain((0..order).map(|_| Rational::new(rng.gen_range(-9i64..10), rng.gen_range(1i64..6)).unwrap()));
        let s = TruncatedSeries::from_coeffs(order, coeffs);
        ensure(s.log()?.exp()? == s, || format!("exp(log(s)) ≠ s for {s:?}"))?;
        let inv = s.inverse()?;
        ensure(&s * &inv == TruncatedSeries::one(order), || format!("s·s⁻¹ ≠ 1 for {s:?}"))?;

        let n = rng.gen_range(1..=6);
        let h = ChowClass::hyperplane(n);
        ensure(h.pow(n as u32 + 1).is_zero(), || format!("H^{} ≠ 0 on P^{n}", n + 1))?;
        let a = ChowClass::truncating(n, (0..=n).map(|_| Rational::from(rng.gen_range(-5i64..6))));
        let b = ChowClass::truncating(n, (0..=n).map(|_| Rational::from(rng.gen_range(-5i64..6))));
        ensure(&a * &b == &b * &a, || "Chow product not commutative".into())?;
        ensure((&a + &b).integral() == &a.integral() + &b.integral(), || "integral not additive".into())?;
    }
    Ok(CheckOutcome { name: "exact-core".into(), cases })
}

pub fn bundle_identities(seed: u64, cases: usize) -> Result<CheckOutcome> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for case in 0..cases {
        let n = rng.gen_range(1..=6);
        let e = random_bundle(&mut rng, n, 4);
        let f = random_bundle(&mut rng, n, 4);
        let ctx = |what: &str| format!("case {case} ({what}) E={e:?} F={f:?}");

        let sum = e.direct_sum(&f)?;
        ensure(sum.chern() == &(e.chern() * f.chern()), || ctx("Whitney"))?;
        ensure(sum.chern_character() == &e.chern_character() + &f.chern_character(), || ctx("ch additive"))?;
        ensure(sum.todd() == &e.todd() * &f.todd(), || ctx("td multiplicative"))?;
        ensure(&e.segre() * e.chern() == ChowClass::one(n), || ctx("segre inverse"))?;
        let dual = e.dual()?;
        ensure(dual.dual()? == e, || ctx("dual involution"))?;
        for k in 0..=n {
            let sign = if k % 2 == 0 { Rational::one() } else { Rational::from(-1) };
            ensure(dual.chern().part(k) == &sign * &e.chern().part(k), || ctx("dual signs"))?;
        }
        let (lhs, rhs) = wedge_identity_sides(&e)?;
        ensure(lhs == rhs, || ctx("wedge identity"))?;
        ensure(e.chern_character_by_roots()? == e.chern_character(), || ctx("ch root path"))?;
        ensure(e.todd_by_roots()? == e.todd(), || ctx("td root path"))?;
        ensure(e.sym(1)? == e && e.wedge(1)? == e, || ctx("first powers"))?;
        ensure(e.wedge(e.rank() as i64)? == e.determinant()?, || ctx("top wedge"))?;
        ensure(e.degree() == e.determinant()?.degree(), || ctx("degree of det"))?;

        // Tensor products only for small ranks to keep the root count down.
        let g = random_bundle(&mut rng, n, 3);
        let h = random_bundle(&mut rng, n, 3);
        let t = g.tensor(&h)?;
        ensure(t.chern_character() == &g.chern_character() * &h.chern_character(), || {
            format!("case {case} ch multiplicative G={g:?} H={h:?}")
        })?;
    }
    Ok(CheckOutcome { name: "bundle-calculus".into(), cases })
}

pub fn k_theory(max_ambient: usize) -> Result<CheckOutcome> {
    let mut cases = 0;
    for n in 1..=max_ambient {
        ensure(one_minus_xi_power(n, n + 1)?.is_zero(), || format!("(1-ξ)^{} ≠ 0 on P^{n}", n + 1))?;
        ensure(KClass::xi(n)?.mul(&KClass::xi_inverse(n)?)? == KClass::one(n)?, || format!("ξ·ξ⁻¹ ≠ 1 on P^{n}"))?;
        let rows: Vec<Vec<Rational>> = (0..=n).map(|k| KClass::line(n, k as i64).map(|x| x.ch().parts().to_vec())).collect::<Result<_>>()?;
        ensure(rank_dense(&rows) == n + 1, || format!("ch matrix on P^{n} is singular"))?;
        // χ((1-ξ)^{n+1} ξ^m) computed without reduction: an (n+1)-st finite difference.
        for m in 0..=n as u64 {
            let diff: BigInt = (0..=n as u64 + 1)
                .map(|j| {
                    let c = binomial(n as u64 + 1, j) * binomial(n as u64 + j + m, n as u64);
                    if j % 2 == 0 { c } else { -c }
                })
                .sum();
            ensure(diff == BigInt::from(0), || format!("χ((1-ξ)^{}ξ^{m}) ≠ 0", n + 1))?;
        }
        cases += 1;
    }
    Ok(CheckOutcome { name: "k-theory".into(), cases })
}

pub fn riemann_roch(max_ambient: usize, seed: u64, tracked_cases: usize) -> Result<CheckOutcome> {
    let mut cases = 0;
    for n in 1..=max_ambient {
        ensure(todd_of_projective_space(n)? == BundleClass::tangent(n)?.todd(), || format!("td(P^{n}) paths differ"))?;
        for d in -(n as i64) - 5..=10 {
            let report = hrr_check(&TrackedBundle::line(n, d)?)?;
            let oracle = cohomology_oracle(n, d)?;
            ensure(report.equal && report.lhs == oracle, || format!("HRR fails for O({d}) on P^{n}: {report:?} vs {oracle}"))?;
            if n <= 6 {
                let residue = residue_integral(&BundleClass::line(n, d)?.chern_character())?;
                ensure(residue == report.rhs, || format!("residue path differs for O({d}) on P^{n}"))?;
            }
            cases += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..tracked_cases {
        let n = rng.gen_range(1..=max_ambient.min(6));
        let e = random_tracked(&mut rng, n, 3)?;
        let report = hrr_check(&e)?;
        ensure(report.equal, || format!("HRR fails for {:?}: {report:?}", e.bundle))?;
        cases += 1;
    }
    let p1 = CurveContext { genus: 0 };
    for d in -6..=6 {
        ensure(curve_chi(&p1, 1, d)? == cohomology_oracle(1, d)?, || format!("curve χ(O({d})) on P^1"))?;
    }
    let p2 = SurfaceContext::projective_plane();
    ensure(noether_chi(&p2)? == BigInt::from(1), || "Noether on P^2".into())?;
    for d in -8..=8 {
        ensure(surface_chi(&p2, &[d])? == Rational::from(cohomology_oracle(2, d)?), || format!("surface χ(O({d})) on P^2"))?;
    }
    Ok(CheckOutcome { name: "riemann-roch".into(), cases })
}

fn random_monomial<R: Rng>(rng: &mut R, m: usize) -> Polynomial {
    loop {
        let exps: Vec<u32> = (0..m).map(|_| rng.gen_range(0..=2)).collect();
        if exps.iter().sum::<u32>() > 0 {
            return Polynomial::monomial(m, exps, Rational::one());
        }
    }
}

pub fn koszul(seed: u64, random_cases: usize) -> Result<CheckOutcome> {
    let mut cases = 0;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut regular = Vec::new();
    for m in 1..=3 {
        regular.push(HomogeneousSequence::variables(m)?);
        let ring = GradedRing::new(m)?;
        let powers = (0..m).map(|i| Ok(ring.variable(i)?.pow(rng.gen_range(1..=3)))).collect::<Result<_>>()?;
        regular.push(HomogeneousSequence::new(ring, powers)?);
        // Generic linear forms: random coefficient matrix, kept only when invertible.
        loop {
            let rows: Vec<Vec<Rational>> = (0..m)
                .map(|_| (0..m).map(|_| Rational::new(rng.gen_range(-5i64..6), rng.gen_range(1i64..4)).unwrap()).collect())
                .collect();
            if rank_dense(&rows) < m {
                continue;
            }
            let forms = rows
                .iter()
                .map(|row| {
                    row.iter().enumerate().try_fold(Polynomial::zero(m), |acc, (i, c)| acc.add(&ring.variable(i)?.scale(c)))
                })
                .collect::<Result<Vec<_>>>()?;
            regular.push(HomogeneousSequence::new(ring, forms)?);
            break;
        }
    }
    for s in &regular {
        let report = koszul_homology(s, 10)?;
        ensure(report.is_acyclic(), || format!("regular sequence {:?} shows homology", s.elements()))?;
        ensure(report.euler_identity_holds(), || "Euler identity".into())?;
        let hf = regular_quotient_hilbert_function(s.ring().num_vars(), s.degrees(), 10);
        let got: Vec<BigInt> = report.dims[0].iter().map(|&x| BigInt::from(x)).collect();
        ensure(got == hf, || format!("Hilbert function of {:?}", s.elements()))?;
        cases += 1;
    }
    for n in 0..=3 {
        let tor = tor_dimensions(&HomogeneousSequence::variables(n + 1)?, n as u32 + 2)?;
        for (k, row) in tor.iter().enumerate() {
            for (t, &v) in row.iter().enumerate() {
                let want = if t == k { binomial(n as u64 + 1, k as u64) } else { BigInt::from(0) };
                ensure(BigInt::from(v) == want, || format!("Tor_{k} in degree {t} for n={n}"))?;
            }
        }
        cases += 1;
    }
    for _ in 0..random_cases {
        let m = rng.gen_range(1..=3);
        let len = rng.gen_range(1..=3);
        let s = HomogeneousSequence::new(GradedRing::new(m)?, (0..len).map(|_| random_monomial(&mut rng, m)).collect())?;
        let report = koszul_homology(&s, 6)?;
        ensure(report.euler_identity_holds(), || format!("Euler identity for {:?}", s.elements()))?;
        for k in 1..=len {
            ensure(annihilation_check(&s, k, 6)?, || format!("I·H_{k} ≠ 0 for {:?}", s.elements()))?;
        }
        cases += 1;
    }
    Ok(CheckOutcome { name: "koszul".into(), cases })
}

/// Every suite in turn; stops at the first violation.
pub fn run_all(seed: u64) -> Result<Vec<CheckOutcome>> {
    Ok(vec![
        exact_core(seed, 100)?,
        bundle_identities(seed, 50)?,
        k_theory(8)?,
        riemann_roch(8, seed, 50)?,
        koszul(seed, 20)?,
    ])
}
