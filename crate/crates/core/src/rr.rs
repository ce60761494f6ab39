//! Riemann-Roch on ℙⁿ, curves and surfaces.
//!
//! On ℙⁿ the left side `χ(E)` comes from the K-class tracked alongside the
//! bundle and the right side `∫ ch(E)·td(ℙⁿ)` from the Chow ring; the two are
//! computed without reference to each other. Curves and surfaces are purely
//! numerical contexts: the formulas only consume intersection numbers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::bundle::BundleClass;
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::ktheory::KClass;
use crate::rational::{binomial, binomial_signed, Rational};
use crate::series::TruncatedSeries;

/// A bundle together with its class in `K₀(ℙⁿ)`, when one is known.
///
/// Constructors that correspond to operations in `K₀` (line bundles, tangent
/// bundle, sums, tensors, duals) keep the K-class; the rest drop it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackedBundle {
    pub bundle: BundleClass,
    pub kclass: Option<KClass>,
}

impl TrackedBundle {
    pub fn untracked(bundle: BundleClass) -> Self {
        TrackedBundle { bundle, kclass: None }
    }

    pub fn line(n: usize, d: i64) -> Result<Self> {
        Ok(TrackedBundle { bundle: BundleClass::line(n, d)?, kclass: Some(KClass::line(n, d)?) })
    }

    pub fn tangent(n: usize) -> Result<Self> {
        Ok(TrackedBundle { bundle: BundleClass::tangent(n)?, kclass: Some(KClass::tangent(n)?) })
    }

    pub fn trivial(n: usize, rank: usize) -> Result<Self> {
        Ok(TrackedBundle { bundle: BundleClass::trivial(n, rank)?, kclass: Some(KClass::trivial(n, rank)?) })
    }

    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        Ok(TrackedBundle {
            bundle: self.bundle.direct_sum(&other.bundle)?,
            kclass: both(&self.kclass, &other.kclass).map(|(a, b)| a.add(b)).transpose()?,
        })
    }

    pub fn tensor(&self, other: &Self) -> Result<Self> {
        Ok(TrackedBundle {
            bundle: self.bundle.tensor(&other.bundle)?,
            kclass: both(&self.kclass, &other.kclass).map(|(a, b)| a.mul(b)).transpose()?,
        })
    }

    pub fn dual(&self) -> Result<Self> {
        Ok(TrackedBundle {
            bundle: self.bundle.dual()?,
            kclass: self.kclass.as_ref().map(KClass::dual).transpose()?,
        })
    }
}

fn both<'a, T>(a: &'a Option<T>, b: &'a Option<T>) -> Option<(&'a T, &'a T)> {
    a.as_ref().zip(b.as_ref())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HrrReport {
    #[serde(with = "crate::intser")]
    pub lhs: BigInt,
    pub rhs: Rational,
    pub equal: bool,
}

/// `(H / (1 - e^{-H}))^{n+1}` truncated at `Hⁿ`.
pub fn todd_of_projective_space(n: usize) -> Result<ChowClass> {
    if n < 1 {
        return Err(Error::domain("projective space needs dimension >= 1"));
    }
    Ok(ChowClass::from_series(n, &TruncatedSeries::todd(n)).pow(n as u32 + 1))
}

/// `∫_{ℙⁿ} ch(E)·td(ℙⁿ)`.
pub fn hrr_rhs(bundle: &BundleClass) -> Result<Rational> {
    let td = todd_of_projective_space(bundle.ambient())?;
    Ok(bundle.chern_character().try_mul(&td)?.integral())
}

pub fn hrr_check(e: &TrackedBundle) -> Result<HrrReport> {
    let k = e.kclass.as_ref().ok_or_else(|| {
        Error::Unsupported("bundle has no tracked K-class; the Euler characteristic side is unavailable".into())
    })?;
    if k.ambient() != e.bundle.ambient() {
        return Err(Error::AmbientMismatch { left: k.ambient(), right: e.bundle.ambient() });
    }
    let lhs = k.euler_char();
    let rhs = hrr_rhs(&e.bundle)?;
    let equal = rhs == Rational::from(lhs.clone());
    Ok(HrrReport { lhs, rhs, equal })
}

/// `∫_{ℙⁿ} P(H)·td(ℙⁿ)` by the substitution `y = 1 - e^{-x}`.
///
/// The integral is the residue of `P(x) dx / (1 - e^{-x})^{n+1}` at 0. With
/// `x = -log(1 - y)` and `dx = dy / (1 - y)` it becomes the coefficient of
/// `yⁿ` in `P(-log(1-y)) / (1 - y)`. No Todd series is involved.
pub fn residue_integral(class: &ChowClass) -> Result<Rational> {
    let n = class.ambient();
    let one_minus_y = TruncatedSeries::from_ints(n, &[1, -1]);
    let x_of_y = -&one_minus_y.log()?;
    let composed = class.to_series().compose(&x_of_y)?;
    let integrand = &composed * &one_minus_y.inverse()?;
    Ok(integrand.coeff(n))
}

/// `χ(ℙⁿ, O(d))` from the cohomology: `H⁰` by counting monomials, `Hⁿ` by
/// Serre duality with `ω = O(-n-1)`, nothing in between.
pub fn cohomology_oracle(n: usize, d: i64) -> Result<BigInt> {
    if n < 1 {
        return Err(Error::domain("projective space needs dimension >= 1"));
    }
    let n64 = n as i64;
    Ok(if d >= 0 {
        binomial((n64 + d) as u64, n as u64)
    } else if d >= -n64 {
        BigInt::zero()
    } else {
        let top = binomial((-d - 1) as u64, n as u64);
        if n.is_multiple_of(2) { top } else { -top }
    })
}

/// Cross-check of `χ(ℙⁿ, O(d))` as a generalized binomial `C(n+d, n)`.
pub fn binomial_chi(n: usize, d: i64) -> BigInt {
    binomial_signed(&BigInt::from(n as i64 + d), n as u64)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveContext {
    pub genus: u64,
}

/// `χ(C, E) = deg(E) + r(1 - g)`.
pub fn curve_chi(ctx: &CurveContext, rank: i64, deg: i64) -> Result<BigInt> {
    if rank < 0 {
        return Err(Error::domain(format!("rank {rank} is negative")));
    }
    Ok(BigInt::from(deg) + BigInt::from(rank) * (BigInt::from(1) - BigInt::from(ctx.genus)))
}

/// Intersection numbers of a smooth projective surface on a divisor basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawSurface", into = "RawSurface")]
pub struct SurfaceContext {
    basis_names: Vec<String>,
    pairing: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    c2_integral: i64,
}

#[derive(Serialize, Deserialize)]
struct RawSurface {
    basis: Vec<String>,
    pairing: Vec<Vec<i64>>,
    canonical: Vec<i64>,
    c2: i64,
}

impl TryFrom<RawSurface> for SurfaceContext {
    type Error = Error;
    fn try_from(r: RawSurface) -> Result<Self> {
        SurfaceContext::new(r.basis, r.pairing, r.canonical, r.c2)
    }
}

impl From<SurfaceContext> for RawSurface {
    fn from(s: SurfaceContext) -> Self {
        RawSurface { basis: s.basis_names, pairing: s.pairing, canonical: s.canonical, c2: s.c2_integral }
    }
}

impl SurfaceContext {
    pub fn new(basis_names: Vec<String>, pairing: Vec<Vec<i64>>, canonical: Vec<i64>, c2_integral: i64) -> Result<Self> {
        let m = basis_names.len();
        if pairing.len() != m || pairing.iter().any(|row| row.len() != m) {
            return Err(Error::InconsistentContext(format!("pairing must be {m}x{m}")));
        }
        for i in 0..m {
            for j in 0..i {
                if pairing[i][j] != pairing[j][i] {
                    return Err(Error::InconsistentContext(format!("pairing is not symmetric at ({i}, {j})")));
                }
            }
        }
        if canonical.len() != m {
            return Err(Error::InconsistentContext("canonical class has the wrong length".into()));
        }
        let ctx = SurfaceContext { basis_names, pairing, canonical, c2_integral };
        noether_chi(&ctx)?;
        Ok(ctx)
    }

    /// ℙ² with basis `[H]`, `H² = 1`, `K = -3H`, `∫c₂ = 3`.
    pub fn projective_plane() -> Self {
        SurfaceContext::new(vec!["H".into()], vec![vec![1]], vec![-3], 3).expect("valid data")
    }

    pub fn basis_names(&self) -> &[String] {
        &self.basis_names
    }

    /// The intersection number `a · b`.
    pub fn intersect(&self, a: &[i64], b: &[i64]) -> BigInt {
        let mut acc = BigInt::zero();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                acc += BigInt::from(*x) * BigInt::from(*y) * BigInt::from(self.pairing[i][j]);
            }
        }
        acc
    }

    pub fn canonical(&self) -> &[i64] {
        &self.canonical
    }
}

/// `χ(O_S) = (K² + ∫c₂) / 12`.
pub fn noether_chi(ctx: &SurfaceContext) -> Result<BigInt> {
    let total = ctx.intersect(&ctx.canonical, &ctx.canonical) + BigInt::from(ctx.c2_integral);
    let (q, r) = total.div_rem(&BigInt::from(12));
    if !r.is_zero() {
        return Err(Error::InconsistentContext(format!(
            "K^2 + c2 = {total} is not divisible by 12"
        )));
    }
    Ok(q)
}

/// `χ(S, O(D)) = ½ D·(D - K) + χ(O_S)`; the result must be an integer.
pub fn surface_chi(ctx: &SurfaceContext, divisor: &[i64]) -> Result<Rational> {
    if divisor.len() != ctx.basis_names.len() {
        return Err(Error::domain(format!(
            "divisor has {} coordinates, basis has {}",
            divisor.len(),
            ctx.basis_names.len()
        )));
    }
    let dd = ctx.intersect(divisor, divisor);
    let dk = ctx.intersect(divisor, &ctx.canonical);
    let value = Rational::new(dd - dk, 2)? + Rational::from(noether_chi(ctx)?);
    if !value.is_integer() {
        return Err(Error::InconsistentContext(format!(
            "surface Riemann-Roch gives the non-integer {value}"
        )));
    }
    Ok(value)
}

/// `χ(ℙⁿ, O(d))` for every `d` in a range, with the oracle alongside.
pub fn chi_table(n: usize, dmin: i64, dmax: i64) -> Result<Vec<(i64, BigInt, Rational, BigInt)>> {
    use rayon::prelude::*;
    (dmin..=dmax)
        .into_par_iter()
        .map(|d| {
            let e = TrackedBundle::line(n, d)?;
            let report = hrr_check(&e)?;
            Ok((d, report.lhs, report.rhs, cohomology_oracle(n, d)?))
        })
        .collect()
}
