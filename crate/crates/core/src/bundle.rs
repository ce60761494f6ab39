//! Classes of vector bundles on ℙⁿ and their characteristic classes.
//!
//! A bundle is recorded by its rank and total Chern class only. Operations
//! that act on Chern roots (dual, determinant, exterior and symmetric powers,
//! tensor products) build the product `Π (1 + ℓ)` over the new roots `ℓ` in
//! [`crate::symroots`], reduce it to elementary symmetric functions and
//! substitute the input Chern classes.

use serde::{Deserialize, Serialize};

use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::rational::{binomial, factorial, Rational};
use crate::series::TruncatedSeries;
use crate::symroots::{evaluate_universal, k_multisets, k_subsets, reduce_to_elementaries, MultiPoly, RootSystem};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawBundle", into = "RawBundle")]
pub struct BundleClass {
    rank: usize,
    chern: ChowClass,
}

#[derive(Serialize, Deserialize)]
struct RawBundle {
    ambient: usize,
    rank: usize,
    chern: Vec<Rational>,
}

impl TryFrom<RawBundle> for BundleClass {
    type Error = Error;
    fn try_from(raw: RawBundle) -> Result<Self> {
        BundleClass::new(raw.rank, ChowClass::new(raw.ambient, raw.chern)?)
    }
}

impl From<BundleClass> for RawBundle {
    fn from(b: BundleClass) -> Self {
        RawBundle { ambient: b.ambient(), rank: b.rank, chern: b.chern.parts().to_vec() }
    }
}

impl BundleClass {
    /// Checks that `c_0 = 1` and `c_k = 0` for `k > rank`.
    pub fn new(rank: usize, chern: ChowClass) -> Result<Self> {
        if !chern.part(0).is_one() {
            return Err(Error::domain(format!(
                "total Chern class must start with 1, got {}",
                chern.part(0)
            )));
        }
        for k in rank + 1..=chern.ambient() {
            if !chern.part(k).is_zero() {
                return Err(Error::domain(format!("c_{k} must vanish for a bundle of rank {rank}")));
            }
        }
        Ok(BundleClass { rank, chern })
    }

    /// `O(d)`, with `c = 1 + dH`.
    pub fn line(ambient: usize, d: i64) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::domain("ambient dimension must be positive"));
        }
        Ok(BundleClass { rank: 1, chern: ChowClass::from_ints(ambient, &[1, d]) })
    }

    /// The trivial bundle of rank `r`.
    pub fn trivial(ambient: usize, rank: usize) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::domain("ambient dimension must be positive"));
        }
        Ok(BundleClass { rank, chern: ChowClass::one(ambient) })
    }

    /// The rank-0 bundle.
    pub fn zero(ambient: usize) -> Result<Self> {
        Self::trivial(ambient, 0)
    }

    /// `T_{ℙⁿ}`, with `c_k = C(n+1, k) H^k` from the Euler sequence.
    pub fn tangent(ambient: usize) -> Result<Self> {
        if ambient < 1 {
            return Err(Error::domain("tangent bundle needs ambient dimension >= 1"));
        }
        let parts = (0..=ambient as u64).map(|k| Rational::from(binomial(ambient as u64 + 1, k)));
        Ok(BundleClass { rank: ambient, chern: ChowClass::truncating(ambient, parts) })
    }

    pub fn ambient(&self) -> usize {
        self.chern.ambient()
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The total Chern class.
    pub fn chern(&self) -> &ChowClass {
        &self.chern
    }

    /// `c_k(E)` as a class of pure codimension `k`.
    pub fn chern_class(&self, k: usize) -> ChowClass {
        self.chern.graded_part(k)
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        Ok(())
    }

    /// Whitney sum: `c(E ⊕ F) = c(E)·c(F)`.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(BundleClass { rank: self.rank + other.rank, chern: self.chern.try_mul(&other.chern)? })
    }

    /// Roots `-α_i`.
    pub fn dual(&self) -> Result<Self> {
        let r = self.rank;
        let forms = (0..r)
            .map(|i| {
                let mut f = vec![0; r];
                f[i] = -1;
                f
            })
            .collect();
        from_root_forms(self.ambient(), &[self], forms)
    }

    /// Single root `α_1 + ... + α_r`.
    pub fn determinant(&self) -> Result<Self> {
        from_root_forms(self.ambient(), &[self], vec![vec![1; self.rank]])
    }

    /// Roots `α_{i_1} + ... + α_{i_k}` over `k`-subsets; rank 0 when `k > rank`.
    pub fn wedge(&self, k: i64) -> Result<Self> {
        let k = usize::try_from(k).map_err(|_| Error::domain(format!("wedge power {k} is negative")))?;
        let forms = k_subsets(self.rank, k).into_iter().map(|s| indicator(self.rank, &s)).collect();
        from_root_forms(self.ambient(), &[self], forms)
    }

    /// Roots `α_{i_1} + ... + α_{i_k}` over `k`-multisets.
    pub fn sym(&self, k: i64) -> Result<Self> {
        let k = usize::try_from(k).map_err(|_| Error::domain(format!("symmetric power {k} is negative")))?;
        let forms = k_multisets(self.rank, k).into_iter().map(|s| indicator(self.rank, &s)).collect();
        from_root_forms(self.ambient(), &[self], forms)
    }

    /// Roots `α_i + β_j`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let (r, s) = (self.rank, other.rank);
        let mut forms = Vec::with_capacity(r * s);
        for i in 0..r {
            for j in 0..s {
                let mut f = vec![0; r + s];
                f[i] = 1;
                f[r + j] = 1;
                forms.push(f);
            }
        }
        from_root_forms(self.ambient(), &[self, other], forms)
    }

    /// Power sums `p_0 = r, p_1, ..., p_n` of the Chern roots, as coefficients
    /// of `H^k`, via Newton's identities.
    pub fn power_sums(&self) -> Vec<Rational> {
        let n = self.ambient();
        let e = |k: usize| -> Rational {
            if k <= self.rank {
                self.chern.part(k)
            } else {
                Rational::zero()
            }
        };
        let mut p = vec![Rational::from(self.rank); n + 1];
        for k in 1..=n {
            let sign = |i: usize| if i % 2 == 1 { Rational::one() } else { Rational::from(-1) };
            let mut acc = sign(k) * e(k) * Rational::from(k);
            for i in 1..k {
                acc += sign(i) * e(i) * &p[k - i];
            }
            p[k] = acc;
        }
        p
    }

    /// `ch(E) = r + Σ p_k / k!`.
    pub fn chern_character(&self) -> ChowClass {
        let p = self.power_sums();
        ChowClass::truncating(
            self.ambient(),
            p.iter()
                .enumerate()
                .map(|(k, pk)| pk / &Rational::from(factorial(k as u64))),
        )
    }

    /// `td(E) = exp(Σ q_k p_k)` where `Σ q_k x^k = log(x / (1 - e^{-x}))`.
    pub fn todd(&self) -> ChowClass {
        let n = self.ambient();
        let q = TruncatedSeries::todd(n).log().expect("todd series has constant term 1");
        let p = self.power_sums();
        let log_td = ChowClass::truncating(n, (0..=n).map(|k| if k == 0 { Rational::zero() } else { q.coeff(k) * &p[k] }));
        log_td.exp().expect("zero constant term")
    }

    /// Inverse of the total Chern class.
    pub fn segre(&self) -> ChowClass {
        self.chern.inverse().expect("total Chern class starts with 1")
    }

    /// `deg(E)`: the coefficient of `H` in `c_1(E)`.
    pub fn degree(&self) -> Rational {
        self.chern.part(1)
    }

    /// `Σ exp(α_i)` expanded over explicit roots; independent of [`Self::chern_character`].
    pub fn chern_character_by_roots(&self) -> Result<ChowClass> {
        let exp = TruncatedSeries::x(self.ambient()).exp()?;
        self.symmetric_root_sum(&exp)
    }

    /// `Π α_i / (1 - e^{-α_i})` expanded over explicit roots; independent of [`Self::todd`].
    pub fn todd_by_roots(&self) -> Result<ChowClass> {
        let n = self.ambient();
        let t = n as u32;
        let sys = RootSystem::single("E", self.rank);
        let series = TruncatedSeries::todd(n);
        let mut prod = MultiPoly::one(&sys, t);
        for i in 0..self.rank {
            prod = prod.mul(&MultiPoly::root(&sys, t, 0, i)?.apply_series(&series)?);
        }
        evaluate_universal(&reduce_to_elementaries(&prod)?, &[self])
    }

    fn symmetric_root_sum(&self, s: &TruncatedSeries) -> Result<ChowClass> {
        let n = self.ambient();
        if self.rank == 0 {
            return Ok(ChowClass::zero(n));
        }
        let t = n as u32;
        let sys = RootSystem::single("E", self.rank);
        let mut sum = MultiPoly::zero(&sys, t);
        for i in 0..self.rank {
            sum = sum.add(&MultiPoly::root(&sys, t, 0, i)?.apply_series(s)?);
        }
        evaluate_universal(&reduce_to_elementaries(&sum)?, &[self])
    }
}

fn indicator(len: usize, idx: &[usize]) -> Vec<i64> {
    let mut f = vec![0; len];
    for &i in idx {
        f[i] += 1;
    }
    f
}

/// The bundle whose Chern roots are the given integer linear forms in the
/// roots of `inputs` (flattened in order).
fn from_root_forms(ambient: usize, inputs: &[&BundleClass], forms: Vec<Vec<i64>>) -> Result<BundleClass> {
    let t = ambient as u32;
    let sys = RootSystem::new(inputs.iter().enumerate().map(|(i, b)| (format!("E{i}"), b.rank())));
    let mut total = MultiPoly::one(&sys, t);
    for f in &forms {
        let factor = MultiPoly::one(&sys, t).add(&MultiPoly::linear_form(&sys, t, f));
        total = total.mul(&factor);
    }
    let chern = evaluate_universal(&reduce_to_elementaries(&total)?, inputs)?;
    BundleClass::new(forms.len(), chern)
}

pub fn line_bundle(n: usize, d: i64) -> Result<BundleClass> {
    BundleClass::line(n, d)
}

pub fn tangent_bundle(n: usize) -> Result<BundleClass> {
    BundleClass::tangent(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, parts: &[i64]) -> ChowClass {
        ChowClass::from_ints(n, parts)
    }

    fn q(s: &str) -> Rational {
        s.parse().unwrap()
    }

    fn line(n: usize, d: i64) -> BundleClass {
        BundleClass::line(n, d).unwrap()
    }

    #[test]
    fn line_bundles() {
        let o = line(3, 0);
        assert_eq!((o.rank(), o.chern()), (1, &ChowClass::one(3)));
        assert_eq!(line(2, 1).chern(), &c(2, &[1, 1]));
        assert_eq!(line(2, -2).chern(), &c(2, &[1, -2]));
    }

    #[test]
    fn tangent_bundles() {
        let t1 = tangent_bundle(1).unwrap();
        assert_eq!((t1.rank(), t1.chern()), (1, &c(1, &[1, 2])));
        assert_eq!(tangent_bundle(2).unwrap().chern(), &c(2, &[1, 3, 3]));
        assert_eq!(tangent_bundle(3).unwrap().chern(), &c(3, &[1, 4, 6, 4]));
        assert!(tangent_bundle(0).is_err());
    }

    #[test]
    fn direct_sums() {
        let s = line(2, 1).direct_sum(&line(2, 0)).unwrap();
        assert_eq!((s.rank(), s.chern()), (2, &c(2, &[1, 1])));
        let o1 = line(2, 1);
        let s3 = o1.direct_sum(&o1).unwrap().direct_sum(&o1).unwrap();
        assert_eq!(s3.chern(), &c(2, &[1, 3, 3]));
        assert_eq!(line(2, 1).direct_sum(&line(2, -1)).unwrap().chern(), &c(2, &[1, 0, -1]));
        assert!(line(2, 1).direct_sum(&line(3, 1)).is_err());
    }

    #[test]
    fn duals() {
        assert_eq!(line(3, 4).dual().unwrap(), line(3, -4));
        assert_eq!(tangent_bundle(2).unwrap().dual().unwrap().chern(), &c(2, &[1, -3, 3]));
    }

    #[test]
    fn determinants() {
        let e = line(3, 1).direct_sum(&line(3, 2)).unwrap();
        assert_eq!(e.determinant().unwrap(), line(3, 3));
        assert_eq!(tangent_bundle(2).unwrap().determinant().unwrap(), line(2, 3));
        assert_eq!(line(4, -7).determinant().unwrap(), line(4, -7));
    }

    #[test]
    fn wedges() {
        let e = line(3, 1).direct_sum(&line(3, 2)).unwrap();
        assert_eq!(e.wedge(0).unwrap(), line(3, 0));
        assert_eq!(e.wedge(2).unwrap(), line(3, 3));
        assert_eq!(e.wedge(3).unwrap(), BundleClass::zero(3).unwrap());
        assert!(e.wedge(-1).is_err());
        let t = tangent_bundle(3).unwrap();
        assert_eq!(t.wedge(1).unwrap(), t);
        assert_eq!(t.wedge(3).unwrap(), t.determinant().unwrap());
    }

    #[test]
    fn symmetric_powers() {
        let t = tangent_bundle(2).unwrap();
        assert_eq!(t.sym(1).unwrap(), t);
        assert_eq!(t.sym(0).unwrap(), line(2, 0));
        assert!(t.sym(-2).is_err());
        let e = line(2, 1).direct_sum(&line(2, 1)).unwrap();
        let s2 = e.sym(2).unwrap();
        assert_eq!(s2.rank(), 3);
        // three roots equal to 2H: ch = 3·e^{2H} = 3 + 6H + 6H²
        assert_eq!(s2.chern_character(), c(2, &[3, 6, 6]));
    }

    #[test]
    fn tensors() {
        assert_eq!(line(3, 2).tensor(&line(3, -5)).unwrap(), line(3, -3));
        let t = tangent_bundle(3).unwrap();
        assert_eq!(t.tensor(&line(3, 0)).unwrap(), t);
        assert!(t.tensor(&line(2, 0)).is_err());
    }

    #[test]
    fn chern_characters() {
        let d = 5;
        let ch = line(2, d).chern_character();
        assert_eq!(ch, ChowClass::truncating(2, [Rational::one(), Rational::from(d), q("25/2")]));
        assert_eq!(BundleClass::trivial(4, 3).unwrap().chern_character(), ChowClass::scalar(4, Rational::from(3)));
    }

    #[test]
    fn todd_classes() {
        assert_eq!(line(3, 0).todd(), ChowClass::one(3));
        let td = tangent_bundle(2).unwrap().todd();
        assert_eq!(td, ChowClass::truncating(2, [Rational::one(), q("3/2"), Rational::one()]));
    }

    #[test]
    fn rank_zero_conventions() {
        let z = BundleClass::zero(3).unwrap();
        assert!(z.chern_character().is_zero());
        assert_eq!(z.todd(), ChowClass::one(3));
        assert_eq!(z.chern(), &ChowClass::one(3));
        assert_eq!(z.chern_character_by_roots().unwrap(), ChowClass::zero(3));
        assert_eq!(z.todd_by_roots().unwrap(), ChowClass::one(3));
    }

    #[test]
    fn segre_classes() {
        assert_eq!(BundleClass::trivial(3, 2).unwrap().segre(), ChowClass::one(3));
        assert_eq!(line(3, 1).segre(), c(3, &[1, -1, 1, -1]));
    }

    #[test]
    fn degrees() {
        assert_eq!(line(2, 7).degree(), Rational::from(7));
        assert_eq!(line(3, 1).direct_sum(&line(3, 2)).unwrap().degree(), Rational::from(3));
    }

    #[test]
    fn root_paths_match_newton_paths() {
        let t = tangent_bundle(4).unwrap();
        assert_eq!(t.chern_character_by_roots().unwrap(), t.chern_character());
        assert_eq!(t.todd_by_roots().unwrap(), t.todd());
    }

    #[test]
    fn validation() {
        assert!(BundleClass::new(1, c(2, &[2, 1])).is_err());
        assert!(BundleClass::new(1, c(2, &[1, 1, 1])).is_err());
        assert!(BundleClass::new(2, c(2, &[1, 1, 1])).is_ok());
    }

    #[test]
    fn serde_shape() {
        let t = tangent_bundle(2).unwrap();
        let json = serde_json::to_string(&t).unwrap();
        assert_eq!(json, r#"{"ambient":2,"rank":2,"chern":["1","3","3"]}"#);
        assert_eq!(serde_json::from_str::<BundleClass>(&json).unwrap(), t);
        assert!(serde_json::from_str::<BundleClass>(r#"{"ambient":2,"rank":1,"chern":["1","3","3"]}"#).is_err());
    }
}
