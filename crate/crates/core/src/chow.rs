//! The rational Chow ring of projective space, `ℚ[H]/(H^{n+1})`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

/// A class on ℙⁿ, stored as the coefficients of `H^0 ..= H^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ChowClass {
    parts: Vec<Rational>,
}

fn check_ambient(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::domain("ambient dimension must be positive"));
    }
    Ok(())
}

impl ChowClass {
    /// Builds a class from coefficients by codimension; the list must have
    /// exactly `ambient + 1` entries.
    pub fn new(ambient: usize, parts: Vec<Rational>) -> Result<Self> {
        check_ambient(ambient)?;
        if parts.len() != ambient + 1 {
            return Err(Error::domain(format!(
                "class on P^{ambient} needs {} parts, got {}",
                ambient + 1,
                parts.len()
            )));
        }
        Ok(ChowClass { parts })
    }

    /// Like [`ChowClass::new`], but pads with zeros and drops parts beyond codimension `ambient`.
    pub fn truncating(ambient: usize, parts: impl IntoIterator<Item = Rational>) -> Self {
        assert!(ambient > 0, "ambient dimension must be positive");
        let mut parts: Vec<Rational> = parts.into_iter().take(ambient + 1).collect();
        parts.resize(ambient + 1, Rational::zero());
        ChowClass { parts }
    }

    pub fn from_ints(ambient: usize, parts: &[i64]) -> Self {
        Self::truncating(ambient, parts.iter().map(|&c| Rational::from(c)))
    }

    pub fn zero(ambient: usize) -> Self {
        Self::truncating(ambient, [])
    }

    pub fn one(ambient: usize) -> Self {
        Self::scalar(ambient, Rational::one())
    }

    pub fn scalar(ambient: usize, c: Rational) -> Self {
        Self::truncating(ambient, [c])
    }

    /// `c · H^k`; zero when `k > ambient`.
    pub fn monomial(ambient: usize, k: usize, c: Rational) -> Self {
        let mut out = Self::zero(ambient);
        if k <= ambient {
            out.parts[k] = c;
        }
        out
    }

    pub fn hyperplane(ambient: usize) -> Self {
        Self::monomial(ambient, 1, Rational::one())
    }

    pub fn ambient(&self) -> usize {
        self.parts.len() - 1
    }

    pub fn parts(&self) -> &[Rational] {
        &self.parts
    }

    /// Coefficient of `H^k`; zero beyond the ambient dimension.
    pub fn part(&self, k: usize) -> Rational {
        self.parts.get(k).cloned().unwrap_or_default()
    }

    /// The codimension-`k` component as a class.
    pub fn graded_part(&self, k: usize) -> Self {
        Self::monomial(self.ambient(), k, self.part(k))
    }

    pub fn is_zero(&self) -> bool {
        self.parts.iter().all(Rational::is_zero)
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch {
                left: self.ambient(),
                right: other.ambient(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(ChowClass {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a + b).collect(),
        })
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(ChowClass {
            parts: self.parts.iter().zip(&other.parts).map(|(a, b)| a - b).collect(),
        })
    }

    /// Product in `ℚ[H]/(H^{n+1})`.
    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let n = self.ambient();
        let mut out = vec![Rational::zero(); n + 1];
        for (i, a) in self.parts.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.parts[..=n - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Ok(ChowClass { parts: out })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        ChowClass {
            parts: self.parts.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.ambient());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Degree map to a point: the coefficient of the point class `H^n`.
    pub fn integral(&self) -> Rational {
        self.parts[self.ambient()].clone()
    }

    /// The class viewed as a power series in `H` of order `n`.
    pub fn to_series(&self) -> TruncatedSeries {
        TruncatedSeries::from_coeffs(self.ambient(), self.parts.iter().cloned())
    }

    pub fn from_series(ambient: usize, s: &TruncatedSeries) -> Self {
        Self::truncating(ambient, s.coeffs().iter().cloned())
    }

    /// Inverse of a class with constant part 1.
    pub fn inverse(&self) -> Result<Self> {
        Ok(Self::from_series(self.ambient(), &self.to_series().inverse()?))
    }

    pub fn exp(&self) -> Result<Self> {
        Ok(Self::from_series(self.ambient(), &self.to_series().exp()?))
    }

    pub fn log(&self) -> Result<Self> {
        Ok(Self::from_series(self.ambient(), &self.to_series().log()?))
    }
}

pub fn chow_mul(a: &ChowClass, b: &ChowClass) -> Result<ChowClass> {
    a.try_mul(b)
}

pub fn integral(a: &ChowClass) -> Rational {
    a.integral()
}

// Operator forms panic on mismatched ambients; use the `try_` methods on untrusted input.
impl Add for &ChowClass {
    type Output = ChowClass;
    fn add(self, rhs: &ChowClass) -> ChowClass {
        self.try_add(rhs).expect("ambient mismatch")
    }
}

impl Sub for &ChowClass {
    type Output = ChowClass;
    fn sub(self, rhs: &ChowClass) -> ChowClass {
        self.try_sub(rhs).expect("ambient mismatch")
    }
}

impl Mul for &ChowClass {
    type Output = ChowClass;
    fn mul(self, rhs: &ChowClass) -> ChowClass {
        self.try_mul(rhs).expect("ambient mismatch")
    }
}

impl Neg for &ChowClass {
    type Output = ChowClass;
    fn neg(self) -> ChowClass {
        self.scale(&Rational::from(-1))
    }
}

impl fmt::Display for ChowClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut wrote = false;
        for (k, c) in self.parts.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() { ("-", c.abs()) } else { ("+", c.clone()) };
            if wrote {
                write!(f, " {sign} ")?;
            } else if sign == "-" {
                write!(f, "-")?;
            }
            let unit = match k {
                0 => String::new(),
                1 => "H".to_string(),
                _ => format!("H^{k}"),
            };
            match (k, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (_, true) => write!(f, "{unit}")?,
                (_, false) => write!(f, "{mag}*{unit}")?,
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}

impl Serialize for ChowClass {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.parts.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for ChowClass {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let parts = Vec::<Rational>::deserialize(deserializer)?;
        if parts.len() < 2 {
            return Err(serde::de::Error::custom("a class needs at least two parts"));
        }
        ChowClass::new(parts.len() - 1, parts).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(n: usize, parts: &[i64]) -> ChowClass {
        ChowClass::from_ints(n, parts)
    }

    #[test]
    fn multiplication_examples() {
        assert_eq!(&c(2, &[1, 1]) * &ChowClass::one(2), c(2, &[1, 1]));
        assert_eq!(c(2, &[1, 1]).pow(2), c(2, &[1, 2, 1]));
        assert_eq!(&c(2, &[0, 0, 1]) * &c(2, &[0, 1]), ChowClass::zero(2));
    }

    #[test]
    fn hyperplane_power_vanishes_past_ambient() {
        for n in 1..=8 {
            let h = ChowClass::hyperplane(n);
            assert_eq!(h.pow(n as u32), ChowClass::monomial(n, n, Rational::one()));
            assert!(h.pow(n as u32 + 1).is_zero());
        }
    }

    #[test]
    fn ambient_mismatch_is_an_error() {
        let err = chow_mul(&ChowClass::one(2), &ChowClass::one(3)).unwrap_err();
        assert_eq!(err, Error::AmbientMismatch { left: 2, right: 3 });
        assert!(ChowClass::one(2).try_add(&ChowClass::one(1)).is_err());
    }

    #[test]
    fn integral_examples() {
        assert_eq!(integral(&c(2, &[0, 0, 1])), Rational::one());
        assert_eq!(integral(&c(2, &[1, 3])), Rational::zero());
        // (H/(1-e^{-H}))^3 on P^2: (1 + H/2 + H²/12)^3 has H² coefficient 3/12 + 3/4 = 1
        let td = ChowClass::from_series(2, &TruncatedSeries::todd(2)).pow(3);
        assert_eq!(integral(&td), Rational::one());
    }

    #[test]
    fn construction_checks() {
        assert!(ChowClass::new(0, vec![Rational::one()]).is_err());
        assert!(ChowClass::new(2, vec![Rational::one()]).is_err());
        assert_eq!(ChowClass::monomial(2, 5, Rational::one()), ChowClass::zero(2));
    }

    #[test]
    fn display() {
        let x = ChowClass::truncating(2, ["1".parse().unwrap(), "3/2".parse().unwrap(), Rational::one()]);
        assert_eq!(x.to_string(), "1 + 3/2*H + H^2");
        assert_eq!(c(3, &[0, -1, 0, 2]).to_string(), "-H + 2*H^3");
        assert_eq!(ChowClass::zero(3).to_string(), "0");
    }

    #[test]
    fn serde_as_coefficient_strings() {
        let x = ChowClass::truncating(2, [Rational::one(), "3/2".parse().unwrap(), Rational::one()]);
        let json = serde_json::to_string(&x).unwrap();
        assert_eq!(json, r#"["1","3/2","1"]"#);
        assert_eq!(serde_json::from_str::<ChowClass>(&json).unwrap(), x);
        assert!(serde_json::from_str::<ChowClass>(r#"["1"]"#).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn class(n: usize) -> impl Strategy<Value = ChowClass> {
            proptest::collection::vec((-20i64..20, 1i64..5), n + 1).prop_map(move |cs| {
                ChowClass::truncating(n, cs.into_iter().map(|(p, q)| Rational::new(p, q).unwrap()))
            })
        }

        fn triple() -> impl Strategy<Value = (ChowClass, ChowClass, ChowClass)> {
            (1usize..=6).prop_flat_map(|n| (class(n), class(n), class(n)))
        }

        proptest! {
            #[test]
            fn commutative_ring((a, b, c) in triple()) {
                prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
                prop_assert_eq!(&a * &b, &b * &a);
                prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
                prop_assert_eq!(&a * &ChowClass::one(a.ambient()), a.clone());
            }

            #[test]
            fn integral_is_linear((a, b, _c) in triple(), k in -5i64..5) {
                let k = Rational::from(k);
                prop_assert_eq!(
                    (&a.scale(&k) + &b).integral(),
                    &(&a.integral() * &k) + &b.integral()
                );
                let mut low = a.clone();
                let n = low.ambient();
                low.parts[n] = Rational::zero();
                prop_assert!(low.integral().is_zero());
            }

            #[test]
            fn serde_round_trip((a, _b, _c) in triple()) {
                let json = serde_json::to_string(&a).unwrap();
                prop_assert_eq!(serde_json::from_str::<ChowClass>(&json).unwrap(), a);
            }
        }
    }
}
