//! The Grothendieck ring `K₀(ℙⁿ) = ℤ[ξ]/(1-ξ)^{n+1}`, `ξ = [O(1)]`.
//!
//! Classes are stored on the basis `1, ξ, ..., ξⁿ`.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::rational::{binomial, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawKClass", into = "RawKClass")]
pub struct KClass {
    coeffs: Vec<BigInt>,
}

#[derive(Serialize, Deserialize)]
struct RawKClass {
    ambient: usize,
    #[serde(with = "crate::intser::vec")]
    coeffs: Vec<BigInt>,
}

impl TryFrom<RawKClass> for KClass {
    type Error = Error;
    fn try_from(raw: RawKClass) -> Result<Self> {
        KClass::new(raw.ambient, raw.coeffs)
    }
}

impl From<KClass> for RawKClass {
    fn from(k: KClass) -> Self {
        RawKClass { ambient: k.ambient(), coeffs: k.coeffs }
    }
}

impl KClass {
    pub fn new(ambient: usize, coeffs: Vec<BigInt>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::domain("ambient dimension must be positive"));
        }
        if coeffs.len() != ambient + 1 {
            return Err(Error::domain(format!(
                "K-class on P^{ambient} needs {} coefficients, got {}",
                ambient + 1,
                coeffs.len()
            )));
        }
        Ok(KClass { coeffs })
    }

    pub fn from_ints(ambient: usize, coeffs: &[i64]) -> Result<Self> {
        Self::from_polynomial(ambient, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// Reduces an arbitrary polynomial in `ξ` modulo `(1-ξ)^{n+1}`.
    pub fn from_polynomial(ambient: usize, mut poly: Vec<BigInt>) -> Result<Self> {
        if ambient == 0 {
            return Err(Error::domain("ambient dimension must be positive"));
        }
        // ξ^{n+1} = Σ_{k≤n} (-1)^{n+k} C(n+1,k) ξ^k
        let relation: Vec<BigInt> = (0..=ambient)
            .map(|k| {
                let c = binomial(ambient as u64 + 1, k as u64);
                if (ambient + k).is_multiple_of(2) { c } else { -c }
            })
            .collect();
        while poly.len() > ambient + 1 {
            let top = poly.pop().expect("nonempty");
            if top.is_zero() {
                continue;
            }
            let shift = poly.len() - (ambient + 1);
            for (k, r) in relation.iter().enumerate() {
                poly[shift + k] += &top * r;
            }
        }
        poly.resize(ambient + 1, BigInt::zero());
        Ok(KClass { coeffs: poly })
    }

    pub fn zero(ambient: usize) -> Result<Self> {
        Self::new(ambient, vec![BigInt::zero(); ambient + 1])
    }

    pub fn one(ambient: usize) -> Result<Self> {
        Self::from_ints(ambient, &[1])
    }

    /// `ξ = [O(1)]`.
    pub fn xi(ambient: usize) -> Result<Self> {
        Self::from_ints(ambient, &[0, 1])
    }

    /// `ξ^{-1} = Σ_{k=0}^{n} (1-ξ)^k`.
    pub fn xi_inverse(ambient: usize) -> Result<Self> {
        let one_minus = Self::from_ints(ambient, &[1, -1])?;
        let mut acc = Self::zero(ambient)?;
        let mut power = Self::one(ambient)?;
        for _ in 0..=ambient {
            acc = acc.add(&power)?;
            power = power.mul(&one_minus)?;
        }
        Ok(acc)
    }

    /// `[O(d)]`.
    pub fn line(ambient: usize, d: i64) -> Result<Self> {
        let base = if d >= 0 { Self::xi(ambient)? } else { Self::xi_inverse(ambient)? };
        base.pow(d.unsigned_abs())
    }

    /// `[O^{⊕r}] = r`.
    pub fn trivial(ambient: usize, rank: usize) -> Result<Self> {
        Self::from_polynomial(ambient, vec![BigInt::from(rank)])
    }

    /// `[T_{ℙⁿ}] = (n+1)ξ - 1` from the Euler sequence.
    pub fn tangent(ambient: usize) -> Result<Self> {
        Self::from_ints(ambient, &[-1, ambient as i64 + 1])
    }

    pub fn ambient(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    fn same_ambient(&self, other: &Self) -> Result<()> {
        if self.ambient() != other.ambient() {
            return Err(Error::AmbientMismatch { left: self.ambient(), right: other.ambient() });
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(KClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a + b).collect() })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        Ok(KClass { coeffs: self.coeffs.iter().zip(&other.coeffs).map(|(a, b)| a - b).collect() })
    }

    pub fn neg(&self) -> Self {
        KClass { coeffs: self.coeffs.iter().map(|a| -a).collect() }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        KClass { coeffs: self.coeffs.iter().map(|a| a * c).collect() }
    }

    /// `[F]·[G] = [F ⊗ G]`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ambient(other)?;
        let mut prod = vec![BigInt::zero(); 2 * self.ambient() + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                prod[i + j] += a * b;
            }
        }
        Self::from_polynomial(self.ambient(), prod)
    }

    pub fn pow(&self, exp: u64) -> Result<Self> {
        let mut acc = Self::one(self.ambient())?;
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// The duality involution `ξ ↦ ξ^{-1}`.
    pub fn dual(&self) -> Result<Self> {
        let inv = Self::xi_inverse(self.ambient())?;
        let mut acc = Self::zero(self.ambient())?;
        let mut power = Self::one(self.ambient())?;
        for c in &self.coeffs {
            acc = acc.add(&power.scale(c))?;
            power = power.mul(&inv)?;
        }
        Ok(acc)
    }

    /// The rank `Σ coeffs`, i.e. the class restricted to a point.
    pub fn rank(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// `χ(ℙⁿ, -)`: linear extension of `χ(ξ^k) = C(n+k, n)`.
    pub fn euler_char(&self) -> BigInt {
        let n = self.ambient() as u64;
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, c)| c * binomial(n + k as u64, n))
            .sum()
    }

    /// The Chern character: linear extension of `ξ^k ↦ exp(kH)`.
    pub fn ch(&self) -> ChowClass {
        let n = self.ambient();
        let mut out = ChowClass::zero(n);
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = ChowClass::hyperplane(n).scale(&Rational::from(k)).exp().expect("nilpotent");
            out = &out + &e.scale(&Rational::from(c.clone()));
        }
        out
    }
}

pub fn k_line(n: usize, d: i64) -> Result<KClass> {
    KClass::line(n, d)
}

pub fn k_add(a: &KClass, b: &KClass) -> Result<KClass> {
    a.add(b)
}

pub fn k_mul(a: &KClass, b: &KClass) -> Result<KClass> {
    a.mul(b)
}

pub fn euler_char(a: &KClass) -> BigInt {
    a.euler_char()
}

pub fn ch_map(a: &KClass) -> ChowClass {
    a.ch()
}

/// `(1 - ξ)^{n+1}` computed as an unreduced polynomial and then reduced.
pub fn one_minus_xi_power(ambient: usize, exp: usize) -> Result<KClass> {
    let poly = (0..=exp)
        .map(|k| {
            let c = binomial(exp as u64, k as u64);
            if k % 2 == 0 { c } else { -c }
        })
        .collect();
    KClass::from_polynomial(ambient, poly)
}

impl std::fmt::Display for KClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut wrote = false;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let neg = c < &BigInt::zero();
            let mag = if neg { -c } else { c.clone() };
            if wrote {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let unit = match k {
                0 => String::new(),
                1 => "ξ".into(),
                _ => format!("ξ^{k}"),
            };
            if k == 0 {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{unit}")?;
            } else {
                write!(f, "{mag}*{unit}")?;
            }
            wrote = true;
        }
        if !wrote {
            write!(f, "0")?;
        }
        Ok(())
    }
}
