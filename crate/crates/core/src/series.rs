//! Univariate power series over the rationals, truncated at a fixed order.
//!
//! A series of order `N` carries the coefficients of `x^0 ..= x^N`. Binary
//! operations work at the smaller of the two orders; nothing past index `N`
//! is ever read or written.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<Rational>,
}

impl TruncatedSeries {
    /// Builds a series of the given order; missing coefficients are zero,
    /// extra ones are dropped.
    pub fn from_coeffs(order: usize, coeffs: impl IntoIterator<Item = Rational>) -> Self {
        let mut coeffs: Vec<Rational> = coeffs.into_iter().take(order + 1).collect();
        coeffs.resize(order + 1, Rational::zero());
        TruncatedSeries { coeffs }
    }

    pub fn from_ints(order: usize, coeffs: &[i64]) -> Self {
        Self::from_coeffs(order, coeffs.iter().map(|&c| Rational::from(c)))
    }

    pub fn zero(order: usize) -> Self {
        Self::from_coeffs(order, [])
    }

    pub fn one(order: usize) -> Self {
        Self::constant(order, Rational::one())
    }

    pub fn constant(order: usize, c: Rational) -> Self {
        Self::from_coeffs(order, [c])
    }

    /// The series `x`.
    pub fn x(order: usize) -> Self {
        Self::from_coeffs(order, [Rational::zero(), Rational::one()])
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Coefficient of `x^k`; zero beyond the order.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> &Rational {
        &self.coeffs[0]
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    /// Re-truncates (or zero-extends) to a new order.
    pub fn with_order(&self, order: usize) -> Self {
        Self::from_coeffs(order, self.coeffs.iter().cloned())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        TruncatedSeries {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::one(self.order());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// The series `s(c·x)`.
    pub fn rescale_variable(&self, c: &Rational) -> Self {
        let mut power = Rational::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a * &power;
                power *= c;
                out
            })
            .collect();
        TruncatedSeries { coeffs }
    }

    /// Composition `self(inner(x))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &TruncatedSeries) -> Result<Self> {
        if !inner.constant_term().is_zero() {
            return Err(Error::domain("composition requires an inner series with zero constant term"));
        }
        let order = self.order().min(inner.order());
        let inner = inner.with_order(order);
        // Horner from the top coefficient down.
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = &acc * &inner;
            acc.coeffs[0] += c;
        }
        Ok(acc)
    }

    /// `Σ s^k / k!` truncated at the order of `s`.
    pub fn exp(&self) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("exp of a series with nonzero constant term"));
        }
        // f = exp(s) satisfies f' = s' f, so k f_k = Σ_{j=1..k} j s_j f_{k-j}.
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                if self.coeffs[j].is_zero() {
                    continue;
                }
                acc += &self.coeffs[j] * &out[k - j] * Rational::from(j);
            }
            out[k] = acc / Rational::from(k);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Multiplicative inverse of a series with constant term 1.
    pub fn inverse(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::domain(format!(
                "series inverse requires constant term 1, got {}",
                self.constant_term()
            )));
        }
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        out[0] = Rational::one();
        for k in 1..=n {
            let mut acc = Rational::zero();
            for j in 1..=k {
                acc -= &self.coeffs[j] * &out[k - j];
            }
            out[k] = acc;
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// Logarithm of a series with constant term 1.
    pub fn log(&self) -> Result<Self> {
        if !self.constant_term().is_one() {
            return Err(Error::domain(format!(
                "series log requires constant term 1, got {}",
                self.constant_term()
            )));
        }
        // g = log(s): s g' = s', so k g_k = k s_k - Σ_{j=1..k-1} j g_j s_{k-j}.
        let n = self.order();
        let mut out = vec![Rational::zero(); n + 1];
        for k in 1..=n {
            let mut acc = &self.coeffs[k] * Rational::from(k);
            for j in 1..k {
                acc -= &out[j] * &self.coeffs[k - j] * Rational::from(j);
            }
            out[k] = acc / Rational::from(k);
        }
        Ok(TruncatedSeries { coeffs: out })
    }

    /// `x / (1 - e^{-x})` to the given order.
    pub fn todd(order: usize) -> Self {
        // 1 - e^{-x} = x·(1 - x/2 + x²/6 - ...); divide out x, then invert.
        let neg_x = Self::x(order + 1).scale(&Rational::from(-1));
        let one_minus = &Self::one(order + 1) - &neg_x.exp().expect("zero constant term");
        let shifted = Self::from_coeffs(order, one_minus.coeffs.into_iter().skip(1));
        shifted.inverse().expect("constant term is 1")
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        TruncatedSeries {
            coeffs: (0..=order).map(|k| &self.coeffs[k] - &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let order = self.order().min(rhs.order());
        let mut out = vec![Rational::zero(); order + 1];
        for (i, a) in self.coeffs[..=order].iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs[..=order - i].iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        TruncatedSeries { coeffs: out }
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        self.scale(&Rational::from(-1))
    }
}

/// Free-function form of [`TruncatedSeries::exp`].
pub fn series_exp(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.exp()
}

pub fn series_inverse(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.inverse()
}

pub fn series_log(s: &TruncatedSeries) -> Result<TruncatedSeries> {
    s.log()
}

pub fn todd_series(order: usize) -> TruncatedSeries {
    TruncatedSeries::todd(order)
}
