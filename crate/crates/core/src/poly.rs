//! Polynomials in `x0, ..., x{m-1}` over ℚ, every variable of degree 1.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Polynomial {
    num_vars: usize,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl Polynomial {
    pub fn zero(num_vars: usize) -> Self {
        Polynomial { num_vars, terms: BTreeMap::new() }
    }

    pub fn constant(num_vars: usize, c: Rational) -> Self {
        Self::monomial(num_vars, vec![0; num_vars], c)
    }

    pub fn monomial(num_vars: usize, exps: Vec<u32>, c: Rational) -> Self {
        assert_eq!(exps.len(), num_vars, "exponent vector length");
        let mut p = Self::zero(num_vars);
        if !c.is_zero() {
            p.terms.insert(exps, c);
        }
        p
    }

    pub fn variable(num_vars: usize, i: usize) -> Result<Self> {
        if i >= num_vars {
            return Err(Error::domain(format!("variable x{i} out of range for {num_vars} variables")));
        }
        let mut exps = vec![0; num_vars];
        exps[i] = 1;
        Ok(Self::monomial(num_vars, exps, Rational::one()))
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The common degree of all terms; `None` for zero or mixed-degree input.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degrees = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let first = degrees.next()?;
        degrees.all(|d| d == first).then_some(first)
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.num_vars != other.num_vars {
            return Err(Error::domain("polynomials in different numbers of variables"));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            let entry = out.terms.entry(e.clone()).or_default();
            *entry += c;
            if entry.is_zero() {
                out.terms.remove(e);
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Self {
        self.scale(&Rational::from(-1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.num_vars);
        }
        Polynomial {
            num_vars: self.num_vars,
            terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = Self::zero(self.num_vars);
        for (ea, a) in &self.terms {
            for (eb, b) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let entry = out.terms.entry(e.clone()).or_default();
                *entry += a * b;
                if entry.is_zero() {
                    out.terms.remove(&e);
                }
            }
        }
        Ok(out)
    }

    pub fn pow(&self, exp: u32) -> Self {
        let mut acc = Self::constant(self.num_vars, Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let mag = c.abs();
            if i > 0 {
                write!(f, " {} ", if neg { "-" } else { "+" })?;
            } else if neg {
                write!(f, "-")?;
            }
            let vars: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(v, &p)| if p == 1 { format!("x{v}") } else { format!("x{v}^{p}") })
                .collect();
            match (vars.is_empty(), mag.is_one()) {
                (true, _) => write!(f, "{mag}")?,
                (false, true) => write!(f, "{}", vars.join("*"))?,
                (false, false) => write!(f, "{mag}*{}", vars.join("*"))?,
            }
        }
        Ok(())
    }
}

/// All exponent vectors of `num_vars` variables with total degree `degree`,
/// in lexicographically decreasing order.
pub fn monomials(num_vars: usize, degree: u32) -> Vec<Vec<u32>> {
    fn go(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if i + 1 == cur.len() {
            cur[i] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[i] = e;
            go(i + 1, left - e, cur, out);
        }
    }
    let mut out = Vec::new();
    if num_vars == 0 {
        if degree == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    go(0, degree, &mut vec![0; num_vars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::binomial;

    #[test]
    fn monomial_counts() {
        for m in 1..=4usize {
            for d in 0..=6u32 {
                let n = monomials(m, d).len() as u64;
                assert_eq!(num_bigint::BigInt::from(n), binomial(m as u64 + d as u64 - 1, d as u64));
            }
        }
        assert_eq!(monomials(2, 2), vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
    }

    #[test]
    fn homogeneity() {
        let x = Polynomial::variable(2, 0).unwrap();
        let y = Polynomial::variable(2, 1).unwrap();
        assert_eq!(x.mul(&y).unwrap().homogeneous_degree(), Some(2));
        assert_eq!(x.add(&y.pow(2)).unwrap().homogeneous_degree(), None);
        assert_eq!(Polynomial::zero(2).homogeneous_degree(), None);
        assert!(x.sub(&x).unwrap().is_zero());
        assert!(Polynomial::variable(2, 2).is_err());
    }

    #[test]
    fn display() {
        let x = Polynomial::variable(2, 0).unwrap();
        let y = Polynomial::variable(2, 1).unwrap();
        let p = x.pow(2).scale(&Rational::from(3)).sub(&x.mul(&y).unwrap()).unwrap();
        assert_eq!(p.to_string(), "3*x0^2 - x0*x1");
    }
}
