//! Graded Koszul complexes over `A = ℚ[x0, ..., x{m-1}]`.
//!
//! For a sequence `a_1, ..., a_d` of homogeneous elements the complex has
//! `K_k = ∧^k A^d` with differential
//! `d(e_{i_1} ∧ ... ∧ e_{i_k}) = Σ_j (-1)^{j+1} a_{i_j} e_{i_1} ∧ ... ê_{i_j} ... ∧ e_{i_k}`.
//! Each internal degree `t` is a finite-dimensional complex of ℚ-vector
//! spaces with basis `e_S · x^μ`, `deg x^μ + Σ_{i∈S} deg a_i = t`; homology
//! dimensions come from exact ranks of the differential in each degree.
//!
//! Every statement is a certificate up to the requested degree bound only.

use std::collections::HashMap;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{kernel_of_columns, Echelon};
use crate::poly::{monomials, Polynomial};
use crate::rational::Rational;
use crate::symroots::k_subsets;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedRing {
    num_vars: usize,
}

impl GradedRing {
    pub fn new(num_vars: usize) -> Result<Self> {
        if num_vars == 0 {
            return Err(Error::domain("a polynomial ring needs at least one variable"));
        }
        Ok(GradedRing { num_vars })
    }

    pub fn num_vars(&self) -> usize {
        self.num_vars
    }

    pub fn variable(&self, i: usize) -> Result<Polynomial> {
        Polynomial::variable(self.num_vars, i)
    }

    /// `dim_ℚ A_t`.
    pub fn dim(&self, t: u32) -> usize {
        monomials(self.num_vars, t).len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomogeneousSequence {
    ring: GradedRing,
    elements: Vec<Polynomial>,
    degrees: Vec<u32>,
}

impl HomogeneousSequence {
    /// Checks that the list is nonempty and every element is homogeneous of positive degree.
    pub fn new(ring: GradedRing, elements: Vec<Polynomial>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::domain("a Koszul sequence needs at least one element"));
        }
        let mut degrees = Vec::with_capacity(elements.len());
        for (i, a) in elements.iter().enumerate() {
            if a.num_vars() != ring.num_vars {
                return Err(Error::domain(format!("element {} lives in a different ring", i + 1)));
            }
            match a.homogeneous_degree() {
                Some(d) if d >= 1 => degrees.push(d),
                Some(_) => return Err(Error::domain(format!("element {} is a constant", i + 1))),
                None if a.is_zero() => return Err(Error::domain(format!("element {} is zero", i + 1))),
                None => return Err(Error::domain(format!("element {} ({a}) is not homogeneous", i + 1))),
            }
        }
        Ok(HomogeneousSequence { ring, elements, degrees })
    }

    /// `x0, ..., x{m-1}`.
    pub fn variables(num_vars: usize) -> Result<Self> {
        let ring = GradedRing::new(num_vars)?;
        let elements = (0..num_vars).map(|i| ring.variable(i)).collect::<Result<_>>()?;
        Self::new(ring, elements)
    }

    pub fn ring(&self) -> GradedRing {
        self.ring
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The same elements in a different order.
    pub fn permuted(&self, order: &[usize]) -> Result<Self> {
        let elements = order
            .iter()
            .map(|&i| self.elements.get(i).cloned().ok_or_else(|| Error::domain("bad permutation")))
            .collect::<Result<_>>()?;
        Self::new(self.ring, elements)
    }
}

/// Homology and chain dimensions, indexed `[k][t]` for `0 ≤ k ≤ d`, `0 ≤ t ≤ D`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub max_degree: u32,
    pub dims: Vec<Vec<u64>>,
    pub chain_dims: Vec<Vec<u64>>,
}

impl KoszulReport {
    pub fn homological_length(&self) -> usize {
        self.dims.len() - 1
    }

    /// `Σ_k (-1)^k dim K_k,t = Σ_k (-1)^k dim H_k,t` in every degree.
    pub fn euler_identity_holds(&self) -> bool {
        (0..=self.max_degree as usize).all(|t| {
            let alt = |table: &Vec<Vec<u64>>| -> i128 {
                table
                    .iter()
                    .enumerate()
                    .map(|(k, row)| if k % 2 == 0 { row[t] as i128 } else { -(row[t] as i128) })
                    .sum()
            };
            alt(&self.chain_dims) == alt(&self.dims)
        })
    }

    /// True when no positive-index homology appears up to the degree bound.
    pub fn is_acyclic(&self) -> bool {
        self.dims.iter().skip(1).all(|row| row.iter().all(|&x| x == 0))
    }

    /// The Hilbert function of `A/I` up to the degree bound.
    pub fn quotient_hilbert_function(&self) -> &[u64] {
        &self.dims[0]
    }
}

/// Basis of `(∧^k A^d)_t`: wedge index set and ring monomial.
type Basis = Vec<(Vec<usize>, Vec<u32>)>;
type BasisIndex = HashMap<(Vec<usize>, Vec<u32>), usize>;

pub struct KoszulComplex {
    seq: HomogeneousSequence,
    max_degree: u32,
    /// `bases[k][t]` with its index lookup.
    bases: Vec<Vec<(Basis, BasisIndex)>>,
}

impl KoszulComplex {
    pub fn new(seq: &HomogeneousSequence, max_degree: u32) -> Self {
        let d = seq.len();
        let m = seq.ring.num_vars;
        let bases = (0..=d)
            .map(|k| {
                let subsets = k_subsets(d, k);
                (0..=max_degree)
                    .map(|t| {
                        let mut basis = Basis::new();
                        for s in &subsets {
                            let sd: u32 = s.iter().map(|&i| seq.degrees[i]).sum();
                            if sd > t {
                                continue;
                            }
                            for mono in monomials(m, t - sd) {
                                basis.push((s.clone(), mono));
                            }
                        }
                        let index = basis.iter().cloned().enumerate().map(|(i, b)| (b, i)).collect();
                        (basis, index)
                    })
                    .collect()
            })
            .collect();
        KoszulComplex { seq: seq.clone(), max_degree, bases }
    }

    pub fn chain_dim(&self, k: usize, t: u32) -> usize {
        self.bases[k][t as usize].0.len()
    }

    /// Columns of `d_k : (K_k)_t → (K_{k-1})_t`, one sparse vector per source basis element.
    pub fn differential(&self, k: usize, t: u32) -> Vec<Vec<(usize, Rational)>> {
        assert!(k >= 1 && k < self.bases.len());
        let (source, _) = &self.bases[k][t as usize];
        let (_, target_index) = &self.bases[k - 1][t as usize];
        source
            .iter()
            .map(|(s, mono)| {
                let mut col: HashMap<usize, Rational> = HashMap::new();
                for (j, &i) in s.iter().enumerate() {
                    let sign = if j % 2 == 0 { Rational::one() } else { Rational::from(-1) };
                    let mut rest = s.clone();
                    rest.remove(j);
                    for (e, c) in self.seq.elements[i].terms() {
                        let target: Vec<u32> = mono.iter().zip(e).map(|(a, b)| a + b).collect();
                        let row = target_index[&(rest.clone(), target)];
                        *col.entry(row).or_default() += &sign * c;
                    }
                }
                let mut col: Vec<(usize, Rational)> = col.into_iter().filter(|(_, c)| !c.is_zero()).collect();
                col.sort_by_key(|(i, _)| *i);
                col
            })
            .collect()
    }

    /// Echelon form of the image of `d_k` in degree `t` (empty outside `1..=d`).
    pub fn image(&self, k: usize, t: u32) -> Echelon {
        let mut e = Echelon::new();
        if k >= 1 && k < self.bases.len() {
            for c in self.differential(k, t) {
                e.insert_rational(&c);
            }
        }
        e
    }

    fn rank(&self, k: usize, t: u32) -> usize {
        self.image(k, t).rank()
    }

    /// Checks `d_{k-1} ∘ d_k = 0` on every basis vector of `(K_k)_t`.
    pub fn check_square_zero(&self, k: usize, t: u32) -> Result<()> {
        if k < 2 || k >= self.bases.len() {
            return Ok(());
        }
        let outer = self.differential(k - 1, t);
        for (j, col) in self.differential(k, t).iter().enumerate() {
            let mut acc: HashMap<usize, Rational> = HashMap::new();
            for (i, c) in col {
                for (r, v) in &outer[*i] {
                    *acc.entry(*r).or_default() += c * v;
                }
            }
            if acc.values().any(|v| !v.is_zero()) {
                return Err(Error::Invariant(format!("d∘d ≠ 0 on basis vector {j} of K_{k} in degree {t}")));
            }
        }
        Ok(())
    }

    pub fn report(&self) -> Result<KoszulReport> {
        let d = self.seq.len();
        let per_degree: Vec<(Vec<u64>, Vec<u64>)> = (0..=self.max_degree)
            .into_par_iter()
            .map(|t| {
                for k in 2..=d {
                    self.check_square_zero(k, t)?;
                }
                // ranks[k] = rank d_k, with d_0 = d_{d+1} = 0
                let mut ranks = vec![0usize; d + 2];
                for (k, r) in ranks.iter_mut().enumerate().take(d + 1).skip(1) {
                    *r = self.rank(k, t);
                }
                let chain: Vec<u64> = (0..=d).map(|k| self.chain_dim(k, t) as u64).collect();
                let homology = (0..=d)
                    .map(|k| (self.chain_dim(k, t) - ranks[k] - ranks[k + 1]) as u64)
                    .collect();
                Ok((homology, chain))
            })
            .collect::<Result<_>>()?;
        let mut dims = vec![vec![0; self.max_degree as usize + 1]; d + 1];
        let mut chain_dims = dims.clone();
        for (t, (h, c)) in per_degree.into_iter().enumerate() {
            for k in 0..=d {
                dims[k][t] = h[k];
                chain_dims[k][t] = c[k];
            }
        }
        Ok(KoszulReport { max_degree: self.max_degree, dims, chain_dims })
    }

    /// Cycles of `(K_k)_t` not in the image of `d_{k+1}`: one representative
    /// per homology basis vector.
    pub fn homology_representatives(&self, k: usize, t: u32) -> Vec<Vec<(usize, Rational)>> {
        let target_dim = if k == 0 { 0 } else { self.chain_dim(k - 1, t) };
        let cycles: Vec<Vec<(usize, BigInt)>> = if k == 0 {
            (0..self.chain_dim(0, t)).map(|i| vec![(i, BigInt::from(1))]).collect()
        } else {
            kernel_of_columns(&self.differential(k, t), target_dim)
        };
        let mut span = self.image(k + 1, t);
        cycles
            .into_iter()
            .map(|z| z.into_iter().map(|(i, c)| (i, Rational::from(c))).collect::<Vec<_>>())
            .filter(|z| span.insert_rational(z))
            .collect()
    }

    /// `a_j · v` for `v ∈ (K_k)_t`, as a vector in `(K_k)_{t + deg a_j}`.
    fn multiply(&self, j: usize, k: usize, t: u32, v: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
        let (source, _) = &self.bases[k][t as usize];
        let (_, target_index) = &self.bases[k][(t + self.seq.degrees[j]) as usize];
        let mut out: HashMap<usize, Rational> = HashMap::new();
        for (i, c) in v {
            let (s, mono) = &source[*i];
            for (e, a) in self.seq.elements[j].terms() {
                let m: Vec<u32> = mono.iter().zip(e).map(|(x, y)| x + y).collect();
                *out.entry(target_index[&(s.clone(), m)]).or_default() += c * a;
            }
        }
        out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
    }
}

pub fn koszul_homology(seq: &HomogeneousSequence, max_degree: u32) -> Result<KoszulReport> {
    KoszulComplex::new(seq, max_degree).report()
}

/// `H_k(s)_t = 0` for all `k ≥ 1`, `t ≤ D`.
pub fn is_regular_up_to(seq: &HomogeneousSequence, max_degree: u32) -> Result<bool> {
    Ok(koszul_homology(seq, max_degree)?.is_acyclic())
}

/// `dim Tor_k(A/I, A/I)_t`, read off the Koszul resolution tensored with `A/I`,
/// where every differential vanishes.
pub fn tor_dimensions(seq: &HomogeneousSequence, max_degree: u32) -> Result<Vec<Vec<u64>>> {
    let report = koszul_homology(seq, max_degree)?;
    if !report.is_acyclic() {
        return Err(Error::Precondition(format!(
            "sequence is not regular up to degree {max_degree}; the Koszul complex is not a resolution"
        )));
    }
    let hf = report.quotient_hilbert_function();
    let d = seq.len();
    Ok((0..=d)
        .map(|k| {
            let subsets = k_subsets(d, k);
            (0..=max_degree)
                .map(|t| {
                    subsets
                        .iter()
                        .map(|s| s.iter().map(|&i| seq.degrees[i]).sum::<u32>())
                        .filter(|&sd| sd <= t)
                        .map(|sd| hf[(t - sd) as usize])
                        .sum()
                })
                .collect()
        })
        .collect())
}

/// Checks `a_j · H_k(s) = 0` for every generator `a_j` on homology
/// representatives of degree `t ≤ D - max deg a_j`.
pub fn annihilation_check(seq: &HomogeneousSequence, k: usize, max_degree: u32) -> Result<bool> {
    if k == 0 {
        return Err(Error::domain("annihilation is claimed for k ≥ 1 only"));
    }
    if k > seq.len() {
        return Ok(true);
    }
    let complex = KoszulComplex::new(seq, max_degree);
    let top = *seq.degrees.iter().max().expect("nonempty");
    if top > max_degree {
        return Ok(true);
    }
    for t in 0..=max_degree - top {
        let reps = complex.homology_representatives(k, t);
        if reps.is_empty() {
            continue;
        }
        for j in 0..seq.len() {
            let t2 = t + seq.degrees[j];
            let image = complex.image(k + 1, t2);
            for v in &reps {
                if !image.contains_rational(&complex.multiply(j, k, t, v)) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

pub fn euler_identity_check(seq: &HomogeneousSequence, max_degree: u32) -> Result<bool> {
    Ok(koszul_homology(seq, max_degree)?.euler_identity_holds())
}

/// Coefficients of `Π (1 - q^{d_i}) / (1 - q)^m` up to `q^D`: the Hilbert
/// function of `A/I` when the sequence is regular.
pub fn regular_quotient_hilbert_function(num_vars: usize, degrees: &[u32], max_degree: u32) -> Vec<BigInt> {
    let len = max_degree as usize + 1;
    let mut series = vec![BigInt::from(0); len];
    series[0] = BigInt::from(1);
    for &d in degrees {
        for t in (d as usize..len).rev() {
            let prev = series[t - d as usize].clone();
            series[t] -= prev;
        }
    }
    for _ in 0..num_vars {
        for t in 1..len {
            let prev = series[t - 1].clone();
            series[t] += prev;
        }
    }
    series
}

#[cfg(test)]
mod tests {
    use super::*;

    fn var(m: usize, i: usize) -> Polynomial {
        Polynomial::variable(m, i).unwrap()
    }

    fn seq(m: usize, elements: Vec<Polynomial>) -> HomogeneousSequence {
        HomogeneousSequence::new(GradedRing::new(m).unwrap(), elements).unwrap()
    }

    #[test]
    fn variables_are_regular() {
        for m in 1..=3 {
            let r = koszul_homology(&HomogeneousSequence::variables(m).unwrap(), 6).unwrap();
            assert!(r.is_acyclic());
            assert_eq!(r.dims[0][0], 1);
            assert!(r.dims[0][1..].iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn repeated_variable() {
        let s = seq(1, vec![var(1, 0), var(1, 0)]);
        let r = koszul_homology(&s, 6).unwrap();
        for t in 0..=6 {
            assert_eq!(r.dims[1][t], u64::from(t == 1), "t={t}");
            assert_eq!(r.dims[2][t], 0);
        }
        assert!(!is_regular_up_to(&s, 8).unwrap());
        // chain side at t = 1: 1 - 2 + 0; homology side 0 - 1
        assert_eq!((r.chain_dims[0][1], r.chain_dims[1][1], r.chain_dims[2][1]), (1, 2, 0));
        assert!(r.euler_identity_holds());
    }

    #[test]
    fn principal_square() {
        let s = seq(2, vec![var(2, 0).pow(2)]);
        let r = koszul_homology(&s, 8).unwrap();
        // A/(x0²) has basis x1^t, x0 x1^{t-1}: Hilbert function 1, 2, 2, 2, ...
        let expected: Vec<u64> = (0..=8).map(|t| if t == 0 { 1 } else { 2 }).collect();
        assert_eq!(r.dims[0], expected);
        assert!(r.dims[1].iter().all(|&x| x == 0));
    }

    #[test]
    fn regularity_examples() {
        assert!(is_regular_up_to(&HomogeneousSequence::variables(2).unwrap(), 8).unwrap());
        let x0x1 = var(2, 0).mul(&var(2, 1)).unwrap();
        assert!(!is_regular_up_to(&seq(2, vec![x0x1, var(2, 0).pow(2)]), 8).unwrap());
    }

    #[test]
    fn tor_examples() {
        let s = HomogeneousSequence::variables(3).unwrap();
        let tor = tor_dimensions(&s, 5).unwrap();
        for (k, row) in tor.iter().enumerate() {
            for (t, &v) in row.iter().enumerate() {
                let want = if t == k { [1, 3, 3, 1][k] } else { 0 };
                assert_eq!(v, want, "k={k} t={t}");
            }
        }
        let sq = seq(2, vec![var(2, 0).pow(2)]);
        let tor = tor_dimensions(&sq, 4).unwrap();
        assert_eq!(tor[0], koszul_homology(&sq, 4).unwrap().dims[0]);
        // Tor_1 counts e_1 ⊗ A/I shifted by 2
        assert_eq!(tor[1], vec![0, 0, 1, 2, 2]);
        let bad = seq(1, vec![var(1, 0), var(1, 0)]);
        assert!(matches!(tor_dimensions(&bad, 4), Err(Error::Precondition(_))));
    }

    #[test]
    fn annihilation_examples() {
        let s = seq(1, vec![var(1, 0), var(1, 0)]);
        assert_eq!(KoszulComplex::new(&s, 4).homology_representatives(1, 1).len(), 1);
        assert!(annihilation_check(&s, 1, 6).unwrap());
        assert!(annihilation_check(&HomogeneousSequence::variables(3).unwrap(), 1, 5).unwrap());
        let x0x1 = var(2, 0).mul(&var(2, 1)).unwrap();
        assert!(annihilation_check(&seq(2, vec![x0x1, var(2, 0).pow(2)]), 1, 7).unwrap());
        assert!(annihilation_check(&s, 0, 4).is_err());
    }

    #[test]
    fn rejects_bad_sequences() {
        let ring = GradedRing::new(2).unwrap();
        let mixed = var(2, 0).add(&var(2, 1).pow(2)).unwrap();
        assert!(HomogeneousSequence::new(ring, vec![mixed]).is_err());
        assert!(HomogeneousSequence::new(ring, vec![]).is_err());
        assert!(HomogeneousSequence::new(ring, vec![Polynomial::constant(2, Rational::one())]).is_err());
        assert!(HomogeneousSequence::new(ring, vec![Polynomial::zero(2)]).is_err());
        assert!(HomogeneousSequence::new(ring, vec![var(3, 0)]).is_err());
        assert!(GradedRing::new(0).is_err());
    }

    #[test]
    fn hilbert_series_formula() {
        let hf = regular_quotient_hilbert_function(2, &[2], 5);
        assert_eq!(hf, [1, 2, 2, 2, 2, 2].map(BigInt::from).to_vec());
        let hf = regular_quotient_hilbert_function(3, &[1, 1, 1], 3);
        assert_eq!(hf, [1, 0, 0, 0].map(BigInt::from).to_vec());
    }

    #[test]
    fn report_serializes() {
        let r = koszul_homology(&seq(1, vec![var(1, 0)]), 2).unwrap();
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(json, r#"{"max_degree":2,"dims":[[1,0,0],[0,0,0]],"chain_dims":[[1,1,1],[0,1,1]]}"#);
    }
}
