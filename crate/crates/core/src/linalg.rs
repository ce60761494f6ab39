//! Exact sparse linear algebra over ℚ by fraction-free elimination.
//!
//! Vectors are scaled to primitive integer vectors on entry (scaling does not
//! change spans), and elimination stays in ℤ: combining two rows multiplies
//! each by the other's leading coefficient divided by their gcd, then divides
//! out the content of the result.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::rational::Rational;

/// Sparse integer vector, sorted by index, no zero entries.
pub type SparseVec = Vec<(usize, BigInt)>;

/// Clears denominators and removes the content of a rational sparse vector.
pub fn primitive(v: &[(usize, Rational)]) -> SparseVec {
    let denom = Rational::common_denominator(v.iter().map(|(_, c)| c));
    let mut out: SparseVec = v
        .iter()
        .filter(|(_, c)| !c.is_zero())
        .map(|(i, c)| (*i, c.numer() * (&denom / c.denom())))
        .collect();
    out.sort_by_key(|(i, _)| *i);
    make_primitive(&mut out);
    out
}

fn make_primitive(v: &mut SparseVec) {
    let g = v.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c));
    if !g.is_zero() && !g.is_one() {
        for (_, c) in v.iter_mut() {
            *c = &*c / &g;
        }
    }
}

/// `a·x - b·y` for sparse `x`, `y`.
fn combine(a: &BigInt, x: &SparseVec, b: &BigInt, y: &SparseVec) -> SparseVec {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j >= y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i >= x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push((x[i].0, a * &x[i].1));
            i += 1;
        } else if take_y {
            out.push((y[j].0, -(b * &y[j].1)));
            j += 1;
        } else {
            let c = a * &x[i].1 - b * &y[j].1;
            if !c.is_zero() {
                out.push((x[i].0, c));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// A row-echelon basis of a subspace, keyed by leading index.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    pivots: BTreeMap<usize, SparseVec>,
}

impl Echelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    /// Eliminates leading entries against the pivots until the lead is free
    /// or the vector vanishes.
    fn reduce_lead(&self, mut v: SparseVec, stop_at: usize) -> SparseVec {
        while let Some((lead, coeff)) = v.first().cloned() {
            if lead >= stop_at {
                break;
            }
            let Some(p) = self.pivots.get(&lead) else { break };
            let pc = &p[0].1;
            let g = pc.gcd(&coeff);
            v = combine(&(pc / &g), &v, &(&coeff / &g), p);
            make_primitive(&mut v);
        }
        v
    }

    /// Adds a vector; returns whether it was independent of the span.
    pub fn insert(&mut self, v: SparseVec) -> bool {
        let v = self.reduce_lead(v, usize::MAX);
        match v.first() {
            None => false,
            Some((lead, _)) => {
                let lead = *lead;
                self.pivots.insert(lead, v);
                true
            }
        }
    }

    pub fn insert_rational(&mut self, v: &[(usize, Rational)]) -> bool {
        self.insert(primitive(v))
    }

    pub fn contains(&self, v: SparseVec) -> bool {
        self.reduce_lead(v, usize::MAX).is_empty()
    }

    pub fn contains_rational(&self, v: &[(usize, Rational)]) -> bool {
        self.contains(primitive(v))
    }
}

/// Rank of the matrix whose columns are the given sparse vectors.
pub fn rank_of_columns(columns: &[Vec<(usize, Rational)>]) -> usize {
    let mut e = Echelon::new();
    for c in columns {
        e.insert_rational(c);
    }
    e.rank()
}

/// A basis of the kernel of the map sending basis vector `j` to `columns[j]`,
/// as integer coefficient vectors indexed by `j`.
pub fn kernel_of_columns(columns: &[Vec<(usize, Rational)>], target_dim: usize) -> Vec<SparseVec> {
    // Augment column j with the unit vector e_j placed after the target coordinates.
    let mut e = Echelon::new();
    let mut kernel = Vec::new();
    for (j, c) in columns.iter().enumerate() {
        let mut v: Vec<(usize, Rational)> = c.clone();
        v.push((target_dim + j, Rational::one()));
        let reduced = e.reduce_lead(primitive(&v), target_dim);
        match reduced.first() {
            Some((lead, _)) if *lead < target_dim => {
                e.pivots.insert(*lead, reduced);
            }
            Some(_) => {
                let mut k: SparseVec = reduced.into_iter().map(|(i, c)| (i - target_dim, c)).collect();
                if k.first().is_some_and(|(_, c)| c.is_negative()) {
                    k.iter_mut().for_each(|(_, c)| *c = -&*c);
                }
                kernel.push(k);
            }
            None => unreachable!("the unit part never cancels"),
        }
    }
    kernel
}

/// Dense rank over ℚ; convenience wrapper for small matrices given by rows.
pub fn rank_dense(rows: &[Vec<Rational>]) -> usize {
    let mut e = Echelon::new();
    for r in rows {
        let v: Vec<(usize, Rational)> = r.iter().cloned().enumerate().collect();
        e.insert_rational(&v);
    }
    e.rank()
}
