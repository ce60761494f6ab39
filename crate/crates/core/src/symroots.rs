//! Polynomials in formal Chern roots and their reduction to elementary
//! symmetric functions.
//!
//! Roots are organised in labelled groups, one group per bundle. A polynomial
//! that is symmetric within every group can be rewritten as a polynomial in the
//! elementary symmetric functions `e_1, ..., e_r` of each group; substituting
//! `e_k ↦ c_k(E)` then yields a class in the Chow ring.

use std::collections::BTreeMap;

use crate::bundle::BundleClass;
use crate::chow::ChowClass;
use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::series::TruncatedSeries;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootGroup {
    pub label: String,
    pub size: usize,
}

/// The ordered list of root groups a polynomial lives over.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RootSystem {
    groups: Vec<RootGroup>,
    offsets: Vec<usize>,
}

impl RootSystem {
    pub fn new<S: Into<String>>(groups: impl IntoIterator<Item = (S, usize)>) -> Self {
        let groups: Vec<RootGroup> = groups
            .into_iter()
            .map(|(label, size)| RootGroup { label: label.into(), size })
            .collect();
        let mut offsets = Vec::with_capacity(groups.len());
        let mut acc = 0;
        for g in &groups {
            offsets.push(acc);
            acc += g.size;
        }
        RootSystem { groups, offsets }
    }

    /// A single group of the given size.
    pub fn single(label: &str, size: usize) -> Self {
        Self::new([(label, size)])
    }

    pub fn groups(&self) -> &[RootGroup] {
        &self.groups
    }

    pub fn num_roots(&self) -> usize {
        self.groups.iter().map(|g| g.size).sum()
    }

    /// Flat variable index of root `i` (0-based) of group `g`.
    pub fn root_index(&self, g: usize, i: usize) -> usize {
        self.offsets[g] + i
    }

    fn group_range(&self, g: usize) -> std::ops::Range<usize> {
        self.offsets[g]..self.offsets[g] + self.groups[g].size
    }

    fn num_elementaries(&self) -> usize {
        self.num_roots()
    }

    /// Index of `e_k` (k ≥ 1) of group `g` among the elementary variables.
    fn elementary_index(&self, g: usize, k: usize) -> usize {
        self.offsets[g] + k - 1
    }

    fn elementary_weights(&self) -> Vec<u32> {
        self.groups
            .iter()
            .flat_map(|g| (1..=g.size as u32).collect::<Vec<_>>())
            .collect()
    }

    fn check_group(&self, g: usize) -> Result<()> {
        if g >= self.groups.len() {
            return Err(Error::domain(format!("no root group {g}")));
        }
        Ok(())
    }
}

/// Sparse polynomial with per-variable weights, truncated by weighted degree.
#[derive(Clone, Debug, PartialEq, Eq)]
struct WeightedPoly {
    weights: Vec<u32>,
    truncation: u32,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl WeightedPoly {
    fn zero(weights: Vec<u32>, truncation: u32) -> Self {
        WeightedPoly { weights, truncation, terms: BTreeMap::new() }
    }

    fn constant(weights: Vec<u32>, truncation: u32, c: Rational) -> Self {
        let mut p = Self::zero(weights, truncation);
        let exps = vec![0; p.weights.len()];
        p.add_term(exps, c);
        p
    }

    fn degree(&self, exps: &[u32]) -> u32 {
        exps.iter().zip(&self.weights).map(|(e, w)| e * w).sum()
    }

    fn add_term(&mut self, exps: Vec<u32>, c: Rational) {
        if c.is_zero() || self.degree(&exps) > self.truncation {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_scaled(&mut self, other: &WeightedPoly, c: &Rational) {
        for (e, a) in &other.terms {
            self.add_term(e.clone(), a * c);
        }
    }

    fn mul(&self, other: &WeightedPoly) -> WeightedPoly {
        let mut out = Self::zero(self.weights.clone(), self.truncation.min(other.truncation));
        for (ea, a) in &self.terms {
            let da = self.degree(ea);
            for (eb, b) in &other.terms {
                if da + other.degree(eb) > out.truncation {
                    continue;
                }
                let e: Vec<u32> = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, a * b);
            }
        }
        out
    }

    fn pow(&self, exp: u32) -> WeightedPoly {
        let mut acc = Self::constant(self.weights.clone(), self.truncation, Rational::one());
        for _ in 0..exp {
            acc = acc.mul(self);
        }
        acc
    }
}

/// A polynomial in the roots of a [`RootSystem`], truncated by total degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    system: RootSystem,
    poly: WeightedPoly,
}

impl MultiPoly {
    pub fn zero(system: &RootSystem, truncation: u32) -> Self {
        MultiPoly {
            poly: WeightedPoly::zero(vec![1; system.num_roots()], truncation),
            system: system.clone(),
        }
    }

    pub fn constant(system: &RootSystem, truncation: u32, c: Rational) -> Self {
        let mut p = Self::zero(system, truncation);
        p.poly.add_term(vec![0; system.num_roots()], c);
        p
    }

    pub fn one(system: &RootSystem, truncation: u32) -> Self {
        Self::constant(system, truncation, Rational::one())
    }

    /// The root `α_i` of group `g`.
    pub fn root(system: &RootSystem, truncation: u32, g: usize, i: usize) -> Result<Self> {
        system.check_group(g)?;
        if i >= system.groups[g].size {
            return Err(Error::domain(format!("group {g} has no root {i}")));
        }
        let mut exps = vec![0; system.num_roots()];
        exps[system.root_index(g, i)] = 1;
        let mut p = Self::zero(system, truncation);
        p.poly.add_term(exps, Rational::one());
        Ok(p)
    }

    /// The linear form `Σ coeffs[j] · root_j` over the flat root indices.
    pub fn linear_form(system: &RootSystem, truncation: u32, coeffs: &[i64]) -> Self {
        assert_eq!(coeffs.len(), system.num_roots(), "one coefficient per root");
        let mut p = Self::zero(system, truncation);
        for (j, &c) in coeffs.iter().enumerate() {
            let mut exps = vec![0; system.num_roots()];
            exps[j] = 1;
            p.poly.add_term(exps, Rational::from(c));
        }
        p
    }

    /// Builds a polynomial from `(exponent vector, coefficient)` pairs.
    pub fn from_terms(
        system: &RootSystem,
        truncation: u32,
        terms: impl IntoIterator<Item = (Vec<u32>, Rational)>,
    ) -> Result<Self> {
        let mut p = Self::zero(system, truncation);
        for (e, c) in terms {
            if e.len() != system.num_roots() {
                return Err(Error::domain("exponent vector length must equal the number of roots"));
            }
            p.poly.add_term(e, c);
        }
        Ok(p)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn truncation(&self) -> u32 {
        self.poly.truncation
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.poly.terms
    }

    pub fn is_zero(&self) -> bool {
        self.poly.terms.is_empty()
    }

    pub fn constant_term(&self) -> Rational {
        self.poly
            .terms
            .get(&vec![0; self.system.num_roots()])
            .cloned()
            .unwrap_or_default()
    }

    fn check_compatible(&self, other: &Self) {
        assert_eq!(self.system, other.system, "polynomials over different root systems");
    }

    pub fn add(&self, other: &Self) -> Self {
        self.check_compatible(other);
        let mut out = self.clone();
        out.poly.truncation = self.truncation().min(other.truncation());
        out.poly.terms.retain(|e, _| e.iter().sum::<u32>() <= out.poly.truncation);
        out.poly.add_scaled(&other.poly, &Rational::one());
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&Rational::from(-1)))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.check_compatible(other);
        MultiPoly { system: self.system.clone(), poly: self.poly.mul(&other.poly) }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = MultiPoly::zero(&self.system, self.truncation());
        out.poly.add_scaled(&self.poly, c);
        out
    }

    pub fn pow(&self, exp: u32) -> Self {
        MultiPoly { system: self.system.clone(), poly: self.poly.pow(exp) }
    }

    /// `Σ_k s_k · self^k`, truncated; `self` must have zero constant term.
    pub fn apply_series(&self, s: &TruncatedSeries) -> Result<Self> {
        if !self.constant_term().is_zero() {
            return Err(Error::domain("series substitution requires zero constant term"));
        }
        let mut acc = MultiPoly::zero(&self.system, self.truncation());
        let mut power = MultiPoly::one(&self.system, self.truncation());
        for k in 0..=s.order().min(self.truncation() as usize) {
            let c = s.coeff(k);
            if !c.is_zero() {
                acc.poly.add_scaled(&power.poly, &c);
            }
            power = power.mul(self);
        }
        Ok(acc)
    }

    /// Checks invariance under every adjacent transposition within each
    /// group; adjacent swaps generate the full symmetric group.
    pub fn check_symmetric(&self) -> Result<()> {
        for (g, group) in self.system.groups.iter().enumerate() {
            for i in 0..group.size.saturating_sub(1) {
                let a = self.system.root_index(g, i);
                let swapped: BTreeMap<Vec<u32>, Rational> = self
                    .poly
                    .terms
                    .iter()
                    .map(|(e, c)| {
                        let mut e = e.clone();
                        e.swap(a, a + 1);
                        (e, c.clone())
                    })
                    .collect();
                if swapped != self.poly.terms {
                    return Err(Error::NotSymmetric {
                        group: group.label.clone(),
                        first: i + 1,
                        second: i + 2,
                    });
                }
            }
        }
        Ok(())
    }
}

/// `e_k` of the roots of group `g`; `e_0 = 1`.
pub fn elementary_symmetric(system: &RootSystem, truncation: u32, g: usize, k: usize) -> Result<MultiPoly> {
    system.check_group(g)?;
    let size = system.groups[g].size;
    if k > size {
        return Err(Error::domain(format!("e_{k} requested for a group of {size} roots")));
    }
    let range = system.group_range(g);
    let mut p = MultiPoly::zero(system, truncation);
    for subset in k_subsets(range.len(), k) {
        let mut exps = vec![0; system.num_roots()];
        for i in subset {
            exps[range.start + i] = 1;
        }
        p.poly.add_term(exps, Rational::one());
    }
    Ok(p)
}

/// All `k`-element subsets of `0..n`, in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// All `k`-element multisets of `0..n` as non-decreasing index lists.
pub fn k_multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k == 0 || n > 0 {
        go(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// A polynomial in the elementary symmetric functions of each root group,
/// with `e_k` carrying degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryExpansion {
    system: RootSystem,
    poly: WeightedPoly,
}

impl ElementaryExpansion {
    pub fn zero(system: &RootSystem, truncation: u32) -> Self {
        ElementaryExpansion {
            poly: WeightedPoly::zero(system.elementary_weights(), truncation),
            system: system.clone(),
        }
    }

    pub fn constant(system: &RootSystem, truncation: u32, c: Rational) -> Self {
        ElementaryExpansion {
            poly: WeightedPoly::constant(system.elementary_weights(), truncation, c),
            system: system.clone(),
        }
    }

    /// The symbol `e_k` of group `g` (k ≥ 1); `k = 0` gives 1.
    pub fn elementary(system: &RootSystem, truncation: u32, g: usize, k: usize) -> Result<Self> {
        system.check_group(g)?;
        if k > system.groups[g].size {
            return Err(Error::domain(format!("group {g} has no e_{k}")));
        }
        if k == 0 {
            return Ok(Self::constant(system, truncation, Rational::one()));
        }
        let mut out = Self::zero(system, truncation);
        let mut exps = vec![0; system.num_elementaries()];
        exps[system.elementary_index(g, k)] = 1;
        out.poly.add_term(exps, Rational::one());
        Ok(out)
    }

    pub fn system(&self) -> &RootSystem {
        &self.system
    }

    pub fn truncation(&self) -> u32 {
        self.poly.truncation
    }

    /// Exponent of `e_k` of group `g` in a term's exponent vector.
    pub fn exponent(&self, exps: &[u32], g: usize, k: usize) -> u32 {
        exps[self.system.elementary_index(g, k)]
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Rational> {
        &self.poly.terms
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.system, other.system, "expansions over different root systems");
        let mut out = self.clone();
        out.poly.add_scaled(&other.poly, &Rational::one());
        out
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero(&self.system, self.truncation());
        out.poly.add_scaled(&self.poly, c);
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.system, other.system, "expansions over different root systems");
        ElementaryExpansion { system: self.system.clone(), poly: self.poly.mul(&other.poly) }
    }

    /// Substitutes each `e_k` by the k-th elementary symmetric polynomial of its group's roots.
    pub fn expand(&self) -> MultiPoly {
        let t = self.truncation();
        let elementaries: Vec<Vec<MultiPoly>> = (0..self.system.groups.len())
            .map(|g| {
                (1..=self.system.groups[g].size)
                    .map(|k| elementary_symmetric(&self.system, t, g, k).expect("k in range"))
                    .collect()
            })
            .collect();
        let mut out = MultiPoly::zero(&self.system, t);
        for (exps, c) in &self.poly.terms {
            let mut term = MultiPoly::constant(&self.system, t, c.clone());
            for (g, es) in elementaries.iter().enumerate() {
                for (k, e) in es.iter().enumerate() {
                    let p = self.exponent(exps, g, k + 1);
                    if p > 0 {
                        term = term.mul(&e.pow(p));
                    }
                }
            }
            out.poly.add_scaled(&term.poly, &Rational::one());
        }
        out
    }
}

/// Rewrites a polynomial symmetric within each root group in terms of the
/// groups' elementary symmetric functions.
///
/// Groups are reduced one at a time by leading-term subtraction in
/// lexicographic order; roots of the other groups ride along as coefficients.
pub fn reduce_to_elementaries(p: &MultiPoly) -> Result<ElementaryExpansion> {
    p.check_symmetric()?;
    let system = &p.system;
    let roots = system.num_roots();
    let t = p.truncation();

    // Mixed layout: all roots first, then all elementary symbols.
    let mut weights = vec![1u32; roots];
    weights.extend(system.elementary_weights());
    let mut mixed = WeightedPoly::zero(weights.clone(), t);
    for (e, c) in &p.poly.terms {
        let mut ext = e.clone();
        ext.resize(weights.len(), 0);
        mixed.add_term(ext, c.clone());
    }

    for g in 0..system.groups.len() {
        let range = system.group_range(g);
        let size = range.len();
        // e_1..e_size of this group, in mixed coordinates.
        let group_elementaries: Vec<WeightedPoly> = (1..=size)
            .map(|k| {
                let mut ek = WeightedPoly::zero(weights.clone(), t);
                for subset in k_subsets(size, k) {
                    let mut exps = vec![0; weights.len()];
                    for i in subset {
                        exps[range.start + i] = 1;
                    }
                    ek.add_term(exps, Rational::one());
                }
                ek
            })
            .collect();

        loop {
            let lead = mixed
                .terms
                .keys()
                .map(|e| &e[range.clone()])
                .filter(|a| a.iter().any(|&x| x > 0))
                .max()
                .map(<[u32]>::to_vec);
            let Some(lead) = lead else { break };
            if lead.windows(2).any(|w| w[0] < w[1]) {
                return Err(Error::Invariant(format!(
                    "leading exponent {lead:?} of group {:?} is not a partition",
                    system.groups[g].label
                )));
            }

            // Coefficient of the leading root monomial, as a polynomial in everything else.
            let mut coeff = WeightedPoly::zero(weights.clone(), t);
            for (e, c) in &mixed.terms {
                if e[range.clone()] == lead[..] {
                    let mut rest = e.clone();
                    rest[range.clone()].iter_mut().for_each(|x| *x = 0);
                    coeff.add_term(rest, c.clone());
                }
            }

            // e_1^{a1-a2} e_2^{a2-a3} ... e_r^{ar}
            let mut product = WeightedPoly::constant(weights.clone(), t, Rational::one());
            let mut symbol = vec![0u32; weights.len()];
            for k in 0..size {
                let next = lead.get(k + 1).copied().unwrap_or(0);
                let m = lead[k] - next;
                if m > 0 {
                    product = product.mul(&group_elementaries[k].pow(m));
                    symbol[roots + system.elementary_index(g, k + 1)] = m;
                }
            }
            let mut symbol_poly = WeightedPoly::zero(weights.clone(), t);
            symbol_poly.add_term(symbol, Rational::one());

            mixed.add_scaled(&coeff.mul(&product), &Rational::from(-1));
            mixed.add_scaled(&coeff.mul(&symbol_poly), &Rational::one());
        }
    }

    let mut out = ElementaryExpansion::zero(system, t);
    for (e, c) in mixed.terms {
        if e[..roots].iter().any(|&x| x > 0) {
            return Err(Error::Invariant("root monomial survived reduction".into()));
        }
        out.poly.add_term(e[roots..].to_vec(), c);
    }
    Ok(out)
}

/// Substitutes `e_k ↦ c_k(E_g)` for the bundle attached to each group and
/// evaluates in the Chow ring. Classes above the expansion's truncation are
/// not represented in the expansion, so the result is exact only up to that
/// codimension.
pub fn evaluate_universal(expansion: &ElementaryExpansion, bundles: &[&BundleClass]) -> Result<ChowClass> {
    let system = &expansion.system;
    if bundles.len() != system.groups.len() {
        return Err(Error::domain(format!(
            "{} root groups but {} bundles",
            system.groups.len(),
            bundles.len()
        )));
    }
    let Some(first) = bundles.first() else {
        return Err(Error::domain("evaluation needs at least one bundle to fix the ambient space"));
    };
    let n = first.ambient();
    for (group, bundle) in system.groups.iter().zip(bundles) {
        if bundle.ambient() != n {
            return Err(Error::AmbientMismatch { left: n, right: bundle.ambient() });
        }
        if bundle.rank() != group.size {
            return Err(Error::domain(format!(
                "group {:?} has {} roots but the bundle has rank {}",
                group.label,
                group.size,
                bundle.rank()
            )));
        }
    }

    let mut out = ChowClass::zero(n);
    for (exps, c) in &expansion.poly.terms {
        let mut term = ChowClass::scalar(n, c.clone());
        for (g, bundle) in bundles.iter().enumerate() {
            for k in 1..=system.groups[g].size {
                let p = expansion.exponent(exps, g, k);
                if p > 0 {
                    term = &term * &bundle.chern_class(k).pow(p);
                }
            }
        }
        out = &out + &term;
    }
    Ok(out)
}
