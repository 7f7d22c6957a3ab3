//! Multi-indices over `N^{d+1}`, scalings and the combinatorics built on them.
//!
//! A multi-index collects one natural number per coordinate direction
//! (time plus `d` spatial directions, say). A scaling assigns a positive
//! weight to each direction; all gradings are computed against it.
//! Subtraction is partial: whenever a component would go negative the
//! operation reports `None` and the caller drops the corresponding term.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{BigUint, One, Zero};

/// Exact rational scalar used for every coefficient in the crate.
pub type Q = BigRational;

/// Rational from a machine integer.
pub fn q_int(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Rational `num / den`.
pub fn q_ratio(num: i64, den: i64) -> Q {
    Q::new(BigInt::from(num), BigInt::from(den))
}

/// Rational from an unsigned big integer.
pub fn q_biguint(n: &BigUint) -> Q {
    Q::from_integer(BigInt::from(n.clone()))
}

/// Element of `N^{d+1}`, stored componentwise.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MultiIndex(Vec<u32>);

/// Positive weight per direction; `weight` gradings are taken against it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scaling(Vec<u32>);

/// Signed counterpart of [`MultiIndex`], used for decoration shifts that may
/// be applied in either direction.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IndexOffset(Vec<i64>);

impl MultiIndex {
    pub fn new(components: Vec<u32>) -> Self {
        MultiIndex(components)
    }

    pub fn zero(dim: usize) -> Self {
        MultiIndex(vec![0; dim])
    }

    /// Unit vector `e_i`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = vec![0; dim];
        v[i] = 1;
        MultiIndex(v)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &MultiIndex) -> MultiIndex {
        debug_assert_eq!(self.dim(), other.dim());
        MultiIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Componentwise subtraction; `None` when any component would go negative.
    pub fn checked_sub(&self, other: &MultiIndex) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), other.dim());
        self.0
            .iter()
            .zip(&other.0)
            .map(|(a, b)| a.checked_sub(*b))
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }

    /// Componentwise `self <= other`.
    pub fn leq(&self, other: &MultiIndex) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Plain component sum `|k|`.
    pub fn abs(&self) -> u64 {
        self.0.iter().map(|&c| c as u64).sum()
    }

    /// Weighted size `|k|_s`.
    pub fn weight(&self, s: &Scaling) -> u64 {
        debug_assert_eq!(self.dim(), s.dim());
        self.0
            .iter()
            .zip(s.components())
            .map(|(&c, &w)| c as u64 * w as u64)
            .sum()
    }

    /// Componentwise factorial `k! = prod_i k_i!`.
    pub fn factorial(&self) -> BigUint {
        self.0.iter().map(|&c| factorial(c as u64)).product()
    }

    /// Apply a signed shift; `None` when any component would go negative.
    pub fn offset(&self, off: &IndexOffset) -> Option<MultiIndex> {
        debug_assert_eq!(self.dim(), off.dim());
        self.0
            .iter()
            .zip(off.components())
            .map(|(&c, &o)| {
                let r = c as i64 + o;
                if r < 0 {
                    None
                } else {
                    Some(r as u32)
                }
            })
            .collect::<Option<Vec<_>>>()
            .map(MultiIndex)
    }
}

impl Scaling {
    /// Weights must all be positive.
    pub fn new(weights: Vec<u32>) -> Self {
        assert!(weights.iter().all(|&w| w > 0), "scaling weights must be positive");
        Scaling(weights)
    }

    /// The default scaling `(1, ..., 1)`.
    pub fn ones(dim: usize) -> Self {
        Scaling(vec![1; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[u32] {
        &self.0
    }
}

impl IndexOffset {
    pub fn new(components: Vec<i64>) -> Self {
        IndexOffset(components)
    }

    pub fn zero(dim: usize) -> Self {
        IndexOffset(vec![0; dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[i64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&c| c == 0)
    }

    pub fn neg(&self) -> IndexOffset {
        IndexOffset(self.0.iter().map(|&c| -c).collect())
    }

    pub fn add(&self, other: &IndexOffset) -> IndexOffset {
        IndexOffset(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl From<&MultiIndex> for IndexOffset {
    fn from(m: &MultiIndex) -> Self {
        IndexOffset(m.components().iter().map(|&c| c as i64).collect())
    }
}

pub fn factorial(n: u64) -> BigUint {
    (1..=n).map(BigUint::from).fold(BigUint::one(), |a, b| a * b)
}

/// Scalar binomial `C(n, k)`, zero when `k > n`.
pub fn binomial_u64(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    for i in 0..k.min(n - k) {
        num *= BigUint::from(n - i);
        den *= BigUint::from(i + 1);
    }
    num / den
}

/// Componentwise binomial `C(n, k) = prod_i C(n_i, k_i)`, zero unless `k <= n`.
pub fn binomial(n: &MultiIndex, k: &MultiIndex) -> BigUint {
    if !k.leq(n) {
        return BigUint::zero();
    }
    n.components()
        .iter()
        .zip(k.components())
        .map(|(&ni, &ki)| binomial_u64(ni as u64, ki as u64))
        .product()
}

/// Componentwise multinomial
/// `C(k; l_1, ..., l_n) = k! / ((k - sum l_i)! * prod l_i!)`,
/// zero unless `sum l_i <= k`.
pub fn multinomial(k: &MultiIndex, parts: &[MultiIndex]) -> BigUint {
    let mut total = MultiIndex::zero(k.dim());
    for p in parts {
        total = total.add(p);
    }
    let rest = match k.checked_sub(&total) {
        Some(r) => r,
        None => return BigUint::zero(),
    };
    let mut den = rest.factorial();
    for p in parts {
        den *= p.factorial();
    }
    k.factorial() / den
}

/// All multi-indices `m` with `m <= cap` componentwise, in lexicographic order.
pub fn indices_up_to(cap: &MultiIndex) -> Vec<MultiIndex> {
    let mut out = vec![MultiIndex::zero(cap.dim())];
    for (i, &c) in cap.components().iter().enumerate() {
        let mut next = Vec::new();
        for m in &out {
            for v in 0..=c {
                let mut comps = m.components().to_vec();
                comps[i] = v;
                next.push(MultiIndex(comps));
            }
        }
        out = next;
    }
    out.sort();
    out
}

/// All multi-indices of weighted size at most `bound`.
pub fn indices_weight_at_most(s: &Scaling, bound: u64) -> Vec<MultiIndex> {
    let cap = MultiIndex::new(
        s.components()
            .iter()
            .map(|&w| (bound / w as u64) as u32)
            .collect(),
    );
    indices_up_to(&cap)
        .into_iter()
        .filter(|m| m.weight(s) <= bound)
        .collect()
}

/// All tuples `(l_1, ..., l_n)` with `l_i <= caps[i]` componentwise.
pub fn index_tuples_up_to(caps: &[MultiIndex]) -> Vec<Vec<MultiIndex>> {
    let mut out = vec![Vec::new()];
    for cap in caps {
        let choices = indices_up_to(cap);
        let mut next = Vec::new();
        for t in &out {
            for c in &choices {
                let mut t2 = t.clone();
                t2.push(c.clone());
                next.push(t2);
            }
        }
        out = next;
    }
    out
}

/// All ways to write `k = m_1 + ... + m_parts` as an ordered sum.
pub fn compositions(k: &MultiIndex, parts: usize) -> Vec<Vec<MultiIndex>> {
    if parts == 0 {
        return if k.is_zero() { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in indices_up_to(k) {
        let rest = k.checked_sub(&first).expect("bounded by k");
        for mut tail in compositions(&rest, parts - 1) {
            let mut comp = vec![first.clone()];
            comp.append(&mut tail);
            out.push(comp);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mi(v: &[u32]) -> MultiIndex {
        MultiIndex::new(v.to_vec())
    }

    #[test]
    fn subtraction_is_partial() {
        assert_eq!(mi(&[2, 1]).checked_sub(&mi(&[1, 1])), Some(mi(&[1, 0])));
        assert_eq!(mi(&[2, 0]).checked_sub(&mi(&[1, 1])), None);
    }

    #[test]
    fn weights_follow_scaling() {
        let s = Scaling::new(vec![2, 1]);
        assert_eq!(mi(&[1, 3]).weight(&s), 5);
        assert_eq!(mi(&[0, 0]).weight(&s), 0);
    }

    #[test]
    fn componentwise_binomial() {
        assert_eq!(binomial(&mi(&[4, 2]), &mi(&[2, 1])), BigUint::from(12u32));
        assert_eq!(binomial(&mi(&[1, 0]), &mi(&[0, 1])), BigUint::zero());
    }

    #[test]
    fn multinomial_matches_factorials() {
        // C((3); (1), (1)) = 3!/ (1! 1! 1!) = 6
        let k = mi(&[3]);
        assert_eq!(multinomial(&k, &[mi(&[1]), mi(&[1])]), BigUint::from(6u32));
        assert_eq!(multinomial(&k, &[mi(&[2]), mi(&[2])]), BigUint::zero());
    }

    #[test]
    fn composition_count() {
        // weak compositions of 2 into 3 parts: C(4,2) = 6
        assert_eq!(compositions(&mi(&[2]), 3).len(), 6);
        assert_eq!(compositions(&mi(&[1, 1]), 2).len(), 4);
    }

    #[test]
    fn enumeration_is_sorted_and_complete() {
        let all = indices_up_to(&mi(&[1, 2]));
        assert_eq!(all.len(), 6);
        let mut sorted = all.clone();
        sorted.sort();
        assert_eq!(all, sorted);
    }
}
