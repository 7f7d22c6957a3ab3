//! Linear combinations over an ordered basis with exact rational coefficients.
//!
//! Zero coefficients are never stored, so structural equality of two
//! [`LinComb`] values is equality in the free vector space. Iteration is in
//! basis order, which makes all printed output deterministic.

use std::collections::BTreeMap;

use num::{BigUint, Zero};

use crate::index::{q_biguint, Q};

/// Finitely supported map from basis elements to rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinComb<B: Ord + Clone> {
    terms: BTreeMap<B, Q>,
}

impl<B: Ord + Clone> Default for LinComb<B> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone> LinComb<B> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(b: B) -> Self {
        let mut lc = Self::zero();
        lc.add_term(b, Q::from_integer(1.into()));
        lc
    }

    pub fn term(b: B, c: Q) -> Self {
        let mut lc = Self::zero();
        lc.add_term(b, c);
        lc
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&B, &Q)> {
        self.terms.iter()
    }

    pub fn coeff(&self, b: &B) -> Q {
        self.terms.get(b).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, b: B, c: Q) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry(b);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().clone() + c;
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &LinComb<B>) {
        for (b, c) in other.iter() {
            self.add_term(b.clone(), c.clone());
        }
    }

    pub fn add(&self, other: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &LinComb<B>) -> LinComb<B> {
        let mut out = self.clone();
        for (b, c) in other.iter() {
            out.add_term(b.clone(), -c.clone());
        }
        out
    }

    pub fn scaled(&self, c: &Q) -> LinComb<B> {
        if c.is_zero() {
            return LinComb::zero();
        }
        let mut out = LinComb::zero();
        for (b, a) in self.iter() {
            out.add_term(b.clone(), a.clone() * c.clone());
        }
        out
    }

    pub fn neg(&self) -> LinComb<B> {
        self.scaled(&-Q::from_integer(1.into()))
    }

    /// Linear extension of a basis map `B -> LinComb<C>`.
    pub fn map<C: Ord + Clone>(&self, f: impl Fn(&B) -> LinComb<C>) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            let image = f(b);
            for (b2, c2) in image.iter() {
                out.add_term(b2.clone(), c.clone() * c2.clone());
            }
        }
        out
    }

    /// Linear extension of a basis map `B -> C`.
    pub fn map_basis<C: Ord + Clone>(&self, f: impl Fn(&B) -> C) -> LinComb<C> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            out.add_term(f(b), c.clone());
        }
        out
    }

    /// Drop terms failing the predicate.
    pub fn filter(&self, keep: impl Fn(&B) -> bool) -> LinComb<B> {
        let mut out = LinComb::zero();
        for (b, c) in self.iter() {
            if keep(b) {
                out.add_term(b.clone(), c.clone());
            }
        }
        out
    }
}

/// Bilinear extension of a basis map `(A, B) -> LinComb<C>`.
pub fn bilinear<A, B, C>(
    x: &LinComb<A>,
    y: &LinComb<B>,
    f: impl Fn(&A, &B) -> LinComb<C>,
) -> LinComb<C>
where
    A: Ord + Clone,
    B: Ord + Clone,
    C: Ord + Clone,
{
    let mut out = LinComb::zero();
    for (a, ca) in x.iter() {
        for (b, cb) in y.iter() {
            let image = f(a, b);
            for (c, cc) in image.iter() {
                out.add_term(c.clone(), ca.clone() * cb.clone() * cc.clone());
            }
        }
    }
    out
}

/// Tensor product of two linear combinations, basis pairs ordered
/// lexicographically.
pub fn tensor<A: Ord + Clone, B: Ord + Clone>(
    x: &LinComb<A>,
    y: &LinComb<B>,
) -> LinComb<(A, B)> {
    bilinear(x, y, |a, b| LinComb::basis((a.clone(), b.clone())))
}

/// Basis elements that carry a symmetry factor, i.e. the diagonal value of
/// the canonical bilinear pairing on the span of the basis.
pub trait SymmetryFactor {
    fn symmetry_factor(&self) -> BigUint;
}

impl<A: SymmetryFactor, B: SymmetryFactor> SymmetryFactor for (A, B) {
    fn symmetry_factor(&self) -> BigUint {
        self.0.symmetry_factor() * self.1.symmetry_factor()
    }
}

impl<A: SymmetryFactor, B: SymmetryFactor, C: SymmetryFactor> SymmetryFactor for (A, B, C) {
    fn symmetry_factor(&self) -> BigUint {
        self.0.symmetry_factor() * self.1.symmetry_factor() * self.2.symmetry_factor()
    }
}

/// Symmetry pairing: basis elements are orthogonal, and each pairs with
/// itself to its symmetry factor.
pub fn pairing<B>(x: &LinComb<B>, y: &LinComb<B>) -> Q
where
    B: Ord + Clone + SymmetryFactor,
{
    let mut out = Q::zero();
    for (b, c) in x.iter() {
        let yc = y.coeff(b);
        if !yc.is_zero() {
            out += c.clone() * yc * q_biguint(&b.symmetry_factor());
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index::q_int;

    #[test]
    fn zero_coefficients_are_not_stored() {
        let mut lc = LinComb::basis("a");
        lc.add_term("a", q_int(-1));
        assert!(lc.is_zero());
        assert_eq!(lc, LinComb::zero());
    }

    #[test]
    fn bilinear_distributes() {
        let x = LinComb::basis(1u32).add(&LinComb::term(2u32, q_int(3)));
        let y = LinComb::basis(10u32);
        let prod = bilinear(&x, &y, |a, b| LinComb::basis(a + b));
        assert_eq!(prod.coeff(&11), q_int(1));
        assert_eq!(prod.coeff(&12), q_int(3));
    }

    impl SymmetryFactor for u32 {
        fn symmetry_factor(&self) -> BigUint {
            BigUint::from(*self)
        }
    }

    #[test]
    fn pairing_is_diagonal() {
        let x = LinComb::basis(2u32).add(&LinComb::basis(3u32));
        let y = LinComb::term(2u32, q_int(5));
        assert_eq!(pairing(&x, &y), q_int(10));
    }
}
