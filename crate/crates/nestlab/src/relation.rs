//! Binary relations on a finite space.
//!
//! Relations are stored strictly: self pairs are rejected at construction.
//! Where a reflexive companion is needed (interval topologies), the closure
//! is taken on the fly rather than stored.

use std::fmt;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, PointSet};

/// A strict binary relation, one bit per ordered pair.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    space: FiniteSpace,
    bits: Vec<u64>,
}

/// Classification of a relation as an order.
///
/// On a finite carrier every total strict order is a well-order, so
/// `Linear` is never produced here; it is kept so that consumers can spell
/// the distinction that matters on infinite carriers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum OrderClass {
    NotTransitive,
    Partial,
    Linear,
    Well,
}

impl OrderClass {
    pub fn is_linear(self) -> bool {
        matches!(self, OrderClass::Linear | OrderClass::Well)
    }
}

impl Relation {
    pub fn empty(space: FiniteSpace) -> Self {
        let n = space.size();
        Relation {
            space,
            bits: vec![0; (n * n).div_ceil(64)],
        }
    }

    pub fn from_pairs(space: FiniteSpace, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut r = Relation::empty(space);
        for &(x, y) in pairs {
            if x >= space.size() || y >= space.size() {
                return Err(Error::input(format!(
                    "pair ({x},{y}) out of range for a space of {} points",
                    space.size()
                )));
            }
            if x == y {
                return Err(Error::input(format!(
                    "self pair ({x},{x}) not allowed: relations are strict"
                )));
            }
            r.set(x, y, true);
        }
        Ok(r)
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    fn index(&self, x: usize, y: usize) -> usize {
        x * self.space.size() + y
    }

    pub fn holds(&self, x: usize, y: usize) -> bool {
        let i = self.index(x, y);
        self.bits[i / 64] >> (i % 64) & 1 == 1
    }

    pub(crate) fn set(&mut self, x: usize, y: usize, value: bool) {
        debug_assert!(x != y || !value, "strict relation");
        let i = self.index(x, y);
        if value {
            self.bits[i / 64] |= 1 << (i % 64);
        } else {
            self.bits[i / 64] &= !(1 << (i % 64));
        }
    }

    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let n = self.space.size();
        let mut out = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if self.holds(x, y) {
                    out.push((x, y));
                }
            }
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.space.size();
        for x in 0..n {
            for y in 0..n {
                if !self.holds(x, y) {
                    continue;
                }
                for z in 0..n {
                    if self.holds(y, z) && !self.holds(x, z) {
                        return false;
                    }
                }
            }
        }
        true
    }

    /// Every two distinct points are related one way or the other.
    pub fn is_total(&self) -> bool {
        let n = self.space.size();
        for x in 0..n {
            for y in (x + 1)..n {
                if !self.holds(x, y) && !self.holds(y, x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_antisymmetric(&self) -> bool {
        let n = self.space.size();
        for x in 0..n {
            for y in (x + 1)..n {
                if self.holds(x, y) && self.holds(y, x) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_linear(&self) -> bool {
        self.classify().is_linear()
    }

    /// One of `NotTransitive`, `Partial`, `Well`.
    ///
    /// A strict transitive relation cannot hold a two-cycle (that would force
    /// a self pair), so transitivity already makes it a strict partial order;
    /// totality then gives a linear order, and finite linear orders are
    /// well-orders.
    pub fn classify(&self) -> OrderClass {
        if !self.is_transitive() {
            return OrderClass::NotTransitive;
        }
        debug_assert!(self.is_antisymmetric());
        if self.is_total() {
            OrderClass::Well
        } else {
            OrderClass::Partial
        }
    }

    /// The relation with every pair flipped.
    pub fn reverse(&self) -> Relation {
        let n = self.space.size();
        let mut r = Relation::empty(self.space);
        for x in 0..n {
            for y in 0..n {
                if self.holds(x, y) {
                    r.set(y, x, true);
                }
            }
        }
        r
    }

    /// True iff between any two related points a third one sits strictly.
    ///
    /// Requires transitivity; a non-transitive input is an input error.
    pub fn is_dense_order(&self) -> Result<bool> {
        if !self.is_transitive() {
            return Err(Error::input("dense-order test requires a transitive relation"));
        }
        let n = self.space.size();
        for x in 0..n {
            for y in 0..n {
                if !self.holds(x, y) {
                    continue;
                }
                let has_mid = (0..n).any(|z| self.holds(x, z) && self.holds(z, y));
                if !has_mid {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Strict down ray of `x`: everything below it.
    pub fn down_ray(&self, x: usize) -> PointSet {
        let mut s = PointSet::empty(self.space);
        for y in self.space.points() {
            if self.holds(y, x) {
                s.insert(y);
            }
        }
        s
    }

    /// Strict up ray of `x`: everything above it.
    pub fn up_ray(&self, x: usize) -> PointSet {
        let mut s = PointSet::empty(self.space);
        for y in self.space.points() {
            if self.holds(x, y) {
                s.insert(y);
            }
        }
        s
    }

    /// Weak down ray: `x` together with everything below it.
    pub fn weak_down_ray(&self, x: usize) -> PointSet {
        let mut s = self.down_ray(x);
        s.insert(x);
        s
    }

    /// Weak up ray: `x` together with everything above it.
    pub fn weak_up_ray(&self, x: usize) -> PointSet {
        let mut s = self.up_ray(x);
        s.insert(x);
        s
    }

    /// Elements of `candidates` with nothing of `candidates` below them.
    pub fn minimal_in(&self, candidates: &PointSet) -> Vec<usize> {
        candidates
            .iter()
            .filter(|&a| !candidates.iter().any(|x| self.holds(x, a)))
            .collect()
    }

    /// Elements of `candidates` with nothing of `candidates` above them.
    pub fn maximal_in(&self, candidates: &PointSet) -> Vec<usize> {
        candidates
            .iter()
            .filter(|&a| !candidates.iter().any(|x| self.holds(a, x)))
            .collect()
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Relation{:?}", self.pairs())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    #[test]
    fn self_pairs_are_rejected() {
        let x = space(2);
        assert!(Relation::from_pairs(x, &[(0, 0)]).is_err());
        assert!(Relation::from_pairs(x, &[(0, 2)]).is_err());
    }

    #[test]
    fn classification_examples() {
        let x = space(3);
        let broken = Relation::from_pairs(x, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(broken.classify(), OrderClass::NotTransitive);

        let chain = Relation::from_pairs(x, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(chain.classify(), OrderClass::Well);
        assert!(chain.is_linear());

        let empty = Relation::empty(space(2));
        assert_eq!(empty.classify(), OrderClass::Partial);
    }

    #[test]
    fn two_cycle_is_not_transitive() {
        let x = space(2);
        let cyc = Relation::from_pairs(x, &[(0, 1), (1, 0)]).unwrap();
        assert_eq!(cyc.classify(), OrderClass::NotTransitive);
    }

    #[test]
    fn reverse_is_an_involution() {
        let x = space(3);
        let r = Relation::from_pairs(x, &[(0, 1), (2, 1)]).unwrap();
        assert_eq!(r.reverse().reverse(), r);
        assert!(r.reverse().holds(1, 0));
    }

    #[test]
    fn dense_order_examples() {
        let x = space(3);
        let chain = Relation::from_pairs(x, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert!(!chain.is_dense_order().unwrap());
        let empty = Relation::empty(x);
        assert!(empty.is_dense_order().unwrap());
        let broken = Relation::from_pairs(x, &[(0, 1), (1, 2)]).unwrap();
        assert!(broken.is_dense_order().is_err());
    }

    #[test]
    fn rays_and_extrema() {
        let x = space(3);
        let chain = Relation::from_pairs(x, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(chain.down_ray(2).to_points(), vec![0, 1]);
        assert_eq!(chain.up_ray(0).to_points(), vec![1, 2]);
        assert_eq!(chain.weak_down_ray(1).to_points(), vec![0, 1]);
        let all = PointSet::full(x);
        assert_eq!(chain.minimal_in(&all), vec![0]);
        assert_eq!(chain.maximal_in(&all), vec![2]);
    }
}
