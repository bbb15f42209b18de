//! Finite point sets and families of subsets.
//!
//! Points of a space are plain indices `0..size`. A [`PointSet`] is a bitset
//! over such a space, a [`SubsetFamily`] is a duplicate-free collection of
//! point sets kept in a canonical order so that families compare and print
//! deterministically.

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};

const BLOCK_BITS: usize = 64;

/// A universe of `size` labeled points, identified as `0..size`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteSpace {
    size: usize,
}

impl FiniteSpace {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 {
            return Err(Error::input("a finite space needs at least one point"));
        }
        Ok(FiniteSpace { size })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn points(&self) -> std::ops::Range<usize> {
        0..self.size
    }

    fn blocks(&self) -> usize {
        self.size.div_ceil(BLOCK_BITS)
    }
}

/// A subset of a [`FiniteSpace`], stored as a bitset.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PointSet {
    space: FiniteSpace,
    blocks: Vec<u64>,
}

impl PointSet {
    pub fn empty(space: FiniteSpace) -> Self {
        PointSet {
            space,
            blocks: vec![0; space.blocks()],
        }
    }

    pub fn full(space: FiniteSpace) -> Self {
        let mut s = Self::empty(space);
        for p in space.points() {
            s.insert(p);
        }
        s
    }

    pub fn singleton(space: FiniteSpace, point: usize) -> Result<Self> {
        let mut s = Self::empty(space);
        s.checked_insert(point)?;
        Ok(s)
    }

    pub fn from_points(space: FiniteSpace, points: &[usize]) -> Result<Self> {
        let mut s = Self::empty(space);
        for &p in points {
            s.checked_insert(p)?;
        }
        Ok(s)
    }

    /// Builds the set whose membership bits are the low `size` bits of `mask`.
    /// Only usable for spaces of at most 64 points; enumeration code relies
    /// on this being the canonical numbering of subsets.
    pub fn from_mask(space: FiniteSpace, mask: u64) -> Self {
        debug_assert!(space.size() <= BLOCK_BITS);
        let mut blocks = vec![0; space.blocks()];
        blocks[0] = mask & mask_low(space.size());
        PointSet { space, blocks }
    }

    /// The bitmask of a set over a space of at most 64 points.
    pub fn mask(&self) -> u64 {
        debug_assert!(self.space.size() <= BLOCK_BITS);
        self.blocks[0]
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    pub fn contains(&self, point: usize) -> bool {
        point < self.space.size && self.blocks[point / BLOCK_BITS] >> (point % BLOCK_BITS) & 1 == 1
    }

    pub fn insert(&mut self, point: usize) {
        assert!(point < self.space.size, "point {point} out of range");
        self.blocks[point / BLOCK_BITS] |= 1 << (point % BLOCK_BITS);
    }

    fn checked_insert(&mut self, point: usize) -> Result<()> {
        if point >= self.space.size {
            return Err(Error::input(format!(
                "point {point} out of range for a space of {} points",
                self.space.size
            )));
        }
        self.insert(point);
        Ok(())
    }

    pub fn remove(&mut self, point: usize) {
        assert!(point < self.space.size, "point {point} out of range");
        self.blocks[point / BLOCK_BITS] &= !(1 << (point % BLOCK_BITS));
    }

    pub fn len(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn is_full(&self) -> bool {
        self.len() == self.space.size
    }

    fn assert_same_space(&self, other: &PointSet) {
        assert_eq!(
            self.space, other.space,
            "point sets belong to different spaces"
        );
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        self.assert_same_space(other);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a | b)
            .collect();
        PointSet {
            space: self.space,
            blocks,
        }
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        self.assert_same_space(other);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a & b)
            .collect();
        PointSet {
            space: self.space,
            blocks,
        }
    }

    pub fn difference(&self, other: &PointSet) -> PointSet {
        self.assert_same_space(other);
        let blocks = self
            .blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| a & !b)
            .collect();
        PointSet {
            space: self.space,
            blocks,
        }
    }

    pub fn complement(&self) -> PointSet {
        let full = PointSet::full(self.space);
        full.difference(self)
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.assert_same_space(other);
        self.blocks
            .iter()
            .zip(&other.blocks)
            .all(|(a, b)| a & !b == 0)
    }

    pub fn is_strict_subset(&self, other: &PointSet) -> bool {
        self.is_subset(other) && self != other
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.space.points().filter(|&p| self.contains(p))
    }

    pub fn to_points(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl PartialOrd for PointSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical order: by space size, then by bitmask value (most significant
/// block first). For spaces of at most 64 points this is plain numeric order
/// of the masks.
impl Ord for PointSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.space
            .size
            .cmp(&other.space.size)
            .then_with(|| self.blocks.iter().rev().cmp(other.blocks.iter().rev()))
    }
}

impl fmt::Debug for PointSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// A duplicate-free collection of subsets of one space, kept sorted in the
/// canonical [`PointSet`] order.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SubsetFamily {
    space: FiniteSpace,
    sets: Vec<PointSet>,
}

impl SubsetFamily {
    /// Builds a family, sorting the sets and collapsing duplicates.
    pub fn new(space: FiniteSpace, sets: Vec<PointSet>) -> Result<Self> {
        Ok(Self::new_reporting(space, sets)?.0)
    }

    /// Like [`SubsetFamily::new`] but also reports how many duplicate sets
    /// were collapsed, so loaders can warn.
    pub fn new_reporting(space: FiniteSpace, mut sets: Vec<PointSet>) -> Result<(Self, usize)> {
        for s in &sets {
            if s.space() != space {
                return Err(Error::input(
                    "family member belongs to a different space".to_string(),
                ));
            }
        }
        let before = sets.len();
        sets.sort();
        sets.dedup();
        let collapsed = before - sets.len();
        Ok((SubsetFamily { space, sets }, collapsed))
    }

    pub fn empty(space: FiniteSpace) -> Self {
        SubsetFamily {
            space,
            sets: Vec::new(),
        }
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    pub fn sets(&self) -> &[PointSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn contains_set(&self, set: &PointSet) -> bool {
        self.sets.binary_search(set).is_ok()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, PointSet> {
        self.sets.iter()
    }

    /// The family with `set` adjoined (no-op if already present).
    pub fn with_set(&self, set: &PointSet) -> Result<SubsetFamily> {
        let mut sets = self.sets.clone();
        sets.push(set.clone());
        SubsetFamily::new(self.space, sets)
    }

    /// Union of two families over the same space.
    pub fn union_family(&self, other: &SubsetFamily) -> Result<SubsetFamily> {
        if self.space != other.space {
            return Err(Error::input("families belong to different spaces"));
        }
        let mut sets = self.sets.clone();
        sets.extend(other.sets.iter().cloned());
        SubsetFamily::new(self.space, sets)
    }
}

impl fmt::Debug for SubsetFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{s:?}")?;
        }
        write!(f, "}}")
    }
}

fn mask_low(bits: usize) -> u64 {
    if bits >= 64 {
        u64::MAX
    } else {
        (1u64 << bits) - 1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    #[test]
    fn space_requires_a_point() {
        assert!(FiniteSpace::new(0).is_err());
        assert_eq!(space(3).size(), 3);
    }

    #[test]
    fn set_algebra_basics() {
        let x = space(3);
        let a = PointSet::from_points(x, &[0, 1]).unwrap();
        let b = PointSet::from_points(x, &[1, 2]).unwrap();
        assert_eq!(a.union(&b), PointSet::full(x));
        assert_eq!(a.intersection(&b), PointSet::singleton(x, 1).unwrap());
        assert_eq!(a.difference(&b), PointSet::singleton(x, 0).unwrap());
        assert_eq!(a.complement(), PointSet::singleton(x, 2).unwrap());
        assert!(PointSet::empty(x).is_subset(&a));
        assert!(a.is_strict_subset(&PointSet::full(x)));
        assert!(!a.is_strict_subset(&a));
    }

    #[test]
    fn out_of_range_point_is_input_error() {
        let x = space(2);
        assert!(PointSet::from_points(x, &[2]).is_err());
        assert!(PointSet::singleton(x, 5).is_err());
    }

    #[test]
    fn canonical_order_is_mask_order_on_small_spaces() {
        let x = space(3);
        let sets: Vec<PointSet> = (1..8).map(|m| PointSet::from_mask(x, m)).collect();
        for w in sets.windows(2) {
            assert!(w[0] < w[1]);
        }
    }

    #[test]
    fn family_collapses_duplicates_and_sorts() {
        let x = space(2);
        let a = PointSet::singleton(x, 0).unwrap();
        let b = PointSet::singleton(x, 1).unwrap();
        let (fam, collapsed) =
            SubsetFamily::new_reporting(x, vec![b.clone(), a.clone(), b.clone()]).unwrap();
        assert_eq!(collapsed, 1);
        assert_eq!(fam.sets(), &[a, b]);
    }

    #[test]
    fn family_rejects_foreign_sets() {
        let x = space(2);
        let y = space(3);
        let foreign = PointSet::singleton(y, 0).unwrap();
        assert!(SubsetFamily::new(x, vec![foreign]).is_err());
    }

    #[test]
    fn large_space_blocks() {
        let x = space(130);
        let mut s = PointSet::empty(x);
        s.insert(0);
        s.insert(64);
        s.insert(129);
        assert_eq!(s.len(), 3);
        assert!(s.contains(64));
        assert_eq!(s.complement().len(), 127);
    }
}
