//! Exhaustive and sampled enumeration of families, nests, relations, linear
//! orders, and topologies on small spaces.
//!
//! Enumeration order is part of the contract: families come out in
//! lexicographic order on their sorted bitmask lists (depth-first, smallest
//! next mask first), so two runs with the same parameters yield identical
//! sequences and parallel consumers can split the sequence by rank.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nest::is_nest;
use crate::relation::Relation;
use crate::space::{FiniteSpace, PointSet, SubsetFamily};
use crate::topology::{generate_topology, Topology};

/// Spaces larger than this are refused for exhaustive family enumeration.
pub const EXHAUSTIVE_FAMILY_BOUND: usize = 4;
/// Spaces larger than this are refused even for sampled families.
pub const SAMPLED_FAMILY_BOUND: usize = 6;
/// Spaces larger than this are refused for topology enumeration.
pub const TOPOLOGY_ENUM_BOUND: usize = 5;
/// Spaces larger than this are refused for relation enumeration.
pub const RELATION_ENUM_BOUND: usize = 4;

/// Which families an enumeration yields.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum FamilyFilter {
    /// Every duplicate-free family.
    #[default]
    All,
    /// Only nests; the chain property prunes the search tree.
    Nests,
}

/// Options for family enumeration.
#[derive(Clone, Copy, Debug, Default)]
pub struct EnumerationOptions {
    /// Admit the empty set as a candidate member (off by default).
    pub allow_empty: bool,
    /// Raise the exhaustive space-size bound (use with care).
    pub bound_override: Option<usize>,
}

/// Depth-first enumerator over duplicate-free families of subsets.
///
/// Candidate members are the nonempty subsets of the space (the whole space
/// included, the empty set only with `allow_empty`), identified by bitmask.
pub struct FamilyIter {
    space: FiniteSpace,
    candidates: Vec<u64>,
    filter: FamilyFilter,
    stack: Vec<usize>,
    next_index: usize,
    yielded_empty: bool,
}

impl FamilyIter {
    fn family(&self) -> SubsetFamily {
        let sets = self
            .stack
            .iter()
            .map(|&i| PointSet::from_mask(self.space, self.candidates[i]))
            .collect();
        SubsetFamily::new(self.space, sets).expect("masks are in range")
    }

    fn compatible(&self, index: usize) -> bool {
        match self.filter {
            FamilyFilter::All => true,
            FamilyFilter::Nests => {
                let m = self.candidates[index];
                self.stack.iter().all(|&i| {
                    let s = self.candidates[i];
                    s & m == s || s & m == m
                })
            }
        }
    }
}

impl Iterator for FamilyIter {
    type Item = SubsetFamily;

    fn next(&mut self) -> Option<SubsetFamily> {
        if !self.yielded_empty {
            self.yielded_empty = true;
            return Some(SubsetFamily::empty(self.space));
        }
        loop {
            if self.next_index < self.candidates.len() {
                if self.compatible(self.next_index) {
                    self.stack.push(self.next_index);
                    self.next_index += 1;
                    return Some(self.family());
                }
                self.next_index += 1;
                continue;
            }
            match self.stack.pop() {
                Some(i) => self.next_index = i + 1,
                None => return None,
            }
        }
    }
}

/// Every duplicate-free family matching `filter`, in canonical order.
pub fn enumerate_families(
    space: FiniteSpace,
    filter: FamilyFilter,
    opts: EnumerationOptions,
) -> Result<FamilyIter> {
    let bound = opts.bound_override.unwrap_or(EXHAUSTIVE_FAMILY_BOUND);
    if space.size() > bound {
        return Err(Error::capacity(
            "exhaustive family enumeration space size",
            space.size(),
            bound,
        ));
    }
    let start = if opts.allow_empty { 0 } else { 1 };
    let candidates: Vec<u64> = (start..(1u64 << space.size())).collect();
    Ok(FamilyIter {
        space,
        candidates,
        filter,
        stack: Vec::new(),
        next_index: 0,
        yielded_empty: false,
    })
}

/// Shorthand for [`enumerate_families`] with the nest filter.
pub fn enumerate_nests(space: FiniteSpace, opts: EnumerationOptions) -> Result<FamilyIter> {
    enumerate_families(space, FamilyFilter::Nests, opts)
}

/// Deterministic random families for the sampled suites.
///
/// Half the samples are membership-coin families (each candidate subset in
/// with a small probability), half are random nests grown as prefix sets of
/// a random permutation, so both sides of the nest dichotomy get coverage.
pub fn sample_families(
    space: FiniteSpace,
    count: usize,
    seed: u64,
) -> Result<Vec<SubsetFamily>> {
    if space.size() > SAMPLED_FAMILY_BOUND {
        return Err(Error::capacity(
            "sampled family space size",
            space.size(),
            SAMPLED_FAMILY_BOUND,
        ));
    }
    let n = space.size();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let universe = (1u64 << n) - 1;
    let mut out = Vec::with_capacity(count);
    for i in 0..count {
        if i % 2 == 0 {
            // Aim for about eight members regardless of space size.
            let p = (8.0 / universe as f64).min(1.0);
            let sets: Vec<PointSet> = (1..=universe)
                .filter(|_| rng.gen_bool(p))
                .map(|m| PointSet::from_mask(space, m))
                .collect();
            out.push(SubsetFamily::new(space, sets)?);
        } else {
            let mut points: Vec<usize> = space.points().collect();
            points.shuffle(&mut rng);
            let mut mask = 0u64;
            let mut sets = Vec::new();
            for &p in &points {
                mask |= 1 << p;
                if rng.gen_bool(0.5) {
                    sets.push(PointSet::from_mask(space, mask));
                }
            }
            let fam = SubsetFamily::new(space, sets)?;
            debug_assert!(is_nest(&fam));
            out.push(fam);
        }
    }
    Ok(out)
}

/// All strict transitive relations on the space, in bit-pattern order.
///
/// Strictness plus transitivity rules out cycles, so these are exactly the
/// strict partial orders.
pub fn enumerate_strict_transitive(space: FiniteSpace) -> Result<Vec<Relation>> {
    if space.size() > RELATION_ENUM_BOUND {
        return Err(Error::capacity(
            "relation enumeration space size",
            space.size(),
            RELATION_ENUM_BOUND,
        ));
    }
    let n = space.size();
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|x| (0..n).filter(move |&y| y != x).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for pattern in 0..(1u64 << slots.len()) {
        let pairs: Vec<(usize, usize)> = slots
            .iter()
            .enumerate()
            .filter(|(i, _)| pattern >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect();
        let r = Relation::from_pairs(space, &pairs)?;
        if r.is_transitive() {
            out.push(r);
        }
    }
    Ok(out)
}

/// All linear (strict total) orders on the space, one per permutation, in
/// lexicographic permutation order.
pub fn enumerate_linear_orders(space: FiniteSpace) -> Vec<Relation> {
    let n = space.size();
    let mut perm: Vec<usize> = space.points().collect();
    let mut out = Vec::new();
    loop {
        let mut r = Relation::empty(space);
        for i in 0..n {
            for j in (i + 1)..n {
                r.set(perm[i], perm[j], true);
            }
        }
        out.push(r);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    out
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Every labeled topology on the space, in canonical order.
///
/// Generated by saturation: starting from the indiscrete topology, adjoin
/// one new open at a time and close; duplicates are collapsed on a canonical
/// key. Feasible through five points (6942 topologies).
pub fn enumerate_topologies(space: FiniteSpace) -> Result<Vec<Topology>> {
    if space.size() > TOPOLOGY_ENUM_BOUND {
        return Err(Error::capacity(
            "topology enumeration space size",
            space.size(),
            TOPOLOGY_ENUM_BOUND,
        ));
    }
    let n = space.size();
    let key = |t: &Topology| -> Vec<u64> { t.opens().iter().map(|s| s.mask()).collect() };
    let mut seen: BTreeSet<Vec<u64>> = BTreeSet::new();
    let mut queue: Vec<Topology> = vec![Topology::indiscrete(space)];
    seen.insert(key(&queue[0]));
    let mut head = 0;
    while head < queue.len() {
        let current = queue[head].clone();
        head += 1;
        for mask in 1..((1u64 << n) - 1) {
            let s = PointSet::from_mask(space, mask);
            if current.is_open(&s) {
                continue;
            }
            let subbase = current.opens().with_set(&s)?;
            let bigger = generate_topology(space, &subbase)?;
            if seen.insert(key(&bigger)) {
                queue.push(bigger);
            }
        }
    }
    queue.sort_by(|a, b| a.opens().cmp(b.opens()));
    Ok(queue)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    #[test]
    fn one_point_families() {
        let fams: Vec<_> =
            enumerate_families(space(1), FamilyFilter::All, Default::default())
                .unwrap()
                .collect();
        // The empty family and {{0}}.
        assert_eq!(fams.len(), 2);
    }

    #[test]
    fn three_point_family_count() {
        let count = enumerate_families(space(3), FamilyFilter::All, Default::default())
            .unwrap()
            .count();
        assert_eq!(count, 128);
    }

    #[test]
    fn allow_empty_doubles_the_count() {
        let opts = EnumerationOptions {
            allow_empty: true,
            ..Default::default()
        };
        let count = enumerate_families(space(2), FamilyFilter::All, opts)
            .unwrap()
            .count();
        assert_eq!(count, 16);
    }

    #[test]
    fn nest_counts_small() {
        // Chains among the nonempty subsets, empty family included.
        let c2 = enumerate_nests(space(2), Default::default()).unwrap().count();
        assert_eq!(c2, 6);
        let c3 = enumerate_nests(space(3), Default::default()).unwrap().count();
        assert_eq!(c3, 26);
        let c4 = enumerate_nests(space(4), Default::default()).unwrap().count();
        assert_eq!(c4, 150);
    }

    #[test]
    fn every_enumerated_nest_is_a_nest() {
        for fam in enumerate_nests(space(3), Default::default()).unwrap() {
            assert!(is_nest(&fam));
        }
    }

    #[test]
    fn enumeration_is_lexicographic_and_deterministic() {
        let a: Vec<_> = enumerate_families(space(2), FamilyFilter::All, Default::default())
            .unwrap()
            .collect();
        let b: Vec<_> = enumerate_families(space(2), FamilyFilter::All, Default::default())
            .unwrap()
            .collect();
        assert_eq!(a, b);
        let masks: Vec<Vec<u64>> = a
            .iter()
            .map(|f| f.iter().map(|s| s.mask()).collect())
            .collect();
        let mut sorted = masks.clone();
        sorted.sort();
        assert_eq!(masks, sorted, "depth-first order is lexicographic");
    }

    #[test]
    fn bound_is_enforced() {
        assert!(matches!(
            enumerate_families(space(5), FamilyFilter::All, Default::default()),
            Err(Error::Capacity { .. })
        ));
        let opts = EnumerationOptions {
            bound_override: Some(5),
            ..Default::default()
        };
        assert!(enumerate_families(space(5), FamilyFilter::Nests, opts).is_ok());
    }

    #[test]
    fn sampling_is_deterministic() {
        let a = sample_families(space(5), 20, 7).unwrap();
        let b = sample_families(space(5), 20, 7).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, sample_families(space(5), 20, 8).unwrap());
    }

    #[test]
    fn strict_transitive_counts_are_poset_counts() {
        assert_eq!(enumerate_strict_transitive(space(2)).unwrap().len(), 3);
        assert_eq!(enumerate_strict_transitive(space(3)).unwrap().len(), 19);
        assert_eq!(enumerate_strict_transitive(space(4)).unwrap().len(), 219);
    }

    #[test]
    fn linear_order_counts() {
        assert_eq!(enumerate_linear_orders(space(3)).len(), 6);
        assert_eq!(enumerate_linear_orders(space(1)).len(), 1);
        for r in enumerate_linear_orders(space(4)) {
            assert!(r.is_linear());
        }
    }

    #[test]
    fn topology_counts_match_the_literature() {
        assert_eq!(enumerate_topologies(space(1)).unwrap().len(), 1);
        assert_eq!(enumerate_topologies(space(2)).unwrap().len(), 4);
        assert_eq!(enumerate_topologies(space(3)).unwrap().len(), 29);
    }
}
