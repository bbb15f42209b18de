//! Topologies on finite spaces.
//!
//! On a finite carrier a topology is just a family of opens containing the
//! empty set and the whole space and closed under pairwise union and
//! intersection, so everything here is exact set combinatorics: generation
//! from a subbase, connectivity, clopen scans, and homeomorphism testing by
//! pruned bijection search.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::space::{FiniteSpace, PointSet, SubsetFamily};

/// Default ceiling for homeomorphism search; 7! bijections is the worst case.
pub const HOMEOMORPHISM_BOUND: usize = 7;

/// A topology, represented by its full (finite) family of open sets.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Topology {
    space: FiniteSpace,
    opens: SubsetFamily,
}

impl Topology {
    /// Validates the axioms on an explicit family of opens.
    pub fn from_opens(space: FiniteSpace, opens: SubsetFamily) -> Result<Self> {
        if opens.space() != space {
            return Err(Error::input("opens belong to a different space"));
        }
        if !opens.contains_set(&PointSet::empty(space)) {
            return Err(Error::input("topology must contain the empty set"));
        }
        if !opens.contains_set(&PointSet::full(space)) {
            return Err(Error::input("topology must contain the whole space"));
        }
        for a in opens.iter() {
            for b in opens.iter() {
                if !opens.contains_set(&a.union(b)) {
                    return Err(Error::input(format!(
                        "opens not closed under union: {a:?} and {b:?}"
                    )));
                }
                if !opens.contains_set(&a.intersection(b)) {
                    return Err(Error::input(format!(
                        "opens not closed under intersection: {a:?} and {b:?}"
                    )));
                }
            }
        }
        Ok(Topology { space, opens })
    }

    pub fn indiscrete(space: FiniteSpace) -> Self {
        let opens =
            SubsetFamily::new(space, vec![PointSet::empty(space), PointSet::full(space)]).unwrap();
        Topology { space, opens }
    }

    pub fn discrete(space: FiniteSpace) -> Self {
        assert!(space.size() <= 20, "discrete topology would be huge");
        let mut sets = Vec::with_capacity(1 << space.size());
        for mask in 0..(1u64 << space.size()) {
            sets.push(PointSet::from_mask(space, mask));
        }
        Topology {
            space,
            opens: SubsetFamily::new(space, sets).unwrap(),
        }
    }

    pub fn space(&self) -> FiniteSpace {
        self.space
    }

    pub fn opens(&self) -> &SubsetFamily {
        &self.opens
    }

    pub fn open_count(&self) -> usize {
        self.opens.len()
    }

    pub fn is_open(&self, s: &PointSet) -> bool {
        self.opens.contains_set(s)
    }

    pub fn is_closed(&self, s: &PointSet) -> bool {
        self.opens.contains_set(&s.complement())
    }

    /// True iff `s` and its complement are both open.
    pub fn is_clopen(&self, s: &PointSet) -> bool {
        self.is_open(s) && self.is_closed(s)
    }

    /// All clopen sets, in canonical order.
    pub fn clopen_sets(&self) -> Vec<PointSet> {
        self.opens
            .iter()
            .filter(|s| self.is_clopen(s))
            .cloned()
            .collect()
    }

    /// True iff the only clopen sets are the empty set and the whole space.
    pub fn is_connected(&self) -> bool {
        self.opens
            .iter()
            .all(|s| !self.is_clopen(s) || s.is_empty() || s.is_full())
    }

    /// A finite space is discrete iff every singleton is open.
    pub fn is_discrete(&self) -> bool {
        self.space
            .points()
            .all(|p| self.is_open(&PointSet::singleton(self.space, p).unwrap()))
    }
}

/// Smallest topology containing every set of `subbase`.
///
/// The closure is computed by saturating under pairwise intersections and
/// unions; the empty set and the whole space are always included.
pub fn generate_topology(space: FiniteSpace, subbase: &SubsetFamily) -> Result<Topology> {
    if subbase.space() != space {
        return Err(Error::input("subbase belongs to a different space"));
    }
    let mut opens: BTreeSet<PointSet> = BTreeSet::new();
    opens.insert(PointSet::empty(space));
    opens.insert(PointSet::full(space));
    for s in subbase.iter() {
        opens.insert(s.clone());
    }
    let mut frontier: Vec<PointSet> = opens.iter().cloned().collect();
    while let Some(s) = frontier.pop() {
        let current: Vec<PointSet> = opens.iter().cloned().collect();
        for t in &current {
            for candidate in [s.union(t), s.intersection(t)] {
                if opens.insert(candidate.clone()) {
                    frontier.push(candidate);
                }
            }
        }
    }
    let opens = SubsetFamily::new(space, opens.into_iter().collect())?;
    Ok(Topology { space, opens })
}

/// Homeomorphism test by backtracking over point bijections.
///
/// Invariant pre-filters (open count, multiset of open sizes, per-point
/// membership profiles) cut the search well below `size!` in practice.
pub fn are_homeomorphic(a: &Topology, b: &Topology) -> Result<bool> {
    are_homeomorphic_bounded(a, b, HOMEOMORPHISM_BOUND)
}

pub fn are_homeomorphic_bounded(a: &Topology, b: &Topology, bound: usize) -> Result<bool> {
    let n = a.space().size();
    if n > bound || b.space().size() > bound {
        return Err(Error::capacity(
            "homeomorphism search space size",
            n.max(b.space().size()),
            bound,
        ));
    }
    if a.space() != b.space() || a.open_count() != b.open_count() {
        return Ok(false);
    }
    let mut sizes_a: Vec<usize> = a.opens.iter().map(|s| s.len()).collect();
    let mut sizes_b: Vec<usize> = b.opens.iter().map(|s| s.len()).collect();
    sizes_a.sort_unstable();
    sizes_b.sort_unstable();
    if sizes_a != sizes_b {
        return Ok(false);
    }

    // Per-point profile: sorted sizes of the opens containing the point.
    // A bijection witnessing homeomorphism must preserve profiles.
    let profile = |t: &Topology, p: usize| -> Vec<usize> {
        let mut v: Vec<usize> = t
            .opens
            .iter()
            .filter(|s| s.contains(p))
            .map(|s| s.len())
            .collect();
        v.sort_unstable();
        v
    };
    let profiles_a: Vec<Vec<usize>> = a.space().points().map(|p| profile(a, p)).collect();
    let profiles_b: Vec<Vec<usize>> = b.space().points().map(|p| profile(b, p)).collect();
    {
        let mut pa = profiles_a.clone();
        let mut pb = profiles_b.clone();
        pa.sort();
        pb.sort();
        if pa != pb {
            return Ok(false);
        }
    }

    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(assign(a, b, &profiles_a, &profiles_b, &mut image, &mut used, 0))
}

fn assign(
    a: &Topology,
    b: &Topology,
    profiles_a: &[Vec<usize>],
    profiles_b: &[Vec<usize>],
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    next: usize,
) -> bool {
    let n = a.space().size();
    if next == n {
        return maps_opens_onto(a, b, image);
    }
    for q in 0..n {
        if used[q] || profiles_a[next] != profiles_b[q] {
            continue;
        }
        image[next] = q;
        used[q] = true;
        if assign(a, b, profiles_a, profiles_b, image, used, next + 1) {
            return true;
        }
        used[q] = false;
        image[next] = usize::MAX;
    }
    false
}

fn maps_opens_onto(a: &Topology, b: &Topology, image: &[usize]) -> bool {
    for s in a.opens.iter() {
        let mut mapped = PointSet::empty(b.space());
        for p in s.iter() {
            mapped.insert(image[p]);
        }
        if !b.is_open(&mapped) {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(n: usize) -> FiniteSpace {
        FiniteSpace::new(n).unwrap()
    }

    fn family(space: FiniteSpace, sets: &[&[usize]]) -> SubsetFamily {
        let sets = sets
            .iter()
            .map(|pts| PointSet::from_points(space, pts).unwrap())
            .collect();
        SubsetFamily::new(space, sets).unwrap()
    }

    /// Sierpinski space on {0,1} with {0} open.
    fn sierpinski() -> Topology {
        let x = space(2);
        generate_topology(x, &family(x, &[&[0]])).unwrap()
    }

    #[test]
    fn sierpinski_space_from_subbase() {
        let t = sierpinski();
        assert_eq!(t.open_count(), 3);
        assert!(t.is_open(&PointSet::singleton(t.space(), 0).unwrap()));
        assert!(!t.is_open(&PointSet::singleton(t.space(), 1).unwrap()));
    }

    #[test]
    fn two_singletons_generate_discrete() {
        let x = space(2);
        let t = generate_topology(x, &family(x, &[&[0], &[1]])).unwrap();
        assert_eq!(t.open_count(), 4);
        assert!(t.is_discrete());
    }

    #[test]
    fn overlapping_doubletons_generate_five_opens() {
        let x = space(3);
        let t = generate_topology(x, &family(x, &[&[0, 1], &[1, 2]])).unwrap();
        let expected = family(x, &[&[], &[1], &[0, 1], &[1, 2], &[0, 1, 2]]);
        assert_eq!(t.opens(), &expected);
    }

    #[test]
    fn mismatched_space_is_input_error() {
        let x = space(2);
        let y = space(3);
        let sub = family(y, &[&[0]]);
        assert!(generate_topology(x, &sub).is_err());
    }

    #[test]
    fn connectivity_examples() {
        assert!(sierpinski().is_connected());
        let x = space(2);
        let discrete = generate_topology(x, &family(x, &[&[0], &[1]])).unwrap();
        assert!(!discrete.is_connected());
        let y = space(3);
        let t = generate_topology(y, &family(y, &[&[0, 1], &[1, 2]])).unwrap();
        assert!(t.is_connected());
    }

    #[test]
    fn clopen_examples() {
        let t = sierpinski();
        assert!(t.is_clopen(&PointSet::empty(t.space())));
        assert!(!t.is_clopen(&PointSet::singleton(t.space(), 0).unwrap()));
        let y = space(3);
        let d = Topology::discrete(y);
        assert!(d.is_clopen(&PointSet::from_points(y, &[0, 2]).unwrap()));
    }

    #[test]
    fn from_opens_validates_closure() {
        let x = space(2);
        let discrete = family(x, &[&[], &[0], &[1], &[0, 1]]);
        assert!(Topology::from_opens(x, discrete).is_ok());
        let missing_empty = family(x, &[&[0], &[0, 1]]);
        assert!(Topology::from_opens(x, missing_empty).is_err());
        let y = space(3);
        let union_escapes = family(y, &[&[], &[0], &[1], &[0, 1, 2]]);
        assert!(Topology::from_opens(y, union_escapes).is_err());
    }

    #[test]
    fn homeomorphism_examples() {
        let x = space(2);
        let sier0 = generate_topology(x, &family(x, &[&[0]])).unwrap();
        let sier1 = generate_topology(x, &family(x, &[&[1]])).unwrap();
        let discrete = generate_topology(x, &family(x, &[&[0], &[1]])).unwrap();
        assert!(are_homeomorphic(&sier0, &sier1).unwrap());
        assert!(!are_homeomorphic(&sier0, &discrete).unwrap());
    }

    #[test]
    fn homeomorphism_bound_is_enforced() {
        let x = space(8);
        let t = Topology::indiscrete(x);
        assert!(matches!(
            are_homeomorphic(&t, &t),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn generation_is_idempotent() {
        let x = space(3);
        let t = generate_topology(x, &family(x, &[&[0, 1], &[1, 2]])).unwrap();
        let again = generate_topology(x, t.opens()).unwrap();
        assert_eq!(&again, &t);
    }
}
