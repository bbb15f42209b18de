//! The nest calculus: separation, induced orders, interlocking, scattering.
//!
//! A nest is a family of sets totally ordered by inclusion. Every predicate
//! here is a direct transcription of its defining condition, evaluated
//! exhaustively over the finite carrier, so each one can serve as an oracle
//! for the structural theorems checked in the test suites.
//!
//! Conventions that matter (several statements flip without them):
//! * the intersection of an empty subfamily is the whole space, the union of
//!   an empty subfamily is the empty set;
//! * families never contain the empty set or the whole space implicitly;
//!   callers opt in by adjoining them (`SubsetFamily::with_set`, or the
//!   `include_universe` toggles on scattering checks).

use crate::error::{Error, Result};
use crate::relation::{OrderClass, Relation};
use crate::space::{PointSet, SubsetFamily};

/// Hard ceiling for the subset scan in [`scatters`]; the scan is `2^n`.
pub const SCATTER_BOUND: usize = 20;

/// How strongly a family separates points, ordered `None < T0 < T1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum SeparationKind {
    None,
    T0,
    T1,
}

impl SeparationKind {
    pub fn at_least_t0(self) -> bool {
        self >= SeparationKind::T0
    }
}

/// True iff every two member sets are comparable under inclusion.
pub fn is_nest(family: &SubsetFamily) -> bool {
    let sets = family.sets();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_subset(b) && !b.is_subset(a) {
                return false;
            }
        }
    }
    true
}

/// A witnessing pair of incomparable members, if the family is not a nest.
pub fn nest_violation(family: &SubsetFamily) -> Option<(PointSet, PointSet)> {
    let sets = family.sets();
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            if !a.is_subset(b) && !b.is_subset(a) {
                return Some((a.clone(), b.clone()));
            }
        }
    }
    None
}

/// T1 if every ordered pair of distinct points is separated in both
/// directions, T0 if at least one direction always works, None otherwise.
pub fn separation_kind(family: &SubsetFamily) -> SeparationKind {
    let space = family.space();
    let mut t1 = true;
    let mut t0 = true;
    for x in space.points() {
        for y in space.points() {
            if x >= y {
                continue;
            }
            let xy = family.iter().any(|s| s.contains(x) && !s.contains(y));
            let yx = family.iter().any(|s| s.contains(y) && !s.contains(x));
            t1 &= xy && yx;
            t0 &= xy || yx;
        }
    }
    if t1 {
        SeparationKind::T1
    } else if t0 {
        SeparationKind::T0
    } else {
        SeparationKind::None
    }
}

/// The induced order: `x` below `y` iff some member contains `x` but not `y`.
///
/// Irreflexive by construction. The family does not have to be a nest; the
/// result is then simply not guaranteed to be an order.
pub fn induced_order(family: &SubsetFamily) -> Relation {
    let space = family.space();
    let mut r = Relation::empty(space);
    for x in space.points() {
        for y in space.points() {
            if x == y {
                continue;
            }
            if family.iter().any(|s| s.contains(x) && !s.contains(y)) {
                r.set(x, y, true);
            }
        }
    }
    r
}

/// Classification of the induced order of a family.
pub fn classify_order(r: &Relation) -> OrderClass {
    r.classify()
}

/// Intersection of the strict supersets of `t` within the family; the empty
/// intersection is the whole space.
pub fn strict_superset_intersection(family: &SubsetFamily, t: &PointSet) -> PointSet {
    let mut acc = PointSet::full(family.space());
    for s in family.iter() {
        if t.is_strict_subset(s) {
            acc = acc.intersection(s);
        }
    }
    acc
}

/// Union of the strict subsets of `t` within the family; the empty union is
/// the empty set.
pub fn strict_subset_union(family: &SubsetFamily, t: &PointSet) -> PointSet {
    let mut acc = PointSet::empty(family.space());
    for s in family.iter() {
        if s.is_strict_subset(t) {
            acc = acc.union(s);
        }
    }
    acc
}

/// True iff `t` equals the intersection of its strict supersets in the family.
pub fn intersection_trigger(family: &SubsetFamily, t: &PointSet) -> Result<bool> {
    require_member(family, t)?;
    Ok(strict_superset_intersection(family, t) == *t)
}

/// True iff `t` equals the union of its strict subsets in the family.
pub fn union_witness(family: &SubsetFamily, t: &PointSet) -> Result<bool> {
    require_member(family, t)?;
    Ok(strict_subset_union(family, t) == *t)
}

fn require_member(family: &SubsetFamily, t: &PointSet) -> Result<()> {
    if !family.contains_set(t) {
        return Err(Error::input(format!("{t:?} is not a member of the family")));
    }
    Ok(())
}

/// Interlocking: every member that equals the intersection of its strict
/// supersets also equals the union of its strict subsets.
pub fn is_interlocking(family: &SubsetFamily) -> bool {
    interlocking_violation(family).is_none()
}

/// A member violating interlocking, if any.
pub fn interlocking_violation(family: &SubsetFamily) -> Option<PointSet> {
    family
        .iter()
        .find(|t| {
            strict_superset_intersection(family, t) == **t
                && strict_subset_union(family, t) != **t
        })
        .cloned()
}

/// True iff every nonempty subset of the space meets some member in exactly
/// one point. The scan is exhaustive over `2^n` subsets.
pub fn scatters(family: &SubsetFamily) -> Result<bool> {
    Ok(scatter_failure(family)?.is_none())
}

/// Scattering with the whole space optionally adjoined to the family first.
pub fn scatters_with(family: &SubsetFamily, include_universe: bool) -> Result<bool> {
    if include_universe {
        let adjoined = family.with_set(&PointSet::full(family.space()))?;
        scatters(&adjoined)
    } else {
        scatters(family)
    }
}

/// A nonempty subset with no singleton trace under any member, if one exists.
pub fn scatter_failure(family: &SubsetFamily) -> Result<Option<PointSet>> {
    let n = family.space().size();
    if n > SCATTER_BOUND {
        return Err(Error::capacity("scatter scan space size", n, SCATTER_BOUND));
    }
    for mask in 1..(1u64 << n) {
        let a = PointSet::from_mask(family.space(), mask);
        let traced = family.iter().any(|s| s.intersection(&a).len() == 1);
        if !traced {
            return Ok(Some(a));
        }
    }
    Ok(None)
}

/// Every nonempty subfamily has an inclusion-least member. On a finite
/// family this is the same as being a chain, which is how it is evaluated.
pub fn well_ordered_by_inclusion(family: &SubsetFamily) -> bool {
    is_nest(family)
}

/// The minimal-witness property: every nonempty subset `A` of the space has
/// an element `a` such that any member containing any point of `A` already
/// contains `a`.
pub fn minimal_witness_property(family: &SubsetFamily) -> Result<bool> {
    let n = family.space().size();
    if n > SCATTER_BOUND {
        return Err(Error::capacity(
            "minimal-witness scan space size",
            n,
            SCATTER_BOUND,
        ));
    }
    'subset: for mask in 1..(1u64 << n) {
        let a = PointSet::from_mask(family.space(), mask);
        'candidate: for cand in a.iter() {
            for x in a.iter() {
                for l in family.iter() {
                    if l.contains(x) && !l.contains(cand) {
                        continue 'candidate;
                    }
                }
            }
            continue 'subset;
        }
        return Ok(false);
    }
    Ok(true)
}

/// The density criterion for a nest: every two distinct points admit members
/// `L` strictly inside `M` with one point in `L` and the other outside `M`.
///
/// Input must be a nest. Note the criterion forces comparability of every
/// pair, so it matches density of the induced order only together with
/// T0 separation; the suites test exactly that combined form.
pub fn dense_nest_criterion(family: &SubsetFamily) -> Result<bool> {
    if !is_nest(family) {
        return Err(Error::input("density criterion requires a nest"));
    }
    let space = family.space();
    for x in space.points() {
        for y in space.points() {
            if x >= y {
                continue;
            }
            let mut found = false;
            'outer: for l in family.iter() {
                for m in family.iter() {
                    if !l.is_strict_subset(m) {
                        continue;
                    }
                    if (l.contains(x) && !m.contains(y)) || (l.contains(y) && !m.contains(x)) {
                        found = true;
                        break 'outer;
                    }
                }
            }
            if !found {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::FiniteSpace;

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

    #[test]
    fn nest_examples() {
        let x = space(2);
        assert!(is_nest(&family(x, &[&[0], &[0, 1]])));
        assert!(!is_nest(&family(x, &[&[0], &[1]])));
        assert!(is_nest(&SubsetFamily::empty(x)));
        assert!(nest_violation(&family(x, &[&[0], &[1]])).is_some());
    }

    #[test]
    fn separation_examples() {
        let x = space(2);
        assert_eq!(separation_kind(&family(x, &[&[0]])), SeparationKind::T0);
        assert_eq!(
            separation_kind(&family(x, &[&[0], &[1]])),
            SeparationKind::T1
        );
        let y = space(3);
        assert_eq!(
            separation_kind(&family(y, &[&[0, 1]])),
            SeparationKind::None
        );
        assert!(SeparationKind::T1 > SeparationKind::T0);
    }

    #[test]
    fn induced_order_examples() {
        let y = space(3);
        let r = induced_order(&family(y, &[&[0], &[0, 1]]));
        assert_eq!(r.pairs(), vec![(0, 1), (0, 2), (1, 2)]);

        let empty = induced_order(&SubsetFamily::empty(y));
        assert!(empty.pairs().is_empty());

        let x = space(2);
        let nonnest = induced_order(&family(x, &[&[0], &[1]]));
        assert!(nonnest.holds(0, 1) && nonnest.holds(1, 0));
        assert!(!nonnest.is_antisymmetric());
    }

    #[test]
    fn interlocking_examples() {
        let y = space(3);
        // The whole space triggers (empty intersection) but is not the union
        // of its strict subsets within the family.
        assert!(!is_interlocking(&family(y, &[&[0], &[0, 1], &[0, 1, 2]])));
        assert!(is_interlocking(&family(y, &[&[0], &[0, 1]])));
        assert!(is_interlocking(&SubsetFamily::empty(y)));
        let viol = interlocking_violation(&family(y, &[&[0], &[0, 1], &[0, 1, 2]])).unwrap();
        assert!(viol.is_full());
    }

    #[test]
    fn trigger_and_witness_examples() {
        let y = space(3);
        let f = family(y, &[&[0], &[0, 1], &[0, 1, 2]]);
        let top = PointSet::full(y);
        assert!(intersection_trigger(&f, &top).unwrap());

        let g = family(y, &[&[0], &[0, 1]]);
        let t = PointSet::from_points(y, &[0, 1]).unwrap();
        assert!(!intersection_trigger(&g, &t).unwrap());
        let b = PointSet::singleton(y, 0).unwrap();
        assert!(!union_witness(&g, &b).unwrap());

        let outside = PointSet::singleton(y, 2).unwrap();
        assert!(intersection_trigger(&g, &outside).is_err());
    }

    #[test]
    fn scatter_examples() {
        let x = space(2);
        assert!(scatters(&family(x, &[&[0], &[0, 1]])).unwrap());
        assert!(!scatters(&family(x, &[&[0]])).unwrap());
        assert!(scatters_with(&family(x, &[&[0]]), true).unwrap());
        let one = space(1);
        assert!(scatters(&family(one, &[&[0]])).unwrap());
        let witness = scatter_failure(&family(x, &[&[0]])).unwrap().unwrap();
        assert_eq!(witness.to_points(), vec![1]);
    }

    #[test]
    fn dense_criterion_examples() {
        let y = space(3);
        assert!(!dense_nest_criterion(&family(y, &[&[0], &[0, 1]])).unwrap());
        let one = space(1);
        assert!(dense_nest_criterion(&SubsetFamily::empty(one)).unwrap());
        let x = space(2);
        assert!(dense_nest_criterion(&family(x, &[&[0], &[1]])).is_err());
    }

    #[test]
    fn minimal_witness_examples() {
        let x = space(2);
        assert!(minimal_witness_property(&family(x, &[&[0], &[0, 1]])).unwrap());
        // {0} and {1} pull the witness in opposite directions on A = {0,1}.
        assert!(!minimal_witness_property(&family(x, &[&[0], &[1]])).unwrap());
    }
}
