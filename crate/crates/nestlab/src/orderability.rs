//! Topologies from orders and orderability verdicts.
//!
//! This module builds the order topology and the interval topology of a
//! relation, checks the van Dalen and Wattel characterization on concrete
//! nest pairs, profiles a finite topology against the five ordinal
//! conditions, searches for the minimal number of nests generating a
//! topology (the neight), and probes when the ray topology of a bare
//! transitive relation agrees with its interval topology.
//!
//! Finite-space reductions used here:
//! * a finite space is homeomorphic to an ordinal iff it is discrete: in a
//!   finite linear order every point is isolated by rays, and a discrete
//!   space of n points is the ordinal n;
//! * a T0-separating nest of open sets on a finite space is exactly the
//!   family of weak down rays of its induced order (each member is a down
//!   set, and separation forces every ray below the top), so the searches
//!   for orderable subbase pairs iterate over the n! linear orders instead
//!   of over all nest pairs. Tests cross-check this against the brute-force
//!   pair search on tiny spaces.

use crate::error::{Error, Result};
use crate::nest::{
    interlocking_violation, is_interlocking, is_nest, scatters_with, separation_kind,
    SeparationKind,
};
use crate::relation::Relation;
use crate::space::{FiniteSpace, PointSet, SubsetFamily};
use crate::topology::{generate_topology, Topology};

/// Ceiling for ordinal profiling and the cardinal scatter check.
pub const ORDINAL_PROFILE_BOUND: usize = 5;
/// Ceiling for the neight search.
pub const NEIGHT_BOUND: usize = 4;
/// Default node budget for nest searches inside ordinal profiling.
pub const DEFAULT_SEARCH_BOUND: usize = 1_000_000;

/// Assumption flagged in every probe report: only the interval topology is
/// fixed by the question, the ray reading of the order topology is ours.
pub const RAY_READING_NOTE: &str =
    "T_< is read as the topology generated by the strict rays of the relation";

/// Topology generated by the strict down and up rays of a relation.
/// No linearity is required; for non-orders this is still well defined.
pub fn ray_topology(r: &Relation) -> Topology {
    let space = r.space();
    let mut rays = Vec::new();
    for x in space.points() {
        for s in [r.down_ray(x), r.up_ray(x)] {
            if !s.is_empty() {
                rays.push(s);
            }
        }
    }
    let subbase = SubsetFamily::new(space, rays).expect("rays live on the same space");
    generate_topology(space, &subbase).expect("same space")
}

/// The order topology of a linear order: generated by its open rays.
pub fn order_topology(r: &Relation) -> Result<Topology> {
    if !r.is_linear() {
        return Err(Error::input("order topology requires a linear order"));
    }
    Ok(ray_topology(r))
}

/// The interval topology of a transitive relation: closed subbase of weak
/// down and up rays of the reflexive closure, opens generated from the
/// complements.
pub fn interval_topology(r: &Relation) -> Result<Topology> {
    if !r.is_transitive() {
        return Err(Error::input(
            "interval topology requires a transitive relation",
        ));
    }
    let space = r.space();
    let mut opens = Vec::new();
    for x in space.points() {
        opens.push(r.weak_down_ray(x).complement());
        opens.push(r.weak_up_ray(x).complement());
    }
    let subbase = SubsetFamily::new(space, opens)?;
    generate_topology(space, &subbase)
}

/// The two ray nests of a linear order: all nonempty strict down rays and
/// all nonempty strict up rays.
pub fn ray_nests(r: &Relation) -> Result<(SubsetFamily, SubsetFamily)> {
    if !r.is_linear() {
        return Err(Error::input("ray nests require a linear order"));
    }
    let space = r.space();
    let down: Vec<PointSet> = space
        .points()
        .map(|x| r.down_ray(x))
        .filter(|s| !s.is_empty())
        .collect();
    let up: Vec<PointSet> = space
        .points()
        .map(|x| r.up_ray(x))
        .filter(|s| !s.is_empty())
        .collect();
    Ok((
        SubsetFamily::new(space, down)?,
        SubsetFamily::new(space, up)?,
    ))
}

/// Outcome of a single claim check, with a falsifying witness when it fails.
#[derive(Clone, Debug)]
pub struct ClaimResult {
    pub holds: bool,
    pub witness: Option<PointSet>,
}

impl ClaimResult {
    fn ok() -> Self {
        ClaimResult {
            holds: true,
            witness: None,
        }
    }

    fn fail(witness: PointSet) -> Self {
        ClaimResult {
            holds: false,
            witness: Some(witness),
        }
    }
}

/// Everything the van Dalen and Wattel check computes for one nest pair.
#[derive(Clone, Debug)]
pub struct VdwVerdict {
    /// Hypothesis flag: the union of the two nests T1-separates the space.
    pub union_t1: bool,
    /// The induced order of the left nest.
    pub order: Relation,
    /// Topology generated by the union of the nests.
    pub generated: Topology,
    /// Topology generated by the strict rays of the induced order.
    pub order_topology: Topology,
    pub l_interlocking: bool,
    pub r_interlocking: bool,
    /// Generated topology equals the ray topology of the order.
    pub topology_matches_order: bool,
    /// Every order-open set is open in the generated topology.
    pub claim_order_open: ClaimResult,
    /// The open rays of the order regenerate the generated topology.
    pub claim_go_subbase: ClaimResult,
    /// Both nests interlocking and the generated topology is the order
    /// topology: the LOTS form.
    pub claim_lots: ClaimResult,
    /// The LOTS claim failed only because a nest carries the whole space as
    /// a member (the top set triggers under the empty-intersection
    /// convention) while the topologies do coincide.
    pub convention_sensitive: bool,
}

fn without_universe(f: &SubsetFamily) -> SubsetFamily {
    let sets = f.iter().filter(|s| !s.is_full()).cloned().collect();
    SubsetFamily::new(f.space(), sets).expect("subfamily of a valid family")
}

/// Runs the van Dalen and Wattel checks on a pair of nests.
pub fn vdw_verdict(space: FiniteSpace, l: &SubsetFamily, r: &SubsetFamily) -> Result<VdwVerdict> {
    if l.space() != space || r.space() != space {
        return Err(Error::input("nests must live on the given space"));
    }
    if !is_nest(l) || !is_nest(r) {
        return Err(Error::input("vdw verdict requires two nests"));
    }
    let union = l.union_family(r)?;
    let union_t1 = separation_kind(&union) == SeparationKind::T1;
    let generated = generate_topology(space, &union)?;
    let order = crate::nest::induced_order(l);
    let order_top = ray_topology(&order);

    let claim_order_open = match order_top.opens().iter().find(|s| !generated.is_open(s)) {
        None => ClaimResult::ok(),
        Some(w) => ClaimResult::fail(w.clone()),
    };

    let open_rays: Vec<PointSet> = space
        .points()
        .flat_map(|x| [order.down_ray(x), order.up_ray(x)])
        .filter(|s| !s.is_empty() && generated.is_open(s))
        .collect();
    let regenerated = generate_topology(space, &SubsetFamily::new(space, open_rays)?)?;
    let claim_go_subbase = if regenerated == generated {
        ClaimResult::ok()
    } else {
        ClaimResult::fail(symmetric_difference_witness(&regenerated, &generated))
    };

    let l_interlocking = is_interlocking(l);
    let r_interlocking = is_interlocking(r);
    let topology_matches_order = generated == order_top;
    let claim_lots = if l_interlocking && r_interlocking && topology_matches_order {
        ClaimResult::ok()
    } else if let Some(w) = interlocking_violation(l).or_else(|| interlocking_violation(r)) {
        ClaimResult::fail(w)
    } else {
        ClaimResult::fail(symmetric_difference_witness(&generated, &order_top))
    };

    let convention_sensitive = !claim_lots.holds
        && topology_matches_order
        && is_interlocking(&without_universe(l))
        && is_interlocking(&without_universe(r));

    Ok(VdwVerdict {
        union_t1,
        order,
        generated,
        order_topology: order_top,
        l_interlocking,
        r_interlocking,
        topology_matches_order,
        claim_order_open,
        claim_go_subbase,
        claim_lots,
        convention_sensitive,
    })
}

fn symmetric_difference_witness(a: &Topology, b: &Topology) -> PointSet {
    for s in a.opens().iter() {
        if !b.is_open(s) {
            return s.clone();
        }
    }
    for s in b.opens().iter() {
        if !a.is_open(s) {
            return s.clone();
        }
    }
    unreachable!("called only on distinct topologies")
}

/// The five ordinal conditions evaluated on one topology, with witnesses.
#[derive(Clone, Debug)]
pub struct OrdinalProfile {
    /// Condition 1: homeomorphic to an ordinal, i.e. discrete.
    pub discrete: bool,
    /// Condition 2 witness: interlocking open nest pair with T1 union
    /// generating the topology, left one scattering (universe adjoined).
    pub scattering_pair: Option<(SubsetFamily, SubsetFamily)>,
    /// Condition 3 witness: as above with one nest well-ordered by
    /// inclusion either way.
    pub well_ordered_pair: Option<(SubsetFamily, SubsetFamily)>,
    /// Condition 4 witness: clopen scattering nest, no member the union of
    /// its strict subsets, member differences a base.
    pub difference_base_nest: Option<SubsetFamily>,
    /// Condition 5 witness: clopen scattering nest (every finite set is
    /// compact, so compactness is free).
    pub clopen_scatter_nest: Option<SubsetFamily>,
}

impl OrdinalProfile {
    pub fn conditions(&self) -> [bool; 5] {
        [
            self.discrete,
            self.scattering_pair.is_some(),
            self.well_ordered_pair.is_some(),
            self.difference_base_nest.is_some(),
            self.clopen_scatter_nest.is_some(),
        ]
    }

    /// All five conditions agree (the equivalence the suites pin down).
    pub fn all_agree(&self) -> bool {
        let c = self.conditions();
        c.iter().all(|&b| b == c[0])
    }
}

/// Evaluates the five ordinal conditions on `t`.
///
/// `search_bound` caps the number of nodes visited by the clopen nest
/// searches; exceeding it is a capacity error, not a wrong answer.
pub fn ordinal_profile(t: &Topology, search_bound: usize) -> Result<OrdinalProfile> {
    let n = t.space().size();
    if n > ORDINAL_PROFILE_BOUND {
        return Err(Error::capacity(
            "ordinal profile space size",
            n,
            ORDINAL_PROFILE_BOUND,
        ));
    }

    let discrete = t.is_discrete();
    let pair = find_ordered_subbase_pair(t)?;
    let scattering_pair = match &pair {
        Some((l, r)) if scatters_with(l, true)? => Some((l.clone(), r.clone())),
        _ => None,
    };
    // On a finite space every nest is well-ordered by inclusion both ways,
    // so any subbase pair witnesses condition 3.
    let well_ordered_pair = pair;

    let clopens: Vec<PointSet> = t
        .clopen_sets()
        .into_iter()
        .filter(|s| !s.is_empty())
        .collect();

    let mut budget = search_bound;
    let mut difference_base_nest = None;
    for_each_chain(&clopens, &mut budget, &mut |chain| {
        let fam = SubsetFamily::new(t.space(), chain.to_vec()).expect("chain over one space");
        if !scatters_with(&fam, true).unwrap_or(false) {
            return false;
        }
        let no_union_member = fam
            .iter()
            .all(|l| crate::nest::strict_subset_union(&fam, l) != *l);
        if no_union_member && differences_form_base(t, &fam) {
            difference_base_nest = Some(fam);
            return true;
        }
        false
    })?;

    let mut budget = search_bound;
    let mut clopen_scatter_nest = None;
    for_each_chain(&clopens, &mut budget, &mut |chain| {
        let fam = SubsetFamily::new(t.space(), chain.to_vec()).expect("chain over one space");
        if scatters_with(&fam, true).unwrap_or(false) {
            clopen_scatter_nest = Some(fam);
            return true;
        }
        false
    })?;

    Ok(OrdinalProfile {
        discrete,
        scattering_pair,
        well_ordered_pair,
        difference_base_nest,
        clopen_scatter_nest,
    })
}

/// Searches for interlocking open nests whose T1 union generates `t`.
///
/// Complete by the finite-space reduction in the module docs: any such left
/// nest is the weak-down-ray family of a linear order, so the n! orders are
/// the whole search space.
pub fn find_ordered_subbase_pair(t: &Topology) -> Result<Option<(SubsetFamily, SubsetFamily)>> {
    let space = t.space();
    for order in crate::enumerate::enumerate_linear_orders(space) {
        let maxes = order.maximal_in(&PointSet::full(space));
        let mins = order.minimal_in(&PointSet::full(space));
        let l_sets: Vec<PointSet> = space
            .points()
            .filter(|x| !maxes.contains(x))
            .map(|x| order.weak_down_ray(x))
            .collect();
        let r_sets: Vec<PointSet> = space
            .points()
            .filter(|x| !mins.contains(x))
            .map(|x| order.weak_up_ray(x))
            .collect();
        if l_sets.iter().chain(&r_sets).any(|s| !t.is_open(s)) {
            continue;
        }
        let l = SubsetFamily::new(space, l_sets)?;
        let r = SubsetFamily::new(space, r_sets)?;
        let union = l.union_family(&r)?;
        if space.size() > 1 && separation_kind(&union) != SeparationKind::T1 {
            continue;
        }
        if !is_interlocking(&l) || !is_interlocking(&r) {
            continue;
        }
        if generate_topology(space, &union)? == *t {
            return Ok(Some((l, r)));
        }
    }
    Ok(None)
}

/// Base criterion for the member-difference family of a clopen nest: every
/// open set is, around each of its points, refined by some difference
/// `L - M` or some member `L`.
fn differences_form_base(t: &Topology, fam: &SubsetFamily) -> bool {
    let mut basis: Vec<PointSet> = fam.iter().cloned().collect();
    for l in fam.iter() {
        for m in fam.iter() {
            basis.push(l.difference(m));
        }
    }
    for u in t.opens().iter() {
        for x in u.iter() {
            let covered = basis.iter().any(|b| b.contains(x) && b.is_subset(u));
            if !covered {
                return false;
            }
        }
    }
    true
}

/// Depth-first traversal of every chain (by strict inclusion) drawn from
/// `candidates`. The visitor returns true to stop the search.
fn for_each_chain(
    candidates: &[PointSet],
    budget: &mut usize,
    visit: &mut impl FnMut(&[PointSet]) -> bool,
) -> Result<bool> {
    fn rec(
        candidates: &[PointSet],
        start: usize,
        chain: &mut Vec<PointSet>,
        budget: &mut usize,
        visit: &mut impl FnMut(&[PointSet]) -> bool,
    ) -> Result<bool> {
        if *budget == 0 {
            return Err(Error::capacity("nest search nodes", 1, 0));
        }
        *budget -= 1;
        if visit(chain) {
            return Ok(true);
        }
        for i in start..candidates.len() {
            let c = &candidates[i];
            if chain
                .iter()
                .all(|s| s.is_strict_subset(c) || c.is_strict_subset(s))
            {
                chain.push(c.clone());
                if rec(candidates, i + 1, chain, budget, visit)? {
                    return Ok(true);
                }
                chain.pop();
            }
        }
        Ok(false)
    }
    let mut chain = Vec::new();
    rec(candidates, 0, &mut chain, budget, visit)
}

/// Finite form of the cardinal characterization: some clopen nest whose
/// members are all strictly smaller than the space scatters it.
///
/// The strict reading requires the nest itself to scatter; the adjoined
/// reading lets the whole space participate in scattering while keeping the
/// members proper. Both are exposed because the statement is sensitive to
/// that choice.
pub fn cardinal_scatter_check(t: &Topology) -> Result<bool> {
    cardinal_scatter_check_with(t, false)
}

pub fn cardinal_scatter_check_with(t: &Topology, include_universe: bool) -> Result<bool> {
    let n = t.space().size();
    if n > ORDINAL_PROFILE_BOUND {
        return Err(Error::capacity(
            "cardinal scatter check space size",
            n,
            ORDINAL_PROFILE_BOUND,
        ));
    }
    let proper_clopens: Vec<PointSet> = t
        .clopen_sets()
        .into_iter()
        .filter(|s| !s.is_empty() && !s.is_full())
        .collect();
    let mut budget = DEFAULT_SEARCH_BOUND;
    let mut found = false;
    for_each_chain(&proper_clopens, &mut budget, &mut |chain| {
        let fam = SubsetFamily::new(t.space(), chain.to_vec()).expect("chain over one space");
        if scatters_with(&fam, include_universe).unwrap_or(false) {
            found = true;
            return true;
        }
        false
    })?;
    Ok(found)
}

/// True iff `k` nests of open sets suffice to generate `t` as a subbase.
pub fn neight_search(t: &Topology, k: usize) -> Result<bool> {
    Ok(minimal_neight(t)? <= k)
}

/// Minimal number of nests of open sets whose union is a subbase for `t`.
///
/// Convention: the indiscrete topology has neight 0 (the empty subbase
/// generates it). A subbase split into k chains has antichain width at most
/// k and conversely (Dilworth), so the search minimizes the width over all
/// generating subbases drawn from the proper nonempty opens.
pub fn minimal_neight(t: &Topology) -> Result<usize> {
    let n = t.space().size();
    if n > NEIGHT_BOUND {
        return Err(Error::capacity("neight search space size", n, NEIGHT_BOUND));
    }
    if *t == Topology::indiscrete(t.space()) {
        return Ok(0);
    }
    let candidates: Vec<PointSet> = t
        .opens()
        .iter()
        .filter(|s| !s.is_empty() && !s.is_full())
        .cloned()
        .collect();
    let mut best = usize::MAX;
    for mask in 1u64..(1 << candidates.len()) {
        let subset: Vec<PointSet> = candidates
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, s)| s.clone())
            .collect();
        let width = min_chain_cover(&subset);
        if width >= best {
            continue;
        }
        let fam = SubsetFamily::new(t.space(), subset)?;
        if generate_topology(t.space(), &fam)? == *t {
            best = width;
        }
    }
    debug_assert_ne!(best, usize::MAX, "the full open family always generates");
    Ok(best)
}

/// Minimum number of chains covering the poset of sets under strict
/// inclusion, via bipartite matching.
fn min_chain_cover(sets: &[PointSet]) -> usize {
    fn try_augment(
        i: usize,
        sets: &[PointSet],
        matched_right: &mut Vec<Option<usize>>,
        visited: &mut Vec<bool>,
    ) -> bool {
        for j in 0..sets.len() {
            if visited[j] || !sets[i].is_strict_subset(&sets[j]) {
                continue;
            }
            visited[j] = true;
            let free = match matched_right[j] {
                None => true,
                Some(prev) => try_augment(prev, sets, matched_right, visited),
            };
            if free {
                matched_right[j] = Some(i);
                return true;
            }
        }
        false
    }

    let n = sets.len();
    let mut matched_right: Vec<Option<usize>> = vec![None; n];
    let mut matching = 0;
    for i in 0..n {
        let mut visited = vec![false; n];
        if try_augment(i, sets, &mut matched_right, &mut visited) {
            matching += 1;
        }
    }
    n - matching
}

/// Comparison of the ray topology and the interval topology of one strict
/// transitive relation.
#[derive(Clone, Debug)]
pub struct TransitiveProbe {
    pub ray: Topology,
    pub interval: Topology,
    pub equal: bool,
    /// Opens of the ray topology missing from the interval topology.
    pub only_in_ray: Vec<PointSet>,
    /// Opens of the interval topology missing from the ray topology.
    pub only_in_interval: Vec<PointSet>,
    /// Structural features used to bucket batch results.
    pub antisymmetric: bool,
    pub total: bool,
    pub dense: bool,
    /// The interpretation this probe rests on.
    pub assumption: &'static str,
}

pub fn transitive_probe(r: &Relation) -> Result<TransitiveProbe> {
    if !r.is_transitive() {
        return Err(Error::input("probe requires a transitive relation"));
    }
    let ray = ray_topology(r);
    let interval = interval_topology(r)?;
    let only_in_ray: Vec<PointSet> = ray
        .opens()
        .iter()
        .filter(|s| !interval.is_open(s))
        .cloned()
        .collect();
    let only_in_interval: Vec<PointSet> = interval
        .opens()
        .iter()
        .filter(|s| !ray.is_open(s))
        .cloned()
        .collect();
    let equal = only_in_ray.is_empty() && only_in_interval.is_empty();
    Ok(TransitiveProbe {
        equal,
        antisymmetric: r.is_antisymmetric(),
        total: r.is_total(),
        dense: r.is_dense_order()?,
        ray,
        interval,
        only_in_ray,
        only_in_interval,
        assumption: RAY_READING_NOTE,
    })
}

/// One bucket of batch probe results, keyed by structural features.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProbeBucket {
    pub antisymmetric: bool,
    pub total: bool,
    pub dense: bool,
    pub equal: bool,
    pub count: usize,
}

/// Batch probe over every strict transitive relation on the space.
#[derive(Clone, Debug)]
pub struct BatchProbe {
    pub space_size: usize,
    pub total_relations: usize,
    pub equal_count: usize,
    pub buckets: Vec<ProbeBucket>,
    pub assumption: &'static str,
}

pub fn transitive_probe_batch(space: FiniteSpace) -> Result<BatchProbe> {
    let relations = crate::enumerate::enumerate_strict_transitive(space)?;
    let mut tally: std::collections::BTreeMap<(bool, bool, bool, bool), usize> =
        std::collections::BTreeMap::new();
    let mut equal_count = 0;
    let total_relations = relations.len();
    for r in &relations {
        let probe = transitive_probe(r)?;
        if probe.equal {
            equal_count += 1;
        }
        *tally
            .entry((probe.antisymmetric, probe.total, probe.dense, probe.equal))
            .or_insert(0) += 1;
    }
    let buckets = tally
        .into_iter()
        .map(|((antisymmetric, total, dense, equal), count)| ProbeBucket {
            antisymmetric,
            total,
            dense,
            equal,
            count,
        })
        .collect();
    Ok(BatchProbe {
        space_size: space.size(),
        total_relations,
        equal_count,
        buckets,
        assumption: RAY_READING_NOTE,
    })
}
