//! Command dispatch: every check the command line exposes.

use serde_json::{json, Value};

use super::instance::Instance;
use super::report::Report;
use crate::enumerate::{
    enumerate_families, enumerate_topologies, EnumerationOptions, FamilyFilter,
};
use crate::error::{Error, Result};
use crate::fermat::parse_fermat;
use crate::nest::{
    induced_order, interlocking_violation, is_interlocking, is_nest, nest_violation,
    scatter_failure, separation_kind, SeparationKind,
};
use crate::orderability::{
    minimal_neight, ordinal_profile, transitive_probe, transitive_probe_batch, vdw_verdict,
    DEFAULT_SEARCH_BOUND, RAY_READING_NOTE,
};
use crate::product::{
    preimage_nest, project_nest, projection_condition, weak_separation_kind, ProductSpace,
};
use crate::space::{FiniteSpace, PointSet, SubsetFamily};

/// Fixed default seed, printed in every report.
pub const DEFAULT_SEED: u64 = 0x6e657374;

/// All command options; flags the command line maps onto.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub seed: u64,
    pub bound: Option<usize>,
    pub filter: Option<String>,
    /// Scattering convention: adjoin the whole space before testing.
    pub include_universe: bool,
    /// `enumerate`: print only the count.
    pub count_only: bool,
    /// Space size for instance-free commands.
    pub n: Option<usize>,
    /// `probe-transitive`: sweep every strict transitive relation.
    pub batch: bool,
    /// Coordinate count for `product-transfer`.
    pub index_count: usize,
    /// Positional expressions for the fermat commands.
    pub exprs: Vec<String>,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            seed: DEFAULT_SEED,
            bound: None,
            filter: None,
            include_universe: false,
            count_only: false,
            n: None,
            batch: false,
            index_count: 2,
            exprs: Vec::new(),
        }
    }
}

pub const COMMANDS: &[&str] = &[
    "check-nest",
    "induced-order",
    "separation",
    "interlocking",
    "scatter",
    "vdw",
    "ordinal-profile",
    "neight",
    "probe-transitive",
    "product-transfer",
    "fermat-compare",
    "fermat-canon",
    "enumerate",
];

/// Runs one command against an instance; pure apart from the clock, so the
/// serialized report is a function of (command, instance, options).
pub fn run_command(command: &str, instance: &Instance, opts: &RunOptions) -> Result<Report> {
    let started = std::time::Instant::now();
    let mut report = Report::new(command, opts.seed, instance.digest());
    report.warnings = instance.warnings.clone();

    match command {
        "check-nest" => check_nest(instance, &mut report)?,
        "induced-order" => induced_order_cmd(instance, &mut report)?,
        "separation" => separation_cmd(instance, &mut report)?,
        "interlocking" => interlocking_cmd(instance, &mut report)?,
        "scatter" => scatter_cmd(instance, opts, &mut report)?,
        "vdw" => vdw_cmd(instance, &mut report)?,
        "ordinal-profile" => ordinal_profile_cmd(instance, opts, &mut report)?,
        "neight" => neight_cmd(instance, &mut report)?,
        "probe-transitive" => probe_cmd(instance, opts, &mut report)?,
        "product-transfer" => product_transfer_cmd(instance, opts, &mut report)?,
        "fermat-compare" => fermat_compare_cmd(instance, opts, &mut report)?,
        "fermat-canon" => fermat_canon_cmd(instance, opts, &mut report)?,
        "enumerate" => enumerate_cmd(instance, opts, &mut report)?,
        other => {
            return Err(Error::input(format!(
                "unknown command '{other}'; expected one of {}",
                COMMANDS.join(", ")
            )))
        }
    }

    report.timing_ms = Some(started.elapsed().as_millis());
    Ok(report)
}

fn require_families(instance: &Instance) -> Result<&std::collections::BTreeMap<String, SubsetFamily>> {
    if instance.families.is_empty() {
        return Err(Error::input("this command needs a 'families' field"));
    }
    Ok(&instance.families)
}

fn require_space(instance: &Instance) -> Result<FiniteSpace> {
    instance
        .space
        .ok_or_else(|| Error::input("this command needs a 'space' field"))
}

fn set_json(s: &PointSet) -> Value {
    json!(s.to_points())
}

fn check_nest(instance: &Instance, report: &mut Report) -> Result<()> {
    for (name, fam) in require_families(instance)? {
        match nest_violation(fam) {
            None => report.claim(format!("nest:{name}"), true, format!("{fam:?} is a nest")),
            Some((a, b)) => report.claim_with_witness(
                format!("nest:{name}"),
                false,
                format!("incomparable members {a:?} and {b:?}"),
                json!({ "incomparable": [set_json(&a), set_json(&b)] }),
            ),
        }
    }
    Ok(())
}

fn induced_order_cmd(instance: &Instance, report: &mut Report) -> Result<()> {
    for (name, fam) in require_families(instance)? {
        let order = induced_order(fam);
        report.info(
            format!("order:{name}"),
            format!("pairs {:?}, classified {:?}", order.pairs(), order.classify()),
        );
    }
    Ok(())
}

fn separation_cmd(instance: &Instance, report: &mut Report) -> Result<()> {
    let families = require_families(instance)?;
    let mut union: Option<SubsetFamily> = None;
    for (name, fam) in families {
        report.info(
            format!("separation:{name}"),
            format!("{:?}", separation_kind(fam)),
        );
        union = Some(match union {
            None => fam.clone(),
            Some(u) => u.union_family(fam)?,
        });
    }
    if families.len() > 1 {
        let u = union.expect("at least one family");
        report.info("separation:union", format!("{:?}", separation_kind(&u)));
    }
    Ok(())
}

fn interlocking_cmd(instance: &Instance, report: &mut Report) -> Result<()> {
    for (name, fam) in require_families(instance)? {
        match interlocking_violation(fam) {
            None => report.claim(format!("interlocking:{name}"), true, "interlocking"),
            Some(t) => report.claim_with_witness(
                format!("interlocking:{name}"),
                false,
                format!("{t:?} equals the intersection of its strict supersets but not the union of its strict subsets"),
                json!({ "member": set_json(&t) }),
            ),
        }
    }
    Ok(())
}

fn scatter_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    report.assume(if opts.include_universe {
        "scattering tested with the whole space adjoined (include-universe)"
    } else {
        "scattering tested on the raw family (raw)"
    });
    for (name, fam) in require_families(instance)? {
        let tested = if opts.include_universe {
            fam.with_set(&PointSet::full(fam.space()))?
        } else {
            fam.clone()
        };
        match scatter_failure(&tested)? {
            None => report.claim(format!("scatter:{name}"), true, "scatters the space"),
            Some(a) => report.claim_with_witness(
                format!("scatter:{name}"),
                false,
                format!("subset {a:?} meets no member in exactly one point"),
                json!({ "subset": set_json(&a), "include_universe": opts.include_universe }),
            ),
        }
    }
    Ok(())
}

fn two_nests<'a>(instance: &'a Instance) -> Result<(&'a SubsetFamily, &'a SubsetFamily)> {
    let families = require_families(instance)?;
    if let (Some(l), Some(r)) = (families.get("L"), families.get("R")) {
        return Ok((l, r));
    }
    if families.len() == 2 {
        let mut it = families.values();
        return Ok((it.next().unwrap(), it.next().unwrap()));
    }
    Err(Error::input(
        "this command needs families named 'L' and 'R' (or exactly two families)",
    ))
}

fn vdw_cmd(instance: &Instance, report: &mut Report) -> Result<()> {
    let space = require_space(instance)?;
    let (l, r) = two_nests(instance)?;
    let v = vdw_verdict(space, l, r)?;
    report.info(
        "hypothesis:union-t1",
        format!("{}", if v.union_t1 { "holds" } else { "does not hold" }),
    );
    match &v.claim_order_open.witness {
        None => report.claim("claim:order-open-sets-open", true, "every order-open set is generated"),
        Some(w) => report.claim_with_witness(
            "claim:order-open-sets-open",
            false,
            format!("order-open {w:?} is not in the generated topology"),
            json!({ "set": set_json(w) }),
        ),
    }
    match &v.claim_go_subbase.witness {
        None => report.claim(
            "claim:go-subbase",
            true,
            "open rays of the induced order regenerate the topology",
        ),
        Some(w) => report.claim_with_witness(
            "claim:go-subbase",
            false,
            format!("{w:?} separates the regenerated and generated topologies"),
            json!({ "set": set_json(w) }),
        ),
    }
    match &v.claim_lots.witness {
        None => report.claim(
            "claim:lots",
            true,
            "both nests interlocking and the topology is the order topology",
        ),
        Some(w) => report.claim_with_witness(
            "claim:lots",
            false,
            format!(
                "fails (interlocking: L {}, R {}; topology matches order: {})",
                v.l_interlocking, v.r_interlocking, v.topology_matches_order
            ),
            json!({ "set": set_json(w) }),
        ),
    }
    if v.convention_sensitive {
        report.info(
            "note:convention-sensitive",
            "the LOTS claim fails only through a whole-space member triggering under the empty-intersection convention",
        );
    }
    Ok(())
}

fn ordinal_profile_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let t = instance
        .topology
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a 'topology' field"))?;
    report.assume("scattering conditions use the include-universe convention");
    let bound = opts.bound.unwrap_or(DEFAULT_SEARCH_BOUND);
    let profile = ordinal_profile(t, bound)?;
    let c = profile.conditions();
    let names = [
        "discrete (ordinal form)",
        "interlocking T1 subbase pair, left nest scatters",
        "interlocking T1 subbase pair, one nest well-ordered",
        "clopen scattering nest with difference base",
        "clopen scattering nest",
    ];
    for (i, (holds, name)) in c.iter().zip(names).enumerate() {
        report.info(format!("condition:{}", i + 1), format!("{name}: {holds}"));
    }
    if profile.all_agree() {
        report.claim("claim:five-way-equivalence", true, "all five conditions agree");
    } else {
        report.claim_with_witness(
            "claim:five-way-equivalence",
            false,
            format!("conditions disagree: {c:?}"),
            json!({ "conditions": c.to_vec() }),
        );
    }
    Ok(())
}

fn neight_cmd(instance: &Instance, report: &mut Report) -> Result<()> {
    let t = instance
        .topology
        .as_ref()
        .ok_or_else(|| Error::input("this command needs a 'topology' field"))?;
    report.assume("the indiscrete topology has neight 0 (empty subbase)");
    let k = minimal_neight(t)?;
    report.info(
        "neight",
        format!("minimal number of nests generating the topology: {k}"),
    );
    Ok(())
}

fn probe_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    report.assume(RAY_READING_NOTE);
    if opts.batch || instance.relation.is_none() {
        let n = opts
            .n
            .or(instance.space.map(|s| s.size()))
            .ok_or_else(|| Error::input("batch probe needs --n or a 'space' field"))?;
        let batch = transitive_probe_batch(FiniteSpace::new(n)?)?;
        report.info(
            "batch",
            format!(
                "{} strict transitive relations on {} points, {} with equal topologies",
                batch.total_relations, batch.space_size, batch.equal_count
            ),
        );
        for b in &batch.buckets {
            report.info(
                format!(
                    "bucket:antisym={},total={},dense={},equal={}",
                    b.antisymmetric, b.total, b.dense, b.equal
                ),
                format!("{} relation(s)", b.count),
            );
        }
        return Ok(());
    }
    let r = instance.relation.as_ref().expect("checked above");
    let probe = transitive_probe(r)?;
    if probe.equal {
        report.claim(
            "claim:ray-equals-interval",
            true,
            "the ray topology equals the interval topology",
        );
    } else {
        let witness = probe
            .only_in_ray
            .first()
            .or(probe.only_in_interval.first())
            .expect("unequal topologies differ somewhere");
        report.claim_with_witness(
            "claim:ray-equals-interval",
            false,
            format!(
                "{} open(s) only in the ray topology, {} only in the interval topology",
                probe.only_in_ray.len(),
                probe.only_in_interval.len()
            ),
            json!({ "set": set_json(witness) }),
        );
    }
    report.info(
        "features",
        format!(
            "antisymmetric={}, total={}, dense={}",
            probe.antisymmetric, probe.total, probe.dense
        ),
    );
    Ok(())
}

fn product_transfer_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let base = require_space(instance)?;
    let families = require_families(instance)?;
    let p = ProductSpace::new(base, opts.index_count)?;
    report.info(
        "product",
        format!(
            "base size {}, {} coordinates, {} tuples",
            base.size(),
            p.index_count(),
            p.point_space().size()
        ),
    );
    for (name, fam) in families {
        if !is_nest(fam) {
            return Err(Error::input(format!("family '{name}' is not a nest")));
        }
        for j in 0..p.index_count() {
            let pre = preimage_nest(&p, fam, j)?;
            report.claim(
                format!("preimage-nest:{name}:j={j}"),
                is_nest(&pre),
                "coordinate preimage is a nest",
            );
            report.claim(
                format!("roundtrip:{name}:j={j}"),
                &project_nest(&p, &pre, j)? == fam,
                "projecting the preimage returns the original nest",
            );
            report.claim(
                format!("projection-condition:{name}:j={j}"),
                projection_condition(&p, &pre, j)?,
                "cylinders satisfy the coordinate condition",
            );
            let weak_t0_expected = separation_kind(fam).at_least_t0();
            let weak = weak_separation_kind(&p, &pre, None, j)?;
            report.claim(
                format!("weak-t0-transfer:{name}:j={j}"),
                !weak_t0_expected || weak.at_least_t0(),
                "T0 separation transfers to weak T0 of the preimage",
            );
            report.claim(
                format!("interlocking-transfer:{name}:j={j}"),
                !is_interlocking(fam) || is_interlocking(&pre),
                "interlocking transfers to the preimage",
            );
        }
    }
    if let (Some(l), Some(r)) = (families.get("L"), families.get("R")) {
        let union = l.union_family(r)?;
        if separation_kind(&union) == SeparationKind::T1 {
            for j in 0..p.index_count() {
                let pre_l = preimage_nest(&p, l, j)?;
                let pre_r = preimage_nest(&p, r, j)?;
                let kind = weak_separation_kind(&p, &pre_l, Some(&pre_r), j)?;
                report.claim(
                    format!("weak-t1-transfer:j={j}"),
                    kind == SeparationKind::T1,
                    "T1 union transfers to a weakly T1 preimage pair",
                );
            }
        } else {
            report.info("weak-t1-transfer", "skipped: union of L and R is not T1");
        }
    }
    Ok(())
}

fn gather_exprs(instance: &Instance, opts: &RunOptions) -> Result<Vec<(String, crate::fermat::FermatReal)>> {
    let mut out = Vec::new();
    for text in &opts.exprs {
        out.push((text.clone(), parse_fermat(text)?));
    }
    for x in &instance.fermat {
        out.push((x.to_string(), x.clone()));
    }
    Ok(out)
}

fn fermat_compare_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let exprs = gather_exprs(instance, opts)?;
    if exprs.len() < 2 {
        return Err(Error::input(
            "fermat-compare needs at least two expressions",
        ));
    }
    for window in exprs.windows(2) {
        let (ta, a) = &window[0];
        let (tb, b) = &window[1];
        let sign = match a.compare(b) {
            std::cmp::Ordering::Less => "<",
            std::cmp::Ordering::Equal => "=",
            std::cmp::Ordering::Greater => ">",
        };
        report.info("compare", format!("{ta} {sign} {tb}"));
    }
    let mut sorted = exprs.clone();
    sorted.sort_by(|(_, a), (_, b)| a.compare(b));
    report.info(
        "ascending",
        sorted
            .iter()
            .map(|(_, x)| x.to_string())
            .collect::<Vec<_>>()
            .join("  <=  "),
    );
    Ok(())
}

fn fermat_canon_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let exprs = gather_exprs(instance, opts)?;
    if exprs.is_empty() {
        return Err(Error::input("fermat-canon needs at least one expression"));
    }
    for (text, x) in &exprs {
        report.info("canonical", format!("{text}  ->  {x}"));
    }
    Ok(())
}

fn enumerate_cmd(instance: &Instance, opts: &RunOptions, report: &mut Report) -> Result<()> {
    let n = opts
        .n
        .or(instance.space.map(|s| s.size()))
        .ok_or_else(|| Error::input("enumerate needs --n or a 'space' field"))?;
    let space = FiniteSpace::new(n)?;
    let filter = match opts.filter.as_deref() {
        None | Some("all") => FamilyFilter::All,
        Some("nest") => FamilyFilter::Nests,
        Some("topology") => {
            let topologies = enumerate_topologies(space)?;
            report.info("count", format!("{} topologies on {n} points", topologies.len()));
            if !opts.count_only {
                for (i, t) in topologies.iter().enumerate().take(50) {
                    report.info(format!("topology:{i}"), format!("{:?}", t.opens()));
                }
                if topologies.len() > 50 {
                    report.info("truncated", format!("{} more", topologies.len() - 50));
                }
            }
            return Ok(());
        }
        Some(other) => {
            return Err(Error::input(format!(
                "unknown filter '{other}'; expected all, nest, or topology"
            )))
        }
    };
    let enum_opts = EnumerationOptions {
        bound_override: opts.bound,
        ..Default::default()
    };
    let label = match filter {
        FamilyFilter::All => "families",
        FamilyFilter::Nests => "nests",
    };
    if opts.count_only {
        let count = enumerate_families(space, filter, enum_opts)?.count();
        report.info("count", format!("{count} {label} on {n} points"));
    } else {
        let families: Vec<_> = enumerate_families(space, filter, enum_opts)?.collect();
        report.info("count", format!("{} {label} on {n} points", families.len()));
        for (i, fam) in families.iter().enumerate().take(200) {
            report.info(format!("family:{i}"), format!("{fam:?}"));
        }
        if families.len() > 200 {
            report.info("truncated", format!("{} more", families.len() - 200));
        }
    }
    Ok(())
}

/// Re-validates every counterexample witness a report carries against the
/// instance it was produced from. Returns false if any witness fails to
/// falsify its claim.
pub fn verify_report_witnesses(report: &Report, instance: &Instance) -> Result<bool> {
    for claim in &report.claims {
        if claim.holds != Some(false) {
            continue;
        }
        let Some(witness) = &claim.witness else {
            continue;
        };
        let ok = verify_one_witness(&claim.name, witness, instance)?;
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

fn family_for(name: &str, instance: &Instance) -> Result<SubsetFamily> {
    let key = name.split(':').nth(1).unwrap_or("");
    let key = key.split(':').next().unwrap_or("");
    instance
        .families
        .get(key)
        .cloned()
        .ok_or_else(|| Error::input(format!("witness family '{key}' missing from instance")))
}

fn point_set_from(value: &Value, space: FiniteSpace) -> Result<PointSet> {
    let points: Vec<usize> = serde_json::from_value(value.clone())
        .map_err(|e| Error::parse(format!("witness set: {e}")))?;
    PointSet::from_points(space, &points)
}

fn verify_one_witness(name: &str, witness: &Value, instance: &Instance) -> Result<bool> {
    if name.starts_with("nest:") {
        let fam = family_for(name, instance)?;
        let sets = &witness["incomparable"];
        let a = point_set_from(&sets[0], fam.space())?;
        let b = point_set_from(&sets[1], fam.space())?;
        return Ok(fam.contains_set(&a)
            && fam.contains_set(&b)
            && !a.is_subset(&b)
            && !b.is_subset(&a));
    }
    if name.starts_with("interlocking:") {
        let fam = family_for(name, instance)?;
        let t = point_set_from(&witness["member"], fam.space())?;
        return Ok(crate::nest::intersection_trigger(&fam, &t)?
            && !crate::nest::union_witness(&fam, &t)?);
    }
    if name.starts_with("scatter:") {
        let fam = family_for(name, instance)?;
        let include_universe = witness["include_universe"].as_bool().unwrap_or(false);
        let tested = if include_universe {
            fam.with_set(&PointSet::full(fam.space()))?
        } else {
            fam
        };
        let a = point_set_from(&witness["subset"], tested.space())?;
        return Ok(!a.is_empty() && tested.iter().all(|s| s.intersection(&a).len() != 1));
    }
    if name == "claim:order-open-sets-open" {
        let space = require_space(instance)?;
        let (l, r) = two_nests(instance)?;
        let v = vdw_verdict(space, l, r)?;
        let w = point_set_from(&witness["set"], space)?;
        return Ok(v.order_topology.is_open(&w) && !v.generated.is_open(&w));
    }
    if name == "claim:ray-equals-interval" {
        let r = instance
            .relation
            .as_ref()
            .ok_or_else(|| Error::input("relation missing for witness check"))?;
        let probe = transitive_probe(r)?;
        let w = point_set_from(&witness["set"], r.space())?;
        return Ok(probe.ray.is_open(&w) != probe.interval.is_open(&w));
    }
    // Other witnesses are descriptive; nothing to re-run.
    Ok(true)
}

/// Convenience wrapper used by tests and examples: run against an instance
/// document given as text.
pub fn run_on_text(command: &str, text: &str, opts: &RunOptions) -> Result<Report> {
    let instance = super::instance::parse_instance(text)?;
    run_command(command, &instance, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::instance::parse_instance;

    fn opts() -> RunOptions {
        RunOptions::default()
    }

    #[test]
    fn vdw_two_point_instance_exits_zero() {
        let report = run_on_text(
            "vdw",
            r#"{"space":2,"families":{"L":[[0]],"R":[[1]]}}"#,
            &opts(),
        )
        .unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(report
            .claims
            .iter()
            .any(|c| c.name == "claim:lots" && c.holds == Some(true)));
    }

    #[test]
    fn check_nest_counterexample_exits_one_and_witness_verifies() {
        let text = r#"{"space":2,"families":{"F":[[0],[1]]}}"#;
        let instance = parse_instance(text).unwrap();
        let report = run_command("check-nest", &instance, &opts()).unwrap();
        assert_eq!(report.exit_code(), 1);
        assert!(verify_report_witnesses(&report, &instance).unwrap());
    }

    #[test]
    fn fermat_compare_orders_expressions() {
        let mut o = opts();
        o.exprs = vec!["t^(1/2)".into(), "t".into()];
        let report = run_command("fermat-compare", &Instance::empty(), &o).unwrap();
        assert_eq!(report.exit_code(), 0);
        assert!(report.claims.iter().any(|c| c.detail.contains(">")));
    }

    #[test]
    fn enumerate_counts_nests() {
        let mut o = opts();
        o.n = Some(3);
        o.filter = Some("nest".into());
        o.count_only = true;
        let report = run_command("enumerate", &Instance::empty(), &o).unwrap();
        assert!(report.claims[0].detail.contains("26"));
    }

    #[test]
    fn unknown_command_is_input_error() {
        let err = run_command("bogus", &Instance::empty(), &opts()).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }

    #[test]
    fn reports_are_deterministic() {
        let text = r#"{"space":3,"families":{"L":[[0],[0,1]],"R":[[2],[1,2]]}}"#;
        let a = run_on_text("vdw", text, &opts()).unwrap().to_json();
        let b = run_on_text("vdw", text, &opts()).unwrap().to_json();
        assert_eq!(a, b);
    }
}
