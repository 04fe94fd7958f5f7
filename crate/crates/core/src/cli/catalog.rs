use std::path::Path;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::cache::{Cache, TOOL_VERSION};
use super::dsl::GroupSpec;
use crate::error::{Error, Result};
use crate::filtration::{dimension_series, DeltaChain};
use crate::group::{build_group_with_cap, structural_report, GroupRef};
use crate::theorems::{classify_terminating, classify_trivial_residue, order_pq_scan, Verdict};
use crate::units::{bass_family, bicyclic_family, nilpotent_search, NilpotentSearch};
use crate::Limits;

fn base_specs(max_order: u64) -> Vec<GroupSpec> {
    let mut out: Vec<GroupSpec> = (1..=max_order).map(GroupSpec::Cyclic).collect();
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31] {
        let mut k = 2;
        while p.pow(k as u32) <= max_order {
            out.push(GroupSpec::ElemAb { p, k });
            k += 1;
        }
    }
    out.extend((3..).take_while(|n| 2 * n <= max_order).map(GroupSpec::Dihedral));
    out.extend((3..).map(|k| 1u64 << k).take_while(|&n| n <= max_order).map(GroupSpec::Quaternion));
    out.extend([GroupSpec::Sym(3), GroupSpec::Alt(4), GroupSpec::Sym(4)]);
    out.retain(|s| s.nominal_order().is_some_and(|n| n <= max_order));
    out
}

/// The built-in family up to `max_order`: cyclic, elementary abelian,
/// dihedral, generalized quaternion, S₃, A₄, S₄, and direct products of two
/// nontrivial members. Sorted by order, then by generation order.
pub fn catalog_specs(max_order: u64) -> Vec<GroupSpec> {
    let bases: Vec<GroupSpec> = base_specs(max_order);
    let nontrivial: Vec<&GroupSpec> = bases.iter().filter(|s| s.nominal_order() != Some(1)).collect();
    let mut all = bases.clone();
    for (i, a) in nontrivial.iter().enumerate() {
        for b in &nontrivial[i..] {
            if a.nominal_order().unwrap() * b.nominal_order().unwrap() <= max_order {
                all.push(GroupSpec::product((*a).clone(), (*b).clone()));
            }
        }
    }
    let mut keyed: Vec<(u64, usize, GroupSpec)> =
        all.into_iter().enumerate().map(|(i, s)| (s.nominal_order().unwrap(), i, s)).collect();
    keyed.sort_by_key(|(n, i, _)| (*n, *i));
    keyed.into_iter().map(|(_, _, s)| s).collect()
}

fn verdict_brief(v: &Verdict) -> Value {
    json!({ "holds": v.holds, "check": v.check })
}

/// Structure, Δ-chain, dimension series, unit scan and classifier outcomes.
pub fn catalog_entry(spec: &GroupSpec, group: &GroupRef, depth: usize, limits: &Limits) -> Result<Value> {
    let chain = DeltaChain::build(group, depth, limits)?;
    let series = dimension_series(&chain, false);
    let bass = bass_family(&chain).iter().filter(|u| !u.trivial).count();
    let bicyclic = bicyclic_family(&chain).iter().filter(|u| !u.trivial).count();
    let nilpotent = match nilpotent_search(&chain, 2, 6) {
        NilpotentSearch::Found { canonical: Some(_), .. } => json!("canonical"),
        NilpotentSearch::Found { canonical: None, .. } => json!("brute_force"),
        NilpotentSearch::NoneCommutative => json!("none_commutative"),
        NilpotentSearch::NoneFound { searched, exhaustive } => {
            json!({ "none_found": { "searched": searched, "exhaustive": exhaustive } })
        }
    };
    let quotients: Vec<Vec<String>> = (1..chain.depth())
        .map(|n| chain.quotient_invariants(n).iter().map(|x| x.to_string()).collect())
        .collect();
    Ok(json!({
        "spec": spec.to_string(),
        "name": group.name(),
        "hash": group.canonical_hash(),
        "order": group.order(),
        "structure": structural_report(group),
        "delta": { "depth": chain.depth(), "stabilized_at": chain.stabilized_at(), "quotient_invariants": quotients },
        "d_orders": series.d_series.iter().map(|s| s.order()).collect::<Vec<_>>(),
        "gamma_orders": series.gamma_series.iter().map(|s| s.order()).collect::<Vec<_>>(),
        "omega": series.omega,
        "units": { "bass_nontrivial": bass, "bicyclic_nontrivial": bicyclic, "nilpotent": nilpotent },
        "verdicts": {
            "thm2.2": verdict_brief(&classify_terminating(group, limits)?),
            "thm3.3": verdict_brief(&classify_trivial_residue(group, limits)?),
            "thm3.4": verdict_brief(&order_pq_scan(group)),
        },
    }))
}

/// Computes every catalog entry through the cache, in parallel, and returns
/// the summary document. Entry order is the catalog order.
pub fn catalog_run(max_order: u64, depth: usize, workers: usize, cache: &Cache, limits: &Limits) -> Result<Value> {
    if max_order as usize > limits.max_order {
        return Err(Error::GroupTooLarge { cap: limits.max_order });
    }
    if depth == 0 || depth > limits.max_depth {
        return Err(Error::DepthTooLarge { requested: depth, cap: limits.max_depth });
    }
    let specs = catalog_specs(max_order);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(e.to_string()))?;
    let entries: Vec<Value> = pool.install(|| {
        specs
            .par_iter()
            .map(|spec| {
                let group = build_group_with_cap(spec, limits.max_order)?;
                let params = json!({ "depth": depth, "limits": limits, "spec": spec.to_string() });
                cache.get_or_compute(group.canonical_hash(), "catalog_entry", params, || {
                    catalog_entry(spec, &group, depth, limits)
                })
            })
            .collect::<Result<_>>()
    })?;
    Ok(json!({
        "version": TOOL_VERSION,
        "max_order": max_order,
        "depth": depth,
        "count": entries.len(),
        "groups": entries,
    }))
}

/// Writes `summary` as pretty JSON via a temporary file and rename.
pub fn write_summary(path: &Path, summary: &Value) -> Result<()> {
    let tmp = path.with_extension("json.tmp");
    let text = serde_json::to_string_pretty(summary)? + "\n";
    std::fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}
