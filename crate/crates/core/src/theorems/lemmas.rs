use std::collections::BTreeSet;

use serde_json::json;

use super::residue::{lemma42_witness, separation_free};
use super::verdict::{Check, Verdict};
use crate::cli::dsl::GroupSpec;
use crate::error::Result;
use crate::filtration::{unit_order_mod_delta, DeltaChain};
use crate::group::{build_group, direct_product, prime_factors, GroupRef};
use crate::units::{
    bass_family, bicyclic_family, nilpotent_based_unit, nilpotent_search, torsion_probe, NilpotentSearch,
    TorsionProbe, UnitRecord,
};
use crate::Limits;

/// Nontrivial Bass and bicyclic units of ℤG, one per distinct element.
pub fn nontrivial_units(chain: &DeltaChain) -> Vec<UnitRecord> {
    let mut seen = BTreeSet::new();
    bass_family(chain)
        .into_iter()
        .chain(bicyclic_family(chain))
        .filter(|u| !u.trivial && seen.insert(u.element.to_string()))
        .collect()
}

/// Every nontrivial constructed unit has no torsion up to `bound` yet a
/// finite order modulo `1 + Δⁿ` for each computed `n`.
pub fn verify_lemma21(chain: &DeltaChain, bound: u64) -> Result<Verdict> {
    let group = chain.group();
    let units = nontrivial_units(chain);
    let mut failures = Vec::new();
    let mut orders = Vec::new();
    for u in &units {
        if let TorsionProbe::Order { m } = torsion_probe(u, bound) {
            failures.push(json!({ "unit": u.to_json(), "torsion_order": m }));
            continue;
        }
        let row: Vec<u64> = (1..=chain.depth()).map(|n| unit_order_mod_delta(&u.element, chain, n)).collect::<Result<_>>()?;
        orders.push(row);
    }
    let holds = failures.is_empty();
    let evidence = json!({
        "units": units.len(),
        "torsion_bound": bound,
        "orders_mod_delta": orders,
        "failures": failures,
    });
    Ok(Verdict::new("lemma2.1", group, holds, if holds { Check::Passed } else { Check::Failed }, evidence))
}

/// For `G` with a nonzero nilpotent in ℤG, `1 + α(h − 1)` lies in every
/// computed `Δⁿ(G × C_q)` with `q` the least prime not dividing `|G|`.
pub fn verify_lemma32(group: &GroupRef, depth: usize, limits: &Limits) -> Result<Verdict> {
    let small = DeltaChain::build(group, 1, limits)?;
    let alpha = match nilpotent_search(&small, 2, 6) {
        NilpotentSearch::Found { alpha, .. } => alpha,
        other => {
            let note = match other {
                NilpotentSearch::NoneCommutative => json!("commutative"),
                NilpotentSearch::NoneFound { searched, exhaustive } => {
                    json!({ "searched": searched, "exhaustive": exhaustive })
                }
                NilpotentSearch::Found { .. } => unreachable!(),
            };
            let evidence = json!({ "nilpotent": null, "search": note });
            return Ok(Verdict::new("lemma3.2", group, false, Check::Undetermined, evidence));
        }
    };
    let primes = prime_factors(group.order() as u64);
    let q = (2u64..).find(|q| crate::group::is_prime(*q) && !primes.contains(q)).unwrap();
    if group.order() as u64 * q > limits.max_order as u64 {
        let evidence = json!({ "nilpotent": alpha.to_json(), "q": q, "skipped": "product exceeds order cap" });
        return Ok(Verdict::new("lemma3.2", group, false, Check::Undetermined, evidence));
    }
    let h = build_group(&GroupSpec::Cyclic(q))?;
    let product = direct_product(group, &h, limits.max_order)?;
    let chain = DeltaChain::build(&product.group, depth, limits)?;
    let u = nilpotent_based_unit(&alpha, 1, &product, &chain)?;
    let holds = !u.trivial && u.depth.at_least(depth);
    let evidence = json!({ "q": q, "unit": u.to_json(), "computed_depth": depth });
    Ok(Verdict::new("lemma3.2", group, holds, if holds { Check::Passed } else { Check::Failed }, evidence))
}

/// Runs the commutator witness for every `g₁` not K-discriminated and every `g`.
pub fn verify_lemma42(chain: &DeltaChain) -> Result<Verdict> {
    let group = chain.group();
    let residue = separation_free(group);
    let mut commutators = BTreeSet::new();
    let mut failures = Vec::new();
    for &g1 in &residue {
        for g in group.elements() {
            let c = group.commutator(g1, g);
            if !commutators.insert(c) {
                continue;
            }
            let v = lemma42_witness(chain, g1, g)?;
            if !v.holds {
                failures.push(v.evidence);
            }
        }
    }
    let labels: Vec<String> = commutators.iter().map(|&c| group.label(c)).collect();
    let holds = failures.is_empty();
    let evidence = json!({
        "undiscriminated": super::verdict::labels(group, &residue),
        "commutators": labels,
        "computed_depth": chain.depth(),
        "failures": failures,
    });
    Ok(Verdict::new("lemma4.2", group, holds, if holds { Check::Passed } else { Check::Failed }, evidence))
}
