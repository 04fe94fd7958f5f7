use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::rank::cyclic_rank;
use super::verdict::{labels, Check, Verdict};
use crate::error::Result;
use crate::filtration::{delta_chain, dimension_subgroup, DeltaChain};
use crate::group::{lower_central_series, prime_factors, GroupRef, Subgroup};
use crate::units::{bass_unit, bicyclic_unit, torsion_probe, TorsionProbe};
use crate::Limits;

/// A splitting `G = Q × E` with `Q ≅ K₈` and `E` central elementary abelian.
#[derive(Debug, Clone)]
pub struct K8Split {
    pub q: Subgroup,
    pub e: Subgroup,
}

/// Structural recognition of `K₈ × E`.
pub fn k8_times_e(group: &GroupRef) -> Option<K8Split> {
    let n = group.order();
    if n < 8 || !n.is_power_of_two() || group.is_abelian() || group.exponent() != 4 {
        return None;
    }
    let lcs = lower_central_series(group);
    if lcs.class() != Some(2) || lcs.term(2).order() != 2 {
        return None;
    }
    let center = Subgroup::center(group);
    let z2: Vec<usize> = center.elements().iter().copied().filter(|&z| group.mul(z, z) == 0).collect();
    if z2.len() * 4 != n {
        return None;
    }
    let fours: Vec<usize> = group.elements().filter(|&g| group.element_order(g) == 4).collect();
    for &a in &fours {
        for &b in &fours {
            let a2 = group.mul(a, a);
            if a2 != group.mul(b, b) || group.mul(a, b) == group.mul(b, a) {
                continue;
            }
            let q = Subgroup::generated(group, [a, b]);
            let involutions = q.elements().iter().filter(|&&x| group.element_order(x) == 2).count();
            if q.order() != 8 || involutions != 1 {
                continue;
            }
            let mut span = Subgroup::generated(group, [a2]);
            let mut basis = Vec::new();
            for &z in &z2 {
                if !span.contains(z) {
                    basis.push(z);
                    span = span.join(&Subgroup::generated(group, [z]));
                }
            }
            let e = Subgroup::generated(group, basis);
            if e.order() * 8 == n && q.intersection(&e).is_trivial() {
                return Some(K8Split { q, e });
            }
        }
    }
    None
}

/// A nontrivial Bass or bicyclic unit whose powers up to `bound` avoid 1.
pub(crate) fn infinite_order_witness(chain: &DeltaChain, bound: u64) -> Option<Value> {
    let group = chain.group();
    for g in group.elements() {
        let n = group.element_order(g) as u64;
        for k in 2..n.saturating_sub(1) {
            if num_integer::gcd(k, n) != 1 {
                continue;
            }
            let m = (1..).find(|&m| mod_pow(k, m, n) == 1).unwrap();
            let u = bass_unit(chain, g, k, m).expect("kᵐ ≡ 1");
            if let TorsionProbe::NoTorsion { .. } = torsion_probe(&u, bound) {
                return Some(json!({ "unit": u.to_json(), "element": group.label(g), "no_torsion_up_to": bound }));
            }
        }
    }
    for g in group.elements() {
        for h in group.elements() {
            let u = bicyclic_unit(chain, g, h);
            if u.trivial {
                continue;
            }
            if let TorsionProbe::NoTorsion { .. } = torsion_probe(&u, bound) {
                return Some(json!({
                    "unit": u.to_json(),
                    "g": group.label(g),
                    "h": group.label(h),
                    "no_torsion_up_to": bound,
                }));
            }
        }
    }
    None
}

fn mod_pow(k: u64, m: u32, n: u64) -> u64 {
    (0..m).fold(1 % n, |acc, _| acc * k % n)
}

/// `𝒱ₙ(ℤG) = {1}` for some `n` iff `G` is an abelian cut group or `K₈ × E`.
pub fn classify_terminating(group: &GroupRef, limits: &Limits) -> Result<Verdict> {
    let abelian_cut = group.is_abelian() && {
        let e = group.exponent();
        4 % e == 0 || 6 % e == 0
    };
    let split = if group.is_abelian() { None } else { k8_times_e(group) };
    let holds = abelian_cut || split.is_some();
    let mut evidence = json!({
        "abelian": group.is_abelian(),
        "exponent": group.exponent(),
        "abelian_cut": abelian_cut,
    });
    let check = if let Some(split) = &split {
        let chain = delta_chain(group, 3)?;
        let d3 = dimension_subgroup(&chain, 3)?;
        evidence["k8"] = json!(labels(group, split.q.elements()));
        evidence["e"] = json!(labels(group, split.e.elements()));
        evidence["d3_trivial"] = json!(d3.is_trivial());
        if d3.is_trivial() {
            Check::Passed
        } else {
            Check::Failed
        }
    } else if abelian_cut {
        let chain = delta_chain(group, 2)?;
        let d2 = dimension_subgroup(&chain, 2)?;
        evidence["d2_trivial"] = json!(d2.is_trivial());
        if d2.is_trivial() {
            Check::Passed
        } else {
            Check::Failed
        }
    } else {
        let chain = delta_chain(group, 1)?;
        match infinite_order_witness(&chain, limits.torsion_bound) {
            Some(w) => {
                evidence["infinite_order_unit"] = w;
                Check::Passed
            }
            None => Check::Undetermined,
        }
    };
    Ok(Verdict::new("thm2.2", group, holds, check, evidence))
}

/// A cyclic section `C_{ab}` (coprime prime powers `a, b`) whose rank
/// exceeds that of `C_a × C_b`, forcing a nontrivial residue.
fn rank_gap_witness(group: &GroupRef) -> Option<Value> {
    let mut seen = BTreeMap::new();
    for z in group.elements() {
        let n = group.element_order(z) as u64;
        let primes = prime_factors(n);
        for (i, &p) in primes.iter().enumerate() {
            for &q in &primes[i + 1..] {
                for a in prime_powers(p, n) {
                    for b in prime_powers(q, n) {
                        let m = a * b;
                        if seen.insert(m, ()).is_some() {
                            continue;
                        }
                        let (rm, ra, rb) = (cyclic_rank(m), cyclic_rank(a), cyclic_rank(b));
                        if rm.rho > ra.rho + rb.rho {
                            let w = group.pow(z, (n / m) as i64);
                            return Some(json!({
                                "element": group.label(w),
                                "order": m,
                                "split": [a, b],
                                "ranks": [rm.rho, ra.rho, rb.rho],
                            }));
                        }
                    }
                }
            }
        }
    }
    None
}

fn prime_powers(p: u64, n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut a = p;
    while n % a == 0 {
        out.push(a);
        a *= p;
    }
    out
}

/// A nontrivial bicyclic unit on elements of coprime orders, with its depth.
fn coprime_bicyclic_witness(chain: &DeltaChain) -> Option<Value> {
    let group = chain.group();
    for g in group.elements() {
        for h in group.elements() {
            let (a, b) = (group.element_order(g), group.element_order(h));
            if a == 1 || b == 1 || num_integer::gcd(a, b) != 1 {
                continue;
            }
            let u = bicyclic_unit(chain, g, h);
            if !u.trivial {
                return Some(json!({ "g": group.label(g), "h": group.label(h), "depth": u.depth }));
            }
        }
    }
    None
}

/// `𝒱_ω(ℤG) = {1}` iff `G` is abelian of exponent 6 or a p-group.
pub fn classify_trivial_residue(group: &GroupRef, limits: &Limits) -> Result<Verdict> {
    let abelian6 = group.is_abelian() && group.exponent() == 6;
    let p_group = group.order() == 1 || group.is_p_group().is_some();
    let holds = abelian6 || p_group;
    let mut evidence = json!({ "abelian_exponent_6": abelian6, "p_group": p_group });
    let check = if holds {
        let depth = if abelian6 { 2 } else { limits.max_depth };
        let chain = DeltaChain::build(group, depth, limits)?;
        let orders: Vec<usize> =
            (1..=chain.depth()).map(|n| dimension_subgroup(&chain, n).map(|d| d.order())).collect::<Result<_>>()?;
        let reached = orders.iter().position(|&o| o == 1).map(|i| i + 1);
        evidence["d_orders"] = json!(orders);
        evidence["d_trivial_at"] = json!(reached);
        match (reached, chain.stabilized_at()) {
            (Some(_), _) => Check::Passed,
            (None, Some(_)) => Check::Failed,
            (None, None) => Check::Undetermined,
        }
    } else if let Some(w) = rank_gap_witness(group) {
        evidence["rank_gap"] = w;
        Check::Passed
    } else {
        let chain = DeltaChain::build(group, limits.max_depth.min(6), limits)?;
        match coprime_bicyclic_witness(&chain) {
            Some(w) => {
                evidence["coprime_bicyclic"] = w;
                Check::Passed
            }
            None => Check::Undetermined,
        }
    };
    Ok(Verdict::new("thm3.3", group, holds, check, evidence))
}

/// Elements whose order has two distinct prime divisors other than `{2, 3}`.
pub fn order_pq_violations(group: &GroupRef) -> Vec<usize> {
    group
        .elements()
        .filter(|&g| {
            let primes = prime_factors(group.element_order(g) as u64);
            primes.len() >= 2 && primes != [2, 3]
        })
        .collect()
}

pub fn order_pq_scan(group: &GroupRef) -> Verdict {
    let violations = order_pq_violations(group);
    let holds = violations.is_empty();
    let trivial_residue = (group.is_abelian() && group.exponent() == 6) || group.order() == 1 || group.is_p_group().is_some();
    let check = if trivial_residue && !holds { Check::Failed } else { Check::Passed };
    let orders: Vec<usize> = violations.iter().map(|&g| group.element_order(g)).collect();
    let evidence = json!({
        "violations": labels(group, &violations),
        "orders": orders,
        "trivial_residue": trivial_residue,
    });
    Verdict::new("thm3.4", group, holds, check, evidence)
}
