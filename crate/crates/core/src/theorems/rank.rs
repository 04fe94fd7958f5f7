use std::collections::HashSet;

use serde::Serialize;
use serde_json::json;

use super::verdict::{Check, Verdict};
use crate::cli::dsl::GroupSpec;
use crate::error::{Error, Result};
use crate::group::{build_group, is_prime, FiniteGroup, GroupRef, Subgroup};

/// Torsion-free rank of the normalized units of ℤA for abelian `A`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct RankReport {
    pub order: usize,
    /// Elements of order 2.
    pub n2: usize,
    /// Cyclic subgroups.
    pub c_a: usize,
    pub rho: usize,
}

/// `ρ = (|A| + n₂ − 2c_A + 1)/2`.
pub fn abelian_rank(group: &GroupRef) -> Result<RankReport> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let n2 = group.elements().filter(|&g| group.element_order(g) == 2).count();
    let cyclic: HashSet<Vec<usize>> =
        group.elements().map(|g| Subgroup::generated(group, [g]).elements().to_vec()).collect();
    let c_a = cyclic.len();
    let twice = (group.order() + n2 + 1) as i64 - 2 * c_a as i64;
    assert!(twice >= 0 && twice % 2 == 0, "rank formula must be a non-negative integer");
    Ok(RankReport { order: group.order(), n2, c_a, rho: (twice / 2) as usize })
}

pub fn cyclic_rank(n: u64) -> RankReport {
    abelian_rank(&build_group(&GroupSpec::Cyclic(n)).expect("cyclic group")).unwrap()
}

/// `ρ(𝒱(ℤC_p))`: 0 for `p = 2`, else `(p − 3)/2`.
pub fn prime_rank_formula(p: u64) -> u64 {
    if p == 2 {
        0
    } else {
        (p - 3) / 2
    }
}

/// `ρ(𝒱(ℤC_{pq}))`: `q − 3` for `p = 2`, else `(pq − 7)/2`.
pub fn pq_rank_formula(p: u64, q: u64) -> u64 {
    if p == 2 {
        q - 3
    } else {
        (p * q - 7) / 2
    }
}

/// Whether `ρ(C_{pq}) > ρ(C_p) + ρ(C_q)`; expected for every pair but `(2, 3)`.
pub fn rank_gap_table(p: u64, q: u64) -> Result<Verdict> {
    if !(is_prime(p) && is_prime(q) && p < q) {
        return Err(Error::Precondition(format!("need primes p < q, got ({p}, {q})")));
    }
    let (rp, rq) = (cyclic_rank(p), cyclic_rank(q));
    let rpq = cyclic_rank(p * q);
    let formulas = rp.rho as u64 == prime_rank_formula(p)
        && rq.rho as u64 == prime_rank_formula(q)
        && rpq.rho as u64 == pq_rank_formula(p, q);
    let holds = rpq.rho > rp.rho + rq.rho;
    let check = if formulas && holds == ((p, q) != (2, 3)) { Check::Passed } else { Check::Failed };
    let group = build_group(&GroupSpec::Cyclic(p * q))?;
    let evidence = json!({
        "p": p,
        "q": q,
        "rank_p": rp,
        "rank_q": rq,
        "rank_pq": rpq,
        "gap": rpq.rho as i64 - (rp.rho + rq.rho) as i64,
        "closed_forms_agree": formulas,
    });
    Ok(Verdict::new("rank", &group, holds, check, evidence))
}

/// Exponent divides 4 or 6.
pub fn is_abelian_cut(group: &FiniteGroup) -> Result<bool> {
    if !group.is_abelian() {
        return Err(Error::NotAbelian);
    }
    let e = group.exponent();
    Ok(4 % e == 0 || 6 % e == 0)
}

/// Rank report for an abelian group, checked against the cut criterion.
pub fn rank_verdict(group: &GroupRef) -> Result<Verdict> {
    let report = abelian_rank(group)?;
    let cut = is_abelian_cut(group)?;
    let check = if cut == (report.rho == 0) { Check::Passed } else { Check::Failed };
    Ok(Verdict::new("rank", group, report.rho == 0, check, json!({ "rank": report, "cut": cut })))
}
