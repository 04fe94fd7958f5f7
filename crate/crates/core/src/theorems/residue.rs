use serde_json::json;

use super::verdict::{labels, Check, Verdict};
use crate::error::{Error, Result};
use crate::filtration::{delta_depth, DeltaChain, DeltaDepth};
use crate::group::{lower_central_series, power_series_subgroup, prime_factors, valuation, GroupRef, Subgroup};
use crate::ZElement;

/// Default bounds `(v_p(exp) + 1, γ-stabilization index)`.
fn default_bounds(group: &GroupRef, p: u64) -> (u32, usize) {
    let i_max = valuation(group.exponent() as u64, p) + 1;
    (i_max, lower_central_series(group).stable_index())
}

/// Elements of infinite p-height.
pub fn p_height_subgroup(group: &GroupRef, p: u64) -> Subgroup {
    let (i, j) = default_bounds(group, p);
    p_height_with_bounds(group, p, i, j)
}

/// `{g : x^{pⁱ} ∈ g·γ_j for some x, all i ≤ i_max, j ≤ j_max}`.
pub fn p_height_with_bounds(group: &GroupRef, p: u64, i_max: u32, j_max: usize) -> Subgroup {
    let lcs = lower_central_series(group);
    let mut ok = vec![true; group.order()];
    for i in 0..=i_max {
        let mut e = 1i64;
        for _ in 0..i {
            e = e * p as i64 % group.exponent() as i64;
        }
        let mut powers = vec![false; group.order()];
        for x in group.elements() {
            powers[group.pow(x, e)] = true;
        }
        for j in 1..=j_max {
            let gamma = lcs.term(j);
            for g in group.elements() {
                // g ∈ {x^{pⁱ}}·γ_j iff some g·y is a p^i-th power
                if ok[g] && !gamma.elements().iter().any(|&y| powers[group.mul(g, y)]) {
                    ok[g] = false;
                }
            }
        }
    }
    let members = group.elements().filter(|&g| ok[g]);
    let sub = Subgroup::from_elements(group, members).expect("infinite p-height elements form a subgroup");
    assert!(sub.is_normal(), "infinite p-height elements form a normal subgroup");
    sub
}

/// `∩_{l,k} γ_l(G)·G^{p^k}`.
pub fn kp_residue(group: &GroupRef, p: u64) -> Subgroup {
    let (k, l) = default_bounds(group, p);
    kp_residue_with_bounds(group, p, l, k)
}

pub fn kp_residue_with_bounds(group: &GroupRef, p: u64, l_max: usize, k_max: u32) -> Subgroup {
    let mut acc = Subgroup::whole(group);
    for l in 1..=l_max {
        for k in 0..=k_max {
            acc = acc.intersection(&power_series_subgroup(group, p, k, l));
        }
    }
    assert!(acc.is_normal());
    acc
}

/// First `(p, l, k)` with `g ∉ γ_l(G)·G^{p^k}`.
fn separation(group: &GroupRef, g: usize) -> Option<(u64, usize, u32, Subgroup)> {
    for p in prime_factors(group.order() as u64) {
        let (k_max, l_max) = default_bounds(group, p);
        for l in 1..=l_max {
            for k in 0..=k_max {
                let n = power_series_subgroup(group, p, k, l);
                if !n.contains(g) {
                    return Some((p, l, k, n));
                }
            }
        }
    }
    None
}

/// Elements no quotient `G/γ_l(G)G^{p^k}` separates from 1.
pub(crate) fn separation_free(group: &GroupRef) -> Vec<usize> {
    group.elements().filter(|&g| separation(group, g).is_none()).collect()
}

/// Whether some `G/γ_l(G)G^{p^k}` separates `g` from 1.
pub fn k_discriminated(group: &GroupRef, g: usize) -> Verdict {
    let residues: serde_json::Map<String, serde_json::Value> = prime_factors(group.order() as u64)
        .into_iter()
        .map(|p| (p.to_string(), json!(labels(group, kp_residue(group, p).elements()))))
        .collect();
    let mut evidence = json!({ "element": group.label(g), "residues": residues });
    let (holds, check) = match separation(group, g) {
        Some((p, l, k, n)) => {
            let quotient = group.order() / n.order();
            evidence["separation"] = json!({ "p": p, "l": l, "k": k, "quotient_order": quotient });
            let p_quotient = quotient == 1 || prime_factors(quotient as u64) == [p];
            let ok = n.is_normal() && !n.contains(g) && p_quotient;
            (true, if ok { Check::Passed } else { Check::Failed })
        }
        None => (false, Check::Passed),
    };
    Verdict::new("k_discrimination", group, holds, check, evidence)
}

/// `[g₁, g] − 1 ∈ Δⁿ` for every computed `n`, for `g₁` not K-discriminated.
pub fn lemma42_witness(chain: &DeltaChain, g1: usize, g: usize) -> Result<Verdict> {
    let group = chain.group();
    if let Some((p, l, k, n)) = separation(group, g1) {
        return Err(Error::Precondition(format!(
            "{} is separated from 1 by G/γ_{l}(G)G^({p}^{k}) of order {}",
            group.label(g1),
            group.order() / n.order()
        )));
    }
    let c = group.commutator(g1, g);
    let depth = delta_depth(&ZElement::g_minus_one(group, c), chain);
    let holds = match depth {
        DeltaDepth::Omega { .. } => true,
        d => d.at_least(chain.depth()),
    };
    let evidence = json!({
        "g1": group.label(g1),
        "g": group.label(g),
        "commutator": group.label(c),
        "depth": depth,
        "computed_depth": chain.depth(),
    });
    Ok(Verdict::new("lemma4.2", group, holds, if holds { Check::Passed } else { Check::Failed }, evidence))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::dsl::parse_spec;
    use crate::filtration::delta_chain;
    use crate::group::build_group;

    fn g(s: &str) -> GroupRef {
        build_group(&parse_spec(s).unwrap()).unwrap()
    }

    #[test]
    fn p_height_examples() {
        assert!(p_height_subgroup(&g("cyclic(4)"), 2).is_trivial());
        let s3 = g("sym(3)");
        assert_eq!(p_height_subgroup(&s3, 2).order(), 3);
        assert!(p_height_subgroup(&g("cyclic(1)"), 5).is_trivial());
    }

    #[test]
    fn residue_examples() {
        let s3 = g("sym(3)");
        assert_eq!(kp_residue(&s3, 2).order(), 3);
        assert!(kp_residue(&s3, 3).is_whole());
        assert!(kp_residue(&g("cyclic(2)"), 2).is_trivial());
        let t = s3.find_element("(1 2)").unwrap();
        let c = s3.find_element("(1 2 3)").unwrap();
        assert!(k_discriminated(&s3, t).holds);
        assert!(!k_discriminated(&s3, c).holds);
        assert!(!k_discriminated(&s3, 0).holds);
    }

    #[test]
    fn doubled_bounds_agree() {
        for s in ["sym(3)", "sym(4)", "dihedral(6)", "quaternion(8)", "product(cyclic(4), sym(3))", "cyclic(12)"] {
            let grp = g(s);
            for p in prime_factors(grp.order() as u64) {
                let (i, j) = default_bounds(&grp, p);
                assert_eq!(p_height_subgroup(&grp, p), p_height_with_bounds(&grp, p, 2 * i, 2 * j), "{s}");
                assert_eq!(kp_residue(&grp, p), kp_residue_with_bounds(&grp, p, 2 * j, 2 * i), "{s}");
            }
        }
    }

    #[test]
    fn lemma42_examples() {
        let s3 = g("sym(3)");
        let chain = delta_chain(&s3, 10).unwrap();
        let c = s3.find_element("(1 2 3)").unwrap();
        let t = s3.find_element("(1 2)").unwrap();
        let v = lemma42_witness(&chain, c, t).unwrap();
        assert!(v.holds);
        assert_eq!(v.evidence["commutator"], "(1 2 3)");
        assert!(lemma42_witness(&chain, 0, t).unwrap().holds);
        assert!(lemma42_witness(&chain, t, c).is_err());

        let q8 = g("quaternion(8)");
        let chain = delta_chain(&q8, 3).unwrap();
        assert!(kp_residue(&q8, 2).is_trivial());
        assert!(q8.elements().skip(1).all(|x| lemma42_witness(&chain, x, 1).is_err()));
    }
}
