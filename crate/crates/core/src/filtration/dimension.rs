use serde::Serialize;

use super::chain::DeltaChain;
use crate::error::{Error, Result};
use crate::group::{lower_central_series, GroupRef, Subgroup};
use crate::zring::rational_span;
use crate::{Int, Rational, Subspace, ZElement};

/// `Dₙ(G) = G ∩ (1 + Δⁿ)`.
pub fn dimension_subgroup(chain: &DeltaChain, n: usize) -> Result<Subgroup> {
    if n == 0 || n > chain.depth() {
        return Err(Error::DepthTooLarge { requested: n, cap: chain.depth() });
    }
    let group = chain.group();
    let lattice = chain.lattice(n);
    let members: Vec<usize> = group
        .elements()
        .filter(|&g| lattice.contains(&ZElement::g_minus_one(group, g).to_dense()))
        .collect();
    let sub = Subgroup::from_elements(group, members).expect("Dₙ(G) is closed");
    assert!(sub.is_normal(), "Dₙ(G) is normal");
    Ok(sub)
}

fn rational_delta(group: &GroupRef) -> Subspace {
    let n = group.order();
    rational_span(
        n,
        (1..n).map(|g| {
            let mut v = vec![Rational::from_integer(Int::from(0)); n];
            v[0] = Rational::from_integer(Int::from(-1));
            v[g] = Rational::from_integer(Int::from(1));
            v
        }),
    )
}

fn rational_next(group: &GroupRef, s: &Subspace) -> Subspace {
    let n = group.order();
    let mut out = Subspace::zero(n);
    for g in 1..n {
        for b in s.basis() {
            let mut v: Vec<Rational> = b.iter().map(|x| -x).collect();
            for (j, x) in b.iter().enumerate() {
                v[group.mul(g, j)] += x;
            }
            out.insert(v);
            if out.dim() == s.dim() {
                return out;
            }
        }
    }
    out
}

/// `Δ_ℚ¹ ⊇ … ⊇ Δ_ℚⁿ`; stops early once two consecutive terms agree.
pub fn rational_delta_powers(group: &GroupRef, n: usize) -> Vec<Subspace> {
    let mut powers = vec![rational_delta(group)];
    while powers.len() < n {
        let last = powers.last().unwrap();
        let next = rational_next(group, last);
        let stable = next.dim() == last.dim();
        powers.push(next);
        if stable {
            break;
        }
    }
    while powers.len() < n {
        powers.push(powers.last().unwrap().clone());
    }
    powers
}

/// `D_{n,ℚ}(G) = G ∩ (1 + Δ_ℚⁿ)`.
pub fn rational_dimension_subgroup(group: &GroupRef, n: usize) -> Result<Subgroup> {
    if n == 0 {
        return Err(Error::Precondition("n must be at least 1".into()));
    }
    let space = rational_delta_powers(group, n).pop().unwrap();
    Ok(rational_members(group, &space))
}

fn rational_members(group: &GroupRef, space: &Subspace) -> Subgroup {
    let members: Vec<usize> = group
        .elements()
        .filter(|&g| {
            let v = ZElement::g_minus_one(group, g).map_coeffs(|c| Rational::from_integer(c.clone()));
            space.contains(&v.to_dense())
        })
        .collect();
    Subgroup::from_elements(group, members).expect("D_{n,ℚ}(G) is closed")
}

/// What the computed range says about `D_ω(G)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum OmegaStatus {
    /// `Dₙ = {1}` at this `n`, so `D_ω = {1}`.
    Trivial { at: usize },
    /// The Δ-chain stabilized, so `D_ω = D_{n*}`.
    Stabilized { at: usize, order: usize },
    /// Neither happened within the computed depth.
    Undetermined { depth: usize },
}

#[derive(Debug, Clone)]
pub struct DimensionSeriesReport {
    pub group: GroupRef,
    pub d_series: Vec<Subgroup>,
    pub gamma_series: Vec<Subgroup>,
    pub rational_d_series: Option<Vec<Subgroup>>,
    pub omega: OmegaStatus,
}

pub fn dimension_series(chain: &DeltaChain, rational: bool) -> DimensionSeriesReport {
    let group = chain.group();
    let depth = chain.depth();
    let d_series: Vec<Subgroup> = (1..=depth).map(|n| dimension_subgroup(chain, n).unwrap()).collect();
    let lcs = lower_central_series(group);
    let gamma_series = (1..=depth).map(|n| lcs.term(n).clone()).collect();
    let rational_d_series = rational.then(|| {
        rational_delta_powers(group, depth).iter().map(|s| rational_members(group, s)).collect()
    });
    let omega = if let Some(i) = d_series.iter().position(Subgroup::is_trivial) {
        OmegaStatus::Trivial { at: i + 1 }
    } else if let Some(s) = chain.stabilized_at() {
        OmegaStatus::Stabilized { at: s, order: d_series[s - 1].order() }
    } else {
        OmegaStatus::Undetermined { depth }
    };
    DimensionSeriesReport { group: group.clone(), d_series, gamma_series, rational_d_series, omega }
}

#[derive(Debug, Clone, Serialize)]
pub struct DimensionSeriesJson {
    pub group: String,
    pub hash: String,
    pub depth: usize,
    pub d_series: Vec<Vec<usize>>,
    pub gamma_series: Vec<Vec<usize>>,
    pub rational_d_series: Option<Vec<Vec<usize>>>,
    pub omega: OmegaStatus,
}

impl DimensionSeriesReport {
    pub fn to_json(&self) -> DimensionSeriesJson {
        let lists = |v: &[Subgroup]| v.iter().map(|s| s.elements().to_vec()).collect();
        DimensionSeriesJson {
            group: self.group.name().to_string(),
            hash: self.group.canonical_hash().to_string(),
            depth: self.d_series.len(),
            d_series: lists(&self.d_series),
            gamma_series: lists(&self.gamma_series),
            rational_d_series: self.rational_d_series.as_deref().map(lists),
            omega: self.omega.clone(),
        }
    }
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
    fn integral_examples() {
        let s3 = g("sym(3)");
        let chain = delta_chain(&s3, 3).unwrap();
        assert!(dimension_subgroup(&chain, 1).unwrap().is_whole());
        assert_eq!(dimension_subgroup(&chain, 2).unwrap().order(), 3);
        assert!(dimension_subgroup(&chain, 4).is_err());

        let q8 = g("quaternion(8)");
        let chain = delta_chain(&q8, 3).unwrap();
        assert!(dimension_subgroup(&chain, 3).unwrap().is_trivial());
        assert_eq!(dimension_subgroup(&chain, 2).unwrap().order(), 2);
    }

    #[test]
    fn rational_examples() {
        assert!(rational_dimension_subgroup(&g("sym(3)"), 5).unwrap().is_whole());
        let c2 = g("cyclic(2)");
        assert!(rational_dimension_subgroup(&c2, 2).unwrap().is_whole());
        let powers = rational_delta_powers(&c2, 2);
        assert_eq!((powers[0].dim(), powers[1].dim()), (1, 1));
        assert!(rational_dimension_subgroup(&g("cyclic(1)"), 4).unwrap().is_trivial());
    }

    #[test]
    fn omega_status() {
        let q8 = g("quaternion(8)");
        let r = dimension_series(&delta_chain(&q8, 4).unwrap(), true);
        assert_eq!(r.omega, OmegaStatus::Trivial { at: 3 });
        assert!(r.rational_d_series.unwrap().iter().all(Subgroup::is_whole));
        let s3 = g("sym(3)");
        let r = dimension_series(&delta_chain(&s3, 4).unwrap(), false);
        assert_eq!(r.omega, OmegaStatus::Undetermined { depth: 4 });
        let json = serde_json::to_string(&r.to_json()).unwrap();
        assert!(json.contains("\"undetermined\""));
    }
}
