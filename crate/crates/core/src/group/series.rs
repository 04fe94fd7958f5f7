use std::collections::BTreeMap;

use serde::Serialize;

use super::{prime_factors, GroupRef, QuotientGroup, Subgroup};

/// `γ₁ ⊇ γ₂ ⊇ … ⊇ γ_s` where `γ_s = γ_{s+1}` is the first repetition.
#[derive(Debug, Clone)]
pub struct LowerCentralSeries {
    terms: Vec<Subgroup>,
}

impl LowerCentralSeries {
    pub fn terms(&self) -> &[Subgroup] {
        &self.terms
    }

    /// 1-based index `s` of the stable term.
    pub fn stable_index(&self) -> usize {
        self.terms.len()
    }

    /// `γ_n` for any `n ≥ 1`.
    pub fn term(&self, n: usize) -> &Subgroup {
        assert!(n >= 1, "the lower central series starts at γ₁");
        &self.terms[n.min(self.terms.len()) - 1]
    }

    pub fn stable_term(&self) -> &Subgroup {
        self.terms.last().unwrap()
    }

    pub fn is_nilpotent(&self) -> bool {
        self.stable_term().is_trivial()
    }

    /// Nilpotency class, when nilpotent.
    pub fn class(&self) -> Option<usize> {
        self.is_nilpotent().then(|| self.terms.len() - 1)
    }
}

pub fn lower_central_series(group: &GroupRef) -> LowerCentralSeries {
    let whole = Subgroup::whole(group);
    let mut terms = vec![whole.clone()];
    loop {
        let next = terms.last().unwrap().commutator_with(&whole);
        if next == *terms.last().unwrap() {
            break;
        }
        terms.push(next);
    }
    LowerCentralSeries { terms }
}

/// `γ_l(G) · G^{p^k}` with `G^{p^k}` generated by all `p^k`-th powers.
pub fn power_series_subgroup(group: &GroupRef, p: u64, k: u32, l: usize) -> Subgroup {
    power_series_from(&lower_central_series(group), group, p, k, l)
}

pub(crate) fn power_series_from(
    lcs: &LowerCentralSeries,
    group: &GroupRef,
    p: u64,
    k: u32,
    l: usize,
) -> Subgroup {
    let exp = group.exponent() as u64;
    // x^(p^k) only depends on p^k modulo the exponent
    let mut e = 1u64;
    for _ in 0..k {
        e = (e * p) % exp.max(1);
    }
    let powers = Subgroup::power_subgroup(group, e);
    lcs.term(l).join(&powers)
}

#[derive(Debug, Clone, Serialize)]
pub struct StructureReport {
    pub name: String,
    pub hash: String,
    pub order: usize,
    pub exponent: usize,
    pub is_abelian: bool,
    pub is_nilpotent: bool,
    pub nilpotency_class: Option<usize>,
    pub center_order: usize,
    pub element_orders: BTreeMap<usize, usize>,
    pub gamma_orders: Vec<usize>,
    /// Invariant factors of `G/γ₂(G)`, each dividing the next; 1s omitted.
    pub abelianization: Vec<u64>,
}

pub fn structural_report(group: &GroupRef) -> StructureReport {
    let lcs = lower_central_series(group);
    let mut element_orders = BTreeMap::new();
    for g in group.elements() {
        *element_orders.entry(group.element_order(g)).or_insert(0) += 1;
    }
    let ab = QuotientGroup::new(lcs.term(2)).expect("γ₂ is normal");
    StructureReport {
        name: group.name().to_string(),
        hash: group.canonical_hash().to_string(),
        order: group.order(),
        exponent: group.exponent(),
        is_abelian: group.is_abelian(),
        is_nilpotent: lcs.is_nilpotent(),
        nilpotency_class: lcs.class(),
        center_order: Subgroup::center(group).order(),
        element_orders,
        gamma_orders: lcs.terms().iter().map(Subgroup::order).collect(),
        abelianization: abelian_invariants(&ab.quotient),
    }
}

/// Invariant factors of an abelian group, read off from the sizes of its
/// `p^i`-torsion layers. 1s are omitted.
pub fn abelian_invariants(group: &GroupRef) -> Vec<u64> {
    debug_assert!(group.is_abelian());
    let mut per_prime: Vec<Vec<u64>> = Vec::new();
    for p in prime_factors(group.order() as u64) {
        // s[i] = log_p #{x : x^(p^i) = 1}
        let mut s = vec![0u32];
        let mut pi = 1u64;
        loop {
            pi *= p;
            let count = group.elements().filter(|&x| pi % group.element_order(x) as u64 == 0).count() as u64;
            let mut log = 0;
            let mut c = count;
            while c > 1 {
                c /= p;
                log += 1;
            }
            if log == *s.last().unwrap() {
                break;
            }
            s.push(log);
        }
        let mut divisors = Vec::new();
        for i in 1..s.len() {
            let at_least_i = s[i] - s[i - 1];
            let at_least_next = if i + 1 < s.len() { s[i + 1] - s[i] } else { 0 };
            for _ in 0..(at_least_i - at_least_next) {
                divisors.push(p.pow(i as u32));
            }
        }
        divisors.sort_unstable_by(|a, b| b.cmp(a));
        per_prime.push(divisors);
    }
    let len = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut out: Vec<u64> = (0..len)
        .map(|t| per_prime.iter().map(|d| d.get(t).copied().unwrap_or(1)).product())
        .collect();
    out.sort_unstable();
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cli::dsl::parse_spec;
    use crate::group::build_group;

    fn g(s: &str) -> GroupRef {
        build_group(&parse_spec(s).unwrap()).unwrap()
    }

    #[test]
    fn lcs_examples() {
        let s3 = lower_central_series(&g("sym(3)"));
        let orders: Vec<usize> = s3.terms().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![6, 3]);
        assert_eq!(s3.term(7).order(), 3);
        assert!(!s3.is_nilpotent());

        let q8 = lower_central_series(&g("quaternion(8)"));
        let orders: Vec<usize> = q8.terms().iter().map(Subgroup::order).collect();
        assert_eq!(orders, vec![8, 2, 1]);
        assert_eq!(q8.class(), Some(2));

        let c6 = lower_central_series(&g("cyclic(6)"));
        assert_eq!(c6.terms().len(), 2);
        assert_eq!(c6.class(), Some(1));
        assert_eq!(lower_central_series(&g("cyclic(1)")).class(), Some(0));
    }

    #[test]
    fn power_series_examples() {
        let s3 = g("sym(3)");
        assert_eq!(power_series_subgroup(&s3, 2, 1, 2).order(), 3);
        assert!(power_series_subgroup(&s3, 3, 1, 2).is_whole());
        let c2 = g("cyclic(2)");
        assert!(power_series_subgroup(&c2, 2, 1, 1).is_whole());
        assert!(power_series_subgroup(&c2, 2, 1, 2).is_trivial());
    }

    #[test]
    fn structure_examples() {
        let r = structural_report(&g("cyclic(6)"));
        assert_eq!((r.exponent, r.is_abelian, r.nilpotency_class), (6, true, Some(1)));
        assert_eq!(r.abelianization, vec![6]);

        let r = structural_report(&g("quaternion(8)"));
        assert_eq!((r.exponent, r.nilpotency_class, r.center_order), (4, Some(2), 2));
        assert_eq!(r.abelianization, vec![2, 2]);

        let r = structural_report(&g("alt(4)"));
        assert_eq!(r.exponent, 6);
        assert!(!r.is_nilpotent);
        assert_eq!(r.gamma_orders, vec![12, 4]);
        assert_eq!(r.abelianization, vec![3]);
    }

    #[test]
    fn abelian_invariants_of_products() {
        assert_eq!(abelian_invariants(&g("product(cyclic(4), product(cyclic(6), cyclic(2)))")), vec![2, 2, 12]);
        assert_eq!(abelian_invariants(&g("elemab(3,3)")), vec![3, 3, 3]);
        assert!(abelian_invariants(&g("cyclic(1)")).is_empty());
    }
}
