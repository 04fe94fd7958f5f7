use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rayon::prelude::*;

use super::record::{Provenance, UnitRecord};
use crate::error::{Error, Result};
use crate::filtration::DeltaChain;
use crate::group::{DirectProduct, Subgroup};
use crate::zring::{inverse_in_ring, same_group};
use crate::{Int, ZElement};

/// `(g − 1)·h·ĝ`, which squares to zero because `ĝ(g − 1) = 0`.
pub fn bicyclic_nilpotent(chain: &DeltaChain, g: usize, h: usize) -> ZElement {
    let group = chain.group();
    let a = &ZElement::g_minus_one(group, g) * &ZElement::basis(group, h);
    &a * &ZElement::hat(group, g)
}

/// `u_{g,h} = 1 + (g − 1)hĝ`.
pub fn bicyclic_unit(chain: &DeltaChain, g: usize, h: usize) -> UnitRecord {
    let group = chain.group();
    let nu = bicyclic_nilpotent(chain, g, h);
    let one = ZElement::one(group);
    let conj = group.conj(g, h);
    let cyclic = Subgroup::generated(group, [g]);
    let normalizes = cyclic.contains(conj);
    let reason = if normalizes {
        format!("{} normalizes <{}>", group.label(h), group.label(g))
    } else {
        format!("{} does not normalize <{}>", group.label(h), group.label(g))
    };
    UnitRecord::new(&one + &nu, &one - &nu, Provenance::Bicyclic { g, h }, normalizes, reason, chain)
        .expect("1 ± ν are inverse when ν² = 0")
}

/// All `u_{g,h}` over ordered pairs, in `(g, h)` order.
pub fn bicyclic_family(chain: &DeltaChain) -> Vec<UnitRecord> {
    let n = chain.group().order();
    (0..n * n).into_par_iter().map(|i| bicyclic_unit(chain, i / n, i % n)).collect()
}

/// `u_{k,m}(g) = (1 + g + … + g^{k−1})ᵐ + ((1 − kᵐ)/n)·ĝ`.
pub fn bass_unit(chain: &DeltaChain, g: usize, k: u64, m: u32) -> Result<UnitRecord> {
    if k == 0 || m == 0 {
        return Err(Error::Precondition("k and m must be positive".into()));
    }
    let group = chain.group();
    let n = group.element_order(g) as u64;
    let km = BigInt::from(k).pow(m);
    let (q, r) = (Int::one() - &km).div_rem(&Int::from(n));
    if !r.is_zero() {
        return Err(Error::Precondition(format!("{k}^{m} is not 1 mod {n}")));
    }
    let s = ZElement::from_terms(group, (0..k).map(|i| (group.pow(g, i as i64), Int::one())));
    let element = &s.pow(m as u64) + &ZElement::hat(group, g).scale(&q);
    let inverse = inverse_in_ring(&element).ok_or(Error::NotAUnit)?;
    let kr = k % n;
    let trivial = n <= 2 || kr == 1 || kr == n - 1;
    let reason = if trivial {
        format!("k = {k} is ±1 mod {n}")
    } else {
        format!("k = {k} is not ±1 mod {n}")
    };
    UnitRecord::new(element, inverse, Provenance::Bass { g, k, m }, trivial, reason, chain)
}

/// Bass units `u_{k,m}(g)` with `g` the least-index generator of each cyclic
/// subgroup, `1 < k < |g|` coprime to `|g|`, and `m` the multiplicative
/// order of `k` mod `|g|`.
pub fn bass_family(chain: &DeltaChain) -> Vec<UnitRecord> {
    let group = chain.group();
    let mut seen = vec![false; group.order()];
    let mut out = Vec::new();
    for g in group.elements() {
        if seen[g] {
            continue;
        }
        let n = group.element_order(g) as u64;
        for i in 1..=n {
            if i.gcd(&n) == 1 {
                seen[group.pow(g, i as i64)] = true;
            }
        }
        for k in 2..n {
            if k.gcd(&n) != 1 {
                continue;
            }
            let m = multiplicative_order(k, n);
            out.push(bass_unit(chain, g, k, m).expect("kᵐ ≡ 1 by construction"));
        }
    }
    out
}

fn multiplicative_order(k: u64, n: u64) -> u32 {
    let mut x = k % n;
    let mut m = 1;
    while x != 1 % n {
        x = x * k % n;
        m += 1;
    }
    m
}

/// `1 + α(h − 1)` in `ℤ[G × H]` for a square-zero `α ∈ ℤG` and `h ∈ H`.
pub fn nilpotent_based_unit(alpha: &ZElement, h: usize, product: &DirectProduct, chain: &DeltaChain) -> Result<UnitRecord> {
    if !same_group(alpha.group(), &product.left) || !same_group(chain.group(), &product.group) {
        return Err(Error::GroupMismatch);
    }
    if h >= product.right.order() {
        return Err(Error::UnknownElement(h.to_string()));
    }
    if h == product.right.identity() {
        return Err(Error::Precondition("h must be nontrivial".into()));
    }
    if !(alpha * alpha).is_zero() {
        return Err(Error::Precondition("alpha is not square-zero".into()));
    }
    let gh = &product.group;
    let a = alpha.map_group(gh, &product.left_embed);
    let hm = ZElement::g_minus_one(gh, product.right_embed[h]);
    let nu = &a * &hm;
    if nu != &hm * &a {
        return Err(Error::Precondition("alpha and h − 1 do not commute".into()));
    }
    let one = ZElement::one(gh);
    let coprime = (product.left.order() as u64).gcd(&(product.right.order() as u64)) == 1;
    let trivial = nu.is_zero();
    let reason = if trivial { "alpha is zero".to_string() } else { "alpha(h − 1) is a nonzero square-zero term".to_string() };
    let provenance = Provenance::NilpotentBased { alpha: alpha.to_json(), h, coprime };
    UnitRecord::new(&one + &nu, &one - &nu, provenance, trivial, reason, chain)
}

/// Outcome of a search for a nonzero square-zero element.
#[derive(Debug, Clone, PartialEq)]
pub enum NilpotentSearch {
    Found { alpha: ZElement, canonical: Option<(usize, usize)> },
    /// ℤG is commutative and reduced.
    NoneCommutative,
    NoneFound { searched: u64, exhaustive: bool },
}

/// Cap on brute-force candidates.
pub const SEARCH_BUDGET: u64 = 2_000_000;

/// Canonical family `(g − 1)hĝ` first, then coefficient vectors in
/// `[−coeff_bound, coeff_bound]` on at most `support_bound` elements.
pub fn nilpotent_search(chain: &DeltaChain, coeff_bound: i64, support_bound: usize) -> NilpotentSearch {
    let group = chain.group();
    if group.is_abelian() {
        return NilpotentSearch::NoneCommutative;
    }
    let n = group.order();
    for g in 1..n {
        for h in 0..n {
            let alpha = bicyclic_nilpotent(chain, g, h);
            if !alpha.is_zero() {
                debug_assert!((&alpha * &alpha).is_zero());
                return NilpotentSearch::Found { alpha, canonical: Some((g, h)) };
            }
        }
    }
    let values: Vec<i64> = (-coeff_bound..=coeff_bound).filter(|&c| c != 0).collect();
    let mut brute = Brute { group: chain.group(), values: &values, searched: 0, dense: vec![0; n], found: None };
    let mut support = Vec::new();
    let exhaustive = brute.supports(0, support_bound.min(n), &mut support);
    match brute.found {
        Some(dense) => {
            let alpha = ZElement::from_terms(group, dense.iter().enumerate().map(|(g, &c)| (g, Int::from(c))));
            NilpotentSearch::Found { alpha, canonical: None }
        }
        None => NilpotentSearch::NoneFound { searched: brute.searched, exhaustive },
    }
}

struct Brute<'a> {
    group: &'a crate::GroupRef,
    values: &'a [i64],
    searched: u64,
    dense: Vec<i64>,
    found: Option<Vec<i64>>,
}

impl Brute<'_> {
    /// Returns false once the budget runs out or a witness is found.
    fn supports(&mut self, start: usize, left: usize, support: &mut Vec<usize>) -> bool {
        if !support.is_empty() && !self.coefficients(support, 0, 0) {
            return false;
        }
        if left == 0 {
            return true;
        }
        for g in start..self.group.order() {
            support.push(g);
            let ok = self.supports(g + 1, left - 1, support);
            support.pop();
            if !ok {
                return false;
            }
        }
        true
    }

    fn coefficients(&mut self, support: &[usize], i: usize, sum: i64) -> bool {
        if i == support.len() {
            if sum != 0 {
                return true;
            }
            self.searched += 1;
            if self.squares_to_zero(support) {
                self.found = Some(self.dense.clone());
                return false;
            }
            return self.searched < SEARCH_BUDGET;
        }
        for vi in 0..self.values.len() {
            let v = self.values[vi];
            self.dense[support[i]] = v;
            let ok = self.coefficients(support, i + 1, sum + v);
            self.dense[support[i]] = 0;
            if !ok {
                return false;
            }
        }
        true
    }

    fn squares_to_zero(&self, support: &[usize]) -> bool {
        let mut sq = vec![0i64; self.group.order()];
        for &a in support {
            for &b in support {
                sq[self.group.mul(a, b)] += self.dense[a] * self.dense[b];
            }
        }
        sq.iter().all(|&c| c == 0)
    }
}

/// Least `m ≤ bound` with `uᵐ = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum TorsionProbe {
    Order { m: u64 },
    NoTorsion { bound: u64 },
}

pub fn torsion_probe(u: &UnitRecord, bound: u64) -> TorsionProbe {
    let mut w = u.element.clone();
    for m in 1..=bound {
        if w.is_one() {
            return TorsionProbe::Order { m };
        }
        w = &w * &u.element;
    }
    TorsionProbe::NoTorsion { bound }
}
