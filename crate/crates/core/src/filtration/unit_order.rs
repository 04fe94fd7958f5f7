use num_traits::One;

use super::chain::DeltaChain;
use crate::error::{Error, Result};
use crate::zring::inverse_in_ring;
use crate::ZElement;

/// Least `m ≥ 1` with `uᵐ − 1 ∈ Δⁿ`.
///
/// Works in the finite group `(1 + Δ)/(1 + Δⁿ)`: after every multiplication
/// the representative is reduced against the HNF of `Δⁿ`.
pub fn unit_order_mod_delta(u: &ZElement, chain: &DeltaChain, n: usize) -> Result<u64> {
    if n == 0 || n > chain.depth() {
        return Err(Error::DepthTooLarge { requested: n, cap: chain.depth() });
    }
    if !u.augmentation().is_one() {
        return Err(Error::Precondition("unit must have augmentation 1".into()));
    }
    if inverse_in_ring(u).is_none() {
        return Err(Error::NotAUnit);
    }
    let group = chain.group();
    let lattice = chain.lattice(n);
    let one = ZElement::one(group);
    let reduce = |w: &ZElement| -> ZElement {
        let r = lattice.reduce(&(w - &one).to_dense());
        &one + &ZElement::from_dense(group, r)
    };
    let mut w = reduce(u);
    let mut m = 1u64;
    while !w.is_one() {
        w = reduce(&(&w * u));
        m += 1;
    }
    Ok(m)
}
