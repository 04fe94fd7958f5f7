use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::filtration::{delta_depth, DeltaChain, DeltaDepth};
use crate::zring::{same_group, ElementJson};
use crate::ZElement;

/// Which construction produced a unit. Element indices refer to the group
/// the unit lives in, except `alpha` and `h` of the nilpotent-based family,
/// which live in the two direct factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Trivial { g: usize },
    Bass { g: usize, k: u64, m: u32 },
    Bicyclic { g: usize, h: usize },
    NilpotentBased { alpha: ElementJson, h: usize, coprime: bool },
}

/// A normalized unit of ℤG with a verified two-sided inverse.
#[derive(Debug, Clone)]
pub struct UnitRecord {
    pub element: ZElement,
    pub inverse: ZElement,
    pub provenance: Provenance,
    /// Δ-adic depth of `element − 1`.
    pub depth: DeltaDepth,
    pub trivial: bool,
    pub reason: String,
}

impl UnitRecord {
    /// Checks augmentation 1 and both products against the identity.
    pub fn new(
        element: ZElement,
        inverse: ZElement,
        provenance: Provenance,
        trivial: bool,
        reason: String,
        chain: &DeltaChain,
    ) -> Result<Self> {
        if !same_group(element.group(), chain.group()) || !same_group(inverse.group(), chain.group()) {
            return Err(Error::GroupMismatch);
        }
        if !element.augmentation().is_one() {
            return Err(Error::Precondition("unit must have augmentation 1".into()));
        }
        if !(&element * &inverse).is_one() || !(&inverse * &element).is_one() {
            return Err(Error::NotAUnit);
        }
        let depth = delta_depth(&(&element - &ZElement::one(chain.group())), chain);
        Ok(UnitRecord { element, inverse, provenance, depth, trivial, reason })
    }

    /// Re-runs the inverse check.
    pub fn verify(&self) -> bool {
        (&self.element * &self.inverse).is_one() && (&self.inverse * &self.element).is_one()
    }

    pub fn to_json(&self) -> UnitJson {
        UnitJson {
            element: self.element.to_json(),
            inverse: self.inverse.to_json(),
            provenance: self.provenance.clone(),
            depth: self.depth,
            trivial: self.trivial,
            reason: self.reason.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnitJson {
    pub element: ElementJson,
    pub inverse: ElementJson,
    pub provenance: Provenance,
    pub depth: DeltaDepth,
    pub trivial: bool,
    pub reason: String,
}

pub fn trivial_unit(chain: &DeltaChain, g: usize) -> UnitRecord {
    let group = chain.group();
    let element = ZElement::basis(group, g);
    let inverse = ZElement::basis(group, group.inv(g));
    UnitRecord::new(element, inverse, Provenance::Trivial { g }, true, "group element".into(), chain)
        .expect("group elements are units")
}
