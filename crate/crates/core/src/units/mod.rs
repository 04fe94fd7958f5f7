//! Trivial, Bass, bicyclic and nilpotent-based units of ℤG.

mod families;
mod record;

pub use families::{
    bass_family, bass_unit, bicyclic_family, bicyclic_nilpotent, bicyclic_unit, nilpotent_based_unit,
    nilpotent_search, torsion_probe, NilpotentSearch, TorsionProbe, SEARCH_BUDGET,
};
pub use record::{trivial_unit, Provenance, UnitJson, UnitRecord};

#[cfg(test)]
mod tests;
