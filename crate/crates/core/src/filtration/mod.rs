//! The Δ-adic filtration of ℤG and the dimension subgroups it induces.

mod chain;
mod dimension;
mod unit_order;

pub use chain::{
    augmentation_ideal, delta_chain, delta_depth, next_power, ChainReport, DeltaChain, DeltaDepth, LevelReport,
};
pub use dimension::{
    dimension_series, dimension_subgroup, rational_delta_powers, rational_dimension_subgroup,
    DimensionSeriesJson, DimensionSeriesReport, OmegaStatus,
};
pub use unit_order::unit_order_mod_delta;
