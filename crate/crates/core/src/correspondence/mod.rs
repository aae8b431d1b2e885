//! The correspondence between chart germs of twisted bundles and Gieseker
//! germs, in both directions.

mod datum;
mod germ;

pub use datum::{
    choose_order, forward, inverse, inverse_adapted, inverse_partition, roundtrip_check,
    GiesekerGermDatum,
};
pub use germ::{normalize_chart, BranchMatrixJson, GermJson, LocalChartGerm};
