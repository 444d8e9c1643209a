//! Fixtures shared by the benchmarks.

use cspoly::{construct, ConstructionParams, PointSet};

/// The constructed set for dimension `d` and seed 0.
pub fn constructed(d: usize) -> PointSet {
    let params = ConstructionParams::new(d, 0).expect("valid dimension");
    construct(&params).expect("construction succeeds").0
}
