//! Helpers shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

pub mod feasibility;
pub mod lp;
pub mod pmedian;
pub mod planner;
pub mod random;

use rand::rngs::StdRng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}
