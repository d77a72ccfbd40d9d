//! Shared fixtures for the benchmarks.

use strata_cones::{SplittingConfig, Stratum};

/// Every stratum of a configuration, by bitmask.
pub fn all_strata(p: u64, cycles: &[usize]) -> Vec<Stratum> {
    let config = SplittingConfig::new(p, cycles.to_vec()).expect("valid configuration");
    (0u64..1 << config.d())
        .map(|m| Stratum::from_mask(&config, m).expect("mask within d"))
        .collect()
}
