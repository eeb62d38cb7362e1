//! Shared instance builders for the benchmark targets.

use vpg_core::{gen_random_vpg, GridRep, RandomVpgParams};

/// Deterministic benchmark instance with bounded load and horizontal parts.
pub fn instance(n: usize, columns: i64, seed: u64) -> GridRep {
    let mut params = RandomVpgParams {
        n,
        max_bends: 1,
        max_horizontal: 3,
        max_edge_load: 2,
        target_columns: columns,
        seed,
    };
    loop {
        match gen_random_vpg(&params) {
            Ok(rep) => return rep,
            Err(_) => params.seed += 1,
        }
    }
}
