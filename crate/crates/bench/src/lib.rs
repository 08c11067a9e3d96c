//! Fixed inputs for the benchmarks.

use curvecount::acceptance::random_gv_table;
use curvecount::{ClassBasis, GvTable};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A reproducible rank-one table with classes up to `max_degree`.
pub fn sample_table(max_degree: u32, max_genus: u32, seed: u64) -> GvTable {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_gv_table(&mut rng, &ClassBasis::rank_one(), max_degree, max_genus, 20)
}
