//! Benchmark fixtures.

use diamaug_core::generate::{embedded_tree, random_matrix, random_tree, seeded, TreeModel};
use diamaug_core::{CostOracle, Tree};

/// Random tree of `n` vertices embedded in the plane, with Euclidean cost.
pub fn metric_fixture(n: usize, seed: u64) -> (Tree, CostOracle) {
    embedded_tree(n, TreeModel::RandomTree, 1, 1000, &mut seeded(seed))
}

/// Random tree with an arbitrary symmetric cost matrix.
pub fn general_fixture(n: usize, seed: u64) -> (Tree, CostOracle) {
    let mut rng = seeded(seed);
    let tree = random_tree(n, TreeModel::RandomTree, 1, 100, &mut rng);
    let cost = random_matrix(n, 1, 200, &mut rng);
    (tree, cost)
}
