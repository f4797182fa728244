//! Seeded random instances.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::cost::CostOracle;
use crate::tree::Tree;
use crate::wdoap::{DenseCost, PathInstance};

/// Deterministic generator for a seed.
pub fn seeded(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TreeModel {
    Path,
    /// A spine holding about half the vertices, the rest attached as leaves.
    Caterpillar,
    /// Uniform attachment: vertex `k` hangs from a uniform vertex below `k`.
    RandomTree,
}

impl std::str::FromStr for TreeModel {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "path" => Ok(TreeModel::Path),
            "caterpillar" => Ok(TreeModel::Caterpillar),
            "random-tree" => Ok(TreeModel::RandomTree),
            other => Err(format!("unknown tree model `{other}`")),
        }
    }
}

/// Parent pointers for vertices `1..n`.
fn shape<R: Rng>(n: usize, model: TreeModel, rng: &mut R) -> Vec<(usize, usize)> {
    match model {
        TreeModel::Path => (1..n).map(|v| (v - 1, v)).collect(),
        TreeModel::Caterpillar => {
            let spine = n.div_ceil(2).max(2).min(n);
            let mut edges: Vec<_> = (1..spine).map(|v| (v - 1, v)).collect();
            edges.extend((spine..n).map(|v| (rng.gen_range(0..spine), v)));
            edges
        }
        TreeModel::RandomTree => (1..n).map(|v| (rng.gen_range(0..v), v)).collect(),
    }
}

/// Random tree with integer edge weights drawn uniformly from `[lo, hi]`.
pub fn random_tree<R: Rng>(n: usize, model: TreeModel, lo: u32, hi: u32, rng: &mut R) -> Tree {
    let edges: Vec<_> = shape(n, model, rng)
        .into_iter()
        .map(|(u, v)| (u, v, f64::from(rng.gen_range(lo..=hi))))
        .collect();
    Tree::new(n, &edges).expect("generated edges form a tree")
}

/// Random tree on integer points of the plane, with a Euclidean cost.
///
/// Each edge weighs `ceil` of its Euclidean length, clamped to `[lo, hi]`.
/// Points lie in a square small enough that no length exceeds `hi`, so the
/// cost never beats the tree distance along any edge and is graph-metric.
pub fn embedded_tree<R: Rng>(
    n: usize,
    model: TreeModel,
    lo: u32,
    hi: u32,
    rng: &mut R,
) -> (Tree, CostOracle) {
    let side = (f64::from(hi) / std::f64::consts::SQRT_2).floor().max(0.0) as u32;
    let coords: Vec<f64> = (0..2 * n)
        .map(|_| f64::from(rng.gen_range(0..=side)))
        .collect();
    let cost = CostOracle::euclidean(2, coords).expect("finite coordinates");
    let edges: Vec<_> = shape(n, model, rng)
        .into_iter()
        .map(|(u, v)| {
            let len = cost.cost(u, v).ceil();
            (u, v, len.clamp(f64::from(lo.max(1)), f64::from(hi)))
        })
        .collect();
    let tree = Tree::new(n, &edges).expect("generated edges form a tree");
    (tree, cost)
}

/// Symmetric integer cost matrix with entries uniform in `[lo, hi]`.
pub fn random_matrix<R: Rng>(n: usize, lo: u32, hi: u32, rng: &mut R) -> CostOracle {
    let mut values = vec![0.0; n * n];
    for u in 0..n {
        for v in u + 1..n {
            let c = f64::from(rng.gen_range(lo..=hi));
            values[u * n + v] = c;
            values[v * n + u] = c;
        }
    }
    CostOracle::matrix(n, values).expect("symmetric nonnegative matrix")
}

/// Random relabelling of the vertices of `tree`.
pub fn shuffle_labels<R: Rng>(tree: &Tree, rng: &mut R) -> Tree {
    let n = tree.vertex_count();
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let edges: Vec<_> = tree
        .edges()
        .iter()
        .map(|&(u, v, w)| (perm[u], perm[v], w))
        .collect();
    Tree::new(n, &edges).expect("relabelled tree")
}

/// Small path instance with integer data and an integer graph-metric cost.
///
/// The cost is the L1 distance between lattice points placed by a walk whose
/// steps are never longer than the matching path edges.
pub fn lattice_path_instance<R: Rng>(n: usize, rng: &mut R) -> PathInstance<DenseCost> {
    assert!(n >= 2);
    let delta: Vec<f64> = (1..n).map(|_| f64::from(rng.gen_range(1u32..10))).collect();
    let mut prefix = vec![0.0];
    for d in &delta {
        prefix.push(prefix.last().unwrap() + d);
    }
    let total = prefix[n - 1];
    let w: Vec<f64> = (0..n)
        .map(|i| {
            let bound = prefix[i].min(total - prefix[i]);
            if rng.gen_bool(0.3) {
                0.0
            } else {
                f64::from(rng.gen_range(0..=bound as u32))
            }
        })
        .collect();
    let mut points = vec![(0i64, 0i64)];
    for d in &delta {
        let len = rng.gen_range(0..=*d as i64);
        let ax = rng.gen_range(0..=len);
        let sx = if rng.gen_bool(0.5) { 1 } else { -1 };
        let sy = if rng.gen_bool(0.5) { 1 } else { -1 };
        let (x, y) = *points.last().unwrap();
        points.push((x + sx * ax, y + sy * (len - ax)));
    }
    let cost = DenseCost::from_fn(n, |i, j| {
        ((points[i].0 - points[j].0).abs() + (points[i].1 - points[j].1).abs()) as f64
    });
    PathInstance::new(&delta, w, cost).expect("valid lattice instance")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cost::check_graph_metric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn models_build_trees() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for model in [TreeModel::Path, TreeModel::Caterpillar, TreeModel::RandomTree] {
            for n in [2, 3, 10, 57] {
                let t = random_tree(n, model, 1, 100, &mut rng);
                assert_eq!(t.vertex_count(), n);
                assert!(t.edges().iter().all(|e| (1.0..=100.0).contains(&e.2)));
            }
        }
    }

    #[test]
    fn embedded_costs_are_graph_metric() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let n = rng.gen_range(2..40);
            let (t, c) = embedded_tree(n, TreeModel::RandomTree, 1, 100, &mut rng);
            assert!(t.edges().iter().all(|e| (1.0..=100.0).contains(&e.2)));
            assert!(check_graph_metric(&t, &c));
        }
    }

    #[test]
    fn deterministic_from_seed() {
        let a = random_tree(30, TreeModel::RandomTree, 1, 9, &mut ChaCha8Rng::seed_from_u64(5));
        let b = random_tree(30, TreeModel::RandomTree, 1, 9, &mut ChaCha8Rng::seed_from_u64(5));
        assert_eq!(a.edges(), b.edges());
    }
}
