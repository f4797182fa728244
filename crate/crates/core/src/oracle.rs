//! Brute-force reference implementations.
//!
//! These are slow on purpose and follow the definitions directly. The fast
//! solvers are tested against them, and the CLI exposes them as `--mode brute`.

use crate::cost::CostOracle;
use crate::tree::Tree;
use crate::wdoap::{PathCost, PathInstance};
use crate::Solution;

/// Diameter of the tree plus the shortcut `(u, v)` of cost `c`, given all
/// pairwise tree distances.
pub fn augmented_diameter_with(dist: &[Vec<f64>], u: usize, v: usize, c: f64) -> f64 {
    let n = dist.len();
    let (du, dv) = (&dist[u], &dist[v]);
    let mut best: f64 = 0.0;
    for a in 0..n {
        let row = &dist[a];
        let via_u = du[a] + c;
        let via_v = dv[a] + c;
        for b in a + 1..n {
            let d = row[b].min(via_u + dv[b]).min(via_v + du[b]);
            if d > best {
                best = d;
            }
        }
    }
    best
}

/// Diameter of the tree plus the shortcut `(u, v)` of cost `c`. `O(n^2)`.
pub fn augmented_diameter(tree: &Tree, u: usize, v: usize, c: f64) -> f64 {
    augmented_diameter_with(&tree.all_pairs_distances(), u, v, c)
}

/// Exhaustive search over all vertex pairs. Ties go to the smallest `u`,
/// then the smallest `v`.
pub fn best_shortcut_brute(tree: &Tree, cost: &CostOracle) -> Solution {
    let n = tree.vertex_count();
    let dist = tree.all_pairs_distances();
    let mut best = Solution {
        u: 0,
        v: 1,
        cost: cost.cost(0, 1),
        diameter: f64::INFINITY,
    };
    for u in 0..n {
        for v in u + 1..n {
            let c = cost.cost(u, v);
            let d = augmented_diameter_with(&dist, u, v, c);
            if d < best.diameter {
                best = Solution {
                    u,
                    v,
                    cost: c,
                    diameter: d,
                };
            }
        }
    }
    best
}

/// Exhaustive minimum of the definitional `D(i, j)` over all index pairs.
pub fn wdoap_brute<C: PathCost>(inst: &PathInstance<C>) -> Solution {
    let n = inst.len();
    let mut best = Solution {
        u: 0,
        v: 1,
        cost: inst.cost(0, 1),
        diameter: f64::INFINITY,
    };
    for i in 0..n {
        for j in i + 1..n {
            let d = inst.eval_d_brute(i, j);
            if d < best.diameter {
                best = Solution {
                    u: i,
                    v: j,
                    cost: inst.cost(i, j),
                    diameter: d,
                };
            }
        }
    }
    best
}

/// Closure of `cost` on path pairs straight from the definition:
/// `min d(v_i, a) + c(a, b) + d(b, v_j)` over all distinct `a, b`.
///
/// Entry `[i][j]` is filled for `i < j`; the rest is `+inf`.
pub fn closure_brute(tree: &Tree, path: &[usize], cost: &CostOracle) -> Vec<Vec<f64>> {
    let n = tree.vertex_count();
    let dist = tree.all_pairs_distances();
    let len = path.len();
    let mut table = vec![vec![f64::INFINITY; len]; len];
    for i in 0..len {
        let di = &dist[path[i]];
        for j in i + 1..len {
            let dj = &dist[path[j]];
            let mut best = f64::INFINITY;
            for a in 0..n {
                for b in 0..n {
                    if a != b {
                        let value = di[a] + cost.cost(a, b) + dj[b];
                        if value < best {
                            best = value;
                        }
                    }
                }
            }
            table[i][j] = best;
        }
    }
    table
}
