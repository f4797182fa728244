//! Graph-metric closure of an arbitrary cost on diametral-path pairs, and
//! the general-cost solver built on it.

use crate::cost::CostOracle;
use crate::error::Error;
use crate::exact;
use crate::tree::{decompose, Tree, TreeDecomposition};
use crate::wdoap::PathInstance;
use crate::Solution;

/// Row-major upper triangle of an `n x n` table, `i < j`.
#[derive(Debug, Clone)]
struct Triangle<T> {
    n: usize,
    cells: Vec<T>,
}

impl<T: Copy> Triangle<T> {
    fn filled(n: usize, value: T) -> Self {
        Triangle {
            n,
            cells: vec![value; n * n.saturating_sub(1) / 2],
        }
    }

    #[inline]
    fn idx(&self, i: usize, j: usize) -> usize {
        debug_assert!(i < j && j < self.n);
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    #[inline]
    fn get(&self, i: usize, j: usize) -> T {
        self.cells[self.idx(i, j)]
    }

    #[inline]
    fn set(&mut self, i: usize, j: usize, value: T) {
        let k = self.idx(i, j);
        self.cells[k] = value;
    }
}

/// `c-bar` on every pair of path positions, with a pair of tree vertices
/// realizing each entry.
#[derive(Debug, Clone)]
pub struct ClosureTable {
    cbar: Triangle<f64>,
    witness: Triangle<(u32, u32)>,
}

impl ClosureTable {
    pub fn len(&self) -> usize {
        self.cbar.n
    }

    pub fn is_empty(&self) -> bool {
        self.cbar.n == 0
    }

    /// Closure cost between path positions `i != j`.
    #[inline]
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i < j {
            self.cbar.get(i, j)
        } else {
            self.cbar.get(j, i)
        }
    }

    /// Tree vertices `(a, b)` with `d(v_i, a) + c(a, b) + d(b, v_j)` equal to
    /// the closure cost of `(i, j)`, for `i < j`.
    pub fn realizing_pair(&self, i: usize, j: usize) -> (usize, usize) {
        let (a, b) = self.witness.get(i, j);
        (a as usize, b as usize)
    }
}

/// The three stages of the closure computation, as dense `N x N` tables with
/// `+inf` off the upper triangle.
#[derive(Debug, Clone)]
pub struct ClosureStages {
    pub chat: Vec<Vec<f64>>,
    pub ctilde: Vec<Vec<f64>>,
    pub cbar: Vec<Vec<f64>>,
}

struct Passes {
    chat: Triangle<f64>,
    ctilde: Option<Triangle<f64>>,
    table: ClosureTable,
}

fn compute(tree: &Tree, dec: &TreeDecomposition, cost: &CostOracle, keep: bool) -> Passes {
    let n = tree.vertex_count();
    let len = dec.len();
    let delta = dec.delta();
    let mut val = Triangle::filled(len, f64::INFINITY);
    let mut wit = Triangle::filled(len, (0u32, 0u32));
    // Detours that leave and re-enter the same hanging subtree.
    let mut diagonal = vec![(f64::INFINITY, (0u32, 0u32)); len];

    for a in 0..n {
        let (ka, da) = (dec.subtree_of(a), dec.depth(a));
        for b in a + 1..n {
            let (kb, db) = (dec.subtree_of(b), dec.depth(b));
            let value = da + cost.cost(a, b) + db;
            if ka == kb {
                if value < diagonal[ka].0 {
                    diagonal[ka] = (value, (a as u32, b as u32));
                }
                continue;
            }
            let (i, j, pair) = if ka < kb {
                (ka, kb, (a as u32, b as u32))
            } else {
                (kb, ka, (b as u32, a as u32))
            };
            if value < val.get(i, j) {
                val.set(i, j, value);
                wit.set(i, j, pair);
            }
        }
    }
    for (k, &(value, pair)) in diagonal.iter().enumerate() {
        if !value.is_finite() {
            continue;
        }
        if k + 1 < len && value + delta[k] < val.get(k, k + 1) {
            val.set(k, k + 1, value + delta[k]);
            wit.set(k, k + 1, pair);
        }
        if k > 0 && value + delta[k - 1] < val.get(k - 1, k) {
            val.set(k - 1, k, value + delta[k - 1]);
            wit.set(k - 1, k, (pair.1, pair.0));
        }
    }
    let chat = if keep { val.clone() } else { Triangle::filled(0, 0.0) };

    // Forward pass: slide either end towards the end of the path.
    for i in 0..len {
        for j in i + 1..len {
            let mut best = (val.get(i, j), wit.get(i, j));
            if j > i + 1 {
                let v = val.get(i, j - 1) + delta[j - 1];
                if v < best.0 {
                    best = (v, wit.get(i, j - 1));
                }
            }
            if i > 0 {
                let v = val.get(i - 1, j) + delta[i - 1];
                if v < best.0 {
                    best = (v, wit.get(i - 1, j));
                }
            }
            val.set(i, j, best.0);
            wit.set(i, j, best.1);
        }
    }
    let ctilde = keep.then(|| val.clone());

    // Backward pass: slide either end towards the start of the path.
    for i in (0..len).rev() {
        for j in (i + 1..len).rev() {
            let mut best = (val.get(i, j), wit.get(i, j));
            if i + 1 < j {
                let v = val.get(i + 1, j) + delta[i];
                if v < best.0 {
                    best = (v, wit.get(i + 1, j));
                }
            }
            if j + 1 < len {
                let v = val.get(i, j + 1) + delta[j];
                if v < best.0 {
                    best = (v, wit.get(i, j + 1));
                }
            }
            val.set(i, j, best.0);
            wit.set(i, j, best.1);
        }
    }
    Passes {
        chat,
        ctilde,
        table: ClosureTable {
            cbar: val,
            witness: wit,
        },
    }
}

/// Closure of `cost` on the pairs of the decomposition's path, in `O(n^2)`.
pub fn path_closure(tree: &Tree, dec: &TreeDecomposition, cost: &CostOracle) -> ClosureTable {
    compute(tree, dec, cost, false).table
}

/// Same as [`path_closure`], keeping the intermediate tables.
pub fn closure_stages(tree: &Tree, dec: &TreeDecomposition, cost: &CostOracle) -> ClosureStages {
    let passes = compute(tree, dec, cost, true);
    let len = dec.len();
    let dense = |t: &Triangle<f64>| {
        let mut out = vec![vec![f64::INFINITY; len]; len];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().skip(i + 1) {
                *cell = t.get(i, j);
            }
        }
        out
    };
    ClosureStages {
        chat: dense(&passes.chat),
        ctilde: dense(passes.ctilde.as_ref().expect("kept")),
        cbar: dense(&passes.table.cbar),
    }
}

/// Result of the general-cost solver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneralSolution {
    /// Optimal path pair under the closure, with the closure cost.
    pub solution: Solution,
    /// Tree vertices whose shortcut, at its original cost, reaches the same
    /// diameter.
    pub realizing: (usize, usize),
    pub realizing_cost: f64,
}

/// Optimal shortcut for an arbitrary nonnegative symmetric cost, in `O(n^2)`
/// time and space.
pub fn solve_general(tree: &Tree, cost: &CostOracle) -> Result<GeneralSolution, Error> {
    cost.check_covers(tree)?;
    let dec = decompose(tree);
    let table = path_closure(tree, &dec, cost);
    let inst = PathInstance::new(dec.delta(), dec.hang_weight().to_vec(), |i: usize, j: usize| {
        table.get(i, j)
    })?;
    let sol = exact::solve(&inst);
    let path = dec.path();
    let (a, b) = (path[sol.u], path[sol.v]);
    let (ra, rb) = table.realizing_pair(sol.u, sol.v);
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    let realizing = if ra < rb { (ra, rb) } else { (rb, ra) };
    Ok(GeneralSolution {
        solution: Solution {
            u,
            v,
            cost: sol.cost,
            diameter: sol.diameter,
        },
        realizing,
        realizing_cost: cost.cost(realizing.0, realizing.1),
    })
}
