//! Shortcut-cost oracles.
//!
//! Every oracle answers `c(u, v)` in constant time. The declared class is a
//! promise made by whoever built the oracle; [`check_graph_metric`] verifies
//! it exhaustively on small trees.

use crate::error::CostError;
use crate::tree::Tree;

/// How much structure a cost function is known to have.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum CostClass {
    General,
    /// `c(u,v) <= c(u,z) + d(z,v)` for all distinct `u, v, z`.
    GraphMetric,
    Metric,
}

#[derive(Debug, Clone)]
enum CostKind {
    Matrix { n: usize, values: Vec<f64> },
    Euclidean { dim: usize, coords: Vec<f64> },
    TreeDistance(TreeMetric),
    Constant(f64),
}

#[derive(Debug, Clone)]
pub struct CostOracle {
    kind: CostKind,
    class: CostClass,
}

impl CostOracle {
    /// Row-major `n x n` matrix. The diagonal is ignored.
    pub fn matrix(n: usize, values: Vec<f64>) -> Result<Self, CostError> {
        if values.len() != n * n {
            return Err(CostError::MatrixShape {
                n,
                len: values.len(),
            });
        }
        for u in 0..n {
            for v in 0..n {
                if u == v {
                    continue;
                }
                let value = values[u * n + v];
                if !(value >= 0.0 && value.is_finite()) {
                    return Err(CostError::InvalidValue {
                        u: u + 1,
                        v: v + 1,
                        value,
                    });
                }
                if value != values[v * n + u] {
                    return Err(CostError::Asymmetric { u: u + 1, v: v + 1 });
                }
            }
        }
        Ok(CostOracle {
            kind: CostKind::Matrix { n, values },
            class: CostClass::General,
        })
    }

    /// Euclidean distances between `coords.len() / dim` points.
    pub fn euclidean(dim: usize, coords: Vec<f64>) -> Result<Self, CostError> {
        if dim == 0 || coords.len() % dim != 0 {
            return Err(CostError::CoordinateShape {
                n: if dim == 0 { 0 } else { coords.len() / dim },
                dim,
            });
        }
        if let Some(k) = coords.iter().position(|x| !x.is_finite()) {
            return Err(CostError::InvalidValue {
                u: k / dim + 1,
                v: k / dim + 1,
                value: coords[k],
            });
        }
        Ok(CostOracle {
            kind: CostKind::Euclidean { dim, coords },
            class: CostClass::Metric,
        })
    }

    /// `c(u, v) = d_T(u, v)`: shortcuts never help.
    pub fn tree_distance(tree: &Tree) -> Self {
        CostOracle {
            kind: CostKind::TreeDistance(TreeMetric::new(tree)),
            class: CostClass::Metric,
        }
    }

    pub fn constant(k: f64) -> Result<Self, CostError> {
        if !(k >= 0.0 && k.is_finite()) {
            return Err(CostError::InvalidValue {
                u: 0,
                v: 0,
                value: k,
            });
        }
        Ok(CostOracle {
            kind: CostKind::Constant(k),
            class: CostClass::Metric,
        })
    }

    /// Overrides the declared class.
    pub fn with_class(mut self, class: CostClass) -> Self {
        self.class = class;
        self
    }

    pub fn class(&self) -> CostClass {
        self.class
    }

    pub fn is_matrix(&self) -> bool {
        matches!(self.kind, CostKind::Matrix { .. })
    }

    /// Point coordinates of a Euclidean oracle, one row per vertex.
    pub fn points(&self) -> Option<Vec<Vec<f64>>> {
        match &self.kind {
            CostKind::Euclidean { dim, coords } => Some(coords.chunks(*dim).map(<[f64]>::to_vec).collect()),
            _ => None,
        }
    }

    /// Number of vertices the oracle knows about, if it is bounded.
    pub fn vertex_count(&self) -> Option<usize> {
        match &self.kind {
            CostKind::Matrix { n, .. } => Some(*n),
            CostKind::Euclidean { dim, coords } => Some(coords.len() / dim),
            CostKind::TreeDistance(m) => Some(m.depth.len()),
            CostKind::Constant(_) => None,
        }
    }

    /// Fails if the oracle cannot answer queries for every vertex of `tree`.
    pub fn check_covers(&self, tree: &Tree) -> Result<(), CostError> {
        match self.vertex_count() {
            Some(k) if k != tree.vertex_count() => Err(CostError::SizeMismatch {
                oracle: k,
                tree: tree.vertex_count(),
            }),
            _ => Ok(()),
        }
    }

    #[inline]
    pub fn cost(&self, u: usize, v: usize) -> f64 {
        match &self.kind {
            CostKind::Matrix { n, values } => values[u * n + v],
            CostKind::Euclidean { dim, coords } => {
                let a = &coords[u * dim..(u + 1) * dim];
                let b = &coords[v * dim..(v + 1) * dim];
                a.iter()
                    .zip(b)
                    .map(|(x, y)| (x - y) * (x - y))
                    .sum::<f64>()
                    .sqrt()
            }
            CostKind::TreeDistance(m) => m.distance(u, v),
            CostKind::Constant(k) => *k,
        }
    }
}

/// Constant-time tree distances: Euler tour plus a sparse table for LCA.
#[derive(Debug, Clone)]
pub struct TreeMetric {
    depth: Vec<f64>,
    level: Vec<u32>,
    first: Vec<usize>,
    euler: Vec<usize>,
    table: Vec<Vec<usize>>,
}

impl TreeMetric {
    pub fn new(tree: &Tree) -> Self {
        let n = tree.vertex_count();
        let mut depth = vec![0.0; n];
        let mut level = vec![0u32; n];
        let mut first = vec![usize::MAX; n];
        let mut euler = Vec::with_capacity(2 * n);
        // (vertex, parent, next neighbor slot)
        let mut stack = vec![(0usize, usize::MAX, 0usize)];
        first[0] = 0;
        euler.push(0);
        while let Some(top) = stack.last_mut() {
            let (v, parent, slot) = *top;
            let neighbors = tree.neighbors(v);
            if slot < neighbors.len() {
                top.2 += 1;
                let (x, w) = neighbors[slot];
                if x == parent {
                    continue;
                }
                depth[x] = depth[v] + w;
                level[x] = level[v] + 1;
                first[x] = euler.len();
                euler.push(x);
                stack.push((x, v, 0));
            } else {
                stack.pop();
                if let Some(&(p, _, _)) = stack.last() {
                    euler.push(p);
                }
            }
        }
        let m = euler.len();
        let mut table = vec![euler.clone()];
        let mut span = 1;
        while 2 * span <= m {
            let prev = table.last().unwrap();
            let next: Vec<usize> = (0..=m - 2 * span)
                .map(|k| {
                    let (a, b) = (prev[k], prev[k + span]);
                    if level[a] <= level[b] {
                        a
                    } else {
                        b
                    }
                })
                .collect();
            table.push(next);
            span *= 2;
        }
        TreeMetric {
            depth,
            level,
            first,
            euler,
            table,
        }
    }

    pub fn lca(&self, u: usize, v: usize) -> usize {
        let (mut a, mut b) = (self.first[u], self.first[v]);
        if a > b {
            std::mem::swap(&mut a, &mut b);
        }
        let len = b - a + 1;
        let k = (usize::BITS - 1 - len.leading_zeros()) as usize;
        let (x, y) = (self.table[k][a], self.table[k][b + 1 - (1 << k)]);
        if self.level[x] <= self.level[y] {
            x
        } else {
            y
        }
    }

    #[inline]
    pub fn distance(&self, u: usize, v: usize) -> f64 {
        let l = self.lca(u, v);
        (self.depth[u] - self.depth[l]) + (self.depth[v] - self.depth[l])
    }

    pub fn euler_len(&self) -> usize {
        self.euler.len()
    }
}

/// Relative slack absorbing rounding in irrational costs that tie exactly.
const METRIC_SLACK: f64 = 1e-12;

/// Exhaustive graph-triangle check over all ordered triples of distinct
/// vertices. `O(n^3)`; intended for `n <= 200`.
pub fn check_graph_metric(tree: &Tree, cost: &CostOracle) -> bool {
    let n = tree.vertex_count();
    let dist = tree.all_pairs_distances();
    for u in 0..n {
        for v in 0..n {
            if u == v {
                continue;
            }
            let c_uv = cost.cost(u, v);
            for z in 0..n {
                if z == u || z == v {
                    continue;
                }
                let detour = cost.cost(u, z) + dist[z][v];
                if c_uv > detour + METRIC_SLACK * detour {
                    return false;
                }
            }
        }
    }
    true
}
