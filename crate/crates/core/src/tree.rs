//! Edge-weighted trees, tree distances, diametral paths and the hanging
//! subtrees that remain once the edges of a diametral path are removed.
//!
//! Vertices are `0..n` inside the library. Text formats and the CLI use
//! 1-based ids and convert at the boundary.

use crate::error::TreeError;

#[derive(Debug, Clone)]
pub struct Tree {
    n: usize,
    edges: Vec<(usize, usize, f64)>,
    offsets: Vec<usize>,
    adjacency: Vec<(usize, f64)>,
}

impl Tree {
    /// Validates `edges` (0-based endpoints) and builds the adjacency lists.
    pub fn new(n: usize, edges: &[(usize, usize, f64)]) -> Result<Self, TreeError> {
        if n < 2 {
            return Err(TreeError::TooFewVertices(n));
        }
        if edges.len() != n - 1 {
            return Err(TreeError::EdgeCount {
                expected: n - 1,
                found: edges.len(),
            });
        }
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut degree = vec![0usize; n];
        for &(u, v, weight) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(TreeError::VertexOutOfRange { vertex: x + 1, n });
                }
            }
            if u == v {
                return Err(TreeError::SelfLoop(u + 1));
            }
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(TreeError::NonPositiveWeight {
                    u: u + 1,
                    v: v + 1,
                    weight,
                });
            }
            let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
            if ru == rv {
                return Err(TreeError::Cycle { u: u + 1, v: v + 1 });
            }
            parent[ru] = rv;
            degree[u] += 1;
            degree[v] += 1;
        }

        // n - 1 edges without a cycle span all n vertices, so the graph is connected.
        let mut offsets = vec![0usize; n + 1];
        for v in 0..n {
            offsets[v + 1] = offsets[v] + degree[v];
        }
        let mut fill = offsets.clone();
        let mut adjacency = vec![(0usize, 0.0f64); 2 * (n - 1)];
        for &(u, v, weight) in edges {
            adjacency[fill[u]] = (v, weight);
            fill[u] += 1;
            adjacency[fill[v]] = (u, weight);
            fill[v] += 1;
        }
        for v in 0..n {
            adjacency[offsets[v]..offsets[v + 1]].sort_by_key(|&(x, _)| x);
        }
        Ok(Tree {
            n,
            edges: edges.to_vec(),
            offsets,
            adjacency,
        })
    }

    /// A path `0 - 1 - ... - (k)` with the given edge weights.
    pub fn path(weights: &[f64]) -> Result<Self, TreeError> {
        let edges: Vec<_> = weights
            .iter()
            .enumerate()
            .map(|(i, &w)| (i, i + 1, w))
            .collect();
        Tree::new(weights.len() + 1, &edges)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize, f64)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, f64)] {
        &self.adjacency[self.offsets[v]..self.offsets[v + 1]]
    }

    pub fn edge_weight(&self, u: usize, v: usize) -> Option<f64> {
        let list = self.neighbors(u);
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|k| list[k].1)
    }

    /// Distances from `root` to every vertex along the unique tree paths.
    pub fn distances_from(&self, root: usize) -> Result<Vec<f64>, TreeError> {
        if root >= self.n {
            return Err(TreeError::VertexOutOfRange {
                vertex: root + 1,
                n: self.n,
            });
        }
        Ok(self.sweep(root).0)
    }

    /// Distances and parent pointers of a traversal rooted at `root`.
    fn sweep(&self, root: usize) -> (Vec<f64>, Vec<usize>) {
        let mut dist = vec![0.0; self.n];
        let mut parent = vec![usize::MAX; self.n];
        let mut stack = vec![root];
        parent[root] = root;
        while let Some(v) = stack.pop() {
            for &(x, w) in self.neighbors(v) {
                if parent[x] == usize::MAX {
                    parent[x] = v;
                    dist[x] = dist[v] + w;
                    stack.push(x);
                }
            }
        }
        (dist, parent)
    }

    /// All-pairs tree distances, `O(n^2)` time and space.
    pub fn all_pairs_distances(&self) -> Vec<Vec<f64>> {
        (0..self.n).map(|v| self.sweep(v).0).collect()
    }

    /// A diametral path by two farthest-vertex sweeps. Ties go to the
    /// smallest vertex id in each sweep.
    pub fn diametral_path(&self) -> Vec<usize> {
        let farthest = |dist: &[f64]| {
            let mut best = 0;
            for v in 1..self.n {
                if dist[v] > dist[best] {
                    best = v;
                }
            }
            best
        };
        let (dist0, _) = self.sweep(0);
        let a = farthest(&dist0);
        let (dist_a, parent) = self.sweep(a);
        let b = farthest(&dist_a);
        let mut path = vec![b];
        let mut v = b;
        while v != a {
            v = parent[v];
            path.push(v);
        }
        // Orient so the endpoint with the smaller id comes first.
        if b > a {
            path.reverse();
        }
        path
    }

    pub fn diameter(&self) -> f64 {
        let path = self.diametral_path();
        let dist = self.sweep(path[0]).0;
        dist[*path.last().unwrap()]
    }
}

/// A diametral path together with the subtrees hanging off its vertices.
#[derive(Debug, Clone)]
pub struct TreeDecomposition {
    path: Vec<usize>,
    delta: Vec<f64>,
    hang_weight: Vec<f64>,
    subtree_of: Vec<usize>,
    depth: Vec<f64>,
}

impl TreeDecomposition {
    /// The path vertices `v_1..v_N`.
    pub fn path(&self) -> &[usize] {
        &self.path
    }

    /// Weights of the `N - 1` path edges.
    pub fn delta(&self) -> &[f64] {
        &self.delta
    }

    /// `w(v_i)`: eccentricity of `v_i` inside its hanging subtree.
    pub fn hang_weight(&self) -> &[f64] {
        &self.hang_weight
    }

    /// Path index of the hanging subtree containing `vertex`.
    pub fn subtree_of(&self, vertex: usize) -> usize {
        self.subtree_of[vertex]
    }

    /// Distance from `vertex` to the path vertex its subtree hangs from.
    pub fn depth(&self, vertex: usize) -> f64 {
        self.depth[vertex]
    }

    pub fn len(&self) -> usize {
        self.path.len()
    }

    pub fn is_empty(&self) -> bool {
        self.path.is_empty()
    }

    /// Sizes of the hanging subtrees, indexed by path position.
    pub fn subtree_sizes(&self) -> Vec<usize> {
        let mut sizes = vec![0; self.path.len()];
        for &k in &self.subtree_of {
            sizes[k] += 1;
        }
        sizes
    }
}

/// Splits `tree` along `path` in `O(n)` time.
pub fn hanging_weights(tree: &Tree, path: &[usize]) -> Result<TreeDecomposition, TreeError> {
    let n = tree.vertex_count();
    if path.len() < 2 {
        return Err(TreeError::NotAPath("fewer than two vertices".into()));
    }
    let mut subtree_of = vec![usize::MAX; n];
    for (k, &v) in path.iter().enumerate() {
        if v >= n {
            return Err(TreeError::VertexOutOfRange { vertex: v + 1, n });
        }
        if subtree_of[v] != usize::MAX {
            return Err(TreeError::NotAPath(format!("vertex {} repeats", v + 1)));
        }
        subtree_of[v] = k;
    }
    let mut delta = Vec::with_capacity(path.len() - 1);
    for pair in path.windows(2) {
        match tree.edge_weight(pair[0], pair[1]) {
            Some(w) => delta.push(w),
            None => {
                return Err(TreeError::NotAPath(format!(
                    "no edge between {} and {}",
                    pair[0] + 1,
                    pair[1] + 1
                )))
            }
        }
    }

    let mut depth = vec![0.0; n];
    let mut hang_weight = vec![0.0; path.len()];
    let mut stack = Vec::new();
    for (k, &root) in path.iter().enumerate() {
        stack.push(root);
        while let Some(v) = stack.pop() {
            for &(x, w) in tree.neighbors(v) {
                if subtree_of[x] == usize::MAX {
                    subtree_of[x] = k;
                    depth[x] = depth[v] + w;
                    if depth[x] > hang_weight[k] {
                        hang_weight[k] = depth[x];
                    }
                    stack.push(x);
                }
            }
        }
    }
    Ok(TreeDecomposition {
        path: path.to_vec(),
        delta,
        hang_weight,
        subtree_of,
        depth,
    })
}

/// Diametral path plus hanging subtrees in one call.
pub fn decompose(tree: &Tree) -> TreeDecomposition {
    hanging_weights(tree, &tree.diametral_path()).expect("a diametral path is a path")
}
