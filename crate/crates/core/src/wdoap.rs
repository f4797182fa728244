//! Node-weighted path instances and the four-way split of the augmented
//! diameter into the functions `U`, `S`, `E` and `C`.
//!
//! Path indices are `0..N`. For a shortcut `(i, j)` with `i < j` the value
//! `D(i, j)` is the largest node-weighted distance between two path vertices
//! once the shortcut is present.

use std::ops::Sub;

use crate::cost::CostOracle;
use crate::error::InstanceError;
use crate::tree::{Tree, TreeDecomposition};

/// Relative slack accepted when validating node weights against distances.
const WEIGHT_TOLERANCE: f64 = 1e-9;

/// Shortcut cost between two path positions.
pub trait PathCost {
    fn cost(&self, i: usize, j: usize) -> f64;
}

impl<F: Fn(usize, usize) -> f64> PathCost for F {
    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        self(i, j)
    }
}

/// A cost rounded to a grid, see [`PathInstance::snapped`].
#[derive(Debug, Clone, Copy)]
pub struct Snapped<'a, C> {
    inner: &'a C,
    q: f64,
    cap: f64,
}

impl<C: PathCost> PathCost for Snapped<'_, C> {
    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        (self.inner.cost(i, j).min(self.cap) / self.q).round() * self.q
    }
}

/// A [`CostOracle`] seen through the vertices of a path.
#[derive(Debug, Clone, Copy)]
pub struct PathOracle<'a> {
    pub oracle: &'a CostOracle,
    pub path: &'a [usize],
}

impl PathCost for PathOracle<'_> {
    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        self.oracle.cost(self.path[i], self.path[j])
    }
}

/// Symmetric dense cost table over path positions.
#[derive(Debug, Clone)]
pub struct DenseCost {
    n: usize,
    values: Vec<f64>,
}

impl DenseCost {
    pub fn from_fn(n: usize, f: impl Fn(usize, usize) -> f64) -> Self {
        let mut values = vec![0.0; n * n];
        for i in 0..n {
            for j in i + 1..n {
                let c = f(i, j);
                values[i * n + j] = c;
                values[j * n + i] = c;
            }
        }
        DenseCost { n, values }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }
}

impl PathCost for DenseCost {
    #[inline]
    fn cost(&self, i: usize, j: usize) -> f64 {
        self.values[i * self.n + j]
    }
}

/// A node-weighted path with a shortcut cost.
#[derive(Debug, Clone)]
pub struct PathInstance<C> {
    prefix: Vec<f64>,
    w: Vec<f64>,
    omega: Vec<f64>,
    cost: C,
}

/// `U`, `S`, `E`, `C` and their maximum `D` for one shortcut.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ComponentValues {
    pub u: f64,
    pub s: f64,
    pub e: f64,
    pub c: f64,
    pub d: f64,
}

impl<C: PathCost> PathInstance<C> {
    /// Builds an instance from path edge weights and node weights.
    ///
    /// Node weights must satisfy `0 <= w(i) <= min(d(0,i), d(i,N-1))`. Values
    /// that exceed the bound by a tiny relative amount are clamped.
    pub fn new(delta: &[f64], w: Vec<f64>, cost: C) -> Result<Self, InstanceError> {
        if delta.is_empty() {
            return Err(InstanceError::TooShort);
        }
        let n = delta.len() + 1;
        if w.len() != n {
            return Err(InstanceError::LengthMismatch {
                expected: n,
                found: w.len(),
            });
        }
        let mut prefix = Vec::with_capacity(n);
        prefix.push(0.0);
        for (index, &weight) in delta.iter().enumerate() {
            if !(weight > 0.0 && weight.is_finite()) {
                return Err(InstanceError::NonPositiveEdge { index, weight });
            }
            prefix.push(prefix[index] + weight);
        }
        let total = prefix[n - 1];
        let slack = WEIGHT_TOLERANCE * total;
        let mut w = w;
        for (index, weight) in w.iter_mut().enumerate() {
            let bound = prefix[index].min(total - prefix[index]);
            if !(weight.is_finite() && *weight >= -slack && *weight <= bound + slack) {
                return Err(InstanceError::NodeWeightOutOfRange {
                    index,
                    weight: *weight,
                    bound,
                });
            }
            *weight = weight.clamp(0.0, bound);
        }
        let omega = relaxed_weights(&prefix, &w);
        Ok(PathInstance {
            prefix,
            w,
            omega,
            cost,
        })
    }

    /// Number of path vertices.
    #[inline]
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    /// Always false: an instance has at least two vertices.
    pub fn is_empty(&self) -> bool {
        false
    }

    #[inline]
    pub fn last(&self) -> usize {
        self.prefix.len() - 1
    }

    pub fn prefix(&self) -> &[f64] {
        &self.prefix
    }

    pub fn w(&self) -> &[f64] {
        &self.w
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn cost_fn(&self) -> &C {
        &self.cost
    }

    #[inline]
    pub fn cost(&self, i: usize, j: usize) -> f64 {
        self.cost.cost(i, j)
    }

    /// Path distance for `i <= j`.
    #[inline]
    pub fn d(&self, i: usize, j: usize) -> f64 {
        self.prefix[j] - self.prefix[i]
    }

    /// `d(0, N-1)`.
    #[inline]
    pub fn length(&self) -> f64 {
        self.prefix[self.last()]
    }

    #[inline]
    pub fn to_end(&self, i: usize) -> f64 {
        self.prefix[self.last()] - self.prefix[i]
    }

    /// Copy of the instance with positions, node weights and costs rounded to
    /// multiples of a power of two `q`, chosen so that every sum the solvers
    /// form stays below `2^52 q`. Such sums are exact in `f64` whatever the
    /// order of evaluation. Costs are capped at `d(0, N-1)`, beyond which a
    /// shortcut never helps. Data that is already integral (and below
    /// `2^49`) is left unchanged.
    ///
    /// Returns `None` when rounding would collapse a path edge.
    pub fn snapped(&self) -> Option<PathInstance<Snapped<'_, C>>> {
        let length = self.length();
        let q = (8.0 * length).log2().ceil().sub(52.0).exp2();
        let snap = move |x: f64| (x / q).round() * q;
        let prefix: Vec<f64> = self.prefix.iter().map(|&p| snap(p)).collect();
        if prefix.windows(2).any(|p| p[1] <= p[0]) {
            return None;
        }
        let total = prefix[prefix.len() - 1];
        let w: Vec<f64> = self
            .w
            .iter()
            .zip(&prefix)
            .map(|(&x, &p)| snap(x).clamp(0.0, p.min(total - p)))
            .collect();
        let omega = relaxed_weights(&prefix, &w);
        Some(PathInstance {
            prefix,
            w,
            omega,
            cost: Snapped {
                inner: &self.cost,
                q,
                cap: length,
            },
        })
    }

    /// Replaces the cost while keeping weights and distances.
    pub fn with_cost<C2: PathCost>(self, cost: C2) -> PathInstance<C2> {
        PathInstance {
            prefix: self.prefix,
            w: self.w,
            omega: self.omega,
            cost,
        }
    }

    /// Endpoint-to-endpoint distance `min(d(0,N-1), d(0,i) + c + d(j,N-1))`.
    #[inline]
    pub fn eval_u(&self, i: usize, j: usize) -> f64 {
        self.length()
            .min(self.prefix[i] + self.cost(i, j) + self.to_end(j))
    }

    /// Largest node-weighted distance from vertex 0 to a cycle vertex in `[i, j)`.
    pub fn eval_s(&self, i: usize, j: usize) -> f64 {
        let c = self.cost(i, j);
        let base = self.prefix[i] + c;
        // Largest h in [i, j-1] reaching 0 no faster through the shortcut.
        let (mut lo, mut hi) = (i, j - 1);
        while lo < hi {
            let mid = lo + (hi - lo).div_ceil(2);
            if self.prefix[mid] <= base + self.d(mid, j) {
                lo = mid;
            } else {
                hi = mid - 1;
            }
        }
        let h = lo;
        let mut best = self.omega[h] + self.prefix[h];
        if h + 1 < j {
            best = best.max(self.omega[h + 1] + base + self.d(h + 1, j));
        }
        best
    }

    /// Largest node-weighted distance from vertex `N-1` to a cycle vertex in `(i, j]`.
    pub fn eval_e(&self, i: usize, j: usize) -> f64 {
        let c = self.cost(i, j);
        let base = self.to_end(j) + c;
        // Smallest k in [i+1, j] reaching N-1 no faster through the shortcut.
        let (mut lo, mut hi) = (i + 1, j);
        while lo < hi {
            let mid = lo + (hi - lo) / 2;
            if self.to_end(mid) <= base + self.d(i, mid) {
                hi = mid;
            } else {
                lo = mid + 1;
            }
        }
        let k = lo;
        let mut best = self.omega[k] + self.to_end(k);
        if k > i + 1 {
            best = best.max(self.omega[k - 1] + base + self.d(i, k - 1));
        }
        best
    }

    /// `(U, S, E)` for the shortcut `(i, j)`.
    pub fn eval_use(&self, i: usize, j: usize) -> (f64, f64, f64) {
        (self.eval_u(i, j), self.eval_s(i, j), self.eval_e(i, j))
    }

    /// `C(i, j)` by a monotone two-pointer scan in `O(j - i)` time.
    pub fn eval_c(&self, i: usize, j: usize) -> f64 {
        let c = self.cost(i, j);
        let mut best = f64::NEG_INFINITY;
        let mut h = i + 1;
        for k in i + 1..j {
            let around = self.d(i, k) + c;
            h = h.max(k);
            while h + 1 < j && self.d(k, h + 1) <= around + self.d(h + 1, j) {
                h += 1;
            }
            if h > k {
                best = best.max(self.omega[k] + self.d(k, h) + self.omega[h]);
            }
            if h + 1 < j {
                best = best.max(self.omega[k] + around + self.d(h + 1, j) + self.omega[h + 1]);
            }
        }
        best
    }

    /// `C(i, j)` straight from its definition, `O((j - i)^2)`.
    pub fn eval_c_brute(&self, i: usize, j: usize) -> f64 {
        let c = self.cost(i, j);
        let mut best = f64::NEG_INFINITY;
        for k in i + 1..j {
            for h in k + 1..j {
                let through = self.d(i, k) + c + self.d(h, j);
                let value = self.omega[k] + self.d(k, h).min(through) + self.omega[h];
                best = best.max(value);
            }
        }
        best
    }

    /// All four components with the linear-time `C`.
    pub fn components(&self, i: usize, j: usize) -> ComponentValues {
        let (u, s, e) = self.eval_use(i, j);
        let c = self.eval_c(i, j);
        ComponentValues {
            u,
            s,
            e,
            c,
            d: u.max(s).max(e).max(c),
        }
    }

    /// `D(i, j)` in `O(j - i + log N)` time.
    pub fn eval_d(&self, i: usize, j: usize) -> f64 {
        self.components(i, j).d
    }

    /// `D(i, j)` from its definition over all vertex pairs using `w`.
    pub fn eval_d_brute(&self, i: usize, j: usize) -> f64 {
        let c = self.cost(i, j);
        let n = self.len();
        let mut best = f64::NEG_INFINITY;
        for k in 0..n {
            for h in k + 1..n {
                let direct = self.d(k, h);
                let a = (self.prefix[k] - self.prefix[i]).abs()
                    + c
                    + (self.prefix[h] - self.prefix[j]).abs();
                let b = (self.prefix[k] - self.prefix[j]).abs()
                    + c
                    + (self.prefix[h] - self.prefix[i]).abs();
                best = best.max(self.w[k] + direct.min(a).min(b) + self.w[h]);
            }
        }
        best
    }
}

/// Builds the path instance for `decomposition` with costs read from `cost`.
pub fn induce_instance<'a>(
    tree: &Tree,
    decomposition: &'a TreeDecomposition,
    cost: &'a CostOracle,
) -> Result<PathInstance<PathOracle<'a>>, InstanceError> {
    let path = decomposition.path();
    if path.len() < 2 {
        return Err(InstanceError::TooShort);
    }
    if decomposition.subtree_sizes().iter().sum::<usize>() != tree.vertex_count() {
        return Err(InstanceError::Decomposition(
            "hanging subtrees do not cover the tree".into(),
        ));
    }
    for (k, pair) in path.windows(2).enumerate() {
        if tree.edge_weight(pair[0], pair[1]) != Some(decomposition.delta()[k]) {
            return Err(InstanceError::Decomposition(format!(
                "path edge {} does not match the tree",
                k + 1
            )));
        }
    }
    PathInstance::new(
        decomposition.delta(),
        decomposition.hang_weight().to_vec(),
        PathOracle {
            oracle: cost,
            path,
        },
    )
}

/// `omega(i) = max_j w(j) - d(i, j)` in two linear sweeps.
pub fn relaxed_weights(prefix: &[f64], w: &[f64]) -> Vec<f64> {
    let n = w.len();
    let mut omega = w.to_vec();
    for i in (0..n.saturating_sub(1)).rev() {
        let carried = omega[i + 1] - (prefix[i + 1] - prefix[i]);
        if carried > omega[i] {
            omega[i] = carried;
        }
    }
    for i in 1..n {
        let carried = omega[i - 1] - (prefix[i] - prefix[i - 1]);
        if carried > omega[i] {
            omega[i] = carried;
        }
    }
    omega
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::lattice_path_instance;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p5() -> PathInstance<impl PathCost> {
        PathInstance::new(&[1.0; 4], vec![0.0; 5], |_: usize, _: usize| 1.0).unwrap()
    }

    #[test]
    fn p5_components() {
        let inst = p5();
        assert_eq!(inst.eval_u(0, 4), 1.0);
        assert_eq!(inst.eval_s(0, 4), 2.0);
        assert_eq!(inst.eval_e(0, 4), 2.0);
        assert_eq!(inst.eval_c_brute(0, 4), 2.0);
        assert_eq!(inst.eval_c(0, 4), 2.0);
        assert_eq!(inst.eval_d_brute(0, 4), 2.0);
        assert_eq!(inst.eval_d_brute(1, 3), 3.0);
        assert_eq!(inst.eval_d(1, 3), 3.0);
        assert_eq!(inst.eval_c_brute(1, 2), f64::NEG_INFINITY);
        assert_eq!(inst.eval_c_brute(1, 3), f64::NEG_INFINITY);
    }

    #[test]
    fn two_vertices() {
        let inst = PathInstance::new(&[5.0], vec![0.0, 0.0], |_: usize, _: usize| 3.0).unwrap();
        assert_eq!(inst.eval_d(0, 1), 3.0);
        assert_eq!(inst.eval_d_brute(0, 1), 3.0);
        let inst = inst.with_cost(|_: usize, _: usize| 8.0);
        assert_eq!(inst.eval_d(0, 1), 5.0);
        assert_eq!(inst.eval_d_brute(0, 1), 5.0);
    }

    #[test]
    fn relaxed_weight_example() {
        let inst =
            PathInstance::new(&[2.0, 3.0, 2.0], vec![0.0, 1.0, 2.0, 0.0], |_: usize, _: usize| 1.0)
                .unwrap();
        assert_eq!(inst.omega(), &[0.0, 1.0, 2.0, 0.0]);
        let omega = relaxed_weights(&[0.0, 4.0, 5.0, 9.0], &[0.0, 4.0, 1.0, 0.0]);
        assert_eq!(omega, vec![0.0, 4.0, 3.0, 0.0]);
    }

    #[test]
    fn rejects_bad_input() {
        let c = |_: usize, _: usize| 1.0;
        assert!(matches!(
            PathInstance::new(&[1.0, 1.0], vec![0.0, 2.0, 0.0], c),
            Err(InstanceError::NodeWeightOutOfRange { .. })
        ));
        assert!(matches!(
            PathInstance::new(&[], vec![0.0], c),
            Err(InstanceError::TooShort)
        ));
        assert!(matches!(
            PathInstance::new(&[1.0, 0.0], vec![0.0; 3], c),
            Err(InstanceError::NonPositiveEdge { .. })
        ));
        assert!(matches!(
            PathInstance::new(&[1.0], vec![0.0; 3], c),
            Err(InstanceError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn induced_caterpillar() {
        let t = Tree::new(4, &[(0, 1, 2.0), (1, 2, 2.0), (1, 3, 1.0)]).unwrap();
        let dec = crate::tree::decompose(&t);
        let cost = CostOracle::constant(1.0).unwrap();
        let inst = induce_instance(&t, &dec, &cost).unwrap();
        assert_eq!(inst.len(), 3);
        assert_eq!(inst.prefix(), &[0.0, 2.0, 4.0]);
        assert_eq!(inst.w(), &[0.0, 1.0, 0.0]);
    }

    fn lattice_instance() -> impl Strategy<Value = PathInstance<DenseCost>> {
        (any::<u64>(), 2usize..24).prop_map(|(seed, n)| {
            lattice_path_instance(n, &mut ChaCha8Rng::seed_from_u64(seed))
        })
    }

    proptest! {
        #[test]
        fn omega_matches_definition(inst in lattice_instance()) {
            let n = inst.len();
            for i in 0..n {
                let brute = (0..n)
                    .map(|j| inst.w()[j] - (inst.prefix()[i] - inst.prefix()[j]).abs())
                    .fold(f64::NEG_INFINITY, f64::max);
                prop_assert_eq!(inst.omega()[i], brute);
            }
            prop_assert_eq!(inst.omega()[0], 0.0);
            prop_assert_eq!(inst.omega()[n - 1], 0.0);
            for i in 0..n {
                for j in i..n {
                    prop_assert!(inst.omega()[i] <= inst.omega()[j] + inst.d(i, j));
                }
            }
        }

        #[test]
        fn decomposition_equals_definition(inst in lattice_instance()) {
            let n = inst.len();
            for i in 0..n {
                for j in i + 1..n {
                    let brute = inst.eval_d_brute(i, j);
                    let (u, s, e) = inst.eval_use(i, j);
                    let c = inst.eval_c_brute(i, j);
                    prop_assert_eq!(u.max(s).max(e).max(c), brute, "pair ({}, {})", i, j);
                    prop_assert_eq!(inst.eval_c(i, j), c);
                    prop_assert_eq!(inst.eval_d(i, j), brute);
                }
            }
        }

        #[test]
        fn components_are_monotone(inst in lattice_instance()) {
            let n = inst.len();
            for i in 0..n {
                for j in i + 1..n {
                    let here = ComponentValues { c: inst.eval_c_brute(i, j), ..inst.components(i, j) };
                    if j + 1 < n {
                        let (u, s, e) = inst.eval_use(i, j + 1);
                        prop_assert!(u <= here.u);
                        prop_assert!(here.s <= s);
                        prop_assert!(e <= here.e);
                        prop_assert!(here.c <= inst.eval_c_brute(i, j + 1));
                    }
                    if i + 1 < j {
                        let (u, s, e) = inst.eval_use(i + 1, j);
                        prop_assert!(here.u <= u);
                        prop_assert!(inst.eval_c_brute(i + 1, j) <= here.c);
                        prop_assert!(here.s <= s);
                        prop_assert!(e <= here.e);
                    }
                }
            }
        }
    }
}
