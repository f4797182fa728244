//! Exact `O(N log N)` solver for path instances with a graph-metric cost.
//!
//! The optimum `D*` is never computed directly. Every question about it is
//! answered by one call to the decision procedure, and the solver runs three
//! phases:
//!
//! 1. `r_i` and `ell` relative to `D*`, by weighted-median interval narrowing.
//! 2. One candidate partner `psi_i` per left endpoint `i`.
//! 3. Candidate scoring with an upper envelope of lines standing in for `C`.

mod median;

pub use median::{weighted_median, EmptyItems};

use crate::cost::CostOracle;
use crate::decision::{feasible_with, Bound};
use crate::envelope::{Envelope, Line};
use crate::error::Error;
use crate::tree::{decompose, Tree};
use crate::wdoap::{induce_instance, PathCost, PathInstance};
use crate::Solution;

/// Answers `v <= D*` with one decision call each, and counts the calls.
pub struct ProbeOracle<'a, C> {
    inst: &'a PathInstance<C>,
    calls: usize,
}

impl<'a, C: PathCost> ProbeOracle<'a, C> {
    pub fn new(inst: &'a PathInstance<C>) -> Self {
        ProbeOracle { inst, calls: 0 }
    }

    /// True iff `v <= D*`, i.e. no shortcut reaches a diameter below `v`.
    pub fn at_most_optimum(&mut self, v: f64) -> bool {
        self.calls += 1;
        feasible_with(self.inst, v, Bound::Exclusive).is_none()
    }

    pub fn calls(&self) -> usize {
        self.calls
    }
}

/// Decision calls spent in each phase.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ProbeCounts {
    pub degenerate: usize,
    pub ell: usize,
    pub r: usize,
    pub psi: usize,
}

impl ProbeCounts {
    pub fn total(&self) -> usize {
        self.degenerate + self.ell + self.r + self.psi
    }
}

/// Everything the solver computed on the way to its answer.
#[derive(Debug, Clone)]
pub struct ExactRun {
    pub solution: Solution,
    /// True when no shortcut beats `d(0, N-1)` and phases were skipped.
    pub degenerate: bool,
    pub r: Vec<usize>,
    pub ell: usize,
    pub psi: Vec<Option<usize>>,
    /// Cycle lengths `d(i, psi_i) + c(i, psi_i)`.
    pub x: Vec<Option<f64>>,
    pub eta: Vec<Option<f64>>,
    pub envelope: Option<Envelope>,
    pub probes: ProbeCounts,
}

/// Search interval `[lo, hi]` for the answer belonging to item `id`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub id: usize,
    pub lo: usize,
    pub hi: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Target {
    /// Largest index whose value is `<= D*`; values grow with the index.
    LastTrue,
    /// Smallest index whose value is `<= D*`; values shrink with the index.
    FirstTrue,
}

/// Shrinks every interval to a single index, one decision call per round.
fn narrow<C: PathCost>(
    items: &mut [Interval],
    target: Target,
    value: impl Fn(usize, usize) -> f64,
    probe: &mut ProbeOracle<'_, C>,
    observe: &mut dyn FnMut(&[Interval]),
) {
    let mut active: Vec<usize> = (0..items.len()).filter(|&k| items[k].lo < items[k].hi).collect();
    let mut probes: Vec<(usize, f64)> = Vec::with_capacity(active.len());
    let mut weighted: Vec<(f64, f64)> = Vec::with_capacity(active.len());
    while !active.is_empty() {
        probes.clear();
        weighted.clear();
        for &k in &active {
            let it = items[k];
            let m = match target {
                Target::LastTrue => (it.lo + it.hi).div_ceil(2),
                Target::FirstTrue => (it.lo + it.hi) / 2,
            };
            let v = value(it.id, m);
            probes.push((m, v));
            weighted.push((v, (it.hi - it.lo) as f64));
        }
        let lambda = weighted_median(&weighted).expect("active set is nonempty");
        let below = probe.at_most_optimum(lambda);
        for (&k, &(m, v)) in active.iter().zip(&probes) {
            let it = &mut items[k];
            match (target, below) {
                (Target::LastTrue, true) if v <= lambda => it.lo = m,
                (Target::LastTrue, false) if v >= lambda => it.hi = m - 1,
                (Target::FirstTrue, true) if v <= lambda => it.hi = m,
                (Target::FirstTrue, false) if v >= lambda => it.lo = m + 1,
                _ => {}
            }
        }
        observe(items);
        active.retain(|&k| items[k].lo < items[k].hi);
    }
}

/// Phase 1: `r_i` for every `i` and `ell`, both relative to `D*`.
///
/// Requires `d(0, N-1) > D*`.
pub fn precompute_indices<C: PathCost>(
    inst: &PathInstance<C>,
    probe: &mut ProbeOracle<'_, C>,
) -> (Vec<usize>, usize) {
    precompute_observed(inst, probe, &mut |_| {}).0
}

fn precompute_observed<C: PathCost>(
    inst: &PathInstance<C>,
    probe: &mut ProbeOracle<'_, C>,
    observe: &mut dyn FnMut(&[Interval]),
) -> ((Vec<usize>, usize), usize) {
    let n = inst.len();
    let last = n - 1;
    let omega = inst.omega();
    let before = probe.calls();

    // omega(k) + d(k, N-1) does not increase with k, and is 0 at k = N-1.
    let (mut lo, mut hi) = (0, last);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if probe.at_most_optimum(omega[mid] + inst.to_end(mid)) {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let ell = lo;
    let ell_calls = probe.calls() - before;

    let val = |i: usize, j: usize| omega[i] + inst.d(i, j) + omega[j];
    let mut r = vec![last; n];
    let mut adjacent: Vec<f64> = (0..ell).map(|i| val(i, i + 1)).collect();
    adjacent.sort_by(f64::total_cmp);
    adjacent.dedup();
    // Number of adjacent values that are <= D*.
    let (mut lo, mut hi) = (0, adjacent.len());
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if probe.at_most_optimum(adjacent[mid]) {
            lo = mid + 1;
        } else {
            hi = mid;
        }
    }
    let threshold = if lo == 0 { f64::NEG_INFINITY } else { adjacent[lo - 1] };

    let mut items = Vec::new();
    for (i, slot) in r.iter_mut().enumerate().take(ell) {
        if val(i, i + 1) <= threshold {
            // r_i < N-1 whenever i < ell.
            items.push(Interval {
                id: i,
                lo: i + 1,
                hi: last - 1,
            });
        } else {
            *slot = i;
        }
    }
    narrow(&mut items, Target::LastTrue, val, probe, observe);
    for it in &items {
        r[it.id] = it.lo;
    }
    ((r, ell), ell_calls)
}

/// `E-bar` relative to `ell`, or `-inf` when `i >= ell`.
fn e_bar<C: PathCost>(inst: &PathInstance<C>, ell: usize, i: usize, j: usize) -> f64 {
    if i >= ell {
        return f64::NEG_INFINITY;
    }
    let anchor = inst.d(0, ell - 1) + inst.omega()[ell - 1];
    inst.to_end(j) + inst.cost(i, j) + anchor - inst.prefix()[i]
}

/// Phase 2: `psi_i`, the smallest `j > i` with `max(U, E-bar) <= D*`.
pub fn reduce_candidates<C: PathCost>(
    inst: &PathInstance<C>,
    ell: usize,
    probe: &mut ProbeOracle<'_, C>,
) -> Vec<Option<usize>> {
    reduce_observed(inst, ell, probe, &mut |_| {})
}

fn reduce_observed<C: PathCost>(
    inst: &PathInstance<C>,
    ell: usize,
    probe: &mut ProbeOracle<'_, C>,
    observe: &mut dyn FnMut(&[Interval]),
) -> Vec<Option<usize>> {
    let n = inst.len();
    // Index n stands for "no partner"; it is never probed.
    let mut items: Vec<Interval> = (0..n - 1)
        .map(|i| Interval {
            id: i,
            lo: i + 1,
            hi: n,
        })
        .collect();
    let f = |i: usize, j: usize| inst.eval_u(i, j).max(e_bar(inst, ell, i, j));
    narrow(&mut items, Target::FirstTrue, f, probe, observe);
    let mut psi = vec![None; n];
    for it in &items {
        if it.lo < n {
            psi[it.id] = Some(it.lo);
        }
    }
    psi
}

/// The lines making up `phi_k` for every `k < ell`, plus the constant
/// `omega(ell) + d(ell, N-1)`.
///
/// The constant bounds every cycle term whose first vertex is at or after
/// `ell`. It never exceeds `D*`, so it does not disturb the optimal candidate.
pub fn envelope_lines<C: PathCost>(inst: &PathInstance<C>, r: &[usize], ell: usize) -> Vec<Line> {
    let omega = inst.omega();
    let mut lines = Vec::with_capacity(2 * ell + 1);
    for k in 0..ell {
        let rk = r[k];
        lines.push(Line::new(0.0, omega[k] + inst.d(k, rk) + omega[rk]));
        lines.push(Line::new(1.0, omega[k] - inst.d(k, rk + 1) + omega[rk + 1]));
    }
    if ell < inst.last() {
        lines.push(Line::new(0.0, omega[ell] + inst.to_end(ell)));
    }
    lines
}

/// Phase 3 output.
#[derive(Debug, Clone)]
pub struct Selection {
    pub alpha: usize,
    pub x: Vec<Option<f64>>,
    pub eta: Vec<Option<f64>>,
    pub envelope: Option<Envelope>,
}

/// Phase 3: scores every candidate and returns the best one.
///
/// Returns `None` only if no candidate exists, which cannot happen on a
/// valid instance.
pub fn select_best<C: PathCost>(
    inst: &PathInstance<C>,
    r: &[usize],
    ell: usize,
    psi: &[Option<usize>],
) -> Option<Selection> {
    let n = inst.len();
    let envelope = Envelope::build(&envelope_lines(inst, r, ell)).ok();
    let mut x = vec![None; n];
    let mut eta = vec![None; n];
    let mut alpha = None;
    let mut best = f64::INFINITY;
    for i in 0..n - 1 {
        let Some(j) = psi[i] else { continue };
        let xi = inst.d(i, j) + inst.cost(i, j);
        let (u, s, e) = inst.eval_use(i, j);
        let cycle = envelope.as_ref().map_or(f64::NEG_INFINITY, |env| env.query(xi));
        let value = u.max(s).max(e).max(cycle);
        x[i] = Some(xi);
        eta[i] = Some(value);
        if alpha.is_none() || value < best {
            best = value;
            alpha = Some(i);
        }
    }
    Some(Selection {
        alpha: alpha?,
        x,
        eta,
        envelope,
    })
}

/// Optimal shortcut for a path instance with a graph-metric cost.
pub fn solve<C: PathCost>(inst: &PathInstance<C>) -> Solution {
    solve_detailed(inst).solution
}

/// Runs on [`PathInstance::snapped`] so that the decision procedure and the
/// evaluation functions agree bit for bit. The reported cost and diameter
/// are measured on `inst` itself.
pub fn solve_detailed<C: PathCost>(inst: &PathInstance<C>) -> ExactRun {
    let mut run = match inst.snapped() {
        Some(grid) => solve_observed(&grid, &mut |_| {}, &mut |_| {}),
        None => solve_observed(inst, &mut |_| {}, &mut |_| {}),
    };
    let (u, v) = (run.solution.u, run.solution.v);
    run.solution.cost = inst.cost(u, v);
    run.solution.diameter = inst.eval_d(u, v);
    run
}

fn solve_observed<C: PathCost>(
    inst: &PathInstance<C>,
    observe_r: &mut dyn FnMut(&[Interval]),
    observe_psi: &mut dyn FnMut(&[Interval]),
) -> ExactRun {
    let n = inst.len();
    let mut probe = ProbeOracle::new(inst);
    let mut probes = ProbeCounts::default();

    if probe.at_most_optimum(inst.length()) {
        probes.degenerate = probe.calls();
        return ExactRun {
            solution: Solution {
                u: 0,
                v: 1,
                cost: inst.cost(0, 1),
                diameter: inst.eval_d(0, 1),
            },
            degenerate: true,
            r: vec![n - 1; n],
            ell: 0,
            psi: vec![None; n],
            x: vec![None; n],
            eta: vec![None; n],
            envelope: None,
            probes,
        };
    }
    probes.degenerate = probe.calls();

    let ((r, ell), ell_calls) = precompute_observed(inst, &mut probe, observe_r);
    probes.ell = ell_calls;
    probes.r = probe.calls() - probes.degenerate - ell_calls;

    let psi = reduce_observed(inst, ell, &mut probe, observe_psi);
    probes.psi = probe.calls() - probes.degenerate - probes.ell - probes.r;

    let selection =
        select_best(inst, &r, ell, &psi).expect("some candidate realizes the optimum");
    let alpha = selection.alpha;
    let beta = psi[alpha].expect("alpha has a partner");
    ExactRun {
        solution: Solution {
            u: alpha,
            v: beta,
            cost: inst.cost(alpha, beta),
            diameter: inst.eval_d(alpha, beta),
        },
        degenerate: false,
        r,
        ell,
        psi,
        x: selection.x,
        eta: selection.eta,
        envelope: selection.envelope,
        probes,
    }
}

/// Maps a path-level solution back to tree vertices, smaller id first.
pub(crate) fn to_vertices(path: &[usize], cost: &CostOracle, sol: Solution) -> Solution {
    let (a, b) = (path[sol.u], path[sol.v]);
    let (u, v) = if a < b { (a, b) } else { (b, a) };
    Solution {
        u,
        v,
        cost: cost.cost(u, v),
        diameter: sol.diameter,
    }
}

/// Optimal shortcut for a tree whose cost is graph-metric.
///
/// The cost class is not checked here; see [`crate::check_graph_metric`].
pub fn solve_tree(tree: &Tree, cost: &CostOracle) -> Result<Solution, Error> {
    cost.check_covers(tree)?;
    let dec = decompose(tree);
    let inst = induce_instance(tree, &dec, cost)?;
    Ok(to_vertices(dec.path(), cost, solve(&inst)))
}
