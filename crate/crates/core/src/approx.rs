//! `(1 + eps)`-approximation for metric costs by solving on a sparse set of
//! representative path vertices.

use crate::cost::CostOracle;
use crate::error::Error;
use crate::exact;
use crate::tree::{decompose, Tree};
use crate::wdoap::{induce_instance, PathCost, PathInstance};
use crate::Solution;

#[derive(Debug, Clone, PartialEq)]
pub struct ApproxPlan {
    pub epsilon: f64,
    /// Interval width along the path.
    pub width: f64,
    /// Increasing path indices, always starting at 0 and ending at the last
    /// index.
    pub representatives: Vec<usize>,
}

/// Splits the path into windows of width `eps * d(0, last) / 18` and keeps
/// the vertex of largest relaxed weight in each, plus both endpoints.
pub fn representatives<C: PathCost>(inst: &PathInstance<C>, epsilon: f64) -> Result<ApproxPlan, Error> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    let width = epsilon * inst.length() / 18.0;
    let prefix = inst.prefix();
    let omega = inst.omega();
    let last = inst.last();

    // A vertex sitting exactly on a window boundary goes to the lower window.
    let window = |i: usize| -> u64 {
        let q = (prefix[i] / width).ceil();
        if q >= 1.0 {
            q as u64 - 1
        } else {
            0
        }
    };

    let mut reps = vec![0];
    let mut current: Option<(u64, usize)> = None;
    for i in 1..last {
        let q = window(i);
        match current {
            Some((cq, best)) if cq == q => {
                if omega[i] > omega[best] {
                    current = Some((q, i));
                }
            }
            Some((_, best)) => {
                reps.push(best);
                current = Some((q, i));
            }
            None => current = Some((q, i)),
        }
    }
    if let Some((_, best)) = current {
        reps.push(best);
    }
    reps.push(last);
    Ok(ApproxPlan {
        epsilon,
        width,
        representatives: reps,
    })
}

/// The instance restricted to `reps`, with relaxed weights as node weights
/// and the original cost.
pub fn restricted_instance<'a, C: PathCost>(
    inst: &'a PathInstance<C>,
    reps: &'a [usize],
) -> Result<PathInstance<impl PathCost + 'a>, Error> {
    let delta: Vec<f64> = reps.windows(2).map(|w| inst.d(w[0], w[1])).collect();
    let w: Vec<f64> = reps.iter().map(|&g| inst.omega()[g]).collect();
    let cost = move |i: usize, j: usize| inst.cost(reps[i], reps[j]);
    Ok(PathInstance::new(&delta, w, cost)?)
}

/// Approximate solution with diameter at most `(1 + eps)` times the optimum.
/// The reported diameter is measured on the full instance.
pub fn solve_approx<C: PathCost>(inst: &PathInstance<C>, epsilon: f64) -> Result<Solution, Error> {
    let plan = representatives(inst, epsilon)?;
    let reps = &plan.representatives;
    let small = restricted_instance(inst, reps)?;
    let sol = exact::solve(&small);
    let (u, v) = (reps[sol.u], reps[sol.v]);
    Ok(Solution {
        u,
        v,
        cost: inst.cost(u, v),
        diameter: inst.eval_d(u, v),
    })
}

/// Tree-level approximation for a graph-metric cost. Vertex ids, smaller
/// first.
pub fn solve_tree_approx(tree: &Tree, cost: &CostOracle, epsilon: f64) -> Result<Solution, Error> {
    if !(epsilon > 0.0 && epsilon.is_finite()) {
        return Err(Error::InvalidEpsilon(epsilon));
    }
    cost.check_covers(tree)?;
    let dec = decompose(tree);
    let inst = induce_instance(tree, &dec, cost)?;
    let sol = solve_approx(&inst, epsilon)?;
    Ok(exact::to_vertices(dec.path(), cost, sol))
}
