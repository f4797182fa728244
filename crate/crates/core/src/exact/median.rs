use std::cmp::Ordering;

use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Error)]
#[error("weighted median of an empty set")]
pub struct EmptyItems;

/// Smallest value `v` such that the items with value `<= v` carry at least
/// half of the total weight. Expected linear time.
///
/// Weights must be positive.
pub fn weighted_median(items: &[(f64, f64)]) -> Result<f64, EmptyItems> {
    if items.is_empty() {
        return Err(EmptyItems);
    }
    let total: f64 = items.iter().map(|&(_, w)| w).sum();
    let mut pool = items.to_vec();
    let mut below = 0.0;
    loop {
        if pool.len() == 1 {
            return Ok(pool[0].0);
        }
        let mid = pool.len() / 2;
        let (_, &mut (pivot, _), _) =
            pool.select_nth_unstable_by(mid, |a, b| a.0.total_cmp(&b.0));
        let (mut less, mut equal) = (0.0, 0.0);
        for &(v, w) in &pool {
            match v.total_cmp(&pivot) {
                Ordering::Less => less += w,
                Ordering::Equal => equal += w,
                Ordering::Greater => {}
            }
        }
        if 2.0 * (below + less) >= total {
            pool.retain(|&(v, _)| v < pivot);
        } else if 2.0 * (below + less + equal) >= total {
            return Ok(pivot);
        } else {
            below += less + equal;
            pool.retain(|&(v, _)| v > pivot);
        }
    }
}
