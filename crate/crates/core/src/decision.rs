//! Linear-time search version: given a bound `lambda`, find a shortcut
//! `(i, j)` with `D(i, j) <= lambda` or report that none exists.
//!
//! Every index sequence is produced by a monotone pointer sweep, so a call
//! costs `O(N)` time.

use crate::wdoap::{PathCost, PathInstance};

/// Which comparison a probe uses against `lambda`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Bound {
    /// Accept values `<= lambda`.
    Inclusive,
    /// Accept values `< lambda`. Feasibility then answers `lambda > D*`.
    Exclusive,
}

impl Bound {
    #[inline]
    pub fn admits(self, value: f64, lambda: f64) -> bool {
        match self {
            Bound::Inclusive => value <= lambda,
            Bound::Exclusive => value < lambda,
        }
    }
}

/// Pointer movements per sweep, used to check the linear bound.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SweepCounts {
    pub r: usize,
    pub ell: usize,
    pub mu: usize,
    pub sigma: usize,
    pub theta: usize,
    pub rho: usize,
}

impl SweepCounts {
    pub fn max(&self) -> usize {
        [self.r, self.ell, self.mu, self.sigma, self.theta, self.rho]
            .into_iter()
            .max()
            .unwrap_or(0)
    }
}

/// All index sequences computed for one value of `lambda`.
///
/// `N` denotes the number of path vertices. A value of `N` in `mu` means no
/// index qualifies. `sigma[i] = i` and `theta[j] = j` play the same role for
/// those sequences.
#[derive(Debug, Clone)]
pub struct DecisionState {
    pub lambda: f64,
    pub bound: Bound,
    /// `r[i]`: largest `j >= i` with `omega(i) + d(i,j) + omega(j)` admitted.
    pub r: Vec<usize>,
    /// Smallest `i` with `omega(i) + d(i, N-1)` admitted, or `N-1`.
    pub ell: usize,
    pub mu: Vec<usize>,
    pub sigma: Vec<usize>,
    pub theta: Vec<usize>,
    pub rho: Vec<Option<usize>>,
    /// `+inf` when `r[i] = N-1` for every `i`.
    pub delta_min: f64,
    pub counts: SweepCounts,
    /// First accepted shortcut, if any.
    pub answer: Option<(usize, usize)>,
}

impl DecisionState {
    pub fn compute<C: PathCost>(inst: &PathInstance<C>, lambda: f64, bound: Bound) -> Self {
        let n = inst.len();
        let last = n - 1;
        let omega = inst.omega();
        let admits = |x: f64| bound.admits(x, lambda);
        let mut counts = SweepCounts::default();

        let mut r = vec![last; n];
        for i in (0..last).rev() {
            let mut x = r[i + 1];
            while x > i && !admits(omega[i] + inst.d(i, x) + omega[x]) {
                x -= 1;
                counts.r += 1;
            }
            r[i] = x;
        }

        let mut ell = 0;
        while ell < last && !admits(omega[ell] + inst.to_end(ell)) {
            ell += 1;
            counts.ell += 1;
        }

        let u_raw = |i: usize, j: usize| inst.prefix()[i] + inst.cost(i, j) + inst.to_end(j);
        let mut mu = vec![n; n];
        let mut m = 0;
        for (i, slot) in mu.iter_mut().enumerate().take(last) {
            if m < i + 1 {
                counts.mu += i + 1 - m;
                m = i + 1;
            }
            while m < n && !admits(u_raw(i, m)) {
                m += 1;
                counts.mu += 1;
            }
            *slot = m;
        }

        // S-bar and E-bar only make sense when the endpoints are far apart.
        let r0 = r[0];
        let mut sigma: Vec<usize> = (0..n).collect();
        if r0 < last {
            let anchor = omega[r0 + 1] - inst.prefix()[r0 + 1];
            let s_bar = |i: usize, j: usize| inst.prefix()[i] + inst.cost(i, j) + inst.prefix()[j] + anchor;
            let mut s = last;
            for (i, slot) in sigma.iter_mut().enumerate().take(r0 + 1) {
                while s > r0 && !admits(s_bar(i, s)) {
                    s -= 1;
                    counts.sigma += 1;
                }
                *slot = s.max(i);
            }
        }

        let mut theta: Vec<usize> = (0..n).collect();
        if ell > 0 {
            let anchor = inst.d(0, ell - 1) + omega[ell - 1];
            let e_bar =
                |i: usize, j: usize| inst.to_end(j) + inst.cost(i, j) + anchor - inst.prefix()[i];
            let mut t = 0;
            for j in (ell..n).rev() {
                while t < ell && !admits(e_bar(t, j)) {
                    t += 1;
                    counts.theta += 1;
                }
                theta[j] = t.min(j);
            }
        }

        let mut rho = vec![None; n];
        // [p, N-1] is the set of j >= ell with theta[j] <= i.
        let mut p = n;
        for (i, slot) in rho.iter_mut().enumerate().take(last) {
            while p > ell && theta[p - 1] <= i {
                p -= 1;
                counts.rho += 1;
            }
            let candidate = mu[i].max(p);
            if candidate < n && candidate <= sigma[i] {
                *slot = Some(candidate);
            }
        }

        let mut delta_min = f64::INFINITY;
        for i in 0..last {
            if r[i] < last {
                let k = r[i] + 1;
                let value = lambda - omega[i] + inst.d(i, k) - omega[k];
                if value < delta_min {
                    delta_min = value;
                }
            }
        }

        let answer = if admits(inst.length()) {
            Some((0, 1))
        } else {
            rho.iter().enumerate().find_map(|(i, &j)| {
                let j = j?;
                bound
                    .admits(inst.d(i, j) + inst.cost(i, j), delta_min)
                    .then_some((i, j))
            })
        };

        DecisionState {
            lambda,
            bound,
            r,
            ell,
            mu,
            sigma,
            theta,
            rho,
            delta_min,
            counts,
            answer,
        }
    }
}

/// A shortcut with `D(i, j) <= lambda`, or `None` if no such shortcut exists.
pub fn feasible<C: PathCost>(inst: &PathInstance<C>, lambda: f64) -> Option<(usize, usize)> {
    feasible_with(inst, lambda, Bound::Inclusive)
}

pub fn feasible_with<C: PathCost>(
    inst: &PathInstance<C>,
    lambda: f64,
    bound: Bound,
) -> Option<(usize, usize)> {
    if bound.admits(inst.length(), lambda) {
        return Some((0, 1));
    }
    DecisionState::compute(inst, lambda, bound).answer
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::lattice_path_instance;
    use crate::oracle::wdoap_brute;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn p5() -> PathInstance<impl PathCost> {
        PathInstance::new(&[1.0; 4], vec![0.0; 5], |_: usize, _: usize| 1.0).unwrap()
    }

    #[test]
    fn p5_examples() {
        let inst = p5();
        let (i, j) = feasible(&inst, 2.0).unwrap();
        assert!(inst.eval_d_brute(i, j) <= 2.0);
        assert_eq!(feasible(&inst, 1.5), None);
        assert_eq!(feasible(&inst, 4.0), Some((0, 1)));
        assert!(feasible_with(&inst, 2.0, Bound::Exclusive).is_none());
        assert!(feasible_with(&inst, 2.0 + 1e-9, Bound::Exclusive).is_some());
    }

    fn check_state<C: PathCost>(inst: &PathInstance<C>, lambda: f64, bound: Bound) {
        let st = DecisionState::compute(inst, lambda, bound);
        let admits = |x: f64| bound.admits(x, lambda);
        let n = inst.len();
        let last = n - 1;
        let om = inst.omega();
        assert!(st.counts.max() <= 2 * n, "{:?}", st.counts);
        for i in 0..n {
            for j in i + 1..n {
                assert_eq!(admits(om[i] + inst.d(i, j) + om[j]), j <= st.r[i]);
            }
            assert_eq!(admits(om[i] + inst.to_end(i)), st.ell <= i);
        }
        if admits(inst.length()) {
            return;
        }
        for i in 0..last {
            for j in i + 1..n {
                let (u, s, e) = inst.eval_use(i, j);
                assert_eq!(admits(u), st.mu[i] <= j, "mu at ({i},{j})");
                if admits(u) {
                    assert_eq!(admits(s), i <= st.r[0] && j <= st.sigma[i], "S at ({i},{j})");
                    assert_eq!(admits(e), st.ell <= j && st.theta[j] <= i, "E at ({i},{j})");
                }
            }
            let brute_rho = (i + 1..n).find(|&j| {
                st.mu[i] <= j && j <= st.sigma[i] && st.theta[j] <= i && st.ell <= j
            });
            assert_eq!(st.rho[i], brute_rho, "rho at {i}");
        }
    }

    #[test]
    fn sequences_match_their_definitions() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..150 {
            let n = 2 + (rand::Rng::gen_range(&mut rng, 0..20));
            let inst = lattice_path_instance(n, &mut rng);
            let best = wdoap_brute(&inst).diameter;
            for lambda in [best - 1.0, best - 0.5, best, best + 0.5, best + 2.0] {
                if lambda > 0.0 {
                    check_state(&inst, lambda, Bound::Inclusive);
                    check_state(&inst, lambda, Bound::Exclusive);
                }
            }
        }
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]
        #[test]
        fn sound_and_complete(seed in any::<u64>(), n in 2usize..30) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let inst = lattice_path_instance(n, &mut rng);
            let best = wdoap_brute(&inst).diameter;
            let mut previous = false;
            for step in -4..=4 {
                let lambda = best + f64::from(step) * 0.5;
                if lambda <= 0.0 {
                    continue;
                }
                let got = feasible(&inst, lambda);
                prop_assert_eq!(got.is_some(), best <= lambda);
                if let Some((i, j)) = got {
                    prop_assert!(inst.eval_d_brute(i, j) <= lambda);
                }
                prop_assert!(!previous || got.is_some());
                previous = got.is_some();
                let strict = feasible_with(&inst, lambda, Bound::Exclusive);
                prop_assert_eq!(strict.is_some(), best < lambda);
                if let Some((i, j)) = strict {
                    prop_assert!(inst.eval_d_brute(i, j) < lambda);
                }
            }
        }
    }
}
