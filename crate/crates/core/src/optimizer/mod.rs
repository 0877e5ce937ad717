//! Seeded local search for k-partitions and k-subdivisions with small
//! maximum relative diameter.

mod mesh_search;
mod partition;

pub use mesh_search::{
    optimize_subdivision, optimize_subdivision_observed, seed_kinds, Observer, SeedKind,
};
pub use partition::optimize_partition;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{cmp, Scalar};
use crate::subdivision::{KPartition, KSubdivision};

/// Acceptance rule for non-improving moves.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", bound = "T: Scalar")]
pub enum Schedule<T> {
    /// Only improving (or equal) moves.
    Greedy,
    /// Metropolis acceptance at temperature `t0 * cooling^iteration`.
    Anneal { t0: T, cooling: T },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(bound = "T: Scalar", deny_unknown_fields)]
pub struct SearchConfig<T> {
    pub seed: u64,
    pub iterations: usize,
    /// Initial move radius; it shrinks geometrically to 1% over the run.
    pub move_scale: T,
    pub restarts: usize,
    pub schedule: Schedule<T>,
}

impl<T: Scalar> Default for SearchConfig<T> {
    fn default() -> Self {
        SearchConfig {
            seed: 0,
            iterations: 2000,
            move_scale: T::lit(0.05),
            restarts: 8,
            schedule: Schedule::Anneal {
                t0: T::lit(2e-3),
                cooling: T::lit(0.998),
            },
        }
    }
}

impl<T: Scalar> SearchConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let bad = |r: &str| Err(Error::InvalidConfig(r.to_string()));
        if self.iterations == 0 {
            return bad("iterations must be positive");
        }
        if self.restarts == 0 {
            return bad("restarts must be positive");
        }
        if !(self.move_scale > T::zero()) || !self.move_scale.is_finite() {
            return bad("move_scale must be positive and finite");
        }
        if let Schedule::Anneal { t0, cooling } = self.schedule {
            if !(t0 > T::zero()) || !t0.is_finite() {
                return bad("t0 must be positive and finite");
            }
            if !(cooling > T::zero() && cooling < T::one()) {
                return bad("cooling must lie in (0, 1)");
            }
        }
        Ok(())
    }

    /// Move radius at iteration `it`.
    pub(crate) fn step(&self, it: usize) -> T {
        let frac = T::from_usize_lossy(it) / T::from_usize_lossy(self.iterations);
        self.move_scale * T::lit(0.01).powf(frac)
    }

    /// Whether a move that worsens the objective by `delta` is taken.
    pub(crate) fn accept(&self, delta: T, it: usize, coin: f64) -> bool {
        if delta <= T::zero() {
            return true;
        }
        match self.schedule {
            Schedule::Greedy => false,
            Schedule::Anneal { t0, cooling } => {
                let temp = t0 * cooling.powi(it.min(i32::MAX as usize) as i32);
                temp > T::zero() && T::lit(coin) < (-delta / temp).exp()
            }
        }
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(bound = "T: Scalar")]
pub struct SearchResult<T: Scalar> {
    pub best: KSubdivision<T>,
    /// `d_M(best)` at the default discretization.
    pub best_value: T,
    /// Incumbent value after every improvement of the winning restart, as `(iteration, value)`.
    pub trace: Vec<(usize, T)>,
    /// `best_value` minus the largest applicable rigorous lower bound.
    pub bounds_gap: T,
    /// Restart that produced `best`.
    pub restart: usize,
    /// Set by the partition search.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub partition: Option<KPartition<T>>,
}

impl<T: Scalar> SearchResult<T> {
    /// Trace as `iteration,value` CSV lines with a header.
    pub fn trace_csv(&self) -> String {
        let mut s = String::from("iteration,d_m\n");
        for (i, v) in &self.trace {
            s.push_str(&format!("{i},{v}\n"));
        }
        s
    }
}

/// Region diameters sorted in decreasing order; compared lexicographically
/// so that ties in the maximum fall through to the next largest.
#[derive(Clone, Debug, PartialEq)]
pub(crate) struct Objective<T>(pub Vec<T>);

impl<T: Scalar> Objective<T> {
    pub fn new(mut d: Vec<T>) -> Self {
        d.sort_by(|a, b| cmp(b, a));
        Objective(d)
    }

    pub fn max(&self) -> T {
        self.0.first().copied().unwrap_or(T::zero())
    }

    /// Signed change from `self` to `other` at the first entry that differs
    /// by more than `eps`; zero when all entries agree.
    pub fn delta_to(&self, other: &Self, eps: T) -> T {
        for (a, b) in self.0.iter().zip(&other.0) {
            let d = *b - *a;
            if d.abs() > eps {
                return d;
            }
        }
        T::zero()
    }
}

/// Per-restart outcome before reduction.
pub(crate) struct RestartOutcome<T: Scalar> {
    pub best: KSubdivision<T>,
    pub value: T,
    pub trace: Vec<(usize, T)>,
    pub partition: Option<KPartition<T>>,
}

/// Runs all restarts in parallel; the minimum wins, ties going to the lowest index.
pub(crate) fn run_restarts<T: Scalar>(
    restarts: usize,
    f: impl Fn(usize) -> Result<RestartOutcome<T>> + Sync,
) -> Result<(usize, RestartOutcome<T>)> {
    let outcomes: Vec<Result<RestartOutcome<T>>> = (0..restarts).into_par_iter().map(&f).collect();
    let mut best: Option<(usize, RestartOutcome<T>)> = None;
    let mut first_err = None;
    for (i, o) in outcomes.into_iter().enumerate() {
        match o {
            Ok(o) => {
                if best.as_ref().is_none_or(|(_, b)| o.value < b.value) {
                    best = Some((i, o));
                }
            }
            Err(e) => {
                first_err.get_or_insert(e);
            }
        }
    }
    best.ok_or_else(|| first_err.unwrap_or(Error::Computation("no restart ran".into())))
}
