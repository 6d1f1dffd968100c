//! Derivative-free refinement of two-angle objectives.
//!
//! Coarse grid cells seed a Nelder-Mead simplex each; the best refined point
//! wins, with ties going to the smaller `(γ, β)`.

use std::cmp::Ordering;

use rayon::prelude::*;

use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RefineOptions<T> {
    /// Number of best coarse cells refined.
    pub starts: usize,
    /// Stop once the simplex diameter drops below this (radians).
    pub tolerance: T,
    pub max_iterations: usize,
}

impl<T: Scalar> Default for RefineOptions<T> {
    fn default() -> Self {
        Self {
            starts: 8,
            tolerance: T::lit(1e-9),
            max_iterations: 500,
        }
    }
}

/// An evaluated point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Candidate<T> {
    pub beta: T,
    pub gamma: T,
    pub value: T,
}

impl<T: Scalar> Candidate<T> {
    /// Value first, then `γ`, then `β`.
    pub fn order(&self, other: &Self) -> Ordering {
        cmp(self.value, other.value)
            .then(cmp(self.gamma, other.gamma))
            .then(cmp(self.beta, other.beta))
    }
}

fn cmp<T: Scalar>(a: T, b: T) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Refined<T> {
    pub best: Candidate<T>,
    pub iterations: usize,
}

/// Nelder-Mead on `objective(β, γ)` from `start`, with initial edge lengths `step`.
///
/// The returned value is never worse than `start.value`.
pub fn nelder_mead<T: Scalar>(
    objective: &(impl Fn(T, T) -> T + ?Sized),
    start: Candidate<T>,
    step: (T, T),
    options: &RefineOptions<T>,
) -> Refined<T> {
    let eval = |beta: T, gamma: T| Candidate {
        beta,
        gamma,
        value: objective(beta, gamma),
    };
    let mut simplex = [
        start,
        eval(start.beta + step.0, start.gamma),
        eval(start.beta, start.gamma + step.1),
    ];
    let half = T::lit(0.5);
    let two = T::lit(2.0);
    let mut iterations = 0;
    while iterations < options.max_iterations {
        simplex.sort_by(|a, b| a.order(b));
        if diameter(&simplex) < options.tolerance {
            break;
        }
        iterations += 1;
        let [best, mid, worst] = simplex;
        let centroid = (
            (best.beta + mid.beta) * half,
            (best.gamma + mid.gamma) * half,
        );
        let along = |t: T| {
            eval(
                centroid.0 + t * (worst.beta - centroid.0),
                centroid.1 + t * (worst.gamma - centroid.1),
            )
        };
        let reflected = along(-T::one());
        if reflected.value < best.value {
            let expanded = along(-two);
            simplex[2] = if expanded.value < reflected.value {
                expanded
            } else {
                reflected
            };
            continue;
        }
        if reflected.value < mid.value {
            simplex[2] = reflected;
            continue;
        }
        let contracted = if reflected.value < worst.value {
            along(-half)
        } else {
            along(half)
        };
        if contracted.value < reflected.value.min(worst.value) {
            simplex[2] = contracted;
            continue;
        }
        // Shrink toward the best vertex.
        for vertex in &mut simplex[1..] {
            *vertex = eval(
                best.beta + half * (vertex.beta - best.beta),
                best.gamma + half * (vertex.gamma - best.gamma),
            );
        }
    }
    simplex.sort_by(|a, b| a.order(b));
    Refined {
        best: simplex[0],
        iterations,
    }
}

fn diameter<T: Scalar>(simplex: &[Candidate<T>; 3]) -> T {
    let mut d = T::zero();
    for a in 0..3 {
        for b in a + 1..3 {
            let db = simplex[a].beta - simplex[b].beta;
            let dg = simplex[a].gamma - simplex[b].gamma;
            d = d.max(db.hypot(dg));
        }
    }
    d
}

/// Refines the `options.starts` best cells and returns the overall best.
/// `iterations` counts simplex steps over all starts.
pub fn multistart<T: Scalar>(
    objective: &(impl Fn(T, T) -> T + Sync + ?Sized),
    cells: &[Candidate<T>],
    step: (T, T),
    options: &RefineOptions<T>,
) -> Option<Refined<T>> {
    let mut seeds = cells.to_vec();
    seeds.sort_by(|a, b| a.order(b));
    seeds.truncate(options.starts.max(1));
    let runs: Vec<Refined<T>> = seeds
        .par_iter()
        .map(|&s| nelder_mead(objective, s, step, options))
        .collect();
    let iterations = runs.iter().map(|r| r.iterations).sum();
    runs.into_iter()
        .map(|r| r.best)
        .min_by(|a, b| a.order(b))
        .map(|best| Refined { best, iterations })
}
