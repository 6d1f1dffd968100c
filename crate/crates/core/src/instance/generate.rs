//! Seeded instance generators.
//!
//! Draw order is part of the contract: graph structure first, then one
//! coupling per edge in `(u, v)` order, then one field per vertex.

use std::collections::HashSet;

use super::IsingInstance;
use crate::error::{Error, Result};
use crate::rng::SplitMix64;
use crate::scalar::Scalar;

const MAX_RESTARTS: usize = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphKind {
    /// Simple `d`-regular graph from the pairing model.
    Regular { degree: usize },
    /// All `n(n-1)/2` pairs.
    Complete,
    /// Exactly `edges` distinct pairs, uniformly at random.
    Random { edges: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum CouplingLaw<T> {
    /// Uniform choice from a finite set.
    Choice(Vec<T>),
    Gaussian {
        sigma: T,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum FieldLaw<T> {
    None,
    Choice(Vec<T>),
    Constant(T),
    Gaussian { sigma: T },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec<T> {
    pub kind: GraphKind,
    pub couplings: CouplingLaw<T>,
    pub fields: FieldLaw<T>,
    pub seed: u64,
}

impl<T: Scalar> GeneratorSpec<T> {
    fn validate(&self, n: usize) -> Result<()> {
        if n == 0 {
            return Err(Error::Parameter("n must be at least 1".into()));
        }
        match self.kind {
            GraphKind::Regular { degree } => {
                if degree >= n {
                    return Err(Error::Parameter(format!(
                        "degree {degree} must be below n = {n}"
                    )));
                }
                if (n * degree) % 2 == 1 {
                    return Err(Error::Parameter(format!("n·d = {} is odd", n * degree)));
                }
            }
            GraphKind::Complete => {}
            GraphKind::Random { edges } => {
                let max = n * (n - 1) / 2;
                if edges > max {
                    return Err(Error::Parameter(format!(
                        "{edges} edges exceed the {max} available pairs"
                    )));
                }
            }
        }
        let check_set = |set: &[T], what: &str| {
            if set.is_empty() {
                Err(Error::Parameter(format!("{what} set is empty")))
            } else if set.iter().any(|x| !x.is_finite()) {
                Err(Error::Parameter(format!(
                    "{what} set has a non-finite value"
                )))
            } else {
                Ok(())
            }
        };
        let check_sigma = |sigma: T, what: &str| {
            if sigma > T::zero() && sigma.is_finite() {
                Ok(())
            } else {
                Err(Error::Parameter(format!("{what} sigma must be positive")))
            }
        };
        match &self.couplings {
            CouplingLaw::Choice(set) => check_set(set, "coupling")?,
            CouplingLaw::Gaussian { sigma } => check_sigma(*sigma, "coupling")?,
        }
        match &self.fields {
            FieldLaw::None => {}
            FieldLaw::Choice(set) => check_set(set, "field")?,
            FieldLaw::Constant(h) if !h.is_finite() => {
                return Err(Error::Parameter("constant field is not finite".into()))
            }
            FieldLaw::Constant(_) => {}
            FieldLaw::Gaussian { sigma } => check_sigma(*sigma, "field")?,
        }
        Ok(())
    }
}

/// Builds an instance as a pure function of `(spec, n)`.
pub fn generate<T: Scalar>(spec: &GeneratorSpec<T>, n: usize) -> Result<IsingInstance<T>> {
    spec.validate(n)?;
    let mut rng = SplitMix64::new(spec.seed);
    let mut pairs = match spec.kind {
        GraphKind::Regular { degree } => regular_pairs(&mut rng, n, degree)?,
        GraphKind::Complete => (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .collect(),
        GraphKind::Random { edges } => random_pairs(&mut rng, n, edges),
    };
    pairs.sort_unstable();

    let draw = |law: &CouplingLaw<T>, rng: &mut SplitMix64| match law {
        CouplingLaw::Choice(set) => set[rng.below(set.len())],
        CouplingLaw::Gaussian { sigma } => *sigma * T::lit(rng.next_gaussian()),
    };
    let edges: Vec<(usize, usize, T)> = pairs
        .into_iter()
        .map(|(u, v)| (u, v, draw(&spec.couplings, &mut rng)))
        .collect();
    let fields = (0..n)
        .map(|_| match &spec.fields {
            FieldLaw::None => T::zero(),
            FieldLaw::Choice(set) => set[rng.below(set.len())],
            FieldLaw::Constant(h) => *h,
            FieldLaw::Gaussian { sigma } => *sigma * T::lit(rng.next_gaussian()),
        })
        .collect();
    IsingInstance::new(n, fields, edges)
}

fn regular_pairs(rng: &mut SplitMix64, n: usize, degree: usize) -> Result<Vec<(usize, usize)>> {
    let stubs: Vec<usize> = (0..n)
        .flat_map(|v| std::iter::repeat_n(v, degree))
        .collect();
    'restart: for _ in 0..MAX_RESTARTS {
        let mut shuffled = stubs.clone();
        rng.shuffle(&mut shuffled);
        let mut seen = HashSet::with_capacity(shuffled.len() / 2);
        let mut pairs = Vec::with_capacity(shuffled.len() / 2);
        for chunk in shuffled.chunks_exact(2) {
            let (a, b) = (chunk[0].min(chunk[1]), chunk[0].max(chunk[1]));
            if a == b || !seen.insert((a, b)) {
                continue 'restart;
            }
            pairs.push((a, b));
        }
        return Ok(pairs);
    }
    Err(Error::Generation(format!(
        "no simple {degree}-regular graph on {n} vertices after {MAX_RESTARTS} pairings"
    )))
}

fn random_pairs(rng: &mut SplitMix64, n: usize, edges: usize) -> Vec<(usize, usize)> {
    let mut seen = HashSet::with_capacity(edges);
    let mut pairs = Vec::with_capacity(edges);
    while pairs.len() < edges {
        let (a, b) = (rng.below(n), rng.below(n));
        if a == b {
            continue;
        }
        let pair = (a.min(b), a.max(b));
        if seen.insert(pair) {
            pairs.push(pair);
        }
    }
    pairs
}
