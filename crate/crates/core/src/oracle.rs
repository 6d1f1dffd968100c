//! Brute-force reference: exact state-vector simulation of the p = 1 circuit
//! and exhaustive ground-state search.
//!
//! Basis state `z` assigns spin `s_q = +1` when bit `q` of `z` is 0 and
//! `s_q = -1` when it is 1.

use num_complex::Complex;

use crate::analytic::Angles;
use crate::error::{Error, Result};
use crate::instance::IsingInstance;
use crate::scalar::Scalar;

pub const DEFAULT_CAP: usize = 20;
pub const HARD_CAP: usize = 24;
pub const GROUND_STATE_CAP: usize = 30;

fn check_cap(n: usize, cap: usize) -> Result<()> {
    let cap = cap.min(HARD_CAP);
    if n > cap {
        Err(Error::Capacity { n, cap })
    } else {
        Ok(())
    }
}

#[inline]
fn spin(z: usize, q: usize) -> i8 {
    if (z >> q) & 1 == 0 {
        1
    } else {
        -1
    }
}

/// `C(z)` for every basis state.
pub fn cost_table<T: Scalar>(instance: &IsingInstance<T>) -> Vec<T> {
    let n = instance.n();
    (0..1usize << n)
        .map(|z| {
            let s = |q: usize| if spin(z, q) > 0 { T::one() } else { -T::one() };
            let fields = instance
                .fields()
                .iter()
                .enumerate()
                .fold(T::zero(), |acc, (i, &h)| acc + h * s(i));
            instance
                .edges()
                .iter()
                .fold(fields, |acc, e| acc + e.coupling * s(e.u) * s(e.v))
        })
        .collect()
}

/// Amplitudes over the `2^n` basis states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector<T> {
    pub amplitudes: Vec<Complex<T>>,
    qubits: usize,
}

impl<T: Scalar> StateVector<T> {
    /// `|+…+⟩`.
    pub fn uniform(qubits: usize) -> Self {
        let dim = 1usize << qubits;
        let a = Complex::new(T::one() / T::count(dim).sqrt(), T::zero());
        Self {
            amplitudes: vec![a; dim],
            qubits,
        }
    }

    pub fn qubits(&self) -> usize {
        self.qubits
    }

    pub fn norm_sqr(&self) -> T {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Multiplies amplitude `z` by `e^{-iγ C(z)}`.
    pub fn apply_cost_phase(&mut self, costs: &[T], gamma: T) {
        for (a, &c) in self.amplitudes.iter_mut().zip(costs) {
            *a = *a * Complex::from_polar(T::one(), -gamma * c);
        }
    }

    /// `e^{-iβX}` on one qubit as an in-place butterfly over amplitude pairs.
    pub fn apply_mixer_qubit(&mut self, qubit: usize, beta: T) {
        let (c, s) = (beta.cos(), beta.sin());
        let minus_i_s = Complex::new(T::zero(), -s);
        let stride = 1usize << qubit;
        for block in self.amplitudes.chunks_exact_mut(stride * 2) {
            let (low, high) = block.split_at_mut(stride);
            for (a0, a1) in low.iter_mut().zip(high.iter_mut()) {
                let (x0, x1) = (*a0, *a1);
                *a0 = x0 * c + x1 * minus_i_s;
                *a1 = x0 * minus_i_s + x1 * c;
            }
        }
    }

    pub fn probabilities(&self) -> Vec<T> {
        self.amplitudes.iter().map(|a| a.norm_sqr()).collect()
    }
}

/// The final p = 1 state for `angles`.
pub fn prepare_state<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
    cap: usize,
) -> Result<(StateVector<T>, Vec<T>)> {
    check_cap(instance.n(), cap)?;
    let costs = cost_table(instance);
    let mut state = StateVector::uniform(instance.n());
    state.apply_cost_phase(&costs, angles.gamma);
    for q in 0..instance.n() {
        state.apply_mixer_qubit(q, angles.beta);
    }
    Ok((state, costs))
}

/// `F(β, γ) = ⟨β,γ| H_C |β,γ⟩` by direct simulation.
pub fn simulate_qaoa_p1<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
    cap: usize,
) -> Result<T> {
    let (state, costs) = prepare_state(instance, angles, cap)?;
    Ok(state
        .amplitudes
        .iter()
        .zip(&costs)
        .map(|(a, &c)| a.norm_sqr() * c)
        .sum())
}

/// Minimum-cost configuration and its energy.
#[derive(Debug, Clone, PartialEq)]
pub struct GroundState<T> {
    pub energy: T,
    pub spins: Vec<i8>,
}

/// Exhaustive minimum of `C(s)`; ties go to the smallest bit string
/// `b_0 b_1 … b_{n-1}` read with vertex 0 as the most significant bit.
///
/// Walks the configurations in Gray-code order so each step flips one spin
/// and updates the energy in O(degree).
pub fn ground_state<T: Scalar>(instance: &IsingInstance<T>) -> Result<GroundState<T>> {
    let n = instance.n();
    if n > GROUND_STATE_CAP {
        return Err(Error::Capacity {
            n,
            cap: GROUND_STATE_CAP,
        });
    }
    let mut spins = vec![1i8; n];
    let as_t = |s: i8| if s > 0 { T::one() } else { -T::one() };
    let mut energy = instance.energy(&spins);
    // Tie-break key: the pattern with vertex 0 as the leading bit.
    let key = |p: usize| {
        if n == 0 {
            0
        } else {
            p.reverse_bits() >> (usize::BITS as usize - n)
        }
    };
    let (mut best_energy, mut best_pattern) = (energy, 0usize);
    let mut pattern = 0usize;
    for step in 1..(1usize << n) {
        let q = step.trailing_zeros() as usize;
        let local = instance
            .neighbors(q)
            .iter()
            .fold(instance.field(q), |acc, nb| {
                acc + nb.coupling * as_t(spins[nb.vertex])
            });
        energy = energy - T::lit(2.0) * as_t(spins[q]) * local;
        spins[q] = -spins[q];
        pattern ^= 1 << q;
        if energy < best_energy || (energy == best_energy && key(pattern) < key(best_pattern)) {
            best_energy = energy;
            best_pattern = pattern;
        }
    }
    let spins: Vec<i8> = (0..n).map(|q| spin(best_pattern, q)).collect();
    // Recompute to drop accumulated rounding from the incremental walk.
    let energy = instance.energy(&spins);
    Ok(GroundState { energy, spins })
}

/// Probability mass of the measured cost, binned.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyHistogram<T> {
    /// `bins + 1` edges; the last bin is closed on the right.
    pub edges: Vec<T>,
    pub mass: Vec<T>,
    /// Exact mean `Σ_z |a_z|² C(z)` (not from bin centers).
    pub mean: T,
}

pub fn sample_energy_histogram<T: Scalar>(
    instance: &IsingInstance<T>,
    angles: Angles<T>,
    bins: usize,
    cap: usize,
) -> Result<EnergyHistogram<T>> {
    if bins == 0 {
        return Err(Error::Parameter("histogram needs at least one bin".into()));
    }
    let (state, costs) = prepare_state(instance, angles, cap)?;
    let probs = state.probabilities();
    let lo = costs.iter().copied().fold(T::infinity(), T::min);
    let hi = costs.iter().copied().fold(T::neg_infinity(), T::max);
    let width = (hi - lo) / T::count(bins);
    let edges = (0..=bins)
        .map(|k| {
            if k == bins {
                hi
            } else {
                lo + T::count(k) * width
            }
        })
        .collect();
    let mut mass = vec![T::zero(); bins];
    for (&p, &c) in probs.iter().zip(&costs) {
        let k = if width > T::zero() {
            ((c - lo) / width)
                .floor()
                .to_usize()
                .unwrap_or(0)
                .min(bins - 1)
        } else {
            0
        };
        mass[k] = mass[k] + p;
    }
    let mean = probs.iter().zip(&costs).map(|(&p, &c)| p * c).sum();
    Ok(EnergyHistogram { edges, mass, mean })
}
