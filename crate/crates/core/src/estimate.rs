//! Estimates of the optimal (most negative) Ising energy, used to turn
//! QAOA expectations into approximation ratios.

use std::fmt;

use crate::error::{Error, Result};
use crate::instance::IsingInstance;
use crate::landscape::OptResult;
use crate::scalar::Scalar;

/// Empirical prefactor of the informal estimate, `≈ √(2 ln 2)`.
pub const INFORMAL_COEFFICIENT: f64 = 1.18;
/// Parisi constant.
pub const PARISI_CONSTANT: f64 = 0.76321;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum EstimateMethod {
    /// Expected maximum of `2^n` Gaussian samples with the instance's
    /// coefficient variance.
    #[default]
    Informal,
    Montanari,
    Parisi,
}

impl EstimateMethod {
    pub fn name(self) -> &'static str {
        match self {
            Self::Informal => "gaussian-informal",
            Self::Montanari => "montanari",
            Self::Parisi => "parisi",
        }
    }
}

impl fmt::Display for EstimateMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for EstimateMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "informal" | "gaussian-informal" => Ok(Self::Informal),
            "montanari" => Ok(Self::Montanari),
            "parisi" => Ok(Self::Parisi),
            other => Err(Error::Parameter(format!("unknown estimator `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EstimateResult<T> {
    pub method: EstimateMethod,
    pub value: T,
    pub vertices: usize,
    pub edges: usize,
    /// Sum of squared coefficients, `Σ J² + Σ h²`.
    pub ssq: T,
}

/// `1.18·√(n·ssq)`.
pub fn estimate_informal<T: Scalar>(n: usize, ssq: T) -> T {
    T::lit(INFORMAL_COEFFICIENT) * (T::count(n) * ssq).sqrt()
}

/// `2P*·√(ve(1 − 2e/v²))`; requires `v ≥ 2` and `e ≤ v(v−1)/2`.
pub fn estimate_montanari<T: Scalar>(v: usize, e: usize) -> Result<T> {
    if v < 2 {
        return Err(Error::Parameter(format!(
            "need at least 2 vertices, got {v}"
        )));
    }
    if e > v * (v - 1) / 2 {
        return Err(Error::Parameter(format!(
            "{e} edges exceed the simple-graph maximum for {v} vertices"
        )));
    }
    let (vt, et) = (T::count(v), T::count(e));
    let two = T::lit(2.0);
    Ok(two * T::lit(PARISI_CONSTANT) * (vt * et * (T::one() - two * et / (vt * vt))).sqrt())
}

/// `P*·√(2ve)`.
pub fn estimate_parisi<T: Scalar>(v: usize, e: usize) -> T {
    T::lit(PARISI_CONSTANT) * (T::lit(2.0) * T::count(v) * T::count(e)).sqrt()
}

pub fn estimate<T: Scalar>(
    instance: &IsingInstance<T>,
    method: EstimateMethod,
) -> Result<EstimateResult<T>> {
    let (v, e) = (instance.n(), instance.num_edges());
    let ssq = instance.sum_of_squares();
    let value = match method {
        EstimateMethod::Informal => estimate_informal(v, ssq),
        EstimateMethod::Montanari => estimate_montanari(v, e)?,
        EstimateMethod::Parisi => estimate_parisi(v, e),
    };
    Ok(EstimateResult {
        method,
        value,
        vertices: v,
        edges: e,
        ssq,
    })
}

/// A quotient that may be undefined because its denominator vanished.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Ratio<T> {
    Defined(T),
    Undefined,
}

impl<T: Scalar> Ratio<T> {
    pub fn of(numerator: T, denominator: T) -> Self {
        if denominator == T::zero() || !denominator.is_finite() {
            Self::Undefined
        } else {
            Self::Defined(numerator / denominator)
        }
    }

    pub fn value(self) -> Option<T> {
        match self {
            Self::Defined(x) => Some(x),
            Self::Undefined => None,
        }
    }
}

impl<T: Scalar> fmt::Display for Ratio<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Defined(x) => write!(f, "{x:.3}"),
            Self::Undefined => f.write_str("undefined"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RatioReport<T> {
    pub estimate: T,
    /// QAOA expectation over the informal estimate.
    pub ratio_exp: Ratio<T>,
    /// QAOA expectation over the best known energy magnitude.
    pub ratio_ising: Option<Ratio<T>>,
    /// Cut at the optimum over the best known cut, Max-Cut instances only.
    pub ratio_cut: Option<Ratio<T>>,
}

/// `best_known` is the magnitude of the best known energy; `best_known_cut`
/// only applies when `opt` carries a cut value.
pub fn ratio_report<T: Scalar>(
    instance: &IsingInstance<T>,
    opt: &OptResult<T>,
    best_known: Option<T>,
    best_known_cut: Option<T>,
) -> RatioReport<T> {
    let estimate = estimate_informal(instance.n(), instance.sum_of_squares());
    let ratio_cut = match (opt.cut_value, best_known_cut) {
        (Some(cut), Some(best)) => Some(Ratio::of(cut, best)),
        _ => None,
    };
    RatioReport {
        estimate,
        ratio_exp: Ratio::of(opt.qaoa_expectation, estimate),
        ratio_ising: best_known.map(|b| Ratio::of(opt.qaoa_expectation, b.abs())),
        ratio_cut,
    }
}
