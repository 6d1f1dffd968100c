//! Ensemble-averaged energy per spin for Sherrington-Kirkpatrick and
//! regular-graph spin glasses, their optimal angles, and the γ_min
//! approximations for `±h` / `±J` regular-graph instances.
//!
//! All optima minimize the energy per spin (most negative value).

use crate::analytic::Angles;
use crate::error::{Error, Result};
use crate::landscape::AngleGrid;
use crate::refine::{multistart, Candidate, RefineOptions};
use crate::scalar::Scalar;

/// Coupling/field distribution the average is taken over.
///
/// SK couplings are `J'/√(n−1)` with `Var J' = σ²`; regular-graph couplings
/// are `N(0, σ²/d)` on a `d`-regular graph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EnsembleModel<T> {
    SkGaussian {
        sigma: T,
    },
    /// `J' = ±σ` with equal probability, finite `n`.
    SkBimodal {
        sigma: T,
        n: usize,
    },
    /// `J ∈ {−1, 0, +1}` with `P(±1) = d/(2n−2)`, finite `n`.
    SkTrimodal {
        d: T,
        n: usize,
    },
    /// The `n → ∞` limit of the trimodal ensemble.
    SkTrimodalLimit {
        d: T,
    },
    /// Gaussian couplings plus a constant field `h` on every spin.
    SkConstantField {
        sigma: T,
        h: T,
    },
    /// Gaussian couplings plus fields `h ~ N(0, σ²)`.
    SkNormalField {
        sigma: T,
    },
    RegularGaussian {
        sigma: T,
        d: usize,
        n: usize,
    },
    RegularGaussianField {
        sigma: T,
        d: usize,
        n: usize,
    },
}

fn positive<T: Scalar>(x: T, what: &str) -> Result<()> {
    if x > T::zero() && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Parameter(format!(
            "{what} must be positive and finite"
        )))
    }
}

fn sizes<T: Scalar>(d: T, n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::Parameter(format!("n = {n} must be at least 2")));
    }
    if !(d >= T::one() && d <= T::count(n - 1)) {
        return Err(Error::Parameter(format!(
            "degree must lie in [1, {}]",
            n - 1
        )));
    }
    Ok(())
}

impl<T: Scalar> EnsembleModel<T> {
    pub fn validate(&self) -> Result<()> {
        match *self {
            Self::SkGaussian { sigma } | Self::SkNormalField { sigma } => positive(sigma, "sigma"),
            Self::SkBimodal { sigma, n } => {
                positive(sigma, "sigma")?;
                if n < 2 {
                    return Err(Error::Parameter(format!("n = {n} must be at least 2")));
                }
                Ok(())
            }
            Self::SkTrimodal { d, n } => sizes(d, n),
            Self::SkTrimodalLimit { d } => positive(d, "d"),
            Self::SkConstantField { sigma, h } => {
                positive(sigma, "sigma")?;
                if h.is_finite() {
                    Ok(())
                } else {
                    Err(Error::Parameter("field must be finite".into()))
                }
            }
            Self::RegularGaussian { sigma, d, n } | Self::RegularGaussianField { sigma, d, n } => {
                positive(sigma, "sigma")?;
                sizes(T::count(d), n)
            }
        }
    }

    /// Largest weight scale, used to size the numeric search window in γ.
    fn weight_scale(&self) -> T {
        match *self {
            Self::SkGaussian { sigma }
            | Self::SkBimodal { sigma, .. }
            | Self::SkNormalField { sigma }
            | Self::RegularGaussian { sigma, .. }
            | Self::RegularGaussianField { sigma, .. } => sigma,
            Self::SkTrimodal { .. } | Self::SkTrimodalLimit { .. } => T::one(),
            Self::SkConstantField { sigma, h } => sigma.max(h.abs()),
        }
    }
}

/// `E[<C/n>]` for the model at `angles`.
pub fn ensemble_energy_per_spin<T: Scalar>(
    model: &EnsembleModel<T>,
    angles: Angles<T>,
) -> Result<T> {
    model.validate()?;
    Ok(energy_unchecked(model, angles.beta, angles.gamma))
}

fn energy_unchecked<T: Scalar>(model: &EnsembleModel<T>, beta: T, gamma: T) -> T {
    let (one, two, half) = (T::one(), T::lit(2.0), T::lit(0.5));
    let sin2b = (two * beta).sin();
    let sin4b = (T::lit(4.0) * beta).sin();
    let gauss = |sigma: T, k: T| gamma * sigma * sigma * (-k * gamma * gamma * sigma * sigma).exp();
    let powi = |x: T, k: usize| x.powi(i32::try_from(k).expect("n fits in i32"));
    match *model {
        EnsembleModel::SkGaussian { sigma } => sin4b * gauss(sigma, two),
        EnsembleModel::SkBimodal { sigma, n } => {
            let root = T::count(n - 1).sqrt();
            let x = two * gamma * sigma / root;
            half * sin4b * sigma * root * x.sin() * powi(x.cos(), n - 2)
        }
        EnsembleModel::SkTrimodal { d, n } => {
            let p = d / T::count(n - 1);
            half * sin4b * d * (two * gamma).sin() * powi(one - p + p * (two * gamma).cos(), n - 2)
        }
        EnsembleModel::SkTrimodalLimit { d } => {
            let s = gamma.sin();
            half * sin4b * d * (two * gamma).sin() * (-two * d * s * s).exp()
        }
        EnsembleModel::SkConstantField { sigma, h } => {
            (gamma * sigma * sigma * (two * h * gamma).cos() * sin4b
                + h * sin2b * (two * h * gamma).sin())
                * (-two * gamma * gamma * sigma * sigma).exp()
        }
        EnsembleModel::SkNormalField { sigma } => (two * sin2b + sin4b) * gauss(sigma, T::lit(4.0)),
        EnsembleModel::RegularGaussian { sigma, d, n } => {
            sin4b * (T::count(n - 1) / T::count(d)) * gauss(sigma, two)
        }
        EnsembleModel::RegularGaussianField { sigma, d, n } => {
            (two * sin2b + T::count(n - 1) / T::count(d) * sin4b) * gauss(sigma, T::lit(4.0))
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnsembleOptimum<T> {
    pub beta: T,
    pub gamma: T,
    pub value: T,
}

/// Minimizing angles and value; closed forms where they exist, otherwise a
/// grid scan with multi-start simplex refinement.
pub fn ensemble_optimal<T: Scalar>(model: &EnsembleModel<T>) -> Result<EnsembleOptimum<T>> {
    model.validate()?;
    let (two, e) = (T::lit(2.0), T::one().exp());
    match *model {
        EnsembleModel::SkGaussian { sigma } => Ok(EnsembleOptimum {
            beta: -T::FRAC_PI_8(),
            gamma: T::one() / (two * sigma),
            value: -sigma / (two * e.sqrt()),
        }),
        EnsembleModel::SkNormalField { sigma } => Ok(EnsembleOptimum {
            beta: -T::FRAC_PI_6(),
            gamma: T::one() / (two * two.sqrt() * sigma),
            value: -T::lit(0.75) * (T::lit(3.0) / (two * e)).sqrt() * sigma,
        }),
        EnsembleModel::RegularGaussian { sigma, d, n } => regular_optimal(sigma, d, n),
        _ => Ok(numeric_optimum(model)),
    }
}

fn numeric_optimum<T: Scalar>(model: &EnsembleModel<T>) -> EnsembleOptimum<T> {
    let pi = T::PI();
    let grid = AngleGrid {
        beta_min: -pi / T::lit(2.0),
        beta_max: pi / T::lit(2.0),
        gamma_min: T::zero(),
        gamma_max: pi / (T::lit(2.0) * model.weight_scale()),
        beta_steps: 101,
        gamma_steps: 201,
    };
    let objective = |beta: T, gamma: T| energy_unchecked(model, beta, gamma);
    let cells: Vec<Candidate<T>> = (0..grid.beta_steps)
        .flat_map(|r| (0..grid.gamma_steps).map(move |c| (grid.beta(r), grid.gamma(c))))
        .map(|(beta, gamma)| Candidate {
            beta,
            gamma,
            value: objective(beta, gamma),
        })
        .collect();
    let step = (grid.beta_spacing(), grid.gamma_spacing());
    let best = multistart(&objective, &cells, step, &RefineOptions::default())
        .expect("grid is nonempty")
        .best;
    EnsembleOptimum {
        beta: best.beta,
        gamma: best.gamma,
        value: best.value,
    }
}

/// Closed-form optimum of the Gaussian regular-graph ensemble.
pub fn regular_optimal<T: Scalar>(sigma: T, d: usize, n: usize) -> Result<EnsembleOptimum<T>> {
    positive(sigma, "sigma")?;
    sizes(T::count(d), n)?;
    let two = T::lit(2.0);
    Ok(EnsembleOptimum {
        beta: -T::FRAC_PI_8(),
        gamma: T::one() / (two * sigma),
        value: -(T::count(n - 1) / T::count(d)) * sigma / (two * T::one().exp().sqrt()),
    })
}

/// Weight pattern on a `d`-regular graph for the γ_min approximations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum HeuristicCase<T> {
    /// `h_i, J_ij ∈ {−h, h}`.
    EqualScale { h: T, d: usize },
    /// `h_i ∈ {−rJ, rJ}`, `J_ij ∈ {−J, J}`.
    FieldDominant { r: u32, coupling: T, d: usize },
    /// `h_i ∈ {−h, h}`, `J_ij ∈ {−rh, rh}`.
    CouplingDominant { r: u32, h: T, d: usize },
}

impl<T: Scalar> HeuristicCase<T> {
    fn validate(&self) -> Result<()> {
        let (scale, d, r) = match *self {
            Self::EqualScale { h, d } => (h, d, 1),
            Self::FieldDominant { r, coupling, d } => (coupling, d, r),
            Self::CouplingDominant { r, h, d } => (h, d, r),
        };
        positive(scale, "weight scale")?;
        if d == 0 {
            return Err(Error::Parameter("degree must be at least 1".into()));
        }
        if r == 0 {
            return Err(Error::Parameter("ratio r must be at least 1".into()));
        }
        Ok(())
    }
}

fn atan_inv_sqrt<T: Scalar>(d: usize) -> T {
    (T::one() / T::count(d).sqrt()).atan()
}

/// Approximate γ_min candidates, ascending. They seed or sanity-check a
/// search; the optimizer stays authoritative.
pub fn gamma_min_heuristic<T: Scalar>(case: &HeuristicCase<T>) -> Result<Vec<T>> {
    case.validate()?;
    let two = T::lit(2.0);
    Ok(match *case {
        HeuristicCase::EqualScale { h, d } => {
            let a = atan_inv_sqrt::<T>(d);
            vec![a / (two * h), (T::PI() - a) / (two * h)]
        }
        HeuristicCase::FieldDominant { r, coupling, d } => {
            let r_t = T::from_u32(r).expect("r converts");
            if r <= 5 {
                let shrink = T::one() - T::lit(0.15) * (r_t - T::one());
                vec![(shrink / T::count(d).sqrt()).atan() / (two * coupling)]
            } else {
                vec![atan_inv_sqrt::<T>(d) / (two * r_t.powf(T::lit(0.6)) * coupling)]
            }
        }
        HeuristicCase::CouplingDominant { r, h, d } => {
            let r_t = T::from_u32(r).expect("r converts");
            vec![atan_inv_sqrt::<T>(d) / (two * r_t * h)]
        }
    })
}

/// Single-vertex contribution at the approximate optimum.
pub fn ci_at_heuristic_optimum<T: Scalar>(case: &HeuristicCase<T>) -> Result<T> {
    case.validate()?;
    let one = T::one();
    match *case {
        HeuristicCase::EqualScale { d, .. } => {
            let d_t = T::count(d);
            Ok(d_t.sqrt() / (d_t + one) * (one + one / d_t).powf(-(d_t - one) / T::lit(2.0)))
        }
        HeuristicCase::CouplingDominant { r, d, .. } => {
            let d_t = T::count(d);
            let r_t = T::from_u32(r).expect("r converts");
            Ok((one + one / d_t).powf(-d_t / T::lit(2.0)) * (atan_inv_sqrt::<T>(d) / r_t).sin())
        }
        HeuristicCase::FieldDominant { .. } => Err(Error::UnsupportedCase(
            "no closed form for the field-dominant case".into(),
        )),
    }
}

/// Whether `E[nJ^r]` settles to `σ² > 0` for `r = 2` and to 0 for
/// `r = 3..=max_order` along `ns` (ascending), within `tolerance`.
///
/// `moment(r, n)` returns `E[nJ^r]` at system size `n`. When this holds, the
/// Gaussian SK result applies in the large-n limit.
pub fn moment_condition_check<T: Scalar>(
    moment: impl Fn(u32, T) -> T,
    max_order: u32,
    ns: &[T],
    tolerance: T,
) -> bool {
    let [.., previous, last] = ns else {
        return false;
    };
    let variance = moment(2, *last);
    if variance <= tolerance
        || variance.is_nan()
        || (variance - moment(2, *previous)).abs() > tolerance
    {
        return false;
    }
    (3..=max_order).all(|r| moment(r, *last).abs() <= tolerance)
}
