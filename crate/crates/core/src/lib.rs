//! Exact single-layer (p = 1) QAOA expectation values for Ising problems.
//!
//! The cost `C(s) = Σ h_i s_i + Σ J_ij s_i s_j` is evaluated under the QAOA
//! state `e^{-iβΣX} e^{-iγC} |+…+⟩` in closed form, without simulating the
//! quantum state. On top of that the crate scans and optimizes angle
//! landscapes, evaluates ensemble averages for spin-glass models, estimates
//! optimal energies for normalization, and carries a brute-force state-vector
//! simulator used to check all of the above on small instances.
//!
//! Numerics are generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.

pub mod analytic;
pub mod ensemble;
pub mod error;
pub mod estimate;
pub mod instance;
pub mod landscape;
pub mod oracle;
pub mod refine;
pub mod rng;
pub mod scalar;

pub use error::{Error, Result};
pub use scalar::Scalar;

pub type Instance = instance::IsingInstance<f64>;
pub type Angles = analytic::Angles<f64>;
pub type ExpectationBreakdown = analytic::ExpectationBreakdown<f64>;
pub type GeneratorSpec = instance::GeneratorSpec<f64>;
pub type AngleGrid = landscape::AngleGrid<f64>;
pub type Landscape = landscape::Landscape<f64>;
pub type OptResult = landscape::OptResult<f64>;
pub type EnsembleModel = ensemble::EnsembleModel<f64>;
pub type HeuristicCase = ensemble::HeuristicCase<f64>;
pub type EstimateResult = estimate::EstimateResult<f64>;
