//! Expected error costs of hypothesis tests at single and multiple alpha levels.
//!
//! The engine computes expected total Type I + Type II error costs for
//! one-sided tests, under dichotomous or continuous (normal) prevalence
//! models of true effect sizes. Tests may run at a single alpha level or
//! simultaneously at a decreasing ladder of levels, with per-level costs;
//! when per-level costs are proportional across levels, the multi-alpha
//! cost is a surprisal-weighted average of the single-level costs.
//!
//! Modules map onto the engine's subsystems:
//!
//! * [`specfun`] — normal / Student-t CDFs and quantiles, incomplete beta,
//!   surprisal values.
//! * [`testmodel`] — rejection-probability models (standardized two-group
//!   z/t tests, two-group risk-difference tests) and the power-driven
//!   sample-size formula.
//! * [`scenario`] — prevalence models, alpha ladders, cost schedules, and
//!   the seeded random-cost generator.
//! * [`costengine`] — expected-cost computation (single and multi level,
//!   dichotomous and continuous) plus the weighted-average decomposition.
//! * [`alphasel`] — optimal-alpha search and the surprisal mappings between
//!   costs, ladders, and population scale.
//! * [`studies`] — parameterized reproductions of published cost tables and
//!   the random-cost simulation harness.
//! * [`report`] — table rendering, multi-level confidence intervals,
//!   finding statements, and SVG scenario plots.

pub mod alphasel;
pub mod costengine;
pub mod report;
pub mod rng;
pub mod scenario;
pub mod specfun;
pub mod studies;
pub mod testmodel;

pub use alphasel::{ladder_from_costs, optimal_alpha, population_scale, Optimum, SearchBounds};
pub use costengine::{
    cost_multi_continuous, cost_multi_continuous_proportional, cost_multi_continuous_surprisal,
    cost_multi_dichotomous, cost_single_continuous, cost_single_dichotomous,
    weighted_decomposition, CostBreakdown, EffectCosts, Quadrature,
};
pub use scenario::{
    random_costs, surprisal_costs, AlphaLadder, ContinuousPrevalence, CostSchedule,
    DichotomousPrevalence, MeaningfulSide,
};
pub use specfun::{DegreesOfFreedom, Probability};
pub use testmodel::{
    required_group_size, DfMode, RiskDifferenceModel, StandardizedEffectModel, TwoGroupDesign,
    VarianceConvention,
};

use thiserror::Error;

/// Engine-wide error type. The CLI maps `Domain`/`Contract` to exit code 2
/// and `Numerical` to exit code 3.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// An argument fell outside the mathematical domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// Structurally valid inputs violated a cross-argument contract.
    #[error("contract error: {0}")]
    Contract(String),
    /// A numerical method failed to converge or lost its error bound.
    #[error("numerical error: {0}")]
    Numerical(String),
}

pub type Result<T> = std::result::Result<T, Error>;
