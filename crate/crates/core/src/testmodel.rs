//! Error-rate models: rejection probabilities of one-sided two-group tests
//! as a function of the true effect and the alpha level, plus the
//! power-driven sample-size formula.
//!
//! Two test families are modelled:
//!
//! * [`StandardizedEffectModel`] — a standardized mean difference tested
//!   against a boundary `M`, rejecting for large observed effects. With
//!   equal groups and total sample size `n`, the estimated standardized
//!   difference has standard error `2/√n`. Normal mode treats the test
//!   statistic as Gaussian; t mode uses a shifted central t with
//!   `df = n − 2`.
//! * [`RiskDifferenceModel`] — a two-group risk difference tested against a
//!   break-even boundary `M < 0`, rejecting for observed differences below
//!   the expected critical value `M + s·z_α` (benefit is a risk
//!   reduction, so `z_α` is the lower-tail quantile). The null-boundary and
//!   true-effect standard deviations are
//!   `s  = √(2(r1(1−r1) + (r1+M)(1−r1−M))/n)` and
//!   `ss = √(2(r1(1−r1) + r2(1−r2))/n)`.
//!
//! The `n` appearing in the risk-difference formulas is, by convention, the
//! *total* sample size of the equal-group design ("two groups of 1000"
//! means `n = 2000`). [`VarianceConvention::PerGroup`] keeps the alternate
//! per-group reading available for sensitivity comparisons; it does not
//! reproduce the published cost tables.

use crate::specfun::{phi, phi_inv, t_cdf_raw, t_quantile_raw, Probability};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Designs and model types
// ---------------------------------------------------------------------------

/// Equal-allocation two-group design identified by its total sample size.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoGroupDesign {
    n_total: u64,
}

impl TwoGroupDesign {
    /// Total sample size must be even (equal groups) and at least 4.
    pub fn new(n_total: u64) -> Result<Self> {
        if n_total < 4 || n_total % 2 != 0 {
            return Err(Error::Contract(format!(
                "two-group design needs an even total of at least 4, got {n_total}"
            )));
        }
        Ok(Self { n_total })
    }

    pub fn n_total(self) -> u64 {
        self.n_total
    }

    pub fn per_group(self) -> u64 {
        self.n_total / 2
    }

    /// Standard error of the standardized mean difference, `2/√n`.
    pub fn standard_error(self) -> f64 {
        2.0 / (self.n_total as f64).sqrt()
    }
}

/// Whether standardized-model error rates use the normal approximation or
/// a central t with `df = n_total − 2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DfMode {
    #[default]
    Normal,
    StudentT,
}

/// One-sided test of a standardized effect difference against boundary `M`,
/// rejecting when the observed effect exceeds the critical value in the
/// meaningful (upper) direction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StandardizedEffectModel {
    pub design: TwoGroupDesign,
    pub boundary_m: f64,
    pub df_mode: DfMode,
}

impl StandardizedEffectModel {
    pub fn new(design: TwoGroupDesign, boundary_m: f64, df_mode: DfMode) -> Self {
        Self { design, boundary_m, df_mode }
    }

    /// Probability of rejecting the test hypothesis `e ≤ M` when the true
    /// standardized effect is `e`.
    ///
    /// Normal mode: `Φ((e − M)·√n/2 − z_{1−α})`. t mode replaces the normal
    /// CDF/quantile pair with the central t at `df = n − 2`. For `e` inside
    /// the test hypothesis this is the Type I error rate β0(e, α) ≤ α; for
    /// meaningful `e` it is the power `1 − β1(e, α)`.
    pub fn rejection_probability(&self, e: f64, alpha: Probability) -> Result<f64> {
        let a = alpha.get();
        if a <= 0.0 || a >= 1.0 {
            return Err(Error::Domain(format!(
                "rejection probability needs 0 < alpha < 1, got {a}"
            )));
        }
        let shift = (e - self.boundary_m) / self.design.standard_error();
        Ok(match self.df_mode {
            DfMode::Normal => phi(shift - phi_inv(1.0 - a)),
            DfMode::StudentT => {
                let df = (self.design.n_total() - 2) as f64;
                t_cdf_raw(shift - t_quantile_raw(1.0 - a, df), df)
            }
        })
    }
}

/// Which `n` enters the risk-difference s/ss formulas.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VarianceConvention {
    /// `n` = total sample size of the equal-group design (reproduces the
    /// published tables).
    #[default]
    TotalSampleSize,
    /// `n` = per-group size; kept for sensitivity comparison only.
    PerGroup,
}

/// One-sided test of a two-group risk difference against a negative
/// break-even boundary `M`, rejecting for observed differences below
/// `M + s·z_α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RiskDifferenceModel {
    pub r1: Probability,
    pub boundary_m: f64,
    pub per_group_n: u64,
    pub variance: VarianceConvention,
}

impl RiskDifferenceModel {
    pub fn new(
        r1: Probability,
        boundary_m: f64,
        per_group_n: u64,
        variance: VarianceConvention,
    ) -> Result<Self> {
        let r1v = r1.get();
        if !(0.0..=1.0).contains(&(r1v + boundary_m)) || r1v <= 0.0 || r1v >= 1.0 {
            return Err(Error::Contract(format!(
                "risk-difference model needs 0 < r1 < 1 and r1 + M in (0,1); got r1={r1v}, M={boundary_m}"
            )));
        }
        if per_group_n == 0 {
            return Err(Error::Contract("per-group size must be positive".into()));
        }
        Ok(Self { r1, boundary_m, per_group_n, variance })
    }

    fn formula_n(&self) -> f64 {
        match self.variance {
            VarianceConvention::TotalSampleSize => (2 * self.per_group_n) as f64,
            VarianceConvention::PerGroup => self.per_group_n as f64,
        }
    }

    /// Null-boundary and true-effect standard deviations `(s, ss)` for a
    /// treated-group risk `r2`.
    pub fn sds(&self, r2: Probability) -> Result<(f64, f64)> {
        let r2 = r2.get();
        if r2 <= 0.0 || r2 >= 1.0 {
            return Err(Error::Domain(format!("r2 must lie strictly in (0,1), got {r2}")));
        }
        let r1 = self.r1.get();
        let m = self.boundary_m;
        let n = self.formula_n();
        let s = (2.0 * (r1 * (1.0 - r1) + (r1 + m) * (1.0 - r1 - m)) / n).sqrt();
        let ss = (2.0 * (r1 * (1.0 - r1) + r2 * (1.0 - r2)) / n).sqrt();
        Ok((s, ss))
    }

    /// Expected Type II error rate at true risk difference `rd = r2 − r1`,
    /// solving `z_{1−β} = (−d + s·z_α)/ss` with `d = rd − M`.
    pub fn type2_error(&self, rd: f64, alpha: Probability) -> Result<f64> {
        let a = alpha.get();
        if a <= 0.0 || a >= 1.0 {
            return Err(Error::Domain(format!("type2_error needs 0 < alpha < 1, got {a}")));
        }
        let r2 = Probability::new(self.r1.get() + rd)
            .map_err(|_| Error::Domain(format!("rd={rd} puts r2 outside (0,1)")))?;
        let (s, ss) = self.sds(r2)?;
        let d = rd - self.boundary_m;
        let z1mb = (-d + s * phi_inv(a)) / ss;
        Ok(1.0 - phi(z1mb))
    }

    /// Probability of rejecting the test hypothesis `rd ≥ M` when the true
    /// risk difference is `rd`: `Φ((M + s·z_α − rd)/ss)`. Type I error rate
    /// for `rd > M`, power for `rd < M`; complements [`Self::type2_error`].
    pub fn rejection_probability(&self, rd: f64, alpha: Probability) -> Result<f64> {
        let a = alpha.get();
        if a <= 0.0 || a >= 1.0 {
            return Err(Error::Domain(format!(
                "rejection probability needs 0 < alpha < 1, got {a}"
            )));
        }
        let r2 = self.r1.get() + rd;
        // Far-out effects saturate; clamp r2 into (0,1) for the density of
        // the estimator, which only matters where the prevalence mass is.
        let r2 = r2.clamp(1e-12, 1.0 - 1e-12);
        let (s, ss) = self.sds(Probability::new_unchecked(r2))?;
        let crit = self.boundary_m + s * phi_inv(a);
        Ok(phi((crit - rd) / ss))
    }
}

// ---------------------------------------------------------------------------
// Rejection curves
// ---------------------------------------------------------------------------

/// A rejection-probability curve: one model bound to one alpha level,
/// evaluated as a function of the true effect.
#[derive(Debug, Clone, Copy)]
pub struct RejectionCurve<'a, M: ?Sized> {
    pub model: &'a M,
    pub alpha: Probability,
}

impl<'a> RejectionCurve<'a, StandardizedEffectModel> {
    pub fn value(&self, e: f64) -> Result<f64> {
        self.model.rejection_probability(e, self.alpha)
    }
}

impl<'a> RejectionCurve<'a, RiskDifferenceModel> {
    pub fn value(&self, rd: f64) -> Result<f64> {
        self.model.rejection_probability(rd, self.alpha)
    }
}

// ---------------------------------------------------------------------------
// Sample size
// ---------------------------------------------------------------------------

/// Per-group sample size for one-sided level `alpha` and target `power`
/// against a standardized effect `delta`: `ceil(2(z_{1−α} + z_{power})²/δ²)`,
/// floored at 2 per group.
pub fn required_group_size(delta: f64, alpha: Probability, power: Probability) -> Result<u64> {
    let a = alpha.get();
    let p = power.get();
    if !(delta > 0.0) {
        return Err(Error::Domain(format!("delta must be positive, got {delta}")));
    }
    if a <= 0.0 || a >= 1.0 || p <= 0.0 || p >= 1.0 {
        return Err(Error::Domain("alpha and power must lie strictly in (0,1)".into()));
    }
    let z = phi_inv(1.0 - a) + phi_inv(p);
    let raw = 2.0 * z * z / (delta * delta);
    Ok((raw.ceil() as u64).max(2))
}

/// Continuous (un-rounded) version of [`required_group_size`], used for
/// smooth sample-size curves and change-of-variables densities.
pub fn group_size_curve(delta: f64, alpha: f64, power: f64) -> f64 {
    let z = phi_inv(1.0 - alpha) + phi_inv(power);
    2.0 * z * z / (delta * delta)
}
