//! Expected total error costs of single- and multi-alpha tests.
//!
//! Dichotomous scenario, single level:
//! `ω(d, α) = C0(1−P)α + C1·P·β(d, α)`.
//!
//! Continuous scenario, single level:
//! `ϖ(p, α) = ∫_E C0(e)β0(e,α)p(e)de + ∫_{R−E} C1(e)β1(e,α)p(e)de`,
//! where `E` is the test-hypothesis (non-meaningful) side of the boundary.
//!
//! Multi-alpha tests at a decreasing ladder α₁ > … > α_k with nondecreasing
//! per-decision costs pay, per level, the cost *difference* between
//! adjacent decisions:
//! `ω = Σ_m ((1−P)ΔC0(m)α_m + P ΔC1(m)β(α_m))`, and the continuous
//! analogue integrates the per-level differences against the prevalence
//! density. When `C1(m) = r·C0(m)` for all m, the multi-alpha cost is a
//! weighted average of the single-level costs with weights
//! `ΔC0(m)/C0(k)`; for surprisal-proportional schedules the weights reduce
//! to `(log₂α_m − log₂α_{m−1})/log₂α_k`.

use crate::scenario::{
    AlphaLadder, ContinuousPrevalence, CostSchedule, DichotomousPrevalence, MeaningfulSide,
};
use crate::specfun::Probability;
use crate::testmodel::{RiskDifferenceModel, StandardizedEffectModel};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Model abstraction
// ---------------------------------------------------------------------------

/// A test model exposing the probability of rejecting the test hypothesis
/// as a function of the true effect.
pub trait RejectionModel {
    fn rejection_probability(&self, e: f64, alpha: Probability) -> Result<f64>;
}

impl RejectionModel for StandardizedEffectModel {
    fn rejection_probability(&self, e: f64, alpha: Probability) -> Result<f64> {
        StandardizedEffectModel::rejection_probability(self, e, alpha)
    }
}

impl RejectionModel for RiskDifferenceModel {
    fn rejection_probability(&self, e: f64, alpha: Probability) -> Result<f64> {
        RiskDifferenceModel::rejection_probability(self, e, alpha)
    }
}

/// Effect-dependent Type I cost and Type II payoff functions.
pub trait EffectCosts {
    fn type1_cost(&self, e: f64) -> f64;
    fn type2_cost(&self, e: f64) -> f64;
}

/// Costs independent of the effect size.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstantCosts {
    pub c0: f64,
    pub c1: f64,
}

impl EffectCosts for ConstantCosts {
    fn type1_cost(&self, _e: f64) -> f64 {
        self.c0
    }
    fn type2_cost(&self, _e: f64) -> f64 {
        self.c1
    }
}

/// A base cost function scaled by a per-level factor, realizing
/// `ΔC(m; e) = c(e)·Δλ_m`.
#[derive(Debug, Clone, Copy)]
pub struct ScaledCosts<'a, C: ?Sized> {
    pub base: &'a C,
    pub factor: f64,
}

impl<'a, C: EffectCosts + ?Sized> EffectCosts for ScaledCosts<'a, C> {
    fn type1_cost(&self, e: f64) -> f64 {
        self.factor * self.base.type1_cost(e)
    }
    fn type2_cost(&self, e: f64) -> f64 {
        self.factor * self.base.type2_cost(e)
    }
}

// ---------------------------------------------------------------------------
// Compensated summation
// ---------------------------------------------------------------------------

/// Neumaier compensated accumulator; sums are taken in index order so that
/// results do not depend on scheduling.
#[derive(Debug, Clone, Copy, Default)]
pub struct KahanSum {
    sum: f64,
    comp: f64,
}

impl KahanSum {
    pub fn add(&mut self, v: f64) {
        let t = self.sum + v;
        if self.sum.abs() >= v.abs() {
            self.comp += (self.sum - t) + v;
        } else {
            self.comp += (v - t) + self.sum;
        }
        self.sum = t;
    }

    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

// ---------------------------------------------------------------------------
// Quadrature
// ---------------------------------------------------------------------------

/// Adaptive composite Simpson rule with Richardson error control.
///
/// The cost integrands are smooth except for a kink at the meaningful-effect
/// boundary, so integration domains are split there and truncated at
/// mean ± 8 sd (mass beyond is below 1e-15 of the total).
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub abs_tol: f64,
    pub max_depth: u32,
}

impl Default for Quadrature {
    fn default() -> Self {
        Self { abs_tol: 1e-10, max_depth: 48 }
    }
}

impl Quadrature {
    pub fn integrate<F: Fn(f64) -> f64>(&self, f: F, a: f64, b: f64) -> Result<f64> {
        if !(a.is_finite() && b.is_finite()) {
            return Err(Error::Numerical(format!("non-finite bounds [{a}, {b}]")));
        }
        if a >= b {
            return Ok(0.0);
        }
        let fa = f(a);
        let fb = f(b);
        let m = 0.5 * (a + b);
        let fm = f(m);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        let v = self.adaptive(&f, a, b, fa, fm, fb, whole, self.abs_tol, self.max_depth)?;
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Numerical(format!("integral over [{a}, {b}] is not finite")))
        }
    }

    /// Integrate over `[a, b]` split at every interior point of `splits`.
    pub fn integrate_split<F: Fn(f64) -> f64 + Copy>(
        &self,
        f: F,
        a: f64,
        b: f64,
        splits: &[f64],
    ) -> Result<f64> {
        let mut pts = vec![a];
        for &s in splits {
            if s > a && s < b {
                pts.push(s);
            }
        }
        pts.push(b);
        pts.sort_by(|x, y| x.partial_cmp(y).unwrap());
        let mut acc = KahanSum::default();
        for w in pts.windows(2) {
            acc.add(self.integrate(f, w[0], w[1])?);
        }
        Ok(acc.value())
    }

    #[allow(clippy::too_many_arguments)]
    fn adaptive<F: Fn(f64) -> f64>(
        &self,
        f: &F,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: u32,
    ) -> Result<f64> {
        let m = 0.5 * (a + b);
        let lm = 0.5 * (a + m);
        let rm = 0.5 * (m + b);
        let flm = f(lm);
        let frm = f(rm);
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let two = left + right;
        let err = two - whole;
        if err.abs() <= 15.0 * tol || b - a < 1e-14 * (1.0 + a.abs()) {
            return Ok(two + err / 15.0);
        }
        if depth == 0 {
            return Err(Error::Numerical(format!(
                "quadrature failed to converge on [{a}, {b}] (estimated error {:.3e})",
                err.abs() / 15.0
            )));
        }
        let l = self.adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)?;
        let r = self.adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)?;
        Ok(l + r)
    }
}

// ---------------------------------------------------------------------------
// Cost breakdown
// ---------------------------------------------------------------------------

/// Expected-cost decomposition of a (possibly multi-alpha) test.
#[derive(Debug, Clone, PartialEq)]
pub struct CostBreakdown {
    /// Expected Type I cost ω₀.
    pub omega0: f64,
    /// Expected Type II cost ω₁.
    pub omega1: f64,
    /// ω₀ + ω₁.
    pub total: f64,
    /// Single-level expected costs at each ladder level, computed with the
    /// top-level costs C0(k), C1(k).
    pub per_level: Vec<f64>,
    /// Weighted-average weights when the schedule is level-proportional.
    pub weights: Option<Vec<f64>>,
}

// ---------------------------------------------------------------------------
// Single-level costs
// ---------------------------------------------------------------------------

/// Expected total error cost of a single-level test in the dichotomous
/// scenario.
pub fn cost_single_dichotomous<M: RejectionModel>(
    prev: &DichotomousPrevalence,
    model: &M,
    alpha: Probability,
    c0: f64,
    c1: f64,
) -> Result<f64> {
    let p = prev.p_true.get();
    let beta = 1.0 - model.rejection_probability(prev.effect_true, alpha)?;
    Ok(c0 * (1.0 - p) * alpha.get() + c1 * p * beta)
}

fn sides(prev: &ContinuousPrevalence) -> ((f64, f64), (f64, f64)) {
    // Returns ((null-side lo, hi), (meaningful-side lo, hi)) clipped to the
    // support window.
    let (lo, hi) = prev.support();
    let m = prev.boundary_m.clamp(lo, hi);
    match prev.meaningful {
        MeaningfulSide::Above => ((lo, m), (m, hi)),
        MeaningfulSide::Below => ((m, hi), (lo, m)),
    }
}

/// Expected total error cost of a single-level test in the continuous
/// scenario, by adaptive quadrature against the prevalence density.
pub fn cost_single_continuous<M: RejectionModel, C: EffectCosts + ?Sized>(
    prev: &ContinuousPrevalence,
    model: &M,
    alpha: Probability,
    costs: &C,
) -> Result<f64> {
    // Surface domain errors (bad alpha, degenerate model) before handing an
    // infallible closure to the integrator.
    model.rejection_probability(prev.mean, alpha)?;
    let quad = Quadrature::default();
    let ((nlo, nhi), (mlo, mhi)) = sides(prev);
    let type1 = quad.integrate(
        |e| {
            costs.type1_cost(e)
                * model.rejection_probability(e, alpha).expect("validated model")
                * prev.density_at(e)
        },
        nlo,
        nhi,
    )?;
    let type2 = quad.integrate(
        |e| {
            costs.type2_cost(e)
                * (1.0 - model.rejection_probability(e, alpha).expect("validated model"))
                * prev.density_at(e)
        },
        mlo,
        mhi,
    )?;
    Ok(type1 + type2)
}

// ---------------------------------------------------------------------------
// Multi-alpha costs
// ---------------------------------------------------------------------------

/// Expected total error cost of a multi-alpha test in the dichotomous
/// scenario, with its ω₀/ω₁ decomposition and per-level single-test costs.
pub fn cost_multi_dichotomous<M: RejectionModel>(
    prev: &DichotomousPrevalence,
    model: &M,
    ladder: &AlphaLadder,
    sched: &CostSchedule,
) -> Result<CostBreakdown> {
    if ladder.len() != sched.len() {
        return Err(Error::Contract(format!(
            "ladder has {} levels but schedule has {}",
            ladder.len(),
            sched.len()
        )));
    }
    let p = prev.p_true.get();
    let mut omega0 = KahanSum::default();
    let mut omega1 = KahanSum::default();
    for m in 0..ladder.len() {
        let alpha = ladder.level(m);
        let beta = 1.0 - model.rejection_probability(prev.effect_true, alpha)?;
        omega0.add((1.0 - p) * sched.delta_c0(m) * alpha.get());
        omega1.add(p * sched.delta_c1(m) * beta);
    }
    let (c0k, c1k) = sched.totals();
    let per_level = ladder
        .levels()
        .iter()
        .map(|&a| cost_single_dichotomous(prev, model, a, c0k, c1k))
        .collect::<Result<Vec<_>>>()?;
    let omega0 = omega0.value();
    let omega1 = omega1.value();
    Ok(CostBreakdown {
        omega0,
        omega1,
        total: omega0 + omega1,
        per_level,
        weights: weighted_decomposition(ladder, sched).ok(),
    })
}

/// Expected total error cost of a multi-alpha test in the continuous
/// scenario. `level_diff_costs[m]` holds the per-level cost *differences*
/// ΔC0(m; e), ΔC1(m; e).
pub fn cost_multi_continuous<M: RejectionModel, C: EffectCosts>(
    prev: &ContinuousPrevalence,
    model: &M,
    ladder: &AlphaLadder,
    level_diff_costs: &[C],
) -> Result<CostBreakdown> {
    if ladder.len() != level_diff_costs.len() {
        return Err(Error::Contract(format!(
            "ladder has {} levels but {} cost levels were supplied",
            ladder.len(),
            level_diff_costs.len()
        )));
    }
    model.rejection_probability(prev.mean, ladder.level(0))?;
    let quad = Quadrature::default();
    let ((nlo, nhi), (mlo, mhi)) = sides(prev);
    let mut omega0 = KahanSum::default();
    let mut omega1 = KahanSum::default();
    for (m, dc) in level_diff_costs.iter().enumerate() {
        let alpha = ladder.level(m);
        omega0.add(quad.integrate(
            |e| {
                dc.type1_cost(e)
                    * model.rejection_probability(e, alpha).expect("validated model")
                    * prev.density_at(e)
            },
            nlo,
            nhi,
        )?);
        omega1.add(quad.integrate(
            |e| {
                dc.type2_cost(e)
                    * (1.0 - model.rejection_probability(e, alpha).expect("validated model"))
                    * prev.density_at(e)
            },
            mlo,
            mhi,
        )?);
    }
    // Top-level totals C(k; e) = sum of the per-level differences.
    let totals = SummedCosts { levels: level_diff_costs };
    let per_level = ladder
        .levels()
        .iter()
        .map(|&a| cost_single_continuous(prev, model, a, &totals))
        .collect::<Result<Vec<_>>>()?;
    let omega0 = omega0.value();
    let omega1 = omega1.value();
    Ok(CostBreakdown {
        omega0,
        omega1,
        total: omega0 + omega1,
        per_level,
        weights: None,
    })
}

struct SummedCosts<'a, C> {
    levels: &'a [C],
}

impl<'a, C: EffectCosts> EffectCosts for SummedCosts<'a, C> {
    fn type1_cost(&self, e: f64) -> f64 {
        self.levels.iter().map(|c| c.type1_cost(e)).sum()
    }
    fn type2_cost(&self, e: f64) -> f64 {
        self.levels.iter().map(|c| c.type2_cost(e)).sum()
    }
}

/// Multi-alpha continuous cost for level-proportional per-level costs
/// `ΔC_i(m; e) = c_i(e)·Δλ_m` with Δλ_m > 0. By linearity, expression (7)
/// factors into per-level unit integrals times the Δλ's, so the
/// weighted-average identity against the per-level single costs holds to
/// machine precision rather than quadrature tolerance.
pub fn cost_multi_continuous_proportional<M: RejectionModel, C: EffectCosts + ?Sized>(
    prev: &ContinuousPrevalence,
    model: &M,
    ladder: &AlphaLadder,
    base: &C,
    dlambda: &[f64],
) -> Result<CostBreakdown> {
    if ladder.len() != dlambda.len() {
        return Err(Error::Contract(format!(
            "ladder has {} levels but {} level factors were supplied",
            ladder.len(),
            dlambda.len()
        )));
    }
    if dlambda.iter().any(|&d| !(d > 0.0) || !d.is_finite()) {
        return Err(Error::Contract("level factors must be positive".into()));
    }
    model.rejection_probability(prev.mean, ladder.level(0))?;
    let quad = Quadrature::default();
    let ((nlo, nhi), (mlo, mhi)) = sides(prev);
    let lambda_k: f64 = dlambda.iter().sum();
    let mut omega0 = KahanSum::default();
    let mut omega1 = KahanSum::default();
    let mut per_level = Vec::with_capacity(ladder.len());
    for (m, &d) in dlambda.iter().enumerate() {
        let alpha = ladder.level(m);
        let unit0 = quad.integrate(
            |e| {
                base.type1_cost(e)
                    * model.rejection_probability(e, alpha).expect("validated model")
                    * prev.density_at(e)
            },
            nlo,
            nhi,
        )?;
        let unit1 = quad.integrate(
            |e| {
                base.type2_cost(e)
                    * (1.0 - model.rejection_probability(e, alpha).expect("validated model"))
                    * prev.density_at(e)
            },
            mlo,
            mhi,
        )?;
        omega0.add(d * unit0);
        omega1.add(d * unit1);
        per_level.push(lambda_k * (unit0 + unit1));
    }
    let omega0 = omega0.value();
    let omega1 = omega1.value();
    Ok(CostBreakdown {
        omega0,
        omega1,
        total: omega0 + omega1,
        per_level,
        weights: Some(dlambda.iter().map(|&d| d / lambda_k).collect()),
    })
}

/// Multi-alpha continuous cost for surprisal-proportional per-level costs:
/// `C_i(m; e) = c_i(e)·log₂(α_m)/log₂(α_k)`, so that the level-k cost
/// equals the base cost function. Returns the breakdown with the surprisal
/// weights attached.
pub fn cost_multi_continuous_surprisal<M: RejectionModel, C: EffectCosts + ?Sized>(
    prev: &ContinuousPrevalence,
    model: &M,
    ladder: &AlphaLadder,
    base: &C,
) -> Result<CostBreakdown> {
    cost_multi_continuous_proportional(prev, model, ladder, base, &surprisal_weights(ladder))
}

/// Surprisal weights `(log₂α_m − log₂α_{m−1})/log₂α_k` (with α₀ = 1); they
/// sum to one for any ladder.
pub fn surprisal_weights(ladder: &AlphaLadder) -> Vec<f64> {
    let lk = ladder.level(ladder.len() - 1).get().log2();
    (0..ladder.len())
        .map(|m| {
            let lm = ladder.level(m).get().log2();
            let lprev = if m == 0 { 0.0 } else { ladder.level(m - 1).get().log2() };
            (lm - lprev) / lk
        })
        .collect()
}

/// Weighted-average decomposition of a proportional cost schedule:
/// `weight_m = ΔC0(m)/C0(k)`. Errors if `C1` is not an elementwise
/// multiple of `C0`.
pub fn weighted_decomposition(ladder: &AlphaLadder, sched: &CostSchedule) -> Result<Vec<f64>> {
    if ladder.len() != sched.len() {
        return Err(Error::Contract(format!(
            "ladder has {} levels but schedule has {}",
            ladder.len(),
            sched.len()
        )));
    }
    let (c0k, c1k) = sched.totals();
    if c0k <= 0.0 {
        return Err(Error::Contract("top-level Type I cost must be positive".into()));
    }
    let r = c1k / c0k;
    for m in 0..sched.len() {
        let want = r * sched.c0()[m];
        let got = sched.c1()[m];
        if (got - want).abs() > 1e-9 * want.abs().max(1.0) {
            return Err(Error::Contract(format!(
                "schedule is not proportional: C1({})/C0({}) = {:.12} but C1(k)/C0(k) = {:.12}",
                m + 1,
                m + 1,
                got / sched.c0()[m],
                r
            )));
        }
    }
    Ok((0..sched.len()).map(|m| sched.delta_c0(m) / c0k).collect())
}
