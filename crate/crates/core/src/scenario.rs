//! Prevalence models of true effects, alpha ladders, cost schedules, and
//! the seeded random-cost generator.

use crate::rng::Xoshiro256PlusPlus;
use crate::specfun::{normal_pdf, phi, surprisal, Probability};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

// ---------------------------------------------------------------------------
// Prevalence models
// ---------------------------------------------------------------------------

/// Two-point prevalence: proportion `p_true` of research hypotheses are
/// true with effect `effect_true`; the rest sit at `effect_null`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DichotomousPrevalence {
    pub p_true: Probability,
    pub effect_true: f64,
    pub effect_null: f64,
}

/// Side of the boundary on which effects are practically meaningful.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeaningfulSide {
    /// Effects above the boundary are meaningful (standardized gains).
    Above,
    /// Effects below the boundary are meaningful (risk reductions).
    Below,
}

/// Normal prevalence density of true effect sizes with a meaningful-effect
/// boundary.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ContinuousPrevalence {
    pub mean: f64,
    pub sd: f64,
    pub boundary_m: f64,
    pub meaningful: MeaningfulSide,
}

impl ContinuousPrevalence {
    pub fn new(mean: f64, sd: f64, boundary_m: f64, meaningful: MeaningfulSide) -> Result<Self> {
        if !(sd > 0.0 && sd.is_finite()) {
            return Err(Error::Domain(format!("prevalence sd must be positive, got {sd}")));
        }
        Ok(Self { mean, sd, boundary_m, meaningful })
    }

    /// Density value at effect `e`.
    pub fn density_at(&self, e: f64) -> f64 {
        normal_pdf((e - self.mean) / self.sd) / self.sd
    }

    /// Mass of the density on the meaningful side of the boundary.
    pub fn meaningful_probability(&self) -> Probability {
        let z = (self.boundary_m - self.mean) / self.sd;
        let below = phi(z);
        Probability::new_unchecked(match self.meaningful {
            MeaningfulSide::Above => 1.0 - below,
            MeaningfulSide::Below => below,
        })
    }

    /// Integration window covering all but ~1e-15 of the mass.
    pub fn support(&self) -> (f64, f64) {
        (self.mean - 8.0 * self.sd, self.mean + 8.0 * self.sd)
    }
}

// ---------------------------------------------------------------------------
// Alpha ladders
// ---------------------------------------------------------------------------

/// Strictly decreasing one-sided alpha levels α₁ > … > α_k, with the
/// implicit sentinel α_{k+1} = 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct AlphaLadder {
    levels: Vec<Probability>,
}

impl AlphaLadder {
    pub fn new(levels: Vec<f64>) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Contract("alpha ladder must have at least one level".into()));
        }
        let mut out = Vec::with_capacity(levels.len());
        let mut prev = 1.0;
        for &a in &levels {
            if !(a > 0.0 && a < 1.0) {
                return Err(Error::Contract(format!("ladder levels must lie in (0,1), got {a}")));
            }
            if a >= prev {
                return Err(Error::Contract(format!(
                    "ladder must be strictly decreasing, got {a} after {prev}"
                )));
            }
            out.push(Probability::new_unchecked(a));
            prev = a;
        }
        Ok(Self { levels: out })
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn levels(&self) -> &[Probability] {
        &self.levels
    }

    pub fn level(&self, m: usize) -> Probability {
        self.levels[m]
    }

    /// α_{m+1} with the sentinel α_{k+1} = 0.
    pub fn next_level_or_zero(&self, m: usize) -> f64 {
        self.levels.get(m + 1).map_or(0.0, |p| p.get())
    }
}

impl TryFrom<Vec<f64>> for AlphaLadder {
    type Error = Error;
    fn try_from(v: Vec<f64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<AlphaLadder> for Vec<f64> {
    fn from(l: AlphaLadder) -> Vec<f64> {
        l.levels.iter().map(|p| p.get()).collect()
    }
}

// ---------------------------------------------------------------------------
// Cost schedules
// ---------------------------------------------------------------------------

/// Per-decision Type I costs `C0(1..k)` and Type II payoffs `C1(1..k)`,
/// both nondecreasing, with the implicit `C0(0) = C1(0) = 0`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostSchedule {
    c0: Vec<f64>,
    c1: Vec<f64>,
}

impl CostSchedule {
    pub fn new(c0: Vec<f64>, c1: Vec<f64>) -> Result<Self> {
        if c0.len() != c1.len() || c0.is_empty() {
            return Err(Error::Contract(format!(
                "cost schedule needs equal nonempty lengths, got {} and {}",
                c0.len(),
                c1.len()
            )));
        }
        for seq in [&c0, &c1] {
            let mut prev = 0.0;
            for &v in seq.iter() {
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Contract(format!("costs must be nonnegative, got {v}")));
                }
                if v < prev {
                    return Err(Error::Contract(format!(
                        "cost schedule must be nondecreasing, got {v} after {prev}"
                    )));
                }
                prev = v;
            }
        }
        Ok(Self { c0, c1 })
    }

    pub fn len(&self) -> usize {
        self.c0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn c0(&self) -> &[f64] {
        &self.c0
    }

    pub fn c1(&self) -> &[f64] {
        &self.c1
    }

    /// Top-level costs `(C0(k), C1(k))`, the single-test costs of the
    /// all-or-nothing decision.
    pub fn totals(&self) -> (f64, f64) {
        (*self.c0.last().unwrap(), *self.c1.last().unwrap())
    }

    /// Difference `ΔC0(m) = C0(m) − C0(m−1)` with `C0(0) = 0`.
    pub fn delta_c0(&self, m: usize) -> f64 {
        self.c0[m] - if m == 0 { 0.0 } else { self.c0[m - 1] }
    }

    pub fn delta_c1(&self, m: usize) -> f64 {
        self.c1[m] - if m == 0 { 0.0 } else { self.c1[m - 1] }
    }
}

/// Surprisal-proportional schedule: `C0(m) = c·(−log₂ α_m)`,
/// `C1(m) = c'·(−log₂ α_m)`.
pub fn surprisal_costs(ladder: &AlphaLadder, c: f64, c_prime: f64) -> Result<CostSchedule> {
    if !(c > 0.0 && c_prime > 0.0) {
        return Err(Error::Domain("surprisal cost scales must be positive".into()));
    }
    let mut c0 = Vec::with_capacity(ladder.len());
    let mut c1 = Vec::with_capacity(ladder.len());
    for &a in ladder.levels() {
        let s = surprisal(a)?;
        c0.push(c * s);
        c1.push(c_prime * s);
    }
    CostSchedule::new(c0, c1)
}

/// Uniform cost-difference draw: `ΔC0(m) ~ U(range0)`, `ΔC1(m) ~ U(range1)`
/// independently, returned as cumulative sums. Deterministic per generator
/// state; the draw order is ΔC0(1..k) then ΔC1(1..k).
pub fn random_costs(
    rng: &mut Xoshiro256PlusPlus,
    k: usize,
    range0: (f64, f64),
    range1: (f64, f64),
) -> Result<CostSchedule> {
    if k == 0 {
        return Err(Error::Contract("need at least one ladder level".into()));
    }
    for (lo, hi) in [range0, range1] {
        if !(lo >= 0.0 && hi > lo) {
            return Err(Error::Domain(format!(
                "cost ranges must be nonnegative and nonempty, got [{lo}, {hi})"
            )));
        }
    }
    let mut c0 = Vec::with_capacity(k);
    let mut acc = 0.0;
    for _ in 0..k {
        acc += rng.uniform_in(range0.0, range0.1);
        c0.push(acc);
    }
    let mut c1 = Vec::with_capacity(k);
    acc = 0.0;
    for _ in 0..k {
        acc += rng.uniform_in(range1.0, range1.1);
        c1.push(acc);
    }
    CostSchedule::new(c0, c1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(v: f64) -> Probability {
        Probability::new(v).unwrap()
    }

    #[test]
    fn density_basics() {
        let prev = ContinuousPrevalence::new(0.0, 0.015, -0.018, MeaningfulSide::Below).unwrap();
        let peak = prev.density_at(0.0);
        assert!((peak - 1.0 / (0.015 * (2.0 * std::f64::consts::PI).sqrt())).abs() < 1e-12);
        // Symmetry about the mean.
        assert!((prev.density_at(0.01) - prev.density_at(-0.01)).abs() < 1e-15);
        // Value at three sd, cross-checked by differentiating the CDF.
        let d = prev.density_at(0.045);
        assert!((d - 0.004431848411938008 / 0.015).abs() < 1e-9);
        let h = 1e-6;
        let numeric =
            (crate::specfun::phi((0.045 + h) / 0.015) - crate::specfun::phi((0.045 - h) / 0.015))
                / (2.0 * h);
        assert!((d - numeric).abs() < 1e-6, "{d} vs {numeric}");
        assert!(ContinuousPrevalence::new(0.0, 0.0, 0.0, MeaningfulSide::Above).is_err());
    }

    #[test]
    fn meaningful_probability_reference_points() {
        let a = ContinuousPrevalence::new(0.0, 0.5, 0.64, MeaningfulSide::Above).unwrap();
        assert!((a.meaningful_probability().get() - 0.10).abs() < 0.005);
        let b = ContinuousPrevalence::new(0.0, 1.0, 0.64, MeaningfulSide::Above).unwrap();
        assert!((b.meaningful_probability().get() - 0.26).abs() < 0.005);
        let c = ContinuousPrevalence::new(0.3, 0.2, 0.3, MeaningfulSide::Above).unwrap();
        assert!((c.meaningful_probability().get() - 0.5).abs() < 1e-12);
        // Complement sums to one.
        let below = ContinuousPrevalence::new(0.0, 0.5, 0.64, MeaningfulSide::Below).unwrap();
        assert!((a.meaningful_probability().get() + below.meaningful_probability().get() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn ladder_validation() {
        assert!(AlphaLadder::new(vec![]).is_err());
        assert!(AlphaLadder::new(vec![0.05, 0.05]).is_err());
        assert!(AlphaLadder::new(vec![0.05, 0.25]).is_err());
        assert!(AlphaLadder::new(vec![1.0]).is_err());
        let l = AlphaLadder::new(vec![0.25, 0.05, 0.001]).unwrap();
        assert_eq!(l.len(), 3);
        assert_eq!(l.next_level_or_zero(1), 0.001);
        assert_eq!(l.next_level_or_zero(2), 0.0);
    }

    #[test]
    fn schedule_validation() {
        assert!(CostSchedule::new(vec![1.0, 0.5], vec![1.0, 2.0]).is_err());
        assert!(CostSchedule::new(vec![1.0], vec![1.0, 2.0]).is_err());
        assert!(CostSchedule::new(vec![-1.0], vec![1.0]).is_err());
        let s = CostSchedule::new(vec![2.0, 5.0], vec![1.0, 1.5]).unwrap();
        assert_eq!(s.delta_c0(0), 2.0);
        assert_eq!(s.delta_c0(1), 3.0);
        assert_eq!(s.totals(), (5.0, 1.5));
    }

    #[test]
    fn surprisal_schedule_values() {
        let ladder = AlphaLadder::new(vec![0.25, 0.05, 0.001]).unwrap();
        let s = surprisal_costs(&ladder, 1.0, 2.0).unwrap();
        let want = [2.0, 4.321928094887363, 9.965784284662087];
        for (got, want) in s.c0().iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
        // C1/C0 ratio constant by construction.
        for m in 0..s.len() {
            assert!((s.c1()[m] / s.c0()[m] - 2.0).abs() < 1e-12);
        }
        let single = AlphaLadder::new(vec![0.05]).unwrap();
        let s1 = surprisal_costs(&single, 3.0, 1.0).unwrap();
        assert!((s1.c0()[0] - 3.0 * 4.321928094887363).abs() < 1e-12);
    }

    #[test]
    fn random_costs_are_deterministic_and_nondecreasing() {
        let mut a = Xoshiro256PlusPlus::from_seed(7);
        let mut b = Xoshiro256PlusPlus::from_seed(7);
        let s1 = random_costs(&mut a, 3, (0.0, 100.0), (0.0, 25.0)).unwrap();
        let s2 = random_costs(&mut b, 3, (0.0, 100.0), (0.0, 25.0)).unwrap();
        assert_eq!(s1, s2);
        assert_eq!(s1.len(), 3);
        for m in 1..3 {
            assert!(s1.c0()[m] >= s1.c0()[m - 1]);
            assert!(s1.c1()[m] >= s1.c1()[m - 1]);
        }
        assert!(random_costs(&mut a, 0, (0.0, 1.0), (0.0, 1.0)).is_err());
        assert!(random_costs(&mut a, 2, (1.0, 1.0), (0.0, 1.0)).is_err());
    }

    #[test]
    fn random_cost_means_match_ranges() {
        let mut rng = Xoshiro256PlusPlus::from_seed(11);
        let n = 100_000;
        let mut sum0 = 0.0;
        let mut sum1 = 0.0;
        for _ in 0..n {
            let s = random_costs(&mut rng, 1, (0.0, 100.0), (0.0, 25.0)).unwrap();
            sum0 += s.c0()[0];
            sum1 += s.c1()[0];
        }
        let m0 = sum0 / n as f64;
        let m1 = sum1 / n as f64;
        assert!((m0 - 50.0).abs() < 0.5, "mean dC0 = {m0}");
        assert!((m1 - 12.5).abs() < 0.125, "mean dC1 = {m1}");
        // Type I draws are on average four times the Type II draws.
        assert!((m0 / m1 - 4.0).abs() < 0.05);
    }

    #[test]
    fn dichotomous_prevalence_holds_fields() {
        let prev = DichotomousPrevalence {
            p_true: p(0.1),
            effect_true: -0.025,
            effect_null: -0.018,
        };
        assert_eq!(prev.p_true.get(), 0.1);
        assert!(prev.effect_true < prev.effect_null);
    }
}
