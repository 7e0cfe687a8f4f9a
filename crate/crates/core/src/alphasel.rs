//! Optimal single-alpha search and the surprisal mappings between cost
//! schedules, alpha ladders, and population scale.

use crate::scenario::AlphaLadder;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

/// Search interval for the optimal alpha; one-sided levels beyond 0.5 are
/// meaningless, and published optima run as high as 0.44.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SearchBounds {
    pub lo: f64,
    pub hi: f64,
}

impl Default for SearchBounds {
    fn default() -> Self {
        Self { lo: 1e-6, hi: 0.5 }
    }
}

impl SearchBounds {
    pub fn new(lo: f64, hi: f64) -> Result<Self> {
        if !(lo > 0.0 && hi > lo && hi <= 0.5) {
            return Err(Error::Contract(format!(
                "search bounds must satisfy 0 < lo < hi <= 0.5, got [{lo}, {hi}]"
            )));
        }
        Ok(Self { lo, hi })
    }
}

/// Result of an optimal-alpha search.
#[derive(Debug, Clone, PartialEq)]
pub struct Optimum {
    /// Minimizing alpha at full precision.
    pub alpha_star: f64,
    /// The same alpha rounded to two decimals, for table parity.
    pub alpha_star_rounded: f64,
    /// Cost at the minimizer.
    pub cost_star: f64,
    /// The coarse-grid samples `(alpha, cost)` that guided the search.
    pub trace: Vec<(f64, f64)>,
}

const GOLDEN_INV: f64 = 0.6180339887498949; // 1/phi

/// Minimize an expected-cost curve over alpha.
///
/// The objective may be non-convex, so a log-spaced coarse grid of
/// `resolution` points locates the best bracket first; golden-section
/// refinement then narrows it to an alpha tolerance of 1e-4. Grid ties are
/// broken toward the smaller alpha.
pub fn optimal_alpha<F>(costfn: F, bounds: SearchBounds, resolution: usize) -> Result<Optimum>
where
    F: Fn(f64) -> Result<f64>,
{
    let resolution = resolution.max(3);
    let eval = |a: f64| -> Result<f64> {
        let c = costfn(a)?;
        if c.is_finite() {
            Ok(c)
        } else {
            Err(Error::Numerical(format!("cost function returned {c} at alpha = {a}")))
        }
    };

    let log_lo = bounds.lo.ln();
    let log_hi = bounds.hi.ln();
    let mut trace = Vec::with_capacity(resolution);
    let mut best = 0usize;
    for i in 0..resolution {
        let a = (log_lo + (log_hi - log_lo) * i as f64 / (resolution - 1) as f64).exp();
        let c = eval(a)?;
        // Strict inequality keeps ties on the smaller alpha.
        if c < trace.get(best).map_or(f64::INFINITY, |&(_, c0): &(f64, f64)| c0) {
            best = i;
        }
        trace.push((a, c));
    }

    // Golden-section refinement inside the bracket around the best sample.
    let mut lo = trace[best.saturating_sub(1)].0;
    let mut hi = trace[(best + 1).min(resolution - 1)].0;
    let mut x1 = hi - (hi - lo) * GOLDEN_INV;
    let mut x2 = lo + (hi - lo) * GOLDEN_INV;
    let mut f1 = eval(x1)?;
    let mut f2 = eval(x2)?;
    while hi - lo > 1e-4 {
        if f1 <= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - (hi - lo) * GOLDEN_INV;
            f1 = eval(x1)?;
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + (hi - lo) * GOLDEN_INV;
            f2 = eval(x2)?;
        }
    }
    let mut alpha_star = if f1 <= f2 { x1 } else { x2 };
    let mut cost_star = f1.min(f2);
    // The refined point must not lose to any coarse sample.
    let (grid_alpha, grid_cost) = trace[best];
    if grid_cost < cost_star {
        alpha_star = grid_alpha;
        cost_star = grid_cost;
    }
    Ok(Optimum {
        alpha_star,
        alpha_star_rounded: (alpha_star * 100.0).round() / 100.0,
        cost_star,
        trace,
    })
}

/// Set alpha levels from known Type I costs: `α_m = 2^{log₂(α₁)·C0(m)/C0(1)}`.
///
/// Strictly increasing costs produce a strictly decreasing ladder; equal
/// costs collapse levels and are rejected by the ladder invariant.
pub fn ladder_from_costs(alpha1: f64, c0: &[f64]) -> Result<AlphaLadder> {
    if !(alpha1 > 0.0 && alpha1 < 1.0) {
        return Err(Error::Domain(format!("alpha1 must lie in (0,1), got {alpha1}")));
    }
    if c0.is_empty() {
        return Err(Error::Contract("need at least one cost".into()));
    }
    if c0[0] <= 0.0 {
        return Err(Error::Domain("first cost must be positive".into()));
    }
    for w in c0.windows(2) {
        if w[1] < w[0] {
            return Err(Error::Contract(format!(
                "costs must be nondecreasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    let l1 = alpha1.log2();
    let levels: Vec<f64> = c0.iter().map(|&c| (l1 * c / c0[0]).exp2()).collect();
    AlphaLadder::new(levels)
}

/// Population scale consistent with surprisal-proportional costs:
/// `q(m) = q(1)·log₂(α_m)/log₂(α₁)`; nondecreasing along the ladder.
pub fn population_scale(q1: f64, ladder: &AlphaLadder) -> Result<Vec<f64>> {
    if !(q1 > 0.0) {
        return Err(Error::Domain(format!("q1 must be positive, got {q1}")));
    }
    let l1 = ladder.level(0).get().log2();
    Ok(ladder
        .levels()
        .iter()
        .map(|a| q1 * (a.get().log2() / l1))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_objective_takes_lower_bound() {
        let opt = optimal_alpha(|_| Ok(7.5), SearchBounds::default(), 50).unwrap();
        assert_eq!(opt.cost_star, 7.5);
        assert!((opt.alpha_star - 1e-6).abs() < 2e-5, "tie should break low, got {}", opt.alpha_star);
    }

    #[test]
    fn quadratic_objective_is_located() {
        let f = |a: f64| Ok((a - 0.2).powi(2) + 1.0);
        let opt = optimal_alpha(f, SearchBounds::default(), 200).unwrap();
        assert!((opt.alpha_star - 0.2).abs() < 1e-3);
        assert!((opt.cost_star - 1.0).abs() < 1e-6);
        // Refined optimum never exceeds the best traced sample.
        let best_traced = opt.trace.iter().map(|&(_, c)| c).fold(f64::INFINITY, f64::min);
        assert!(opt.cost_star <= best_traced + 1e-15);
        assert_eq!(opt.alpha_star_rounded, 0.2);
    }

    #[test]
    fn bounds_are_respected() {
        let f = |a: f64| Ok(-a); // decreasing, optimum at hi
        let b = SearchBounds::new(0.2, 0.21).unwrap();
        let opt = optimal_alpha(f, b, 20).unwrap();
        assert!(opt.alpha_star >= 0.2 && opt.alpha_star <= 0.21);
        assert!((opt.alpha_star - 0.21).abs() < 1e-3);
        assert!(SearchBounds::new(0.0, 0.5).is_err());
        assert!(SearchBounds::new(0.1, 0.6).is_err());
    }

    #[test]
    fn non_finite_cost_is_reported_with_alpha() {
        let f = |a: f64| if a > 0.1 { Ok(f64::NAN) } else { Ok(a) };
        let err = optimal_alpha(f, SearchBounds::default(), 64).unwrap_err();
        assert!(matches!(err, Error::Numerical(_)));
        assert!(err.to_string().contains("alpha"));
    }

    #[test]
    fn ladder_from_costs_doubling_example() {
        let l = ladder_from_costs(0.05, &[1.0, 2.0]).unwrap();
        let levels: Vec<f64> = l.levels().iter().map(|p| p.get()).collect();
        assert!((levels[0] - 0.05).abs() < 1e-15);
        assert!((levels[1] - 0.0025).abs() < 1e-15);
        let l2 = ladder_from_costs(0.1, &[1.0, 3.0]).unwrap();
        assert!((l2.levels()[1].get() - 1e-3).abs() < 1e-15);
        // Equal costs collapse to equal alphas, rejected by the ladder.
        assert!(ladder_from_costs(0.05, &[1.0, 1.0]).is_err());
        assert!(ladder_from_costs(0.05, &[0.0, 1.0]).is_err());
    }

    #[test]
    fn ladder_round_trips_through_surprisal_costs() {
        let ladder = AlphaLadder::new(vec![0.25, 0.05, 0.001]).unwrap();
        let sched = crate::scenario::surprisal_costs(&ladder, 3.0, 1.5).unwrap();
        let back = ladder_from_costs(0.25, sched.c0()).unwrap();
        for (a, b) in ladder.levels().iter().zip(back.levels()) {
            assert!((a.get() - b.get()).abs() <= 1e-9 * a.get());
        }
    }

    #[test]
    fn population_scale_reference() {
        let ladder = AlphaLadder::new(vec![0.05, 0.001]).unwrap();
        let q = population_scale(1000.0, &ladder).unwrap();
        assert_eq!(q[0], 1000.0);
        // Exact surprisal ratio: 1000 * log2(0.001)/log2(0.05).
        assert!((q[1] - 2305.8653605207223).abs() < 1e-9, "q = {:?}", q);
        assert_eq!(q[1].round(), 2306.0);
        // "Just over 2300".
        assert!(q[1] > 2300.0 && q[1] < 2330.0);
        // Ratios equal surprisal ratios.
        let s1 = crate::specfun::surprisal(ladder.level(0)).unwrap();
        let s2 = crate::specfun::surprisal(ladder.level(1)).unwrap();
        assert!((q[1] / q[0] - s2 / s1).abs() < 1e-12);
        // Homogeneity in q1.
        let q2 = population_scale(2000.0, &ladder).unwrap();
        assert!((q2[1] - 2.0 * q[1]).abs() < 1e-9);
        // Single level.
        let single = AlphaLadder::new(vec![0.05]).unwrap();
        assert_eq!(population_scale(3.0, &single).unwrap(), vec![3.0]);
    }
}
