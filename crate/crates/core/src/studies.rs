//! Parameterized reproductions of the published cost studies: the
//! dichotomous and continuous drug-rollout tables, the anticipated-effect
//! research scenario, the sample-size geometry curves, and the random-cost
//! simulations.

use crate::alphasel::{optimal_alpha, SearchBounds};
use crate::costengine::{
    cost_multi_continuous_surprisal, cost_multi_dichotomous, cost_single_continuous,
    cost_single_dichotomous, ConstantCosts, EffectCosts, KahanSum,
};
use crate::report::CostTable;
use crate::rng::Xoshiro256PlusPlus;
use crate::scenario::{
    random_costs, surprisal_costs, AlphaLadder, ContinuousPrevalence, DichotomousPrevalence,
    MeaningfulSide,
};
use crate::specfun::{normal_pdf, surprisal, Probability};
use crate::testmodel::{
    group_size_curve, required_group_size, DfMode, RiskDifferenceModel, StandardizedEffectModel,
    TwoGroupDesign, VarianceConvention,
};
use crate::{Error, Result};
use serde::{Deserialize, Serialize};

pub mod reference;

// ---------------------------------------------------------------------------
// Drug-rollout cost model
// ---------------------------------------------------------------------------

/// Economic parameters of the drug-rollout scenario: treatment cost,
/// hospitalization cost, untreated risk, per-group trial size, and the
/// population-incidence scale factor (dropped from per-patient tables).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MolnupiravirParams {
    pub treatment_cost: f64,
    pub hospitalization_cost: f64,
    pub untreated_risk: f64,
    pub per_group_n: u64,
    pub incidence: f64,
    #[serde(default)]
    pub variance: VarianceConvention,
    /// Use the display-rounded break-even boundary (-0.018) instead of the
    /// exact ratio; kept for sensitivity comparison.
    #[serde(default)]
    pub rounded_boundary: bool,
}

impl Default for MolnupiravirParams {
    fn default() -> Self {
        Self {
            treatment_cost: 707.0,
            hospitalization_cost: 40000.0,
            untreated_risk: 0.092,
            per_group_n: 1000,
            incidence: 1.0,
            variance: VarianceConvention::default(),
            rounded_boundary: false,
        }
    }
}

impl MolnupiravirParams {
    /// Break-even risk difference `M = -cT/cH`.
    pub fn boundary_m(&self) -> f64 {
        if self.rounded_boundary {
            -0.018
        } else {
            -self.treatment_cost / self.hospitalization_cost
        }
    }

    pub fn model(&self) -> Result<RiskDifferenceModel> {
        RiskDifferenceModel::new(
            Probability::new(self.untreated_risk)?,
            self.boundary_m(),
            self.per_group_n,
            self.variance,
        )
    }

    /// Type I cost per patient: the treatment cost `cT·I`.
    pub fn type1_cost(&self) -> f64 {
        self.treatment_cost * self.incidence
    }

    /// Type II cost per patient at risk difference `rd`:
    /// `(cH·(r1−r2) − cT)·I`, zero outside the meaningful region where the
    /// expression would go negative.
    pub fn type2_cost(&self, rd: f64) -> f64 {
        ((self.hospitalization_cost * (-rd) - self.treatment_cost) * self.incidence).max(0.0)
    }
}

impl EffectCosts for MolnupiravirParams {
    fn type1_cost(&self, _e: f64) -> f64 {
        MolnupiravirParams::type1_cost(self)
    }
    fn type2_cost(&self, e: f64) -> f64 {
        MolnupiravirParams::type2_cost(self, e)
    }
}

// ---------------------------------------------------------------------------
// Dichotomous drug table
// ---------------------------------------------------------------------------

/// Expected total error costs per patient for dichotomous scenarios over a
/// grid of true risk differences and prevalences. Columns: one per ladder
/// level, then the multi-alpha cost, then the optimal single level.
pub fn table1(
    params: &MolnupiravirParams,
    rds: &[f64],
    ps: &[f64],
    ladder: &AlphaLadder,
) -> Result<CostTable> {
    let model = params.model()?;
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    let mut opt_alphas = Vec::new();
    let sk = surprisal(ladder.level(ladder.len() - 1))?;
    for &rd in rds {
        for &p in ps {
            let prev = DichotomousPrevalence {
                p_true: Probability::new(p)?,
                effect_true: rd,
                effect_null: params.boundary_m(),
            };
            let c0 = params.type1_cost();
            let c1 = params.type2_cost(rd);
            let mut row = Vec::new();
            for &a in ladder.levels() {
                row.push(cost_single_dichotomous(&prev, &model, a, c0, c1)?);
            }
            // Surprisal-proportional schedule normalized to (c0, c1) at the
            // most stringent level.
            let sched = surprisal_costs(ladder, c0 / sk, c1 / sk)?;
            let multi = cost_multi_dichotomous(&prev, &model, ladder, &sched)?;
            row.push(multi.total);
            let opt = optimal_alpha(
                |a| cost_single_dichotomous(&prev, &model, Probability::new(a)?, c0, c1),
                SearchBounds::default(),
                200,
            )?;
            row.push(opt.cost_star);
            opt_alphas.push(opt.alpha_star_rounded);
            cells.push(row);
            row_labels.push(format!("RD={rd}, P={p}"));
        }
    }
    let mut col_labels: Vec<String> =
        ladder.levels().iter().map(|a| format!("alpha={}", a.get())).collect();
    col_labels.push("multi-level".into());
    col_labels.push("optimal".into());
    CostTable::new(
        "Expected total error costs per patient, dichotomous scenarios",
        row_labels,
        col_labels,
        cells,
        ladder.len(),
        Some(opt_alphas),
        1,
    )
}

// ---------------------------------------------------------------------------
// Continuous drug table
// ---------------------------------------------------------------------------

/// Expected total error costs when true risk differences follow a normal
/// distribution; one row per `(mean, sd)` scenario.
pub fn table2(
    params: &MolnupiravirParams,
    scenarios: &[(f64, f64)],
    ladder: &AlphaLadder,
) -> Result<CostTable> {
    let model = params.model()?;
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    let mut opt_alphas = Vec::new();
    for &(mean, sd) in scenarios {
        let prev = ContinuousPrevalence::new(mean, sd, params.boundary_m(), MeaningfulSide::Below)?;
        let mut row = Vec::new();
        for &a in ladder.levels() {
            row.push(cost_single_continuous(&prev, &model, a, params)?);
        }
        let multi = cost_multi_continuous_surprisal(&prev, &model, ladder, params)?;
        row.push(multi.total);
        let opt = optimal_alpha(
            |a| cost_single_continuous(&prev, &model, Probability::new(a)?, params),
            SearchBounds::default(),
            200,
        )?;
        row.push(opt.cost_star);
        opt_alphas.push(opt.alpha_star_rounded);
        cells.push(row);
        row_labels.push(format!("mu={mean}, sigma={sd}"));
    }
    let mut col_labels: Vec<String> =
        ladder.levels().iter().map(|a| format!("alpha={}", a.get())).collect();
    col_labels.push("multi-level".into());
    col_labels.push("optimal".into());
    CostTable::new(
        "Expected total error costs, normally distributed risk differences",
        row_labels,
        col_labels,
        cells,
        ladder.len(),
        Some(opt_alphas),
        1,
    )
}

// ---------------------------------------------------------------------------
// Anticipated-effect research scenario
// ---------------------------------------------------------------------------

/// A research scenario in which teams anticipate different standardized
/// effects, size their trials for fixed power at those anticipations, and
/// true effects follow their own normal distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AnticipatedScenario {
    pub boundary_m: f64,
    /// Mean of the anticipated-effect distribution (above the boundary).
    pub anticipated_mean: f64,
    pub anticipated_sd: f64,
    /// Mean of the true-effect distribution.
    pub true_mean: f64,
    pub true_sd: f64,
    pub design_alpha: f64,
    pub design_power: f64,
    /// Ratio of Type I to Type II error costs: C0(k) = ratio, C1(k) = 1.
    pub cost_ratio: f64,
}

impl AnticipatedScenario {
    pub fn validate(&self) -> Result<()> {
        if self.anticipated_mean <= self.boundary_m {
            return Err(Error::Contract(
                "anticipated mean must exceed the meaningful boundary".into(),
            ));
        }
        if !(self.anticipated_sd > 0.0 && self.true_sd > 0.0 && self.cost_ratio > 0.0) {
            return Err(Error::Contract(
                "anticipated sd, true sd and cost ratio must be positive".into(),
            ));
        }
        Probability::new(self.design_alpha)?;
        Probability::new(self.design_power)?;
        Ok(())
    }

    /// Teams anticipating effects at or below `M + 0.05` would need
    /// unbounded samples and carry negligible mass; the outer integral
    /// starts there.
    fn x_domain(&self) -> (f64, f64) {
        (self.boundary_m + 0.05, self.anticipated_mean + 8.0 * self.anticipated_sd)
    }

    fn anticipated_density(&self, x: f64) -> f64 {
        normal_pdf((x - self.anticipated_mean) / self.anticipated_sd) / self.anticipated_sd
    }

    /// Per-team model at anticipated effect `x`.
    fn team_model(&self, x: f64) -> Result<StandardizedEffectModel> {
        let per_group = required_group_size(
            x - self.boundary_m,
            Probability::new(self.design_alpha)?,
            Probability::new(self.design_power)?,
        )?;
        Ok(StandardizedEffectModel::new(
            TwoGroupDesign::new(2 * per_group)?,
            self.boundary_m,
            DfMode::Normal,
        ))
    }
}

/// Number of panels of the outer composite Simpson rule over anticipated
/// effects (must be even).
const OUTER_PANELS: usize = 96;

fn outer_average<F: FnMut(f64) -> Result<f64>>(scn: &AnticipatedScenario, mut inner: F) -> Result<f64> {
    let (lo, hi) = scn.x_domain();
    let h = (hi - lo) / OUTER_PANELS as f64;
    let mut acc = KahanSum::default();
    for i in 0..=OUTER_PANELS {
        let x = lo + h * i as f64;
        let w = if i == 0 || i == OUTER_PANELS {
            1.0
        } else if i % 2 == 1 {
            4.0
        } else {
            2.0
        };
        acc.add(w * inner(x)? * scn.anticipated_density(x));
    }
    Ok(acc.value() * h / 3.0)
}

/// One row of the research-scenario table: per-level single costs, the
/// multi-alpha cost, and the optimal single level, all averaged over the
/// anticipated-effect distribution.
pub fn table3_row(scn: &AnticipatedScenario, ladder: &AlphaLadder) -> Result<(Vec<f64>, f64)> {
    scn.validate()?;
    let prev = ContinuousPrevalence::new(
        scn.true_mean,
        scn.true_sd,
        scn.boundary_m,
        MeaningfulSide::Above,
    )?;
    let costs = ConstantCosts { c0: scn.cost_ratio, c1: 1.0 };
    let mut row = Vec::new();
    for &a in ladder.levels() {
        row.push(outer_average(scn, |x| {
            cost_single_continuous(&prev, &scn.team_model(x)?, a, &costs)
        })?);
    }
    let multi = outer_average(scn, |x| {
        Ok(cost_multi_continuous_surprisal(&prev, &scn.team_model(x)?, ladder, &costs)?.total)
    })?;
    row.push(multi);
    let opt = optimal_alpha(
        |a| {
            outer_average(scn, |x| {
                cost_single_continuous(&prev, &scn.team_model(x)?, Probability::new(a)?, &costs)
            })
        },
        SearchBounds::default(),
        48,
    )?;
    row.push(opt.cost_star);
    Ok((row, opt.alpha_star_rounded))
}

/// Full research-scenario table over cost ratios and true means (given as
/// offsets from the boundary).
pub fn table3(
    base: &AnticipatedScenario,
    cost_ratios: &[f64],
    true_mean_offsets: &[f64],
    ladder: &AlphaLadder,
) -> Result<CostTable> {
    let mut row_labels = Vec::new();
    let mut cells = Vec::new();
    let mut opt_alphas = Vec::new();
    for &ratio in cost_ratios {
        for &off in true_mean_offsets {
            let scn = AnticipatedScenario {
                cost_ratio: ratio,
                true_mean: base.boundary_m + off,
                ..*base
            };
            let (row, oa) = table3_row(&scn, ladder)?;
            cells.push(row);
            opt_alphas.push(oa);
            let sign = if off >= 0.0 { "+" } else { "-" };
            row_labels.push(format!("ratio={ratio}, true mean=M{sign}{}", off.abs()));
        }
    }
    let mut col_labels: Vec<String> =
        ladder.levels().iter().map(|a| format!("alpha={}", a.get())).collect();
    col_labels.push("multi-level".into());
    col_labels.push("optimal".into());
    CostTable::new(
        format!(
            "Expected total error costs averaged over a research scenario (anticipated sd = {})",
            base.anticipated_sd
        ),
        row_labels,
        col_labels,
        cells,
        ladder.len(),
        Some(opt_alphas),
        2,
    )
}

// ---------------------------------------------------------------------------
// Sample-size geometry (figure data)
// ---------------------------------------------------------------------------

/// A point of the sample-size density: team anticipation `x`, continuous
/// per-group size `n(x)`, and the density of `n` obtained from the
/// anticipated-effect density by change of variables.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SizeDensityPoint {
    pub x: f64,
    pub per_group_n: f64,
    pub density: f64,
}

/// Curves behind the research-scenario figure: effect densities, the
/// sample-size map, and the implied sample-size distribution.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Fig1Data {
    pub effect_grid: Vec<f64>,
    pub true_density: Vec<f64>,
    pub anticipated_density: Vec<f64>,
    /// `(x, n_per_group)` with the continuous (un-rounded) size formula.
    pub sample_size_curve: Vec<(f64, f64)>,
    pub size_density: Vec<SizeDensityPoint>,
}

pub fn fig1_data(scn: &AnticipatedScenario) -> Result<Fig1Data> {
    scn.validate()?;
    let lo = (scn.true_mean - 4.0 * scn.true_sd).min(scn.boundary_m - 0.1);
    let hi = (scn.anticipated_mean + 4.0 * scn.anticipated_sd).max(scn.true_mean + 4.0 * scn.true_sd);
    let n_pts = 401;
    let effect_grid: Vec<f64> =
        (0..n_pts).map(|i| lo + (hi - lo) * i as f64 / (n_pts - 1) as f64).collect();
    let true_density = effect_grid
        .iter()
        .map(|&e| normal_pdf((e - scn.true_mean) / scn.true_sd) / scn.true_sd)
        .collect();
    let anticipated_density = effect_grid.iter().map(|&e| scn.anticipated_density(e)).collect();

    // Map domain: anticipated effects strictly above the boundary. The
    // lower edge sits close enough to M that the excluded mass is far below
    // the 1e-6 bookkeeping tolerance.
    let x_lo = scn.boundary_m + 1e-4;
    let x_hi = scn.anticipated_mean + 8.0 * scn.anticipated_sd;
    let grid = 2000usize;
    let mut sample_size_curve = Vec::with_capacity(grid + 1);
    let mut size_density = Vec::with_capacity(grid + 1);
    let gz = scn.design_alpha;
    let pw = scn.design_power;
    for i in 0..=grid {
        let x = x_lo + (x_hi - x_lo) * i as f64 / grid as f64;
        let delta = x - scn.boundary_m;
        let n = group_size_curve(delta, gz, pw);
        sample_size_curve.push((x, n));
        // n = 2 z^2 / delta^2  =>  dn/dx = -2n/delta, so |dx/dn| = delta/(2n).
        let jac = delta / (2.0 * n);
        size_density.push(SizeDensityPoint {
            x,
            per_group_n: n,
            density: scn.anticipated_density(x) * jac,
        });
    }
    Ok(Fig1Data {
        effect_grid,
        true_density,
        anticipated_density,
        sample_size_curve,
        size_density,
    })
}

// ---------------------------------------------------------------------------
// Random-cost simulations
// ---------------------------------------------------------------------------

/// Prevalence regime of a simulation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SimPrevalence {
    /// Proportion `p_true` of effects sit `effect_offset` above the
    /// boundary; the rest sit on it.
    Dichotomous { p_true: f64, effect_offset: f64 },
    /// Zero-mean normal true effects with the given sd, meaningful above
    /// `boundary_m`.
    Continuous { sd: f64, boundary_m: f64 },
}

/// Configuration of one random-cost simulation cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SimConfig {
    pub runs: u64,
    pub seed: u64,
    pub ladder: AlphaLadder,
    pub prevalence: SimPrevalence,
    pub n_total: u64,
    #[serde(default = "default_t_mode")]
    pub df_mode: DfMode,
    #[serde(default = "default_range0")]
    pub range0: (f64, f64),
    #[serde(default = "default_range1")]
    pub range1: (f64, f64),
    #[serde(default = "default_opt_resolution")]
    pub optimal_resolution: usize,
}

fn default_t_mode() -> DfMode {
    DfMode::StudentT
}
fn default_range0() -> (f64, f64) {
    (0.0, 100.0)
}
fn default_range1() -> (f64, f64) {
    (0.0, 25.0)
}
fn default_opt_resolution() -> usize {
    512
}

/// Mean and standard deviation of a per-run statistic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSd {
    pub mean: f64,
    pub sd: f64,
}

/// Per-strategy summary of a simulation: each single level, the
/// multi-alpha test, and the per-run optimal single level.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SimSummary {
    pub singles: Vec<MeanSd>,
    pub multi: MeanSd,
    pub optimal: MeanSd,
}

/// Type I and Type II error factors of the cost formulas at one alpha:
/// cost = C0(k)·a + C1(k)·b for single-level tests, and the multi-alpha
/// cost sums `ΔC0(m)·a_m + ΔC1(m)·b_m`.
fn error_factors(config: &SimConfig, alpha: Probability) -> Result<(f64, f64)> {
    match config.prevalence {
        SimPrevalence::Dichotomous { p_true, effect_offset } => {
            let model = StandardizedEffectModel::new(
                TwoGroupDesign::new(config.n_total)?,
                0.0,
                config.df_mode,
            );
            let beta = 1.0 - model.rejection_probability(effect_offset, alpha)?;
            Ok(((1.0 - p_true) * alpha.get(), p_true * beta))
        }
        SimPrevalence::Continuous { sd, boundary_m } => {
            let model = StandardizedEffectModel::new(
                TwoGroupDesign::new(config.n_total)?,
                boundary_m,
                config.df_mode,
            );
            let prev = ContinuousPrevalence::new(0.0, sd, boundary_m, MeaningfulSide::Above)?;
            let t1 = cost_single_continuous(&prev, &model, alpha, &ConstantCosts { c0: 1.0, c1: 0.0 })?;
            let t2 = cost_single_continuous(&prev, &model, alpha, &ConstantCosts { c0: 0.0, c1: 1.0 })?;
            Ok((t1, t2))
        }
    }
}

/// Run the random-cost simulation: per run, draw a cost schedule, price
/// every strategy, and take the per-run minimum over a fine alpha grid as
/// the optimal strategy. Bit-reproducible for a fixed seed and independent
/// of worker count.
pub fn simulate(config: &SimConfig) -> Result<SimSummary> {
    if config.runs == 0 {
        return Err(Error::Contract("simulation needs at least one run".into()));
    }
    let k = config.ladder.len();
    // Per-level factors.
    let level_factors: Vec<(f64, f64)> = config
        .ladder
        .levels()
        .iter()
        .map(|&a| error_factors(config, a))
        .collect::<Result<Vec<_>>>()?;
    // Continuous-alpha grid factors for the per-run optimum.
    let bounds = SearchBounds::default();
    let res = config.optimal_resolution.max(16);
    let grid_factors: Vec<(f64, f64)> = (0..res)
        .map(|i| {
            let a = (bounds.lo.ln()
                + (bounds.hi.ln() - bounds.lo.ln()) * i as f64 / (res - 1) as f64)
                .exp();
            error_factors(config, Probability::new(a)?)
        })
        .collect::<Result<Vec<_>>>()?;

    let runs = config.runs as usize;
    // strategy costs per run: k singles, multi, optimal
    let mut rows: Vec<Vec<f64>> = vec![Vec::new(); runs];
    let workers = worker_count(runs);
    let chunk = runs.div_ceil(workers);
    let errors = std::sync::Mutex::new(Vec::<Error>::new());
    std::thread::scope(|scope| {
        for (w, slot) in rows.chunks_mut(chunk).enumerate() {
            let level_factors = &level_factors;
            let grid_factors = &grid_factors;
            let errors = &errors;
            scope.spawn(move || {
                for (j, out) in slot.iter_mut().enumerate() {
                    let run = (w * chunk + j) as u64;
                    let mut rng = Xoshiro256PlusPlus::substream(config.seed, run);
                    match random_costs(&mut rng, k, config.range0, config.range1) {
                        Ok(sched) => {
                            let (c0k, c1k) = sched.totals();
                            let mut costs = Vec::with_capacity(k + 2);
                            for &(a, b) in level_factors.iter() {
                                costs.push(c0k * a + c1k * b);
                            }
                            let mut multi = KahanSum::default();
                            for (m, &(a, b)) in level_factors.iter().enumerate() {
                                multi.add(sched.delta_c0(m) * a + sched.delta_c1(m) * b);
                            }
                            costs.push(multi.value());
                            let best = grid_factors
                                .iter()
                                .map(|&(a, b)| c0k * a + c1k * b)
                                .fold(f64::INFINITY, f64::min);
                            costs.push(best);
                            *out = costs;
                        }
                        Err(e) => errors.lock().unwrap().push(e),
                    }
                }
            });
        }
    });
    if let Some(e) = errors.into_inner().unwrap().pop() {
        return Err(e);
    }

    // Aggregate in run order with compensated sums.
    let n_strat = k + 2;
    let mut means = vec![KahanSum::default(); n_strat];
    for row in &rows {
        for (s, &v) in row.iter().enumerate() {
            means[s].add(v);
        }
    }
    let means: Vec<f64> = means.iter().map(|m| m.value() / runs as f64).collect();
    let mut sds = vec![KahanSum::default(); n_strat];
    for row in &rows {
        for (s, &v) in row.iter().enumerate() {
            let d = v - means[s];
            sds[s].add(d * d);
        }
    }
    let sds: Vec<f64> = sds
        .iter()
        .map(|m| if runs > 1 { (m.value() / (runs - 1) as f64).sqrt() } else { 0.0 })
        .collect();

    let singles = (0..k).map(|m| MeanSd { mean: means[m], sd: sds[m] }).collect();
    Ok(SimSummary {
        singles,
        multi: MeanSd { mean: means[k], sd: sds[k] },
        optimal: MeanSd { mean: means[k + 1], sd: sds[k + 1] },
    })
}

/// Worker count: capped by the MULTALPHA_THREADS environment variable when
/// set, otherwise the available parallelism.
fn worker_count(runs: usize) -> usize {
    let avail = std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1);
    let cap = std::env::var("MULTALPHA_THREADS")
        .ok()
        .and_then(|v| v.parse::<usize>().ok())
        .filter(|&n| n > 0)
        .unwrap_or(avail);
    cap.min(avail).min(runs).max(1)
}
