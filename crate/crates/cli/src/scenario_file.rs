//! Declarative scenario files: a versioned JSON schema describing the
//! prevalence model, the alpha ladder, the cost schedule, and the test
//! model. Unknown fields are rejected so that typos fail loudly.

use multalpha::costengine::{ConstantCosts, EffectCosts};
use multalpha::rng::Xoshiro256PlusPlus;
use multalpha::scenario::{
    random_costs, surprisal_costs, AlphaLadder, ContinuousPrevalence, CostSchedule,
    DichotomousPrevalence, MeaningfulSide,
};
use multalpha::specfun::Probability;
use multalpha::studies::MolnupiravirParams;
use multalpha::testmodel::{
    DfMode, RiskDifferenceModel, StandardizedEffectModel, TwoGroupDesign, VarianceConvention,
};
use multalpha::{Error, Result};
use serde::{Deserialize, Serialize};

pub const SUPPORTED_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub schema_version: u32,
    pub prevalence: PrevalenceSpec,
    pub boundary_m: f64,
    pub alphas: Vec<f64>,
    pub costs: CostSpec,
    pub model: ModelSpec,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PrevalenceSpec {
    Dichotomous { p: f64, effect_true: f64 },
    Continuous { mean: f64, sd: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CostSpec {
    /// Explicit nondecreasing per-decision costs (one entry per level).
    Explicit { c0: Vec<f64>, c1: Vec<f64> },
    /// Surprisal-proportional costs. For standardized models these are the
    /// constants of C0(m) = c·(−log₂ α_m); for risk-difference models they
    /// scale the treatment-cost and hospitalization-saving functions.
    Surprisal {
        #[serde(default = "one")]
        c: f64,
        #[serde(default = "one")]
        c_prime: f64,
    },
    /// Uniform random cost differences, cumulated; deterministic per seed.
    Random {
        seed: u64,
        #[serde(default = "default_range0")]
        range0: (f64, f64),
        #[serde(default = "default_range1")]
        range1: (f64, f64),
    },
}

fn one() -> f64 {
    1.0
}
fn default_range0() -> (f64, f64) {
    (0.0, 100.0)
}
fn default_range1() -> (f64, f64) {
    (0.0, 25.0)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ModelSpec {
    /// Standardized two-group z/t test; meaningful effects exceed the
    /// boundary.
    Standardized {
        n_total: u64,
        #[serde(default)]
        df_mode: DfMode,
    },
    /// Two-group risk-difference test; meaningful effects fall below the
    /// break-even boundary −cT/cH.
    Riskdiff {
        r1: f64,
        per_group_n: u64,
        c_t: f64,
        c_h: f64,
        #[serde(default = "one")]
        incidence: f64,
        #[serde(default)]
        variance: VarianceConvention,
    },
}

/// Drug costs with overall Type I / Type II scale factors.
#[derive(Debug, Clone, Copy)]
pub struct ScaledDrugCosts {
    pub params: MolnupiravirParams,
    pub scale0: f64,
    pub scale1: f64,
}

impl EffectCosts for ScaledDrugCosts {
    fn type1_cost(&self, _e: f64) -> f64 {
        self.scale0 * self.params.type1_cost()
    }
    fn type2_cost(&self, e: f64) -> f64 {
        self.scale1 * MolnupiravirParams::type2_cost(&self.params, e)
    }
}

/// Fully constructed scenario ready for the engine.
pub struct Scenario {
    pub ladder: AlphaLadder,
    pub prevalence: Prevalence,
    pub model: Model,
    pub costs: Costs,
}

pub enum Prevalence {
    Dichotomous(DichotomousPrevalence),
    Continuous(ContinuousPrevalence),
}

pub enum Model {
    Standardized(StandardizedEffectModel),
    Riskdiff(RiskDifferenceModel),
}

pub enum Costs {
    /// Per-decision schedule (explicit, surprisal over constants, or
    /// randomly drawn).
    Schedule(CostSchedule),
    /// Effect-dependent drug costs with surprisal level structure.
    Drug(ScaledDrugCosts),
}

impl ScenarioFile {
    pub fn parse(text: &str) -> Result<Self> {
        let file: ScenarioFile = serde_json::from_str(text)
            .map_err(|e| Error::Contract(format!("invalid scenario file: {e}")))?;
        if file.schema_version != SUPPORTED_SCHEMA_VERSION {
            return Err(Error::Contract(format!(
                "unsupported schema_version {} (supported: {SUPPORTED_SCHEMA_VERSION})",
                file.schema_version
            )));
        }
        Ok(file)
    }

    pub fn build(&self) -> Result<Scenario> {
        let ladder = AlphaLadder::new(self.alphas.clone())?;
        let model = self.build_model()?;
        let meaningful = match &model {
            Model::Standardized(_) => MeaningfulSide::Above,
            Model::Riskdiff(_) => MeaningfulSide::Below,
        };
        let prevalence = match &self.prevalence {
            PrevalenceSpec::Dichotomous { p, effect_true } => {
                Prevalence::Dichotomous(DichotomousPrevalence {
                    p_true: Probability::new(*p)?,
                    effect_true: *effect_true,
                    effect_null: self.boundary_m,
                })
            }
            PrevalenceSpec::Continuous { mean, sd } => Prevalence::Continuous(
                ContinuousPrevalence::new(*mean, *sd, self.boundary_m, meaningful)?,
            ),
        };
        let costs = self.build_costs(&ladder)?;
        Ok(Scenario { ladder, prevalence, model, costs })
    }

    fn build_model(&self) -> Result<Model> {
        match &self.model {
            ModelSpec::Standardized { n_total, df_mode } => {
                Ok(Model::Standardized(StandardizedEffectModel::new(
                    TwoGroupDesign::new(*n_total)?,
                    self.boundary_m,
                    *df_mode,
                )))
            }
            ModelSpec::Riskdiff { r1, per_group_n, c_t, c_h, variance, .. } => {
                let expected = -c_t / c_h;
                if (self.boundary_m - expected).abs() > 1e-12 {
                    return Err(Error::Contract(format!(
                        "riskdiff boundary_m must equal -c_t/c_h = {expected}, got {}",
                        self.boundary_m
                    )));
                }
                Ok(Model::Riskdiff(RiskDifferenceModel::new(
                    Probability::new(*r1)?,
                    self.boundary_m,
                    *per_group_n,
                    *variance,
                )?))
            }
        }
    }

    fn build_costs(&self, ladder: &AlphaLadder) -> Result<Costs> {
        match (&self.costs, &self.model) {
            (CostSpec::Explicit { c0, c1 }, _) => {
                let sched = CostSchedule::new(c0.clone(), c1.clone())?;
                if sched.len() != ladder.len() {
                    return Err(Error::Contract(format!(
                        "cost schedule length {} does not match ladder length {}",
                        sched.len(),
                        ladder.len()
                    )));
                }
                Ok(Costs::Schedule(sched))
            }
            (
                CostSpec::Surprisal { c, c_prime },
                ModelSpec::Riskdiff { r1, per_group_n, c_t, c_h, incidence, variance },
            ) => Ok(Costs::Drug(ScaledDrugCosts {
                params: MolnupiravirParams {
                    treatment_cost: *c_t,
                    hospitalization_cost: *c_h,
                    untreated_risk: *r1,
                    per_group_n: *per_group_n,
                    incidence: *incidence,
                    variance: *variance,
                    rounded_boundary: false,
                },
                scale0: *c,
                scale1: *c_prime,
            })),
            (CostSpec::Surprisal { c, c_prime }, ModelSpec::Standardized { .. }) => {
                Ok(Costs::Schedule(surprisal_costs(ladder, *c, *c_prime)?))
            }
            (CostSpec::Random { seed, range0, range1 }, _) => {
                let mut rng = Xoshiro256PlusPlus::from_seed(*seed);
                Ok(Costs::Schedule(random_costs(&mut rng, ladder.len(), *range0, *range1)?))
            }
        }
    }
}

impl Scenario {
    /// Top-level (all-or-nothing) costs for single-level tests of a
    /// dichotomous scenario at true effect `e`.
    pub fn totals_at(&self, e: f64) -> (f64, f64) {
        match &self.costs {
            Costs::Schedule(s) => s.totals(),
            Costs::Drug(d) => (d.type1_cost(e), d.type2_cost(e)),
        }
    }

    /// Constant-cost totals for continuous scenarios with schedules.
    pub fn constant_totals(&self) -> Option<ConstantCosts> {
        match &self.costs {
            Costs::Schedule(s) => {
                let (c0, c1) = s.totals();
                Some(ConstantCosts { c0, c1 })
            }
            Costs::Drug(_) => None,
        }
    }
}
