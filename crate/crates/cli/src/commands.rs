//! Subcommand implementations: cost evaluation, optimal-alpha search,
//! reproduction targets, and the ladder/population mappings.

use crate::scenario_file::{Costs, Model, Prevalence, Scenario, ScenarioFile};
use multalpha::alphasel::{ladder_from_costs, optimal_alpha, population_scale, SearchBounds};
use multalpha::costengine::{
    cost_multi_continuous, cost_multi_continuous_proportional, cost_multi_continuous_surprisal,
    cost_multi_dichotomous, cost_single_continuous, cost_single_dichotomous,
    weighted_decomposition, ConstantCosts, CostBreakdown,
};
use multalpha::report::{plot_scenario, render_table, CostTable, TableFormat};
use multalpha::scenario::{AlphaLadder, ContinuousPrevalence, CostSchedule, MeaningfulSide};
use multalpha::specfun::Probability;
use multalpha::studies::{
    self, fig1_data, reference, simulate, AnticipatedScenario, MolnupiravirParams, SimConfig,
    SimPrevalence, SimSummary,
};
use multalpha::testmodel::{DfMode, VarianceConvention};
use multalpha::{Error, Result};
use serde::Serialize;
use std::fmt::Write as _;
use std::path::Path;

// ---------------------------------------------------------------------------
// cost
// ---------------------------------------------------------------------------

/// Evaluate the multi-alpha expected cost of a scenario file.
pub fn cmd_cost(file: &ScenarioFile) -> Result<CostBreakdown> {
    let scenario = file.build()?;
    match (&scenario.prevalence, &scenario.costs) {
        (Prevalence::Dichotomous(prev), Costs::Schedule(sched)) => match &scenario.model {
            Model::Standardized(m) => cost_multi_dichotomous(prev, m, &scenario.ladder, sched),
            Model::Riskdiff(m) => cost_multi_dichotomous(prev, m, &scenario.ladder, sched),
        },
        (Prevalence::Dichotomous(prev), Costs::Drug(_)) => {
            // Surprisal level structure normalized so the most stringent
            // level carries the drug costs at the scenario's true effect.
            let (c0k, c1k) = scenario.totals_at(prev.effect_true);
            let weights = multalpha::costengine::surprisal_weights(&scenario.ladder);
            let mut lam = 0.0;
            let (mut c0, mut c1) = (Vec::new(), Vec::new());
            for w in &weights {
                lam += w;
                c0.push(c0k * lam);
                c1.push(c1k * lam);
            }
            let sched = CostSchedule::new(c0, c1)?;
            match &scenario.model {
                Model::Standardized(m) => cost_multi_dichotomous(prev, m, &scenario.ladder, &sched),
                Model::Riskdiff(m) => cost_multi_dichotomous(prev, m, &scenario.ladder, &sched),
            }
        }
        (Prevalence::Continuous(prev), Costs::Drug(drug)) => match &scenario.model {
            Model::Standardized(m) => {
                cost_multi_continuous_surprisal(prev, m, &scenario.ladder, drug)
            }
            Model::Riskdiff(m) => cost_multi_continuous_surprisal(prev, m, &scenario.ladder, drug),
        },
        (Prevalence::Continuous(prev), Costs::Schedule(sched)) => {
            let proportional = weighted_decomposition(&scenario.ladder, sched).ok();
            if let Some(weights) = proportional {
                let (c0k, c1k) = sched.totals();
                let base = ConstantCosts { c0: c0k, c1: c1k };
                match &scenario.model {
                    Model::Standardized(m) => cost_multi_continuous_proportional(
                        prev,
                        m,
                        &scenario.ladder,
                        &base,
                        &weights,
                    ),
                    Model::Riskdiff(m) => cost_multi_continuous_proportional(
                        prev,
                        m,
                        &scenario.ladder,
                        &base,
                        &weights,
                    ),
                }
            } else {
                let diffs: Vec<ConstantCosts> = (0..sched.len())
                    .map(|m| ConstantCosts { c0: sched.delta_c0(m), c1: sched.delta_c1(m) })
                    .collect();
                match &scenario.model {
                    Model::Standardized(m) => {
                        cost_multi_continuous(prev, m, &scenario.ladder, &diffs)
                    }
                    Model::Riskdiff(m) => cost_multi_continuous(prev, m, &scenario.ladder, &diffs),
                }
            }
        }
    }
}

/// JSON document for a cost breakdown.
#[derive(Debug, Serialize)]
pub struct CostOutput {
    pub schema_version: u32,
    pub total: f64,
    pub omega0: f64,
    pub omega1: f64,
    pub per_level: Vec<LevelCost>,
    pub weights: Option<Vec<f64>>,
}

#[derive(Debug, Serialize)]
pub struct LevelCost {
    pub alpha: f64,
    pub cost: f64,
}

pub fn cost_output(file: &ScenarioFile, b: &CostBreakdown) -> CostOutput {
    CostOutput {
        schema_version: 1,
        total: b.total,
        omega0: b.omega0,
        omega1: b.omega1,
        per_level: file
            .alphas
            .iter()
            .zip(&b.per_level)
            .map(|(&alpha, &cost)| LevelCost { alpha, cost })
            .collect(),
        weights: b.weights.clone(),
    }
}

pub fn render_cost_text(file: &ScenarioFile, b: &CostBreakdown) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "total expected cost: {:.6}", b.total);
    let _ = writeln!(out, "  type I (omega0):   {:.6}", b.omega0);
    let _ = writeln!(out, "  type II (omega1):  {:.6}", b.omega1);
    let _ = writeln!(out, "per-level single-test costs:");
    for (a, c) in file.alphas.iter().zip(&b.per_level) {
        let _ = writeln!(out, "  alpha={a}: {c:.6}");
    }
    if let Some(w) = &b.weights {
        let parts: Vec<String> = w.iter().map(|x| format!("{x:.6}")).collect();
        let _ = writeln!(out, "weights: {}", parts.join(", "));
    }
    out
}

pub fn render_cost_csv(file: &ScenarioFile, b: &CostBreakdown) -> String {
    let mut out = String::from("quantity,alpha,value\n");
    let _ = writeln!(out, "total,,{}", b.total);
    let _ = writeln!(out, "omega0,,{}", b.omega0);
    let _ = writeln!(out, "omega1,,{}", b.omega1);
    for (a, c) in file.alphas.iter().zip(&b.per_level) {
        let _ = writeln!(out, "per_level,{a},{c}");
    }
    if let Some(w) = &b.weights {
        for (a, x) in file.alphas.iter().zip(w) {
            let _ = writeln!(out, "weight,{a},{x}");
        }
    }
    out
}

// ---------------------------------------------------------------------------
// optimize
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
pub struct OptimumOutput {
    pub schema_version: u32,
    pub alpha_star: f64,
    pub alpha_star_rounded: f64,
    pub cost_star: f64,
}

/// Minimize the scenario's single-level expected cost over alpha.
pub fn cmd_optimize(
    file: &ScenarioFile,
    bounds: SearchBounds,
    resolution: usize,
) -> Result<multalpha::alphasel::Optimum> {
    let scenario = file.build()?;
    let costfn = |a: f64| -> Result<f64> {
        let alpha = Probability::new(a)?;
        match (&scenario.prevalence, &scenario.costs) {
            (Prevalence::Dichotomous(prev), _) => {
                let (c0k, c1k) = scenario.totals_at(prev.effect_true);
                match &scenario.model {
                    Model::Standardized(m) => cost_single_dichotomous(prev, m, alpha, c0k, c1k),
                    Model::Riskdiff(m) => cost_single_dichotomous(prev, m, alpha, c0k, c1k),
                }
            }
            (Prevalence::Continuous(prev), Costs::Drug(drug)) => match &scenario.model {
                Model::Standardized(m) => cost_single_continuous(prev, m, alpha, drug),
                Model::Riskdiff(m) => cost_single_continuous(prev, m, alpha, drug),
            },
            (Prevalence::Continuous(prev), Costs::Schedule(_)) => {
                let costs = scenario.constant_totals().expect("schedule present");
                match &scenario.model {
                    Model::Standardized(m) => cost_single_continuous(prev, m, alpha, &costs),
                    Model::Riskdiff(m) => cost_single_continuous(prev, m, alpha, &costs),
                }
            }
        }
    };
    optimal_alpha(costfn, bounds, resolution)
}

pub fn render_trace_csv(opt: &multalpha::alphasel::Optimum) -> String {
    let mut out = String::from("alpha,cost\n");
    for (a, c) in &opt.trace {
        let _ = writeln!(out, "{a},{c}");
    }
    out
}

// ---------------------------------------------------------------------------
// ladder
// ---------------------------------------------------------------------------

pub fn cmd_ladder_from_costs(alpha1: f64, costs: &[f64]) -> Result<String> {
    let ladder = ladder_from_costs(alpha1, costs)?;
    Ok(ladder
        .levels()
        .iter()
        .map(|a| format!("{}", a.get()))
        .collect::<Vec<_>>()
        .join(", "))
}

pub fn cmd_population_scale(levels: &[f64], q1: f64) -> Result<String> {
    let ladder = AlphaLadder::new(levels.to_vec())?;
    let q = population_scale(q1, &ladder)?;
    Ok(q.iter().map(|v| format!("{}", v.round() as i64)).collect::<Vec<_>>().join(", "))
}

// ---------------------------------------------------------------------------
// reproduce
// ---------------------------------------------------------------------------

#[derive(Debug, Serialize)]
struct Provenance<'a, P: Serialize> {
    target: &'a str,
    engine_version: &'a str,
    seed: Option<u64>,
    parameters: P,
}

fn write_file(dir: &Path, name: &str, contents: &str) -> Result<()> {
    let path = dir.join(name);
    std::fs::write(&path, contents)
        .map_err(|e| Error::Contract(format!("cannot write {}: {e}", path.display())))
}

fn provenance<P: Serialize>(target: &str, seed: Option<u64>, parameters: P) -> String {
    let doc = Provenance {
        target,
        engine_version: env!("CARGO_PKG_VERSION"),
        seed,
        parameters,
    };
    let mut s = serde_json::to_string_pretty(&doc).expect("serializable provenance");
    s.push('\n');
    s
}

fn residual_report<const K: usize>(
    title: &str,
    table: &CostTable,
    reference_rows: &[((f64, f64), reference::RefRow<K>)],
    relative: bool,
    tolerance: f64,
) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let _ = writeln!(
        out,
        "{}",
        if relative {
            format!("cells compared at a relative tolerance of {tolerance:.0e}; residuals beyond 2% are flagged")
        } else {
            format!("cells compared at an absolute tolerance of {tolerance}")
        }
    );
    let mut worst: f64 = 0.0;
    for (i, (_, want)) in reference_rows.iter().enumerate() {
        let got = &table.cells[i];
        let mut refs: Vec<f64> = want.singles.to_vec();
        refs.push(want.multi);
        refs.push(want.optimal);
        for (j, (&g, &w)) in got.iter().zip(refs.iter()).enumerate() {
            let resid = if relative { (g - w).abs() / w.abs().max(1e-12) } else { (g - w).abs() };
            worst = worst.max(resid);
            let flag = if relative {
                if resid > tolerance {
                    "  <-- beyond tolerance"
                } else if resid > 0.02 {
                    "  <-- beyond 2%"
                } else {
                    ""
                }
            } else if resid > tolerance {
                "  <-- beyond tolerance"
            } else {
                ""
            };
            let _ = writeln!(
                out,
                "{} / {}: engine {:.4}, reference {:.4}, residual {}{}{}",
                table.row_labels[i],
                table.col_labels[j],
                g,
                w,
                if relative { format!("{:.2}%", 100.0 * resid) } else { format!("{resid:.4}") },
                if relative { String::new() } else { String::new() },
                flag,
            );
        }
        if let Some(oa) = &table.optimal_alpha {
            let d = (oa[i] - want.optimal_alpha).abs();
            let flag = if d > 0.03 { "  <-- beyond 0.03" } else { "" };
            let _ = writeln!(
                out,
                "{} / optimal alpha: engine {:.2}, reference {:.2}, |diff| {:.3}{}",
                table.row_labels[i], oa[i], want.optimal_alpha, d, flag
            );
        }
    }
    let _ = writeln!(
        out,
        "worst residual: {}",
        if relative { format!("{:.2}%", 100.0 * worst) } else { format!("{worst:.4}") }
    );
    out
}

pub fn reproduce_table1(out_dir: &Path) -> Result<()> {
    let ladder = AlphaLadder::new(reference::DRUG_TABLE_ALPHAS.to_vec())?;
    let default = MolnupiravirParams::default();
    let table = studies::table1(
        &default,
        &reference::TABLE1_GRID_RDS,
        &reference::TABLE1_GRID_PS,
        &ladder,
    )?;
    write_file(out_dir, "table1.txt", &render_table(&table, TableFormat::Text))?;
    write_file(out_dir, "table1.csv", &render_table(&table, TableFormat::Csv))?;

    // Variant comparison: per-group variance reading and rounded boundary.
    let per_group = MolnupiravirParams { variance: VarianceConvention::PerGroup, ..default };
    let rounded = MolnupiravirParams { rounded_boundary: true, ..default };
    let t_pg = studies::table1(
        &per_group,
        &reference::TABLE1_GRID_RDS,
        &reference::TABLE1_GRID_PS,
        &ladder,
    )?;
    let t_rm = studies::table1(
        &rounded,
        &reference::TABLE1_GRID_RDS,
        &reference::TABLE1_GRID_PS,
        &ladder,
    )?;
    let mut report = residual_report(
        "table1: default variant (n = total sample size, exact boundary)",
        &table,
        &reference::TABLE1,
        true,
        0.05,
    );
    report.push('\n');
    report.push_str(&residual_report(
        "table1: per-group variance variant",
        &t_pg,
        &reference::TABLE1,
        true,
        0.05,
    ));
    report.push('\n');
    report.push_str(&residual_report(
        "table1: rounded-boundary variant (M = -0.018)",
        &t_rm,
        &reference::TABLE1,
        true,
        0.05,
    ));
    write_file(out_dir, "table1_report.txt", &report)?;
    write_file(
        out_dir,
        "table1_provenance.json",
        &provenance("table1", None, (&default, &ladder)),
    )
}

pub fn reproduce_table2(out_dir: &Path) -> Result<()> {
    let ladder = AlphaLadder::new(reference::DRUG_TABLE_ALPHAS.to_vec())?;
    let default = MolnupiravirParams::default();
    let table = studies::table2(&default, &reference::TABLE2_SCENARIOS, &ladder)?;
    write_file(out_dir, "table2.txt", &render_table(&table, TableFormat::Text))?;
    write_file(out_dir, "table2.csv", &render_table(&table, TableFormat::Csv))?;
    let per_group = MolnupiravirParams { variance: VarianceConvention::PerGroup, ..default };
    let t_pg = studies::table2(&per_group, &reference::TABLE2_SCENARIOS, &ladder)?;
    let mut report = residual_report(
        "table2: default variant (n = total sample size)",
        &table,
        &reference::TABLE2,
        true,
        0.05,
    );
    report.push('\n');
    report.push_str(&residual_report(
        "table2: per-group variance variant",
        &t_pg,
        &reference::TABLE2,
        true,
        0.05,
    ));
    write_file(out_dir, "table2_report.txt", &report)?;
    write_file(
        out_dir,
        "table2_provenance.json",
        &provenance("table2", None, (&default, &ladder)),
    )
}

fn table3_base(anticipated_sd: f64) -> AnticipatedScenario {
    AnticipatedScenario {
        boundary_m: 0.0,
        anticipated_mean: 0.4,
        anticipated_sd,
        true_mean: 0.4,
        true_sd: 0.2,
        design_alpha: 0.025,
        design_power: 0.8,
        cost_ratio: 1.0,
    }
}

pub fn reproduce_table3(out_dir: &Path) -> Result<()> {
    let ladder = AlphaLadder::new(reference::TABLE3_ALPHAS.to_vec())?;
    let mut report = String::new();
    // Default run plus the caption-ambiguity sensitivity run, plus the
    // anticipated-sd value that best matches the published single-level
    // cells.
    for (tag, sd) in [("0.1", 0.1), ("0.01", 0.01), ("0.2", 0.2)] {
        let base = table3_base(sd);
        let table = studies::table3(
            &base,
            &reference::TABLE3_RATIOS,
            &reference::TABLE3_OFFSETS,
            &ladder,
        )?;
        write_file(out_dir, &format!("table3_sd{tag}.txt"), &render_table(&table, TableFormat::Text))?;
        write_file(out_dir, &format!("table3_sd{tag}.csv"), &render_table(&table, TableFormat::Csv))?;
        report.push_str(&residual_report(
            &format!("table3: anticipated sd = {tag} (absolute residuals vs published 2-decimal cells)"),
            &table,
            &reference::TABLE3,
            false,
            0.05,
        ));
        report.push('\n');
    }
    report.push_str(
        "note: the published optimal column is inconsistent with the published single-level\n\
         columns (e.g. ratio=10 / true mean=M-0.1 reports cost 0.16 at alpha 0.02 while the\n\
         alpha=0.025 single-level cell is 0.24; an expected-cost curve bounded by\n\
         |d cost/d alpha| <= C0(k) cannot bridge that gap over 0.005). No power-consistent\n\
         parameterization reproduces it, so optimal-column residuals remain large under\n\
         every anticipated-sd run; anticipated sd = 0.2 reproduces all single-level cells\n\
         within the published rounding.\n",
    );
    write_file(out_dir, "table3_report.txt", &report)?;
    write_file(
        out_dir,
        "table3_provenance.json",
        &provenance("table3", None, (table3_base(0.1), &ladder)),
    )
}

// ---------------------------------------------------------------------------
// simulations
// ---------------------------------------------------------------------------

fn sim_config(
    seed: u64,
    ladder: &[f64],
    prevalence: SimPrevalence,
    n_total: u64,
) -> Result<SimConfig> {
    Ok(SimConfig {
        runs: 2000,
        seed,
        ladder: AlphaLadder::new(ladder.to_vec())?,
        prevalence,
        n_total,
        df_mode: DfMode::StudentT,
        range0: (0.0, 100.0),
        range1: (0.0, 25.0),
        optimal_resolution: 512,
    })
}

fn sim_table_text(title: &str, alphas: &[f64], rows: &[(String, SimSummary)]) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let mut header = String::from("scenario");
    for a in alphas {
        let _ = write!(header, "  alpha={a}");
    }
    header.push_str("  multi-level  optimal");
    let _ = writeln!(out, "{header}");
    for (label, s) in rows {
        let mut line = label.clone();
        for v in &s.singles {
            let _ = write!(line, "  {:.1} ({:.1})", v.mean, v.sd);
        }
        let _ = write!(line, "  {:.1} ({:.1})", s.multi.mean, s.multi.sd);
        let _ = write!(line, "  {:.1} ({:.1})", s.optimal.mean, s.optimal.sd);
        let _ = writeln!(out, "{line}");
    }
    out
}

fn sim_table_csv(alphas: &[f64], rows: &[(String, SimSummary)]) -> String {
    let mut header = String::from("scenario");
    for a in alphas {
        let _ = write!(header, ",alpha={a}_mean,alpha={a}_sd");
    }
    header.push_str(",multi_mean,multi_sd,optimal_mean,optimal_sd\n");
    let mut out = header;
    for (label, s) in rows {
        let mut line = label.replace(',', ";");
        for v in &s.singles {
            let _ = write!(line, ",{:.4},{:.4}", v.mean, v.sd);
        }
        let _ = write!(line, ",{:.4},{:.4}", s.multi.mean, s.multi.sd);
        let _ = write!(line, ",{:.4},{:.4}", s.optimal.mean, s.optimal.sd);
        out.push_str(&line);
        out.push('\n');
    }
    out
}

fn sim_reference_report<const S: usize>(
    title: &str,
    rows: &[(String, SimSummary)],
    refs: &[((f64, f64, u64), reference::SimRef<S>)],
) -> String {
    // Tolerance per cell: 3 * (published sd) / sqrt(2000) + 5% of the mean.
    let mut out = String::new();
    let _ = writeln!(out, "{title}");
    let mut worst_excess: f64 = 0.0;
    for ((label, s), (_, r)) in rows.iter().zip(refs) {
        let mut got: Vec<f64> = s.singles.iter().map(|v| v.mean).collect();
        got.push(s.multi.mean);
        got.push(s.optimal.mean);
        for (j, (&g, (&w, &sd))) in got.iter().zip(r.means.iter().zip(r.sds.iter())).enumerate() {
            let tol = 3.0 * sd / (2000f64).sqrt() + 0.05 * w;
            let excess = (g - w).abs() - tol;
            worst_excess = worst_excess.max(excess);
            let _ = writeln!(
                out,
                "{label} [{j}]: engine {g:.3}, published {w} ({sd}), tolerance {tol:.3}{}",
                if excess > 0.0 { "  <-- beyond tolerance" } else { "" }
            );
        }
    }
    let _ = writeln!(out, "worst excess over tolerance: {worst_excess:.4}");
    out
}

/// Simulation cells of the (a) or (b) page: dichotomous and continuous.
pub fn reproduce_sim(out_dir: &Path, three_levels: bool, seed: u64) -> Result<()> {
    let (tag, ladder): (&str, &[f64]) = if three_levels {
        ("s3b", &reference::SIM_DICH_LADDER_B)
    } else {
        ("s3a", &reference::SIM_DICH_LADDER_A)
    };
    // Dichotomous page.
    let mut dich_rows = Vec::new();
    let dich_params: Vec<(f64, f64, u64)> = if three_levels {
        reference::SIM_DICH_B.iter().map(|(k, _)| *k).collect()
    } else {
        reference::SIM_DICH_A.iter().map(|(k, _)| *k).collect()
    };
    for &(d, p_true, n_total) in &dich_params {
        let config = sim_config(
            seed,
            ladder,
            SimPrevalence::Dichotomous { p_true, effect_offset: d },
            n_total,
        )?;
        dich_rows.push((format!("d={d}; P={p_true}; n={n_total}"), simulate(&config)?));
    }
    write_file(
        out_dir,
        &format!("{tag}_dichotomous.txt"),
        &sim_table_text(
            "Average expected total error costs, dichotomous effect distributions",
            ladder,
            &dich_rows,
        ),
    )?;
    write_file(out_dir, &format!("{tag}_dichotomous.csv"), &sim_table_csv(ladder, &dich_rows))?;

    // Continuous page.
    let mut cont_rows = Vec::new();
    let cont_params: Vec<(f64, f64, u64)> = if three_levels {
        reference::SIM_CONT_B.iter().map(|(k, _)| *k).collect()
    } else {
        reference::SIM_CONT_A.iter().map(|(k, _)| *k).collect()
    };
    for &(m, sd, n_total) in &cont_params {
        let config = sim_config(
            seed,
            ladder,
            SimPrevalence::Continuous { sd, boundary_m: m },
            n_total,
        )?;
        cont_rows.push((format!("M={m}; sigma={sd}; n={n_total}"), simulate(&config)?));
    }
    write_file(
        out_dir,
        &format!("{tag}_continuous.txt"),
        &sim_table_text(
            "Average expected total error costs, zero-mean normal effect distributions",
            ladder,
            &cont_rows,
        ),
    )?;
    write_file(out_dir, &format!("{tag}_continuous.csv"), &sim_table_csv(ladder, &cont_rows))?;

    // Reference comparison.
    let mut report = String::new();
    if three_levels {
        report.push_str(&sim_reference_report(
            "s3b dichotomous vs published",
            &dich_rows,
            &reference::SIM_DICH_B,
        ));
        report.push('\n');
        report.push_str(&sim_reference_report(
            "s3b continuous vs published",
            &cont_rows,
            &reference::SIM_CONT_B,
        ));
    } else {
        report.push_str(&sim_reference_report(
            "s3a dichotomous vs published",
            &dich_rows,
            &reference::SIM_DICH_A,
        ));
        report.push('\n');
        report.push_str(&sim_reference_report(
            "s3a continuous vs published",
            &cont_rows,
            &reference::SIM_CONT_A,
        ));
    }
    write_file(out_dir, &format!("{tag}_report.txt"), &report)?;
    write_file(
        out_dir,
        &format!("{tag}_provenance.json"),
        &provenance(tag, Some(seed), (ladder, &dich_params, &cont_params, 2000u32)),
    )
}

// ---------------------------------------------------------------------------
// figure data
// ---------------------------------------------------------------------------

pub fn reproduce_fig1(out_dir: &Path) -> Result<()> {
    let scn = table3_base(0.1);
    let data = fig1_data(&scn)?;
    let mut densities = String::from("effect,true_density,anticipated_density\n");
    for ((e, t), a) in data
        .effect_grid
        .iter()
        .zip(&data.true_density)
        .zip(&data.anticipated_density)
    {
        let _ = writeln!(densities, "{e},{t},{a}");
    }
    write_file(out_dir, "fig1_densities.csv", &densities)?;

    let mut sizes = String::from("anticipated_effect,per_group_n\n");
    for (x, n) in &data.sample_size_curve {
        let _ = writeln!(sizes, "{x},{n}");
    }
    write_file(out_dir, "fig1_sample_size.csv", &sizes)?;

    let mut dens = String::from("per_group_n,density,anticipated_effect\n");
    for p in &data.size_density {
        let _ = writeln!(dens, "{},{},{}", p.per_group_n, p.density, p.x);
    }
    write_file(out_dir, "fig1_size_density.csv", &dens)?;

    // Scenario geometry as SVG: true-effect density, the sampling
    // distribution of a boundary effect at the anticipated-mean design, and
    // the design-level critical values.
    let prev = ContinuousPrevalence::new(
        scn.true_mean,
        scn.true_sd,
        scn.boundary_m,
        MeaningfulSide::Above,
    )?;
    let per_group = multalpha::testmodel::required_group_size(
        scn.anticipated_mean - scn.boundary_m,
        Probability::new(scn.design_alpha)?,
        Probability::new(scn.design_power)?,
    )?;
    let model = multalpha::testmodel::StandardizedEffectModel::new(
        multalpha::testmodel::TwoGroupDesign::new(2 * per_group)?,
        scn.boundary_m,
        DfMode::Normal,
    );
    let se = model.design.standard_error();
    let alphas = [Probability::new(0.25)?, Probability::new(0.025)?];
    let criticals: Vec<f64> = alphas
        .iter()
        .map(|a| {
            Ok(scn.boundary_m
                + se * multalpha::specfun::normal_quantile(Probability::new(1.0 - a.get())?)?)
        })
        .collect::<Result<Vec<_>>>()?;
    let svg = plot_scenario(&prev, &model, scn.boundary_m, se, &alphas, &criticals)?;
    write_file(out_dir, "fig1_scenario.svg", &svg)?;
    write_file(out_dir, "fig1_provenance.json", &provenance("fig1", None, scn))
}
