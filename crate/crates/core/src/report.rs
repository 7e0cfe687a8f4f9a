//! Rendering of cost tables, multi-level confidence intervals, finding
//! statements, star annotations, and scenario geometry plots.
//!
//! All rendering is deterministic: fixed decimal formatting, no locale, no
//! timestamps, so that emitted artifacts are byte-stable under version
//! control.

use crate::costengine::RejectionModel;
use crate::scenario::{AlphaLadder, ContinuousPrevalence, MeaningfulSide};
use crate::specfun::{phi_inv, Probability};
use crate::{Error, Result};

// ---------------------------------------------------------------------------
// Cost tables
// ---------------------------------------------------------------------------

/// How a table is serialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableFormat {
    Text,
    Csv,
}

/// A labelled table of expected costs. The leading `n_single` columns hold
/// single-level test costs; the lowest of these per row is marked. An
/// optional optimal column carries a bracketed minimizing alpha.
#[derive(Debug, Clone, PartialEq)]
pub struct CostTable {
    pub title: String,
    pub row_labels: Vec<String>,
    pub col_labels: Vec<String>,
    pub cells: Vec<Vec<f64>>,
    /// Per-row index (into columns) of the lowest single-level cost.
    pub bold: Vec<usize>,
    /// Bracketed optimal alpha per row, when the last column is an optimum.
    pub optimal_alpha: Option<Vec<f64>>,
    /// Number of leading columns that are single-level tests.
    pub n_single: usize,
    /// Decimals used when rendering.
    pub precision: usize,
}

impl CostTable {
    /// Build a table, deriving the per-row bold marker from the single-level
    /// columns (ties resolve to the leftmost, so the marker is unique).
    pub fn new(
        title: impl Into<String>,
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        cells: Vec<Vec<f64>>,
        n_single: usize,
        optimal_alpha: Option<Vec<f64>>,
        precision: usize,
    ) -> Result<Self> {
        if cells.len() != row_labels.len() {
            return Err(Error::Contract("one cell row per row label required".into()));
        }
        for row in &cells {
            if row.len() != col_labels.len() {
                return Err(Error::Contract("ragged cost table".into()));
            }
        }
        if n_single == 0 || n_single > col_labels.len() {
            return Err(Error::Contract("n_single out of range".into()));
        }
        if let Some(oa) = &optimal_alpha {
            if oa.len() != row_labels.len() {
                return Err(Error::Contract("one optimal alpha per row required".into()));
            }
        }
        let bold = cells
            .iter()
            .map(|row| {
                let mut best = 0;
                for j in 1..n_single {
                    if row[j] < row[best] {
                        best = j;
                    }
                }
                best
            })
            .collect();
        Ok(Self {
            title: title.into(),
            row_labels,
            col_labels,
            cells,
            bold,
            optimal_alpha,
            n_single,
            precision,
        })
    }
}

/// Render a [`CostTable`] as aligned text or CSV. The text form marks the
/// lowest single-level cost per row with surrounding asterisks and prints
/// the optimal column as `cost (alpha)`. CSV uses '.' decimals and splits
/// the optimal alpha into its own trailing column.
pub fn render_table(table: &CostTable, format: TableFormat) -> String {
    match format {
        TableFormat::Text => render_text(table),
        TableFormat::Csv => render_csv(table),
    }
}

fn fmt_cell(v: f64, precision: usize) -> String {
    format!("{v:.precision$}")
}

fn render_text(table: &CostTable) -> String {
    let ncols = table.col_labels.len();
    let mut grid: Vec<Vec<String>> = Vec::with_capacity(table.cells.len() + 1);
    let mut header = vec![String::new()];
    header.extend(table.col_labels.iter().cloned());
    grid.push(header);
    for (i, row) in table.cells.iter().enumerate() {
        let mut out = vec![table.row_labels[i].clone()];
        for (j, &v) in row.iter().enumerate() {
            let mut s = fmt_cell(v, table.precision);
            if j == table.bold[i] {
                s = format!("*{s}*");
            }
            if j == ncols - 1 {
                if let Some(oa) = &table.optimal_alpha {
                    s = format!("{s} ({:.2})", oa[i]);
                }
            }
            out.push(s);
        }
        grid.push(out);
    }
    let widths: Vec<usize> = (0..=ncols)
        .map(|j| grid.iter().map(|r| r[j].len()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    out.push_str(&table.title);
    out.push('\n');
    for row in &grid {
        let mut line = String::new();
        for (j, cell) in row.iter().enumerate() {
            if j > 0 {
                line.push_str("  ");
            }
            if j == 0 {
                line.push_str(&format!("{cell:<width$}", width = widths[0]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[j]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

fn render_csv(table: &CostTable) -> String {
    let mut out = String::new();
    out.push_str("row");
    for c in &table.col_labels {
        out.push(',');
        out.push_str(&c.replace(',', ";"));
    }
    if table.optimal_alpha.is_some() {
        out.push_str(",optimal_alpha");
    }
    out.push('\n');
    for (i, row) in table.cells.iter().enumerate() {
        out.push_str(&table.row_labels[i].replace(',', ";"));
        for &v in row {
            out.push(',');
            out.push_str(&fmt_cell(v, table.precision));
        }
        if let Some(oa) = &table.optimal_alpha {
            out.push_str(&format!(",{:.2}", oa[i]));
        }
        out.push('\n');
    }
    out
}

// ---------------------------------------------------------------------------
// Multi-level confidence intervals
// ---------------------------------------------------------------------------

/// Interval bounds at one alpha level; `lower` is absent for one-sided
/// intervals.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CiLevel {
    pub alpha: f64,
    pub lower: Option<f64>,
    pub upper: f64,
}

/// Confidence intervals dual to a multi-alpha test: one interval per ladder
/// level, nested, widening as the level becomes more stringent.
#[derive(Debug, Clone, PartialEq)]
pub struct MultiLevelCi {
    pub estimate: f64,
    pub se: f64,
    pub levels: Vec<CiLevel>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sidedness {
    OneSided,
    TwoSided,
}

/// Confidence intervals about one estimate at every ladder level:
/// two-sided bounds `estimate ± z_{1−α/2}·se`, or the one-sided upper bound
/// `estimate + z_{1−α}·se`.
pub fn multilevel_ci(
    estimate: f64,
    se: f64,
    ladder: &AlphaLadder,
    sidedness: Sidedness,
) -> Result<MultiLevelCi> {
    if !(se > 0.0 && se.is_finite()) {
        return Err(Error::Domain(format!("standard error must be positive, got {se}")));
    }
    if !estimate.is_finite() {
        return Err(Error::Domain("estimate must be finite".into()));
    }
    let levels = ladder
        .levels()
        .iter()
        .map(|&a| {
            let alpha = a.get();
            match sidedness {
                Sidedness::TwoSided => {
                    let half = phi_inv(1.0 - alpha / 2.0) * se;
                    CiLevel { alpha, lower: Some(estimate - half), upper: estimate + half }
                }
                Sidedness::OneSided => CiLevel {
                    alpha,
                    lower: None,
                    upper: estimate + phi_inv(1.0 - alpha) * se,
                },
            }
        })
        .collect();
    Ok(MultiLevelCi { estimate, se, levels })
}

// ---------------------------------------------------------------------------
// Finding statements
// ---------------------------------------------------------------------------

/// Textual report of a multi-alpha test outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct Finding {
    /// Index (1-based) of the most stringent level at which the test
    /// hypothesis was rejected; 0 when not rejected at any level.
    pub rejected_level: usize,
    /// Formal sentence fragment tying the finding to its alpha levels.
    pub formal: String,
    /// Evidence-label sentence using the supplied per-level labels.
    pub labeled: String,
}

/// Format an alpha level without trailing zeros (0.05, 0.01, 0.0025, ...).
fn fmt_alpha(a: f64) -> String {
    let mut s = format!("{a}");
    if s.len() > 10 {
        s = format!("{a:.8}");
        while s.ends_with('0') {
            s.pop();
        }
    }
    s
}

/// State the most stringent ladder level at which `p_value < α_m`, in both
/// the formal and the label-based form.
pub fn finding_statement(
    p_value: Probability,
    ladder: &AlphaLadder,
    labels: &[&str],
) -> Result<Finding> {
    if labels.len() != ladder.len() {
        return Err(Error::Contract(format!(
            "need one label per ladder level ({}), got {}",
            ladder.len(),
            labels.len()
        )));
    }
    let p = p_value.get();
    if p <= 0.0 {
        return Err(Error::Domain("p-value must be positive".into()));
    }
    let mut rejected = 0usize; // count of levels with p < alpha_m
    for (m, a) in ladder.levels().iter().enumerate() {
        if p < a.get() {
            rejected = m + 1;
        } else {
            break;
        }
    }
    let all = ladder
        .levels()
        .iter()
        .map(|a| fmt_alpha(a.get()))
        .collect::<Vec<_>>()
        .join(", ");
    let (formal, labeled) = if rejected == 0 {
        (
            format!("was not rejected at any alpha level ({all})"),
            "The data provided no evidence at any of the tested levels.".to_string(),
        )
    } else if rejected == ladder.len() {
        (
            format!("was rejected at alpha level {}", fmt_alpha(ladder.level(rejected - 1).get())),
            format!(
                "The data provided {} evidence (rejected at alpha level {}).",
                labels[rejected - 1],
                fmt_alpha(ladder.level(rejected - 1).get())
            ),
        )
    } else {
        (
            format!(
                "rejected at alpha level {} but was not rejected at alpha level {}",
                fmt_alpha(ladder.level(rejected - 1).get()),
                fmt_alpha(ladder.level(rejected).get())
            ),
            format!(
                "The data provided {} evidence (rejected at alpha level {} but not at {}).",
                labels[rejected - 1],
                fmt_alpha(ladder.level(rejected - 1).get()),
                fmt_alpha(ladder.level(rejected).get())
            ),
        )
    };
    Ok(Finding { rejected_level: rejected, formal, labeled })
}

// ---------------------------------------------------------------------------
// Star annotations
// ---------------------------------------------------------------------------

/// Configurable alpha-to-star map for tabular reporting, most stringent
/// level first.
#[derive(Debug, Clone, PartialEq)]
pub struct StarMap {
    /// `(alpha, stars)` pairs sorted by increasing alpha.
    thresholds: Vec<(f64, String)>,
}

impl StarMap {
    pub fn new(mut thresholds: Vec<(f64, String)>) -> Result<Self> {
        if thresholds.is_empty() {
            return Err(Error::Contract("star map needs at least one threshold".into()));
        }
        thresholds.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
        Ok(Self { thresholds })
    }

    /// Stars from a ladder: one star at the least stringent level up to k
    /// stars at the most stringent.
    pub fn from_ladder(ladder: &AlphaLadder) -> Self {
        let thresholds = ladder
            .levels()
            .iter()
            .enumerate()
            .map(|(m, a)| (a.get(), "*".repeat(m + 1)))
            .collect();
        Self::new(thresholds).expect("ladder is nonempty")
    }

    /// Annotation for a p-value: the stars of the most stringent satisfied
    /// threshold, or the empty string.
    pub fn annotate(&self, p_value: f64) -> &str {
        self.thresholds
            .iter()
            .find(|(a, _)| p_value < *a)
            .map(|(_, s)| s.as_str())
            .unwrap_or("")
    }

    /// "*** statistically significant at alpha level 0.003"-style caption
    /// lines, most stringent first.
    pub fn caption(&self) -> String {
        self.thresholds
            .iter()
            .map(|(a, s)| format!("{s} statistically significant at alpha level {}", fmt_alpha(*a)))
            .collect::<Vec<_>>()
            .join("; ")
    }
}

// ---------------------------------------------------------------------------
// Scenario plots
// ---------------------------------------------------------------------------

const SVG_W: f64 = 640.0;
const SVG_H: f64 = 480.0;
const MARGIN: f64 = 48.0;

/// Render an SVG of a continuous scenario: the prevalence density, the
/// sampling distribution of the estimate at a chosen true effect, one
/// vertical critical-value line per alpha, and the Type I / Type II
/// error-rate curves. Output is byte-deterministic for fixed input.
///
/// Line widths of critical-value rules grow with stringency: level index m
/// (0-based from the most lenient) is drawn at width 1 + m/2.
pub fn plot_scenario<M: RejectionModel>(
    prev: &ContinuousPrevalence,
    model: &M,
    sampling_at: f64,
    sampling_se: f64,
    alphas: &[Probability],
    critical_values: &[f64],
) -> Result<String> {
    if alphas.len() != critical_values.len() {
        return Err(Error::Contract("one critical value per alpha required".into()));
    }
    if !(sampling_se > 0.0) {
        return Err(Error::Domain("sampling se must be positive".into()));
    }
    let (lo, hi) = prev.support();
    let lo = lo.min(sampling_at - 4.0 * sampling_se).min(prev.boundary_m);
    let hi = hi.max(sampling_at + 4.0 * sampling_se).max(prev.boundary_m);
    let n = 257;
    let xs: Vec<f64> = (0..n).map(|i| lo + (hi - lo) * i as f64 / (n - 1) as f64).collect();
    let dens: Vec<f64> = xs.iter().map(|&x| prev.density_at(x)).collect();
    let samp: Vec<f64> = xs
        .iter()
        .map(|&x| {
            crate::specfun::normal_pdf((x - sampling_at) / sampling_se) / sampling_se
        })
        .collect();
    let ymax = dens
        .iter()
        .chain(samp.iter())
        .cloned()
        .fold(0.0f64, f64::max)
        .max(1e-12);

    let sx = |x: f64| MARGIN + (x - lo) / (hi - lo) * (SVG_W - 2.0 * MARGIN);
    let sy = |y: f64| SVG_H - MARGIN - y * (SVG_H - 2.0 * MARGIN);

    let polyline = |ys: &[f64], scale: f64, class: &str| {
        let pts = xs
            .iter()
            .zip(ys)
            .map(|(&x, &y)| format!("{:.3},{:.3}", sx(x), sy(y * scale)))
            .collect::<Vec<_>>()
            .join(" ");
        format!("<polyline class=\"{class}\" fill=\"none\" points=\"{pts}\"/>")
    };

    let mut svg = String::new();
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{SVG_W}\" height=\"{SVG_H}\" viewBox=\"0 0 {SVG_W} {SVG_H}\">\n"
    ));
    svg.push_str("<style>.prevalence{stroke:#1f77b4;stroke-width:2}.sampling{stroke:#555;stroke-width:1;stroke-dasharray:4 3}.critical{stroke:#d62728}.type1{stroke:#2ca02c;stroke-width:1.5}.type2{stroke:#ff7f0e;stroke-width:1.5}.axis{stroke:#000;stroke-width:1}.boundary{stroke:#000;stroke-width:1;stroke-dasharray:2 2}</style>\n");
    // Axes.
    svg.push_str(&format!(
        "<line class=\"axis\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>\n",
        MARGIN,
        SVG_H - MARGIN,
        SVG_W - MARGIN,
        SVG_H - MARGIN
    ));
    svg.push_str(&format!(
        "<line class=\"axis\" x1=\"{:.3}\" y1=\"{:.3}\" x2=\"{:.3}\" y2=\"{:.3}\"/>\n",
        MARGIN,
        MARGIN,
        MARGIN,
        SVG_H - MARGIN
    ));
    // Densities, scaled into the unit box.
    svg.push_str(&polyline(&dens, 1.0 / ymax, "prevalence"));
    svg.push('\n');
    svg.push_str(&polyline(&samp, 1.0 / ymax, "sampling"));
    svg.push('\n');
    // Error-rate curves (already in [0,1]).
    let mut t1 = Vec::with_capacity(n);
    let mut t2 = Vec::with_capacity(n);
    let a0 = alphas.first().copied().unwrap_or(Probability::new_unchecked(0.05));
    for &x in &xs {
        let rej = model.rejection_probability(x, a0)?;
        let meaningful = match prev.meaningful {
            MeaningfulSide::Above => x > prev.boundary_m,
            MeaningfulSide::Below => x < prev.boundary_m,
        };
        t1.push(if meaningful { 0.0 } else { rej });
        t2.push(if meaningful { 1.0 - rej } else { 0.0 });
    }
    svg.push_str(&polyline(&t1, 1.0, "type1"));
    svg.push('\n');
    svg.push_str(&polyline(&t2, 1.0, "type2"));
    svg.push('\n');
    // Boundary and critical-value rules.
    svg.push_str(&format!(
        "<line class=\"boundary\" x1=\"{0:.3}\" y1=\"{1:.3}\" x2=\"{0:.3}\" y2=\"{2:.3}\"/>\n",
        sx(prev.boundary_m),
        MARGIN,
        SVG_H - MARGIN
    ));
    for (i, (&a, &cv)) in alphas.iter().zip(critical_values).enumerate() {
        svg.push_str(&format!(
            "<line class=\"critical\" stroke-width=\"{:.1}\" x1=\"{1:.3}\" y1=\"{2:.3}\" x2=\"{1:.3}\" y2=\"{3:.3}\"><title>alpha={4}</title></line>\n",
            1.0 + i as f64 * 0.5,
            sx(cv),
            MARGIN,
            SVG_H - MARGIN,
            fmt_alpha(a.get()),
        ));
    }
    svg.push_str("</svg>\n");
    Ok(svg)
}
