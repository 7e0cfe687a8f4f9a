//! Published reference values the reproduction targets are checked
//! against. Single-level and multi-level cells are expected to agree within
//! a few percent; residuals beyond that are listed by the reproduction
//! reports together with the variant comparisons.

/// Ladder used by the dichotomous and continuous drug tables.
pub const DRUG_TABLE_ALPHAS: [f64; 3] = [0.25, 0.05, 0.001];

/// One row of a published cost table: cells for each single level, the
/// multi-level test, the optimal cost, and the bracketed optimal alpha.
#[derive(Debug, Clone, Copy)]
pub struct RefRow<const K: usize> {
    pub singles: [f64; K],
    pub multi: f64,
    pub optimal: f64,
    pub optimal_alpha: f64,
}

/// Dichotomous drug table: rows keyed by (risk difference, prevalence).
pub const TABLE1_GRID_RDS: [f64; 2] = [-0.025, -0.05];
pub const TABLE1_GRID_PS: [f64; 2] = [0.5, 0.1];
pub const TABLE1: [((f64, f64), RefRow<3>); 4] = [
    (
        (-0.025, 0.5),
        RefRow { singles: [166.5, 143.5, 146.1], multi: 149.5, optimal: 143.2, optimal_alpha: 0.04 },
    ),
    (
        (-0.025, 0.1),
        RefRow { singles: [174.7, 57.0, 29.8], multi: 65.2, optimal: 29.3, optimal_alpha: 0.00 },
    ),
    (
        (-0.05, 0.5),
        RefRow { singles: [98.4, 108.1, 452.5], multi: 301.2, optimal: 77.5, optimal_alpha: 0.13 },
    ),
    (
        (-0.05, 0.1),
        RefRow { singles: [161.1, 49.9, 91.1], multi: 95.5, optimal: 45.8, optimal_alpha: 0.03 },
    ),
];

/// Continuous drug table: rows keyed by (mean, sd) of the risk-difference
/// distribution.
pub const TABLE2_SCENARIOS: [(f64, f64); 4] =
    [(0.0, 0.015), (0.0, 0.025), (-0.02, 0.015), (-0.02, 0.025)];
pub const TABLE2: [((f64, f64), RefRow<3>); 4] = [
    (
        (0.0, 0.015),
        RefRow { singles: [39.9, 28.4, 33.9], multi: 33.8, optimal: 28.3, optimal_alpha: 0.06 },
    ),
    (
        (0.0, 0.025),
        RefRow { singles: [45.3, 62.1, 109.6], multi: 85.6, optimal: 45.1, optimal_alpha: 0.23 },
    ),
    (
        (-0.02, 0.015),
        RefRow { singles: [96.3, 154.4, 254.3], multi: 199.3, optimal: 93.0, optimal_alpha: 0.34 },
    ),
    (
        (-0.02, 0.025),
        RefRow { singles: [69.9, 130.8, 281.0], multi: 203.7, optimal: 65.7, optimal_alpha: 0.36 },
    ),
];

/// Research-scenario table: rows keyed by (cost ratio, true-mean offset
/// from the boundary), two single levels (0.25, 0.025).
pub const TABLE3_RATIOS: [f64; 3] = [10.0, 4.0, 1.0];
pub const TABLE3_OFFSETS: [f64; 3] = [-0.1, 0.0, 0.4];
pub const TABLE3_ALPHAS: [f64; 2] = [0.25, 0.025];
pub const TABLE3: [((f64, f64), RefRow<2>); 9] = [
    ((10.0, -0.1), RefRow { singles: [0.44, 0.24], multi: 0.32, optimal: 0.16, optimal_alpha: 0.02 }),
    ((10.0, 0.0), RefRow { singles: [0.47, 0.34], multi: 0.39, optimal: 0.32, optimal_alpha: 0.06 }),
    ((10.0, 0.4), RefRow { singles: [0.11, 0.24], multi: 0.19, optimal: 0.06, optimal_alpha: 0.36 }),
    ((4.0, -0.1), RefRow { singles: [0.24, 0.22], multi: 0.23, optimal: 0.14, optimal_alpha: 0.02 }),
    ((4.0, 0.0), RefRow { singles: [0.28, 0.32], multi: 0.31, optimal: 0.27, optimal_alpha: 0.16 }),
    ((4.0, 0.4), RefRow { singles: [0.09, 0.24], multi: 0.18, optimal: 0.03, optimal_alpha: 0.36 }),
    ((1.0, -0.1), RefRow { singles: [0.15, 0.21], multi: 0.19, optimal: 0.09, optimal_alpha: 0.44 }),
    ((1.0, 0.0), RefRow { singles: [0.19, 0.31], multi: 0.26, optimal: 0.08, optimal_alpha: 0.43 }),
    ((1.0, 0.4), RefRow { singles: [0.08, 0.24], multi: 0.18, optimal: 0.01, optimal_alpha: 0.36 }),
];

/// A simulation cell: published `mean (sd)` per strategy.
#[derive(Debug, Clone, Copy)]
pub struct SimRef<const S: usize> {
    pub means: [f64; S],
    pub sds: [f64; S],
}

/// Two-level dichotomous simulations, rows (d, P, n_total); strategies are
/// alpha levels 0.025 and 0.0025, multi, optimal.
pub const SIM_DICH_LADDER_A: [f64; 2] = [0.025, 0.0025];
pub const SIM_DICH_A: [((f64, f64, u64), SimRef<4>); 8] = [
    ((0.15, 0.5, 24), SimRef { means: [12.8, 12.3, 12.6, 11.9], sds: [4.8, 5.0, 4.9, 4.9] }),
    ((0.15, 0.5, 192), SimRef { means: [11.4, 12.0, 11.7, 10.6], sds: [4.3, 5.0, 4.7, 4.2] }),
    ((0.15, 0.1, 24), SimRef { means: [4.6, 2.7, 3.6, 2.5], sds: [1.3, 1.0, 1.2, 1.0] }),
    ((0.15, 0.1, 192), SimRef { means: [4.4, 2.7, 3.5, 2.5], sds: [1.2, 1.0, 1.1, 1.0] }),
    ((0.5, 0.5, 24), SimRef { means: [11.2, 12.2, 11.7, 10.3], sds: [4.1, 4.9, 4.5, 3.8] }),
    ((0.5, 0.5, 192), SimRef { means: [2.1, 3.5, 2.8, 1.9], sds: [0.6, 1.3, 1.1, 0.6] }),
    ((0.5, 0.1, 24), SimRef { means: [4.2, 2.6, 3.4, 2.5], sds: [1.2, 1.0, 1.1, 1.0] }),
    ((0.5, 0.1, 192), SimRef { means: [2.4, 0.9, 1.7, 0.9], sds: [0.9, 0.3, 0.7, 0.3] }),
];

/// Three-level dichotomous simulations (alpha 0.025, 0.0025, 0.0005).
pub const SIM_DICH_LADDER_B: [f64; 3] = [0.025, 0.0025, 0.0005];
pub const SIM_DICH_B: [((f64, f64, u64), SimRef<5>); 8] = [
    ((0.15, 0.5, 24), SimRef { means: [19.7, 18.9, 18.8, 19.2, 18.7], sds: [5.9, 6.1, 6.1, 6.0, 6.1] }),
    ((0.15, 0.5, 192), SimRef { means: [17.1, 18.0, 18.4, 17.8, 16.5], sds: [5.1, 6.0, 6.1, 5.8, 5.0] }),
    ((0.15, 0.1, 24), SimRef { means: [6.9, 4.1, 3.8, 5.0, 3.8], sds: [1.6, 1.2, 1.2, 1.4, 1.2] }),
    ((0.15, 0.1, 192), SimRef { means: [6.4, 3.9, 3.8, 4.7, 3.7], sds: [1.5, 1.2, 1.2, 1.3, 1.2] }),
    ((0.5, 0.5, 24), SimRef { means: [16.7, 18.1, 18.4, 17.7, 15.8], sds: [5.0, 6.0, 6.2, 5.8, 4.7] }),
    ((0.5, 0.5, 192), SimRef { means: [3.2, 5.1, 8.4, 5.5, 2.9], sds: [0.7, 1.7, 2.8, 2.0, 0.7] }),
    ((0.5, 0.1, 24), SimRef { means: [6.3, 3.9, 3.8, 4.7, 3.8], sds: [1.5, 1.2, 1.3, 1.3, 1.3] }),
    ((0.5, 0.1, 192), SimRef { means: [3.7, 1.3, 1.8, 2.3, 1.3], sds: [1.1, 0.3, 0.6, 0.7, 0.4] }),
];

/// Two-level continuous simulations, rows (M, sigma, n_total).
pub const SIM_CONT_A: [((f64, f64, u64), SimRef<4>); 8] = [
    ((0.0, 0.5, 24), SimRef { means: [10.4, 11.8, 11.1, 8.5], sds: [4.1, 4.8, 4.5, 3.1] }),
    ((0.0, 0.5, 192), SimRef { means: [5.3, 7.1, 6.2, 3.6], sds: [2.1, 2.9, 2.5, 1.3] }),
    ((0.0, 1.0, 24), SimRef { means: [7.4, 9.6, 8.5, 5.2], sds: [2.8, 3.7, 3.3, 1.8] }),
    ((0.0, 1.0, 192), SimRef { means: [2.9, 4.0, 3.4, 1.9], sds: [1.1, 1.6, 1.4, 0.6] }),
    ((0.64, 0.5, 24), SimRef { means: [2.5, 2.5, 2.5, 2.4], sds: [1.0, 1.0, 1.0, 1.0] }),
    ((0.64, 0.5, 192), SimRef { means: [1.6, 2.0, 1.8, 1.4], sds: [0.6, 0.8, 0.7, 0.5] }),
    ((0.64, 1.0, 24), SimRef { means: [4.6, 5.6, 5.1, 3.8], sds: [1.8, 2.2, 2.0, 1.3] }),
    ((0.64, 1.0, 192), SimRef { means: [2.1, 2.8, 2.5, 1.5], sds: [0.8, 1.1, 1.0, 0.5] }),
];

/// Three-level continuous simulations.
pub const SIM_CONT_B: [((f64, f64, u64), SimRef<5>); 8] = [
    ((0.0, 0.5, 24), SimRef { means: [15.6, 17.8, 18.3, 17.3, 13.2], sds: [5.1, 6.0, 6.2, 5.8, 3.8] }),
    ((0.0, 0.5, 192), SimRef { means: [8.0, 10.7, 12.2, 10.3, 5.6], sds: [2.6, 3.5, 4.0, 3.4, 1.5] }),
    ((0.0, 1.0, 24), SimRef { means: [11.0, 14.3, 15.9, 13.7, 7.9], sds: [3.5, 4.7, 5.2, 4.5, 2.1] }),
    ((0.0, 1.0, 192), SimRef { means: [4.3, 6.0, 6.9, 5.7, 2.9], sds: [1.4, 2.0, 2.3, 1.9, 0.8] }),
    ((0.64, 0.5, 24), SimRef { means: [3.7, 3.7, 3.7, 3.7, 3.6], sds: [1.1, 1.2, 1.3, 1.2, 1.2] }),
    ((0.64, 0.5, 192), SimRef { means: [2.4, 2.9, 3.2, 2.8, 2.1], sds: [0.8, 1.0, 1.0, 0.9, 0.6] }),
    ((0.64, 1.0, 24), SimRef { means: [6.8, 8.3, 8.9, 8.0, 5.8], sds: [2.2, 2.7, 2.9, 2.6, 1.6] }),
    ((0.64, 1.0, 192), SimRef { means: [3.1, 4.2, 4.8, 4.0, 2.3], sds: [1.0, 1.4, 1.6, 1.4, 0.6] }),
];
