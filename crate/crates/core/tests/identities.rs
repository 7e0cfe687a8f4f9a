//! Structural identities of the cost engine: the weighted-average
//! decomposition, the sandwich bounds, the telescoping rearrangement of the
//! Type I sum, interval nesting, and serialization round trips.

mod common;

use multalpha::costengine::{
    cost_multi_continuous, cost_multi_continuous_proportional, cost_multi_dichotomous,
    cost_single_continuous, cost_single_dichotomous, weighted_decomposition, ConstantCosts,
    ScaledCosts,
};
use multalpha::report::{multilevel_ci, Sidedness};
use multalpha::rng::Xoshiro256PlusPlus;
use multalpha::scenario::{
    AlphaLadder, ContinuousPrevalence, CostSchedule, DichotomousPrevalence, MeaningfulSide,
};
use multalpha::specfun::Probability;
use multalpha::testmodel::{DfMode, StandardizedEffectModel, TwoGroupDesign};
use proptest::prelude::*;

fn p(v: f64) -> Probability {
    Probability::new(v).unwrap()
}

fn random_ladder(rng: &mut Xoshiro256PlusPlus, k: usize) -> AlphaLadder {
    // Strictly decreasing levels in (1e-6, 0.5).
    let mut levels: Vec<f64> = (0..k).map(|_| rng.uniform_in(1e-5, 0.5)).collect();
    levels.sort_by(|a, b| b.partial_cmp(a).unwrap());
    for i in 1..levels.len() {
        if levels[i] >= levels[i - 1] {
            levels[i] = levels[i - 1] * 0.7;
        }
    }
    AlphaLadder::new(levels).unwrap()
}

fn proportional_schedule(rng: &mut Xoshiro256PlusPlus, k: usize) -> CostSchedule {
    let r = rng.uniform_in(0.05, 5.0);
    let mut c0 = Vec::with_capacity(k);
    let mut acc = 0.0;
    for _ in 0..k {
        acc += rng.uniform_in(0.01, 10.0);
        c0.push(acc);
    }
    let c1 = c0.iter().map(|v| r * v).collect();
    CostSchedule::new(c0, c1).unwrap()
}

#[test]
fn weighted_average_identity_dichotomous() {
    let mut rng = Xoshiro256PlusPlus::from_seed(7001);
    let model = StandardizedEffectModel::new(
        TwoGroupDesign::new(64).unwrap(),
        0.1,
        DfMode::Normal,
    );
    for trial in 0..100 {
        let k = 1 + (rng.uniform() * 4.0) as usize;
        let ladder = random_ladder(&mut rng, k);
        let sched = proportional_schedule(&mut rng, k);
        let prev = DichotomousPrevalence {
            p_true: p(rng.uniform_in(0.0, 1.0)),
            effect_true: rng.uniform_in(0.1, 0.8),
            effect_null: 0.1,
        };
        let b = cost_multi_dichotomous(&prev, &model, &ladder, &sched).unwrap();
        let w = weighted_decomposition(&ladder, &sched).unwrap();
        assert!((w.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        let avg: f64 = w.iter().zip(&b.per_level).map(|(wi, ci)| wi * ci).sum();
        let denom = b.total.abs().max(1e-12);
        assert!(
            (b.total - avg).abs() / denom < 1e-9,
            "trial {trial}: multi {} vs weighted {avg}",
            b.total
        );
        // Sandwich.
        let lo = b.per_level.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = b.per_level.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(b.total >= lo - 1e-9 * denom && b.total <= hi + 1e-9 * denom);
    }
}

#[test]
fn weighted_average_identity_continuous() {
    let mut rng = Xoshiro256PlusPlus::from_seed(7002);
    let model = StandardizedEffectModel::new(
        TwoGroupDesign::new(96).unwrap(),
        0.2,
        DfMode::Normal,
    );
    for trial in 0..100 {
        let k = 1 + (rng.uniform() * 3.0) as usize;
        let ladder = random_ladder(&mut rng, k);
        let base = ConstantCosts {
            c0: rng.uniform_in(0.1, 10.0),
            c1: rng.uniform_in(0.1, 10.0),
        };
        // Proportional per-level structure: DC(m; e) = base(e) * dlambda_m.
        let dlambda: Vec<f64> = (0..k).map(|_| rng.uniform_in(0.01, 2.0)).collect();
        let lambda_k: f64 = dlambda.iter().sum();
        let prev = ContinuousPrevalence::new(
            rng.uniform_in(-0.2, 0.6),
            rng.uniform_in(0.05, 0.5),
            0.2,
            MeaningfulSide::Above,
        )
        .unwrap();
        let b =
            cost_multi_continuous_proportional(&prev, &model, &ladder, &base, &dlambda).unwrap();
        let w = b.weights.as_ref().unwrap();
        let avg: f64 = w.iter().zip(&b.per_level).map(|(wi, ci)| wi * ci).sum();
        let denom = b.total.abs().max(1e-12);
        assert!(
            (b.total - avg).abs() / denom < 1e-9,
            "trial {trial}: multi {} vs weighted {avg}",
            b.total
        );
        let lo = b.per_level.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = b.per_level.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        assert!(b.total >= lo - 1e-9 * denom && b.total <= hi + 1e-9 * denom);
        // Dual route: the per-level singles agree with an independent
        // quadrature of the top-level costs at each alpha.
        let totals = ScaledCosts { base: &base, factor: lambda_k };
        for (m, &a) in ladder.levels().iter().enumerate() {
            let direct = cost_single_continuous(&prev, &model, a, &totals).unwrap();
            assert!(
                (direct - b.per_level[m]).abs() <= 1e-6 * direct.abs().max(1e-9),
                "trial {trial} level {m}: {direct} vs {}",
                b.per_level[m]
            );
        }
    }
}

#[test]
fn type1_sum_telescopes() {
    // Sum C0(m)(alpha_m - alpha_{m+1}) equals sum DC0(m) alpha_m.
    let mut rng = Xoshiro256PlusPlus::from_seed(7003);
    for _ in 0..200 {
        let k = 1 + (rng.uniform() * 5.0) as usize;
        let ladder = random_ladder(&mut rng, k);
        let sched = proportional_schedule(&mut rng, k);
        let by_bands: f64 = (0..k)
            .map(|m| sched.c0()[m] * (ladder.level(m).get() - ladder.next_level_or_zero(m)))
            .sum();
        let by_diffs: f64 = (0..k).map(|m| sched.delta_c0(m) * ladder.level(m).get()).sum();
        assert!(
            (by_bands - by_diffs).abs() <= 1e-12 * by_bands.abs().max(1.0),
            "{by_bands} vs {by_diffs}"
        );
    }
}

#[test]
fn single_level_engines_agree_on_k1() {
    // Multi-alpha machinery with one level equals the single-level formula,
    // continuous and dichotomous alike.
    let model = StandardizedEffectModel::new(
        TwoGroupDesign::new(128).unwrap(),
        0.0,
        DfMode::StudentT,
    );
    let prev = ContinuousPrevalence::new(0.1, 0.4, 0.0, MeaningfulSide::Above).unwrap();
    let costs = ConstantCosts { c0: 3.0, c1: 1.5 };
    let alpha = p(0.04);
    let single = cost_single_continuous(&prev, &model, alpha, &costs).unwrap();
    let ladder = AlphaLadder::new(vec![0.04]).unwrap();
    let multi = cost_multi_continuous(
        &prev,
        &model,
        &ladder,
        &[ScaledCosts { base: &costs, factor: 1.0 }],
    )
    .unwrap();
    assert!((multi.total - single).abs() < 1e-12);

    let dprev = DichotomousPrevalence { p_true: p(0.3), effect_true: 0.4, effect_null: 0.0 };
    let dsingle = cost_single_dichotomous(&dprev, &model, alpha, 3.0, 1.5).unwrap();
    let dsched = CostSchedule::new(vec![3.0], vec![1.5]).unwrap();
    let dmulti = cost_multi_dichotomous(&dprev, &model, &ladder, &dsched).unwrap();
    assert!((dmulti.total - dsingle).abs() < 1e-14);
}

#[test]
fn ci_nesting_over_random_ladders() {
    let mut rng = Xoshiro256PlusPlus::from_seed(7004);
    for _ in 0..1000 {
        let k = 2 + (rng.uniform() * 4.0) as usize;
        let ladder = random_ladder(&mut rng, k);
        let estimate = rng.uniform_in(-5.0, 5.0);
        let se = rng.uniform_in(0.01, 3.0);
        let ci = multilevel_ci(estimate, se, &ladder, Sidedness::TwoSided).unwrap();
        for w in ci.levels.windows(2) {
            assert!(w[1].upper > w[0].upper);
            assert!(w[1].lower.unwrap() < w[0].lower.unwrap());
        }
        let one = multilevel_ci(estimate, se, &ladder, Sidedness::OneSided).unwrap();
        for w in one.levels.windows(2) {
            assert!(w[1].upper > w[0].upper);
        }
    }
}

proptest! {
    #[test]
    fn ladder_rejects_non_decreasing(a in 1e-6f64..0.99, b in 1e-6f64..0.99) {
        let result = AlphaLadder::new(vec![a, b]);
        prop_assert_eq!(result.is_ok(), b < a);
    }

    #[test]
    fn surprisal_schedules_always_valid(
        levels in proptest::collection::vec(1e-6f64..0.99, 1..6),
        c in 0.01f64..100.0,
        r in 0.01f64..10.0,
    ) {
        let mut sorted = levels.clone();
        sorted.sort_by(|x, y| y.partial_cmp(x).unwrap());
        sorted.dedup_by(|x, y| (*x - *y).abs() < 1e-12);
        if let Ok(ladder) = AlphaLadder::new(sorted) {
            let sched = multalpha::scenario::surprisal_costs(&ladder, c, c * r).unwrap();
            // Nondecreasing by construction and proportional.
            let w = weighted_decomposition(&ladder, &sched).unwrap();
            let sum: f64 = w.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            // Round trip back to the ladder.
            let back = multalpha::alphasel::ladder_from_costs(
                ladder.level(0).get(), sched.c0()).unwrap();
            for (x, y) in ladder.levels().iter().zip(back.levels()) {
                prop_assert!((x.get() - y.get()).abs() <= 1e-9 * x.get());
            }
        }
    }

    #[test]
    fn rendered_numbers_round_trip(cells in proptest::collection::vec(0.0f64..1e4, 4)) {
        let table = multalpha::report::CostTable::new(
            "prop",
            vec!["r1".into(), "r2".into()],
            vec!["c1".into(), "c2".into()],
            vec![vec![cells[0], cells[1]], vec![cells[2], cells[3]]],
            2,
            None,
            1,
        ).unwrap();
        let csv = multalpha::report::render_table(&table, multalpha::report::TableFormat::Csv);
        for (i, line) in csv.lines().skip(1).enumerate() {
            for (j, field) in line.split(',').skip(1).enumerate() {
                let parsed: f64 = field.parse().unwrap();
                let want = (cells[i * 2 + j] * 10.0).round() / 10.0;
                prop_assert!((parsed - want).abs() < 1e-9);
            }
        }
    }
}
