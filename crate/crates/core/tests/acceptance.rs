//! Acceptance suite: one test per criterion, each printing a PASS line with
//! the measured values (run with `--nocapture` to see them).

use std::time::Instant;

use powkelly::equilibrium::{
    best_response, equilibrium_closed_form, equilibrium_fixed_point, share_and_dominance,
    EquilibriumProblem,
};
use powkelly::kelly::{coinflip_return, expected_log_payoff, f_max_exact, leverage_upper_bound};
use powkelly::pools::RiskSharingPool;
use powkelly::presets::{bitcoin_example, bitcoin_scenario, coinflip_example};
use powkelly::reward::{mgf_compound, mgf_poisson_reward, return_moments, ProcessState};
use powkelly::sim::{run_coinflip, run_nakamoto, sweep_f_vs_p, verify_poisson_revenue, SimOptions};
use powkelly::types::{
    make_balance_sheet, BalanceSheet, Environment, PlayerSpec, Strategy, TwoPointReturn,
};
use powkelly::Scenario;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

#[test]
fn criterion_1_coinflip_optimum() {
    let start = Instant::now();
    let example = coinflip_example().unwrap();
    let elapsed = start.elapsed();
    let f = example.solution.f_exact;
    let payoff = example.payoff_at_optimum;
    assert!((f - 0.32609).abs() <= 1e-4, "f* = {f}");
    assert!((payoff - 0.002439).abs() <= 1e-5, "payoff = {payoff}");
    assert!(elapsed.as_micros() < 1000, "took {elapsed:?}");
    println!(
        "criterion 1 PASS: f* = {f:.6} (0.32609 +- 1e-4), g(f*) = {payoff:.7} \
         (0.002439 +- 1e-5), runtime {elapsed:?} < 1 ms"
    );
}

#[test]
fn criterion_2_all_in_ruin() {
    let start = Instant::now();
    let result = run_coinflip(&coinflip_return(), 1.0, 90, 100_000, 1000.0, 2024).unwrap();
    let elapsed = start.elapsed();
    let median = result.median_final_wealth;
    assert!((400.0..=570.0).contains(&median), "median = {median}");
    assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:?}");
    println!(
        "criterion 2 PASS: median wealth after 90 all-in flips = {median:.1} USD \
         in [400, 570], runtime {elapsed:?} < 5 s"
    );
}

#[test]
fn criterion_3_bitcoin_example() {
    let ex = bitcoin_example().unwrap();
    // The quoted route: quadratic (Sharpe) optimum and its growth rate.
    let f_quoted = ex.solution.f_simple;
    assert!((5.0..=6.0).contains(&f_quoted), "f* = {f_quoted}");
    assert!((5.0..=6.0).contains(&ex.solution.f_approx));
    assert!(
        (1.5e-5..=2.5e-5).contains(&ex.quadratic_log_payoff),
        "quadratic payoff = {}",
        ex.quadratic_log_payoff
    );
    assert!(
        (1.2..=2.2).contains(&ex.annualized_return_quadratic),
        "annualized = {}",
        ex.annualized_return_quadratic
    );
    // The exact recomputation from unrounded inputs, emitted alongside.
    assert!(
        (1.5e-5..=2.5e-5).contains(&ex.exact_log_payoff),
        "exact payoff = {}",
        ex.exact_log_payoff
    );
    assert!(ex.solution.f_exact > ex.solution.f_simple);
    println!(
        "criterion 3 PASS: f* = {:.4} in [5.0, 6.0]; per-stage log payoff {:.3e} in \
         [1.5e-5, 2.5e-5]; annualized {:.1}% in [120%, 220%]",
        f_quoted,
        ex.quadratic_log_payoff,
        100.0 * ex.annualized_return_quadratic
    );
    println!(
        "criterion 3 exact recomputation: f_exact = {:.4}, exact per-stage log payoff {:.4e}, \
         annualized {:.1}%, sheet E = {:.4e}, L = {:.4e}",
        ex.solution.f_exact,
        ex.exact_log_payoff,
        100.0 * ex.annualized_return_exact,
        ex.exact_sheet.equity_e,
        ex.exact_sheet.liabilities_l
    );
}

#[test]
fn criterion_4_reward_model_equivalence() {
    let start = Instant::now();
    // Algebraic identity at zero cost, 20 grid points, 1e-12 relative.
    let env = Environment::new(5.0, 600.0, 0.0)
        .unwrap()
        .with_difficulty(600.0 * 10.0)
        .unwrap();
    let state = ProcessState::new(
        vec![
            BalanceSheet::new(3.0, 0.0, 3.0, 0.0),
            BalanceSheet::new(7.0, 0.0, 7.0, 0.0),
        ],
        env,
        vec![1.0, 1.0],
        vec![0.0, 0.0],
    )
    .unwrap();
    let horizon = 30_000.0;
    let mut worst: f64 = 0.0;
    for k in 0..20 {
        let u = -1e-4 + k as f64 * (2e-4 / 19.0);
        let a = mgf_compound(u, 0, &state, horizon).unwrap();
        let b = mgf_poisson_reward(u, 0, &state, horizon).unwrap();
        let rel = ((a - b) / b).abs();
        worst = worst.max(rel);
    }
    assert!(worst <= 1e-12, "worst relative gap {worst:e}");

    // Distributional check: simulated revenue vs direct Poisson sampling.
    let scenario = Scenario::new(
        state.env,
        vec![
            PlayerSpec {
                id: "focal".into(),
                facility_price_d: 1.0,
                cost_rate_c: 0.0,
                strategy: Strategy::Static(BalanceSheet::new(3.0, 0.0, 3.0, 0.0)),
                mining_assets: Some(3.0),
            },
            PlayerSpec {
                id: "rest".into(),
                facility_price_d: 1.0,
                cost_rate_c: 0.0,
                strategy: Strategy::Static(BalanceSheet::new(7.0, 0.0, 7.0, 0.0)),
                mining_assets: Some(7.0),
            },
        ],
        0.0,
        horizon,
        77,
    )
    .unwrap();
    let check = verify_poisson_revenue(&scenario, 100_000, 0, 0.01).unwrap();
    assert!(
        !check.ks.reject,
        "KS rejected: D = {} > {}",
        check.ks.statistic, check.ks.critical
    );
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:?}");
    println!(
        "criterion 4 PASS: MGF identity gap {worst:.2e} <= 1e-12 at 20 points; \
         KS D = {:.4} < {:.4} (alpha = 0.01, N = 1e5), runtime {elapsed:?} < 30 s",
        check.ks.statistic, check.ks.critical
    );
}

#[test]
fn criterion_5_return_moments_match_monte_carlo() {
    let start = Instant::now();
    let mut seeder = ChaCha12Rng::seed_from_u64(505);
    let n = 1_000_000usize;
    let results: Vec<(f64, f64, f64, f64)> = (0..20u64)
        .map(|k| {
            let n_players = seeder.random_range(2..=6usize);
            let ms: Vec<f64> = (0..n_players)
                .map(|_| seeder.random_range(0.5..8.0))
                .collect();
            let b = seeder.random_range(1.0..20.0);
            let costs: Vec<f64> = ms.iter().map(|_| seeder.random_range(0.0..0.1)).collect();
            let env = Environment::new(b, 600.0, 0.0).unwrap();
            let state = ProcessState::new(
                ms.iter()
                    .map(|&m| BalanceSheet::new(m, 0.0, m, 0.0))
                    .collect(),
                env,
                vec![1.0; n_players],
                costs.clone(),
            )
            .unwrap();
            let analytic = return_moments(0, &state).unwrap();
            let m0 = ms[0];
            let total: f64 = ms.iter().sum();
            let p0 = m0 / total;
            let cum: Vec<f64> = ms
                .iter()
                .scan(0.0, |acc, m| {
                    *acc += m;
                    Some(*acc)
                })
                .collect();
            let mut rng = ChaCha12Rng::seed_from_u64(9000 + k);
            let (mut sum, mut sumsq) = (0.0f64, 0.0f64);
            for _ in 0..n {
                let draw = rng.random::<f64>() * total;
                let won = draw <= cum[0];
                let r0 = if won { b } else { 0.0 } - costs[0] * m0;
                let w = r0 / m0;
                sum += w;
                sumsq += w * w;
            }
            let mean = sum / n as f64;
            let var = sumsq / n as f64 - mean * mean;
            // Standard errors from the analytic two-point moments.
            let se_mean = (analytic.variance_sigma2 / n as f64).sqrt();
            let spread = b / m0;
            let mu4 = p0 * (1.0 - p0) * ((1.0 - p0).powi(3) + p0.powi(3)) * spread.powi(4);
            let se_var = ((mu4 - analytic.variance_sigma2.powi(2)) / n as f64).sqrt();
            let mean_err = (mean - analytic.mean_mu).abs() / se_mean;
            let var_err = (var - analytic.variance_sigma2).abs() / se_var;
            (
                mean_err,
                var_err,
                analytic.mean_mu,
                analytic.variance_sigma2,
            )
        })
        .collect();
    for (i, (mean_err, var_err, ..)) in results.iter().enumerate() {
        assert!(
            *mean_err < 4.0,
            "scenario {i}: mean off by {mean_err:.2} SE"
        );
        assert!(
            *var_err < 4.0,
            "scenario {i}: variance off by {var_err:.2} SE"
        );
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "took {elapsed:?}");
    let worst_mean = results.iter().map(|r| r.0).fold(0.0, f64::max);
    let worst_var = results.iter().map(|r| r.1).fold(0.0, f64::max);
    println!(
        "criterion 5 PASS: 20 scenarios x 1e6 draws; worst mean deviation {worst_mean:.2} SE, \
         worst variance deviation {worst_var:.2} SE (< 4), runtime {elapsed:?} < 60 s"
    );
}

#[test]
fn criterion_6_equilibrium_oracle_equivalence() {
    let start = Instant::now();
    let mut seeder = ChaCha12Rng::seed_from_u64(606);
    let mut max_rel: f64 = 0.0;
    for _ in 0..1000 {
        let m = seeder.random_range(1..=20usize);
        let b = seeder.random_range(1.0..100.0);
        let r = seeder.random_range(0.0..0.05);
        let costs: Vec<f64> = (0..m)
            .map(|_| 10f64.powf(seeder.random_range(-2.0..1.0)))
            .collect();
        let max_y = costs.iter().map(|&c| b / (c + r)).fold(f64::MIN, f64::max);
        let z = seeder.random_range(0.0..max_y);
        let problem =
            EquilibriumProblem::new(costs, z, Environment::new(b, 600.0, r).unwrap()).unwrap();
        let closed = equilibrium_closed_form(&problem).unwrap();
        let fixed = equilibrium_fixed_point(&problem, 1e-12, 1_000_000).unwrap();
        assert_eq!(closed.support, fixed.support, "support sets differ");
        for (a, bb) in closed.holdings_mhat.iter().zip(&fixed.holdings_mhat) {
            if *a == 0.0 && *bb == 0.0 {
                continue;
            }
            let rel = (a - bb).abs() / a.abs().max(bb.abs());
            max_rel = max_rel.max(rel);
            assert!(rel < 1e-8, "holdings differ: {a} vs {bb}");
        }
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:?}");
    println!(
        "criterion 6 PASS: closed form vs fixed point over 1000 problems (m <= 20): \
         exact support match, max holding gap {max_rel:.2e} < 1e-8, runtime {elapsed:?} < 10 s"
    );
}

#[test]
fn criterion_7_share_predictions() {
    let b = 10.0;
    let y = 10.0; // Y' at unit cost, zero rate

    // Homogeneous world at 85% of break-even: m = 10, Z = 0.1 Y'.
    let p85 = EquilibriumProblem::new(
        vec![1.0; 10],
        0.1 * y,
        Environment::new(b, 600.0, 0.0).unwrap(),
    )
    .unwrap();
    let eq85 = equilibrium_closed_form(&p85).unwrap();
    assert!((eq85.world_hash_hhat - 0.85 * y).abs() < 1e-10);
    let shares85 = share_and_dominance(&eq85, &p85.growth_costs, &p85.env).unwrap();
    let expected85 = 0.5 * (1.0 / 0.85 - 1.0);
    assert!(
        (shares85[0].share - expected85).abs() < 1e-10,
        "share = {} vs {expected85}",
        shares85[0].share
    );

    // Homogeneous world at 80% of break-even: m = 8, Z = 0.
    let p80 = EquilibriumProblem::new(vec![1.0; 8], 0.0, Environment::new(b, 600.0, 0.0).unwrap())
        .unwrap();
    let eq80 = equilibrium_closed_form(&p80).unwrap();
    assert!((eq80.world_hash_hhat - 0.80 * y).abs() < 1e-10);
    let shares80 = share_and_dominance(&eq80, &p80.growth_costs, &p80.env).unwrap();
    assert!(
        (shares80[0].share - 0.125).abs() < 1e-10,
        "share = {}",
        shares80[0].share
    );

    // A 1.7x cost-efficiency edge at H = 0.85 Y' reaches exactly half the
    // world hash rate and raises the dominance flag.
    let mut costs = vec![1.0; 6];
    costs[0] = 1.0 / 1.7;
    let pdom =
        EquilibriumProblem::new(costs, 0.05 * y, Environment::new(b, 600.0, 0.0).unwrap()).unwrap();
    let eqdom = equilibrium_closed_form(&pdom).unwrap();
    assert!((eqdom.world_hash_hhat - 0.85 * y).abs() < 1e-10);
    let sharesdom = share_and_dominance(&eqdom, &pdom.growth_costs, &pdom.env).unwrap();
    assert!(
        (sharesdom[0].share - 0.5).abs() < 1e-10,
        "share = {}",
        sharesdom[0].share
    );
    assert!(sharesdom[0].dominant, "threshold case must be flagged");
    assert!(!sharesdom[1].dominant);
    println!(
        "criterion 7 PASS: share(H=0.85Y') = {:.6}% (exact 8.8235%), share(H=0.80Y') = {:.6}% \
         (exact 12.5%), 1.7x-efficient share = {:.6}% flagged dominant",
        100.0 * shares85[0].share,
        100.0 * shares80[0].share,
        100.0 * sharesdom[0].share
    );
}

#[test]
fn criterion_8_sweep_zero_crossing() {
    let scenario = bitcoin_scenario(2000.0, 3).unwrap();
    let grid: Vec<f64> = (1..=400).map(|k| k as f64 * 1e-3).collect();
    let sweep = sweep_f_vs_p(&scenario, &grid).unwrap();
    let crossing = sweep.zero_crossing_p.expect("no zero crossing found");
    assert!(
        (crossing - 0.200).abs() <= 1e-3 + 1e-12,
        "crossing at {crossing}"
    );
    let max_p = sweep.max_payoff_p.expect("no interior maximum");
    assert!((max_p - 0.07).abs() <= 0.03, "maximum at {max_p}");
    // Payoff is positive before the crossing and zero after it.
    for pt in &sweep.points {
        if pt.p < crossing - 1e-9 {
            assert!(pt.log_payoff > 0.0, "payoff not positive at p = {}", pt.p);
        } else {
            assert!(
                pt.log_payoff.abs() < 1e-15,
                "payoff not zero at p = {}",
                pt.p
            );
        }
    }
    println!(
        "criterion 8 PASS: payoff zero-crossing at p = {crossing:.3} (0.200 +- grid step), \
         interior maximum at p = {max_p:.3} (0.07 +- 0.03)"
    );
}

#[test]
fn criterion_9a_balance_sheet_invariants() {
    let mut rng = ChaCha12Rng::seed_from_u64(909);
    for _ in 0..2000 {
        let m = 10f64.powf(rng.random_range(-6.0..9.0));
        let f = 10f64.powf(rng.random_range(-6.0..6.0));
        let sheet = make_balance_sheet(m, f).unwrap();
        assert!(sheet.validate().is_ok(), "invalid sheet at m={m}, f={f}");
        let achieved = sheet.mining_assets_m / sheet.equity_e;
        assert!((achieved - f).abs() <= 1e-12 * f.max(1.0));
    }
    println!("criterion 9 PASS (balance sheets): 2000 random sheets validate, M/E hits f to 1e-12");
}

#[test]
fn criterion_9b_concavity_of_log_payoff() {
    let mut rng = ChaCha12Rng::seed_from_u64(910);
    for _ in 0..100 {
        let d = rng.random_range(-0.9..-0.05);
        let u = rng.random_range(0.05..1.5);
        let p = rng.random_range(0.02..0.98);
        let r = rng.random_range(0.0..0.08);
        let ret = TwoPointReturn::new(u, d, p).unwrap();
        let bound = leverage_upper_bound(&ret, r);
        let h = bound * 1e-4;
        for k in 1..100 {
            let f = bound * (k as f64 / 101.0);
            let second = expected_log_payoff(f + h, &ret, r).unwrap()
                + expected_log_payoff(f - h, &ret, r).unwrap()
                - 2.0 * expected_log_payoff(f, &ret, r).unwrap();
            assert!(second < 0.0, "not concave at f = {f}");
        }
    }
    println!(
        "criterion 9 PASS (concavity): second differences negative at 100 points x 100 instances"
    );
}

#[test]
fn criterion_9c_leverage_grid_oracle() {
    let step = 1e-5;
    let instances: Vec<(f64, f64, f64, f64)> = {
        let mut rng = ChaCha12Rng::seed_from_u64(911);
        (0..100)
            .map(|_| {
                (
                    rng.random_range(0.05..1.5),  // u
                    rng.random_range(-0.9..-0.1), // d
                    rng.random_range(0.05..0.95), // p
                    rng.random_range(0.0..0.1),   // r
                )
            })
            .collect()
    };
    instances.par_iter().for_each(|&(u, d, p, r)| {
        let ret = TwoPointReturn::new(u, d, p).unwrap();
        let (f_closed, _) = f_max_exact(&ret, r).unwrap();
        let bound = leverage_upper_bound(&ret, r);
        let mut best = (0.0, expected_log_payoff(0.0, &ret, r).unwrap());
        let mut f = step;
        while f < bound {
            if let Ok(v) = expected_log_payoff(f, &ret, r) {
                if v > best.1 {
                    best = (f, v);
                }
            }
            f += step;
        }
        assert!(
            (best.0 - f_closed).abs() <= step + 1e-12,
            "grid {} vs closed form {f_closed} at (u={u}, d={d}, p={p}, r={r})",
            best.0
        );
    });
    println!(
        "criterion 9 PASS (leverage oracle): grid argmax within one 1e-5 step on 100 instances"
    );
}

#[test]
fn criterion_9d_best_response_grid_oracle() {
    let mut rng = ChaCha12Rng::seed_from_u64(912);
    for _ in 0..100 {
        let b = rng.random_range(1.0..20.0);
        let c = rng.random_range(0.01..1.0);
        let r = rng.random_range(0.0..0.05);
        let env = Environment::new(b, 600.0, r).unwrap();
        let y = b / (c + r);
        let m_rest = rng.random_range(0.01..1.5) * y;
        let br = best_response(m_rest, c, &env).unwrap();
        let step = y / 1e5;
        let mut best = (0.0, f64::NEG_INFINITY);
        let mut m = step;
        while m <= y {
            let mu = b / (m + m_rest) - c;
            let sigma = b * (m_rest / m).sqrt() / (m + m_rest);
            let s = (mu - r) / sigma;
            if s > best.1 {
                best = (m, s);
            }
            m += step;
        }
        if br == 0.0 {
            assert!(best.1 <= 1e-12, "positive sharpe {} despite exit", best.1);
        } else {
            assert!(
                (best.0 - br).abs() <= step,
                "grid {} vs closed {br}",
                best.0
            );
        }
    }
    println!("criterion 9 PASS (best response): Sharpe grid argmax within one Y'/1e5 step on 100 instances");
}

#[test]
fn criterion_9e_pool_associativity() {
    let mut rng = ChaCha12Rng::seed_from_u64(913);
    for _ in 0..500 {
        let member = |rng: &mut ChaCha12Rng| {
            (
                10f64.powf(rng.random_range(-3.0..6.0)),
                10f64.powf(rng.random_range(-6.0..0.0)),
            )
        };
        let a = member(&mut rng);
        let b = member(&mut rng);
        let c = member(&mut rng);
        let nested = RiskSharingPool::aggregate(&[a, b])
            .unwrap()
            .merge(&[c])
            .unwrap();
        let flat = RiskSharingPool::aggregate(&[a, b, c]).unwrap();
        assert_eq!(nested.aggregate_m_p, flat.aggregate_m_p, "assets differ");
        assert_eq!(
            nested.aggregate_c_p, flat.aggregate_c_p,
            "cost rates differ"
        );
    }
    println!(
        "criterion 9 PASS (pools): nested and flat aggregation agree exactly on 500 random triples"
    );
}

#[test]
fn criterion_9f_simulator_determinism() {
    let scenario = bitcoin_scenario(100.0, 424_242).unwrap();
    let options = SimOptions {
        record_trajectories: true,
        ..Default::default()
    };
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap();
        pool.install(|| run_nakamoto(&scenario, 48, &options).unwrap())
    };
    let single = run(1);
    let multi = run(4);
    for (a, b) in single.trajectories.iter().zip(&multi.trajectories) {
        assert_eq!(a.winners, b.winners);
        assert_eq!(a.stage_times, b.stage_times);
        assert_eq!(a.cumulative_log_payoff, b.cumulative_log_payoff);
    }
    assert_eq!(single.summary, multi.summary);
    println!(
        "criterion 9 PASS (determinism): 48 trajectories bit-identical across 1 and 4 workers"
    );
}

/// The worked example end to end: a growth-rate entrant simulated at the
/// quoted scale earns about 2e-5 log return per block interval.
#[test]
fn bitcoin_simulation_matches_quoted_payoff() {
    let ex = bitcoin_example().unwrap();
    // 4200 trajectories x ~2000 stages pushes the standard error under 2.5e-6.
    let scenario = bitcoin_scenario(2000.0, 314_159).unwrap();
    let out = run_nakamoto(&scenario, 4200, &SimOptions::default()).unwrap();
    let stats = &out.summary.per_player[0];
    assert!(
        stats.se_stage_log_payoff < 2.5e-6,
        "SE too large: {}",
        stats.se_stage_log_payoff
    );
    let quoted = 2e-5;
    let dev_quoted = (stats.mean_stage_log_payoff - quoted).abs() / stats.se_stage_log_payoff;
    assert!(
        dev_quoted < 4.0,
        "mean {} vs quoted 2e-5: {dev_quoted:.2} SE",
        stats.mean_stage_log_payoff
    );
    let dev_exact =
        (stats.mean_stage_log_payoff - ex.exact_log_payoff).abs() / stats.se_stage_log_payoff;
    assert!(
        dev_exact < 4.0,
        "mean {} vs analytic {}",
        stats.mean_stage_log_payoff,
        ex.exact_log_payoff
    );
    println!(
        "bitcoin simulation: mean per-stage log payoff {:.4e} (SE {:.2e}), {dev_quoted:.2} SE from 2e-5",
        stats.mean_stage_log_payoff, stats.se_stage_log_payoff
    );
}

/// Re-optimizing the financing each stage weakly beats every fixed
/// leverage on the worked example, up to statistical error.
#[test]
fn growth_policy_dominates_fixed_leverage() {
    let ex = bitcoin_example().unwrap();
    let f_star = ex.solution.f_exact;
    let growth = bitcoin_scenario(500.0, 515).unwrap();
    let out = run_nakamoto(&growth, 600, &SimOptions::default()).unwrap();
    let g = &out.summary.per_player[0];
    for factor in [0.2, 0.5, 2.0, 5.0, 20.0] {
        let f = f_star * factor;
        let mut scenario = growth.clone();
        let sheet = make_balance_sheet(ex.entrant_mining_assets, f).unwrap();
        scenario.players[0].strategy = Strategy::Static(sheet);
        let out_static = run_nakamoto(&scenario, 600, &SimOptions::default()).unwrap();
        let s = &out_static.summary.per_player[0];
        let slack = 4.0 * (g.se_stage_log_payoff + s.se_stage_log_payoff);
        assert!(
            g.mean_stage_log_payoff >= s.mean_stage_log_payoff - slack,
            "fixed f = {f} beat the growth policy: {} vs {}",
            s.mean_stage_log_payoff,
            g.mean_stage_log_payoff
        );
    }
    println!(
        "growth policy weakly dominates fixed leverages 0.2x..20x of f* on the worked example"
    );
}
