//! Monte Carlo engine for the repeated mining game and the coin-flip
//! betting game: Poisson-triggered stages, per-stage sheet decisions,
//! reward draws, interest, log-wealth accounting, and parameter sweeps.
//!
//! Trajectories are independent; each draws from its own counter-derived
//! random stream, so results are bit-identical for a given seed no matter
//! how many workers run them.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha12Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::kelly::{expected_log_payoff, solve_leverage};
use crate::scenario::Scenario;
use crate::stats::{poisson_count, two_sample_ks, KsTest};
use crate::types::{make_balance_sheet, BalanceSheet, Strategy, TwoPointReturn};

/// Deterministic per-stream generator derived from `(master_seed, stream)`.
pub fn trajectory_rng(master_seed: u64, stream: u64) -> ChaCha12Rng {
    let mut state = master_seed ^ 0x6A09_E667_F3BC_C908;
    state = state.wrapping_add(stream.wrapping_mul(0x9E37_79B9_7F4A_7C15));
    let mut seed_bytes = [0u8; 32];
    for chunk in seed_bytes.chunks_exact_mut(8) {
        state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^= z >> 31;
        chunk.copy_from_slice(&z.to_le_bytes());
    }
    ChaCha12Rng::from_seed(seed_bytes)
}

/// Who received the block reward in one stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Winner {
    Player(usize),
    /// The exogenous hash block of the scenario.
    Exogenous,
}

/// One simulated path of the repeated game.
///
/// `stage_times`, `winners` and `equity_series` are populated only when
/// trajectory recording is enabled; the scalar accumulators are always
/// filled.
#[derive(Debug, Clone, PartialEq)]
pub struct Trajectory {
    pub stage_times: Vec<f64>,
    pub winners: Vec<Winner>,
    /// Compounded equity per player per stage, `[player][stage]`.
    pub equity_series: Vec<Vec<f64>>,
    /// Sum of stage log payoffs per player.
    pub cumulative_log_payoff: Vec<f64>,
    /// Sum of squared stage log payoffs per player (for standard errors).
    pub stage_payoff_sumsq: Vec<f64>,
    pub win_counts: Vec<u64>,
    pub stage_count: u64,
}

/// Per-player aggregate statistics over all stages of all trajectories.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerStats {
    pub mean_stage_log_payoff: f64,
    pub se_stage_log_payoff: f64,
    pub mean_cumulative_log_payoff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimSummary {
    pub n_trajectories: usize,
    pub total_stages: u64,
    pub mean_stage_count: f64,
    pub per_player: Vec<PlayerStats>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimOutput {
    pub trajectories: Vec<Trajectory>,
    pub summary: SimSummary,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SimOptions {
    /// Keep full per-stage series (times, winners, equity paths).
    pub record_trajectories: bool,
    /// Recompute the difficulty from the current hash profile every stage,
    /// pinning the trigger intensity at `1/tau`.
    pub retarget_difficulty: bool,
}

enum Policy {
    Static(BalanceSheet),
    /// Fixed mining scale, financing re-optimized every stage.
    Growth {
        mining_assets: f64,
    },
}

struct PreparedPlayer {
    facility_price: f64,
    cost_per_hash: f64,
    cost_per_currency: f64,
    policy: Policy,
}

struct Prepared {
    players: Vec<PreparedPlayer>,
    exogenous_hash: f64,
    block_reward: f64,
    riskfree: f64,
    tau: f64,
    difficulty: f64,
    horizon: f64,
}

fn prepare(scenario: &Scenario) -> Result<Prepared> {
    let env = scenario.environment;
    let difficulty = env.difficulty().map_err(|_| Error::DegenerateState)?;
    let r = env.riskfree_rate_r;
    let mut players = Vec::with_capacity(scenario.players.len());
    for spec in &scenario.players {
        let cost_per_currency = spec.cost_rate_c / spec.facility_price_d;
        let policy = match &spec.strategy {
            Strategy::Static(sheet) => {
                sheet.validate().map_err(Error::InvalidBalanceSheet)?;
                if sheet.mining_assets_m > 0.0 {
                    if sheet.equity_e <= 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "player {}: static sheet with mining assets needs positive equity",
                            spec.id
                        )));
                    }
                    // The losing branch must keep the log argument positive.
                    let cost = cost_per_currency * sheet.mining_assets_m;
                    let interest = r * (sheet.liabilities_l - sheet.riskfree_assets_f);
                    let arg = 1.0 + (-cost - interest) / sheet.equity_e;
                    if arg <= 0.0 {
                        return Err(Error::InfeasibleLeverage {
                            f: sheet.leverage(),
                            branch: "down",
                            arg,
                        });
                    }
                }
                Policy::Static(*sheet)
            }
            Strategy::GrowthRate => {
                let mining_assets = spec.mining_assets.ok_or_else(|| {
                    Error::InvalidParameter(format!(
                        "growth player {} needs balance_sheet mining assets to simulate",
                        spec.id
                    ))
                })?;
                Policy::Growth { mining_assets }
            }
        };
        players.push(PreparedPlayer {
            facility_price: spec.facility_price_d,
            cost_per_hash: spec.cost_rate_c,
            cost_per_currency,
            policy,
        });
    }
    Ok(Prepared {
        players,
        exogenous_hash: scenario.exogenous_hash_z,
        block_reward: env.block_reward_b,
        riskfree: r,
        tau: env.block_interval_tau,
        difficulty,
        horizon: scenario.horizon_t,
    })
}

/// The sheet a player commits for the next stage, given the hash everyone
/// else showed last stage.
fn decide_sheet(
    player: &PreparedPlayer,
    others_hash: f64,
    block_reward: f64,
    r: f64,
) -> Result<BalanceSheet> {
    match &player.policy {
        Policy::Static(sheet) => Ok(*sheet),
        Policy::Growth { mining_assets } => {
            let m = *mining_assets;
            if m <= 0.0 {
                return Ok(BalanceSheet::ZERO);
            }
            let own_hash = m / player.facility_price;
            let p = own_hash / (own_hash + others_hash);
            let ret = TwoPointReturn::new(
                block_reward / m - player.cost_per_currency,
                -player.cost_per_currency,
                p,
            )?;
            let solution = solve_leverage(&ret, r)?;
            if solution.f_exact <= 0.0 {
                return Ok(BalanceSheet::ZERO);
            }
            make_balance_sheet(m, solution.f_exact)
        }
    }
}

fn simulate_trajectory(
    prepared: &Prepared,
    seed: u64,
    index: u64,
    options: &SimOptions,
) -> Result<Trajectory> {
    let n = prepared.players.len();
    let mut rng = trajectory_rng(seed, index);
    let b = prepared.block_reward;
    let r = prepared.riskfree;
    let riskfree_log = (1.0 + r).ln();

    // Public hash profile from the previous stage; initially the declared
    // mining assets.
    let mut profile_hash: Vec<f64> = prepared
        .players
        .iter()
        .map(|p| match &p.policy {
            Policy::Static(sheet) => sheet.mining_assets_m / p.facility_price,
            Policy::Growth { mining_assets } => mining_assets / p.facility_price,
        })
        .collect();

    let mut traj = Trajectory {
        stage_times: Vec::new(),
        winners: Vec::new(),
        equity_series: vec![Vec::new(); n],
        cumulative_log_payoff: vec![0.0; n],
        stage_payoff_sumsq: vec![0.0; n],
        win_counts: vec![0; n],
        stage_count: 0,
    };
    let mut wealth: Vec<f64> = vec![0.0; n];
    let mut wealth_initialized = false;

    let mut sheets: Vec<BalanceSheet> = vec![BalanceSheet::ZERO; n];
    let mut t = 0.0;
    loop {
        // 1. Everybody picks a sheet against last stage's public profile.
        let total_prev: f64 = profile_hash.iter().sum::<f64>() + prepared.exogenous_hash;
        for (i, player) in prepared.players.iter().enumerate() {
            let others = total_prev - profile_hash[i];
            sheets[i] = decide_sheet(player, others, b, r)?;
        }
        for (i, player) in prepared.players.iter().enumerate() {
            profile_hash[i] = sheets[i].mining_assets_m / player.facility_price;
        }
        if !wealth_initialized {
            for i in 0..n {
                wealth[i] = sheets[i].equity_e;
            }
            wealth_initialized = true;
        }
        let total_hash: f64 = profile_hash.iter().sum::<f64>() + prepared.exogenous_hash;
        if total_hash <= 0.0 {
            break;
        }
        let difficulty = if options.retarget_difficulty {
            prepared.tau * total_hash
        } else {
            prepared.difficulty
        };
        let lambda = total_hash / difficulty;

        // 2. Wait for the trigger.
        let u: f64 = rng.random();
        t += -(1.0 - u).ln() / lambda;
        if t > prepared.horizon {
            break;
        }

        // 3. Reward draw over the hash profile, exogenous block included.
        let draw = rng.random::<f64>() * total_hash;
        let mut cumulative = 0.0;
        let mut winner = Winner::Exogenous;
        for (i, h) in profile_hash.iter().enumerate() {
            cumulative += h;
            if draw <= cumulative {
                winner = Winner::Player(i);
                break;
            }
        }
        if let Winner::Player(i) = winner {
            traj.win_counts[i] += 1;
        }

        // 4. Returns, interest, payoffs.
        for (i, player) in prepared.players.iter().enumerate() {
            let sheet = &sheets[i];
            let payoff = if sheet.equity_e > 0.0 {
                let reward = if winner == Winner::Player(i) { b } else { 0.0 };
                let cash = reward - player.cost_per_hash * profile_hash[i];
                let interest = r * (sheet.liabilities_l - sheet.riskfree_assets_f);
                let arg = 1.0 + (cash - interest) / sheet.equity_e;
                if arg <= 0.0 {
                    return Err(Error::InfeasibleLeverage {
                        f: sheet.leverage(),
                        branch: "down",
                        arg,
                    });
                }
                arg.ln()
            } else {
                riskfree_log
            };
            traj.cumulative_log_payoff[i] += payoff;
            traj.stage_payoff_sumsq[i] += payoff * payoff;
            wealth[i] *= payoff.exp();
            if options.record_trajectories {
                traj.equity_series[i].push(wealth[i]);
            }
        }
        traj.stage_count += 1;
        if options.record_trajectories {
            traj.stage_times.push(t);
            traj.winners.push(winner);
        }
    }
    Ok(traj)
}

/// Runs `n_trajectories` independent paths of the repeated game.
///
/// Static players keep their declared sheet; growth players re-optimize
/// the financing of their mining assets every stage. Deterministic in
/// `(scenario, seed, n_trajectories)` regardless of worker count.
pub fn run_nakamoto(
    scenario: &Scenario,
    n_trajectories: usize,
    options: &SimOptions,
) -> Result<SimOutput> {
    let prepared = prepare(scenario)?;
    if scenario.total_hash() <= 0.0 {
        return Err(Error::DegenerateState);
    }
    let trajectories: Vec<Trajectory> = (0..n_trajectories as u64)
        .into_par_iter()
        .map(|i| simulate_trajectory(&prepared, scenario.seed, i, options))
        .collect::<Result<Vec<_>>>()?;

    let n_players = prepared.players.len();
    let total_stages: u64 = trajectories.iter().map(|t| t.stage_count).sum();
    let mut per_player = Vec::with_capacity(n_players);
    for i in 0..n_players {
        let sum: f64 = trajectories
            .iter()
            .map(|t| t.cumulative_log_payoff[i])
            .sum();
        let sumsq: f64 = trajectories.iter().map(|t| t.stage_payoff_sumsq[i]).sum();
        let (mean, se) = if total_stages > 0 {
            let mean = sum / total_stages as f64;
            let var = (sumsq / total_stages as f64 - mean * mean).max(0.0);
            (mean, (var / total_stages as f64).sqrt())
        } else {
            (0.0, 0.0)
        };
        per_player.push(PlayerStats {
            mean_stage_log_payoff: mean,
            se_stage_log_payoff: se,
            mean_cumulative_log_payoff: if n_trajectories > 0 {
                sum / n_trajectories as f64
            } else {
                0.0
            },
        });
    }
    let summary = SimSummary {
        n_trajectories,
        total_stages,
        mean_stage_count: if n_trajectories > 0 {
            total_stages as f64 / n_trajectories as f64
        } else {
            0.0
        },
        per_player,
    };
    Ok(SimOutput {
        trajectories,
        summary,
    })
}

/// Result of the repeated betting game.
#[derive(Debug, Clone, PartialEq)]
pub struct CoinflipResult {
    pub final_wealths: Vec<f64>,
    pub median_final_wealth: f64,
    pub mean_final_wealth: f64,
    pub mean_log_growth_per_round: f64,
    pub se_log_growth_per_round: f64,
    /// Analytic expected log growth per round at this leverage.
    pub expected_log_growth: f64,
}

/// Simulates betting the fraction `f` of wealth each round on a two-point
/// return: `wealth_t = wealth_0 * prod(1 + f W_t)`.
pub fn run_coinflip(
    ret: &TwoPointReturn,
    f: f64,
    n_rounds: usize,
    n_trajectories: usize,
    initial_wealth: f64,
    seed: u64,
) -> Result<CoinflipResult> {
    let expected = expected_log_payoff(f, ret, 0.0)?;
    let up_log = (1.0 + f * ret.up_u).ln();
    let down_log = (1.0 + f * ret.down_d).ln();
    let logs: Vec<f64> = (0..n_trajectories as u64)
        .into_par_iter()
        .map(|i| {
            let mut rng = trajectory_rng(seed, i);
            let mut acc = 0.0;
            for _ in 0..n_rounds {
                let win = rng.random::<f64>() <= ret.prob_p;
                acc += if win { up_log } else { down_log };
            }
            acc
        })
        .collect();
    let final_wealths: Vec<f64> = logs.iter().map(|l| initial_wealth * l.exp()).collect();
    let mut sorted = final_wealths.clone();
    sorted.sort_by(|a, b| a.total_cmp(b));
    let median = if sorted.is_empty() {
        initial_wealth
    } else if sorted.len() % 2 == 1 {
        sorted[sorted.len() / 2]
    } else {
        0.5 * (sorted[sorted.len() / 2 - 1] + sorted[sorted.len() / 2])
    };
    let total_rounds = (n_rounds * n_trajectories) as f64;
    let mean_log = logs.iter().sum::<f64>() / total_rounds;
    // Per-round variance of the two-point log return.
    let p = ret.prob_p;
    let var_round = p * (1.0 - p) * (up_log - down_log) * (up_log - down_log);
    Ok(CoinflipResult {
        mean_final_wealth: final_wealths.iter().sum::<f64>() / final_wealths.len().max(1) as f64,
        median_final_wealth: median,
        final_wealths,
        mean_log_growth_per_round: mean_log,
        se_log_growth_per_round: (var_round / total_rounds).sqrt(),
        expected_log_growth: expected,
    })
}

/// One point of the entry sweep: target success probability, the optimal
/// leverage there, and the expected log payoff at that leverage.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SweepPoint {
    pub p: f64,
    pub f: f64,
    pub log_payoff: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepResult {
    pub points: Vec<SweepPoint>,
    /// Smallest grid probability at which the optimal leverage is zero.
    pub zero_crossing_p: Option<f64>,
    /// Grid probability with the highest payoff.
    pub max_payoff_p: Option<f64>,
}

/// Sweeps the first growth player's target success probability over
/// `p_grid`, holding the rest of the scenario's hash fixed. At each point
/// the entrant's assets are sized so its hash share equals `p`.
pub fn sweep_f_vs_p(scenario: &Scenario, p_grid: &[f64]) -> Result<SweepResult> {
    let entrant = scenario
        .players
        .iter()
        .find(|p| matches!(p.strategy, Strategy::GrowthRate))
        .ok_or_else(|| Error::InvalidParameter("sweep needs a growth player".into()))?;
    let rest_hash: f64 = scenario
        .players
        .iter()
        .filter(|p| p.id != entrant.id)
        .filter_map(|p| p.mining_assets().map(|m| m / p.facility_price_d))
        .sum::<f64>()
        + scenario.exogenous_hash_z;
    if rest_hash <= 0.0 {
        return Err(Error::DegenerateState);
    }
    let env = &scenario.environment;
    let cpc = entrant.cost_rate_c / entrant.facility_price_d;
    let mut points = Vec::with_capacity(p_grid.len());
    for &p in p_grid {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::InvalidParameter(
                "sweep grid must lie in (0, 1)".into(),
            ));
        }
        let own_hash = p / (1.0 - p) * rest_hash;
        let m_i = own_hash * entrant.facility_price_d;
        let ret = TwoPointReturn::new(env.block_reward_b / m_i - cpc, -cpc, p)?;
        let solution = solve_leverage(&ret, env.riskfree_rate_r)?;
        points.push(SweepPoint {
            p,
            f: solution.f_exact,
            log_payoff: solution.expected_log_payoff_at_exact,
        });
    }
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&a, &b| points[a].p.total_cmp(&points[b].p));
    let zero_crossing_p = order
        .iter()
        .map(|&i| points[i])
        .find(|pt| pt.f == 0.0)
        .map(|pt| pt.p);
    let max_payoff_p = points
        .iter()
        .max_by(|a, b| a.log_payoff.total_cmp(&b.log_payoff))
        .map(|pt| pt.p);
    Ok(SweepResult {
        points,
        zero_crossing_p,
        max_payoff_p,
    })
}

/// Distributional comparison of simulated revenue against direct sampling
/// from the Poisson reward model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoissonCheck {
    pub ks: KsTest,
    /// Expected block count for the player over the horizon.
    pub nu: f64,
}

/// Simulates `n_horizons` paths, extracts the focal player's total revenue
/// per horizon, and KS-tests it against direct Poisson-reward sampling at
/// the same intensity. Assumes a static hash profile.
pub fn verify_poisson_revenue(
    scenario: &Scenario,
    n_horizons: usize,
    player_index: usize,
    alpha: f64,
) -> Result<PoissonCheck> {
    if player_index >= scenario.players.len() {
        return Err(Error::InvalidParameter("player index out of range".into()));
    }
    let output = run_nakamoto(scenario, n_horizons, &SimOptions::default())?;
    let b = scenario.environment.block_reward_b;
    let simulated: Vec<f64> = output
        .trajectories
        .iter()
        .map(|t| t.win_counts[player_index] as f64 * b)
        .collect();

    let player = &scenario.players[player_index];
    let hash_i = player
        .mining_assets()
        .ok_or_else(|| Error::InvalidParameter("focal player has no mining assets".into()))?
        / player.facility_price_d;
    let nu = scenario.horizon_t * hash_i / scenario.environment.difficulty()?;
    let mut rng = trajectory_rng(scenario.seed ^ 0x8000_0000_0000_0000, 0);
    let direct: Vec<f64> = (0..n_horizons)
        .map(|_| poisson_count(&mut rng, nu).map(|k| k as f64 * b))
        .collect::<Result<Vec<_>>>()?;
    Ok(PoissonCheck {
        ks: two_sample_ks(&simulated, &direct, alpha),
        nu,
    })
}
