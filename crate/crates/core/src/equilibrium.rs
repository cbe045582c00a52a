//! Hash-rate equilibrium among growth-rate miners: the Sharpe-maximizing
//! best response, the closed-form equilibrium with support restriction, an
//! independent fixed-point solver used as its oracle, and share/dominance
//! analytics.

use crate::error::{Error, Result};
use crate::reward::levered_break_even_hashrate;
use crate::types::{Environment, EquilibriumResult};

/// An equilibrium instance: the cost rates of the strategic (growth-rate)
/// miners and the exogenous hash held by static players.
#[derive(Debug, Clone, PartialEq)]
pub struct EquilibriumProblem {
    pub growth_costs: Vec<f64>,
    pub exogenous_hash_z: f64,
    pub env: Environment,
}

impl EquilibriumProblem {
    pub fn new(growth_costs: Vec<f64>, exogenous_hash_z: f64, env: Environment) -> Result<Self> {
        if growth_costs.is_empty() {
            return Err(Error::InvalidParameter(
                "at least one growth player required".into(),
            ));
        }
        if growth_costs.iter().any(|c| !c.is_finite() || *c < 0.0) {
            return Err(Error::InvalidParameter(
                "cost rates must be finite and >= 0".into(),
            ));
        }
        if !exogenous_hash_z.is_finite() || exogenous_hash_z < 0.0 {
            return Err(Error::InvalidParameter(
                "exogenous hash must be finite and >= 0".into(),
            ));
        }
        Ok(Self {
            growth_costs,
            exogenous_hash_z,
            env,
        })
    }

    fn break_evens(&self) -> Result<Vec<f64>> {
        self.growth_costs
            .iter()
            .map(|&c| levered_break_even_hashrate(c, &self.env))
            .collect()
    }
}

/// Sharpe-maximizing holdings against a fixed rest-of-world:
/// `max(0, (Y'_i - M_{-i}) / 3)` with `Y'_i = B / (c_i + r)`.
///
/// The clamp to zero is the exit condition: entering is unprofitable once
/// the rest of the world reaches the break-even level.
pub fn best_response(m_minus_i: f64, cost_rate_c: f64, env: &Environment) -> Result<f64> {
    if !m_minus_i.is_finite() || m_minus_i < 0.0 {
        return Err(Error::InvalidParameter(
            "m_minus_i must be finite and >= 0".into(),
        ));
    }
    let y_prime = levered_break_even_hashrate(cost_rate_c, env)?;
    Ok(((y_prime - m_minus_i) / 3.0).max(0.0))
}

/// Holdings snap to zero below this multiple of the stopping tolerance when
/// the fixed-point solver decides the support set.
const SUPPORT_SNAP: f64 = 10.0;

fn build_result(
    holdings: &[f64],
    break_evens: &[f64],
    problem: &EquilibriumProblem,
) -> EquilibriumResult {
    let world = holdings.iter().sum::<f64>() + problem.exogenous_hash_z;
    let r = problem.env.riskfree_rate_r;
    let b = problem.env.block_reward_b;
    let idle_payoff = r - r * r / 2.0;
    let mut shares = vec![0.0; holdings.len()];
    let mut payoffs = vec![idle_payoff; holdings.len()];
    let mut support = Vec::new();
    for (i, &m) in holdings.iter().enumerate() {
        if m > 0.0 {
            support.push(i);
            if world > 0.0 {
                shares[i] = m / world;
            }
            let mu = b / world - problem.growth_costs[i];
            let m_rest = world - m;
            if m_rest > 0.0 {
                let sigma2 = b * b * m_rest / (m * world * world);
                let s = (mu - r) / sigma2.sqrt();
                payoffs[i] = s * s / 2.0 + r - r * r / 2.0;
            } else {
                payoffs[i] = idle_payoff;
            }
        }
    }
    let _ = break_evens;
    let exogenous_share = if world > 0.0 {
        problem.exogenous_hash_z / world
    } else {
        0.0
    };
    EquilibriumResult {
        holdings_mhat: holdings.to_vec(),
        world_hash_hhat: world,
        shares,
        exogenous_share,
        support,
        payoff_per_stage: payoffs,
    }
}

/// Closed-form equilibrium.
///
/// On the active set, `H = (sum Y' + 2Z) / (m + 2)` and each player holds
/// `M_i = (Y'_i - H) / 2`. Players whose closed-form holding comes out
/// negative are removed one at a time (most negative first) and the system
/// is re-solved on the survivors; removed players' best responses against
/// the final world are verified to be zero. An empty surviving set is a
/// no-participation result, not an error.
pub fn equilibrium_closed_form(problem: &EquilibriumProblem) -> Result<EquilibriumResult> {
    let break_evens = problem.break_evens()?;
    let m = break_evens.len();
    let z = problem.exogenous_hash_z;
    let mut active: Vec<usize> = (0..m).collect();
    let mut holdings = vec![0.0; m];
    loop {
        if active.is_empty() {
            break;
        }
        let sum_y: f64 = active.iter().map(|&i| break_evens[i]).sum();
        let world = (sum_y + 2.0 * z) / (active.len() as f64 + 2.0);
        let mut worst: Option<(usize, f64)> = None;
        for &i in &active {
            let holding = (break_evens[i] - world) / 2.0;
            holdings[i] = holding;
            if holding < 0.0 && worst.is_none_or(|(_, w)| holding < w) {
                worst = Some((i, holding));
            }
        }
        match worst {
            Some((i, _)) => {
                holdings[i] = 0.0;
                active.retain(|&j| j != i);
            }
            None => break,
        }
    }
    let world = holdings.iter().sum::<f64>() + z;
    for (i, &holding) in holdings.iter().enumerate() {
        if holding == 0.0 {
            let response = best_response(world, problem.growth_costs[i], &problem.env)?;
            debug_assert!(
                response == 0.0,
                "removed player {i} has nonzero best response {response}"
            );
        }
    }
    Ok(build_result(&holdings, &break_evens, problem))
}

/// Options for the fixed-point solver. `damping = None` picks `3 / (m + 2)`
/// for m > 3 (the plain simultaneous map oscillates there) and plain
/// iteration otherwise.
#[derive(Debug, Clone, Copy)]
pub struct FixedPointOptions {
    pub tolerance: f64,
    pub max_iterations: usize,
    pub damping: Option<f64>,
}

impl Default for FixedPointOptions {
    fn default() -> Self {
        Self {
            tolerance: 1e-12,
            max_iterations: 1_000_000,
            damping: None,
        }
    }
}

/// Equilibrium by damped simultaneous best-response iteration from
/// `M_i = Y'_i / 3`, stopping when the largest relative change falls below
/// the tolerance. Serves as an independent oracle for the closed form.
pub fn equilibrium_fixed_point(
    problem: &EquilibriumProblem,
    tolerance: f64,
    max_iterations: usize,
) -> Result<EquilibriumResult> {
    equilibrium_fixed_point_with(
        problem,
        FixedPointOptions {
            tolerance,
            max_iterations,
            damping: None,
        },
    )
}

pub fn equilibrium_fixed_point_with(
    problem: &EquilibriumProblem,
    options: FixedPointOptions,
) -> Result<EquilibriumResult> {
    if options.tolerance <= 0.0 {
        return Err(Error::InvalidParameter("tolerance must be > 0".into()));
    }
    let break_evens = problem.break_evens()?;
    let m = break_evens.len();
    let z = problem.exogenous_hash_z;
    let alpha = options
        .damping
        .unwrap_or(if m > 3 { 3.0 / (m as f64 + 2.0) } else { 1.0 });
    // Holdings below this scale are indistinguishable from exit.
    let floors: Vec<f64> = break_evens
        .iter()
        .map(|y| options.tolerance * y.max(1.0))
        .collect();
    let mut holdings: Vec<f64> = break_evens.iter().map(|y| y / 3.0).collect();
    let mut converged = false;
    let mut last_change = f64::INFINITY;
    for _ in 0..options.max_iterations {
        let total: f64 = holdings.iter().sum();
        let mut worst: f64 = 0.0;
        for i in 0..m {
            let rest = total - holdings[i] + z;
            let response = ((break_evens[i] - rest) / 3.0).max(0.0);
            let mut updated = (1.0 - alpha) * holdings[i] + alpha * response;
            if response == 0.0 && updated <= floors[i] {
                updated = 0.0;
            }
            worst = worst.max((updated - holdings[i]).abs() / updated.max(floors[i]));
            holdings[i] = updated;
        }
        last_change = worst;
        if worst < options.tolerance {
            converged = true;
            break;
        }
    }
    if !converged {
        return Err(Error::NoConvergence {
            iterations: options.max_iterations,
            last_change,
            last: holdings,
        });
    }
    for (holding, floor) in holdings.iter_mut().zip(&floors) {
        if *holding <= SUPPORT_SNAP * floor {
            *holding = 0.0;
        }
    }
    Ok(build_result(&holdings, &break_evens, problem))
}

/// Share of the world hash rate per player, with the dominance flag.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PlayerShare {
    pub share: f64,
    pub dominant: bool,
}

/// Tolerance band so the exact 50% threshold case still raises the flag.
const DOMINANCE_EPS: f64 = 1e-9;

/// Recomputes each in-support player's share from the cost side,
/// `share = (Y'_i / H - 1) / 2`, and flags shares at or above one half.
pub fn share_and_dominance(
    result: &EquilibriumResult,
    growth_costs: &[f64],
    env: &Environment,
) -> Result<Vec<PlayerShare>> {
    let world = result.world_hash_hhat;
    growth_costs
        .iter()
        .enumerate()
        .map(|(i, &c)| {
            let share = if result.holdings_mhat[i] > 0.0 && world > 0.0 {
                let y_prime = levered_break_even_hashrate(c, env)?;
                ((y_prime / world - 1.0) / 2.0).max(0.0)
            } else {
                0.0
            };
            Ok(PlayerShare {
                share,
                dominant: share >= 0.5 - DOMINANCE_EPS,
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha12Rng;

    fn env(b: f64, r: f64) -> Environment {
        Environment::new(b, 600.0, r).unwrap()
    }

    fn problem(costs: &[f64], z: f64, b: f64, r: f64) -> EquilibriumProblem {
        EquilibriumProblem::new(costs.to_vec(), z, env(b, r)).unwrap()
    }

    #[test]
    fn best_response_examples() {
        let e = env(9.0, 0.0);
        assert_relative_eq!(best_response(0.0, 1.0, &e).unwrap(), 3.0);
        assert_eq!(best_response(9.0, 1.0, &e).unwrap(), 0.0);
        assert_eq!(best_response(12.0, 1.0, &e).unwrap(), 0.0);
    }

    #[test]
    fn best_response_maximizes_sharpe_on_grid() {
        let mut rng = ChaCha12Rng::seed_from_u64(20);
        for _ in 0..100 {
            let b = rng.random_range(1.0..20.0);
            let c = rng.random_range(0.01..1.0);
            let r = rng.random_range(0.0..0.05);
            let e = env(b, r);
            let y = b / (c + r);
            let m_rest = rng.random_range(0.01..1.5) * y;
            let br = best_response(m_rest, c, &e).unwrap();
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
                // Exit: no interior point may deliver positive excess Sharpe.
                assert!(best.1 <= 1e-12, "positive sharpe {} despite exit", best.1);
            } else {
                assert!(
                    (best.0 - br).abs() <= step,
                    "grid {} vs closed {br}",
                    best.0
                );
            }
        }
    }

    #[test]
    fn single_player_equilibrium() {
        let p = problem(&[1.0], 0.0, 9.0, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        assert_relative_eq!(eq.holdings_mhat[0], 3.0);
        assert_relative_eq!(eq.world_hash_hhat, 3.0);
        assert_relative_eq!(eq.shares[0], 1.0);
        assert_eq!(eq.support, vec![0]);
    }

    #[test]
    fn two_symmetric_players() {
        let p = problem(&[1.0, 1.0], 0.0, 8.0, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        // Y' = 8: each holds Y'/4, world is Y'/2.
        assert_relative_eq!(eq.holdings_mhat[0], 2.0);
        assert_relative_eq!(eq.holdings_mhat[1], 2.0);
        assert_relative_eq!(eq.world_hash_hhat, 4.0);
        assert_relative_eq!(eq.shares[0], 0.5);
    }

    #[test]
    fn ten_symmetric_players() {
        let p = problem(&[1.0; 10], 0.0, 12.0, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        let y = 12.0;
        assert_relative_eq!(eq.world_hash_hhat, 10.0 / 12.0 * y, max_relative = 1e-12);
        for share in &eq.shares {
            assert_relative_eq!(*share, 0.1, max_relative = 1e-12);
        }
    }

    #[test]
    fn holdings_satisfy_best_response_residual() {
        let p = problem(&[0.8, 1.0, 1.2], 2.0, 10.0, 0.01);
        for eq in [
            equilibrium_closed_form(&p).unwrap(),
            equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap(),
        ] {
            let total: f64 = eq.holdings_mhat.iter().sum();
            assert_relative_eq!(
                total + p.exogenous_hash_z,
                eq.world_hash_hhat,
                max_relative = 1e-12
            );
            for (i, &m) in eq.holdings_mhat.iter().enumerate() {
                let rest = eq.world_hash_hhat - m;
                let br = best_response(rest, p.growth_costs[i], &p.env).unwrap();
                let y = levered_break_even_hashrate(p.growth_costs[i], &p.env).unwrap();
                assert!(
                    (m - br).abs() < 1e-9 * y.max(1.0),
                    "player {i}: {m} vs {br}"
                );
            }
        }
    }

    #[test]
    fn fixed_point_matches_closed_form_symmetric() {
        let p = problem(&[0.5; 6], 1.0, 10.0, 0.0);
        let closed = equilibrium_closed_form(&p).unwrap();
        let fixed = equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap();
        for (a, b) in closed.holdings_mhat.iter().zip(&fixed.holdings_mhat) {
            assert_relative_eq!(a, b, max_relative = 1e-10);
        }
    }

    #[test]
    fn fixed_point_matches_closed_form_heterogeneous() {
        let c_hat = 0.4;
        let p = problem(&[0.8 * c_hat, c_hat, 1.2 * c_hat], 0.7, 6.0, 0.02);
        let closed = equilibrium_closed_form(&p).unwrap();
        let fixed = equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap();
        assert_eq!(closed.support, fixed.support);
        for (a, b) in closed.holdings_mhat.iter().zip(&fixed.holdings_mhat) {
            assert_relative_eq!(a, b, max_relative = 1e-10, epsilon = 1e-12);
        }
    }

    #[test]
    fn support_restriction_removes_expensive_players() {
        // One very expensive player must exit.
        let p = problem(&[0.1, 0.1, 10.0], 0.0, 10.0, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        assert_eq!(eq.support, vec![0, 1]);
        assert_eq!(eq.holdings_mhat[2], 0.0);
        let fixed = equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap();
        assert_eq!(fixed.support, vec![0, 1]);
    }

    #[test]
    fn saturated_world_empties_the_support() {
        let p = problem(&[1.0, 2.0], 20.0, 10.0, 0.0);
        // Z = 20 exceeds every Y' (10 and 5).
        let eq = equilibrium_closed_form(&p).unwrap();
        assert!(eq.support.is_empty());
        assert_eq!(eq.holdings_mhat, vec![0.0, 0.0]);
        assert_relative_eq!(eq.world_hash_hhat, 20.0);
        assert_relative_eq!(eq.exogenous_share, 1.0);
        let fixed = equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap();
        assert_eq!(fixed.holdings_mhat, vec![0.0, 0.0]);
    }

    #[test]
    fn randomized_agreement_and_ordering() {
        let mut rng = ChaCha12Rng::seed_from_u64(21);
        for _ in 0..100 {
            let m = rng.random_range(1..=20usize);
            let b = rng.random_range(1.0..50.0);
            let r = rng.random_range(0.0..0.02);
            let costs: Vec<f64> = (0..m)
                .map(|_| 10f64.powf(rng.random_range(-2.0..1.0)))
                .collect();
            let max_y = costs.iter().map(|&c| b / (c + r)).fold(f64::MIN, f64::max);
            let z = rng.random_range(0.0..max_y);
            let p = problem(&costs, z, b, r);
            let closed = equilibrium_closed_form(&p).unwrap();
            let fixed = equilibrium_fixed_point(&p, 1e-12, 1_000_000).unwrap();
            assert_eq!(closed.support, fixed.support);
            for (a, bb) in closed.holdings_mhat.iter().zip(&fixed.holdings_mhat) {
                let scale = a.abs().max(1e-9);
                assert!((a - bb).abs() / scale < 1e-8, "{a} vs {bb}");
            }
            // Cheaper players hold weakly larger shares.
            for i in 0..m {
                for j in 0..m {
                    if costs[i] < costs[j] {
                        assert!(closed.shares[i] >= closed.shares[j] - 1e-12);
                    }
                }
            }
            // World hash stays below the best player's break-even.
            if z < max_y {
                assert!(closed.world_hash_hhat < max_y);
            }
            // Shares over all hash contributors account for everything.
            if closed.world_hash_hhat > 0.0 {
                let total_share: f64 = closed.shares.iter().sum::<f64>() + closed.exogenous_share;
                assert!((total_share - 1.0).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn homogeneous_share_bounded_by_uniform() {
        let mut rng = ChaCha12Rng::seed_from_u64(22);
        for _ in 0..50 {
            let m = rng.random_range(1..=15usize);
            let b = rng.random_range(1.0..20.0);
            let c = rng.random_range(0.05..1.0);
            let y = b / c;
            let z = rng.random_range(0.0..y * 0.9);
            let p = problem(&vec![c; m], z, b, 0.0);
            let eq = equilibrium_closed_form(&p).unwrap();
            for &share in &eq.shares {
                assert!(share <= 1.0 / m as f64 + 1e-12);
            }
            assert!(eq.world_hash_hhat / y >= m as f64 / (m as f64 + 2.0) - 1e-12);
        }
    }

    #[test]
    fn shares_from_costs_match_holdings() {
        let p = problem(&[0.3, 0.5, 0.9], 1.0, 8.0, 0.01);
        let eq = equilibrium_closed_form(&p).unwrap();
        let shares = share_and_dominance(&eq, &p.growth_costs, &p.env).unwrap();
        for (i, ps) in shares.iter().enumerate() {
            assert_relative_eq!(
                ps.share,
                eq.shares[i],
                max_relative = 1e-10,
                epsilon = 1e-12
            );
        }
    }

    #[test]
    fn equilibrium_payoff_is_sharpe_squared_over_two() {
        let p = problem(&[0.5, 0.7], 1.0, 10.0, 0.01);
        let eq = equilibrium_closed_form(&p).unwrap();
        let r: f64 = 0.01;
        for &i in &eq.support {
            let m = eq.holdings_mhat[i];
            let h = eq.world_hash_hhat;
            let mu = 10.0 / h - p.growth_costs[i];
            let sigma2 = 100.0 * (h - m) / (m * h * h);
            let s = (mu - r) / sigma2.sqrt();
            assert_relative_eq!(
                eq.payoff_per_stage[i],
                s * s / 2.0 + r - r * r / 2.0,
                max_relative = 1e-12
            );
        }
    }

    #[test]
    fn dominance_thresholds() {
        // Homogeneous world at 85% of break-even: share is (1/0.85 - 1)/2.
        let b = 10.0;
        let y = 10.0;
        let p = problem(&[1.0; 10], 0.1 * y, b, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        assert_relative_eq!(eq.world_hash_hhat, 0.85 * y, max_relative = 1e-12);
        let shares = share_and_dominance(&eq, &p.growth_costs, &p.env).unwrap();
        assert_relative_eq!(
            shares[0].share,
            (1.0 / 0.85 - 1.0) / 2.0,
            max_relative = 1e-10
        );
        assert!(!shares[0].dominant);

        // A 1.7x cost-efficient player at H = 0.85 Y' holds exactly half.
        let p = problem(&[1.0 / 1.7, 1.0, 1.0, 1.0, 1.0, 1.0], 0.05 * y, b, 0.0);
        let eq = equilibrium_closed_form(&p).unwrap();
        assert_relative_eq!(eq.world_hash_hhat, 0.85 * y, max_relative = 1e-12);
        let shares = share_and_dominance(&eq, &p.growth_costs, &p.env).unwrap();
        assert_relative_eq!(shares[0].share, 0.5, max_relative = 1e-10);
        assert!(shares[0].dominant);
        assert!(!shares[1].dominant);
    }
}
