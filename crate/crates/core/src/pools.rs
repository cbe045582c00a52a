//! Mining pools as synthetic players: risk-sharing pools that aggregate
//! member assets at the asset-weighted cost rate, and risk-free-reward
//! pools whose operator rents hash at a fixed fee and keeps the reward
//! risk on its own (levered) book.

use rand::Rng;

use crate::error::{Error, Result};
use crate::kelly::optimal_balance_sheet_for_m;
use crate::scenario::{PoolSpec, Scenario};
use crate::types::{BalanceSheet, Environment, PlayerSpec, RewardMoments, Strategy};

/// A pool whose members share rewards in proportion to mining assets.
///
/// Equivalent to one player holding the summed assets at the weighted cost
/// rate. The internal weighted cost sum keeps nested pooling bit-exact.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskSharingPool {
    pub member_mining_assets: Vec<f64>,
    pub member_cost_rates: Vec<f64>,
    pub aggregate_m_p: f64,
    pub aggregate_c_p: f64,
    cost_weighted_sum: f64,
}

impl RiskSharingPool {
    /// Pools the given `(mining_assets, cost_rate)` members.
    pub fn aggregate(members: &[(f64, f64)]) -> Result<Self> {
        if members.is_empty() {
            return Err(Error::EmptyPool);
        }
        if members.iter().any(|&(m, _)| m.is_nan() || m <= 0.0) {
            return Err(Error::InvalidParameter(
                "pool members need mining assets > 0".into(),
            ));
        }
        let mut total = 0.0;
        let mut weighted = 0.0;
        for &(m, c) in members {
            total += m;
            weighted += m * c;
        }
        Ok(Self {
            member_mining_assets: members.iter().map(|&(m, _)| m).collect(),
            member_cost_rates: members.iter().map(|&(_, c)| c).collect(),
            aggregate_m_p: total,
            aggregate_c_p: weighted / total,
            cost_weighted_sum: weighted,
        })
    }

    /// Extends this pool with more members. Folding members in one at a
    /// time performs exactly the additions `aggregate` would, so nested
    /// pooling agrees bit-for-bit.
    pub fn merge(&self, members: &[(f64, f64)]) -> Result<Self> {
        if members.iter().any(|&(m, _)| m.is_nan() || m <= 0.0) {
            return Err(Error::InvalidParameter(
                "pool members need mining assets > 0".into(),
            ));
        }
        let mut pool = self.clone();
        for &(m, c) in members {
            pool.member_mining_assets.push(m);
            pool.member_cost_rates.push(c);
            pool.aggregate_m_p += m;
            pool.cost_weighted_sum += m * c;
        }
        pool.aggregate_c_p = pool.cost_weighted_sum / pool.aggregate_m_p;
        Ok(pool)
    }

    /// Each member's dividend weight `M_j / M_P`.
    pub fn dividend_weights(&self) -> Vec<f64> {
        self.member_mining_assets
            .iter()
            .map(|m| m / self.aggregate_m_p)
            .collect()
    }

    /// Return-rate moments of the pooled position against the rest of the
    /// world: `E[W_P] = B/H - c_P`, `V[W_P] = B^2 (H - M_P) / (M_P H^2)`.
    pub fn moments(&self, m_rest: f64, env: &Environment) -> RewardMoments {
        let h = self.aggregate_m_p + m_rest;
        let b = env.block_reward_b;
        let mean = b / h - self.aggregate_c_p;
        let variance = b * b * m_rest / (self.aggregate_m_p * h * h);
        RewardMoments::new(mean, variance, env.riskfree_rate_r)
    }
}

/// Pools members into a synthetic player plus its return moments.
pub fn aggregate_risk_sharing(
    id: &str,
    members: &[(f64, f64)],
    m_rest: f64,
    env: &Environment,
) -> Result<(PlayerSpec, RewardMoments, RiskSharingPool)> {
    let pool = RiskSharingPool::aggregate(members)?;
    let moments = pool.moments(m_rest, env);
    let sheet = BalanceSheet::new(pool.aggregate_m_p, 0.0, pool.aggregate_m_p, 0.0);
    let player = PlayerSpec {
        id: id.to_string(),
        facility_price_d: 1.0,
        cost_rate_c: pool.aggregate_c_p,
        strategy: Strategy::Static(sheet),
        mining_assets: Some(pool.aggregate_m_p),
    };
    Ok((player, moments, pool))
}

/// A pay-per-hash pool: the operator offers `offered_rate_c` per unit hash
/// per interval, collects `Phi = p/(1-p) * M_{-i}` of hash to hit the
/// target success probability, and finances the position like an ordinary
/// levered miner, except that the "liabilities" are rented hash, so the
/// interest on them is kept as extra revenue.
#[derive(Debug, Clone, PartialEq)]
pub struct RiskFreeRewardPool {
    pub offered_rate_c: f64,
    pub target_p: f64,
    pub collected_hash_phi: f64,
    pub sheet: BalanceSheet,
    /// Interest on the notional liabilities, earned each stage: `r * L`.
    pub extra_revenue: f64,
    /// False when mining at the target scale is unprofitable; the pool is
    /// then empty.
    pub viable: bool,
}

/// Sizes a risk-free-reward pool for a target success probability against
/// a rest-of-world of `m_minus` mining assets (homogeneous units).
pub fn build_risk_free_pool(
    target_p: f64,
    m_minus: f64,
    offered_c: f64,
    env: &Environment,
) -> Result<RiskFreeRewardPool> {
    if !(target_p > 0.0 && target_p < 1.0) {
        return Err(Error::InvalidParameter(
            "target_p must lie in (0, 1)".into(),
        ));
    }
    if offered_c.is_nan() || offered_c <= 0.0 {
        return Err(Error::InvalidParameter(
            "offered cost rate must be > 0".into(),
        ));
    }
    let phi = target_p / (1.0 - target_p) * m_minus;
    let alloc = optimal_balance_sheet_for_m(phi, m_minus, offered_c, env)?;
    if alloc.leverage.f_exact <= 0.0 {
        return Ok(RiskFreeRewardPool {
            offered_rate_c: offered_c,
            target_p,
            collected_hash_phi: 0.0,
            sheet: BalanceSheet::ZERO,
            extra_revenue: 0.0,
            viable: false,
        });
    }
    Ok(RiskFreeRewardPool {
        offered_rate_c: offered_c,
        target_p,
        collected_hash_phi: phi,
        sheet: alloc.sheet,
        extra_revenue: env.riskfree_rate_r * alloc.sheet.liabilities_l,
        viable: true,
    })
}

impl RiskFreeRewardPool {
    /// One stage of the pool's actual cash flow: win the block reward with
    /// the target probability, always pay the hash fee, and earn interest
    /// on any idle reserve. No debt interest is due because the hash is
    /// rented, not financed. Returns the log payoff on the reserve equity.
    pub fn sample_stage_log_payoff<R: Rng + ?Sized>(&self, env: &Environment, rng: &mut R) -> f64 {
        let win = rng.random::<f64>() < self.target_p;
        let revenue = if win { env.block_reward_b } else { 0.0 };
        let idle_interest = env.riskfree_rate_r * self.sheet.riskfree_assets_f;
        let cash = revenue - self.offered_rate_c * self.collected_hash_phi + idle_interest;
        (1.0 + cash / self.sheet.equity_e).ln()
    }

    /// One stage of the replicating ordinary player: same sheet and cost,
    /// paying interest on its liabilities but collecting the pool's extra
    /// revenue. Distributionally identical to the pool's own cash flow.
    pub fn sample_replica_log_payoff<R: Rng + ?Sized>(
        &self,
        env: &Environment,
        rng: &mut R,
    ) -> f64 {
        let win = rng.random::<f64>() < self.target_p;
        let revenue = if win { env.block_reward_b } else { 0.0 };
        let r = env.riskfree_rate_r;
        let interest = r * (self.sheet.liabilities_l - self.sheet.riskfree_assets_f);
        let cash =
            revenue - self.offered_rate_c * self.collected_hash_phi - interest + self.extra_revenue;
        (1.0 + cash / self.sheet.equity_e).ln()
    }
}

/// Resolves a scenario's pool declarations into synthetic players, in
/// declaration order.
///
/// Risk-sharing pools replace their member players by one static player
/// with the summed assets and the weighted cost. Risk-free pools enter as
/// a static player with the sheet sized for their target probability; the
/// interest waiver on rented hash is folded into the cost rate
/// (`c_eff = c - r L / Phi`), which reproduces the pool's cash flow
/// exactly inside the game.
pub fn apply_pools(scenario: &Scenario) -> Result<Scenario> {
    if scenario.pools.is_empty() {
        return Ok(scenario.clone());
    }
    let mut players = scenario.players.clone();
    let env = scenario.environment;
    for pool_spec in &scenario.pools {
        match pool_spec {
            PoolSpec::RiskSharing { id, members } => {
                let mut collected = Vec::new();
                let mut facility = None;
                for member_id in members {
                    let member = players.iter().find(|p| &p.id == member_id).ok_or_else(|| {
                        Error::InvalidParameter(format!("pool {id}: unknown member {member_id}"))
                    })?;
                    let assets = member.mining_assets().ok_or_else(|| {
                        Error::InvalidParameter(format!(
                            "pool {id}: member {member_id} has no mining assets"
                        ))
                    })?;
                    match facility {
                        None => facility = Some(member.facility_price_d),
                        Some(d) if d == member.facility_price_d => {}
                        Some(_) => {
                            return Err(Error::InvalidParameter(format!(
                                "pool {id}: members must share one facility price"
                            )))
                        }
                    }
                    collected.push((assets, member.cost_rate_c));
                }
                let pool = RiskSharingPool::aggregate(&collected)?;
                players.retain(|p| !members.contains(&p.id));
                let m_p = pool.aggregate_m_p;
                players.push(PlayerSpec {
                    id: id.clone(),
                    facility_price_d: facility.expect("nonempty pool"),
                    cost_rate_c: pool.aggregate_c_p,
                    strategy: Strategy::Static(BalanceSheet::new(m_p, 0.0, m_p, 0.0)),
                    mining_assets: Some(m_p),
                });
            }
            PoolSpec::RiskFree {
                id,
                target_p,
                offered_cost_rate,
            } => {
                let rest_hash: f64 = players
                    .iter()
                    .filter_map(|p| p.mining_assets().map(|m| m / p.facility_price_d))
                    .sum::<f64>()
                    + scenario.exogenous_hash_z;
                let pool = build_risk_free_pool(*target_p, rest_hash, *offered_cost_rate, &env)?;
                if !pool.viable {
                    continue;
                }
                let cost_eff = *offered_cost_rate
                    - env.riskfree_rate_r * pool.sheet.liabilities_l / pool.collected_hash_phi;
                if cost_eff < 0.0 {
                    return Err(Error::InvalidParameter(format!(
                        "pool {id}: offered fee is below the interest credit"
                    )));
                }
                players.push(PlayerSpec {
                    id: id.clone(),
                    facility_price_d: 1.0,
                    cost_rate_c: cost_eff,
                    strategy: Strategy::Static(pool.sheet),
                    mining_assets: Some(pool.sheet.mining_assets_m),
                });
            }
        }
    }
    Scenario::new(
        scenario.environment,
        players,
        scenario.exogenous_hash_z,
        scenario.horizon_t,
        scenario.seed,
    )
}
