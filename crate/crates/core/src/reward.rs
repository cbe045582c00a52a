//! The reward process at the heart of the game: one block reward goes to a
//! single winner drawn with probability proportional to hash rate, while
//! every player pays its running cost. Provides winner sampling, analytic
//! return moments, break-even bounds, and moment generating functions for
//! the single draw, its compound-Poisson aggregation over a horizon, and
//! the plain Poisson reward comparator.

use rand::Rng;

use crate::error::{Error, Result};
use crate::types::{BalanceSheet, Environment, RewardMoments};

/// Immutable per-draw state: who holds what, at which prices and costs.
#[derive(Debug, Clone, PartialEq)]
pub struct ProcessState {
    pub sheets: Vec<BalanceSheet>,
    pub env: Environment,
    pub facility_prices: Vec<f64>,
    pub cost_rates: Vec<f64>,
}

impl ProcessState {
    pub fn new(
        sheets: Vec<BalanceSheet>,
        env: Environment,
        facility_prices: Vec<f64>,
        cost_rates: Vec<f64>,
    ) -> Result<Self> {
        let n = sheets.len();
        if facility_prices.len() != n || cost_rates.len() != n {
            return Err(Error::InvalidParameter(
                "sheets, facility_prices and cost_rates must have equal length".into(),
            ));
        }
        if facility_prices.iter().any(|&d| !d.is_finite() || d <= 0.0) {
            return Err(Error::InvalidParameter(
                "facility prices must be finite and > 0".into(),
            ));
        }
        Ok(Self {
            sheets,
            env,
            facility_prices,
            cost_rates,
        })
    }

    /// Hash rate of player `i`: `M_i / d_i`.
    pub fn hash_rate(&self, i: usize) -> f64 {
        self.sheets[i].mining_assets_m / self.facility_prices[i]
    }

    /// World hash rate across all players.
    pub fn total_hash(&self) -> f64 {
        (0..self.sheets.len()).map(|i| self.hash_rate(i)).sum()
    }

    /// Per-stage cost paid by player `i`: `c_i M_i / d_i`.
    pub fn cost(&self, i: usize) -> f64 {
        self.cost_rates[i] * self.hash_rate(i)
    }

    /// Trigger intensity `lambda = total_hash / D`.
    pub fn trigger_intensity(&self) -> Result<f64> {
        Ok(self.total_hash() / self.env.difficulty()?)
    }

    pub fn len(&self) -> usize {
        self.sheets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sheets.is_empty()
    }
}

/// Success probability of each player: hash share of the world hash rate.
pub fn success_probabilities(state: &ProcessState) -> Result<Vec<f64>> {
    let total = state.total_hash();
    if total <= 0.0 {
        return Err(Error::DegenerateState);
    }
    Ok((0..state.len())
        .map(|i| state.hash_rate(i) / total)
        .collect())
}

/// Draws one winner by inverse-CDF over the cumulative probabilities with a
/// single uniform; boundary ties resolve toward the lower index.
pub fn sample_winner<R: Rng + ?Sized>(probabilities: &[f64], rng: &mut R) -> usize {
    let u: f64 = rng.random();
    let mut cumulative = 0.0;
    for (i, p) in probabilities.iter().enumerate() {
        cumulative += p;
        if u <= cumulative {
            return i;
        }
    }
    probabilities.len() - 1
}

/// Samples one draw of the reward process: the winner receives the block
/// reward, every player pays its cost. Returns the winner index and each
/// player's return.
pub fn sample_returns<R: Rng + ?Sized>(
    state: &ProcessState,
    rng: &mut R,
) -> Result<(usize, Vec<f64>)> {
    let probabilities = success_probabilities(state)?;
    let winner = sample_winner(&probabilities, rng);
    let returns = (0..state.len())
        .map(|i| {
            let reward = if i == winner {
                state.env.block_reward_b
            } else {
                0.0
            };
            reward - state.cost(i)
        })
        .collect();
    Ok((winner, returns))
}

/// Analytic moments of the return rate over mining assets, `W_i = R_i / M_i`.
///
/// For homogeneous facility prices these reduce to
/// `E[W_i] = B/H - c_i` and `V[W_i] = B^2 M_{-i} / (M_i H^2)`.
pub fn return_moments(player_index: usize, state: &ProcessState) -> Result<RewardMoments> {
    let m_i = state.sheets[player_index].mining_assets_m;
    if m_i <= 0.0 {
        return Err(Error::UndefinedMoments(player_index));
    }
    let p = success_probabilities(state)?[player_index];
    let b = state.env.block_reward_b;
    let d_i = state.facility_prices[player_index];
    let mean = b * p / m_i - state.cost_rates[player_index] / d_i;
    let variance = b * b * p * (1.0 - p) / (m_i * m_i);
    Ok(RewardMoments::new(
        mean,
        variance,
        state.env.riskfree_rate_r,
    ))
}

/// Break-even hash rate `Y = B / c`: the world hash level at which expected
/// mining return net of cost is zero.
pub fn break_even_hashrate(cost_rate_c: f64, env: &Environment) -> Result<f64> {
    if cost_rate_c < 0.0 || !cost_rate_c.is_finite() {
        return Err(Error::InvalidParameter(
            "cost rate must be finite and >= 0".into(),
        ));
    }
    if cost_rate_c == 0.0 {
        return Err(Error::InfiniteBreakEven);
    }
    Ok(env.block_reward_b / cost_rate_c)
}

/// Levered break-even `Y' = B / (c + r)`, which also nets out the riskfree
/// opportunity.
pub fn levered_break_even_hashrate(cost_rate_c: f64, env: &Environment) -> Result<f64> {
    if cost_rate_c < 0.0 || !cost_rate_c.is_finite() {
        return Err(Error::InvalidParameter(
            "cost rate must be finite and >= 0".into(),
        ));
    }
    let denom = cost_rate_c + env.riskfree_rate_r;
    if denom == 0.0 {
        return Err(Error::InfiniteBreakEven);
    }
    Ok(env.block_reward_b / denom)
}

/// Threshold on `u*B` beyond which `exp` overflows f64.
const EXP_OVERFLOW: f64 = 709.0;

/// Log of the single-draw MGF, evaluated stably for any finite `u`:
/// `log((p e^{uB} + 1 - p) e^{-u c_i M_i / d_i})`.
pub fn log_mgf_single(u: f64, player_index: usize, state: &ProcessState) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::NonFinite("u"));
    }
    let p = success_probabilities(state)?[player_index];
    let ub = u * state.env.block_reward_b;
    let log_revenue = if ub > 30.0 {
        // p e^{uB} dominates; factor it out to stay in range.
        ub + (p + (1.0 - p) * (-ub).exp()).ln()
    } else {
        (p * ub.exp_m1()).ln_1p()
    };
    Ok(log_revenue - u * state.cost(player_index))
}

/// Single-draw MGF `(p_i e^{uB} + 1 - p_i) e^{-u c_i M_i / d_i}`.
///
/// Signals overflow rather than returning infinity; callers needing large
/// `u B` should use [`log_mgf_single`].
pub fn mgf_single(u: f64, player_index: usize, state: &ProcessState) -> Result<f64> {
    let log = log_mgf_single(u, player_index, state)?;
    if log > EXP_OVERFLOW {
        return Err(Error::MgfOverflow { u });
    }
    Ok(log.exp())
}

/// Log-MGF of the summed return over `[0, T]`: `T lambda (mgf_single(u) - 1)`.
///
/// Saturates to infinity when the inner single-draw MGF itself exceeds f64
/// range (`u B` beyond ~709).
pub fn log_mgf_compound(
    u: f64,
    player_index: usize,
    state: &ProcessState,
    horizon_t: f64,
) -> Result<f64> {
    let lambda = state.trigger_intensity()?;
    let log_single = log_mgf_single(u, player_index, state)?;
    Ok(horizon_t * lambda * log_single.exp_m1())
}

/// MGF of the summed return over `[0, T]` (compound Poisson aggregation of
/// the single draw).
pub fn mgf_compound(
    u: f64,
    player_index: usize,
    state: &ProcessState,
    horizon_t: f64,
) -> Result<f64> {
    let log = log_mgf_compound(u, player_index, state, horizon_t)?;
    if log > EXP_OVERFLOW {
        return Err(Error::MgfOverflow { u });
    }
    Ok(log.exp())
}

/// Log-MGF of the revenue in the Poisson reward model:
/// `T lambda_i (e^{uB} - 1)` with `lambda_i = M_i / (D d_i)`.
pub fn log_mgf_poisson_reward(
    u: f64,
    player_index: usize,
    state: &ProcessState,
    horizon_t: f64,
) -> Result<f64> {
    if !u.is_finite() {
        return Err(Error::NonFinite("u"));
    }
    let lambda_i = state.hash_rate(player_index) / state.env.difficulty()?;
    Ok(horizon_t * lambda_i * (u * state.env.block_reward_b).exp_m1())
}

/// MGF of the revenue in the Poisson reward model.
pub fn mgf_poisson_reward(
    u: f64,
    player_index: usize,
    state: &ProcessState,
    horizon_t: f64,
) -> Result<f64> {
    let log = log_mgf_poisson_reward(u, player_index, state, horizon_t)?;
    if log > EXP_OVERFLOW {
        return Err(Error::MgfOverflow { u });
    }
    Ok(log.exp())
}
