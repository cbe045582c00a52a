//! Optimal leverage for a two-outcome stage game: the exact expected-log
//! maximizer in closed form, the quadratic (Sharpe) approximants, the
//! approximate growth rate, and the optimal balance sheet for a given
//! mining scale.
//!
//! With leverage `f = M/E` the stage return on equity is
//! `X = (1-f) r + f W`, so the expected log payoff is
//! `p log(1 + r + f(u - r)) + (1-p) log(1 + r + f(d - r))`.

use crate::error::{Error, Result};
use crate::types::{make_balance_sheet, BalanceSheet, Environment, RewardMoments, TwoPointReturn};

/// Exact and approximate optimal leverage for one stage game.
///
/// `f_exact` is the unique stationary point of the expected log payoff
/// (clamped to the feasibility boundary in the degenerate zero-variance
/// case, with `clamped` set). The approximants come from the quadratic
/// expansion and are diagnostics: `f_exact` is authoritative downstream.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LeverageSolution {
    pub f_exact: f64,
    /// `(mu - r)(1 + r) / sigma^2`
    pub f_approx: f64,
    /// `(mu - r) / sigma^2`
    pub f_simple: f64,
    pub expected_log_payoff_at_exact: f64,
    pub sharpe_s: f64,
    /// Set when the stationary point sits on the feasibility boundary
    /// (zero-variance sure win) and the boundary value is returned instead
    /// of a non-finite number.
    pub clamped: bool,
}

impl LeverageSolution {
    pub const ZERO: LeverageSolution = LeverageSolution {
        f_exact: 0.0,
        f_approx: 0.0,
        f_simple: 0.0,
        expected_log_payoff_at_exact: 0.0,
        sharpe_s: 0.0,
        clamped: false,
    };
}

/// Expected log payoff of playing leverage `f` against a two-point return.
///
/// Branches with zero probability are skipped, so a sure-win distribution
/// may be evaluated at the boundary of the losing branch.
pub fn expected_log_payoff(f: f64, ret: &TwoPointReturn, riskfree_rate_r: f64) -> Result<f64> {
    if !f.is_finite() {
        return Err(Error::NonFinite("f"));
    }
    let r = riskfree_rate_r;
    let up_arg = 1.0 + r + f * (ret.up_u - r);
    let down_arg = 1.0 + r + f * (ret.down_d - r);
    let mut payoff = 0.0;
    if ret.prob_p > 0.0 {
        if up_arg <= 0.0 {
            return Err(Error::InfeasibleLeverage {
                f,
                branch: "up",
                arg: up_arg,
            });
        }
        payoff += ret.prob_p * up_arg.ln();
    }
    if ret.prob_p < 1.0 {
        if down_arg <= 0.0 {
            return Err(Error::InfeasibleLeverage {
                f,
                branch: "down",
                arg: down_arg,
            });
        }
        payoff += (1.0 - ret.prob_p) * down_arg.ln();
    }
    Ok(payoff)
}

/// Smallest positive leverage at which a log argument reaches zero, or
/// infinity if no branch ever binds.
pub fn leverage_upper_bound(ret: &TwoPointReturn, riskfree_rate_r: f64) -> f64 {
    let r = riskfree_rate_r;
    let mut bound = f64::INFINITY;
    for slope in [ret.up_u - r, ret.down_d - r] {
        if slope < 0.0 {
            bound = bound.min((1.0 + r) / (-slope));
        }
    }
    bound
}

/// Exact optimal leverage: the unique stationary point of
/// [`expected_log_payoff`] on the feasible interval, in closed form.
///
/// Solving `d/df E[log(1+X)] = 0` gives
/// `f = (1 + r)(mu - r) / ((u - r)(r - d))`.
/// Returns `(0, false)` when the stationary point is non-positive
/// (unprofitable), and the boundary with `clamped = true` in the
/// zero-variance sure-win limit.
pub fn f_max_exact(ret: &TwoPointReturn, riskfree_rate_r: f64) -> Result<(f64, bool)> {
    let r = riskfree_rate_r;
    let mu = ret.mean();
    if mu <= r {
        return Ok((0.0, false));
    }
    // mu > r forces u > r; an unlosable down branch leaves no interior optimum.
    if ret.down_d >= r {
        return Err(Error::UnboundedLeverage);
    }
    let f = (1.0 + r) * (mu - r) / ((ret.up_u - r) * (r - ret.down_d));
    let bound = leverage_upper_bound(ret, r);
    if f >= bound {
        return Ok((bound, true));
    }
    Ok((f, false))
}

/// Mining-parameterized exact optimum for a miner holding `m_i` against
/// `m_minus_i` at cost rate `c`:
///
/// `f_max = M_i (r+1) ((M_i + M_{-i})(c+r) - B) /
///          ((M_{-i} + M_i)(r+c) (M_i (r+c) - B))`,
///
/// clamped to zero when unprofitable.
pub fn f_max_exact_mining(
    m_i: f64,
    m_minus_i: f64,
    block_reward_b: f64,
    c: f64,
    r: f64,
) -> Result<f64> {
    if m_i <= 0.0 || m_minus_i < 0.0 || block_reward_b <= 0.0 {
        return Err(Error::InvalidParameter(
            "f_max requires m_i > 0, m_minus_i >= 0, block_reward > 0".into(),
        ));
    }
    if c + r == 0.0 {
        return Err(Error::UnboundedLeverage);
    }
    if m_i * (c + r) - block_reward_b == 0.0 {
        return Err(Error::SingularConfiguration);
    }
    let h = m_i + m_minus_i;
    // No profitable entry once the world sits at or past break-even.
    if block_reward_b / h - c <= r {
        return Ok(0.0);
    }
    let f = m_i * (r + 1.0) * (h * (c + r) - block_reward_b)
        / (h * (r + c) * (m_i * (r + c) - block_reward_b));
    Ok(f.max(0.0))
}

/// Quadratic-expansion approximants `((mu-r)(1+r)/sigma^2, (mu-r)/sigma^2)`.
pub fn f_star_approx(mu: f64, sigma2: f64, r: f64) -> Result<(f64, f64)> {
    if sigma2 <= 0.0 {
        return Err(Error::DegenerateRiskless);
    }
    let simple = (mu - r) / sigma2;
    Ok((simple * (1.0 + r), simple))
}

/// Quadratic approximation of the expected log payoff:
/// `g(f) = r - r^2/2 + f (mu - r) - f^2 sigma^2 / 2`.
///
/// At `f = (mu-r)/sigma^2` this equals `S^2/2 + r - r^2/2`.
pub fn g_infinity(f: f64, mu: f64, sigma2: f64, r: f64) -> f64 {
    r - r * r / 2.0 + f * (mu - r) - f * f * sigma2 / 2.0
}

/// Solves the full leverage problem for one two-point return.
pub fn solve_leverage(ret: &TwoPointReturn, riskfree_rate_r: f64) -> Result<LeverageSolution> {
    let r = riskfree_rate_r;
    let (f_exact, clamped) = f_max_exact(ret, r)?;
    let mu = ret.mean();
    let sigma2 = ret.variance();
    let moments = RewardMoments::new(mu, sigma2, r);
    let (f_approx, f_simple) = if sigma2 > 0.0 {
        // Short-selling is disallowed, so the reported approximants clamp at zero.
        let (full, simple) = f_star_approx(mu, sigma2, r)?;
        (full.max(0.0), simple.max(0.0))
    } else {
        // Riskless distribution: the approximants degenerate to the boundary.
        (f_exact, f_exact)
    };
    let payoff = expected_log_payoff(f_exact, ret, r)?;
    Ok(LeverageSolution {
        f_exact,
        f_approx,
        f_simple,
        expected_log_payoff_at_exact: payoff,
        sharpe_s: moments.sharpe_s,
        clamped,
    })
}

/// Optimal sheet plus the leverage diagnostics and return moments behind it.
#[derive(Debug, Clone, PartialEq)]
pub struct OptimalAllocation {
    pub sheet: BalanceSheet,
    pub leverage: LeverageSolution,
    pub moments: RewardMoments,
}

/// Optimal allocation for an arbitrary return-rate distribution (success
/// probability already folded in). Used when facility prices differ.
pub fn optimal_sheet_for_return(
    mining_assets_m: f64,
    ret: &TwoPointReturn,
    riskfree_rate_r: f64,
) -> Result<OptimalAllocation> {
    let leverage = solve_leverage(ret, riskfree_rate_r)?;
    let sheet = make_balance_sheet(mining_assets_m, leverage.f_exact)?;
    let moments = RewardMoments::new(ret.mean(), ret.variance(), riskfree_rate_r);
    Ok(OptimalAllocation {
        sheet,
        leverage,
        moments,
    })
}

/// The unique payoff-maximizing balance sheet for a miner holding `m_i`
/// against a homogeneous world `m_minus_i` (prices normalized to 1).
///
/// Computes the return-rate moments, the exact optimal leverage, and the
/// sheet; an unprofitable configuration yields the zero sheet.
pub fn optimal_balance_sheet_for_m(
    m_i: f64,
    m_minus_i: f64,
    cost_rate_c: f64,
    env: &Environment,
) -> Result<OptimalAllocation> {
    if m_i < 0.0 {
        return Err(Error::InvalidParameter("m_i must be >= 0".into()));
    }
    if m_i == 0.0 {
        return Ok(OptimalAllocation {
            sheet: BalanceSheet::ZERO,
            leverage: LeverageSolution::ZERO,
            moments: RewardMoments::new(0.0, 0.0, env.riskfree_rate_r),
        });
    }
    let ret = TwoPointReturn::from_mining(m_i, m_minus_i, env.block_reward_b, cost_rate_c)?;
    optimal_sheet_for_return(m_i, &ret, env.riskfree_rate_r)
}

/// The fair-coin +23%/-20% betting game.
pub fn coinflip_return() -> TwoPointReturn {
    TwoPointReturn::new(0.23, -0.20, 0.5).expect("static distribution is valid")
}
