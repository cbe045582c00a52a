//! Domain types shared by every other module: the mining environment,
//! balance sheets with their accounting invariants, player specifications,
//! two-point return distributions, and result containers.
//!
//! All types here are immutable values; every operation is pure.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Relative tolerance for the accounting identity `E + L = M + F`.
pub const ACCOUNTING_TOLERANCE: f64 = 1e-12;

/// Mining environment: block reward, expected block interval, riskfree rate
/// per interval, and the difficulty parameter.
///
/// Difficulty is derived from the hash profile of a scenario at load time
/// (`D = tau * total_hash`) so that the trigger intensity starts at `1/tau`;
/// it is optional until a simulation needs it.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Environment {
    /// Reward paid to the winner of one block, in currency units.
    pub block_reward_b: f64,
    /// Average time between block arrivals, in seconds.
    pub block_interval_tau: f64,
    /// Riskfree return per block interval (dimensionless).
    pub riskfree_rate_r: f64,
    /// Difficulty, in hash-time units. `None` until derived or set.
    pub difficulty_d: Option<f64>,
}

impl Environment {
    pub fn new(block_reward_b: f64, block_interval_tau: f64, riskfree_rate_r: f64) -> Result<Self> {
        for (name, v) in [
            ("block_reward", block_reward_b),
            ("block_interval", block_interval_tau),
            ("riskfree_rate", riskfree_rate_r),
        ] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if block_reward_b <= 0.0 {
            return Err(Error::InvalidParameter("block_reward must be > 0".into()));
        }
        if block_interval_tau <= 0.0 {
            return Err(Error::InvalidParameter("block_interval must be > 0".into()));
        }
        if riskfree_rate_r < 0.0 {
            return Err(Error::InvalidParameter("riskfree_rate must be >= 0".into()));
        }
        Ok(Self {
            block_reward_b,
            block_interval_tau,
            riskfree_rate_r,
            difficulty_d: None,
        })
    }

    pub fn with_difficulty(mut self, difficulty: f64) -> Result<Self> {
        if !difficulty.is_finite() || difficulty <= 0.0 {
            return Err(Error::InvalidParameter(
                "difficulty must be finite and > 0".into(),
            ));
        }
        self.difficulty_d = Some(difficulty);
        Ok(self)
    }

    /// Difficulty, or an error if it has not been derived yet.
    pub fn difficulty(&self) -> Result<f64> {
        self.difficulty_d
            .ok_or_else(|| Error::InvalidParameter("difficulty has not been derived".into()))
    }

    /// Converts an annualized rate to the per-interval rate by linear scaling
    /// (`r_tau = r_annual * tau / year`, year = 365.25 days).
    pub fn per_interval_rate(r_annual: f64, tau_seconds: f64) -> f64 {
        r_annual * tau_seconds / (365.25 * 86_400.0)
    }

    /// Number of block intervals in a 365.25-day year (52596 for tau = 600 s).
    pub fn intervals_per_year(&self) -> f64 {
        365.25 * 86_400.0 / self.block_interval_tau
    }
}

/// A miner's balance sheet: Equity, Liabilities, Mining Assets, Riskfree
/// Assets, all in currency units.
///
/// Valid sheets satisfy `E + L = M + F` and hold no riskfree assets while
/// carrying debt (`L = 0` whenever `F != 0`).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BalanceSheet {
    pub equity_e: f64,
    pub liabilities_l: f64,
    pub mining_assets_m: f64,
    pub riskfree_assets_f: f64,
}

/// Names the first balance-sheet invariant a sheet violates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SheetViolation {
    NegativeField(&'static str),
    NonFiniteField(&'static str),
    AccountingIdentity,
    Complementarity,
}

impl std::fmt::Display for SheetViolation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            SheetViolation::NegativeField(name) => write!(f, "negative field: {name}"),
            SheetViolation::NonFiniteField(name) => write!(f, "non-finite field: {name}"),
            SheetViolation::AccountingIdentity => {
                write!(f, "accounting identity (E + L = M + F)")
            }
            SheetViolation::Complementarity => {
                write!(f, "complementarity (L != 0 and F != 0)")
            }
        }
    }
}

impl BalanceSheet {
    pub const ZERO: BalanceSheet = BalanceSheet {
        equity_e: 0.0,
        liabilities_l: 0.0,
        mining_assets_m: 0.0,
        riskfree_assets_f: 0.0,
    };

    pub fn new(
        equity_e: f64,
        liabilities_l: f64,
        mining_assets_m: f64,
        riskfree_assets_f: f64,
    ) -> Self {
        Self {
            equity_e,
            liabilities_l,
            mining_assets_m,
            riskfree_assets_f,
        }
    }

    /// Checks every invariant, returning the first violation by name.
    pub fn validate(&self) -> std::result::Result<(), SheetViolation> {
        let fields = [
            ("equity", self.equity_e),
            ("liabilities", self.liabilities_l),
            ("mining_assets", self.mining_assets_m),
            ("riskfree_assets", self.riskfree_assets_f),
        ];
        for (name, v) in fields {
            if !v.is_finite() {
                return Err(SheetViolation::NonFiniteField(name));
            }
            if v < 0.0 {
                return Err(SheetViolation::NegativeField(name));
            }
        }
        let lhs = self.equity_e + self.liabilities_l;
        let rhs = self.mining_assets_m + self.riskfree_assets_f;
        let scale = lhs.max(rhs).max(1.0);
        if (lhs - rhs).abs() > ACCOUNTING_TOLERANCE * scale {
            return Err(SheetViolation::AccountingIdentity);
        }
        if self.liabilities_l != 0.0 && self.riskfree_assets_f != 0.0 {
            return Err(SheetViolation::Complementarity);
        }
        Ok(())
    }

    /// Leverage ratio `f = M / E`; infinite for a levered sheet with zero equity.
    pub fn leverage(&self) -> f64 {
        if self.mining_assets_m == 0.0 {
            0.0
        } else {
            self.mining_assets_m / self.equity_e
        }
    }

    /// Scales every component by `factor`, preserving all invariants.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            equity_e: self.equity_e * factor,
            liabilities_l: self.liabilities_l * factor,
            mining_assets_m: self.mining_assets_m * factor,
            riskfree_assets_f: self.riskfree_assets_f * factor,
        }
    }
}

/// Builds the balance sheet holding `mining_assets_m` at leverage `f = M/E`.
///
/// `f > 1` finances the excess with liabilities, `0 < f <= 1` parks the
/// remaining equity in riskfree assets, and `f <= 0` (unprofitable mining)
/// maps to the zero sheet.
pub fn make_balance_sheet(mining_assets_m: f64, leverage_f: f64) -> Result<BalanceSheet> {
    if !mining_assets_m.is_finite() {
        return Err(Error::NonFinite("mining_assets"));
    }
    if !leverage_f.is_finite() {
        return Err(Error::NonFinite("leverage"));
    }
    if mining_assets_m < 0.0 {
        return Err(Error::InvalidParameter("mining_assets must be >= 0".into()));
    }
    if leverage_f <= 0.0 || mining_assets_m == 0.0 {
        return Ok(BalanceSheet::ZERO);
    }
    let equity = mining_assets_m / leverage_f;
    let sheet = if leverage_f > 1.0 {
        BalanceSheet::new(equity, mining_assets_m - equity, mining_assets_m, 0.0)
    } else {
        BalanceSheet::new(equity, 0.0, mining_assets_m, equity - mining_assets_m)
    };
    Ok(sheet)
}

/// How a player chooses its balance sheet each stage.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Strategy {
    /// Always plays the same fixed sheet.
    Static(BalanceSheet),
    /// Re-optimizes the financing of its mining assets every stage.
    GrowthRate,
}

/// A player: identity, facility price, running cost, and strategy kind.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PlayerSpec {
    pub id: String,
    /// Price of the facility producing one unit of hash rate, in currency.
    pub facility_price_d: f64,
    /// Running cost per unit hash rate per block interval, in currency.
    pub cost_rate_c: f64,
    pub strategy: Strategy,
    /// Mining scale for growth-rate players (their machines); taken from the
    /// scenario balance sheet when present.
    pub mining_assets: Option<f64>,
}

impl PlayerSpec {
    pub fn validate(&self) -> Result<()> {
        if !self.facility_price_d.is_finite() || self.facility_price_d <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "player {}: facility_price must be finite and > 0",
                self.id
            )));
        }
        if !self.cost_rate_c.is_finite() || self.cost_rate_c < 0.0 {
            return Err(Error::InvalidParameter(format!(
                "player {}: cost_rate must be finite and >= 0",
                self.id
            )));
        }
        if let Strategy::Static(sheet) = &self.strategy {
            sheet.validate().map_err(Error::InvalidBalanceSheet)?;
        }
        Ok(())
    }

    /// Mining assets the player brings to the game.
    pub fn mining_assets(&self) -> Option<f64> {
        match &self.strategy {
            Strategy::Static(sheet) => Some(sheet.mining_assets_m),
            Strategy::GrowthRate => self.mining_assets,
        }
    }
}

/// Two-point return distribution of a per-stage return rate: `up_u` with
/// probability `prob_p`, `down_d` otherwise.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPointReturn {
    pub up_u: f64,
    pub down_d: f64,
    pub prob_p: f64,
}

impl TwoPointReturn {
    pub fn new(up_u: f64, down_d: f64, prob_p: f64) -> Result<Self> {
        for (name, v) in [("up", up_u), ("down", down_d), ("prob", prob_p)] {
            if !v.is_finite() {
                return Err(Error::NonFinite(name));
            }
        }
        if !(0.0..=1.0).contains(&prob_p) {
            return Err(Error::InvalidParameter("prob must lie in [0, 1]".into()));
        }
        if up_u <= down_d {
            return Err(Error::InvalidParameter("up must exceed down".into()));
        }
        if down_d <= -1.0 {
            return Err(Error::InvalidParameter("down must exceed -1".into()));
        }
        Ok(Self {
            up_u,
            down_d,
            prob_p,
        })
    }

    /// Return-rate distribution of a miner holding `m_i` against a world
    /// holding `m_minus_i`: win `B/M_i - c` with the hash-share probability,
    /// lose `-c` otherwise.
    pub fn from_mining(
        m_i: f64,
        m_minus_i: f64,
        block_reward_b: f64,
        cost_rate_c: f64,
    ) -> Result<Self> {
        if m_i <= 0.0 || m_minus_i < 0.0 || block_reward_b <= 0.0 {
            return Err(Error::InvalidParameter(
                "mining return requires m_i > 0, m_minus_i >= 0, block_reward > 0".into(),
            ));
        }
        Self::new(
            block_reward_b / m_i - cost_rate_c,
            -cost_rate_c,
            m_i / (m_i + m_minus_i),
        )
    }

    /// Mean of the distribution.
    pub fn mean(&self) -> f64 {
        self.prob_p * self.up_u + (1.0 - self.prob_p) * self.down_d
    }

    /// Variance of the distribution: `p (1-p) (u - d)^2`.
    pub fn variance(&self) -> f64 {
        let spread = self.up_u - self.down_d;
        self.prob_p * (1.0 - self.prob_p) * spread * spread
    }
}

/// First two moments of a per-stage return rate, plus its Sharpe ratio
/// against the riskfree rate the moments were computed under.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RewardMoments {
    pub mean_mu: f64,
    pub variance_sigma2: f64,
    pub sharpe_s: f64,
}

impl RewardMoments {
    /// Builds the triple; a zero-variance return gets a signed-infinite
    /// Sharpe ratio (zero when the mean equals the riskfree rate).
    pub fn new(mean_mu: f64, variance_sigma2: f64, riskfree_rate_r: f64) -> Self {
        let excess = mean_mu - riskfree_rate_r;
        let sharpe_s = if variance_sigma2 > 0.0 {
            excess / variance_sigma2.sqrt()
        } else if excess == 0.0 {
            0.0
        } else {
            excess.signum() * f64::INFINITY
        };
        Self {
            mean_mu,
            variance_sigma2,
            sharpe_s,
        }
    }
}

/// Hash-rate equilibrium among growth-rate miners: per-player holdings, the
/// world hash rate, shares, the support set, and per-stage payoffs.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EquilibriumResult {
    /// Equilibrium mining assets per growth player (zero off support).
    pub holdings_mhat: Vec<f64>,
    /// World hash rate: growth holdings plus exogenous hash.
    pub world_hash_hhat: f64,
    /// Fraction of the world hash rate per growth player.
    pub shares: Vec<f64>,
    /// Fraction held by the exogenous (static) hash.
    pub exogenous_share: f64,
    /// Indices of growth players with positive holdings.
    pub support: Vec<usize>,
    /// Expected per-stage log payoff per growth player (quadratic
    /// approximation `S^2/2 + r - r^2/2`; `r - r^2/2` off support).
    pub payoff_per_stage: Vec<f64>,
}
