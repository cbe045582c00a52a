//! Reproducible worked examples: the February-2020 Bitcoin mining entry
//! analysis and the +23%/-20% coin-flip game. Used by the CLI presets and
//! the acceptance suite.

use crate::error::Result;
use crate::kelly::{
    coinflip_return, expected_log_payoff, g_infinity, solve_leverage, LeverageSolution,
};
use crate::scenario::Scenario;
use crate::types::{
    make_balance_sheet, BalanceSheet, Environment, PlayerSpec, Strategy, TwoPointReturn,
};

/// World hash rate, TH/s.
pub const BTC_WORLD_HASH_TH: f64 = 1.1e8;
/// Coin price in USD.
pub const BTC_PRICE_USD: f64 = 9_500.0;
/// Block reward in coins.
pub const BTC_BLOCK_REWARD_COINS: f64 = 12.5;
/// Average block interval, seconds.
pub const BTC_BLOCK_INTERVAL_S: f64 = 600.0;
/// Device price in USD, and its hash rate in TH/s.
pub const BTC_DEVICE_PRICE_USD: f64 = 2_200.0;
pub const BTC_DEVICE_HASH_TH: f64 = 73.0;
/// The entrant targets mining one block in a thousand.
pub const BTC_TARGET_P: f64 = 0.001;
/// Running cost assumed at 80% of the break-even level.
pub const BTC_COST_FRACTION: f64 = 0.8;

/// The Bitcoin entry analysis: an entrant sized for a 0.1% success
/// probability against the incumbent world, at 80% of break-even cost.
///
/// `solution.f_simple` and `quadratic_log_payoff` follow the quadratic
/// (Sharpe) route; `solution.f_exact` and `exact_log_payoff` are the exact
/// recomputation from unrounded inputs. The exact leverage is authoritative
/// for the sheet; the approximant sheet is reported for comparison.
#[derive(Debug, Clone)]
pub struct BitcoinExample {
    pub environment: Environment,
    pub facility_price: f64,
    /// Incumbent world mining assets, USD.
    pub world_mining_assets: f64,
    /// Entrant mining assets, USD.
    pub entrant_mining_assets: f64,
    /// Break-even running cost per TH per interval, USD.
    pub break_even_cost_per_hash: f64,
    /// Assumed running cost per TH per interval, USD.
    pub cost_per_hash: f64,
    pub return_dist: TwoPointReturn,
    pub solution: LeverageSolution,
    /// `S^2/2 + r - r^2/2` at the approximant leverage.
    pub quadratic_log_payoff: f64,
    /// Exact expected log payoff at the exact optimal leverage.
    pub exact_log_payoff: f64,
    pub approx_sheet: BalanceSheet,
    pub exact_sheet: BalanceSheet,
    pub intervals_per_year: f64,
    pub annualized_return_quadratic: f64,
    pub annualized_return_exact: f64,
}

/// Builds the worked Bitcoin example from unrounded inputs.
pub fn bitcoin_example() -> Result<BitcoinExample> {
    let block_reward = BTC_PRICE_USD * BTC_BLOCK_REWARD_COINS;
    let environment = Environment::new(block_reward, BTC_BLOCK_INTERVAL_S, 0.0)?;
    let facility_price = BTC_DEVICE_PRICE_USD / BTC_DEVICE_HASH_TH;
    let world_mining_assets = BTC_WORLD_HASH_TH * facility_price;
    let entrant_mining_assets = BTC_TARGET_P / (1.0 - BTC_TARGET_P) * world_mining_assets;
    let break_even_cost_per_hash = block_reward / BTC_WORLD_HASH_TH;
    let cost_per_hash = BTC_COST_FRACTION * break_even_cost_per_hash;
    let cost_per_currency = cost_per_hash / facility_price;

    let return_dist = TwoPointReturn::new(
        block_reward / entrant_mining_assets - cost_per_currency,
        -cost_per_currency,
        BTC_TARGET_P,
    )?;
    let solution = solve_leverage(&return_dist, 0.0)?;
    let mu = return_dist.mean();
    let sigma2 = return_dist.variance();
    let quadratic_log_payoff = g_infinity(solution.f_simple, mu, sigma2, 0.0);
    let exact_log_payoff = expected_log_payoff(solution.f_exact, &return_dist, 0.0)?;
    let approx_sheet = make_balance_sheet(entrant_mining_assets, solution.f_simple)?;
    let exact_sheet = make_balance_sheet(entrant_mining_assets, solution.f_exact)?;
    let intervals_per_year = environment.intervals_per_year();
    Ok(BitcoinExample {
        environment,
        facility_price,
        world_mining_assets,
        entrant_mining_assets,
        break_even_cost_per_hash,
        cost_per_hash,
        return_dist,
        solution,
        quadratic_log_payoff,
        exact_log_payoff,
        approx_sheet,
        exact_sheet,
        intervals_per_year,
        annualized_return_quadratic: (quadratic_log_payoff * intervals_per_year).exp() - 1.0,
        annualized_return_exact: (exact_log_payoff * intervals_per_year).exp() - 1.0,
    })
}

/// The Bitcoin example as a simulation scenario: the growth-rate entrant
/// against the static incumbent world, over `n_blocks` expected stages.
pub fn bitcoin_scenario(n_blocks: f64, seed: u64) -> Result<Scenario> {
    let example = bitcoin_example()?;
    let world = example.world_mining_assets;
    let players = vec![
        PlayerSpec {
            id: "entrant".into(),
            facility_price_d: example.facility_price,
            cost_rate_c: example.cost_per_hash,
            strategy: Strategy::GrowthRate,
            mining_assets: Some(example.entrant_mining_assets),
        },
        PlayerSpec {
            id: "world".into(),
            facility_price_d: example.facility_price,
            cost_rate_c: example.cost_per_hash,
            strategy: Strategy::Static(BalanceSheet::new(world, 0.0, world, 0.0)),
            mining_assets: Some(world),
        },
    ];
    Scenario::new(
        example.environment,
        players,
        0.0,
        n_blocks * BTC_BLOCK_INTERVAL_S,
        seed,
    )
}

/// The +23%/-20% fair-coin betting game and its optimal bet fraction.
#[derive(Debug, Clone)]
pub struct CoinflipExample {
    pub return_dist: TwoPointReturn,
    pub solution: LeverageSolution,
    /// Expected log growth per round at the optimal fraction.
    pub payoff_at_optimum: f64,
    /// Expected log growth per round betting everything.
    pub all_in_payoff: f64,
}

pub fn coinflip_example() -> Result<CoinflipExample> {
    let return_dist = coinflip_return();
    let solution = solve_leverage(&return_dist, 0.0)?;
    Ok(CoinflipExample {
        payoff_at_optimum: solution.expected_log_payoff_at_exact,
        all_in_payoff: expected_log_payoff(1.0, &return_dist, 0.0)?,
        return_dist,
        solution,
    })
}
