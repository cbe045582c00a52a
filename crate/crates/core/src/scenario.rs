//! Scenario ingestion: the JSON document format, strict-schema parsing with
//! field-path errors, validation, and difficulty derivation.
//!
//! A scenario file is a UTF-8 JSON document:
//!
//! ```json
//! {
//!   "environment": { "block_reward": 118750.0, "block_interval": 600.0, "riskfree_rate": 0.0 },
//!   "players": [
//!     { "id": "entrant", "facility_price": 1.0, "cost_rate": 2.87e-5, "strategy": "growth",
//!       "balance_sheet": { "equity": 477000.0, "liabilities": 2841000.0,
//!                          "mining_assets": 3318000.0, "riskfree_assets": 0.0 } }
//!   ],
//!   "exogenous_hash": 3.315e9,
//!   "horizon": 1200000.0,
//!   "seed": 7
//! }
//! ```
//!
//! Unknown keys anywhere in the document are rejected. An optional `pools`
//! section declares risk-sharing pools (by member id) or risk-free-reward
//! pools (by target success probability and offered cost rate).

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::types::{BalanceSheet, Environment, PlayerSpec, Strategy};

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ScenarioFile {
    environment: EnvironmentFile,
    players: Vec<PlayerFile>,
    #[serde(default)]
    exogenous_hash: f64,
    horizon: f64,
    seed: u64,
    #[serde(default)]
    pools: Vec<PoolSpec>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EnvironmentFile {
    block_reward: f64,
    block_interval: f64,
    riskfree_rate: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PlayerFile {
    id: String,
    facility_price: f64,
    cost_rate: f64,
    strategy: StrategyKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    balance_sheet: Option<SheetFile>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
enum StrategyKind {
    Static,
    Growth,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct SheetFile {
    equity: f64,
    liabilities: f64,
    mining_assets: f64,
    riskfree_assets: f64,
}

/// Pool declaration inside a scenario file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum PoolSpec {
    /// Members pool rewards proportionally to their mining assets.
    RiskSharing { id: String, members: Vec<String> },
    /// An operator rents hash at a fixed fee and bears the reward risk.
    RiskFree {
        id: String,
        target_p: f64,
        offered_cost_rate: f64,
    },
}

/// A fully validated scenario: environment (with derived difficulty),
/// players, exogenous hash, horizon, and the master seed.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub environment: Environment,
    pub players: Vec<PlayerSpec>,
    pub exogenous_hash_z: f64,
    pub horizon_t: f64,
    pub seed: u64,
    pub pools: Vec<PoolSpec>,
}

impl Scenario {
    pub fn new(
        environment: Environment,
        players: Vec<PlayerSpec>,
        exogenous_hash_z: f64,
        horizon_t: f64,
        seed: u64,
    ) -> Result<Self> {
        let mut scenario = Self {
            environment,
            players,
            exogenous_hash_z,
            horizon_t,
            seed,
            pools: Vec::new(),
        };
        scenario.validate()?;
        scenario.derive_difficulty();
        Ok(scenario)
    }

    fn validate(&self) -> Result<()> {
        if self.players.is_empty() {
            return Err(Error::InvalidParameter(
                "scenario needs at least one player".into(),
            ));
        }
        if !self.exogenous_hash_z.is_finite() || self.exogenous_hash_z < 0.0 {
            return Err(Error::InvalidParameter(
                "exogenous_hash must be finite and >= 0".into(),
            ));
        }
        if !self.horizon_t.is_finite() || self.horizon_t <= 0.0 {
            return Err(Error::InvalidParameter(
                "horizon must be finite and > 0".into(),
            ));
        }
        let mut seen = std::collections::HashSet::new();
        for player in &self.players {
            player.validate()?;
            if !seen.insert(player.id.as_str()) {
                return Err(Error::InvalidParameter(format!(
                    "duplicate player id {:?}",
                    player.id
                )));
            }
        }
        Ok(())
    }

    /// Total hash rate from initial sheets plus exogenous hash.
    pub fn total_hash(&self) -> f64 {
        let players: f64 = self
            .players
            .iter()
            .filter_map(|p| p.mining_assets().map(|m| m / p.facility_price_d))
            .sum();
        players + self.exogenous_hash_z
    }

    /// Sets `D = tau * total_hash` so the trigger intensity starts at `1/tau`.
    pub fn derive_difficulty(&mut self) {
        let hash = self.total_hash();
        if hash > 0.0 {
            self.environment.difficulty_d = Some(self.environment.block_interval_tau * hash);
        }
    }

    /// Parses and validates a scenario document, reporting the JSON field
    /// path on schema violations.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let file: ScenarioFile =
            serde_path_to_error::deserialize(de).map_err(|e| Error::Scenario {
                path: e.path().to_string(),
                message: e.inner().to_string(),
            })?;
        Scenario::try_from(file)
    }

    /// Serializes back to the document format.
    pub fn to_json(&self) -> String {
        let file = ScenarioFile::from(self);
        serde_json::to_string_pretty(&file).expect("scenario serialization cannot fail")
    }
}

impl TryFrom<ScenarioFile> for Scenario {
    type Error = Error;

    fn try_from(file: ScenarioFile) -> Result<Self> {
        let environment = Environment::new(
            file.environment.block_reward,
            file.environment.block_interval,
            file.environment.riskfree_rate,
        )?;
        let mut players = Vec::with_capacity(file.players.len());
        for p in file.players {
            let sheet = p.balance_sheet.map(|s| {
                BalanceSheet::new(s.equity, s.liabilities, s.mining_assets, s.riskfree_assets)
            });
            let strategy = match p.strategy {
                StrategyKind::Static => {
                    let sheet = sheet.ok_or_else(|| Error::Scenario {
                        path: format!("players.{}.balance_sheet", p.id),
                        message: "static players require a balance_sheet".into(),
                    })?;
                    Strategy::Static(sheet)
                }
                StrategyKind::Growth => Strategy::GrowthRate,
            };
            players.push(PlayerSpec {
                id: p.id,
                facility_price_d: p.facility_price,
                cost_rate_c: p.cost_rate,
                strategy,
                mining_assets: sheet.map(|s| s.mining_assets_m),
            });
        }
        let mut scenario = Scenario::new(
            environment,
            players,
            file.exogenous_hash,
            file.horizon,
            file.seed,
        )?;
        scenario.pools = file.pools;
        Ok(scenario)
    }
}

impl From<&Scenario> for ScenarioFile {
    fn from(s: &Scenario) -> Self {
        ScenarioFile {
            environment: EnvironmentFile {
                block_reward: s.environment.block_reward_b,
                block_interval: s.environment.block_interval_tau,
                riskfree_rate: s.environment.riskfree_rate_r,
            },
            players: s
                .players
                .iter()
                .map(|p| {
                    let (strategy, sheet) = match &p.strategy {
                        Strategy::Static(sheet) => (StrategyKind::Static, Some(*sheet)),
                        Strategy::GrowthRate => (
                            StrategyKind::Growth,
                            p.mining_assets.map(|m| BalanceSheet::new(0.0, 0.0, m, 0.0)),
                        ),
                    };
                    PlayerFile {
                        id: p.id.clone(),
                        facility_price: p.facility_price_d,
                        cost_rate: p.cost_rate_c,
                        strategy,
                        balance_sheet: sheet.map(|s| SheetFile {
                            equity: s.equity_e,
                            liabilities: s.liabilities_l,
                            mining_assets: s.mining_assets_m,
                            riskfree_assets: s.riskfree_assets_f,
                        }),
                    }
                })
                .collect(),
            exogenous_hash: s.exogenous_hash_z,
            horizon: s.horizon_t,
            seed: s.seed,
            pools: s.pools.clone(),
        }
    }
}
