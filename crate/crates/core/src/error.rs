use thiserror::Error;

/// Errors produced by the analytic and simulation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("balance sheet invariant violated: {0}")]
    InvalidBalanceSheet(crate::types::SheetViolation),

    #[error("degenerate state: total hash rate is zero, no winner can be drawn")]
    DegenerateState,

    #[error("return moments undefined: player {0} holds no mining assets")]
    UndefinedMoments(usize),

    #[error("break-even hash rate is infinite (cost rate is zero)")]
    InfiniteBreakEven,

    #[error("moment generating function overflow at u = {u}; use the log-domain variant")]
    MgfOverflow { u: f64 },

    #[error("leverage {f} infeasible: {branch} branch log argument {arg} <= 0")]
    InfeasibleLeverage {
        f: f64,
        branch: &'static str,
        arg: f64,
    },

    #[error(
        "singular configuration: winning return rate equals the riskfree rate (M_i (c + r) = B)"
    )]
    SingularConfiguration,

    #[error("riskless return distribution: variance is zero, leverage optimum undefined")]
    DegenerateRiskless,

    #[error("optimal leverage unbounded: both outcomes weakly beat the riskfree rate")]
    UnboundedLeverage,

    #[error(
        "fixed-point iteration did not converge after {iterations} iterations \
         (last max relative change {last_change:e}); last iterate {last:?}"
    )]
    NoConvergence {
        iterations: usize,
        last_change: f64,
        last: Vec<f64>,
    },

    #[error("empty pool: at least one member is required")]
    EmptyPool,

    #[error("scenario error at {path}: {message}")]
    Scenario { path: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
