//! Command-line interface: scenario ingestion and the analysis commands.
//!
//! Exit codes: 0 success, 1 runtime failure (including a rejected
//! distributional check), 2 malformed scenario or arguments.

mod output;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use output::{fmt_float, Format, Table};
use powkelly::equilibrium::{
    equilibrium_closed_form, equilibrium_fixed_point, share_and_dominance, EquilibriumProblem,
};
use powkelly::kelly::solve_leverage;
use powkelly::pools::apply_pools;
use powkelly::presets::{bitcoin_example, coinflip_example};
use powkelly::sim::{run_nakamoto, sweep_f_vs_p, verify_poisson_revenue, SimOptions};
use powkelly::types::{make_balance_sheet, Strategy, TwoPointReturn};
use powkelly::{Error, Scenario};

#[derive(Parser)]
#[command(
    name = "powkelly",
    version,
    about = "Optimal allocation, equilibrium and simulation for proof-of-work mining"
)]
struct Cli {
    /// Scenario file (JSON).
    #[arg(long, global = true)]
    scenario: Option<PathBuf>,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Override the scenario seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Number of Monte Carlo trajectories.
    #[arg(long, global = true, default_value_t = 1000)]
    trajectories: usize,
    /// Sweep grid resolution (number of steps over (0, 1)).
    #[arg(long, global = true, default_value_t = 1000)]
    grid: usize,
    /// Recompute the difficulty from the hash profile every stage.
    #[arg(long, global = true)]
    retarget_difficulty: bool,
    /// Tolerance for the equilibrium fixed-point cross-check.
    #[arg(long, global = true, default_value_t = 1e-12)]
    tolerance: f64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal leverage and balance sheet per growth player.
    Optimize,
    /// Hash-rate equilibrium among the growth players.
    Equilibrium,
    /// Monte Carlo simulation of the repeated game.
    Simulate,
    /// Optimal leverage and payoff against a grid of target success probabilities.
    Sweep,
    /// Check simulated revenue against the Poisson reward model (KS test).
    VerifyPoisson,
    /// Print a built-in worked example.
    Example {
        #[arg(value_enum)]
        which: ExampleKind,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum ExampleKind {
    Bitcoin,
    Coinflip,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            match err {
                Error::Scenario { .. }
                | Error::InvalidParameter(_)
                | Error::InvalidBalanceSheet(_) => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
    }
}

fn load_scenario(cli: &Cli) -> Result<Scenario, Error> {
    let path = cli.scenario.as_ref().ok_or_else(|| {
        Error::InvalidParameter("--scenario PATH is required for this command".into())
    })?;
    let text = std::fs::read_to_string(path).map_err(|e| Error::Scenario {
        path: path.display().to_string(),
        message: e.to_string(),
    })?;
    let mut scenario = Scenario::from_json(&text)?;
    scenario = apply_pools(&scenario)?;
    if let Some(seed) = cli.seed {
        scenario.seed = seed;
    }
    Ok(scenario)
}

fn emit(cli: &Cli, table: &Table) -> Result<(), Error> {
    let write_to = |out: &mut dyn Write| table.write(cli.format, out);
    let result = match &cli.out {
        Some(path) => {
            let mut file = std::fs::File::create(path).map_err(|e| Error::Scenario {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            write_to(&mut file)
        }
        None => write_to(&mut std::io::stdout().lock()),
    };
    match result {
        // A closed pipe downstream is not our error.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| Error::InvalidParameter(format!("write failed: {e}"))),
    }
}

fn run(cli: &Cli) -> Result<ExitCode, Error> {
    match &cli.command {
        Command::Optimize => cmd_optimize(cli),
        Command::Equilibrium => cmd_equilibrium(cli),
        Command::Simulate => cmd_simulate(cli),
        Command::Sweep => cmd_sweep(cli),
        Command::VerifyPoisson => cmd_verify_poisson(cli),
        Command::Example { which } => cmd_example(*which),
    }
}

fn cmd_optimize(cli: &Cli) -> Result<ExitCode, Error> {
    let scenario = load_scenario(cli)?;
    let total_hash = scenario.total_hash();
    let mut table = Table::new(vec![
        "player_id",
        "f_exact",
        "f_approx",
        "E",
        "L",
        "M",
        "F",
        "sharpe",
        "log_payoff",
    ]);
    for player in &scenario.players {
        if !matches!(player.strategy, Strategy::GrowthRate) {
            continue;
        }
        let m = player.mining_assets().ok_or_else(|| {
            Error::InvalidParameter(format!(
                "growth player {} has no balance_sheet.mining_assets",
                player.id
            ))
        })?;
        let own_hash = m / player.facility_price_d;
        let p = own_hash / total_hash;
        let cost = player.cost_rate_c / player.facility_price_d;
        let ret = TwoPointReturn::new(scenario.environment.block_reward_b / m - cost, -cost, p)?;
        let solution = solve_leverage(&ret, scenario.environment.riskfree_rate_r)?;
        let sheet = make_balance_sheet(m, solution.f_exact)?;
        table.push(vec![
            player.id.clone(),
            fmt_float(solution.f_exact),
            fmt_float(solution.f_approx),
            fmt_float(sheet.equity_e),
            fmt_float(sheet.liabilities_l),
            fmt_float(sheet.mining_assets_m),
            fmt_float(sheet.riskfree_assets_f),
            fmt_float(solution.sharpe_s),
            fmt_float(solution.expected_log_payoff_at_exact),
        ]);
    }
    emit(cli, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_equilibrium(cli: &Cli) -> Result<ExitCode, Error> {
    let scenario = load_scenario(cli)?;
    let env = scenario.environment;
    let mut ids = Vec::new();
    let mut costs = Vec::new();
    let mut z = scenario.exogenous_hash_z;
    for player in &scenario.players {
        match &player.strategy {
            Strategy::GrowthRate => {
                ids.push(player.id.clone());
                // In hash units the riskfree opportunity scales with the
                // facility price: Y' = B / (c + r d).
                let effective_cost =
                    player.cost_rate_c + env.riskfree_rate_r * (player.facility_price_d - 1.0);
                costs.push(effective_cost);
            }
            Strategy::Static(sheet) => {
                z += sheet.mining_assets_m / player.facility_price_d;
            }
        }
    }
    if ids.is_empty() {
        let table = Table::new(vec![
            "player_id",
            "M_hat",
            "share",
            "in_support",
            "dominant",
        ]);
        emit(cli, &table)?;
        return Ok(ExitCode::SUCCESS);
    }
    let problem = EquilibriumProblem::new(costs, z, env)?;
    let result = equilibrium_closed_form(&problem)?;
    // Independent cross-check against the fixed-point oracle.
    let fixed = equilibrium_fixed_point(&problem, cli.tolerance, 1_000_000)?;
    for (a, b) in result.holdings_mhat.iter().zip(&fixed.holdings_mhat) {
        let scale = a.abs().max(1.0);
        if (a - b).abs() > 10.0 * cli.tolerance.max(1e-12) * scale {
            return Err(Error::InvalidParameter(format!(
                "solver disagreement: closed form {a} vs fixed point {b}"
            )));
        }
    }
    let shares = share_and_dominance(&result, &problem.growth_costs, &env)?;
    let mut table = Table::new(vec![
        "player_id",
        "M_hat",
        "share",
        "in_support",
        "dominant",
    ]);
    for (i, id) in ids.iter().enumerate() {
        table.push(vec![
            id.clone(),
            fmt_float(result.holdings_mhat[i]),
            fmt_float(shares[i].share),
            result.support.contains(&i).to_string(),
            shares[i].dominant.to_string(),
        ]);
    }
    emit(cli, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_simulate(cli: &Cli) -> Result<ExitCode, Error> {
    let scenario = load_scenario(cli)?;
    let options = SimOptions {
        record_trajectories: false,
        retarget_difficulty: cli.retarget_difficulty,
    };
    let output = run_nakamoto(&scenario, cli.trajectories, &options)?;
    // The wealth column reports the first growth player, or player 0.
    let focal = scenario
        .players
        .iter()
        .position(|p| matches!(p.strategy, Strategy::GrowthRate))
        .unwrap_or(0);
    let mut table = Table::new(vec!["trajectory", "stages", "final_log_wealth"]);
    for (i, trajectory) in output.trajectories.iter().enumerate() {
        table.push(vec![
            i.to_string(),
            trajectory.stage_count.to_string(),
            fmt_float(trajectory.cumulative_log_payoff[focal]),
        ]);
    }
    emit(cli, &table)?;
    Ok(ExitCode::SUCCESS)
}

fn cmd_sweep(cli: &Cli) -> Result<ExitCode, Error> {
    let scenario = load_scenario(cli)?;
    if cli.grid < 2 {
        return Err(Error::InvalidParameter("--grid must be at least 2".into()));
    }
    let step = 1.0 / cli.grid as f64;
    let grid: Vec<f64> = (1..cli.grid).map(|k| k as f64 * step).collect();
    let sweep = sweep_f_vs_p(&scenario, &grid)?;
    let mut table = Table::new(vec!["p", "f", "log_payoff"]);
    for point in &sweep.points {
        table.push(vec![
            fmt_float(point.p),
            fmt_float(point.f),
            fmt_float(point.log_payoff),
        ]);
    }
    emit(cli, &table)?;
    if let Some(p) = sweep.zero_crossing_p {
        eprintln!("zero crossing at p = {p}");
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_verify_poisson(cli: &Cli) -> Result<ExitCode, Error> {
    let scenario = load_scenario(cli)?;
    let check = verify_poisson_revenue(&scenario, cli.trajectories, 0, 0.01)?;
    println!(
        "KS statistic = {}, critical (alpha = 0.01) = {}, expected blocks = {}",
        fmt_float(check.ks.statistic),
        fmt_float(check.ks.critical),
        fmt_float(check.nu)
    );
    if check.ks.reject {
        eprintln!("reward distribution check REJECTED");
        return Ok(ExitCode::from(1));
    }
    println!("reward distribution check passed");
    Ok(ExitCode::SUCCESS)
}

fn cmd_example(which: ExampleKind) -> Result<ExitCode, Error> {
    match which {
        ExampleKind::Bitcoin => {
            let ex = bitcoin_example()?;
            println!("Bitcoin mining entry at 0.1% of the world hash rate");
            println!(
                "  block reward              : {} USD",
                ex.environment.block_reward_b
            );
            println!(
                "  world mining assets       : {:.4e} USD",
                ex.world_mining_assets
            );
            println!(
                "  entrant mining assets     : {:.4e} USD",
                ex.entrant_mining_assets
            );
            println!(
                "  break-even cost per TH    : {:.4e} USD per interval",
                ex.break_even_cost_per_hash
            );
            println!(
                "  assumed cost per TH (80%) : {:.4e} USD per interval",
                ex.cost_per_hash
            );
            println!("  win return rate   u       : {:.4e}", ex.return_dist.up_u);
            println!(
                "  loss return rate  d       : {:.4e}",
                ex.return_dist.down_d
            );
            println!();
            println!("quoted route (quadratic optimum):");
            println!("  f*                        : {:.4}", ex.solution.f_simple);
            println!(
                "  equity / liabilities      : {:.4e} / {:.4e} USD",
                ex.approx_sheet.equity_e, ex.approx_sheet.liabilities_l
            );
            println!(
                "  log payoff per interval   : {:.4e}",
                ex.quadratic_log_payoff
            );
            println!(
                "  annualized simple return  : {:.1}% ({} intervals per year)",
                100.0 * ex.annualized_return_quadratic,
                ex.intervals_per_year
            );
            println!();
            println!("exact recomputation from unrounded inputs:");
            println!("  f_exact                   : {:.4}", ex.solution.f_exact);
            println!(
                "  equity / liabilities      : {:.4e} / {:.4e} USD",
                ex.exact_sheet.equity_e, ex.exact_sheet.liabilities_l
            );
            println!("  log payoff per interval   : {:.4e}", ex.exact_log_payoff);
            println!(
                "  annualized simple return  : {:.1}%",
                100.0 * ex.annualized_return_exact
            );
        }
        ExampleKind::Coinflip => {
            let ex = coinflip_example()?;
            println!("Coin flip: +23% / -20% at even odds");
            println!("  optimal bet fraction f*   : {:.5}", ex.solution.f_exact);
            println!("  log growth per flip at f* : {:.5}", ex.payoff_at_optimum);
            println!("  log growth betting all-in : {:.5}", ex.all_in_payoff);
            println!(
                "  quadratic approximants    : {:.5} / {:.5}",
                ex.solution.f_approx, ex.solution.f_simple
            );
        }
    }
    Ok(ExitCode::SUCCESS)
}
