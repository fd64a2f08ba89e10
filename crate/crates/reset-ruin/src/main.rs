//! Command-line front end: thin argument handling around the library.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use reset_ruin::harness::{
    bisect::BisectionObjective,
    output::{write_series, Provenance},
    parse_grid, parse_pairs,
    sweeps::{profile_q_vs_z, sweep_c_vs_gamma, universality_cstar_vs_p},
    tables::{table1_report_with, table2_report, TABLE1_STANDARD_TOL},
};
use reset_ruin::{critical, montecarlo, renewal, Error, ResetSpec, WalkSpec};

#[derive(Parser)]
#[command(name = "reset-ruin", version, about = "Ruin probabilities under multi-site geometric resetting")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct WalkArgs {
    /// Domain size; the walk lives on 0..=a.
    #[arg(long)]
    a: usize,
    /// Up-step probability.
    #[arg(long)]
    p: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Solve the discounted system and report the coupling constant.
    Solve {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long)]
        gamma: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        /// Optional starting position; adds the ruin probability q_z.
        #[arg(long)]
        z: Option<usize>,
    },
    /// Construct the critical reset distribution on symmetric sites.
    Critical {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        /// Weight placed on the midpoint site, when one is present.
        #[arg(long, default_value_t = 0.0)]
        neutral_weight: f64,
    },
    /// Sweep the coupling constant over gamma for several pair weights.
    SweepGamma {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        /// Weights for the lower site; defaults to four off-critical values
        /// bracketing the critical one, plus the critical one itself.
        #[arg(long, value_delimiter = ',')]
        pi1: Option<Vec<f64>>,
        #[arg(long, default_value = "0.05:0.05:0.95")]
        gamma_grid: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Ruin probability profile across starting positions.
    Profile {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        /// Gamma values; 0 is evaluated at the documented proxy rate.
        #[arg(long, value_delimiter = ',', default_values_t = [0.0, 0.2, 0.4, 0.6, 0.8])]
        gammas: Vec<f64>,
        #[arg(long)]
        out: PathBuf,
    },
    /// Invariant value across bias for several symmetric pairs.
    Universality {
        #[arg(long, default_value_t = 10)]
        a: usize,
        #[arg(long, default_value = "0.1:0.05:0.9")]
        p_grid: String,
        #[arg(long, default_value = "1,9;2,8;3,7;4,6")]
        pairs: String,
        #[arg(long)]
        out: PathBuf,
    },
    /// Monte Carlo estimate of the coupling constant.
    Mc {
        #[command(flatten)]
        walk: WalkArgs,
        #[arg(long, default_value_t = 0.5)]
        gamma: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        sites: Vec<usize>,
        #[arg(long, value_delimiter = ',', required = true)]
        weights: Vec<f64>,
        /// Trajectories per reset site.
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Reference value used for the reported standard error.
        #[arg(long)]
        cstar_ref: Option<f64>,
    },
    /// Built-in verification tables; exit code 0 only if every row passes.
    Verify {
        #[command(subcommand)]
        table: VerifyCommand,
    },
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Closed-form table: critical weights and invariant values recovered
    /// by bisection.
    Table1 {
        #[arg(long, default_value_t = TABLE1_STANDARD_TOL)]
        tol: f64,
        /// Bisection objective: "span" or "derivative".
        #[arg(long, default_value = "span")]
        objective: String,
    },
    /// Monte Carlo table: coupling estimates within four sigma plus the
    /// aggregate chi-square.
    Table2 {
        #[arg(long, default_value_t = 1_000_000)]
        n: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Solve { walk, gamma, sites, weights, z } => {
            let walk = WalkSpec::new(walk.a, walk.p)?;
            let reset = ResetSpec::new(&walk, &sites, &weights)?;
            let sol = renewal::solve_discounted(&walk, gamma)?;
            let coupling = sol.coupling(&reset);
            let mut doc = json!({
                "u_bar": coupling.u_bar,
                "s_bar": coupling.s_bar,
                "C": coupling.c,
            });
            if let Some(z) = z {
                doc["q_z"] = json!(sol.ruin(&reset, z)?);
            }
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Critical { walk, sites, neutral_weight } => {
            let walk = WalkSpec::new(walk.a, walk.p)?;
            validate_sites(&walk, &sites)?;
            let family = critical::critical_family(&walk, &sites)?;
            let reset = family.materialize(neutral_weight)?;
            let pi_star: serde_json::Map<String, serde_json::Value> = reset
                .sites()
                .iter()
                .zip(reset.weights())
                .map(|(&z, &w)| (z.to_string(), json!(w)))
                .collect();
            let doc = json!({
                "pi_star": pi_star,
                "C_star": family.c_star(),
                "pairs": family.pairs(),
                "neutral_site": family.neutral_site(),
            });
            println!("{}", serde_json::to_string_pretty(&doc)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::SweepGamma { walk, sites, pi1, gamma_grid, out } => {
            let walk = WalkSpec::new(walk.a, walk.p)?;
            let grid = parse_grid(&gamma_grid)?;
            let pi1 = match pi1 {
                Some(list) => list,
                None => {
                    let family = critical::critical_family(&walk, &sites)?;
                    let critical_pi1 = family.materialize(0.0)?.weights()[0];
                    vec![0.10, 0.20, critical_pi1, 0.45, 0.65]
                }
            };
            let series = sweep_c_vs_gamma(&walk, &sites, &pi1, &grid)?;
            let paths = write_series(&out, &series, &Provenance::new())?;
            eprintln!("wrote {} files to {}", paths.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Profile { walk, sites, weights, gammas, out } => {
            let walk = WalkSpec::new(walk.a, walk.p)?;
            let reset = ResetSpec::new(&walk, &sites, &weights)?;
            let series = profile_q_vs_z(&walk, &reset, &gammas)?;
            let paths = write_series(&out, &series, &Provenance::new())?;
            eprintln!("wrote {} files to {}", paths.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Universality { a, p_grid, pairs, out } => {
            let grid = parse_grid(&p_grid)?;
            let pairs = parse_pairs(&pairs)?;
            let series = universality_cstar_vs_p(a, &grid, &pairs)?;
            let paths = write_series(&out, &series, &Provenance::new())?;
            eprintln!("wrote {} files to {}", paths.len(), out.display());
            Ok(ExitCode::SUCCESS)
        }
        Command::Mc { walk, gamma, sites, weights, n, seed, cstar_ref } => {
            let walk = WalkSpec::new(walk.a, walk.p)?;
            let reset = ResetSpec::new(&walk, &sites, &weights)?;
            let est = montecarlo::estimate(&walk, &reset, gamma, n, seed, cstar_ref)?;
            println!("{}", serde_json::to_string_pretty(&est)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { table } => run_verify(table),
    }
}

fn validate_sites(walk: &WalkSpec, sites: &[usize]) -> Result<(), Error> {
    let mut seen = std::collections::BTreeSet::new();
    for &z in sites {
        if z == 0 || z >= walk.a() {
            return Err(Error::Domain(format!("site {z} is not interior")));
        }
        if !seen.insert(z) {
            return Err(Error::Domain(format!("duplicate site {z}")));
        }
    }
    Ok(())
}

fn run_verify(table: VerifyCommand) -> Result<ExitCode, Error> {
    match table {
        VerifyCommand::Table1 { tol, objective } => {
            let objective = match objective.as_str() {
                "span" => BisectionObjective::GammaSpan,
                "derivative" => BisectionObjective::DerivativeAtHalf,
                other => {
                    return Err(Error::Domain(format!(
                        "objective `{other}` is neither `span` nor `derivative`"
                    )))
                }
            };
            let rows = table1_report_with(tol, objective)?;
            println!(
                "{:>3} {:>5} {:<12} {:>13} {:>13} {:>9} {:>13} {:>9}  status",
                "a", "p", "sites", "pi*_theory", "pi*_bisected", "|dpi|", "C*_theory", "|dC|"
            );
            for row in &rows {
                println!(
                    "{:>3} {:>5} {:<12} {:>13.10} {:>13} {:>9} {:>13.10} {:>9.2e}  {}{}",
                    row.a,
                    row.p,
                    format!("{:?}", row.sites),
                    row.pi_star_theory,
                    row.pi_star_bisected
                        .map(|v| format!("{v:.10}"))
                        .unwrap_or_else(|| "-".into()),
                    row.pi_abs_error
                        .map(|v| format!("{v:.2e}"))
                        .unwrap_or_else(|| "-".into()),
                    row.c_star_theory,
                    row.abs_error,
                    if row.pass { "pass" } else { "FAIL" },
                    if row.degenerate { " (degenerate)" } else { "" },
                );
            }
            let all_pass = rows.iter().all(|r| r.pass);
            println!();
            println!("{}", serde_json::to_string_pretty(&rows)?);
            Ok(exit_for(all_pass))
        }
        VerifyCommand::Table2 { n, seed } => {
            let report = table2_report(n, seed)?;
            println!(
                "{:>3} {:>5} {:<12} {:>5} {:>13} {:>13} {:>9} {:>9} {:>7}  status",
                "a", "p", "sites", "w0", "C*_theory", "C_hat", "|dev|", "sigma", "n_sigma"
            );
            for row in &report.rows {
                println!(
                    "{:>3} {:>5} {:<12} {:>5} {:>13.10} {:>13.10} {:>9.2e} {:>9.2e} {:>7.2}  {}",
                    row.a,
                    row.p,
                    format!("{:?}", row.sites),
                    row.neutral_weight,
                    row.c_star_theory,
                    row.c_hat,
                    row.abs_dev,
                    row.sigma,
                    row.n_sigma,
                    if row.pass { "pass" } else { "FAIL" },
                );
            }
            println!(
                "chi-square over {} rows: {:.3} (bound {:.2}) -> {}",
                report.rows.len(),
                report.chi_square,
                report.chi_square_bound,
                if report.pass { "pass" } else { "FAIL" }
            );
            println!();
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(exit_for(report.pass))
        }
    }
}

fn exit_for(pass: bool) -> ExitCode {
    if pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
