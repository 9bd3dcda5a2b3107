use std::fs;
use std::io::{self, BufReader, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use itree::experiment::{run_experiment, write_outputs, ExperimentConfig};
use itree::moments::{default_w, moment_profile, solve_k_hat, variance_ratio_bound};
use itree::oracle::{count_overlap_pairs, forest_table, phi_bound, rooted_forest_check, validate_overlap_bounds};
use itree::solver::{greedy_tree_lower_bound, max_induced_tree, DEFAULT_BUDGET};
use itree::{sample_gnp, Error, Graph, Seed};

#[derive(Parser)]
#[command(name = "itree", version, about = "Maximum induced trees in G(n, p)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Sample G(n, p) and print it in the edge-list text format.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 0)]
        stream: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Maximum induced tree of a graph file.
    Solve {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
        /// Use the randomized greedy lower bound instead.
        #[arg(long)]
        greedy: bool,
        #[arg(long, default_value_t = 100)]
        restarts: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Exhaustive counting oracles.
    #[command(subcommand)]
    Oracle(OracleCmd),
    /// Log-domain moment computations.
    #[command(subcommand)]
    Moments(MomentsCmd),
    /// Monte Carlo studies.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
}

#[derive(Subcommand)]
enum OracleCmd {
    /// Overlap counts N(k, l, r).
    Overlap {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        l: usize,
    },
    /// Forest counts φ(l, r) and rooted-forest counts.
    Forests {
        #[arg(long)]
        l: usize,
    },
    /// Check the overlap bounds for all 2 <= l <= k <= kmax.
    Validate {
        #[arg(long, default_value_t = 6)]
        kmax: usize,
        #[arg(long, value_delimiter = ',', default_values_t = vec![0.1, 0.3, 0.5])]
        p: Vec<f64>,
    },
}

#[derive(Args)]
struct NP {
    #[arg(long)]
    n: f64,
    #[arg(long)]
    p: f64,
}

#[derive(Subcommand)]
enum MomentsCmd {
    /// k*, k̂, g(n) and partition points.
    Profile {
        #[command(flatten)]
        np: NP,
        #[arg(long, default_value_t = 0.0)]
        delta: f64,
    },
    /// Per-l summands of the variance bound, as CSV, then a JSON summary.
    Varbound {
        #[command(flatten)]
        np: NP,
        #[arg(long, default_value_t = 0.25)]
        w_exponent: f64,
        /// Tree size; defaults to floor(k̂ - 1 + delta).
        #[arg(long)]
        k: Option<u64>,
        #[arg(long, default_value_t = 0.5)]
        delta: f64,
        /// Write the CSV here instead of stdout.
        #[arg(long)]
        csv_out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum ExperimentCmd {
    Run {
        #[arg(long)]
        config: PathBuf,
        #[arg(long)]
        workers: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Config(_) | Error::Json(_) => 2,
                Error::Io(_) | Error::Csv(_) => 3,
                _ => 1,
            })
        }
    }
}

fn print_json(v: &serde_json::Value) -> itree::Result<()> {
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, v)?;
    writeln!(out)?;
    Ok(())
}

fn run(cmd: Command) -> itree::Result<()> {
    match cmd {
        Command::Sample {
            n,
            p,
            seed,
            stream,
            out,
        } => {
            let g = sample_gnp(n, p, Seed::new(seed, stream))?;
            match out {
                Some(path) => g.write_text(io::BufWriter::new(fs::File::create(path)?))?,
                None => g.write_text(io::stdout().lock())?,
            }
        }
        Command::Solve {
            input,
            budget,
            greedy,
            restarts,
            seed,
        } => {
            let g = Graph::read_text(BufReader::new(fs::File::open(input)?))?;
            let r = if greedy {
                greedy_tree_lower_bound(&g, restarts, Seed::new(seed, 0))
            } else {
                max_induced_tree(&g, budget)
            };
            print_json(&json!({
                "size": r.size,
                "witness": r.witness.to_vec(),
                "optimal": r.optimal,
                "nodes": r.nodes_explored,
            }))?;
        }
        Command::Oracle(OracleCmd::Overlap { k, l }) => {
            let t = count_overlap_pairs(k, l)?;
            println!("k = {k}, l = {l}");
            println!("{:>3}  {:>12}  {:>12}", "r", "all pairs", "agreeing");
            for r in 0..l {
                println!("{r:>3}  {:>12}  {:>12}", t.counts[r], t.agreeing[r]);
            }
            print_json(&serde_json::to_value(&t)?)?;
        }
        Command::Oracle(OracleCmd::Forests { l }) => {
            let t = forest_table(l)?;
            println!("l = {l}, forests = {}", t.total());
            println!("{:>3}  {:>10}  {:>14}", "r", "phi", "phi bound");
            for (r, &v) in t.by_edges.iter().enumerate() {
                println!("{r:>3}  {v:>10}  {:>14}", phi_bound(l, r));
            }
            let rows = rooted_forest_check(l)?;
            let minus = rows.iter().all(|r| u128::from(r.enumerated) == r.minus_one);
            let plus = rows.iter().all(|r| u128::from(r.enumerated) == r.plus_one);
            println!("{:>3}  {:>12}  {:>16}  {:>16}", "m", "rooted", "C(l,m)m l^(l-m-1)", "C(l,m)m l^(l-m+1)");
            for r in &rows {
                println!("{:>3}  {:>12}  {:>16}  {:>16}", r.m, r.enumerated, r.minus_one, r.plus_one);
            }
            println!(
                "rooted forests match exponent l-m-1: {minus}; exponent l-m+1: {plus}"
            );
            print_json(&json!({
                "l": l,
                "phi": t.by_edges,
                "rooted": rows.iter().map(|r| json!({
                    "m": r.m, "enumerated": r.enumerated,
                    "minus_one": r.minus_one.to_string(), "plus_one": r.plus_one.to_string(),
                })).collect::<Vec<_>>(),
                "exponent_minus_one_matches": minus,
                "exponent_plus_one_matches": plus,
            }))?;
        }
        Command::Oracle(OracleCmd::Validate { kmax, p }) => {
            let mut reports = Vec::new();
            let mut violations = 0;
            for k in 2..=kmax {
                for l in 2..=k {
                    let rep = validate_overlap_bounds(k, l, &p)?;
                    println!("k = {k}, l = {l}");
                    println!(
                        "{:>3}  {:>9}  {:>9}  {:>12}  {:>12}  {:>12}  {:>4}  {:>6}",
                        "r", "N", "N_all", "bound1", "bound2", "bound3", "ok", "ok_all"
                    );
                    for row in &rep.rows {
                        let fmt = |b: Option<f64>| b.map_or("-".to_string(), |x| format!("{x:.6}"));
                        println!(
                            "{:>3}  {:>9}  {:>9}  {:>12}  {:>12}  {:>12}  {:>4}  {:>6}",
                            row.r, row.n, row.n_all, row.bound1, fmt(row.bound2), fmt(row.bound3), row.ok, row.ok_all
                        );
                    }
                    let applicable: Vec<_> = rep.product.iter().filter(|c| c.applicable).collect();
                    println!(
                        "product bound: {} applicable checks, {} violated",
                        applicable.len(),
                        applicable.iter().filter(|c| !c.ok).count()
                    );
                    violations += rep.violations();
                    reports.push(rep);
                }
            }
            println!("total violations: {violations}");
            print_json(&serde_json::to_value(&reports)?)?;
        }
        Command::Moments(MomentsCmd::Profile { np, delta }) => {
            let prof = moment_profile(np.n, np.p, delta)?;
            print_json(&serde_json::to_value(&prof)?)?;
        }
        Command::Moments(MomentsCmd::Varbound {
            np,
            w_exponent,
            k,
            delta,
            csv_out,
        }) => {
            if np.n.fract() != 0.0 || np.n < 2.0 {
                return Err(itree::error::Error::Domain(format!("n must be an integer >= 2, got {}", np.n)));
            }
            let k = match k {
                Some(k) => k,
                None => (solve_k_hat(np.n, np.p)?.k_hat - 1.0 + delta).floor() as u64,
            };
            let w = if w_exponent == 0.25 {
                default_w(np.n)
            } else {
                np.n.ln().powf(w_exponent)
            };
            let b = variance_ratio_bound(np.n as u64, np.p, k, w)?;
            let sink: Box<dyn Write> = match &csv_out {
                Some(path) => Box::new(io::BufWriter::new(fs::File::create(path)?)),
                None => Box::new(io::stdout().lock()),
            };
            let mut wtr = csv::Writer::from_writer(sink);
            wtr.write_record(["part", "ell", "log_summand"])?;
            for row in &b.rows {
                wtr.write_record([row.part.to_string(), row.ell.to_string(), row.log_summand.to_string()])?;
            }
            wtr.flush()?;
            drop(wtr);
            print_json(&json!({
                "n": b.n,
                "p": b.p,
                "k": b.k,
                "w": w,
                "regime": b.regime,
                "points": b.points,
                "part_sums": b.part_sums,
                "total": b.log_total,
            }))?;
        }
        Command::Experiment(ExperimentCmd::Run {
            config,
            workers,
            out,
        }) => {
            let text = fs::read_to_string(&config)
                .map_err(|e| Error::Config(format!("{}: {e}", config.display())))?;
            let mut cfg = ExperimentConfig::from_json(&text)?;
            if workers.is_some() {
                cfg.workers = workers;
            }
            let result = run_experiment(&cfg)?;
            for path in write_outputs(&out, &result)? {
                println!("{}", path.display());
            }
        }
    }
    Ok(())
}
