//! Monte Carlo studies of the maximum induced tree size.

mod config;
mod export;
mod report;
mod run;

pub use config::{ExperimentConfig, PRule, SolverSpec, THEOREM_THETA_MAX};
pub use export::{
    read_csv, read_json, render_report, write_csv, write_json, write_outputs, ExportDoc, CSV_HEADER,
};
pub use report::{best_consecutive_pair, concentration_report, ConcentrationReport, MarkovLine, PairWindow};
pub use run::{run_experiment, trial_seed, ExperimentResult, TrialRecord, GREEDY_SEED_OFFSET};
