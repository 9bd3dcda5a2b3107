use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::config::{ExperimentConfig, SolverSpec};
use super::report::{concentration_report, ConcentrationReport};
use crate::error::{Error, Result};
use crate::sample::sample_gnp;
use crate::seed::Seed;
use crate::solver::{greedy_tree_lower_bound, max_induced_tree};

/// Added to the master seed for the greedy solver's own RNG, so that its
/// draws never coincide with the graph sampler's.
pub const GREEDY_SEED_OFFSET: u64 = 0x9E37_79B9_7F4A_7C15;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TrialRecord {
    pub n: usize,
    pub p: f64,
    pub seed_stream: u64,
    pub size: usize,
    pub optimal: bool,
    pub nodes: u64,
    pub millis: u64,
}

impl TrialRecord {
    /// The size is only a lower bound on the optimum.
    pub fn lower_bound_only(&self) -> bool {
        !self.optimal
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ExperimentResult {
    pub records: Vec<TrialRecord>,
    pub reports: Vec<ConcentrationReport>,
}

/// Seed of trial `i` for the `index`-th entry of `n_values`. Streams are
/// distinct for distinct `(index, i)`.
pub fn trial_seed(master: Seed, index: usize, trials: usize, i: usize) -> Seed {
    master.with_stream(master.stream.wrapping_add((index * trials + i) as u64))
}

fn run_trial(cfg: &ExperimentConfig, n: usize, p: f64, seed: Seed) -> Result<TrialRecord> {
    let start = Instant::now();
    let g = sample_gnp(n, p, seed)?;
    let r = match cfg.solver {
        SolverSpec::Exact { budget } => max_induced_tree(&g, budget),
        SolverSpec::Greedy { restarts } => {
            let gs = Seed::new(seed.master.wrapping_add(GREEDY_SEED_OFFSET), seed.stream);
            greedy_tree_lower_bound(&g, restarts, gs)
        }
    };
    let millis = if cfg.record_wall_time {
        start.elapsed().as_millis() as u64
    } else {
        0
    };
    Ok(TrialRecord {
        n,
        p,
        seed_stream: seed.stream,
        size: r.size,
        optimal: r.optimal,
        nodes: r.nodes_explored,
        millis,
    })
}

/// Runs every trial, in parallel over trials, and summarizes each `n`.
/// Output does not depend on the number of workers.
pub fn run_experiment(cfg: &ExperimentConfig) -> Result<ExperimentResult> {
    cfg.validate()?;
    let jobs: Vec<(usize, f64, Seed)> = cfg
        .n_values
        .iter()
        .enumerate()
        .flat_map(|(idx, &n)| {
            let p = cfg.p_rule.p(n);
            (0..cfg.trials).map(move |i| (n, p, trial_seed(cfg.master_seed, idx, cfg.trials, i)))
        })
        .collect();
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(w) = cfg.workers {
        builder = builder.num_threads(w);
    }
    let pool = builder
        .build()
        .map_err(|e| Error::Config(format!("thread pool: {e}")))?;
    let mut records = pool.install(|| {
        jobs.par_iter()
            .map(|&(n, p, seed)| run_trial(cfg, n, p, seed))
            .collect::<Result<Vec<_>>>()
    })?;
    records.sort_by(|a, b| {
        a.n.cmp(&b.n)
            .then(a.p.total_cmp(&b.p))
            .then(a.seed_stream.cmp(&b.seed_stream))
    });
    let mut reports = Vec::new();
    let mut start = 0;
    while start < records.len() {
        let (n, p) = (records[start].n, records[start].p);
        let end = start + records[start..].iter().take_while(|r| r.n == n && r.p == p).count();
        reports.push(concentration_report(&records[start..end], cfg.delta, cfg.include_lower_bounds)?);
        start = end;
    }
    Ok(ExperimentResult { records, reports })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::experiment::PRule;

    fn cfg(workers: usize) -> ExperimentConfig {
        ExperimentConfig {
            n_values: vec![8, 10],
            p_rule: PRule::Constant(0.5),
            trials: 6,
            delta: 0.0,
            solver: SolverSpec::Exact { budget: 1_000_000 },
            master_seed: Seed::new(3, 0),
            output_path: String::new(),
            workers: Some(workers),
            record_wall_time: false,
            include_lower_bounds: false,
        }
    }

    #[test]
    fn worker_count_irrelevant() {
        let a = run_experiment(&cfg(1)).unwrap();
        let b = run_experiment(&cfg(4)).unwrap();
        assert_eq!(a.records, b.records);
        assert_eq!(a.records.len(), 12);
        assert_eq!(a.reports.len(), 2);
    }

    #[test]
    fn streams_distinct() {
        let recs = run_experiment(&cfg(2)).unwrap().records;
        let mut s: Vec<u64> = recs.iter().map(|r| r.seed_stream).collect();
        s.sort();
        s.dedup();
        assert_eq!(s.len(), recs.len());
    }

    #[test]
    fn complete_graphs() {
        let mut c = cfg(2);
        c.n_values = vec![5];
        c.p_rule = PRule::Constant(1.0);
        let res = run_experiment(&c).unwrap();
        assert!(res.records.iter().all(|r| r.size == 2 && r.optimal));
    }
}
