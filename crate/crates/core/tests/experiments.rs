use std::collections::HashSet;
use std::fs;

use itree::experiment::{
    best_consecutive_pair, concentration_report, read_csv, read_json, run_experiment, trial_seed, write_csv,
    write_json, write_outputs, ExperimentConfig, PRule, SolverSpec, TrialRecord,
};
use itree::solver::{greedy_tree_lower_bound, max_induced_tree, max_induced_tree_bruteforce};
use itree::{sample_gnp, Error, Seed};
use proptest::prelude::*;

fn config(n_values: Vec<usize>, p: f64, trials: usize, solver: SolverSpec, workers: usize) -> ExperimentConfig {
    ExperimentConfig {
        n_values,
        p_rule: PRule::Constant(p),
        trials,
        delta: 0.0,
        solver,
        master_seed: Seed::new(2024, 0),
        output_path: String::new(),
        workers: Some(workers),
        record_wall_time: false,
        include_lower_bounds: false,
    }
}

fn exact() -> SolverSpec {
    SolverSpec::Exact { budget: 100_000_000 }
}

#[test]
fn complete_graphs_measure_two() {
    let res = run_experiment(&config(vec![5], 1.0, 20, exact(), 2)).unwrap();
    assert!(res.records.iter().all(|r| r.size == 2 && r.optimal));
    let rep = &res.reports[0];
    assert_eq!(rep.histogram.len(), 1);
    let pair = rep.best_pair.unwrap();
    assert_eq!((pair.lo, pair.mass), (2, 1.0));
    assert!(rep.threshold.is_none());
}

#[test]
fn exact_mean_equals_bruteforce_mean() {
    let cfg = config(vec![14], 0.5, 500, exact(), 4);
    let res = run_experiment(&cfg).unwrap();
    let mut brute = 0usize;
    for i in 0..cfg.trials {
        let seed = trial_seed(cfg.master_seed, 0, cfg.trials, i);
        let g = sample_gnp(14, 0.5, seed).unwrap();
        brute += max_induced_tree_bruteforce(&g).unwrap().size;
    }
    let measured: usize = res.records.iter().map(|r| r.size).sum();
    assert_eq!(measured, brute);
    assert!(res.records.iter().all(|r| r.optimal));
}

#[test]
fn exports_identical_across_worker_counts() {
    let a_dir = tempfile::tempdir().unwrap();
    let b_dir = tempfile::tempdir().unwrap();
    let a = run_experiment(&config(vec![10, 12], 0.4, 40, exact(), 1)).unwrap();
    let b = run_experiment(&config(vec![10, 12], 0.4, 40, exact(), 6)).unwrap();
    let pa = write_outputs(a_dir.path(), &a).unwrap();
    let pb = write_outputs(b_dir.path(), &b).unwrap();
    for (x, y) in pa.iter().zip(&pb) {
        assert_eq!(fs::read(x).unwrap(), fs::read(y).unwrap(), "{}", x.display());
    }
    assert_eq!(a.reports.len(), 2);
}

#[test]
fn records_sorted_and_streams_distinct() {
    let res = run_experiment(&config(vec![12, 8], 0.5, 15, exact(), 3)).unwrap();
    let keys: Vec<(usize, u64)> = res.records.iter().map(|r| (r.n, r.seed_stream)).collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    let streams: HashSet<u64> = res.records.iter().map(|r| r.seed_stream).collect();
    assert_eq!(streams.len(), res.records.len());
}

#[test]
fn greedy_never_beats_exact() {
    let trials = 60;
    let ex = run_experiment(&config(vec![13], 0.3, trials, exact(), 2)).unwrap();
    let gr = run_experiment(&config(vec![13], 0.3, trials, SolverSpec::Greedy { restarts: 5 }, 2)).unwrap();
    for (e, g) in ex.records.iter().zip(&gr.records) {
        assert_eq!(e.seed_stream, g.seed_stream);
        assert!(g.size <= e.size);
        assert!(!g.optimal);
    }
    // Greedy records are lower bounds and stay out of the distribution.
    assert_eq!(gr.reports[0].used, 0);
    assert_eq!(gr.reports[0].lower_bound_only, trials);
}

#[test]
fn budget_exhaustion_downgrades_trials() {
    let res = run_experiment(&config(vec![30], 0.3, 10, SolverSpec::Exact { budget: 50 }, 2)).unwrap();
    assert_eq!(res.records.len(), 10);
    assert!(res.records.iter().all(|r| !r.optimal && r.nodes == 50));
    let cfg = ExperimentConfig {
        include_lower_bounds: true,
        ..config(vec![30], 0.3, 10, SolverSpec::Exact { budget: 50 }, 2)
    };
    assert_eq!(run_experiment(&cfg).unwrap().reports[0].used, 10);
}

#[test]
fn markov_coherence_and_upper_tail() {
    let res = run_experiment(&config(vec![12, 16], 0.45, 200, exact(), 4)).unwrap();
    for rep in &res.reports {
        assert!(rep.markov_ok, "n = {}", rep.n);
        assert!(rep.upper_tail_ok, "n = {}", rep.n);
        assert!(rep.best_pair.unwrap().mass > 0.0);
    }
}

#[test]
fn upper_tail_holds_where_expectation_is_tiny() {
    // Direct form of the Markov check on solver output.
    for i in 0..300u64 {
        let g = sample_gnp(15, 0.5, Seed::new(77, i)).unwrap();
        let size = max_induced_tree(&g, u64::MAX).size as u64;
        let le = itree::moments::log_expected_trees(15, 0.5, size).unwrap().ln_abs();
        assert!(le >= 1e-4f64.ln(), "size {size} with ln E = {le}");
    }
}

fn rec(n: usize, p: f64, stream: u64, size: usize) -> TrialRecord {
    TrialRecord {
        n,
        p,
        seed_stream: stream,
        size,
        optimal: true,
        nodes: 1,
        millis: 0,
    }
}

#[test]
fn report_edge_cases() {
    let same: Vec<_> = (0..5).map(|i| rec(10, 0.3, i, 4)).collect();
    let rep = concentration_report(&same, 0.0, false).unwrap();
    assert_eq!(rep.histogram.len(), 1);
    assert_eq!(rep.best_pair.unwrap().mass, 1.0);
    let mixed = vec![rec(10, 0.3, 0, 4), rec(11, 0.3, 1, 4)];
    assert!(matches!(concentration_report(&mixed, 0.0, false), Err(Error::MixedBatch(..))));
    assert!(concentration_report(&[], 0.0, false).is_err());
    let hist = [(3, 2), (4, 5), (5, 5), (6, 1)].into_iter().collect();
    let w = best_consecutive_pair(&hist).unwrap();
    assert_eq!((w.lo, w.hi), (4, 5));
    let tie = [(3, 4), (4, 1), (5, 4)].into_iter().collect();
    assert_eq!(best_consecutive_pair(&tie).unwrap().lo, 3);
}

#[test]
fn csv_shapes_and_round_trips() {
    let mut buf = Vec::new();
    write_csv(&[], &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf).unwrap(), "n,p,seed_stream,size,optimal,nodes,millis\n");
    let recs: Vec<_> = (0..3).map(|i| rec(9, 0.25, i, 3 + i as usize)).collect();
    let mut buf = Vec::new();
    write_csv(&recs, &mut buf).unwrap();
    assert_eq!(String::from_utf8(buf.clone()).unwrap().lines().count(), 4);
    assert_eq!(read_csv(&buf[..]).unwrap(), recs);
    let mut js = Vec::new();
    write_json(&recs, &[], &mut js).unwrap();
    assert_eq!(read_json(&js[..]).unwrap(), recs);
}

#[test]
fn config_parsing() {
    let text = r#"{"n_values": [10], "p_rule": {"power": 0.05}, "trials": 3,
        "solver": {"exact": {}}, "master_seed": 7}"#;
    let cfg = ExperimentConfig::from_json(text).unwrap();
    assert_eq!(cfg.master_seed, Seed::new(7, 0));
    assert_eq!(cfg.solver, SolverSpec::Exact { budget: 100_000_000 });
    let full = r#"{"n_values": [10], "p_rule": {"reciprocal_log": 1.0}, "trials": 3,
        "solver": {"greedy": {"restarts": 4}}, "master_seed": {"master": 7, "stream": 9}}"#;
    assert_eq!(ExperimentConfig::from_json(full).unwrap().master_seed, Seed::new(7, 9));
    for bad in [
        r#"{"n_values": [10], "p_rule": {"constant": 0.5}, "trials": 0, "solver": {"exact": {}}, "master_seed": 1}"#,
        r#"{"n_values": [], "p_rule": {"constant": 0.5}, "trials": 1, "solver": {"exact": {}}, "master_seed": 1}"#,
        r#"{"n_values": [10], "p_rule": {"constant": 0.0}, "trials": 1, "solver": {"exact": {}}, "master_seed": 1}"#,
        r#"{"n_values": [10], "p_rule": {"constant": 0.5}, "trials": 1, "solver": {"exact": {}}, "master_seed": 1, "extra": 1}"#,
        r#"{"n_values": [10], "p_rule": {"constant": 0.5}, "trials": 1, "solver": {"greedy": {"restarts": 0}}, "master_seed": 1}"#,
    ] {
        assert!(matches!(ExperimentConfig::from_json(bad), Err(Error::Config(_))), "{bad}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn trial_seeds_disjoint(master in any::<u64>(), stream in 0u64..1 << 40, trials in 1usize..50, count in 1usize..5) {
        let base = Seed::new(master, stream);
        let mut seen = HashSet::new();
        for idx in 0..count {
            for i in 0..trials {
                prop_assert!(seen.insert(trial_seed(base, idx, trials, i)));
            }
        }
    }

    #[test]
    fn greedy_below_exact_on_samples(n in 2usize..16, p in 0.05f64..0.95, s in any::<u64>()) {
        let g = sample_gnp(n, p, Seed::new(s, 0)).unwrap();
        let lb = greedy_tree_lower_bound(&g, 3, Seed::new(s, 1)).size;
        prop_assert!(lb <= max_induced_tree(&g, u64::MAX).size);
    }
}
