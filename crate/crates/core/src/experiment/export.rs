use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::report::ConcentrationReport;
use super::run::{ExperimentResult, TrialRecord};
use crate::error::Result;

pub const CSV_HEADER: [&str; 7] = ["n", "p", "seed_stream", "size", "optimal", "nodes", "millis"];

/// CSV with a header row, one line per record.
pub fn write_csv<W: Write>(records: &[TrialRecord], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.n.to_string(),
            r.p.to_string(),
            r.seed_stream.to_string(),
            r.size.to_string(),
            r.optimal.to_string(),
            r.nodes.to_string(),
            r.millis.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn read_csv<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<std::result::Result<Vec<TrialRecord>, _>>()?)
}

#[derive(Serialize)]
pub struct ExportDoc<'a> {
    pub records: &'a [TrialRecord],
    pub summary: &'a [ConcentrationReport],
}

pub fn write_json<W: Write>(records: &[TrialRecord], summary: &[ConcentrationReport], mut out: W) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, &ExportDoc { records, summary })?;
    out.write_all(b"\n")?;
    Ok(())
}

/// Reads back the records of a JSON export; the summary is ignored.
pub fn read_json<R: Read>(input: R) -> Result<Vec<TrialRecord>> {
    #[derive(Deserialize)]
    struct Doc {
        records: Vec<TrialRecord>,
    }
    let doc: Doc = serde_json::from_reader(input)?;
    Ok(doc.records)
}

/// Plain-text rendering of one report.
pub fn render_report(r: &ConcentrationReport) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "n = {}, p = {}", r.n, r.p);
    let _ = writeln!(
        s,
        "trials {}, in distribution {}, lower bound only {}",
        r.trials, r.used, r.lower_bound_only
    );
    let _ = writeln!(s, "size  count  fraction");
    for (size, count) in &r.histogram {
        let _ = writeln!(s, "{size:>4}  {count:>5}  {:.4}", *count as f64 / r.used.max(1) as f64);
    }
    if let Some(w) = r.best_pair {
        let _ = writeln!(s, "best consecutive pair {{{}, {}}}: mass {:.4}", w.lo, w.hi, w.mass);
    }
    match (r.threshold, r.window_fraction) {
        (Some(t), Some(f)) => {
            let _ = writeln!(
                s,
                "g = {} (raw {:.6}, delta {}{}): fraction in {{g, g+1}} {:.4}",
                t.value,
                t.raw,
                r.delta,
                if t.near_tie { ", NEAR TIE" } else { "" },
                f
            );
        }
        _ => {
            let _ = writeln!(s, "g: not applicable");
        }
    }
    if let Some((lo, hi)) = r.best_fit_delta {
        let _ = writeln!(s, "delta placing {{g, g+1}} on the best pair: [{lo:.4}, {hi:.4})");
    }
    match r.k_hat {
        Some(k) => {
            let _ = writeln!(s, "k_hat = {k:.6}");
        }
        None => {
            let _ = writeln!(s, "k_hat: not applicable");
        }
    }
    if !r.markov.is_empty() {
        let _ = writeln!(s, "   k  ln E X_k      E X_k  freq    tail");
        for m in &r.markov {
            let _ = writeln!(
                s,
                "{:>4}  {:>8.3}  {:>9.3e}  {:.4}  {:.4}",
                m.k, m.log_expectation, m.expectation, m.frequency, m.tail
            );
        }
        let _ = writeln!(s, "markov coherence: {}", if r.markov_ok { "ok" } else { "VIOLATED" });
        let _ = writeln!(s, "upper tail: {}", if r.upper_tail_ok { "ok" } else { "VIOLATED" });
    }
    s
}

/// Writes `records.csv`, `results.json` and `report.txt` into `dir`.
pub fn write_outputs(dir: &Path, result: &ExperimentResult) -> Result<Vec<PathBuf>> {
    fs::create_dir_all(dir)?;
    let csv_path = dir.join("records.csv");
    let json_path = dir.join("results.json");
    let txt_path = dir.join("report.txt");
    write_csv(&result.records, fs::File::create(&csv_path)?)?;
    write_json(&result.records, &result.reports, fs::File::create(&json_path)?)?;
    let text: Vec<String> = result.reports.iter().map(render_report).collect();
    fs::write(&txt_path, text.join("\n"))?;
    Ok(vec![csv_path, json_path, txt_path])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn recs(m: usize) -> Vec<TrialRecord> {
        (0..m)
            .map(|i| TrialRecord {
                n: 10,
                p: 0.3,
                seed_stream: i as u64,
                size: 4 + i,
                optimal: i % 2 == 0,
                nodes: 17 * i as u64,
                millis: 0,
            })
            .collect()
    }

    #[test]
    fn csv_shapes() {
        let mut buf = Vec::new();
        write_csv(&[], &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), "n,p,seed_stream,size,optimal,nodes,millis\n");
        let mut buf = Vec::new();
        write_csv(&recs(3), &mut buf).unwrap();
        let text = String::from_utf8(buf.clone()).unwrap();
        assert_eq!(text.lines().count(), 4);
        assert_eq!(text.lines().nth(1).unwrap(), "10,0.3,0,4,true,0,0");
        assert_eq!(read_csv(buf.as_slice()).unwrap(), recs(3));
    }

    #[test]
    fn json_round_trip() {
        let mut buf = Vec::new();
        write_json(&recs(3), &[], &mut buf).unwrap();
        assert_eq!(read_json(buf.as_slice()).unwrap(), recs(3));
    }
}
