//! Sweeps over products of elementary automorphisms with an append-only
//! JSON-lines ledger.
//!
//! Ledger line, schema `fermicode.sweep/1`:
//!
//! ```text
//! {"schema":"fermicode.sweep/1","label":"A4*A7","factors":[4,7],
//!  "stats":{"wt_min":5,"wt_max":6,"occupation":6,"stabilizer":10},
//!  "estimated_d":5,"max_weight":6,
//!  "result":{"kind":"exact","d":4,"witness":{...}},"nodes":383,"runtime_ms":0}
//! ```
//!
//! `stats` are stabilizer-reduced weights. Every product passing the raw
//! weight filter gets a line; `max_weight`, `result` and `nodes` are null
//! when its distance was not confirmed. A rerun with the
//! same ledger skips every factor list already recorded.

use std::collections::{BTreeMap, BTreeSet};
use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;
use std::time::Instant;

use fermicode_core::codes::{raw_weight_stats, WeightStats};
use fermicode_core::distance::DistanceResult;
use fermicode_core::search::{confirm_one, enumerate_products, Candidate};
use fermicode_core::SearchLimits;
use serde::{Deserialize, Serialize};

use crate::doc::CliError;

pub const LEDGER_SCHEMA: &str = "fermicode.sweep/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LedgerLine {
    pub schema: String,
    pub label: String,
    pub factors: Vec<u8>,
    pub stats: WeightStats,
    pub estimated_d: usize,
    pub max_weight: Option<usize>,
    pub result: Option<DistanceResult>,
    pub nodes: Option<u64>,
    pub runtime_ms: u64,
}

#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_len: usize,
    pub target_d: usize,
    pub confirm: bool,
    pub node_budget: Option<u64>,
    pub threads: usize,
    pub ledger: Option<PathBuf>,
}

/// Distance found for one named product in the reference table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceCheck {
    pub label: String,
    pub expected_d: usize,
    /// Present when the sweep reached this product (it may be recorded
    /// under a different but equal-matrix factor list).
    pub found: Option<LedgerLine>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepSummary {
    pub schema: String,
    pub max_len: usize,
    pub target_d: usize,
    pub distinct_products: usize,
    pub passed_raw_filter: usize,
    pub passed_filter: usize,
    pub resumed: usize,
    /// Confirmed exact distance to the labels achieving it.
    pub exact_by_distance: BTreeMap<usize, Vec<String>>,
    /// Labels whose search stopped at the node budget.
    pub budget_exhausted: Vec<String>,
    pub reference: Vec<ReferenceCheck>,
}

/// Products named in the reference table with their distances.
pub const REFERENCE: [(&[u8], usize); 7] = [
    (&[1], 3),
    (&[4, 7], 4),
    (&[2, 7, 1], 4),
    (&[9, 3, 7, 14], 5),
    (&[1, 5, 14, 1], 6),
    (&[4, 9, 16, 11], 6),
    (&[1, 11, 5, 14, 9], 7),
];

pub fn read_ledger(path: &PathBuf) -> Result<Vec<LedgerLine>, CliError> {
    let Ok(file) = std::fs::File::open(path) else {
        return Ok(Vec::new());
    };
    let mut lines = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let parsed: LedgerLine = serde_json::from_str(&line)
            .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), n + 1)))?;
        if parsed.schema != LEDGER_SCHEMA {
            return Err(CliError::Usage(format!("{}:{}: unknown schema {}", path.display(), n + 1, parsed.schema)));
        }
        lines.push(parsed);
    }
    Ok(lines)
}

fn evaluate(c: Candidate, cfg: &SweepConfig) -> LedgerLine {
    let start = Instant::now();
    let c = c.reduced();
    let (max_weight, result, nodes, c) = if cfg.confirm && c.estimated_d >= cfg.target_d {
        let limits = SearchLimits { max_nodes: cfg.node_budget, ..SearchLimits::default() };
        let conf = confirm_one(c, limits);
        (Some(conf.max_weight), Some(conf.result), Some(conf.nodes), conf.candidate)
    } else {
        (None, None, None, c)
    };
    LedgerLine {
        schema: LEDGER_SCHEMA.into(),
        label: c.label(),
        factors: c.factors,
        stats: c.stats,
        estimated_d: c.estimated_d,
        max_weight,
        result,
        nodes,
        runtime_ms: start.elapsed().as_millis() as u64,
    }
}

/// Enumerates, filters, optionally confirms, and appends new results to
/// the ledger. Returns every ledger line (old and new) that passed the
/// filter, plus a summary.
pub fn run_sweep(cfg: &SweepConfig) -> Result<(Vec<LedgerLine>, SweepSummary), CliError> {
    let previous = match &cfg.ledger {
        Some(p) => read_ledger(p)?,
        None => Vec::new(),
    };
    let done: BTreeSet<Vec<u8>> = previous.iter().map(|l| l.factors.clone()).collect();

    let mut distinct = 0;
    let mut raw_pass = Vec::new();
    for c in enumerate_products(cfg.max_len)? {
        distinct += 1;
        // reduction never raises a weight, so the raw minimum bounds the reduced one
        if raw_weight_stats(&c.map).wt_min >= cfg.target_d {
            raw_pass.push(c);
        }
    }
    let passed_raw_filter = raw_pass.len();
    let todo: Vec<Candidate> = raw_pass.into_iter().filter(|c| !done.contains(&c.factors)).collect();
    let resumed = passed_raw_filter - todo.len();

    let mut writer = match &cfg.ledger {
        Some(p) => Some(OpenOptions::new().create(true).append(true).open(p)?),
        None => None,
    };
    let mut fresh = Vec::new();
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<LedgerLine>();
    let threads = cfg.threads.max(1);
    thread::scope(|s| -> Result<(), CliError> {
        for _ in 0..threads {
            let tx = tx.clone();
            let (todo, next) = (&todo, &next);
            s.spawn(move || loop {
                let k = next.fetch_add(1, Ordering::SeqCst);
                let Some(c) = todo.get(k) else { break };
                let line = evaluate(c.clone(), cfg);
                if tx.send(line).is_err() {
                    break;
                }
            });
        }
        drop(tx);
        // single consumer: the ledger sees whole lines only
        for line in rx {
            if let Some(w) = writer.as_mut() {
                writeln!(w, "{}", serde_json::to_string(&line)?)?;
                w.flush()?;
            }
            fresh.push(line);
        }
        Ok(())
    })?;

    let mut all: Vec<LedgerLine> = previous.into_iter().chain(fresh).filter(|l| l.estimated_d >= cfg.target_d).collect();
    all.sort_by(|a, b| (a.factors.len(), &a.factors).cmp(&(b.factors.len(), &b.factors)));
    let summary = summarize(cfg, distinct, passed_raw_filter, resumed, &all);
    Ok((all, summary))
}

fn summarize(cfg: &SweepConfig, distinct: usize, passed_raw_filter: usize, resumed: usize, all: &[LedgerLine]) -> SweepSummary {
    let mut exact_by_distance: BTreeMap<usize, Vec<String>> = BTreeMap::new();
    let mut budget_exhausted = Vec::new();
    for l in all {
        match &l.result {
            Some(DistanceResult::Exact { d, .. }) => exact_by_distance.entry(*d).or_default().push(l.label.clone()),
            Some(DistanceResult::LowerBound { budget_exhausted: true, .. }) => budget_exhausted.push(l.label.clone()),
            _ => {}
        }
    }
    let by_matrix: BTreeMap<_, _> = all
        .iter()
        .map(|l| (fermicode_core::SymplecticMap::product_of(&l.factors).expect("valid factors"), l))
        .collect();
    let reference = REFERENCE
        .iter()
        .filter(|(f, _)| f.len() <= cfg.max_len)
        .map(|(f, d)| {
            let m = fermicode_core::SymplecticMap::product_of(f).expect("valid factors");
            ReferenceCheck {
                label: Candidate::from_factors(f).expect("valid factors").label(),
                expected_d: *d,
                found: by_matrix.get(&m).map(|l| (*l).clone()),
            }
        })
        .collect();
    SweepSummary {
        schema: "fermicode.sweep-summary/1".into(),
        max_len: cfg.max_len,
        target_d: cfg.target_d,
        distinct_products: distinct,
        passed_raw_filter,
        passed_filter: all.len(),
        resumed,
        exact_by_distance,
        budget_exhausted,
        reference,
    }
}
