//! The `fermicode` command line.
//!
//! Structured output is JSON on stdout, or in the file named by `--out`.
//! Exit codes: 0 when every check passes, 1 on a mismatch, 2 on a usage
//! error.

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use fermicode_core::codes::DEFAULT_REDUCTION_RADIUS;
use fermicode_core::torus::{default_size, TorusCode};
use fermicode_core::{in_stabilizer_group, is_logical, syndrome, CodeFamily, PauliVec};

use crate::doc::*;
use crate::parallel::{parallel_distance, ParallelLimits};
use crate::render;
use crate::sweep::{run_sweep, SweepConfig};
use crate::tables::{table1, table2, Tier};

#[derive(Parser, Debug)]
#[command(name = "fermicode", version, about = "Fermion-to-qubit codes from Laurent-polynomial symplectic automorphisms")]
pub struct Cli {
    /// Write the main output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads for searches (default: available parallelism).
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum TierArg {
    Fast,
    Long,
}

impl From<TierArg> for Tier {
    fn from(t: TierArg) -> Tier {
        match t {
            TierArg::Fast => Tier::Fast,
            TierArg::Long => Tier::Long,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum DiagramFormat {
    Ascii,
    Svg,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ExportFormat {
    Json,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the three block identities of a symplectic automorphism.
    Verify {
        /// Product such as `A4*A7`, or a JSON matrix file.
        expr: String,
    },
    /// Multiply expressions left to right and print the matrix.
    Compose {
        #[arg(required = true)]
        exprs: Vec<String>,
        /// Matrix file (or expression) the product must equal.
        #[arg(long)]
        expect: Option<String>,
    },
    /// Apply an automorphism to `U1`, `U2`, `W`, `G`, `W+G` or a vector literal.
    Apply {
        #[arg(long)]
        auto: String,
        operand: String,
    },
    /// Weights of the nine hopping and flux terms and of the stabilizer.
    Weights {
        #[arg(long)]
        auto: String,
        #[arg(long, default_value_t = DEFAULT_REDUCTION_RADIUS)]
        radius: u32,
    },
    /// Code distance by syndrome matching.
    Distance {
        #[arg(long)]
        auto: String,
        #[arg(long, default_value_t = 8)]
        max_weight: usize,
        #[arg(long)]
        node_cap: Option<u64>,
        /// Wall-clock limit in seconds.
        #[arg(long)]
        time_limit: Option<f64>,
        /// Exit 1 unless the exact distance equals this.
        #[arg(long)]
        expect: Option<usize>,
    },
    /// Enumerate products of elementaries, filter by weight, confirm distances.
    Search {
        #[arg(long, default_value_t = 5)]
        max_len: usize,
        #[arg(long, default_value_t = 5)]
        target_d: usize,
        #[arg(long)]
        confirm: bool,
        /// Node cap per candidate distance search.
        #[arg(long)]
        budget_nodes: Option<u64>,
        /// JSON-lines ledger; existing lines are reused.
        #[arg(long)]
        ledger: Option<PathBuf>,
    },
    /// Violated vertices of an error; names refer to the transformed operators.
    Syndrome {
        #[arg(long)]
        auto: String,
        error: String,
    },
    /// Exhaustive decoding check on a torus.
    DecodeCheck {
        #[arg(long)]
        auto: String,
        #[arg(long)]
        t: usize,
        #[arg(long = "L")]
        size: Option<usize>,
        /// Claimed distance; sets the minimum lattice size (default 2t+1).
        #[arg(long)]
        d: Option<usize>,
        /// Also check that every error of weight at most W is detected.
        #[arg(long)]
        detect: Option<usize>,
    },
    /// Draw an operator on the lattice.
    Render {
        #[arg(long)]
        auto: String,
        /// Transformed operator name, `stabilizer`, or a vector literal.
        object: String,
        #[arg(long, value_enum, default_value = "ascii")]
        format: DiagramFormat,
        /// Mark the vertices the operator violates.
        #[arg(long)]
        syndrome: bool,
    },
    /// Stabilizer and logical rows of a torus code as qubit index lists.
    Export {
        #[arg(long)]
        auto: String,
        #[arg(long = "L")]
        size: Option<usize>,
        /// Claimed distance for the lattice size check (default 2).
        #[arg(long, default_value_t = 2)]
        d: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: ExportFormat,
    },
    /// Regenerate the weight table and diff against frozen values.
    Table1,
    /// Regenerate the distance table and diff against frozen values.
    Table2 {
        #[arg(long, value_enum, default_value = "fast")]
        tier: TierArg,
        #[arg(long)]
        node_cap: Option<u64>,
    },
    /// Recompute every golden record in a corpus directory.
    CorpusCheck {
        #[arg(long, default_value = "corpus")]
        dir: PathBuf,
        #[arg(long, value_enum, default_value = "fast")]
        tier: TierArg,
    },
}

/// Parses `args` (including the program name), runs, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match execute(&cli) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("fermicode: {e}");
            e.exit_code()
        }
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CliError> {
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn mismatch_unless(ok: bool, what: &str) -> Result<(), CliError> {
    if ok {
        Ok(())
    } else {
        Err(CliError::Mismatch(what.into()))
    }
}

fn threads(cli: &Cli) -> usize {
    cli.threads.unwrap_or_else(|| ParallelLimits::default().threads).max(1)
}

fn code_of(auto: &str) -> Result<(ResolvedMap, CodeFamily), CliError> {
    resolve_code(auto, DEFAULT_REDUCTION_RADIUS)
}

fn operand_of(arg: &str, code: Option<&CodeFamily>) -> Result<PauliVec, CliError> {
    let named = match code {
        Some(c) => code_operator(arg, c),
        None => base_operator(arg),
    };
    match named {
        Some(v) => Ok(v),
        None => parse_vector_literal(arg),
    }
}

fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Verify { expr } => {
            let r = resolve_map(expr)?;
            let doc = VerifyDoc::new(&r);
            emit(cli, &to_json(&doc))?;
            let failed: Vec<&str> = doc.checks.iter().filter(|c| !c.holds).map(|c| c.identity.as_str()).collect();
            mismatch_unless(doc.passed, &format!("{expr}: {} fails", failed.join(", ")))
        }
        Command::Compose { exprs, expect } => {
            let mut acc = ResolvedMap { label: String::new(), factors: Some(Vec::new()), map: fermicode_core::SymplecticMap::identity() };
            for e in exprs {
                let r = resolve_map(e)?;
                acc.map = acc.map.compose(&r.map);
                acc.factors = match (acc.factors, r.factors) {
                    (Some(mut a), Some(b)) => {
                        a.extend(b);
                        Some(a)
                    }
                    _ => None,
                };
                if !acc.label.is_empty() {
                    acc.label.push('*');
                }
                acc.label.push_str(&r.label);
            }
            emit(cli, &to_json(&MatrixDoc::new(&acc)))?;
            match expect {
                Some(x) => {
                    let want = resolve_map(x)?;
                    mismatch_unless(want.map == acc.map, &format!("{} differs from {x}", acc.label))
                }
                None => Ok(()),
            }
        }
        Command::Apply { auto, operand } => {
            let r = resolve_map(auto)?;
            let v = operand_of(operand, None)?;
            emit(cli, &to_json(&VectorDoc::new(&r.label, operand, r.map.apply(&v))))
        }
        Command::Weights { auto, radius } => {
            let (r, code) = resolve_code(auto, *radius)?;
            emit(cli, &to_json(&WeightsDoc::new(&r.label, &code)))
        }
        Command::Distance { auto, max_weight, node_cap, time_limit, expect } => {
            let (r, code) = code_of(auto)?;
            let wall_clock = match time_limit {
                Some(s) if *s > 0.0 && s.is_finite() => Some(Duration::from_secs_f64(*s)),
                Some(s) => return Err(CliError::Usage(format!("--time-limit {s} must be positive"))),
                None => None,
            };
            let limits = ParallelLimits { threads: threads(cli), max_nodes: *node_cap, wall_clock, ..ParallelLimits::default() };
            let out = parallel_distance(&code, *max_weight, limits);
            let matches = expect.map(|d| out.result.exact() == Some(d));
            let doc = DistanceDoc {
                schema: DISTANCE_SCHEMA.into(),
                expr: r.label.clone(),
                max_weight: *max_weight,
                nodes: out.stats.nodes,
                levels_completed: out.stats.levels_completed,
                threads: limits.threads,
                tripped: out.tripped.map(|t| t.name().to_string()),
                elapsed_ms: out.elapsed.as_millis() as u64,
                expected: *expect,
                matches,
                result: out.result,
            };
            emit(cli, &to_json(&doc))?;
            mismatch_unless(matches != Some(false), &format!("{}: expected distance {}", r.label, expect.unwrap_or(0)))
        }
        Command::Search { max_len, target_d, confirm, budget_nodes, ledger } => {
            if !(1..=fermicode_core::search::MAX_PRODUCT_LEN).contains(max_len) {
                return Err(CliError::Usage(format!("--max-len must be 1..=5, got {max_len}")));
            }
            if *target_d < 2 {
                return Err(CliError::Usage("--target-d must be at least 2".into()));
            }
            let cfg = SweepConfig {
                max_len: *max_len,
                target_d: *target_d,
                confirm: *confirm,
                node_budget: *budget_nodes,
                threads: threads(cli),
                ledger: ledger.clone(),
            };
            let (_, summary) = run_sweep(&cfg)?;
            emit(cli, &to_json(&summary))
        }
        Command::Syndrome { auto, error } => {
            let (r, code) = code_of(auto)?;
            let e = operand_of(error, Some(&code))?;
            let logical = is_logical(&e, &code);
            let doc = SyndromeDoc {
                schema: SYNDROME_SCHEMA.into(),
                expr: r.label,
                syndrome: syndrome(&e, &code),
                is_logical: logical,
                in_stabilizer_group: in_stabilizer_group(&e, &code).ok(),
                error: e,
            };
            emit(cli, &to_json(&doc))
        }
        Command::DecodeCheck { auto, t, size, d, detect } => {
            let (r, code) = code_of(auto)?;
            let claimed = d.unwrap_or(2 * t + 1);
            let l = size.unwrap_or_else(|| default_size(claimed));
            let tc = TorusCode::materialize(&code, l, claimed)?;
            let report = tc.correct_all_errors(*t);
            let detect_doc = detect.map(|w| DetectDoc { max_weight: w, detected: tc.detect_up_to(w) });
            let ok = report.all_corrected() && detect_doc.as_ref().is_none_or(|x| x.detected);
            let doc = DecodeDoc { schema: DECODE_SCHEMA.into(), expr: r.label.clone(), size: l, claimed_d: claimed, report, detect: detect_doc };
            emit(cli, &to_json(&doc))?;
            mismatch_unless(ok, &format!("{} on the {l}x{l} torus fails the check", r.label))
        }
        Command::Render { auto, object, format, syndrome: with_syndrome } => {
            let (_, code) = code_of(auto)?;
            let v = operand_of(object, Some(&code))?;
            let marks = if *with_syndrome { syndrome(&v, &code).vertices().to_vec() } else { Vec::new() };
            let text = match format {
                DiagramFormat::Ascii => render::ascii(&v, &marks),
                DiagramFormat::Svg => render::svg(&v, &marks),
            };
            emit(cli, &text)
        }
        Command::Export { auto, size, d, format: ExportFormat::Json } => {
            let (r, code) = code_of(auto)?;
            let l = size.unwrap_or_else(|| default_size(*d));
            let tc = TorusCode::materialize(&code, l, *d)?;
            emit(cli, &to_json(&TorusDoc::new(&r.label, &tc)))
        }
        Command::Table1 => {
            let report = table1();
            emit(cli, &to_json(&report))?;
            mismatch_unless(report.all_match, "weight table differs from the frozen values")
        }
        Command::Table2 { tier, node_cap } => {
            let report = table2((*tier).into(), threads(cli), *node_cap);
            emit(cli, &to_json(&report))?;
            mismatch_unless(report.all_match, "distance table differs from the frozen values")
        }
        Command::CorpusCheck { dir, tier } => {
            let limits = ParallelLimits { threads: threads(cli), ..ParallelLimits::default() };
            let report = crate::corpus::corpus_check(dir, (*tier).into(), limits)?;
            emit(cli, &to_json(&report))?;
            for r in report.records.iter().filter(|r| !r.passed) {
                eprintln!("{} {}: {}", r.file, r.id, r.problems.join("; "));
            }
            for id in &report.missing {
                eprintln!("missing record {id}");
            }
            mismatch_unless(report.passed, "corpus check failed")
        }
    }
}
