//! JSON documents emitted by the command line, and parsing of its inputs.
//!
//! Every document carries a `schema` string `fermicode.<kind>/<version>`.
//! Polynomials serialize as arrays of `[i, j]` exponent pairs; a
//! [`PauliVec`] is an object with fields `a1`, `a2`, `c1`, `c2`.

use std::fmt;
use std::path::Path;

use fermicode_core::codes::WeightStats;
use fermicode_core::distance::DistanceResult;
use fermicode_core::expr::AutoExpr;
use fermicode_core::torus::CorrectionReport;
use fermicode_core::{base_code, CodeFamily, LaurentPoly, PauliVec, SymplecticMap, Syndrome};
use serde::{Deserialize, Serialize};

pub const MATRIX_SCHEMA: &str = "fermicode.matrix/1";
pub const VERIFY_SCHEMA: &str = "fermicode.verify/1";
pub const VECTOR_SCHEMA: &str = "fermicode.vector/1";
pub const WEIGHTS_SCHEMA: &str = "fermicode.weights/1";
pub const DISTANCE_SCHEMA: &str = "fermicode.distance/1";
pub const SYNDROME_SCHEMA: &str = "fermicode.syndrome/1";
pub const DECODE_SCHEMA: &str = "fermicode.decode-check/1";
pub const TORUS_SCHEMA: &str = "fermicode.torus/1";

/// Failure of a command, mapped to the process exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CliError {
    /// Bad arguments or unreadable input; exit 2.
    Usage(String),
    /// A check ran and disagreed with its expectation; exit 1.
    Mismatch(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 1,
            CliError::Usage(_) => 2,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) => write!(f, "usage error: {m}"),
            CliError::Mismatch(m) => write!(f, "mismatch: {m}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<fermicode_core::Error> for CliError {
    fn from(e: fermicode_core::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Usage(format!("bad JSON: {e}"))
    }
}

/// An automorphism named on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolvedMap {
    pub label: String,
    pub factors: Option<Vec<u8>>,
    pub map: SymplecticMap,
}

/// Reads `A4*A7`-style expressions, or a path to a JSON matrix (either a
/// matrix document or a bare 4x4 array). Does not check the automorphism
/// condition.
pub fn resolve_map(arg: &str) -> Result<ResolvedMap, CliError> {
    if arg.ends_with(".json") || Path::new(arg).is_file() {
        let text = std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let matrix_value = value.get("matrix").cloned().unwrap_or(value);
        let map: SymplecticMap = serde_json::from_value(matrix_value)?;
        return Ok(ResolvedMap { label: arg.to_string(), factors: None, map });
    }
    let e = AutoExpr::parse_unchecked(arg).map_err(|e| CliError::Usage(format!("`{arg}` {e}")))?;
    Ok(ResolvedMap { label: e.atoms.join("*"), factors: e.factors, map: e.map })
}

/// Builds the code for `arg`, rejecting maps that are not automorphisms.
pub fn resolve_code(arg: &str, radius: u32) -> Result<(ResolvedMap, CodeFamily), CliError> {
    let r = resolve_map(arg)?;
    let code = CodeFamily::build_with_radius(&r.map, radius)?;
    Ok((r, code))
}

/// Base-code operators by name: `U1`, `U2`, `W`, `G`, `W+G`.
pub fn base_operator(name: &str) -> Option<PauliVec> {
    let b = base_code();
    Some(match name {
        "U1" => b.u1,
        "U2" => b.u2,
        "W" => b.w,
        "G" => b.g,
        "W+G" | "G+W" => b.w.add(&b.g),
        _ => return None,
    })
}

/// Transformed operators by name: the base names, `stabilizer`, or one of
/// the nine term labels (reduced form).
pub fn code_operator(name: &str, code: &CodeFamily) -> Option<PauliVec> {
    if name == "stabilizer" {
        return Some(code.stabilizer.clone());
    }
    if let Some(t) = code.nn_terms.iter().find(|t| t.label == name) {
        return Some(t.reduced.clone());
    }
    base_operator(name).map(|v| code.map.apply(&v))
}

/// A vector literal: JSON `{"a1": [[i, j], ...], ...}`, JSON array of four
/// polynomial strings, or a path to a file holding either.
pub fn parse_vector_literal(arg: &str) -> Result<PauliVec, CliError> {
    let text = if arg.trim_start().starts_with(['{', '[']) {
        arg.to_string()
    } else {
        std::fs::read_to_string(arg).map_err(|e| CliError::Usage(format!("{arg}: {e}")))?
    };
    let value: serde_json::Value = serde_json::from_str(&text)?;
    let value = value.get("vector").cloned().unwrap_or(value);
    if let Some(items) = value.as_array() {
        if items.len() != 4 {
            return Err(CliError::Usage("a vector has four components".into()));
        }
        let mut polys = Vec::with_capacity(4);
        for item in items {
            let s = item.as_str().ok_or_else(|| CliError::Usage("components must be strings".into()))?;
            polys.push(s.parse::<LaurentPoly>().map_err(|e| CliError::Usage(format!("`{s}` {e}")))?);
        }
        let [a1, a2, c1, c2]: [LaurentPoly; 4] = polys.try_into().expect("length checked");
        return Ok(PauliVec::new(a1, a2, c1, c2));
    }
    Ok(serde_json::from_value(value)?)
}

pub fn vector_text(v: &PauliVec) -> [String; 4] {
    v.components().map(|p| p.to_string())
}

pub fn matrix_text(m: &SymplecticMap) -> [[String; 4]; 4] {
    std::array::from_fn(|r| std::array::from_fn(|c| m.entry(r, c).to_string()))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub schema: String,
    pub expr: String,
    pub factors: Option<Vec<u8>>,
    pub matrix: SymplecticMap,
    pub text: [[String; 4]; 4],
    pub is_automorphism: bool,
}

impl MatrixDoc {
    pub fn new(r: &ResolvedMap) -> Self {
        MatrixDoc {
            schema: MATRIX_SCHEMA.into(),
            expr: r.label.clone(),
            factors: r.factors.clone(),
            matrix: r.map.clone(),
            text: matrix_text(&r.map),
            is_automorphism: r.map.is_automorphism(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub identity: String,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyDoc {
    pub schema: String,
    pub expr: String,
    pub checks: Vec<IdentityCheck>,
    pub passed: bool,
}

impl VerifyDoc {
    pub fn new(r: &ResolvedMap) -> Self {
        let c = r.map.check();
        let checks = [("a'c = c'a", c.ac_symmetric), ("a'd + c'b = I", c.ad_cb_identity), ("b'd = d'b", c.bd_symmetric)]
            .into_iter()
            .map(|(identity, holds)| IdentityCheck { identity: identity.into(), holds })
            .collect();
        VerifyDoc { schema: VERIFY_SCHEMA.into(), expr: r.label.clone(), checks, passed: c.passed() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VectorDoc {
    pub schema: String,
    pub expr: String,
    pub operand: String,
    pub vector: PauliVec,
    pub text: [String; 4],
    pub weight: usize,
}

impl VectorDoc {
    pub fn new(expr: &str, operand: &str, vector: PauliVec) -> Self {
        VectorDoc {
            schema: VECTOR_SCHEMA.into(),
            expr: expr.into(),
            operand: operand.into(),
            text: vector_text(&vector),
            weight: vector.weight(),
            vector,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermDoc {
    pub label: String,
    pub raw_weight: usize,
    pub reduced_weight: usize,
    pub reduced: PauliVec,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightsDoc {
    pub schema: String,
    pub expr: String,
    pub reduction_radius: u32,
    pub stats: WeightStats,
    pub raw_stats: WeightStats,
    pub terms: Vec<TermDoc>,
    pub stabilizer: PauliVec,
}

impl WeightsDoc {
    pub fn new(expr: &str, code: &CodeFamily) -> Self {
        WeightsDoc {
            schema: WEIGHTS_SCHEMA.into(),
            expr: expr.into(),
            reduction_radius: code.reduction_radius,
            stats: code.weight_stats(),
            raw_stats: code.raw_weight_stats(),
            terms: code
                .nn_terms
                .iter()
                .map(|t| TermDoc {
                    label: t.label.clone(),
                    raw_weight: t.raw.weight(),
                    reduced_weight: t.reduced.weight(),
                    reduced: t.reduced.clone(),
                })
                .collect(),
            stabilizer: code.stabilizer.clone(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DistanceDoc {
    pub schema: String,
    pub expr: String,
    pub max_weight: usize,
    pub result: DistanceResult,
    pub nodes: u64,
    pub levels_completed: usize,
    pub threads: usize,
    /// `node_cap` or `wall_clock` when a limit cut the search short.
    pub tripped: Option<String>,
    pub elapsed_ms: u64,
    pub expected: Option<usize>,
    pub matches: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SyndromeDoc {
    pub schema: String,
    pub expr: String,
    pub error: PauliVec,
    pub syndrome: Syndrome,
    pub is_logical: bool,
    /// Present only for logical operators.
    pub in_stabilizer_group: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DetectDoc {
    pub max_weight: usize,
    pub detected: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecodeDoc {
    pub schema: String,
    pub expr: String,
    pub size: usize,
    pub claimed_d: usize,
    pub report: CorrectionReport,
    pub detect: Option<DetectDoc>,
}

/// Rows of a torus code as qubit index lists; qubit `2 * (x + L * y) + o`
/// with `o = 0` horizontal and `o = 1` vertical.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusDoc {
    pub schema: String,
    pub expr: String,
    pub size: usize,
    pub qubits: usize,
    pub stabilizer_rank: usize,
    pub stabilizers: Vec<TorusRow>,
    pub logicals: Vec<TorusRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusRow {
    pub label: String,
    pub x: Vec<usize>,
    pub z: Vec<usize>,
}

impl TorusDoc {
    pub fn new(expr: &str, tc: &fermicode_core::torus::TorusCode) -> Self {
        let n = tc.qubits();
        let split = |label: String, row: &fermicode_core::gf2::BitVec| TorusRow {
            label,
            x: row.ones().filter(|&b| b < n).collect(),
            z: row.ones().filter(|&b| b >= n).map(|b| b - n).collect(),
        };
        let l = tc.size();
        TorusDoc {
            schema: TORUS_SCHEMA.into(),
            expr: expr.into(),
            size: l,
            qubits: n,
            stabilizer_rank: tc.stabilizer_rank(),
            stabilizers: tc
                .stabilizer_rows()
                .iter()
                .enumerate()
                .map(|(v, row)| split(format!("G({},{})", v % l, v / l), row))
                .collect(),
            logicals: tc.logical_reps().iter().map(|(label, row)| split(label.clone(), row)).collect(),
        }
    }
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("documents always serialize");
    s.push('\n');
    s
}
