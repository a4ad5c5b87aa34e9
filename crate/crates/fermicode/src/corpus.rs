//! Golden records: published matrices, vectors and table rows, each entered
//! twice (exponent pairs and display text) and recomputed from the
//! elementary automorphisms on every check.
//!
//! A corpus file is `{"schema": "fermicode.corpus/1", "records": [...]}`.
//! Each record has an `id`, a free-text `origin`, a `payload` tagged by
//! `kind`, and `checksum`: the SHA-256 of the payload serialized as compact
//! JSON with object keys sorted.

use std::path::{Path, PathBuf};

use fermicode_core::expr::AutoExpr;
use fermicode_core::laurent::LaurentPoly;
use fermicode_core::{in_stabilizer_group, is_logical, syndrome, CodeFamily, Pauli, PauliVec, Syndrome, SymplecticMap};
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::doc::{base_operator, CliError};
use crate::parallel::{parallel_distance, ParallelLimits};
use crate::tables::Tier;

pub const CORPUS_SCHEMA: &str = "fermicode.corpus/1";
pub const REPORT_SCHEMA: &str = "fermicode.corpus-report/1";

/// Records every corpus must contain.
pub const REQUIRED_IDS: &[&str] = &[
    "matrix/A1",
    "matrix/A-prime",
    "matrix/A-double-prime",
    "matrix/A-d6",
    "matrix/A-d7",
    "vector/A1/U1",
    "vector/A1/U2",
    "vector/A1/W",
    "vector/A1/G",
    "vector/A-prime/U1",
    "vector/A-prime/U2",
    "vector/A-prime/W",
    "vector/A-prime/G",
    "vector/A-double-prime/U1",
    "vector/A-double-prime/U2",
    "vector/A-double-prime/W+G",
    "vector/A-double-prime/G",
    "vector/A-d6/U1",
    "vector/A-d6/U2",
    "vector/A-d6/W",
    "vector/A-d6/G",
    "vector/A-d7/U1",
    "vector/A-d7/U2",
    "vector/A-d7/W",
    "vector/A-d7/G",
    "logical/A4*A7/weight-4-Z",
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Payload {
    Matrix { expr: String, matrix: SymplecticMap, text: [[String; 4]; 4] },
    Vector {
        expr: String,
        operand: String,
        vector: PauliVec,
        text: [String; 4],
        weight: usize,
        /// Printed components that disagree with the printed matrix applied
        /// to the printed operator. `vector` and `text` hold the product.
        #[serde(default, skip_serializing_if = "Vec::is_empty")]
        errata: Vec<Erratum>,
    },
    Weights { expr: String, hopping: [usize; 2], occupation: usize, stabilizer: usize },
    Distance { expr: String, d: usize, tier: Tier },
    /// A drawn operator. When `anchored`, the edge marked in the drawing sits
    /// at the origin and the match is exact; otherwise only up to translation.
    Picture { expr: String, operand: String, vector: PauliVec, weight: usize, anchored: bool },
    /// Vertices flagged by `error`, computed once by an independent site-by-site oracle.
    Syndrome { expr: String, error: PauliVec, syndrome: Syndrome },
    /// A logical operator outside the stabilizer group, every site carrying `pauli`.
    Logical { expr: String, vector: PauliVec, weight: usize, pauli: Pauli },
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Matrix { .. } => "matrix",
            Payload::Vector { .. } => "vector",
            Payload::Weights { .. } => "weights",
            Payload::Distance { .. } => "distance",
            Payload::Picture { .. } => "picture",
            Payload::Syndrome { .. } => "syndrome",
            Payload::Logical { .. } => "logical",
        }
    }
}

/// One misprinted component: index 0..4 into `[a1, a2, c1, c2]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Erratum {
    pub component: usize,
    pub printed: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoldenRecord {
    pub id: String,
    pub origin: String,
    pub payload: Payload,
    pub checksum: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusFile {
    pub schema: String,
    pub records: Vec<GoldenRecord>,
}

pub fn payload_checksum(p: &Payload) -> String {
    // serde_json::Value keeps object keys sorted
    let canonical = serde_json::to_string(&serde_json::to_value(p).expect("payloads serialize")).expect("values serialize");
    let digest = Sha256::digest(canonical.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RecordCheck {
    pub file: String,
    pub id: String,
    pub kind: String,
    /// False for records above the requested tier.
    pub checked: bool,
    pub passed: bool,
    pub problems: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusReport {
    pub schema: String,
    pub tier: Tier,
    pub files: Vec<String>,
    pub records: Vec<RecordCheck>,
    pub missing: Vec<String>,
    pub duplicates: Vec<String>,
    pub passed: bool,
}

pub fn load_dir(dir: &Path) -> Result<Vec<(String, CorpusFile)>, CliError> {
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(|e| CliError::Usage(format!("{}: {e}", dir.display())))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    let mut files = Vec::new();
    for p in paths {
        let text = std::fs::read_to_string(&p)?;
        let file: CorpusFile =
            serde_json::from_str(&text).map_err(|e| CliError::Usage(format!("{}: {e}", p.display())))?;
        if file.schema != CORPUS_SCHEMA {
            return Err(CliError::Usage(format!("{}: unknown schema {}", p.display(), file.schema)));
        }
        let name = p.file_name().expect("listed files have names").to_string_lossy().into_owned();
        files.push((name, file));
    }
    Ok(files)
}

fn parse_text(text: &str, problems: &mut Vec<String>) -> Option<LaurentPoly> {
    match text.parse() {
        Ok(p) => Some(p),
        Err(e) => {
            problems.push(format!("text `{text}`: {e}"));
            None
        }
    }
}

fn map_of(expr: &str, problems: &mut Vec<String>) -> Option<SymplecticMap> {
    match AutoExpr::parse(expr) {
        Ok(e) => Some(e.map),
        Err(e) => {
            problems.push(format!("expr `{expr}`: {e}"));
            None
        }
    }
}

fn to_corner(v: &PauliVec) -> PauliVec {
    match v.bounding_box() {
        Some((mi, _, mj, _)) => v.translate(-mi, -mj),
        None => v.clone(),
    }
}

/// Checks one record; returns the problems found, empty on success.
pub fn check_record(r: &GoldenRecord, limits: ParallelLimits) -> Vec<String> {
    let mut problems = Vec::new();
    let sum = payload_checksum(&r.payload);
    if sum != r.checksum {
        problems.push(format!("checksum {} does not match payload {}", r.checksum, sum));
    }
    match &r.payload {
        Payload::Matrix { expr, matrix, text } => {
            for (row, texts) in text.iter().enumerate() {
                for (col, t) in texts.iter().enumerate() {
                    if let Some(p) = parse_text(t, &mut problems) {
                        if &p != matrix.entry(row, col) {
                            problems.push(format!("entry ({row},{col}): text `{t}` differs from {}", matrix.entry(row, col)));
                        }
                    }
                }
            }
            let check = matrix.check();
            for f in check.failures() {
                problems.push(format!("{f} fails"));
            }
            if let Some(m) = map_of(expr, &mut problems) {
                if &m != matrix {
                    problems.push(format!("recomputed {expr} differs:\n{m}"));
                }
            }
        }
        Payload::Vector { expr, operand, vector, text, weight, errata } => {
            for e in errata {
                match (vector.components().get(e.component), parse_text(&e.printed, &mut problems)) {
                    (None, _) => problems.push(format!("erratum component {} out of range", e.component)),
                    (Some(p), Some(q)) if *p == &q => {
                        problems.push(format!("erratum for component {} agrees with the vector", e.component))
                    }
                    _ => {}
                }
            }
            for (k, (t, p)) in text.iter().zip(vector.components()).enumerate() {
                if let Some(q) = parse_text(t, &mut problems) {
                    if &q != p {
                        problems.push(format!("component {k}: text `{t}` differs from {p}"));
                    }
                }
            }
            if vector.weight() != *weight {
                problems.push(format!("weight {} recorded as {weight}", vector.weight()));
            }
            match (map_of(expr, &mut problems), base_operator(operand)) {
                (Some(m), Some(v)) => {
                    let got = m.apply(&v);
                    if &got != vector {
                        problems.push(format!("recomputed {expr} {operand} = {got}"));
                    }
                }
                (_, None) => problems.push(format!("unknown operand `{operand}`")),
                _ => {}
            }
        }
        Payload::Weights { expr, hopping, occupation, stabilizer } => {
            if let Some(m) = map_of(expr, &mut problems) {
                let code = CodeFamily::build(&m).expect("parse checked the map");
                let (red, raw) = (code.weight_stats(), code.raw_weight_stats());
                let hop = |s: &fermicode_core::WeightStats| [s.wt_min, s.wt_max];
                if hop(&red) != *hopping && hop(&raw) != *hopping {
                    problems.push(format!("hopping {hopping:?}: reduced {:?}, raw {:?}", hop(&red), hop(&raw)));
                }
                if red.occupation != *occupation {
                    problems.push(format!("occupation {occupation}: got {}", red.occupation));
                }
                if red.stabilizer != *stabilizer {
                    problems.push(format!("stabilizer {stabilizer}: got {}", red.stabilizer));
                }
            }
        }
        Payload::Distance { expr, d, .. } => {
            if let Some(m) = map_of(expr, &mut problems) {
                let code = CodeFamily::build(&m).expect("parse checked the map");
                let out = parallel_distance(&code, d + 1, limits);
                if out.result.exact() != Some(*d) {
                    problems.push(format!("distance {d}: got {:?}", out.result));
                }
            }
        }
        Payload::Picture { expr, operand, vector, weight, anchored } => {
            if vector.weight() != *weight {
                problems.push(format!("weight {} recorded as {weight}", vector.weight()));
            }
            match (map_of(expr, &mut problems), base_operator(operand)) {
                (Some(m), Some(v)) => {
                    let got = m.apply(&v);
                    let same = if *anchored { &got == vector } else { to_corner(&got) == to_corner(vector) };
                    if !same {
                        problems.push(format!("recomputed {expr} {operand} = {got}"));
                    }
                }
                (_, None) => problems.push(format!("unknown operand `{operand}`")),
                _ => {}
            }
        }
        Payload::Syndrome { expr, error, syndrome: expected } => {
            if let Some(m) = map_of(expr, &mut problems) {
                let code = CodeFamily::build(&m).expect("parse checked the map");
                let got = syndrome(error, &code);
                if &got != expected {
                    problems.push(format!("syndrome {got:?}, recorded {expected:?}"));
                }
            }
        }
        Payload::Logical { expr, vector, weight, pauli } => {
            if vector.weight() != *weight {
                problems.push(format!("weight {} recorded as {weight}", vector.weight()));
            }
            if vector.sites().iter().any(|s| s.pauli != *pauli) {
                problems.push(format!("not every site is {pauli:?}"));
            }
            if let Some(m) = map_of(expr, &mut problems) {
                let code = CodeFamily::build(&m).expect("parse checked the map");
                if !is_logical(vector, &code) {
                    problems.push("has a nonempty syndrome".into());
                } else if in_stabilizer_group(vector, &code) == Ok(true) {
                    problems.push("lies in the stabilizer group".into());
                }
            }
        }
    }
    problems
}

fn record_tier(p: &Payload) -> Tier {
    match p {
        Payload::Distance { tier, .. } => *tier,
        _ => Tier::Fast,
    }
}

pub fn corpus_check(dir: &Path, tier: Tier, limits: ParallelLimits) -> Result<CorpusReport, CliError> {
    let files = load_dir(dir)?;
    let mut records = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut duplicates = Vec::new();
    for (name, file) in &files {
        for r in &file.records {
            if !seen.insert(r.id.clone()) {
                duplicates.push(r.id.clone());
            }
            let checked = record_tier(&r.payload) <= tier;
            let problems = if checked { check_record(r, limits) } else { Vec::new() };
            records.push(RecordCheck {
                file: name.clone(),
                id: r.id.clone(),
                kind: r.payload.kind().into(),
                checked,
                passed: problems.is_empty(),
                problems,
            });
        }
    }
    let missing: Vec<String> = REQUIRED_IDS.iter().filter(|id| !seen.contains(**id)).map(|s| s.to_string()).collect();
    let passed = missing.is_empty() && duplicates.is_empty() && records.iter().all(|r| r.passed);
    Ok(CorpusReport {
        schema: REPORT_SCHEMA.into(),
        tier,
        files: files.into_iter().map(|(n, _)| n).collect(),
        records,
        missing,
        duplicates,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(payload: Payload) -> GoldenRecord {
        GoldenRecord { id: "t".into(), origin: "test".into(), checksum: payload_checksum(&payload), payload }
    }

    fn limits() -> ParallelLimits {
        ParallelLimits { threads: 1, ..ParallelLimits::default() }
    }

    #[test]
    fn good_vector_passes_and_tampering_is_caught() {
        let v = SymplecticMap::elementary(1).unwrap().apply(&base_operator("U1").unwrap());
        let good = record(Payload::Vector {
            expr: "A1".into(),
            operand: "U1".into(),
            text: crate::doc::vector_text(&v),
            weight: v.weight(),
            vector: v.clone(),
            errata: Vec::new(),
        });
        assert_eq!(check_record(&good, limits()), Vec::<String>::new());

        let mut bad_text = good.clone();
        if let Payload::Vector { text, .. } = &mut bad_text.payload {
            text[3] = "1 + y".into();
        }
        let problems = check_record(&bad_text, limits());
        assert!(problems.iter().any(|p| p.starts_with("checksum")));
        assert!(problems.iter().any(|p| p.starts_with("component 3")));
    }

    #[test]
    fn corrupted_matrix_names_identity() {
        let mut m = SymplecticMap::elementary(1).unwrap();
        let mut e = m.entry(2, 1).clone();
        e.flip(fermicode_core::Monomial::new(1, 0));
        m.set_entry(2, 1, e);
        let text = crate::doc::matrix_text(&m);
        let r = record(Payload::Matrix { expr: "A1".into(), matrix: m, text });
        let problems = check_record(&r, limits());
        assert!(problems.iter().any(|p| p.contains("fails")), "{problems:?}");
        assert!(problems.iter().any(|p| p.starts_with("recomputed")));
    }

    #[test]
    fn unanchored_picture_matches_any_translate() {
        let w = base_operator("W").unwrap().translate(3, -2);
        let mut r = record(Payload::Picture {
            expr: "A1".into(),
            operand: "W".into(),
            weight: 4,
            vector: w.clone(),
            anchored: false,
        });
        assert_eq!(check_record(&r, limits()), Vec::<String>::new());
        r.payload = Payload::Picture { expr: "A1".into(), operand: "W".into(), weight: 4, vector: w, anchored: true };
        r.checksum = payload_checksum(&r.payload);
        assert_eq!(check_record(&r, limits()).len(), 1);
    }

    #[test]
    fn shifted_syndrome_is_rejected() {
        let error = PauliVec::from_components([LaurentPoly::one(), LaurentPoly::zero(), LaurentPoly::zero(), LaurentPoly::zero()]);
        let expected = Syndrome::from_vertices([(0, -1).into(), (0, 0).into()]);
        let mut r = record(Payload::Syndrome { expr: "I".into(), error: error.clone(), syndrome: expected.clone() });
        assert_eq!(check_record(&r, limits()), Vec::<String>::new());
        r.payload = Payload::Syndrome { expr: "I".into(), error, syndrome: expected.shifted(1, 0) };
        r.checksum = payload_checksum(&r.payload);
        assert_eq!(check_record(&r, limits()).len(), 1);
    }

    #[test]
    fn erratum_must_differ_from_the_vector() {
        let v = SymplecticMap::elementary(1).unwrap().apply(&base_operator("U1").unwrap());
        let text = crate::doc::vector_text(&v);
        let mut r = record(Payload::Vector {
            expr: "A1".into(),
            operand: "U1".into(),
            errata: vec![Erratum { component: 3, printed: text[3].clone() }],
            weight: v.weight(),
            vector: v,
            text,
        });
        r.checksum = payload_checksum(&r.payload);
        let problems = check_record(&r, limits());
        assert!(problems.iter().any(|p| p.contains("agrees with the vector")), "{problems:?}");
    }

    #[test]
    fn checksum_is_canonical() {
        let p = Payload::Distance { expr: "A1".into(), d: 3, tier: Tier::Fast };
        let s = payload_checksum(&p);
        assert_eq!(s.len(), 64);
        // field order in the source does not matter once keys are sorted
        let reordered: Payload = serde_json::from_str(r#"{"tier":"fast","d":3,"expr":"A1","kind":"distance"}"#).unwrap();
        assert_eq!(payload_checksum(&reordered), s);
    }
}
