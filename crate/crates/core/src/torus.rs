//! Finite periodic instances of a code family and exhaustive decoding checks.
//!
//! On an `L x L` torus the edge leaving vertex `(x, y)` in direction
//! `o` (0 horizontal, 1 vertical) is qubit `2 * (x + L * y) + o`. A Pauli
//! operator is a binary symplectic row of `2n` bits, `n = 2 L^2`: bit `q`
//! is the X part on qubit `q`, bit `n + q` the Z part. Stabilizer row `v`
//! is the vertex stabilizer translated to vertex `v = x + L * y`.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::string::String;
use alloc::vec::Vec;

use crate::codes::CodeFamily;
use crate::error::Error;
use crate::gf2::{BitVec, RowSpace};
use crate::laurent::Monomial;
use crate::pauli::{EdgeKind, Pauli, PauliVec};
use crate::syndrome::Syndrome;

/// Sparse error: `(qubit, Pauli)` pairs with distinct qubits.
pub type SparseError = Vec<(usize, Pauli)>;

/// Smallest allowed torus for a code of distance `d`.
pub fn min_size(d: usize) -> usize {
    (2 * d).max(4)
}

/// Size used when none is given.
pub fn default_size(d: usize) -> usize {
    (2 * d + 2).max(8)
}

#[derive(Clone, Debug)]
pub struct TorusCode {
    size: usize,
    stabilizer_rows: Vec<BitVec>,
    logical_reps: Vec<(String, BitVec)>,
    stabilizers: RowSpace,
    // syndrome of X, Y, Z on each qubit
    single: Vec<[BitVec; 3]>,
    max_flip: usize,
}

impl TorusCode {
    /// Wraps `code` onto an `size x size` torus. `claimed_distance` sets the
    /// minimum size, `max(4, 2d)`.
    pub fn materialize(code: &CodeFamily, size: usize, claimed_distance: usize) -> Result<TorusCode, Error> {
        let min = min_size(claimed_distance);
        if size < min {
            return Err(Error::LatticeTooSmall { size, min });
        }
        let mut tc = TorusCode {
            size,
            stabilizer_rows: Vec::with_capacity(size * size),
            logical_reps: Vec::new(),
            stabilizers: RowSpace::new(4 * size * size),
            single: Vec::new(),
            max_flip: 0,
        };
        for y in 0..size as i32 {
            for x in 0..size as i32 {
                let row = tc.wrap(&code.stabilizer.translate(x, y));
                tc.stabilizers.insert(&row);
                tc.stabilizer_rows.push(row);
            }
        }
        for (label, v) in [("U1", &code.u1), ("U2", &code.u2), ("W", &code.w)] {
            tc.logical_reps.push((label.into(), tc.wrap(v)));
        }
        for t in &code.nn_terms {
            tc.logical_reps.push((t.label.clone(), tc.wrap(&t.reduced)));
        }
        tc.build_single_syndromes();
        Ok(tc)
    }

    fn build_single_syndromes(&mut self) {
        let n = self.qubits();
        let vertices = self.size * self.size;
        self.single = (0..n).map(|_| core::array::from_fn(|_| BitVec::zeros(vertices))).collect();
        for (v, row) in self.stabilizer_rows.iter().enumerate() {
            for q in 0..n {
                let (sx, sz) = (row.get(q), row.get(n + q));
                if !sx && !sz {
                    continue;
                }
                for (k, p) in Pauli::ALL.into_iter().enumerate() {
                    if (sx && p.has_z()) ^ (sz && p.has_x()) {
                        self.single[q][k].flip(v);
                    }
                }
            }
        }
        self.max_flip = self.single.iter().flat_map(|s| s.iter().map(BitVec::count_ones)).max().unwrap_or(0);
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// Number of physical qubits, `2 L^2`.
    pub fn qubits(&self) -> usize {
        2 * self.size * self.size
    }

    pub fn stabilizer_rows(&self) -> &[BitVec] {
        &self.stabilizer_rows
    }

    pub fn logical_reps(&self) -> &[(String, BitVec)] {
        &self.logical_reps
    }

    pub fn stabilizer_rank(&self) -> usize {
        self.stabilizers.rank()
    }

    pub fn qubit_index(&self, x: i32, y: i32, edge: EdgeKind) -> usize {
        let l = self.size as i32;
        let (x, y) = (x.rem_euclid(l) as usize, y.rem_euclid(l) as usize);
        2 * (x + self.size * y) + edge.index()
    }

    pub fn vertex_index(&self, x: i32, y: i32) -> usize {
        let l = self.size as i32;
        x.rem_euclid(l) as usize + self.size * y.rem_euclid(l) as usize
    }

    /// Binary symplectic row of a finite-support operator, exponents mod L.
    pub fn wrap(&self, v: &PauliVec) -> BitVec {
        let n = self.qubits();
        let mut row = BitVec::zeros(2 * n);
        for site in v.sites() {
            let q = self.qubit_index(site.at.i, site.at.j, site.edge);
            if site.pauli.has_x() {
                row.flip(q);
            }
            if site.pauli.has_z() {
                row.flip(n + q);
            }
        }
        row
    }

    /// Polynomial syndrome folded onto the torus vertices.
    pub fn wrap_syndrome(&self, s: &Syndrome) -> BitVec {
        let mut out = BitVec::zeros(self.size * self.size);
        for v in s.vertices() {
            out.flip(self.vertex_index(v.i, v.j));
        }
        out
    }

    pub fn to_row(&self, e: &[(usize, Pauli)]) -> BitVec {
        let n = self.qubits();
        let mut row = BitVec::zeros(2 * n);
        for &(q, p) in e {
            if p.has_x() {
                row.flip(q);
            }
            if p.has_z() {
                row.flip(n + q);
            }
        }
        row
    }

    pub fn from_row(&self, row: &BitVec) -> SparseError {
        let n = self.qubits();
        (0..n).filter_map(|q| Pauli::from_bits(row.get(q), row.get(n + q)).map(|p| (q, p))).collect()
    }

    /// Violated stabilizers as a bit vector over vertices.
    pub fn syndrome(&self, row: &BitVec) -> BitVec {
        let n = self.qubits();
        let mut out = BitVec::zeros(self.size * self.size);
        for (v, s) in self.stabilizer_rows.iter().enumerate() {
            let x_part = commutator(row, s, n);
            if x_part {
                out.flip(v);
            }
        }
        out
    }

    pub fn sparse_syndrome(&self, e: &[(usize, Pauli)]) -> BitVec {
        let mut out = BitVec::zeros(self.size * self.size);
        for &(q, p) in e {
            out.xor_assign(&self.single[q][p as usize]);
        }
        out
    }

    pub fn in_stabilizer_group(&self, row: &BitVec) -> bool {
        self.stabilizers.contains(row)
    }

    /// Sum of all stabilizer rows; zero when the rows are dependent in the
    /// way the dimension count `2^(2N) / 2^N` requires.
    pub fn product_of_all_rows(&self) -> BitVec {
        let mut acc = BitVec::zeros(2 * self.qubits());
        for r in &self.stabilizer_rows {
            acc.xor_assign(r);
        }
        acc
    }

    /// Lookup table from syndrome to the first minimum-weight error in
    /// canonical order, over all errors of weight at most `t`.
    pub fn build_decoder(&self, t: usize) -> Decoder {
        let mut table = BTreeMap::new();
        table.insert(BitVec::zeros(self.size * self.size).words().to_vec(), Vec::new());
        for w in 1..=t {
            for_each_error(self, w, &mut |e, syn| {
                table.entry(syn.words().to_vec()).or_insert_with(|| e.to_vec());
            });
        }
        Decoder { t, table }
    }

    /// Decodes every error of weight at most `t` and checks the residual is
    /// a stabilizer.
    pub fn correct_all_errors(&self, t: usize) -> CorrectionReport {
        let decoder = self.build_decoder(t);
        let mut report = CorrectionReport {
            size: self.size,
            t,
            errors_checked: 0,
            distinct_syndromes: decoder.table.len(),
            failure_count: 0,
            failures: Vec::new(),
        };
        for w in 0..=t {
            let mut check = |e: &[(usize, Pauli)], syn: &BitVec| {
                report.errors_checked += 1;
                let correction = decoder.table.get(syn.words()).expect("every enumerated syndrome is tabled");
                let mut residual = self.to_row(e);
                residual.xor_assign(&self.to_row(correction));
                if !self.stabilizers.contains(&residual) {
                    report.failure_count += 1;
                    if report.failures.len() < MAX_REPORTED_FAILURES {
                        report.failures.push(Failure { error: e.to_vec(), correction: correction.clone() });
                    }
                }
            };
            if w == 0 {
                check(&[], &BitVec::zeros(self.size * self.size));
            } else {
                for_each_error(self, w, &mut check);
            }
        }
        report
    }

    /// True iff no operator of weight `<= w` outside the stabilizer group has
    /// an empty syndrome.
    pub fn detect_up_to(&self, w: usize) -> bool {
        self.min_logical(w).is_none()
    }

    /// A minimum-weight logical outside the stabilizer group, if one of
    /// weight `<= max_weight` exists. Syndrome matching with the first
    /// factor on one of the two edges at vertex 0.
    pub fn min_logical(&self, max_weight: usize) -> Option<SparseError> {
        for budget in 1..=max_weight {
            let mut seen = BTreeSet::new();
            for q in [0, 1] {
                for p in Pauli::ALL {
                    let e = alloc::vec![(q, p)];
                    let syn = self.sparse_syndrome(&e);
                    if let Some(found) = self.torus_dfs(e, syn, budget, &mut seen) {
                        return Some(found);
                    }
                }
            }
        }
        None
    }

    fn torus_dfs(
        &self,
        e: SparseError,
        syn: BitVec,
        budget: usize,
        seen: &mut BTreeSet<SparseError>,
    ) -> Option<SparseError> {
        let Some(v) = syn.first_one() else {
            let mut sorted = e;
            sorted.sort_unstable();
            return (!self.stabilizers.contains(&self.to_row(&sorted))).then_some(sorted);
        };
        let remaining = budget - e.len();
        if remaining == 0 || syn.count_ones() > remaining * self.max_flip {
            return None;
        }
        let mut key = e.clone();
        key.sort_unstable();
        if !seen.insert(key) {
            return None;
        }
        let n = self.qubits();
        let row = &self.stabilizer_rows[v];
        let support: Vec<usize> = (0..n).filter(|&q| row.get(q) || row.get(n + q)).collect();
        for q in support {
            if e.iter().any(|&(u, _)| u == q) {
                continue;
            }
            for (k, p) in Pauli::ALL.into_iter().enumerate() {
                let flips = &self.single[q][k];
                if !flips.get(v) {
                    continue;
                }
                let mut next_syn = syn.clone();
                next_syn.xor_assign(flips);
                if remaining == 1 && !next_syn.is_zero() {
                    continue;
                }
                let mut next = e.clone();
                next.push((q, p));
                if let Some(found) = self.torus_dfs(next, next_syn, budget, seen) {
                    return Some(found);
                }
            }
        }
        None
    }

    /// Qubit index to `(x, y, edge)`.
    pub fn qubit_location(&self, q: usize) -> (usize, usize, EdgeKind) {
        let vertex = q / 2;
        let edge = if q.is_multiple_of(2) { EdgeKind::Horizontal } else { EdgeKind::Vertical };
        (vertex % self.size, vertex / self.size, edge)
    }

    /// Lifts a sparse torus error back to a polynomial vector with
    /// exponents in `0..L`.
    pub fn lift(&self, e: &[(usize, Pauli)]) -> PauliVec {
        PauliVec::from_sites(e.iter().map(|&(q, pauli)| {
            let (x, y, edge) = self.qubit_location(q);
            crate::pauli::Site { at: Monomial::new(x as i32, y as i32), edge, pauli }
        }))
    }
}

const MAX_REPORTED_FAILURES: usize = 16;

fn commutator(a: &BitVec, b: &BitVec, n: usize) -> bool {
    let mut parity = false;
    for q in a.ones() {
        // X part of a against Z part of b, and Z part of a against X part of b
        if q < n {
            parity ^= b.get(n + q);
        } else {
            parity ^= b.get(q - n);
        }
    }
    parity
}

/// Calls `f` with every error of weight exactly `w` (qubits ascending, Paulis
/// in X, Y, Z order) and its syndrome.
fn for_each_error(tc: &TorusCode, w: usize, f: &mut dyn FnMut(&[(usize, Pauli)], &BitVec)) {
    fn rec(
        tc: &TorusCode,
        start: usize,
        left: usize,
        e: &mut SparseError,
        syn: &BitVec,
        f: &mut dyn FnMut(&[(usize, Pauli)], &BitVec),
    ) {
        if left == 0 {
            f(e, syn);
            return;
        }
        let n = tc.qubits();
        for q in start..=n - left {
            for (k, p) in Pauli::ALL.into_iter().enumerate() {
                let mut next = syn.clone();
                next.xor_assign(&tc.single[q][k]);
                e.push((q, p));
                rec(tc, q + 1, left - 1, e, &next, f);
                e.pop();
            }
        }
    }
    let mut e = Vec::with_capacity(w);
    rec(tc, 0, w, &mut e, &BitVec::zeros(tc.size * tc.size), f);
}

#[derive(Clone, Debug)]
pub struct Decoder {
    pub t: usize,
    table: BTreeMap<Vec<u64>, SparseError>,
}

impl Decoder {
    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Correction for a syndrome, if it was seen while building the table.
    pub fn decode(&self, syndrome: &BitVec) -> Option<&SparseError> {
        self.table.get(syndrome.words())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Failure {
    pub error: Vec<(usize, Pauli)>,
    pub correction: Vec<(usize, Pauli)>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CorrectionReport {
    pub size: usize,
    pub t: usize,
    pub errors_checked: u64,
    pub distinct_syndromes: usize,
    pub failure_count: u64,
    /// The first few failures, each an error and the correction it collides with.
    pub failures: Vec<Failure>,
}

impl CorrectionReport {
    pub fn all_corrected(&self) -> bool {
        self.failure_count == 0
    }
}
