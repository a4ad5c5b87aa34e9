//! Search over short products of the elementary automorphisms.
//!
//! Products are enumerated breadth-first by length. Only products whose
//! matrix has not been seen before are yielded or extended, so each
//! distinct matrix appears once, under its first factor list in
//! length-then-lexicographic order.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use crate::codes::{raw_weight_stats, CodeFamily, WeightStats};
use crate::distance::{DistanceResult, DistanceSearch, SearchLimits, SearchStats};
use crate::error::Error;
use crate::symplectic::SymplecticMap;

pub const MAX_PRODUCT_LEN: usize = 5;
pub const ELEMENTARY_COUNT: u8 = 16;

/// Which weights a candidate's stats were computed with.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(rename_all = "snake_case"))]
pub enum WeightPolicy {
    Raw,
    Reduced,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Candidate {
    pub factors: Vec<u8>,
    pub map: SymplecticMap,
    pub stats: WeightStats,
    pub policy: WeightPolicy,
    /// Lightest hopping term, a rough distance estimate.
    pub estimated_d: usize,
}

impl Candidate {
    pub fn from_factors(factors: &[u8]) -> Result<Candidate, Error> {
        let map = SymplecticMap::product_of(factors)?;
        Ok(Self::raw(factors.to_vec(), map))
    }

    fn raw(factors: Vec<u8>, map: SymplecticMap) -> Candidate {
        let stats = raw_weight_stats(&map);
        Candidate { factors, map, stats, policy: WeightPolicy::Raw, estimated_d: stats.wt_min }
    }

    /// Recomputes the stats with stabilizer reduction.
    pub fn reduced(mut self) -> Candidate {
        if self.policy == WeightPolicy::Reduced {
            return self;
        }
        let code = CodeFamily::build(&self.map).expect("products of elementaries are automorphisms");
        self.stats = code.weight_stats();
        self.estimated_d = self.stats.wt_min;
        self.policy = WeightPolicy::Reduced;
        self
    }

    pub fn label(&self) -> alloc::string::String {
        if self.factors.is_empty() {
            return "I".into();
        }
        let parts: Vec<alloc::string::String> = self.factors.iter().map(|k| alloc::format!("A{k}")).collect();
        parts.join("*")
    }
}

/// Iterator over distinct products of length `1..=max_len`, with raw stats.
pub struct ProductEnumerator {
    max_len: usize,
    elementaries: Vec<SymplecticMap>,
    seen: BTreeSet<Vec<u8>>,
    frontier: Vec<(Vec<u8>, SymplecticMap)>,
    next: Vec<(Vec<u8>, SymplecticMap)>,
    len: usize,
    cursor: usize,
    k: u8,
}

impl ProductEnumerator {
    fn new(max_len: usize) -> Self {
        let mut seen = BTreeSet::new();
        let id = SymplecticMap::identity();
        seen.insert(matrix_key(&id));
        ProductEnumerator {
            max_len,
            elementaries: (1..=ELEMENTARY_COUNT).map(|k| SymplecticMap::elementary(k).expect("in range")).collect(),
            seen,
            frontier: alloc::vec![(Vec::new(), id)],
            next: Vec::new(),
            len: 1,
            cursor: 0,
            k: 0,
        }
    }

    /// Distinct matrices seen so far, identity included.
    pub fn distinct_seen(&self) -> usize {
        self.seen.len()
    }
}

impl Iterator for ProductEnumerator {
    type Item = Candidate;

    fn next(&mut self) -> Option<Candidate> {
        loop {
            if self.len > self.max_len {
                return None;
            }
            if self.cursor == self.frontier.len() {
                self.frontier = core::mem::take(&mut self.next);
                self.cursor = 0;
                self.k = 0;
                self.len += 1;
                continue;
            }
            let (prefix, pm) = &self.frontier[self.cursor];
            let k = self.k;
            self.k += 1;
            if self.k == ELEMENTARY_COUNT {
                self.k = 0;
                self.cursor += 1;
            }
            let map = pm.compose(&self.elementaries[k as usize]);
            if !self.seen.insert(matrix_key(&map)) {
                continue;
            }
            let mut factors = prefix.clone();
            factors.push(k + 1);
            if self.len < self.max_len {
                self.next.push((factors.clone(), map.clone()));
            }
            return Some(Candidate::raw(factors, map));
        }
    }
}

/// All distinct products of `1..=max_len` elementaries.
pub fn enumerate_products(max_len: usize) -> Result<ProductEnumerator, Error> {
    if !(1..=MAX_PRODUCT_LEN).contains(&max_len) {
        return Err(Error::Parse {
            position: 0,
            message: alloc::format!("product length must be 1..={MAX_PRODUCT_LEN}, got {max_len}"),
        });
    }
    Ok(ProductEnumerator::new(max_len))
}

/// Keeps candidates whose reduced lightest hopping weight is at least
/// `target_d`. Raw weights bound reduced weights from above, so the cheap
/// raw filter runs first.
pub fn filter_candidates<I: IntoIterator<Item = Candidate>>(candidates: I, target_d: usize) -> Vec<Candidate> {
    candidates
        .into_iter()
        .filter(|c| c.policy == WeightPolicy::Reduced || raw_weight_stats(&c.map).wt_min >= target_d)
        .map(Candidate::reduced)
        .filter(|c| c.estimated_d >= target_d)
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct Confirmation {
    pub candidate: Candidate,
    pub max_weight: usize,
    pub result: DistanceResult,
    pub nodes: u64,
}

/// Runs the distance search on one candidate with `max_weight = estimated_d + 1`.
pub fn confirm_one(candidate: Candidate, limits: SearchLimits) -> Confirmation {
    let code = CodeFamily::build(&candidate.map).expect("products of elementaries are automorphisms");
    let max_weight = candidate.estimated_d + 1;
    let (result, SearchStats { nodes, .. }) = DistanceSearch::new(&code).code_distance(max_weight, limits);
    Confirmation { candidate, max_weight, result, nodes }
}

pub fn confirm<I: IntoIterator<Item = Candidate>>(candidates: I, limits: SearchLimits) -> Vec<Confirmation> {
    candidates.into_iter().map(|c| confirm_one(c, limits)).collect()
}

/// Compact byte encoding of a matrix, used only for equality.
fn matrix_key(m: &SymplecticMap) -> Vec<u8> {
    let mut out = Vec::with_capacity(64);
    for row in m.entries() {
        for p in row {
            out.extend_from_slice(&(p.len() as u16).to_le_bytes());
            for t in p.terms() {
                match (i8::try_from(t.i), i8::try_from(t.j)) {
                    (Ok(i), Ok(j)) if i != i8::MIN => out.extend_from_slice(&[i as u8, j as u8]),
                    _ => {
                        out.push(i8::MIN as u8);
                        out.extend_from_slice(&t.i.to_le_bytes());
                        out.extend_from_slice(&t.j.to_le_bytes());
                    }
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn length_one_gives_all_elementaries() {
        let all: Vec<Candidate> = enumerate_products(1).unwrap().collect();
        assert_eq!(all.len(), 16);
        assert!(all.iter().all(|c| c.map.is_automorphism()));
        assert_eq!(all[0].factors, [1]);
    }

    #[test]
    fn length_two_is_duplicate_free() {
        let mut it = enumerate_products(2).unwrap();
        let all: Vec<Candidate> = it.by_ref().collect();
        let distinct: BTreeSet<&SymplecticMap> = all.iter().map(|c| &c.map).collect();
        assert_eq!(distinct.len(), all.len());
        assert!(all.len() <= 16 + 256);
        assert_eq!(it.distinct_seen(), all.len() + 1);
        // every ordered pair's matrix is present
        for a in 1..=16u8 {
            for b in 1..=16u8 {
                let m = SymplecticMap::product_of(&[a, b]).unwrap();
                assert!(m == SymplecticMap::identity() || distinct.contains(&m), "{a} {b}");
            }
        }
        let c = all.iter().find(|c| c.factors == [4, 7]).unwrap().clone();
        assert_eq!(c.stats.wt_min, 5);
        let c = c.reduced();
        assert_eq!((c.stats.wt_min, c.stats.wt_max), (5, 6));
    }

    #[test]
    fn filter_examples() {
        let kept = filter_candidates(enumerate_products(1).unwrap(), 3);
        assert!(kept.iter().any(|c| c.factors == [1]));
        assert!(kept.iter().all(|c| c.policy == WeightPolicy::Reduced && c.estimated_d >= 3));
        assert!(filter_candidates(enumerate_products(2).unwrap(), 100).is_empty());
        let d7 = Candidate::from_factors(&[1, 11, 5, 14, 9]).unwrap();
        let kept = filter_candidates([d7], 7);
        assert_eq!((kept[0].stats.wt_min, kept[0].stats.wt_max), (7, 23));
    }

    #[test]
    fn confirm_small_codes() {
        let cands = [Candidate::from_factors(&[1]).unwrap(), Candidate::from_factors(&[4, 7]).unwrap()];
        let out = confirm(filter_candidates(cands, 3), SearchLimits::default());
        assert_eq!(out[0].result.exact(), Some(3));
        assert_eq!(out[1].result.exact(), Some(4));
        assert_eq!(out[1].max_weight, 6);
    }

    #[test]
    fn labels() {
        assert_eq!(Candidate::from_factors(&[9, 3, 7, 14]).unwrap().label(), "A9*A3*A7*A14");
    }
}
