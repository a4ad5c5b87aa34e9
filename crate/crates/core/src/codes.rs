//! Code families obtained by pushing the base code through an automorphism.

use alloc::string::String;
use alloc::vec::Vec;

use crate::error::Error;
use crate::laurent::{LaurentPoly, Monomial};
use crate::pauli::{base_code, BaseCode, EdgeKind, PauliVec};
use crate::symplectic::SymplecticMap;

/// Box radius used for stabilizer-coset weight reduction unless overridden.
pub const DEFAULT_REDUCTION_RADIUS: u32 = 1;

/// Above this many candidate shifts the coset search keeps only the shifts
/// whose stabilizer translate touches the operator.
const EXHAUSTIVE_SHIFT_LIMIT: usize = 24;

/// Labels of the nine nearest-neighbour and on-site terms, in order.
pub const NN_LABELS: [&str; 9] = [
    "U1",
    "U2",
    "W",
    "U1+W",
    "U1+y^-1*W",
    "U1+y^-1*W+W",
    "U2+W",
    "U2+x^-1*W",
    "U2+x^-1*W+W",
];

/// Index of the flux term in [`NN_LABELS`].
pub const FLUX_INDEX: usize = 2;

/// The nine untransformed terms: hoppings in both directions dressed with
/// neighbouring fluxes, and the flux itself.
pub fn base_nn_terms() -> [PauliVec; 9] {
    let BaseCode { u1, u2, w, .. } = base_code();
    let yb_w = w.translate(0, -1);
    let xb_w = w.translate(-1, 0);
    [
        u1.clone(),
        u2.clone(),
        w.clone(),
        u1.add(&w),
        u1.add(&yb_w),
        u1.add(&yb_w).add(&w),
        u2.add(&w),
        u2.add(&xb_w),
        u2.add(&xb_w).add(&w),
    ]
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct WeightStats {
    /// Lightest hopping term.
    pub wt_min: usize,
    /// Heaviest hopping term.
    pub wt_max: usize,
    /// Flux (fermion occupation) term.
    pub occupation: usize,
    pub stabilizer: usize,
}

impl WeightStats {
    fn from_weights(weights: &[usize; 9], stabilizer: usize) -> Self {
        let hopping = weights.iter().enumerate().filter(|(k, _)| *k != FLUX_INDEX).map(|(_, w)| *w);
        WeightStats {
            wt_min: hopping.clone().min().unwrap_or(0),
            wt_max: hopping.max().unwrap_or(0),
            occupation: weights[FLUX_INDEX],
            stabilizer,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct NnTerm {
    pub label: String,
    /// Image of the base term under the map.
    pub raw: PauliVec,
    /// Lightest representative of `raw` modulo nearby stabilizer translates.
    pub reduced: PauliVec,
}

#[derive(Clone, Debug, PartialEq, Eq)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct CodeFamily {
    pub map: SymplecticMap,
    pub u1: PauliVec,
    pub u2: PauliVec,
    pub w: PauliVec,
    pub stabilizer: PauliVec,
    pub nn_terms: Vec<NnTerm>,
    pub reduction_radius: u32,
}

impl CodeFamily {
    /// Builds the code for `map` with the default reduction radius.
    pub fn build(map: &SymplecticMap) -> Result<CodeFamily, Error> {
        Self::build_with_radius(map, DEFAULT_REDUCTION_RADIUS)
    }

    pub fn build_with_radius(map: &SymplecticMap, radius: u32) -> Result<CodeFamily, Error> {
        let check = map.check();
        if !check.passed() {
            let mut names = String::new();
            for (k, name) in check.failures().enumerate() {
                if k > 0 {
                    names.push_str(", ");
                }
                names.push_str(name);
            }
            return Err(Error::NotAutomorphism(names));
        }
        let base = base_code();
        let stabilizer = map.apply(&base.g);
        let nn_terms = base_nn_terms()
            .iter()
            .zip(NN_LABELS)
            .map(|(t, label)| {
                let raw = map.apply(t);
                let reduced = reduce_by_stabilizer(&raw, &stabilizer, radius);
                NnTerm { label: label.into(), raw, reduced }
            })
            .collect();
        Ok(CodeFamily {
            map: map.clone(),
            u1: map.apply(&base.u1),
            u2: map.apply(&base.u2),
            w: map.apply(&base.w),
            stabilizer,
            nn_terms,
            reduction_radius: radius,
        })
    }

    /// The original bosonization.
    pub fn original() -> CodeFamily {
        Self::build(&SymplecticMap::identity()).expect("identity is an automorphism")
    }

    pub fn logicals(&self) -> [&PauliVec; 3] {
        [&self.u1, &self.u2, &self.w]
    }

    /// Weights after stabilizer reduction.
    pub fn weight_stats(&self) -> WeightStats {
        let mut w = [0; 9];
        for (slot, t) in w.iter_mut().zip(&self.nn_terms) {
            *slot = t.reduced.weight();
        }
        WeightStats::from_weights(&w, self.stabilizer.weight())
    }

    /// Weights of the plain images, no reduction.
    pub fn raw_weight_stats(&self) -> WeightStats {
        let mut w = [0; 9];
        for (slot, t) in w.iter_mut().zip(&self.nn_terms) {
            *slot = t.raw.weight();
        }
        WeightStats::from_weights(&w, self.stabilizer.weight())
    }
}

/// Stats of the raw images only; skips the coset search.
pub fn raw_weight_stats(map: &SymplecticMap) -> WeightStats {
    let mut w = [0; 9];
    for (slot, t) in w.iter_mut().zip(base_nn_terms().iter()) {
        *slot = map.apply(t).weight();
    }
    WeightStats::from_weights(&w, map.apply(&base_code().g).weight())
}

/// Minimum-weight element of `{ v + p*g : supp(p) in [-r, r]^2 }`, ties
/// broken by the derived ordering of [`PauliVec`].
pub fn reduce_by_stabilizer(v: &PauliVec, g: &PauliVec, radius: u32) -> PauliVec {
    if v.is_zero() || g.is_zero() {
        return v.clone();
    }
    let r = radius as i32;
    let mut shifts: Vec<Monomial> = Vec::new();
    for i in -r..=r {
        for j in -r..=r {
            shifts.push(Monomial::new(i, j));
        }
    }
    if shifts.len() > EXHAUSTIVE_SHIFT_LIMIT {
        let touched = v.sites();
        let g_sites = g.sites();
        shifts.retain(|m| {
            g_sites.iter().any(|s| {
                let at = s.at.times(*m);
                touched.iter().any(|t| t.at == at && t.edge == s.edge)
            })
        });
        shifts.truncate(EXHAUSTIVE_SHIFT_LIMIT);
    }
    CosetSearch::new(v, g, &shifts).run()
}

/// Gray-code walk over all subsets of stabilizer shifts on a dense patch.
struct CosetSearch<'a> {
    v: &'a PauliVec,
    g: &'a PauliVec,
    shifts: &'a [Monomial],
    origin: (i32, i32),
    width: i32,
    x: Vec<bool>,
    z: Vec<bool>,
    // per shift: (edge index, flips x, flips z)
    flips: Vec<Vec<(usize, bool, bool)>>,
}

impl<'a> CosetSearch<'a> {
    fn new(v: &'a PauliVec, g: &'a PauliVec, shifts: &'a [Monomial]) -> Self {
        let (vb, gb) = (v.bounding_box().unwrap(), g.bounding_box().unwrap());
        let (mut imin, mut imax, mut jmin, mut jmax) = vb;
        for m in shifts {
            imin = imin.min(gb.0 + m.i);
            imax = imax.max(gb.1 + m.i);
            jmin = jmin.min(gb.2 + m.j);
            jmax = jmax.max(gb.3 + m.j);
        }
        let width = imax - imin + 1;
        let height = jmax - jmin + 1;
        let cells = (width * height * 2) as usize;
        let mut s = CosetSearch {
            v,
            g,
            shifts,
            origin: (imin, jmin),
            width,
            x: alloc::vec![false; cells],
            z: alloc::vec![false; cells],
            flips: Vec::with_capacity(shifts.len()),
        };
        for site in v.sites() {
            let k = s.index(site.at, site.edge);
            s.x[k] = site.pauli.has_x();
            s.z[k] = site.pauli.has_z();
        }
        let g_sites = g.sites();
        for m in shifts {
            let f = g_sites
                .iter()
                .map(|site| (s.index(site.at.times(*m), site.edge), site.pauli.has_x(), site.pauli.has_z()))
                .collect();
            s.flips.push(f);
        }
        s
    }

    fn index(&self, at: Monomial, edge: EdgeKind) -> usize {
        let (i, j) = (at.i - self.origin.0, at.j - self.origin.1);
        ((j * self.width + i) * 2) as usize + edge.index()
    }

    fn run(mut self) -> PauliVec {
        let n = self.shifts.len();
        let mut weight = self.v.weight() as isize;
        let mut best_weight = weight;
        let mut best = self.v.clone();
        let mut chosen = alloc::vec![false; n];
        let total: u64 = 1 << n;
        for step in 1..total {
            let bit = step.trailing_zeros() as usize;
            chosen[bit] = !chosen[bit];
            for &(k, fx, fz) in &self.flips[bit] {
                let before = self.x[k] | self.z[k];
                self.x[k] ^= fx;
                self.z[k] ^= fz;
                let after = self.x[k] | self.z[k];
                weight += after as isize - before as isize;
            }
            if weight <= best_weight {
                let candidate = self.materialize(&chosen);
                if weight < best_weight || candidate < best {
                    best_weight = weight;
                    best = candidate;
                }
            }
        }
        best
    }

    fn materialize(&self, chosen: &[bool]) -> PauliVec {
        let p = LaurentPoly::from_monomials(
            self.shifts.iter().zip(chosen).filter(|(_, c)| **c).map(|(m, _)| *m),
        );
        self.v.add(&self.g.scale(&p))
    }
}
