//! Translation classes of Pauli operators as vectors over the Laurent ring.
//!
//! A [`PauliVec`] `[a1, a2 | c1, c2]` places `X` on the horizontal edges
//! listed in `a1` and on the vertical edges listed in `a2`, and `Z` on the
//! edges listed in `c1`/`c2`. The horizontal edge at monomial `x^m y^n` runs
//! from vertex `(m, n)` to `(m + 1, n)`, the vertical one from `(m, n)` to
//! `(m, n + 1)`. An edge present in both the X and Z parts carries a `Y`.
//! Phases are not tracked.
//!
//! # Offset convention
//!
//! `dot(v1, v2)` has a coefficient at `x^m y^n` exactly when
//! `translate(v1, m, n)` anticommutes with `v2` (equivalently, when `v1`
//! anticommutes with `translate(v2, -m, -n)`). With `v1 = G` the stabilizer,
//! the support of `dot(G, E)` is therefore the set of vertices `v` whose
//! stabilizer `G_v = translate(G, v)` is violated by `E`.

use alloc::vec::Vec;
use core::fmt;

use crate::laurent::{LaurentPoly, Monomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum EdgeKind {
    /// `(m, n) -> (m + 1, n)`, vector component 1.
    Horizontal,
    /// `(m, n) -> (m, n + 1)`, vector component 2.
    Vertical,
}

impl EdgeKind {
    pub const ALL: [EdgeKind; 2] = [EdgeKind::Horizontal, EdgeKind::Vertical];

    pub fn index(self) -> usize {
        match self {
            EdgeKind::Horizontal => 0,
            EdgeKind::Vertical => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::X, Pauli::Y, Pauli::Z];

    pub fn from_bits(x: bool, z: bool) -> Option<Pauli> {
        match (x, z) {
            (false, false) => None,
            (true, false) => Some(Pauli::X),
            (true, true) => Some(Pauli::Y),
            (false, true) => Some(Pauli::Z),
        }
    }

    pub fn has_x(self) -> bool {
        matches!(self, Pauli::X | Pauli::Y)
    }

    pub fn has_z(self) -> bool {
        matches!(self, Pauli::Y | Pauli::Z)
    }

    /// Single-qubit anticommutation.
    pub fn anticommutes(self, other: Pauli) -> bool {
        self != other
    }

    pub fn symbol(self) -> char {
        match self {
            Pauli::X => 'X',
            Pauli::Y => 'Y',
            Pauli::Z => 'Z',
        }
    }
}

/// One non-identity Pauli factor of an operator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Site {
    pub at: Monomial,
    pub edge: EdgeKind,
    pub pauli: Pauli,
}

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
pub struct PauliVec {
    pub a1: LaurentPoly,
    pub a2: LaurentPoly,
    pub c1: LaurentPoly,
    pub c2: LaurentPoly,
}

impl PauliVec {
    pub fn new(a1: LaurentPoly, a2: LaurentPoly, c1: LaurentPoly, c2: LaurentPoly) -> Self {
        PauliVec { a1, a2, c1, c2 }
    }

    pub fn zero() -> Self {
        PauliVec::default()
    }

    pub fn from_components([a1, a2, c1, c2]: [LaurentPoly; 4]) -> Self {
        PauliVec { a1, a2, c1, c2 }
    }

    pub fn components(&self) -> [&LaurentPoly; 4] {
        [&self.a1, &self.a2, &self.c1, &self.c2]
    }

    pub fn into_components(self) -> [LaurentPoly; 4] {
        [self.a1, self.a2, self.c1, self.c2]
    }

    /// A single Pauli on the edge of the given kind at `x^m y^n`.
    pub fn single(edge: EdgeKind, pauli: Pauli, m: i32, n: i32) -> Self {
        let mut v = PauliVec::zero();
        v.toggle(Site { at: Monomial::new(m, n), edge, pauli });
        v
    }

    /// Multiplies a single Pauli factor into the operator (up to phase).
    pub fn toggle(&mut self, site: Site) {
        let (xp, zp) = match site.edge {
            EdgeKind::Horizontal => (&mut self.a1, &mut self.c1),
            EdgeKind::Vertical => (&mut self.a2, &mut self.c2),
        };
        if site.pauli.has_x() {
            xp.flip(site.at);
        }
        if site.pauli.has_z() {
            zp.flip(site.at);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.components().iter().all(|p| p.is_zero())
    }

    pub fn add(&self, other: &PauliVec) -> PauliVec {
        PauliVec {
            a1: &self.a1 + &other.a1,
            a2: &self.a2 + &other.a2,
            c1: &self.c1 + &other.c1,
            c2: &self.c2 + &other.c2,
        }
    }

    /// Componentwise product with a ring element.
    pub fn scale(&self, p: &LaurentPoly) -> PauliVec {
        PauliVec {
            a1: &self.a1 * p,
            a2: &self.a2 * p,
            c1: &self.c1 * p,
            c2: &self.c2 * p,
        }
    }

    pub fn translate(&self, m: i32, n: i32) -> PauliVec {
        PauliVec {
            a1: self.a1.shift(m, n),
            a2: self.a2.shift(m, n),
            c1: self.c1.shift(m, n),
            c2: self.c2.shift(m, n),
        }
    }

    /// Number of edges carrying a non-identity Pauli.
    pub fn weight(&self) -> usize {
        union_len(&self.a1, &self.c1) + union_len(&self.a2, &self.c2)
    }

    /// Non-identity factors, ordered by edge kind then position.
    pub fn sites(&self) -> Vec<Site> {
        let mut out = Vec::with_capacity(self.weight());
        for (edge, xp, zp) in [
            (EdgeKind::Horizontal, &self.a1, &self.c1),
            (EdgeKind::Vertical, &self.a2, &self.c2),
        ] {
            merge_sites(edge, xp.terms(), zp.terms(), &mut out);
        }
        out
    }

    pub fn from_sites<I: IntoIterator<Item = Site>>(sites: I) -> PauliVec {
        let mut v = PauliVec::zero();
        for s in sites {
            v.toggle(s);
        }
        v
    }

    /// Symplectic dot product `bar(v1)^T Lambda v2` over F2.
    pub fn dot(&self, other: &PauliVec) -> LaurentPoly {
        let mut terms = Vec::new();
        for (p, q) in [
            (&self.a1, &other.c1),
            (&self.a2, &other.c2),
            (&self.c1, &other.a1),
            (&self.c2, &other.a2),
        ] {
            for s in p.terms() {
                let s = s.inverse();
                for t in q.terms() {
                    terms.push(s.times(*t));
                }
            }
        }
        LaurentPoly::from_monomials(terms)
    }

    /// True iff the operators themselves (no translation) commute.
    pub fn commutes_at_origin(&self, other: &PauliVec) -> bool {
        !self.dot(other).constant_term()
    }

    /// Bounding box of all four components.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        self.components()
            .iter()
            .filter_map(|p| p.bounding_box())
            .reduce(|a, b| (a.0.min(b.0), a.1.max(b.1), a.2.min(b.2), a.3.max(b.3)))
    }
}

fn union_len(p: &LaurentPoly, q: &LaurentPoly) -> usize {
    let (a, b) = (p.terms(), q.terms());
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
        n += 1;
    }
    n + (a.len() - i) + (b.len() - j)
}

fn merge_sites(edge: EdgeKind, xs: &[Monomial], zs: &[Monomial], out: &mut Vec<Site>) {
    let (mut i, mut j) = (0, 0);
    loop {
        let (at, pauli) = match (xs.get(i), zs.get(j)) {
            (None, None) => break,
            (Some(&a), None) => {
                i += 1;
                (a, Pauli::X)
            }
            (None, Some(&b)) => {
                j += 1;
                (b, Pauli::Z)
            }
            (Some(&a), Some(&b)) => match a.cmp(&b) {
                core::cmp::Ordering::Less => {
                    i += 1;
                    (a, Pauli::X)
                }
                core::cmp::Ordering::Greater => {
                    j += 1;
                    (b, Pauli::Z)
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (a, Pauli::Y)
                }
            },
        };
        out.push(Site { at, edge, pauli });
    }
}

impl fmt::Debug for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {} | {}, {}]", self.a1, self.a2, self.c1, self.c2)
    }
}

impl fmt::Display for PauliVec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// Hopping operators, flux and vertex stabilizer of the untransformed code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseCode {
    /// Hopping across a horizontal edge, `[1, 0 | 0, y^-1]`.
    pub u1: PauliVec,
    /// Hopping across a vertical edge, `[0, 1 | x^-1, 0]`.
    pub u2: PauliVec,
    /// Plaquette flux, `[0, 0 | 1 + y, 1 + x]`.
    pub w: PauliVec,
    /// Vertex constraint, `[1 + x^-1, 1 + y^-1 | 1 + y, 1 + x]`.
    pub g: PauliVec,
}

pub fn base_code() -> BaseCode {
    use crate::poly;
    BaseCode {
        u1: PauliVec::new(poly![(0, 0)], poly![], poly![], poly![(0, -1)]),
        u2: PauliVec::new(poly![], poly![(0, 0)], poly![(-1, 0)], poly![]),
        w: PauliVec::new(poly![], poly![], poly![(0, 0), (0, 1)], poly![(0, 0), (1, 0)]),
        g: PauliVec::new(
            poly![(0, 0), (-1, 0)],
            poly![(0, 0), (0, -1)],
            poly![(0, 0), (0, 1)],
            poly![(0, 0), (1, 0)],
        ),
    }
}
