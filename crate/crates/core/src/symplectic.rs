//! 4x4 matrices over the Laurent ring acting on [`PauliVec`]s.
//!
//! Rows and columns are ordered `(X horizontal, X vertical, Z horizontal,
//! Z vertical)`, the same order as the vector components. A map is a
//! symplectic automorphism when `bar(M)^T Lambda M = Lambda`; writing
//! `M = [[a, b], [c, d]]` in 2x2 blocks this is
//!
//! * `a' c = c' a`
//! * `a' d + c' b = I`
//! * `b' d = d' b`
//!
//! where `'` is transpose combined with `x, y -> x^-1, y^-1`.

use core::fmt;

use crate::error::Error;
use crate::laurent::LaurentPoly;
use crate::pauli::PauliVec;
use crate::poly;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct SymplecticMap {
    entries: [[LaurentPoly; 4]; 4],
}

type Block = [[LaurentPoly; 2]; 2];

/// Outcome of the three block identities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct AutomorphismCheck {
    /// `a' c = c' a`
    pub ac_symmetric: bool,
    /// `a' d + c' b = I`
    pub ad_cb_identity: bool,
    /// `b' d = d' b`
    pub bd_symmetric: bool,
}

impl AutomorphismCheck {
    pub fn passed(&self) -> bool {
        self.ac_symmetric && self.ad_cb_identity && self.bd_symmetric
    }

    /// Names of the failed identities.
    pub fn failures(&self) -> impl Iterator<Item = &'static str> {
        [
            (!self.ac_symmetric).then_some("a'c = c'a"),
            (!self.ad_cb_identity).then_some("a'd + c'b = I"),
            (!self.bd_symmetric).then_some("b'd = d'b"),
        ]
        .into_iter()
        .flatten()
    }
}

impl SymplecticMap {
    pub fn from_entries(entries: [[LaurentPoly; 4]; 4]) -> Self {
        SymplecticMap { entries }
    }

    pub fn identity() -> Self {
        let mut entries: [[LaurentPoly; 4]; 4] = Default::default();
        for (k, row) in entries.iter_mut().enumerate() {
            row[k] = LaurentPoly::one();
        }
        SymplecticMap { entries }
    }

    /// Identity plus the listed off-diagonal entries.
    fn unit_with(extra: [((usize, usize), LaurentPoly); 2]) -> Self {
        let mut m = SymplecticMap::identity();
        for ((r, c), p) in extra {
            m.entries[r][c] = p;
        }
        m
    }

    pub fn entries(&self) -> &[[LaurentPoly; 4]; 4] {
        &self.entries
    }

    pub fn entry(&self, row: usize, col: usize) -> &LaurentPoly {
        &self.entries[row][col]
    }

    pub fn set_entry(&mut self, row: usize, col: usize, p: LaurentPoly) {
        self.entries[row][col] = p;
    }

    fn block(&self, r0: usize, c0: usize) -> Block {
        [
            [self.entries[r0][c0].clone(), self.entries[r0][c0 + 1].clone()],
            [self.entries[r0 + 1][c0].clone(), self.entries[r0 + 1][c0 + 1].clone()],
        ]
    }

    pub fn check(&self) -> AutomorphismCheck {
        let (a, b) = (self.block(0, 0), self.block(0, 2));
        let (c, d) = (self.block(2, 0), self.block(2, 2));
        let (at, bt, ct, dt) = (adjoint(&a), adjoint(&b), adjoint(&c), adjoint(&d));
        let one = LaurentPoly::one();
        let eye: Block = [[one.clone(), LaurentPoly::zero()], [LaurentPoly::zero(), one]];
        AutomorphismCheck {
            ac_symmetric: block_mul(&at, &c) == block_mul(&ct, &a),
            ad_cb_identity: block_add(&block_mul(&at, &d), &block_mul(&ct, &b)) == eye,
            bd_symmetric: block_mul(&bt, &d) == block_mul(&dt, &b),
        }
    }

    pub fn is_automorphism(&self) -> bool {
        self.check().passed()
    }

    /// Matrix product `self * rhs`; applying the result applies `rhs` first.
    pub fn compose(&self, rhs: &SymplecticMap) -> SymplecticMap {
        let mut entries: [[LaurentPoly; 4]; 4] = Default::default();
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, out) in row.iter_mut().enumerate() {
                let mut acc = LaurentPoly::zero();
                for k in 0..4 {
                    let (p, q) = (&self.entries[r][k], &rhs.entries[k][c]);
                    if !p.is_zero() && !q.is_zero() {
                        acc += &(p * q);
                    }
                }
                *out = acc;
            }
        }
        SymplecticMap { entries }
    }

    pub fn apply(&self, v: &PauliVec) -> PauliVec {
        let comps = v.components();
        let row = |r: usize| {
            let mut acc = LaurentPoly::zero();
            for (k, q) in comps.iter().enumerate() {
                let p = &self.entries[r][k];
                if !p.is_zero() && !q.is_zero() {
                    acc += &(p * *q);
                }
            }
            acc
        };
        PauliVec::from_components([row(0), row(1), row(2), row(3)])
    }

    /// Conjugate transpose of the whole matrix.
    pub fn adjoint(&self) -> SymplecticMap {
        let mut entries: [[LaurentPoly; 4]; 4] = Default::default();
        for (r, row) in entries.iter_mut().enumerate() {
            for (c, out) in row.iter_mut().enumerate() {
                *out = self.entries[c][r].bar();
            }
        }
        SymplecticMap { entries }
    }

    /// One of the sixteen elementary automorphisms, `k` in `1..=16`.
    pub fn elementary(k: u8) -> Result<SymplecticMap, Error> {
        let m = |i, j| LaurentPoly::monomial(i, j);
        // (row, col) positions: 0 = X1, 1 = X2, 2 = Z1, 3 = Z2
        let map = match k {
            // Z attached to X: lower-left block
            1 => Self::unit_with([((2, 1), m(0, 0)), ((3, 0), m(0, 0))]),
            2 => Self::unit_with([((2, 1), m(0, 1)), ((3, 0), m(0, -1))]),
            3 => Self::unit_with([((2, 1), m(-1, 0)), ((3, 0), m(1, 0))]),
            4 => Self::unit_with([((2, 1), m(-1, 1)), ((3, 0), m(1, -1))]),
            // X attached to Z: upper-right block
            5 => Self::unit_with([((0, 3), m(-1, 1)), ((1, 2), m(1, -1))]),
            6 => Self::unit_with([((0, 3), m(0, 1)), ((1, 2), m(0, -1))]),
            7 => Self::unit_with([((0, 3), m(0, 0)), ((1, 2), m(0, 0))]),
            8 => Self::unit_with([((0, 3), m(-1, 0)), ((1, 2), m(1, 0))]),
            // CNOT-like on the diagonal blocks, horizontal controls vertical
            9 => Self::unit_with([((1, 0), m(0, 0)), ((2, 3), m(0, 0))]),
            10 => Self::unit_with([((1, 0), m(1, 0)), ((2, 3), m(-1, 0))]),
            11 => Self::unit_with([((1, 0), m(0, -1)), ((2, 3), m(0, 1))]),
            12 => Self::unit_with([((1, 0), m(1, -1)), ((2, 3), m(-1, 1))]),
            // vertical controls horizontal
            13 => Self::unit_with([((0, 1), m(0, 0)), ((3, 2), m(0, 0))]),
            14 => Self::unit_with([((0, 1), m(-1, 0)), ((3, 2), m(1, 0))]),
            15 => Self::unit_with([((0, 1), m(0, 1)), ((3, 2), m(0, -1))]),
            16 => Self::unit_with([((0, 1), m(-1, 1)), ((3, 2), m(1, -1))]),
            _ => return Err(Error::ElementaryIndex(k)),
        };
        Ok(map)
    }

    /// Ordered product `elementary(f[0]) * elementary(f[1]) * ...`.
    pub fn product_of(factors: &[u8]) -> Result<SymplecticMap, Error> {
        let mut acc = SymplecticMap::identity();
        for &k in factors {
            acc = acc.compose(&SymplecticMap::elementary(k)?);
        }
        Ok(acc)
    }

    /// Looks up `A1`..`A16`, `A_d6`, `A_d7` or `I`.
    pub fn named(name: &str) -> Option<SymplecticMap> {
        match name {
            "I" | "Id" => Some(SymplecticMap::identity()),
            "A_d6" => Some(published_d6()),
            "A_d7" => Some(published_d7()),
            _ => {
                let k: u8 = name.strip_prefix('A')?.parse().ok()?;
                SymplecticMap::elementary(k).ok()
            }
        }
    }
}

fn adjoint(b: &Block) -> Block {
    [[b[0][0].bar(), b[1][0].bar()], [b[0][1].bar(), b[1][1].bar()]]
}

fn block_mul(p: &Block, q: &Block) -> Block {
    let cell = |r: usize, c: usize| &(&p[r][0] * &q[0][c]) + &(&p[r][1] * &q[1][c]);
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

fn block_add(p: &Block, q: &Block) -> Block {
    let cell = |r: usize, c: usize| &p[r][c] + &q[r][c];
    [[cell(0, 0), cell(0, 1)], [cell(1, 0), cell(1, 1)]]
}

/// The distance-6 automorphism as published (equal to `A1*A5*A14*A1`).
pub fn published_d6() -> SymplecticMap {
    SymplecticMap::from_entries([
        [poly![(0, 0), (-1, 1)], poly![(-1, 0), (0, 1)], poly![(0, 1)], poly![(-1, 1)]],
        [poly![], poly![(0, 0), (1, -1)], poly![(1, -1)], poly![]],
        [poly![], poly![(1, -1)], poly![(0, 0), (1, -1)], poly![]],
        [poly![(-1, 1)], poly![(-1, 0), (1, 0), (0, 1)], poly![(1, 0), (0, 1)], poly![(0, 0), (-1, 1)]],
    ])
}

/// The distance-7 automorphism as published (equal to `A1*A11*A5*A14*A9`).
pub fn published_d7() -> SymplecticMap {
    SymplecticMap::from_entries([
        [poly![(-1, 0), (0, 0)], poly![(-1, 0)], poly![(0, 1)], poly![(-1, 1), (0, 1)]],
        [
            poly![(-1, -1), (0, -1), (0, 0)],
            poly![(-1, -1), (0, 0)],
            poly![(1, -1), (0, 0)],
            poly![(1, -1), (-1, 0), (0, 0)],
        ],
        [
            poly![(-1, -1), (0, -1), (0, 0)],
            poly![(-1, -1), (0, 0)],
            poly![(1, -1), (1, 1)],
            poly![(1, -1), (-1, 0), (0, 1), (1, 1)],
        ],
        [poly![(-1, 0), (0, 0)], poly![(-1, 0)], poly![(1, 0), (0, 1)], poly![(0, 0), (1, 0), (-1, 1), (0, 1)]],
    ])
}

impl fmt::Debug for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (r, row) in self.entries.iter().enumerate() {
            if r > 0 {
                f.write_str("; ")?;
            }
            for (c, p) in row.iter().enumerate() {
                if c > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{p}")?;
            }
        }
        f.write_str("]")
    }
}

impl fmt::Display for SymplecticMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, row) in self.entries.iter().enumerate() {
            if r == 2 {
                f.write_str("----\n")?;
            }
            for (c, p) in row.iter().enumerate() {
                if c == 2 {
                    f.write_str(" |")?;
                }
                write!(f, " {p:>12}")?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}
