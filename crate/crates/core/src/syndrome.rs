//! Syndromes of finite-support errors against a code's vertex stabilizer.

use alloc::vec::Vec;
use core::fmt;

use crate::codes::CodeFamily;
use crate::error::Error;
use crate::laurent::Monomial;
use crate::pauli::PauliVec;

/// Violated vertices, sorted by `x` then `y`, no repeats.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
#[cfg_attr(feature = "serde", derive(serde::Serialize, serde::Deserialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct Syndrome {
    vertices: Vec<Monomial>,
}

impl Syndrome {
    pub fn from_vertices<I: IntoIterator<Item = Monomial>>(vertices: I) -> Self {
        let mut vertices: Vec<Monomial> = vertices.into_iter().collect();
        vertices.sort_unstable();
        vertices.dedup();
        Syndrome { vertices }
    }

    pub fn vertices(&self) -> &[Monomial] {
        &self.vertices
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn first(&self) -> Option<Monomial> {
        self.vertices.first().copied()
    }

    pub fn shifted(&self, m: i32, n: i32) -> Syndrome {
        let by = Monomial::new(m, n);
        Syndrome { vertices: self.vertices.iter().map(|v| v.times(by)).collect() }
    }

    /// Symmetric difference.
    pub fn xor(&self, other: &Syndrome) -> Syndrome {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (a, b) = (&self.vertices, &other.vertices);
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                core::cmp::Ordering::Less => {
                    out.push(a[i]);
                    i += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[j]);
                    j += 1;
                }
                core::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&a[i..]);
        out.extend_from_slice(&b[j..]);
        Syndrome { vertices: out }
    }
}

impl fmt::Debug for Syndrome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.vertices.iter().map(|v| (v.i, v.j))).finish()
    }
}

/// Vertices `v` whose stabilizer translate `G_v` anticommutes with `error`.
pub fn syndrome_of(error: &PauliVec, stabilizer: &PauliVec) -> Syndrome {
    Syndrome { vertices: stabilizer.dot(error).terms().to_vec() }
}

pub fn syndrome(error: &PauliVec, code: &CodeFamily) -> Syndrome {
    syndrome_of(error, &code.stabilizer)
}

/// Commutes with every stabilizer translate.
pub fn is_logical(error: &PauliVec, code: &CodeFamily) -> bool {
    code.stabilizer.dot(error).is_zero()
}

/// Membership test for a logical operator: it lies in the stabilizer group
/// iff it commutes with every translate of the transformed `U1`, `U2`, `W`.
pub fn in_stabilizer_group(op: &PauliVec, code: &CodeFamily) -> Result<bool, Error> {
    if !is_logical(op, code) {
        return Err(Error::NotLogical);
    }
    Ok(commutes_with_all_logicals(op, code))
}

pub(crate) fn commutes_with_all_logicals(op: &PauliVec, code: &CodeFamily) -> bool {
    code.logicals().iter().all(|l| l.dot(op).is_zero())
}
