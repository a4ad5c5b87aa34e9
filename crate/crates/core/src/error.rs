use core::fmt;

use alloc::string::String;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// Elementary automorphisms are numbered 1..=16.
    ElementaryIndex(u8),
    /// The map fails the listed block identities.
    NotAutomorphism(String),
    /// The operator has a nonempty syndrome.
    NotLogical,
    /// Torus too small for the requested distance.
    LatticeTooSmall { size: usize, min: usize },
    /// Malformed automorphism expression, with byte offset.
    Parse { position: usize, message: String },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ElementaryIndex(k) => write!(f, "elementary automorphism index {k} is outside 1..=16"),
            Error::NotAutomorphism(which) => write!(f, "not a symplectic automorphism: {which} fails"),
            Error::NotLogical => f.write_str("operator does not commute with every stabilizer"),
            Error::LatticeTooSmall { size, min } => {
                write!(f, "lattice size {size} is too small, need L >= {min}")
            }
            Error::Parse { position, message } => write!(f, "at position {position}: {message}"),
        }
    }
}

impl core::error::Error for Error {}
