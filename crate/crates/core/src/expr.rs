//! Product expressions over named automorphisms, e.g. `A9*A3*A7*A14`.
//!
//! Atoms are `A1`..`A16`, `A_d6`, `A_d7` and `I`; `*` is the matrix
//! product read left to right, so `A4*A7` is the matrix `A4 * A7`.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;

use crate::error::Error;
use crate::symplectic::SymplecticMap;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoExpr {
    pub atoms: Vec<String>,
    /// Elementary indices when every atom is one of `A1`..`A16`.
    pub factors: Option<Vec<u8>>,
    pub map: SymplecticMap,
}

impl AutoExpr {
    /// Parses and multiplies out; does not check the automorphism condition.
    pub fn parse_unchecked(text: &str) -> Result<AutoExpr, Error> {
        let mut atoms = Vec::new();
        let mut factors = Some(Vec::new());
        let mut map = SymplecticMap::identity();
        let mut pos = 0;
        let bytes = text.as_bytes();
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        loop {
            skip_ws(&mut pos);
            let start = pos;
            while pos < bytes.len() && (bytes[pos].is_ascii_alphanumeric() || bytes[pos] == b'_') {
                pos += 1;
            }
            if start == pos {
                let message = if pos == bytes.len() { "expected an automorphism name" } else { "unexpected character" };
                return Err(Error::Parse { position: pos, message: message.to_string() });
            }
            let name = &text[start..pos];
            let Some(atom) = SymplecticMap::named(name) else {
                return Err(Error::Parse { position: start, message: format!("unknown automorphism `{name}`") });
            };
            match (&mut factors, name.strip_prefix('A').and_then(|k| k.parse::<u8>().ok())) {
                (Some(f), Some(k)) => f.push(k),
                (Some(_), None) if name == "I" || name == "Id" => {}
                _ => factors = None,
            }
            map = map.compose(&atom);
            atoms.push(name.to_string());
            skip_ws(&mut pos);
            if pos == bytes.len() {
                break;
            }
            if bytes[pos] != b'*' {
                return Err(Error::Parse { position: pos, message: "expected `*`".to_string() });
            }
            pos += 1;
        }
        Ok(AutoExpr { atoms, factors, map })
    }

    /// Parses and rejects products that fail the automorphism condition.
    pub fn parse(text: &str) -> Result<AutoExpr, Error> {
        let e = Self::parse_unchecked(text)?;
        let check = e.map.check();
        if !check.passed() {
            let names: Vec<&str> = check.failures().collect();
            return Err(Error::NotAutomorphism(names.join(", ")));
        }
        Ok(e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_products() {
        let e = AutoExpr::parse("A9*A3*A7*A14").unwrap();
        assert_eq!(e.factors, Some(alloc::vec![9, 3, 7, 14]));
        assert_eq!(e.map, SymplecticMap::product_of(&[9, 3, 7, 14]).unwrap());
        let e = AutoExpr::parse(" A4 * A7 ").unwrap();
        assert_eq!(e.atoms, ["A4", "A7"]);
        let e = AutoExpr::parse("A_d6").unwrap();
        assert_eq!(e.factors, None);
        assert_eq!(AutoExpr::parse("I").unwrap().factors, Some(Vec::new()));
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(
            AutoExpr::parse("A4*A17"),
            Err(Error::Parse { position: 3, message: "unknown automorphism `A17`".into() })
        );
        assert!(matches!(AutoExpr::parse("A4 A7"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(AutoExpr::parse("A4*"), Err(Error::Parse { position: 3, .. })));
        assert!(matches!(AutoExpr::parse(""), Err(Error::Parse { position: 0, .. })));
        assert!(matches!(AutoExpr::parse("A1+A2"), Err(Error::Parse { position: 2, .. })));
    }
}
