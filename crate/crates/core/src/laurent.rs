//! Two-variable Laurent polynomials over F2.
//!
//! A [`LaurentPoly`] is the finite set of monomials `x^i y^j` that carry a
//! coefficient of one. Addition is symmetric difference of supports and
//! multiplication is the F2 convolution. The support is kept sorted by
//! `(i, j)` so equality, hashing and serialization are canonical.

use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, AddAssign, Mul};

/// A monomial `x^i y^j`, equivalently a lattice offset `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial {
    pub i: i32,
    pub j: i32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { i: 0, j: 0 };

    pub const fn new(i: i32, j: i32) -> Self {
        Monomial { i, j }
    }

    /// Product of two monomials. Panics on exponent overflow.
    pub fn times(self, other: Monomial) -> Monomial {
        Monomial {
            i: self.i.checked_add(other.i).expect("x exponent overflow"),
            j: self.j.checked_add(other.j).expect("y exponent overflow"),
        }
    }

    pub fn inverse(self) -> Monomial {
        Monomial {
            i: self.i.checked_neg().expect("x exponent overflow"),
            j: self.j.checked_neg().expect("y exponent overflow"),
        }
    }
}

impl From<(i32, i32)> for Monomial {
    fn from((i, j): (i32, i32)) -> Self {
        Monomial { i, j }
    }
}

/// Element of `F2[x, y, x^-1, y^-1]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LaurentPoly {
    // sorted ascending, no duplicates
    terms: Vec<Monomial>,
}

impl LaurentPoly {
    pub const fn zero() -> Self {
        LaurentPoly { terms: Vec::new() }
    }

    pub fn one() -> Self {
        Self::monomial(0, 0)
    }

    pub fn monomial(i: i32, j: i32) -> Self {
        LaurentPoly { terms: alloc::vec![Monomial::new(i, j)] }
    }

    /// Builds a polynomial from monomials, cancelling repeated entries in pairs.
    pub fn from_monomials<I>(monomials: I) -> Self
    where
        I: IntoIterator,
        I::Item: Into<Monomial>,
    {
        let mut terms: Vec<Monomial> = monomials.into_iter().map(Into::into).collect();
        canonicalize(&mut terms);
        LaurentPoly { terms }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The support in canonical `(i asc, j asc)` order.
    pub fn terms(&self) -> &[Monomial] {
        &self.terms
    }

    pub fn contains(&self, m: Monomial) -> bool {
        self.terms.binary_search(&m).is_ok()
    }

    pub fn constant_term(&self) -> bool {
        self.contains(Monomial::ONE)
    }

    /// Toggles a single monomial.
    pub fn flip(&mut self, m: Monomial) {
        match self.terms.binary_search(&m) {
            Ok(k) => {
                self.terms.remove(k);
            }
            Err(k) => self.terms.insert(k, m),
        }
    }

    /// `x -> x^-1, y -> y^-1`.
    pub fn bar(&self) -> LaurentPoly {
        let mut terms: Vec<Monomial> = self.terms.iter().rev().map(|m| m.inverse()).collect();
        // negation reverses the lexicographic order exactly
        debug_assert!(terms.windows(2).all(|w| w[0] < w[1]));
        terms.shrink_to_fit();
        LaurentPoly { terms }
    }

    /// Multiplication by the monomial `x^m y^n`.
    pub fn shift(&self, m: i32, n: i32) -> LaurentPoly {
        let by = Monomial::new(m, n);
        LaurentPoly {
            terms: self.terms.iter().map(|t| t.times(by)).collect(),
        }
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let (a, b) = (&self.terms, &other.terms);
        let mut out = Vec::with_capacity(a.len() + b.len());
        let (mut p, mut q) = (0, 0);
        while p < a.len() && q < b.len() {
            match a[p].cmp(&b[q]) {
                core::cmp::Ordering::Less => {
                    out.push(a[p]);
                    p += 1;
                }
                core::cmp::Ordering::Greater => {
                    out.push(b[q]);
                    q += 1;
                }
                core::cmp::Ordering::Equal => {
                    p += 1;
                    q += 1;
                }
            }
        }
        out.extend_from_slice(&a[p..]);
        out.extend_from_slice(&b[q..]);
        LaurentPoly { terms: out }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        if other.terms.len() == 1 {
            let m = other.terms[0];
            return LaurentPoly { terms: self.terms.iter().map(|t| t.times(m)).collect() };
        }
        if self.terms.len() == 1 {
            return other.mul(self);
        }
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                terms.push(a.times(*b));
            }
        }
        canonicalize(&mut terms);
        LaurentPoly { terms }
    }

    /// Smallest box `[imin, imax] x [jmin, jmax]` containing the support.
    pub fn bounding_box(&self) -> Option<(i32, i32, i32, i32)> {
        let first = self.terms.first()?;
        let mut b = (first.i, first.i, first.j, first.j);
        for t in &self.terms {
            b.0 = b.0.min(t.i);
            b.1 = b.1.max(t.i);
            b.2 = b.2.min(t.j);
            b.3 = b.3.max(t.j);
        }
        Some(b)
    }
}

/// Sorts and removes pairs of equal monomials (F2 coefficients).
fn canonicalize(terms: &mut Vec<Monomial>) {
    terms.sort_unstable();
    let mut out = 0;
    let mut k = 0;
    while k < terms.len() {
        let mut run = 1;
        while k + run < terms.len() && terms[k + run] == terms[k] {
            run += 1;
        }
        if run % 2 == 1 {
            terms[out] = terms[k];
            out += 1;
        }
        k += run;
    }
    terms.truncate(out);
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(self, rhs)
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: LaurentPoly) -> LaurentPoly {
        LaurentPoly::add(&self, &rhs)
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        *self = LaurentPoly::add(self, rhs);
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(self, rhs)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        LaurentPoly::mul(&self, &rhs)
    }
}

impl From<Monomial> for LaurentPoly {
    fn from(m: Monomial) -> Self {
        LaurentPoly::monomial(m.i, m.j)
    }
}

fn write_power(f: &mut fmt::Formatter<'_>, var: char, e: i32) -> fmt::Result {
    match e {
        0 => Ok(()),
        1 => write!(f, "{var}"),
        _ => write!(f, "{var}^{e}"),
    }
}

/// Writes e.g. `1 + x + x^-1*y^2`.
impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, m) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            if *m == Monomial::ONE {
                f.write_str("1")?;
                continue;
            }
            write_power(f, 'x', m.i)?;
            if m.i != 0 && m.j != 0 {
                f.write_str("*")?;
            }
            write_power(f, 'y', m.j)?;
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

#[cfg(feature = "serde")]
mod serde_impl {
    use super::{LaurentPoly, Monomial};
    use alloc::vec::Vec;
    use serde::de::Error as _;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    impl Serialize for Monomial {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            [self.i, self.j].serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for Monomial {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let [i, j] = <[i32; 2]>::deserialize(d)?;
            Ok(Monomial { i, j })
        }
    }

    /// Array of `[i, j]` pairs in canonical order; `[]` is zero.
    impl Serialize for LaurentPoly {
        fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
            self.terms.serialize(s)
        }
    }

    impl<'de> Deserialize<'de> for LaurentPoly {
        fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
            let terms = Vec::<Monomial>::deserialize(d)?;
            let poly = LaurentPoly::from_monomials(terms.iter().copied());
            if poly.len() != terms.len() {
                return Err(D::Error::custom("repeated monomial in polynomial support"));
            }
            Ok(poly)
        }
    }
}

/// Parses the display form: terms joined by `+`, each a product of `1`,
/// `x`, `y`, `x^k`, `y^k` with optional `*`. Repeated monomials cancel.
impl core::str::FromStr for LaurentPoly {
    type Err = crate::error::Error;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |position: usize, message: &str| crate::error::Error::Parse { position, message: message.into() };
        let b = text.as_bytes();
        let mut pos = 0;
        let skip = |pos: &mut usize| {
            while *pos < b.len() && b[*pos].is_ascii_whitespace() {
                *pos += 1;
            }
        };
        skip(&mut pos);
        if pos < b.len() && b[pos] == b'0' {
            pos += 1;
            skip(&mut pos);
            return if pos == b.len() { Ok(LaurentPoly::zero()) } else { Err(err(pos, "nothing may follow `0`")) };
        }
        let mut monomials = Vec::new();
        loop {
            let mut m = Monomial::ONE;
            let mut factors = 0;
            loop {
                skip(&mut pos);
                if factors > 0 && pos < b.len() && b[pos] == b'*' {
                    pos += 1;
                    skip(&mut pos);
                }
                match b.get(pos) {
                    Some(b'1') => pos += 1,
                    Some(&c @ (b'x' | b'y')) => {
                        pos += 1;
                        let mut e = 1i32;
                        if b.get(pos) == Some(&b'^') {
                            pos += 1;
                            let start = pos;
                            if b.get(pos) == Some(&b'-') {
                                pos += 1;
                            }
                            while pos < b.len() && b[pos].is_ascii_digit() {
                                pos += 1;
                            }
                            e = text[start..pos].parse().map_err(|_| err(start, "expected an integer exponent"))?;
                        }
                        m = if c == b'x' { m.times(Monomial::new(e, 0)) } else { m.times(Monomial::new(0, e)) };
                    }
                    _ if factors == 0 => return Err(err(pos, "expected `1`, `x` or `y`")),
                    _ => break,
                }
                factors += 1;
            }
            monomials.push(m);
            skip(&mut pos);
            match b.get(pos) {
                None => break,
                Some(b'+') => pos += 1,
                Some(_) => return Err(err(pos, "expected `+`")),
            }
        }
        Ok(LaurentPoly::from_monomials(monomials))
    }
}

/// Shorthand used by tables of constants: `poly![(0,0), (1,-1)]`.
#[macro_export]
macro_rules! poly {
    () => { $crate::laurent::LaurentPoly::zero() };
    ($(($i:expr, $j:expr)),+ $(,)?) => {
        $crate::laurent::LaurentPoly::from_monomials([$(($i, $j)),+])
    };
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x() -> LaurentPoly {
        LaurentPoly::monomial(1, 0)
    }
    fn y() -> LaurentPoly {
        LaurentPoly::monomial(0, 1)
    }
    fn one() -> LaurentPoly {
        LaurentPoly::one()
    }

    #[test]
    fn add_cancels_shared_terms() {
        let p = &one() + &y();
        let q = &one() + &x();
        assert_eq!(&p + &q, &x() + &y());
        assert_eq!(&p + &LaurentPoly::zero(), p);
        assert!((&p + &p).is_zero());
    }

    #[test]
    fn mul_examples() {
        // y^2 placed in the c1 slot is the horizontal Z two rows up
        let z78 = &LaurentPoly::monomial(0, 2) * &one();
        assert_eq!(z78.terms(), &[Monomial::new(0, 2)]);

        let one_x = &one() + &x();
        assert_eq!(&one_x * &one_x, poly![(0, 0), (2, 0)]);

        // brute-force convolution: every pair (a, b) contributes a+b
        let p = &one() + &y();
        let q = &one() + &x();
        let mut expect = LaurentPoly::zero();
        for a in p.terms() {
            for b in q.terms() {
                expect.flip(a.times(*b));
            }
        }
        assert_eq!(&p * &q, expect);
        assert_eq!(&p * &q, poly![(0, 0), (1, 0), (0, 1), (1, 1)]);
    }

    #[test]
    fn bar_examples() {
        let p = poly![(1, 0), (1, 2)];
        assert_eq!(p.bar(), poly![(-1, 0), (-1, -2)]);
        assert_eq!(one().bar(), one());
        assert_eq!(p.bar().bar(), p);
    }

    #[test]
    fn constant_term_examples() {
        assert!(poly![(0, 0), (1, 1)].constant_term());
        assert!(!poly![(-1, -1)].constant_term());
        assert!(!LaurentPoly::zero().constant_term());
    }

    #[test]
    fn from_monomials_cancels_pairs() {
        let p = LaurentPoly::from_monomials([(1, 0), (0, 0), (1, 0), (1, 0)]);
        assert_eq!(p, poly![(0, 0), (1, 0)]);
    }

    #[test]
    fn display_is_readable() {
        let p = poly![(0, 0), (-1, 2), (1, 0)];
        assert_eq!(alloc::format!("{p}"), "x^-1*y^2 + 1 + x");
        assert_eq!(alloc::format!("{}", LaurentPoly::zero()), "0");
    }

    #[test]
    #[should_panic(expected = "overflow")]
    fn exponent_overflow_panics() {
        let p = LaurentPoly::monomial(i32::MAX, 0);
        let _ = p.shift(1, 0);
    }

    #[test]
    fn parse_round_trips_display() {
        for p in [LaurentPoly::zero(), one(), poly![(-1, 2), (0, 0), (1, 0)], poly![(2, -1), (0, -3)]] {
            let text = alloc::format!("{p}");
            assert_eq!(text.parse::<LaurentPoly>().unwrap(), p, "{text}");
        }
        assert_eq!("x^-1y + 1 + x*x".parse::<LaurentPoly>().unwrap(), poly![(-1, 1), (0, 0), (2, 0)]);
        assert_eq!("x + x".parse::<LaurentPoly>().unwrap(), LaurentPoly::zero());
        assert!(matches!("x +".parse::<LaurentPoly>(), Err(crate::error::Error::Parse { position: 3, .. })));
        assert!(matches!("x^a".parse::<LaurentPoly>(), Err(crate::error::Error::Parse { position: 2, .. })));
        assert!(matches!("x - y".parse::<LaurentPoly>(), Err(crate::error::Error::Parse { position: 2, .. })));
    }
}
