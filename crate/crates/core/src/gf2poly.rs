//! Polynomials over the two-element field.
//!
//! Coefficients are bit-packed least-significant-first into `u64` words: bit `i`
//! of the sequence is the coefficient of `t^i`. Addition is XOR, multiplication
//! is carry-less shift-and-XOR. A [`Gf2Poly`] is always kept canonical (no
//! trailing zero words), so structural equality is polynomial equality.
//!
//! Two text forms are understood:
//!
//! ```text
//! bitstring (LSB first)   10001     <->  t^4+1
//! term expression         t^4+1
//! zero                    0
//! ```

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Mul};
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::error::{Error, Result};

const WORD_BITS: usize = 64;

/// Largest exponent accepted by the parser.
pub const MAX_PARSE_EXPONENT: usize = 1 << 24;

/// Degree of a polynomial. The zero polynomial has degree [`Degree::NegInf`],
/// which orders strictly below every finite degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Degree {
    NegInf,
    Finite(usize),
}

impl Degree {
    pub fn finite(self) -> Option<usize> {
        match self {
            Degree::NegInf => None,
            Degree::Finite(d) => Some(d),
        }
    }
}

impl fmt::Display for Degree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Degree::NegInf => f.write_str("-inf"),
            Degree::Finite(d) => write!(f, "{d}"),
        }
    }
}

/// A polynomial over GF(2) in canonical bit-packed form.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Gf2Poly {
    words: Vec<u64>,
}

fn trim(words: &mut Vec<u64>) {
    while words.last() == Some(&0) {
        words.pop();
    }
}

/// `dst ^= src << shift`, growing `dst` as needed. Does not trim.
fn xor_shifted(dst: &mut Vec<u64>, src: &[u64], shift: usize) {
    let ws = shift / WORD_BITS;
    let bs = shift % WORD_BITS;
    let need = src.len() + ws + usize::from(bs != 0);
    if dst.len() < need {
        dst.resize(need, 0);
    }
    if bs == 0 {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w;
        }
    } else {
        for (i, &w) in src.iter().enumerate() {
            dst[i + ws] ^= w << bs;
            dst[i + ws + 1] ^= w >> (WORD_BITS - bs);
        }
    }
}

/// Highest set bit among `words[..len]`, shrinking `len` past zero words.
fn top_bit(words: &[u64], len: &mut usize) -> Option<usize> {
    while *len > 0 {
        let w = words[*len - 1];
        if w != 0 {
            return Some((*len - 1) * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize));
        }
        *len -= 1;
    }
    None
}

// Bit i of the low half goes to bit 2i.
fn spread(x: u32) -> u64 {
    let mut x = x as u64;
    x = (x | (x << 16)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x << 8)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x << 4)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x << 2)) & 0x3333_3333_3333_3333;
    x = (x | (x << 1)) & 0x5555_5555_5555_5555;
    x
}

// Inverse of `spread`: gathers the even-index bits.
fn gather_even(x: u64) -> u32 {
    let mut x = x & 0x5555_5555_5555_5555;
    x = (x | (x >> 1)) & 0x3333_3333_3333_3333;
    x = (x | (x >> 2)) & 0x0F0F_0F0F_0F0F_0F0F;
    x = (x | (x >> 4)) & 0x00FF_00FF_00FF_00FF;
    x = (x | (x >> 8)) & 0x0000_FFFF_0000_FFFF;
    x = (x | (x >> 16)) & 0x0000_0000_FFFF_FFFF;
    x as u32
}

impl Gf2Poly {
    pub fn zero() -> Self {
        Gf2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        Gf2Poly { words: vec![1] }
    }

    /// The indeterminate `t`.
    pub fn t() -> Self {
        Gf2Poly { words: vec![2] }
    }

    pub fn monomial(exp: usize) -> Self {
        let mut words = vec![0u64; exp / WORD_BITS + 1];
        words[exp / WORD_BITS] = 1 << (exp % WORD_BITS);
        Gf2Poly { words }
    }

    /// `t^n + 1`. For `n = 0` this is the zero polynomial.
    pub fn t_pow_plus_one(n: usize) -> Self {
        let mut p = Self::monomial(n);
        p.words[0] ^= 1;
        trim(&mut p.words);
        p
    }

    /// Builds a polynomial from a small integer whose bit `i` is the
    /// coefficient of `t^i`.
    pub fn from_u64(bits: u64) -> Self {
        let mut words = vec![bits];
        trim(&mut words);
        Gf2Poly { words }
    }

    pub fn from_words(mut words: Vec<u64>) -> Self {
        trim(&mut words);
        Gf2Poly { words }
    }

    /// Sum of `t^e` over the given exponents (repeated exponents cancel).
    pub fn from_exponents<I: IntoIterator<Item = usize>>(exps: I) -> Self {
        let mut words = Vec::new();
        for e in exps {
            if words.len() <= e / WORD_BITS {
                words.resize(e / WORD_BITS + 1, 0);
            }
            words[e / WORD_BITS] ^= 1 << (e % WORD_BITS);
        }
        Self::from_words(words)
    }

    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        Self::from_exponents(bits.into_iter().enumerate().filter_map(|(i, b)| b.then_some(i)))
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    pub fn degree(&self) -> Degree {
        match self.words.last() {
            None => Degree::NegInf,
            Some(&w) => Degree::Finite(
                (self.words.len() - 1) * WORD_BITS + (WORD_BITS - 1 - w.leading_zeros() as usize),
            ),
        }
    }

    /// Degree as an `Option`, `None` for zero.
    pub fn deg(&self) -> Option<usize> {
        self.degree().finite()
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .is_some_and(|w| (w >> (i % WORD_BITS)) & 1 == 1)
    }

    /// Exponents with a nonzero coefficient, ascending.
    pub fn exponents(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * WORD_BITS + b)
            })
        })
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Multiplication by `t^shift`.
    pub fn shl(&self, shift: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut words = Vec::new();
        xor_shifted(&mut words, &self.words, shift);
        Self::from_words(words)
    }

    pub fn add(&self, other: &Self) -> Self {
        let (long, short) = if self.words.len() >= other.words.len() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = long.words.clone();
        for (w, s) in words.iter_mut().zip(&short.words) {
            *w ^= s;
        }
        Self::from_words(words)
    }

    /// Carry-less product.
    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let (sparse, dense) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut words = vec![0u64; self.words.len() + other.words.len()];
        for e in sparse.exponents() {
            xor_shifted(&mut words, &dense.words, e);
        }
        Self::from_words(words)
    }

    /// Frobenius squaring: bit `i` moves to bit `2i`.
    pub fn square(&self) -> Self {
        let mut words = Vec::with_capacity(2 * self.words.len());
        for &w in &self.words {
            words.push(spread(w as u32));
            words.push(spread((w >> 32) as u32));
        }
        Self::from_words(words)
    }

    /// Quotient and remainder of Euclidean division by `d`.
    pub fn divrem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut len = rem.len();
        let mut quot = Vec::new();
        while let Some(top) = top_bit(&rem, &mut len) {
            if top < dd {
                break;
            }
            let shift = top - dd;
            xor_shifted(&mut rem, &d.words, shift);
            if quot.len() <= shift / WORD_BITS {
                quot.resize(shift / WORD_BITS + 1, 0);
            }
            quot[shift / WORD_BITS] |= 1 << (shift % WORD_BITS);
        }
        Ok((Self::from_words(quot), Self::from_words(rem)))
    }

    pub fn rem(&self, d: &Self) -> Result<Self> {
        let dd = d.deg().ok_or(Error::DivisionByZero)?;
        let mut rem = self.words.clone();
        let mut len = rem.len();
        while let Some(top) = top_bit(&rem, &mut len) {
            if top < dd {
                break;
            }
            xor_shifted(&mut rem, &d.words, top - dd);
        }
        Ok(Self::from_words(rem))
    }

    /// Whether `d` divides `self`. The zero polynomial divides only zero.
    pub fn is_divisible_by(&self, d: &Self) -> bool {
        if d.is_zero() {
            return self.is_zero();
        }
        self.rem(d).map(|r| r.is_zero()).unwrap_or(false)
    }

    /// Monic greatest common divisor by Euclid's algorithm.
    pub fn gcd(&self, other: &Self) -> Result<Self> {
        if self.is_zero() && other.is_zero() {
            return Err(Error::domain("gcd of two zero polynomials is undefined"));
        }
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a)
    }

    /// `(self * other) mod m`.
    pub fn mulmod(&self, other: &Self, m: &Self) -> Result<Self> {
        self.mul(other).rem(m)
    }

    /// Splits `p` into `(p_e, p_o)` with `p = p_e^2 + t * p_o^2`.
    pub fn even_odd_split(&self) -> (Self, Self) {
        let mut even = Vec::with_capacity(self.words.len().div_ceil(2));
        let mut odd = Vec::with_capacity(self.words.len().div_ceil(2));
        for pair in self.words.chunks(2) {
            let lo = pair[0];
            let hi = pair.get(1).copied().unwrap_or(0);
            even.push(gather_even(lo) as u64 | (gather_even(hi) as u64) << 32);
            odd.push(gather_even(lo >> 1) as u64 | (gather_even(hi >> 1) as u64) << 32);
        }
        (Self::from_words(even), Self::from_words(odd))
    }

    /// Coefficient sequence equals its reversal. Zero counts as palindromic.
    pub fn is_palindromic(&self) -> bool {
        let Some(d) = self.deg() else {
            return true;
        };
        (0..=d / 2).all(|i| self.coeff(i) == self.coeff(d - i))
    }

    /// Least-significant-first bitstring; `"0"` for zero.
    pub fn to_bitstring(&self) -> String {
        match self.deg() {
            None => "0".to_string(),
            Some(d) => (0..=d).map(|i| if self.coeff(i) { '1' } else { '0' }).collect(),
        }
    }

    /// Parses either text form. See the module docs.
    pub fn parse(text: &str) -> Result<Self> {
        text.parse()
    }
}

impl fmt::Display for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let exps: Vec<usize> = self.exponents().collect();
        for (i, &e) in exps.iter().rev().enumerate() {
            if i > 0 {
                f.write_str("+")?;
            }
            match e {
                0 => f.write_str("1")?,
                1 => f.write_str("t")?,
                _ => write!(f, "t^{e}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Gf2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gf2Poly({self})")
    }
}

impl Serialize for Gf2Poly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

/// Orders by value when the coefficient sequence is read as a binary number,
/// which sorts by degree first.
impl Ord for Gf2Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.words
            .len()
            .cmp(&other.words.len())
            .then_with(|| self.words.iter().rev().cmp(other.words.iter().rev()))
    }
}

impl PartialOrd for Gf2Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

fn parse_err(position: usize, message: impl Into<String>) -> Error {
    Error::Parse { position, message: message.into() }
}

impl FromStr for Gf2Poly {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        if text.trim().is_empty() {
            return Err(parse_err(0, "empty input"));
        }
        if text.bytes().all(|b| b == b'0' || b == b'1') {
            return Ok(Self::from_bits(text.bytes().map(|b| b == b'1')));
        }
        parse_terms(text)
    }
}

fn parse_terms(text: &str) -> Result<Gf2Poly> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    let mut exps = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    loop {
        skip_ws(&mut pos);
        let Some(&c) = bytes.get(pos) else {
            return Err(parse_err(pos, "expected a term"));
        };
        match c {
            b'1' => {
                exps.push(0);
                pos += 1;
            }
            b't' => {
                pos += 1;
                if bytes.get(pos) == Some(&b'^') {
                    pos += 1;
                    let start = pos;
                    while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(parse_err(pos, "expected exponent digits after '^'"));
                    }
                    let e: usize = text[start..pos]
                        .parse()
                        .ok()
                        .filter(|&e| e <= MAX_PARSE_EXPONENT)
                        .ok_or_else(|| parse_err(start, "exponent too large"))?;
                    exps.push(e);
                } else {
                    exps.push(1);
                }
            }
            _ => return Err(parse_err(pos, format!("unexpected character {:?}", c as char))),
        }
        skip_ws(&mut pos);
        match bytes.get(pos) {
            None => break,
            Some(b'+') => pos += 1,
            Some(&c) => {
                return Err(parse_err(pos, format!("unexpected character {:?}", c as char)))
            }
        }
    }
    Ok(Gf2Poly::from_exponents(exps))
}

impl Add<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::add(self, rhs)
    }
}

impl AddAssign<&Gf2Poly> for Gf2Poly {
    fn add_assign(&mut self, rhs: &Gf2Poly) {
        if self.words.len() < rhs.words.len() {
            self.words.resize(rhs.words.len(), 0);
        }
        for (w, r) in self.words.iter_mut().zip(&rhs.words) {
            *w ^= r;
        }
        trim(&mut self.words);
    }
}

impl Mul<&Gf2Poly> for &Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(self, rhs)
    }
}

impl Add for Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: Gf2Poly) -> Gf2Poly {
        Gf2Poly::add(&self, &rhs)
    }
}

impl Add<&Gf2Poly> for Gf2Poly {
    type Output = Gf2Poly;
    fn add(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::add(&self, rhs)
    }
}

impl Mul for Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(&self, &rhs)
    }
}

impl Mul<&Gf2Poly> for Gf2Poly {
    type Output = Gf2Poly;
    fn mul(self, rhs: &Gf2Poly) -> Gf2Poly {
        Gf2Poly::mul(&self, rhs)
    }
}

impl<'a> std::iter::Product<&'a Gf2Poly> for Gf2Poly {
    fn product<I: Iterator<Item = &'a Gf2Poly>>(iter: I) -> Self {
        iter.fold(Gf2Poly::one(), |acc, p| Gf2Poly::mul(&acc, p))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str) -> Gf2Poly {
        s.parse().unwrap()
    }

    #[test]
    fn parse_examples() {
        assert_eq!(p("111"), p("t^2+t+1"));
        assert_eq!(p("0"), Gf2Poly::zero());
        assert_eq!(p("0").degree(), Degree::NegInf);
        assert_eq!(p("t^4+1").to_bitstring(), "10001");
        assert_eq!(p("1").to_string(), "1");
        assert_eq!(p("t").to_string(), "t");
        assert_eq!(p("1100").to_string(), "t+1");
        assert_eq!(p(" t^3 + t + 1 ").to_string(), "t^3+t+1");
        assert_eq!(p("t+t"), Gf2Poly::zero());
    }

    #[test]
    fn parse_errors_name_position() {
        assert_eq!(
            Gf2Poly::parse(""),
            Err(Error::Parse { position: 0, message: "empty input".into() })
        );
        match Gf2Poly::parse("t^2+x") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 4),
            other => panic!("unexpected {other:?}"),
        }
        match Gf2Poly::parse("t^+1") {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(Gf2Poly::parse("t^2+").is_err());
        assert!(Gf2Poly::parse("t^99999999999999999999").is_err());
        assert!(Gf2Poly::parse("2").is_err());
    }

    #[test]
    fn degree_ordering() {
        assert!(Degree::NegInf < Degree::Finite(0));
        assert_eq!(p("t^70+1").degree(), Degree::Finite(70));
    }

    #[test]
    fn add_examples() {
        assert!(p("t+1").add(&p("t+1")).is_zero());
        assert_eq!(&p("t^2+1") + &p("t"), p("t^2+t+1"));
        assert_eq!(&p("t^3+t") + &p("t^3+1"), p("t+1"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(&p("t+1") * &p("t+1"), p("t^2+1"));
        assert_eq!(p("t+1") * p("t^2+t+1"), p("t^3+1"));
        let q = p("t^100+t^63+t^5+1");
        assert_eq!(&q * &Gf2Poly::one(), q);
        assert!((&q * &Gf2Poly::zero()).is_zero());
    }

    #[test]
    fn square_examples() {
        assert_eq!(p("t+1").square(), p("t^2+1"));
        assert_eq!(p("t^2+t+1").square(), p("t^4+t^2+1"));
        assert!(Gf2Poly::zero().square().is_zero());
        let q = p("t^127+t^64+t^63+t^31+1");
        assert_eq!(q.square(), &q * &q);
    }

    #[test]
    fn divrem_examples() {
        assert_eq!(p("t^3+1").divrem(&p("t^2+t+1")).unwrap(), (p("t+1"), Gf2Poly::zero()));
        let q = p("t^9+t^4+t");
        assert_eq!(q.divrem(&Gf2Poly::one()).unwrap(), (q.clone(), Gf2Poly::zero()));
        assert_eq!(p("t^2+1").divrem(&p("t^3+1")).unwrap(), (Gf2Poly::zero(), p("t^2+1")));
        assert_eq!(q.divrem(&Gf2Poly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_examples() {
        assert_eq!(p("t^2+1").gcd(&p("t+1")).unwrap(), p("t+1"));
        assert_eq!(p("t^2+t+1").gcd(&p("t+1")).unwrap(), Gf2Poly::one());
        let q = p("t^5+t^2");
        assert_eq!(q.gcd(&Gf2Poly::zero()).unwrap(), q);
        assert_eq!(Gf2Poly::zero().gcd(&q).unwrap(), q);
        assert!(Gf2Poly::zero().gcd(&Gf2Poly::zero()).is_err());
    }

    #[test]
    fn even_odd_split_examples() {
        assert_eq!(p("t^2+t+1").even_odd_split(), (p("t+1"), Gf2Poly::one()));
        assert_eq!(p("t").even_odd_split(), (Gf2Poly::zero(), Gf2Poly::one()));
        for n in [2, 4, 64, 130] {
            assert_eq!(
                Gf2Poly::t_pow_plus_one(n).even_odd_split(),
                (Gf2Poly::t_pow_plus_one(n / 2), Gf2Poly::zero())
            );
        }
    }

    #[test]
    fn palindromic_examples() {
        assert!(p("t^2+t+1").is_palindromic());
        assert!(!p("t^2+t").is_palindromic());
        assert!(Gf2Poly::zero().is_palindromic());
        for n in 1..200 {
            assert!(Gf2Poly::t_pow_plus_one(n).is_palindromic());
        }
    }

    #[test]
    fn ordering_is_numeric() {
        assert!(p("t^3+t+1") < p("t^3+t^2+1"));
        assert!(p("t^2+t+1") < p("t^3"));
        assert!(Gf2Poly::zero() < Gf2Poly::one());
    }

    #[test]
    fn shl_matches_monomial_product() {
        let q = p("t^70+t^3+1");
        assert_eq!(q.shl(61), &q * &Gf2Poly::monomial(61));
        assert_eq!(q.shl(0), q);
    }

    #[test]
    fn serialize_as_term_expression() {
        assert_eq!(serde_json::to_string(&p("10001")).unwrap(), "\"t^4+1\"");
    }
}
