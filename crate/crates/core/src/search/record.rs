use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::Result;
use crate::factor::repunit_quotient;
use crate::repr::{repeat_word, to_canonical, word_value, Radix, Word};
use crate::triples::Triple;

/// A solution `y^q = c (b^(n l) - 1) / (b^l - 1)` with `w = (c)_b` of length `l`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SolutionRecord {
    pub triple: Triple,
    pub b: BigUint,
    pub y: BigUint,
    pub c: BigUint,
    pub w: Word,
}

/// The first invariant a [`SolutionRecord`] fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Parameters,
    BaseTooSmall,
    RootTooSmall,
    WordRadix,
    WordLength { expected: u32, found: usize },
    WordValue,
    BlockRange,
    PowerEquation,
    DigitString,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::Parameters => write!(f, "parameters: need q >= 2, n >= 2, l >= 1"),
            Violation::BaseTooSmall => write!(f, "base: need b >= 2"),
            Violation::RootTooSmall => write!(f, "root: need y >= 2"),
            Violation::WordRadix => write!(f, "word: not a canonical word in base b"),
            Violation::WordLength { expected, found } => {
                write!(f, "word length: expected {expected}, found {found}")
            }
            Violation::WordValue => write!(f, "word value: [w]_b != c"),
            Violation::BlockRange => write!(f, "block range: need b^(l-1) <= c < b^l"),
            Violation::PowerEquation => write!(f, "power equation: y^q != c (b^(nl)-1)/(b^l-1)"),
            Violation::DigitString => write!(f, "digit string: (y^q)_b != w repeated n times"),
        }
    }
}

impl SolutionRecord {
    /// Record with `w = (c)_b`. Nothing is verified.
    pub fn new(triple: Triple, b: BigUint, y: BigUint, c: BigUint) -> Result<Self> {
        let w = to_canonical(&c, &b)?;
        Ok(SolutionRecord { triple, b, y, c, w })
    }

    /// Record from a word; `c = [w]_b`.
    pub fn from_word(triple: Triple, y: BigUint, w: Word) -> Result<Self> {
        let b = match w.radix() {
            Radix::Canonical(b) => b.clone(),
            _ => return Err(crate::Error::MalformedWord(String::from("solution words are canonical"))),
        };
        let c = word_value(&w);
        Ok(SolutionRecord { triple, b, y, c, w })
    }

    /// Recomputes every invariant from scratch, digits included.
    pub fn check(&self) -> std::result::Result<(), Violation> {
        let Triple { q, n, l } = self.triple;
        if q < 2 || n < 2 || l < 1 {
            return Err(Violation::Parameters);
        }
        let two = BigUint::from(2u32);
        if self.b < two {
            return Err(Violation::BaseTooSmall);
        }
        if self.y < two {
            return Err(Violation::RootTooSmall);
        }
        if self.w.radix() != &Radix::Canonical(self.b.clone()) {
            return Err(Violation::WordRadix);
        }
        if self.w.len() != l as usize {
            return Err(Violation::WordLength {
                expected: l,
                found: self.w.len(),
            });
        }
        if word_value(&self.w) != self.c {
            return Err(Violation::WordValue);
        }
        let low: BigUint = Pow::pow(&self.b, l - 1);
        let high = &low * &self.b;
        if self.c < low || self.c >= high {
            return Err(Violation::BlockRange);
        }
        let power: BigUint = Pow::pow(&self.y, q);
        if power != &self.c * repunit_quotient(&self.b, n, l) {
            return Err(Violation::PowerEquation);
        }
        let digits = to_canonical(&power, &self.b).map_err(|_| Violation::DigitString)?;
        match repeat_word(&self.w, n as usize) {
            Ok(expected) if expected == digits => Ok(()),
            _ => Err(Violation::DigitString),
        }
    }

    pub fn is_valid(&self) -> bool {
        self.check().is_ok()
    }

    /// CSV line `q,n,l,b,y,c,w` with `w` as a parenthesised digit list.
    pub fn to_csv_line(&self) -> String {
        let Triple { q, n, l } = self.triple;
        format!("{q},{n},{l},{},{},{},\"{}\"", self.b, self.y, self.c, self.w.digit_list())
    }
}

pub const CSV_HEADER: &str = "q,n,l,b,y,c,w";

impl Ord for SolutionRecord {
    fn cmp(&self, other: &Self) -> Ordering {
        (&self.triple, &self.b, &self.y, &self.c).cmp(&(&other.triple, &other.b, &other.y, &other.c))
    }
}

impl PartialOrd for SolutionRecord {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for SolutionRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} b={} y={} w={}", self.triple, self.b, self.y, self.w.digit_list())
    }
}
