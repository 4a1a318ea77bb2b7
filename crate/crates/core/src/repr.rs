//! Digit strings in canonical base-b, bijective base-b and Zeckendorf
//! (Fibonacci) representation, plus word repetition.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Representation system of a [`Word`], carrying the base where there is one.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Radix {
    Canonical(BigUint),
    Bijective(BigUint),
    Zeckendorf,
}

/// The kind of a [`Radix`], without its base.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum System {
    Canonical,
    Bijective,
    Zeckendorf,
}

impl Radix {
    pub fn system(&self) -> System {
        match self {
            Radix::Canonical(_) => System::Canonical,
            Radix::Bijective(_) => System::Bijective,
            Radix::Zeckendorf => System::Zeckendorf,
        }
    }

    pub fn base(&self) -> Option<&BigUint> {
        match self {
            Radix::Canonical(b) | Radix::Bijective(b) => Some(b),
            Radix::Zeckendorf => None,
        }
    }
}

impl FromStr for System {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "canonical" => Ok(System::Canonical),
            "bijective" => Ok(System::Bijective),
            "zeckendorf" | "fibonacci" => Ok(System::Zeckendorf),
            other => Err(Error::InvalidParameter(format!("unknown representation system {other:?}"))),
        }
    }
}

impl fmt::Display for System {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            System::Canonical => "canonical",
            System::Bijective => "bijective",
            System::Zeckendorf => "zeckendorf",
        })
    }
}

/// A digit sequence, most significant digit first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    radix: Radix,
    digits: Vec<BigUint>,
}

fn check_base(b: &BigUint) -> Result<()> {
    if b < &BigUint::from(2u32) {
        return Err(Error::InvalidBase(b.to_string()));
    }
    Ok(())
}

fn validate(radix: &Radix, digits: &[BigUint]) -> Result<()> {
    match radix {
        Radix::Canonical(b) => {
            check_base(b)?;
            if let Some(d) = digits.iter().find(|d| *d >= b) {
                return Err(Error::MalformedWord(format!("digit {d} out of range for base {b}")));
            }
            if digits.first().is_some_and(Zero::is_zero) {
                return Err(Error::MalformedWord(String::from("leading zero")));
            }
        }
        Radix::Bijective(b) => {
            check_base(b)?;
            if let Some(d) = digits.iter().find(|d| d.is_zero() || *d > b) {
                return Err(Error::MalformedWord(format!(
                    "digit {d} out of range 1..={b} for bijective base {b}"
                )));
            }
        }
        Radix::Zeckendorf => {
            if digits.iter().any(|d| d > &BigUint::one()) {
                return Err(Error::MalformedWord(String::from("Zeckendorf digits must be 0 or 1")));
            }
            if digits.first().is_some_and(Zero::is_zero) {
                return Err(Error::MalformedWord(String::from("leading zero")));
            }
            if digits.windows(2).any(|w| w[0].is_one() && w[1].is_one()) {
                return Err(Error::MalformedWord(String::from("adjacent ones")));
            }
        }
    }
    Ok(())
}

impl Word {
    pub fn new(radix: Radix, digits: Vec<BigUint>) -> Result<Self> {
        validate(&radix, &digits)?;
        Ok(Word { radix, digits })
    }

    pub fn from_u64_digits(radix: Radix, digits: &[u64]) -> Result<Self> {
        Self::new(radix, digits.iter().map(|&d| BigUint::from(d)).collect())
    }

    pub fn canonical(base: u64, digits: &[u64]) -> Result<Self> {
        Self::from_u64_digits(Radix::Canonical(BigUint::from(base)), digits)
    }

    pub fn bijective(base: u64, digits: &[u64]) -> Result<Self> {
        Self::from_u64_digits(Radix::Bijective(BigUint::from(base)), digits)
    }

    /// A Zeckendorf word from a string of `0`/`1` characters.
    pub fn zeckendorf(bits: &str) -> Result<Self> {
        let digits = bits
            .chars()
            .map(|ch| match ch {
                '0' => Ok(BigUint::zero()),
                '1' => Ok(BigUint::one()),
                other => Err(Error::MalformedWord(format!("unexpected character {other:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(Radix::Zeckendorf, digits)
    }

    pub fn empty(radix: Radix) -> Result<Self> {
        Self::new(radix, Vec::new())
    }

    pub fn radix(&self) -> &Radix {
        &self.radix
    }

    pub fn system(&self) -> System {
        self.radix.system()
    }

    pub fn digits(&self) -> &[BigUint] {
        &self.digits
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    /// Parses the text rendering: `(d1,...,dk)@b` or a Zeckendorf bit string.
    pub fn parse(text: &str, system: System) -> Result<Self> {
        let text = text.trim();
        if system == System::Zeckendorf {
            return Self::zeckendorf(text);
        }
        let bad = || Error::MalformedWord(format!("expected (d1,...,dk)@b, got {text:?}"));
        let (body, base) = text.rsplit_once('@').ok_or_else(bad)?;
        let base = BigUint::from_str(base.trim()).map_err(|_| bad())?;
        let inner = body
            .trim()
            .strip_prefix('(')
            .and_then(|s| s.strip_suffix(')'))
            .ok_or_else(bad)?;
        let digits = if inner.trim().is_empty() {
            Vec::new()
        } else {
            inner
                .split(',')
                .map(|d| BigUint::from_str(d.trim()).map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?
        };
        let radix = match system {
            System::Canonical => Radix::Canonical(base),
            System::Bijective => Radix::Bijective(base),
            System::Zeckendorf => unreachable!(),
        };
        Self::new(radix, digits)
    }

    /// Digits joined by commas in parentheses, without the base suffix.
    pub fn digit_list(&self) -> String {
        let parts: Vec<String> = self.digits.iter().map(ToString::to_string).collect();
        format!("({})", parts.join(","))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.radix {
            Radix::Zeckendorf => {
                for d in &self.digits {
                    f.write_str(if d.is_zero() { "0" } else { "1" })?;
                }
                Ok(())
            }
            Radix::Canonical(b) | Radix::Bijective(b) => write!(f, "{}@{}", self.digit_list(), b),
        }
    }
}

/// Canonical base-`b` representation of `x`; zero gives the empty word.
pub fn to_canonical(x: &BigUint, b: &BigUint) -> Result<Word> {
    check_base(b)?;
    let mut digits = Vec::new();
    let mut rest = x.clone();
    while !rest.is_zero() {
        let (q, r) = rest.div_rem(b);
        digits.push(r);
        rest = q;
    }
    digits.reverse();
    Ok(Word {
        radix: Radix::Canonical(b.clone()),
        digits,
    })
}

/// Bijective base-`b` representation (digits `1..=b`) of `x >= 1`.
pub fn to_bijective(x: &BigUint, b: &BigUint) -> Result<Word> {
    check_base(b)?;
    if x.is_zero() {
        return Err(Error::OutOfDomain(String::from("bijective numeration has no representation of 0")));
    }
    let mut digits = Vec::new();
    let mut rest = x.clone();
    while !rest.is_zero() {
        let (mut q, mut r) = rest.div_rem(b);
        if r.is_zero() {
            r = b.clone();
            q -= 1u32;
        }
        digits.push(r);
        rest = q;
    }
    digits.reverse();
    Ok(Word {
        radix: Radix::Bijective(b.clone()),
        digits,
    })
}

/// Fibonacci numbers `F_0 = 0, F_1 = 1, F_2 = 1, F_3 = 2, ...` up to and
/// including the first one exceeding `limit`.
pub fn fibonacci_up_to(limit: &BigUint) -> Vec<BigUint> {
    let mut fib = vec![BigUint::zero(), BigUint::one()];
    while fib.last().expect("nonempty") <= limit {
        let next = &fib[fib.len() - 1] + &fib[fib.len() - 2];
        fib.push(next);
    }
    fib
}

/// `F_i` with `F_0 = 0`, `F_1 = 1`.
pub fn fibonacci(i: usize) -> BigUint {
    let (mut a, mut b) = (BigUint::zero(), BigUint::one());
    for _ in 0..i {
        let next = &a + &b;
        a = std::mem::replace(&mut b, next);
    }
    a
}

/// Greedy Zeckendorf representation; the last digit weighs `F_2 = 1`.
pub fn to_zeckendorf(x: &BigUint) -> Word {
    if x.is_zero() {
        return Word {
            radix: Radix::Zeckendorf,
            digits: Vec::new(),
        };
    }
    let fib = fibonacci_up_to(x);
    // fib[top] is the largest Fibonacci number <= x
    let top = fib.len() - 2;
    let mut rest = x.clone();
    let mut digits = Vec::with_capacity(top - 1);
    for f in fib[2..=top].iter().rev() {
        if f <= &rest {
            rest -= f;
            digits.push(BigUint::one());
        } else {
            digits.push(BigUint::zero());
        }
    }
    debug_assert!(rest.is_zero());
    Word {
        radix: Radix::Zeckendorf,
        digits,
    }
}

/// The integer a word denotes in its own representation system.
pub fn word_value(w: &Word) -> BigUint {
    match &w.radix {
        Radix::Canonical(b) | Radix::Bijective(b) => w
            .digits
            .iter()
            .fold(BigUint::zero(), |acc, d| acc * b + d),
        Radix::Zeckendorf => {
            let (mut lo, mut hi) = (BigUint::one(), BigUint::from(2u32));
            let mut total = BigUint::zero();
            for d in w.digits.iter().rev() {
                if d.is_one() {
                    total += &lo;
                }
                let next = &lo + &hi;
                lo = std::mem::replace(&mut hi, next);
            }
            total
        }
    }
}

/// `w` concatenated `n` times.
pub fn repeat_word(w: &Word, n: usize) -> Result<Word> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if n == 0 {
        return Err(Error::InvalidParameter(String::from("repetition count must be at least 1")));
    }
    let mut digits = Vec::with_capacity(w.len() * n);
    for _ in 0..n {
        digits.extend_from_slice(&w.digits);
    }
    Word::new(w.radix.clone(), digits)
}

/// The block `u` with `u` repeated `n` times equal to `w`, if there is one.
pub fn split_repetition(w: &Word, n: usize) -> Option<Word> {
    if n == 0 || w.is_empty() || !w.len().is_multiple_of(n) {
        return None;
    }
    let block = w.len() / n;
    let (head, _) = w.digits.split_at(block);
    if w.digits.chunks(block).all(|chunk| chunk == head) {
        Some(Word {
            radix: w.radix.clone(),
            digits: head.to_vec(),
        })
    } else {
        None
    }
}
