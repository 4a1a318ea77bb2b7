//! Squares `<y^2>_b = w w` in bijective base `b` (digits `1..=b`).

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::repr::{repeat_word, to_bijective, Radix, Word};

/// `y = b^l + 1` with `w = (b-1, ..., b-1, b, 1)` of length `l`.
pub fn gen_bijective_square(b: u64, l: u32) -> Result<(BigUint, Word)> {
    if b < 2 {
        return Err(Error::InvalidBase(b.to_string()));
    }
    if l < 2 {
        return Err(Error::InvalidParameter(String::from("block length must be at least 2")));
    }
    let base = BigUint::from(b);
    let y: BigUint = Pow::pow(&base, l) + 1u32;
    let mut digits = vec![b - 1; l as usize - 2];
    digits.extend([b, 1]);
    let w = Word::bijective(b, &digits)?;
    confirm(&y, &base, &w)?;
    Ok((y, w))
}

fn confirm(y: &BigUint, base: &BigUint, w: &Word) -> Result<()> {
    let square = to_bijective(&(y * y), base)?;
    if square != repeat_word(w, 2)? {
        return Err(Error::BadFamily(format!("<{y}^2>_{base} is {square}, not {w} twice")));
    }
    Ok(())
}

/// One row of the per-base pattern table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BijectivePattern {
    pub b: u64,
    pub y_block: Vec<u64>,
    pub y_mult: usize,
    pub y_add: usize,
    pub y_tail: Vec<u64>,
    pub sq_block: Vec<u64>,
    pub sq_mult: usize,
    pub sq_add: usize,
    pub sq_tail: Vec<u64>,
}

fn digit_string(s: &str) -> Vec<u64> {
    s.bytes().map(|c| u64::from(c - b'0')).collect()
}

/// The bundled pattern table, in file order.
pub fn bijective_patterns() -> &'static [BijectivePattern] {
    static TABLE: OnceLock<Vec<BijectivePattern>> = OnceLock::new();
    TABLE.get_or_init(|| {
        include_str!("../../data/bijective_families.csv")
            .lines()
            .filter(|l| !l.starts_with('#') && !l.starts_with("b,") && !l.trim().is_empty())
            .map(|l| {
                let f: Vec<&str> = l.split(',').collect();
                let num = |i: usize| f[i].parse::<usize>().expect("bundled table is well formed");
                BijectivePattern {
                    b: num(0) as u64,
                    y_block: digit_string(f[1]),
                    y_mult: num(2),
                    y_add: num(3),
                    y_tail: digit_string(f[4]),
                    sq_block: digit_string(f[5]),
                    sq_mult: num(6),
                    sq_add: num(7),
                    sq_tail: digit_string(f[8]),
                }
            })
            .collect()
    })
}

fn pattern_word(b: u64, block: &[u64], times: usize, tail: &[u64]) -> Result<Word> {
    let mut digits = Vec::with_capacity(block.len() * times + tail.len());
    for _ in 0..times {
        digits.extend_from_slice(block);
    }
    digits.extend_from_slice(tail);
    Word::bijective(b, &digits)
}

/// Member `n` of pattern `row` (counted from 0 among the rows for base `b`).
pub fn gen_bijective_table_family(b: u64, row: usize, n: usize) -> Result<(BigUint, Word)> {
    let pattern = bijective_patterns()
        .iter()
        .filter(|p| p.b == b)
        .nth(row)
        .ok_or_else(|| Error::UnknownFamily(format!("no bijective pattern {row} for base {b}")))?;
    let y_word = pattern_word(b, &pattern.y_block, pattern.y_mult * n + pattern.y_add, &pattern.y_tail)?;
    let w = pattern_word(b, &pattern.sq_block, pattern.sq_mult * n + pattern.sq_add, &pattern.sq_tail)?;
    let y = crate::repr::word_value(&y_word);
    confirm(&y, &BigUint::from(b), &w)?;
    debug_assert_eq!(w.radix(), &Radix::Bijective(BigUint::from(b)));
    Ok((y, w))
}
