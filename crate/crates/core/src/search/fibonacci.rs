//! Repdigit-like powers in the Zeckendorf representation: `y` with
//! `(y^q)_F = w` repeated `n` times.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::Pow;
use rayon::prelude::*;

use crate::repr::{split_repetition, to_zeckendorf, Word};

/// `FIB[k] = F_(k+2)`, the weight of bit `k`, for every value fitting a `u64`.
fn fib_weights() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut v = vec![1u64, 2];
        while let Some(next) = v[v.len() - 1].checked_add(v[v.len() - 2]) {
            v.push(next);
        }
        v
    })
}

/// Zeckendorf digits of `x > 0` as a bit mask (bit `k` weighs `F_(k+2)`) and length.
fn zeckendorf_mask(mut x: u64) -> (u128, u32) {
    let fib = fib_weights();
    let mut end = fib.partition_point(|&f| f <= x);
    let len = end as u32;
    let mut mask = 0u128;
    while x > 0 {
        let k = fib[..end].partition_point(|&f| f <= x) - 1;
        mask |= 1u128 << k;
        x -= fib[k];
        end = k;
    }
    (mask, len)
}

fn repeated_block(mask: u128, len: u32, n: u32) -> Option<(u128, u32)> {
    if len == 0 || !len.is_multiple_of(n) {
        return None;
    }
    let m = len / n;
    let block = mask & ((1u128 << m) - 1);
    let mut whole = 0u128;
    for i in 0..n {
        whole |= block << (i * m);
    }
    (whole == mask).then_some((block, m))
}

fn mask_word(block: u128, m: u32) -> Word {
    let bits: String = (0..m).rev().map(|k| if block >> k & 1 == 1 { '1' } else { '0' }).collect();
    Word::zeckendorf(&bits).expect("block of a Zeckendorf word is valid")
}

fn check_power(y: u64, q: u32, n: u32) -> Option<Word> {
    let fast = (y as u128).checked_pow(q).filter(|&v| v <= u64::MAX as u128);
    match fast {
        Some(v) => {
            let (mask, len) = zeckendorf_mask(v as u64);
            repeated_block(mask, len, n).map(|(block, m)| mask_word(block, m))
        }
        None => {
            let v: BigUint = Pow::pow(BigUint::from(y), q);
            split_repetition(&to_zeckendorf(&v), n as usize)
        }
    }
}

/// Every `1 <= y < y_max` whose `q`-th power is an `n`-fold repetition in
/// Zeckendorf form, ascending, with the repeated block.
pub fn search_fib_powers(q: u32, n: u32, y_max: u64) -> Vec<(u64, Word)> {
    assert!(q >= 2 && n >= 2, "need q >= 2 and n >= 2");
    const CHUNK: u64 = 1 << 16;
    let chunks = y_max.saturating_sub(1).div_ceil(CHUNK);
    let mut out: Vec<(u64, Word)> = (0..chunks)
        .into_par_iter()
        .flat_map_iter(|i| {
            let lo = 1 + i * CHUNK;
            let hi = (lo + CHUNK).min(y_max);
            (lo..hi).filter_map(move |y| check_power(y, q, n).map(|w| (y, w)))
        })
        .collect();
    out.sort_by_key(|(y, _)| *y);
    out
}

/// `search_fib_powers(2, 2, y_max)`.
pub fn search_fib_squares(y_max: u64) -> Vec<(u64, Word)> {
    search_fib_powers(2, 2, y_max)
}
