//! Infinite families for the sporadic admissible triples, read off from
//! integral points on conics `x^2 - D y^2 = N`.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{Pow, Signed};

use super::norm::{find_seed, find_step, fundamental_unit, Congruence, NormFamily};
use super::take_verified;
use crate::arith::QuadInt;
use crate::error::{Error, Result};
use crate::search::SolutionRecord;
use crate::triples::Triple;

const SEED_SEARCH: i64 = 100_000;

fn build(d: i64, norm: i64, congruence: Option<Congruence>, accept: impl Fn(i64, i64) -> bool) -> NormFamily {
    let unit = fundamental_unit(d).expect("known ring");
    let seed = find_seed(d, norm, SEED_SEARCH, accept).expect("seed exists below the search bound");
    let step = find_step(&unit, congruence).expect("step exists below the cap");
    NormFamily::new(d, norm, seed, unit, step, congruence).expect("consistent family")
}

/// `a + b sqrt 3` of norm -3 with `a` odd and `b` even: points on `3y^2 = x^2+x+1`.
pub fn family_231() -> NormFamily {
    build(3, -3, Some(Congruence::Fixed(2)), |a, b| a % 2 == 1 && b % 2 == 0)
}

/// The subfamily with `a = 39 (mod 98)`, on which `49 | x^2 - x + 1`.
pub fn family_232() -> NormFamily {
    build(3, -3, Some(Congruence::Fixed(98)), |a, _| a % 98 == 39)
}

/// `a + b sqrt 7` of norm -3 with `a` odd and `14 | b`: points on `343 y^2 = x^2+x+1`.
pub fn family_331() -> NormFamily {
    build(7, -3, Some(Congruence::Fixed(14)), |a, b| a % 2 == 1 && b % 14 == 0)
}

/// Odd powers of `1 + sqrt 2`: points on `2y^2 = x^2 + 1`.
pub fn family_pell() -> NormFamily {
    build(2, -1, None, |_, _| true)
}

/// The points on `2y^2 = x^2 + 1` with `13 | y`.
pub fn family_422() -> NormFamily {
    build(2, -1, Some(Congruence::Divisible(13)), |_, b| b % 13 == 0)
}

fn parts(x: &QuadInt) -> (BigUint, BigUint) {
    let a = x.a().abs().to_biguint().expect("nonnegative");
    let b = x.b().abs().to_biguint().expect("nonnegative");
    (a, b)
}

fn big(v: u32) -> BigUint {
    BigUint::from(v)
}

fn triple(q: u32, n: u32, l: u32) -> Triple {
    Triple::new(q, n, l).expect("valid triple")
}

/// Records `(b, y, c) = (x, 3 y0, 3)` from `3 y0^2 = x^2 + x + 1`.
pub fn gen_231(count: usize) -> Vec<SolutionRecord> {
    let t = triple(2, 3, 1);
    take_verified(
        count,
        family_231().members().map(|m| {
            let (a, b) = parts(&m);
            let x = (a - 1u32) / 2u32;
            let y0 = b / 2u32;
            SolutionRecord::new(t, x, y0 * 3u32, big(3))
        }),
    )
}

/// Records with `b = x`, `c = 3 (x^2 - x + 1) / 49`, `y = 3 (x^2 - x + 1) y0 / 7`.
pub fn gen_232(count: usize) -> Vec<SolutionRecord> {
    let t = triple(2, 3, 2);
    take_verified(
        count,
        family_232().members().map(|m| {
            let (a, b) = parts(&m);
            let x = (a - 1u32) / 2u32;
            let y0 = b / 2u32;
            let h = &x * &x - &x + 1u32;
            let (c, rem) = (&h * 3u32).div_rem(&big(49));
            if rem != big(0) {
                return Err(Error::BadFamily(format!("49 does not divide x^2 - x + 1 at x = {x}")));
            }
            let y = h * 3u32 * y0 / 7u32;
            SolutionRecord::new(t, x, y, c)
        }),
    )
}

/// Records `(b, y, c) = (x, 2 y0, 4 y0)` from `2 y0^2 = x^2 + 1`.
pub fn gen_322(count: usize) -> Vec<SolutionRecord> {
    let t = triple(3, 2, 2);
    take_verified(
        count,
        family_pell().members().map(|m| {
            let (x, y0) = parts(&m);
            SolutionRecord::new(t, x, &y0 * 2u32, y0 * 4u32)
        }),
    )
}

/// Records `(b, y, c) = (x, 7 y0, y0)` from `343 y0^2 = x^2 + x + 1`.
pub fn gen_331(count: usize) -> Vec<SolutionRecord> {
    let t = triple(3, 3, 1);
    take_verified(
        count,
        family_331().members().map(|m| {
            let (a, b) = parts(&m);
            let x = (a - 1u32) / 2u32;
            let y0 = b / 14u32;
            SolutionRecord::new(t, x, &y0 * 7u32, y0)
        }),
    )
}

/// Maps a `(3,3,1)` solution `(b, y, c)` to the `(3,2,3)` solution
/// `(b + 1, y (b + 2), c (b + 2)^2)`.
pub fn transform_331_to_323(r: &SolutionRecord) -> Result<SolutionRecord> {
    if r.triple != triple(3, 3, 1) {
        return Err(Error::InvalidParameter(format!("expected a (3,3,1) record, got {}", r.triple)));
    }
    let shift = &r.b + 2u32;
    let c: BigUint = &r.c * Pow::pow(&shift, 2u32);
    SolutionRecord::new(triple(3, 2, 3), &r.b + 1u32, &r.y * &shift, c)
}

pub fn gen_323(count: usize) -> Vec<SolutionRecord> {
    take_verified(count, gen_331(count).iter().map(transform_331_to_323))
}

/// Records `(b, y, c) = (x, y0 (x + 1), (x + 1) / 2)` from `2 y0^2 = x^2 + 1`.
pub fn gen_241(count: usize) -> Vec<SolutionRecord> {
    let t = triple(2, 4, 1);
    take_verified(
        count,
        family_pell().members().map(|m| {
            let (x, y0) = parts(&m);
            let c = (&x + 1u32) / 2u32;
            let y = y0 * (&x + 1u32);
            SolutionRecord::new(t, x, y, c)
        }),
    )
}

/// Records `(b, y, c) = (x, 6 y0 / 13, 648 y0^2 / 13^4)` from `2 y0^2 = x^2 + 1`, `13 | y0`.
pub fn gen_422(count: usize) -> Vec<SolutionRecord> {
    let t = triple(4, 2, 2);
    take_verified(
        count,
        family_422().members().map(|m| {
            let (x, y0) = parts(&m);
            let (c, rem) = (&y0 * &y0 * 648u32).div_rem(&big(28_561));
            if rem != big(0) {
                return Err(Error::BadFamily(format!("13^2 does not divide {y0}")));
            }
            SolutionRecord::new(t, x, y0 * 6u32 / 13u32, c)
        }),
    )
}
