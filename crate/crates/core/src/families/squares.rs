//! Squares whose digits are a block written twice, `(y^2)_b = w w`, and the
//! trivial family for `(n, l) = (2, 1)`.

use num_bigint::BigUint;
use num_traits::{One, Pow};

use super::take_verified;
use crate::arith::ceil_root;
use crate::error::{Error, Result};
use crate::factor::{is_prime_u64, mul_mod, pow_mod};
use crate::search::SolutionRecord;
use crate::triples::Triple;

/// Roots of `x^(2^t) = -1 (mod p^2)` in `[2, p^2)`, ascending.
///
/// Roots modulo `p` are found by scanning and lifted once (Hensel); the lift
/// is unique because `p` does not divide the derivative.
fn roots_mod_p_squared(p: u64, t: u32) -> Vec<u64> {
    let e = 1u64 << t;
    let p2 = p * p;
    let mut out = Vec::new();
    for x0 in 1..p {
        if pow_mod(x0, e, p) != p - 1 {
            continue;
        }
        let f = (pow_mod(x0, e, p2) + 1) % p2;
        let k = f / p % p;
        let deriv = mul_mod(e % p, pow_mod(x0, e - 1, p), p);
        let inv = pow_mod(deriv, p - 2, p);
        let shift = mul_mod(k, inv, p);
        let x1 = (x0 + p2 - shift * p % p2) % p2;
        if x1 >= 2 {
            out.push(x1);
        }
    }
    out.sort_unstable();
    out
}

/// Pairs `(p, b)` with `p >= 5` prime, `p = 1 (mod 2^(t+1))`, `2 <= b < p^2` and
/// `b^(2^t) = -1 (mod p^2)`, ordered by `(p, b)`.
pub fn witnesses(t: u32) -> impl Iterator<Item = (u64, u64)> {
    let modulus = 1u64 << (t + 1);
    (0u64..)
        .map(move |k| 1 + k * modulus)
        .filter(|&p| p >= 5 && is_prime_u64(p))
        .flat_map(move |p| roots_mod_p_squared(p, t).into_iter().map(move |b| (p, b)))
}

fn length_candidate(l: u32, p: u64, b: u64) -> Result<SolutionRecord> {
    let triple = Triple::new(2, 2, l)?;
    let base = BigUint::from(b);
    let p_big = BigUint::from(p);
    let p2 = &p_big * &p_big;
    let m = (Pow::pow(&base, l) + 1u32) / &p2;
    // least v with v^2 b >= p^2
    let v = ceil_root(&((&p2 + &base - 1u32) / &base), 2)?;
    let y = &m * &v * &p_big;
    let c = m * &v * &v;
    SolutionRecord::new(triple, base, y, c)
}

/// Solutions of `(y^2)_b = w w` with `|w| = l`, one per witness pair `(p, b)`.
pub fn gen_22_by_length(l: u32, count: usize) -> Result<Vec<SolutionRecord>> {
    if l == 0 {
        return Err(Error::InvalidParameter(String::from("block length must be at least 1")));
    }
    let t = l.trailing_zeros();
    if t > 20 {
        return Err(Error::TooLarge(format!("2-adic valuation of {l}")));
    }
    Ok(take_verified(count, witnesses(t).map(|(p, b)| length_candidate(l, p, b))))
}

fn order_mod(b: u64, m: u64) -> Option<u64> {
    let b = b % m;
    let mut x = b;
    for k in 1..=m {
        if x == 1 {
            return Some(k);
        }
        x = mul_mod(x, b, m);
    }
    None
}

/// Prime `p`, multiplier `t` and half-order `e` of `b` modulo `p^2` used by [`gen_22_by_base`].
pub fn base_parameters(b: u64) -> Result<(u64, u64, u64)> {
    if b < 2 {
        return Err(Error::InvalidBase(b.to_string()));
    }
    const SMALL: [(u64, u64); 14] = [
        (5, 2), (5, 2), (5, 2), (7, 2), (7, 2), (5, 2), (5, 2),
        (5, 2), (7, 2), (13, 3), (5, 2), (5, 2), (5, 2), (13, 3),
    ];
    let half_order = |p: u64| -> Option<u64> {
        let o = order_mod(b, p * p)?;
        (o % 2 == 0).then_some(o / 2)
    };
    if b < 16 {
        let (p, t) = SMALL[(b - 2) as usize];
        let e = half_order(p).expect("tabulated prime gives even order");
        return Ok((p, t, e));
    }
    for p in (5u64..).filter(|&p| is_prime_u64(p) && !b.is_multiple_of(p)) {
        let Some(e) = half_order(p) else { continue };
        // least t with t^4 b > p^2, accepted when 10 t^2 < 9 p
        let p2 = (p * p) as u128;
        let mut t = 1u64;
        while (t as u128).pow(4) * (b as u128) <= p2 {
            t += 1;
        }
        if 10 * t * t < 9 * p {
            return Ok((p, t, e));
        }
    }
    unreachable!("primes are unbounded")
}

/// Solutions of `(y^2)_b = w w` for a fixed base: `y = t^2 (b^(re) + 1) / p`
/// for odd `r`, with `|w| = re`.
pub fn gen_22_by_base(b: u64, count: usize) -> Result<Vec<SolutionRecord>> {
    let (p, t, e) = base_parameters(b)?;
    let base = BigUint::from(b);
    let e = u32::try_from(e).map_err(|_| Error::TooLarge(format!("order of {b} modulo {p}^2")))?;
    let candidates = (1u32..).step_by(2).map(move |r| {
        let l = r * e;
        let shifted: BigUint = Pow::pow(&base, l) + 1u32;
        let t2 = BigUint::from(t * t);
        let y = &t2 * &shifted / p;
        let c = &t2 * &t2 * shifted / (p * p);
        SolutionRecord::new(Triple::new(2, 2, l)?, base.clone(), y, c)
    });
    Ok(take_verified(count, candidates))
}

/// `(y^q)_b = (1,1)` with `b = y^q - 1`, for `y = 2, 3, ...`.
pub fn gen_n21(q: u32, count: usize) -> Result<Vec<SolutionRecord>> {
    let triple = Triple::new(q, 2, 1)?;
    let candidates = (2u64..).map(move |y| {
        let y = BigUint::from(y);
        let b: BigUint = Pow::pow(&y, q) - 1u32;
        SolutionRecord::new(triple, b, y, BigUint::one())
    });
    Ok(take_verified(count, candidates))
}
