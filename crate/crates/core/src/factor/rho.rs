//! Pollard's rho with Brent's cycle detection, deterministically seeded.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};

use super::primes::mul_mod;
use super::Meter;
use crate::error::Result;

const BATCH: u64 = 128;

fn rho_u64(n: u64, c: u64, meter: &mut Meter) -> Result<Option<u64>> {
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let mut y = 2 % n;
    let mut r = 1u64;
    let mut q = 1u64;
    let mut x;
    let mut ys;
    loop {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r {
            ys = y;
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            meter.charge(steps)?;
            let g = q.gcd(&n);
            if g != 1 {
                if g != n {
                    return Ok(Some(g));
                }
                // Batch overshot: replay one step at a time.
                loop {
                    ys = f(ys);
                    let g = x.abs_diff(ys).gcd(&n);
                    if g != 1 {
                        return Ok(if g == n { None } else { Some(g) });
                    }
                }
            }
            k += steps;
        }
        r *= 2;
    }
}

fn rho_big(n: &BigUint, c: u64, meter: &mut Meter) -> Result<Option<BigUint>> {
    let c = BigUint::from(c);
    let f = |x: &BigUint| (x * x + &c) % n;
    let diff = |a: &BigUint, b: &BigUint| if a > b { a - b } else { b - a };
    let mut y = BigUint::from(2u32) % n;
    let mut r = 1u64;
    let mut q = BigUint::one();
    let mut x;
    let mut ys;
    loop {
        x = y.clone();
        for _ in 0..r {
            y = f(&y);
        }
        let mut k = 0;
        while k < r {
            ys = y.clone();
            let steps = BATCH.min(r - k);
            for _ in 0..steps {
                y = f(&y);
                q = (&q * diff(&x, &y)) % n;
            }
            meter.charge(steps)?;
            let g = q.gcd(n);
            if !g.is_one() {
                if &g != n {
                    return Ok(Some(g));
                }
                loop {
                    ys = f(&ys);
                    let g = diff(&x, &ys).gcd(n);
                    if !g.is_one() {
                        return Ok(if &g == n { None } else { Some(g) });
                    }
                }
            }
            k += steps;
        }
        r *= 2;
    }
}

/// A nontrivial divisor of the odd composite `n`.
pub(crate) fn find_divisor(n: &BigUint, meter: &mut Meter) -> Result<BigUint> {
    debug_assert!(n > &BigUint::one());
    if n.is_even() {
        return Ok(BigUint::from(2u32));
    }
    let mut c = 1u64;
    loop {
        if let Some(small) = n.to_u64() {
            if let Some(d) = rho_u64(small, c, meter)? {
                return Ok(BigUint::from(d));
            }
        } else if let Some(d) = rho_big(n, c, meter)? {
            return Ok(d);
        }
        c += 1;
    }
}
