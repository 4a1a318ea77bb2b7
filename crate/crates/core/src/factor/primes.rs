//! Small-prime sieve and primality testing.

use std::sync::OnceLock;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// Trial division bound used by the factoring stack.
pub const TRIAL_BOUND: u32 = 1_000_000;

const MR_BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

// Miller-Rabin with MR_BASES is deterministic below this value.
const MR_DETERMINISTIC_LIMIT: u128 = 318_665_857_834_031_151_167_461;

/// Primes up to [`TRIAL_BOUND`], ascending.
pub fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| sieve(TRIAL_BOUND))
}

pub fn sieve(limit: u32) -> Vec<u32> {
    let limit = limit as usize;
    if limit < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; limit + 1];
    let mut primes = Vec::new();
    for i in 2..=limit {
        if !composite[i] {
            primes.push(i as u32);
            let mut j = i * i;
            while j <= limit {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic primality for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'bases: for &a in &MR_BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'bases;
            }
        }
        return false;
    }
    true
}

fn strong_probable_prime(n: &BigUint, a: &BigUint) -> bool {
    let n_minus_1 = n - 1u32;
    let s = n_minus_1.trailing_zeros().unwrap_or(0);
    let d = &n_minus_1 >> s;
    let mut x = a.modpow(&d, n);
    if x.is_one() || x == n_minus_1 {
        return true;
    }
    for _ in 1..s {
        x = (&x * &x) % n;
        if x == n_minus_1 {
            return true;
        }
    }
    false
}

fn jacobi(a: &BigInt, n: &BigInt) -> i32 {
    let mut a = a.mod_floor(n);
    let mut n = n.clone();
    let mut result = 1;
    let three = BigInt::from(3);
    let five = BigInt::from(5);
    let eight = BigInt::from(8);
    let four = BigInt::from(4);
    while !a.is_zero() {
        while a.is_even() {
            a >>= 1;
            let r = n.mod_floor(&eight);
            if r == three || r == five {
                result = -result;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a.mod_floor(&four) == three && n.mod_floor(&four) == three {
            result = -result;
        }
        a = a.mod_floor(&n);
    }
    if n.is_one() {
        result
    } else {
        0
    }
}

fn half_mod(x: BigInt, n: &BigInt) -> BigInt {
    let x: BigInt = if x.is_odd() { x + n } else { x };
    (x >> 1u32).mod_floor(n)
}

/// Strong Lucas probable-prime test with Selfridge parameters. `n` must be odd
/// and not a perfect square.
fn strong_lucas_probable_prime(n: &BigUint) -> bool {
    let n_int = BigInt::from(n.clone());
    let mut d = BigInt::from(5);
    loop {
        match jacobi(&d, &n_int) {
            -1 => break,
            0 if d.abs() != n_int => return false,
            _ => {}
        }
        d = if d.is_positive() { -(d + 2u32) } else { -(d - 2u32) };
    }
    let p = BigInt::one();
    let q: BigInt = (BigInt::one() - &d) / 4u32;
    let n_plus_1: BigInt = &n_int + 1u32;
    let s = n_plus_1.trailing_zeros().unwrap_or(0);
    let odd = &n_plus_1 >> s;

    let mut u = BigInt::one();
    let mut v = p.clone();
    let mut qk = q.mod_floor(&n_int);
    let bits = odd.bits();
    for i in (0..bits - 1).rev() {
        u = (&u * &v).mod_floor(&n_int);
        v = (&v * &v - &qk - &qk).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if odd.bit(i) {
            let nu = half_mod(&p * &u + &v, &n_int);
            let nv = half_mod(&d * &u + &p * &v, &n_int);
            u = nu;
            v = nv;
            qk = (&qk * &q).mod_floor(&n_int);
        }
    }
    if u.is_zero() || v.is_zero() {
        return true;
    }
    for _ in 1..s {
        v = (&v * &v - &qk - &qk).mod_floor(&n_int);
        qk = (&qk * &qk).mod_floor(&n_int);
        if v.is_zero() {
            return true;
        }
    }
    false
}

/// Primality test: deterministic below 3.18e23, Baillie-PSW above.
pub fn is_prime(n: &BigUint) -> bool {
    if let Some(small) = n.to_u64() {
        return is_prime_u64(small);
    }
    for &p in &small_primes()[..168] {
        if (n % p).is_zero() {
            return false;
        }
    }
    let small_enough = n.to_u128().is_some_and(|v| v < MR_DETERMINISTIC_LIMIT);
    let bases: &[u64] = if small_enough { &MR_BASES } else { &MR_BASES[..4] };
    for &a in bases {
        if !strong_probable_prime(n, &BigUint::from(a)) {
            return false;
        }
    }
    if small_enough {
        return true;
    }
    if super::super::arith::exact_root(n, 2).is_some() {
        return false;
    }
    strong_lucas_probable_prime(n)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sieve_counts() {
        assert_eq!(sieve(100).len(), 25);
        assert_eq!(small_primes().len(), 78_498);
    }

    #[test]
    fn u64_primality_matches_sieve() {
        let primes = sieve(100_000);
        let mut idx = 0;
        for n in 0..100_000u64 {
            let expected = idx < primes.len() && primes[idx] as u64 == n;
            if expected {
                idx += 1;
            }
            assert_eq!(is_prime_u64(n), expected, "n = {n}");
        }
        assert!(is_prime_u64(18_446_744_073_709_551_557));
        // strong pseudoprime to bases 2..=37 except the largest ones
        assert!(!is_prime_u64(3_825_123_056_546_413_051));
    }

    #[test]
    fn big_primality() {
        let m61 = (BigUint::one() << 61u32) - 1u32;
        let m89 = (BigUint::one() << 89u32) - 1u32;
        let m127 = (BigUint::one() << 127u32) - 1u32;
        let m521 = (BigUint::one() << 521u32) - 1u32;
        assert!(is_prime(&m61));
        assert!(is_prime(&m89));
        assert!(is_prime(&m127));
        assert!(is_prime(&m521));
        assert!(!is_prime(&(&m89 * &m61)));
        assert!(!is_prime(&(&m127 * &m127)));
        assert!(!is_prime(&((BigUint::one() << 128u32) + 1u32)));
    }

    #[test]
    fn lucas_agrees_on_small_odd_numbers() {
        for n in (3u64..5000).step_by(2) {
            let big = BigUint::from(n);
            if crate::arith::exact_root(&big, 2).is_some() {
                continue;
            }
            let lucas = strong_lucas_probable_prime(&big);
            if is_prime_u64(n) {
                assert!(lucas, "prime {n} rejected");
            }
        }
        // 5459 = 53 * 103 is a strong Lucas pseudoprime.
        assert!(strong_lucas_probable_prime(&BigUint::from(5459u32)));
        assert!(!strong_lucas_probable_prime(&BigUint::from(5461u32)));
    }
}
