//! Exact integer roots by integer Newton iteration; no floating point.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Unsigned integer scalars that support exact root extraction.
pub trait RootScalar: Clone + Ord + Integer {
    fn bit_len(&self) -> u64;
    fn from_u32(v: u32) -> Self;
    /// `2^bits`, or `None` if it does not fit.
    fn power_of_two(bits: u64) -> Option<Self>;
    fn checked_pow(&self, exp: u32) -> Option<Self>;
}

macro_rules! prim_root_scalar {
    ($t:ty) => {
        impl RootScalar for $t {
            fn bit_len(&self) -> u64 {
                (<$t>::BITS - self.leading_zeros()) as u64
            }
            fn from_u32(v: u32) -> Self {
                v as $t
            }
            fn power_of_two(bits: u64) -> Option<Self> {
                if bits < <$t>::BITS as u64 {
                    Some((1 as $t) << bits)
                } else {
                    None
                }
            }
            fn checked_pow(&self, exp: u32) -> Option<Self> {
                <$t>::checked_pow(*self, exp)
            }
        }
    };
}

prim_root_scalar!(u64);
prim_root_scalar!(u128);

impl RootScalar for BigUint {
    fn bit_len(&self) -> u64 {
        self.bits()
    }
    fn from_u32(v: u32) -> Self {
        BigUint::from(v)
    }
    fn power_of_two(bits: u64) -> Option<Self> {
        Some(BigUint::one() << bits)
    }
    fn checked_pow(&self, exp: u32) -> Option<Self> {
        Some(num_traits::Pow::pow(self, exp))
    }
}

/// `(floor(x^(1/q)), exact)` for any [`RootScalar`].
pub fn integer_root<T: RootScalar>(x: &T, q: u32) -> Result<(T, bool)> {
    if q == 0 {
        return Err(Error::InvalidExponent);
    }
    if x.is_zero() || x.is_one() || q == 1 {
        return Ok((x.clone(), true));
    }
    let bits = x.bit_len();
    if q as u64 >= bits {
        // 2^q > x >= 1
        return Ok((T::one(), false));
    }
    let q_t = T::from_u32(q);
    let q_minus_1 = T::from_u32(q - 1);
    // Start strictly above the root: 2^ceil(bits/q) > x^(1/q).
    let mut root = match T::power_of_two(bits.div_ceil(q as u64)) {
        Some(start) => start,
        None => unreachable!("q < bits keeps the starting estimate in range"),
    };
    loop {
        let divisor = root.checked_pow(q - 1);
        let quotient = match divisor {
            Some(d) if !d.is_zero() => x.clone() / d,
            _ => T::zero(),
        };
        let next = (q_minus_1.clone() * root.clone() + quotient) / q_t.clone();
        if next >= root {
            break;
        }
        root = next;
    }
    let exact = root.checked_pow(q).is_some_and(|p| &p == x);
    Ok((root, exact))
}

/// Floor of the `q`-th root of `x`, and whether the root is exact.
pub fn iroot(x: &BigUint, q: u32) -> Result<(BigUint, bool)> {
    if q >= 2 && x.bits() <= 128 {
        let small = u128::try_from(x).expect("fits in 128 bits");
        let (root, exact) = integer_root(&small, q)?;
        return Ok((BigUint::from(root), exact));
    }
    integer_root(x, q)
}

/// The exact `q`-th root of `x`, if `x` is a perfect `q`-th power.
pub fn exact_root(x: &BigUint, q: u32) -> Option<BigUint> {
    match iroot(x, q) {
        Ok((root, true)) => Some(root),
        _ => None,
    }
}

/// Smallest `k >= 0` with `k^q >= x`.
pub fn ceil_root(x: &BigUint, q: u32) -> Result<BigUint> {
    if x.is_zero() {
        return Ok(BigUint::zero());
    }
    let (root, exact) = iroot(x, q)?;
    Ok(if exact { root } else { root + 1u32 })
}

/// Integer square root, `floor(sqrt(x))`.
pub fn isqrt(x: &BigUint) -> BigUint {
    iroot(x, 2).expect("q = 2 is valid").0
}
