//! Exact arbitrary-precision helpers: integer roots, radicals, rationals and
//! quadratic integers.

mod quadratic;
mod roots;

pub use quadratic::{
    quad_congruent, quad_mul, quad_norm, quad_pow, QuadInt, QuadScalar, Quadratic,
};
pub use roots::{ceil_root, exact_root, integer_root, iroot, isqrt, RootScalar};

use num_bigint::{BigInt, BigUint};
use num_rational::Ratio;
use num_traits::One;

use crate::factor::Factorization;

/// Exact rational number, always reduced with a positive denominator.
pub type Rational = Ratio<BigInt>;

/// Product of the distinct primes of a factorization.
pub fn radical(f: &Factorization) -> BigUint {
    f.factors()
        .iter()
        .fold(BigUint::one(), |acc, (p, _)| acc * p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;

    #[test]
    fn radical_examples() {
        let rad = |x: u64| radical(&factor(&BigUint::from(x)).unwrap());
        assert_eq!(rad(12), BigUint::from(6u32));
        assert_eq!(rad(1), BigUint::from(1u32));
        assert_eq!(rad(343), BigUint::from(7u32));
    }
}
