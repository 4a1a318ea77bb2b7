//! Arithmetic in the real quadratic rings Z[sqrt(D)].

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Signed integer scalars usable as coordinates of a quadratic integer.
pub trait QuadScalar: Clone + Integer + Signed + fmt::Display {
    fn is_perfect_square(&self) -> bool;
}

macro_rules! prim_quad_scalar {
    ($t:ty, $u:ty) => {
        impl QuadScalar for $t {
            fn is_perfect_square(&self) -> bool {
                if *self < 0 {
                    return false;
                }
                let v = *self as $u;
                let (_, exact) = super::roots::integer_root(&(v as u128), 2).expect("q = 2");
                exact
            }
        }
    };
}

prim_quad_scalar!(i64, u64);
prim_quad_scalar!(i128, u128);

impl QuadScalar for BigInt {
    fn is_perfect_square(&self) -> bool {
        match self.to_biguint() {
            Some(v) => super::roots::exact_root(&v, 2).is_some(),
            None => false,
        }
    }
}

/// `a + b*sqrt(D)` with `D >= 2` non-square.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic<T> {
    a: T,
    b: T,
    d: T,
}

impl<T: QuadScalar> Quadratic<T> {
    pub fn new(a: T, b: T, d: T) -> Result<Self> {
        if d < T::one() + T::one() || d.is_perfect_square() {
            return Err(Error::InvalidRing(d.to_string()));
        }
        Ok(Quadratic { a, b, d })
    }

    pub fn one(d: T) -> Result<Self> {
        Self::new(T::one(), T::zero(), d)
    }

    pub fn a(&self) -> &T {
        &self.a
    }

    pub fn b(&self) -> &T {
        &self.b
    }

    pub fn d(&self) -> &T {
        &self.d
    }

    pub fn into_parts(self) -> (T, T) {
        (self.a, self.b)
    }

    /// `a^2 - D b^2`.
    pub fn norm(&self) -> T {
        self.a.clone() * self.a.clone() - self.d.clone() * self.b.clone() * self.b.clone()
    }

    pub fn conjugate(&self) -> Self {
        Quadratic {
            a: self.a.clone(),
            b: -self.b.clone(),
            d: self.d.clone(),
        }
    }

    /// Both coordinates replaced by their absolute values. The norm is unchanged.
    pub fn abs_components(&self) -> Self {
        Quadratic {
            a: self.a.abs(),
            b: self.b.abs(),
            d: self.d.clone(),
        }
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.d != other.d {
            return Err(Error::RingMismatch(self.d.to_string(), other.d.to_string()));
        }
        Ok(())
    }

    fn mul_same_ring(&self, other: &Self) -> Self {
        let a = self.a.clone() * other.a.clone() + self.d.clone() * self.b.clone() * other.b.clone();
        let b = self.a.clone() * other.b.clone() + self.b.clone() * other.a.clone();
        Quadratic {
            a,
            b,
            d: self.d.clone(),
        }
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        Ok(self.mul_same_ring(other))
    }

    pub fn pow(&self, mut k: u64) -> Self {
        let mut result = Quadratic {
            a: T::one(),
            b: T::zero(),
            d: self.d.clone(),
        };
        let mut base = self.clone();
        while k > 0 {
            if k & 1 == 1 {
                result = result.mul_same_ring(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul_same_ring(&base);
            }
        }
        result
    }

    /// Whether `self - other` lies in `m * Z[sqrt(D)]`.
    pub fn congruent(&self, other: &Self, m: &T) -> Result<bool> {
        self.same_ring(other)?;
        Ok((self.a.clone() - other.a.clone()).is_multiple_of(m)
            && (self.b.clone() - other.b.clone()).is_multiple_of(m))
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }
}

impl<T: QuadScalar> fmt::Display for Quadratic<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_negative() {
            write!(f, "{}-{}*sqrt({})", self.a, self.b.abs(), self.d)
        } else {
            write!(f, "{}+{}*sqrt({})", self.a, self.b, self.d)
        }
    }
}

/// Arbitrary-precision quadratic integer.
pub type QuadInt = Quadratic<BigInt>;

impl QuadInt {
    pub fn from_i64(a: i64, b: i64, d: i64) -> Result<Self> {
        Self::new(BigInt::from(a), BigInt::from(b), BigInt::from(d))
    }
}

pub fn quad_mul(x: &QuadInt, y: &QuadInt) -> Result<QuadInt> {
    x.checked_mul(y)
}

pub fn quad_norm(x: &QuadInt) -> BigInt {
    x.norm()
}

pub fn quad_pow(x: &QuadInt, k: u64) -> QuadInt {
    x.pow(k)
}

pub fn quad_congruent(x: &QuadInt, y: &QuadInt, m: &BigInt) -> Result<bool> {
    x.congruent(y, m)
}
