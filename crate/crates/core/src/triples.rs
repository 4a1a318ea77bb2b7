//! Parameter triples `(q, n, l)`: admissibility and the exact bound function `F`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use num_rational::Ratio;
use num_traits::FromPrimitive;

use crate::error::{Error, Result};
use crate::Rational;

/// Exponent `q`, repetition count `n` and block length `l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub q: u32,
    pub n: u32,
    pub l: u32,
}

/// The seven sporadic admissible triples.
pub const SPORADIC_ADMISSIBLE: [(u32, u32, u32); 7] = [
    (2, 3, 1),
    (2, 3, 2),
    (3, 2, 2),
    (3, 2, 3),
    (3, 3, 1),
    (2, 4, 1),
    (4, 2, 2),
];

impl Triple {
    pub fn new(q: u32, n: u32, l: u32) -> Result<Self> {
        if q < 2 || n < 2 || l < 1 {
            return Err(Error::InvalidParameter(format!(
                "triple ({q},{n},{l}) needs q >= 2, n >= 2, l >= 1"
            )));
        }
        Ok(Triple { q, n, l })
    }

    pub fn is_admissible(&self) -> bool {
        is_admissible(*self)
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.q, self.n, self.l)
    }
}

impl FromStr for Triple {
    type Err = Error;

    /// Accepts `q,n,l` with optional surrounding parentheses.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        let bad = || Error::InvalidParameter(format!("expected q,n,l, got {s:?}"));
        if parts.len() != 3 {
            return Err(bad());
        }
        let nums: Vec<u32> = parts
            .iter()
            .map(|p| p.parse::<u32>().map_err(|_| bad()))
            .collect::<Result<_>>()?;
        Triple::new(nums[0], nums[1], nums[2])
    }
}

/// `(q,n) = (2,2)`, `(n,l) = (2,1)`, or one of [`SPORADIC_ADMISSIBLE`].
pub fn is_admissible(t: Triple) -> bool {
    (t.q, t.n) == (2, 2) || (t.n, t.l) == (2, 1) || SPORADIC_ADMISSIBLE.contains(&(t.q, t.n, t.l))
}

/// `F(q,n,l) = (24/25) n l - 1 - n l / q - l` over any integer scalar.
pub fn f_value_in<T>(t: Triple) -> Ratio<T>
where
    T: Clone + Integer + FromPrimitive,
{
    let int = |v: u64| Ratio::from_integer(T::from_u64(v).expect("small integer fits"));
    let nl = t.n as u64 * t.l as u64;
    Ratio::new(T::from_u64(24 * nl).expect("fits"), T::from_u64(25).expect("fits"))
        - int(1)
        - Ratio::new(T::from_u64(nl).expect("fits"), T::from_u64(t.q as u64).expect("fits"))
        - int(t.l as u64)
}

/// `F` as an exact arbitrary-precision rational.
pub fn f_value(t: Triple) -> Rational {
    f_value_in(t)
}
