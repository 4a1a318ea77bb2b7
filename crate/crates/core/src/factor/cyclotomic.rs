//! Cyclotomic factors of `(X^(n*l) - 1) / (X^l - 1)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, Zero};

/// Integer polynomial, constant term first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coefficients: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coefficients: Vec<BigInt>) -> Self {
        while coefficients.last().is_some_and(Zero::is_zero) {
            coefficients.pop();
        }
        IntPoly { coefficients }
    }

    pub fn from_i64(coefficients: &[i64]) -> Self {
        Self::new(coefficients.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coefficients(&self) -> &[BigInt] {
        &self.coefficients
    }

    pub fn degree(&self) -> Option<usize> {
        self.coefficients.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients.is_empty()
    }

    /// `X^m - 1`.
    pub fn x_pow_minus_one(m: usize) -> Self {
        let mut coefficients = vec![BigInt::zero(); m + 1];
        coefficients[0] = -BigInt::one();
        coefficients[m] = BigInt::one();
        Self::new(coefficients)
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        if self.is_zero() || other.is_zero() {
            return IntPoly::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    /// Exact division by a monic divisor; `None` if there is a remainder.
    pub fn div_exact(&self, divisor: &IntPoly) -> Option<IntPoly> {
        let dd = divisor.degree()?;
        if !divisor.coefficients[dd].is_one() {
            return None;
        }
        let mut rem = self.coefficients.clone();
        if rem.len() <= dd {
            return if self.is_zero() { Some(self.clone()) } else { None };
        }
        let mut quotient = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quotient.len()).rev() {
            let lead = rem[i + dd].clone();
            if lead.is_zero() {
                continue;
            }
            for (j, c) in divisor.coefficients.iter().enumerate() {
                rem[i + j] -= &lead * c;
            }
            quotient[i] = lead;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPoly::new(quotient))
        } else {
            None
        }
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coefficients
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Evaluation at a non-negative point where the value is known to be positive.
    pub fn eval_unsigned(&self, x: &BigUint) -> BigUint {
        self.eval(&BigInt::from(x.clone()))
            .to_biguint()
            .expect("cyclotomic values at x >= 2 are positive")
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (power, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let show_coeff = !mag.is_one() || power == 0;
            if show_coeff {
                write!(f, "{mag}")?;
            }
            match power {
                0 => {}
                1 => write!(f, "X")?,
                _ => write!(f, "X^{power}")?,
            }
        }
        Ok(())
    }
}

/// A cyclotomic polynomial together with its index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicFactor {
    pub index: u32,
    pub poly: IntPoly,
}

fn divisors(m: u32) -> Vec<u32> {
    (1..=m).filter(|d| m.is_multiple_of(*d)).collect()
}

/// The `m`-th cyclotomic polynomial, by dividing `X^m - 1` by every `Phi_d`, `d | m, d < m`.
pub fn cyclotomic(m: u32) -> IntPoly {
    static MEMO: OnceLock<Mutex<HashMap<u32, IntPoly>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = memo.lock().expect("memo poisoned").get(&m) {
        return p.clone();
    }
    assert!(m >= 1, "cyclotomic index must be positive");
    let mut poly = IntPoly::x_pow_minus_one(m as usize);
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        poly = poly
            .div_exact(&cyclotomic(d))
            .expect("Phi_d divides X^m - 1 for d | m");
    }
    memo.lock()
        .expect("memo poisoned")
        .entry(m)
        .or_insert(poly)
        .clone()
}

/// `Phi_d` for every `d | n*l` with `d` not dividing `l`, ascending in `d`.
pub fn cyclotomic_pieces(n: u32, l: u32) -> Arc<Vec<CyclotomicFactor>> {
    static MEMO: OnceLock<Mutex<HashMap<(u32, u32), Arc<Vec<CyclotomicFactor>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = memo.lock().expect("memo poisoned").get(&(n, l)) {
        return Arc::clone(found);
    }
    let pieces: Vec<CyclotomicFactor> = divisors(n * l)
        .into_iter()
        .filter(|d| !l.is_multiple_of(*d))
        .map(|index| CyclotomicFactor {
            index,
            poly: cyclotomic(index),
        })
        .collect();
    let mut guard = memo.lock().expect("memo poisoned");
    Arc::clone(guard.entry((n, l)).or_insert_with(|| Arc::new(pieces)))
}

/// The irreducible rational factors of `(X^(n*l) - 1) / (X^l - 1)`.
pub fn cyclotomic_split(n: u32, l: u32) -> Vec<IntPoly> {
    cyclotomic_pieces(n, l).iter().map(|f| f.poly.clone()).collect()
}
