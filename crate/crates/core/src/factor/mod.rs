//! Prime factorization, specialised for the repunit-like quotients
//! `(b^(n*l) - 1) / (b^l - 1)`.
//!
//! The stack is trial division up to [`TRIAL_BOUND`], a check for perfect
//! powers, then Pollard rho (Brent) with a fixed seed sequence, with Baillie-PSW
//! deciding primality of every cofactor. Quotients are split into their
//! cyclotomic pieces `Phi_d(b)` first; a prime `p` divides `Phi_d(b)` only if
//! `p | d` or `p = 1 (mod d)`, which thins out the trial division.

mod cyclotomic;
mod primes;
mod rho;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};
use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_traits::{One, Pow, ToPrimitive, Zero};

pub use cyclotomic::{cyclotomic, cyclotomic_pieces, cyclotomic_split, CyclotomicFactor, IntPoly};
pub use primes::{is_prime, is_prime_u64, sieve, small_primes, TRIAL_BOUND};
pub(crate) use primes::{mul_mod, pow_mod};

use crate::arith::exact_root;
use crate::error::{Error, Result};

/// Per-number effort cap for the splitting stage.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FactorBudget {
    /// Maximum number of rho iterations spent on one input.
    pub max_iterations: Option<u64>,
    /// Wall-clock limit for one input.
    pub time_limit: Option<Duration>,
}

impl FactorBudget {
    pub fn unlimited() -> Self {
        Self::default()
    }

    pub fn iterations(max: u64) -> Self {
        FactorBudget {
            max_iterations: Some(max),
            time_limit: None,
        }
    }

    pub fn millis(ms: u64) -> Self {
        FactorBudget {
            max_iterations: None,
            time_limit: Some(Duration::from_millis(ms)),
        }
    }
}

pub(crate) struct Meter {
    used: u64,
    max: Option<u64>,
    deadline: Option<Instant>,
}

impl Meter {
    pub(crate) fn new(budget: &FactorBudget) -> Self {
        Meter {
            used: 0,
            max: budget.max_iterations,
            deadline: budget.time_limit.map(|d| Instant::now() + d),
        }
    }

    pub(crate) fn charge(&mut self, steps: u64) -> Result<()> {
        self.used += steps;
        let over_count = self.max.is_some_and(|m| self.used > m);
        let over_time = self.deadline.is_some_and(|d| Instant::now() > d);
        if over_count || over_time {
            return Err(Error::BudgetExceeded(String::from("rho")));
        }
        Ok(())
    }
}

/// Prime factorization: primes strictly increasing, exponents at least 1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
    value: BigUint,
}

impl Factorization {
    pub fn one() -> Self {
        Factorization {
            factors: Vec::new(),
            value: BigUint::one(),
        }
    }

    /// Builds a factorization from (prime, exponent) pairs, merging repeats.
    /// Primality of the entries is the caller's responsibility.
    pub fn from_prime_powers<I: IntoIterator<Item = (BigUint, u32)>>(pairs: I) -> Self {
        let mut map = BTreeMap::new();
        for (p, e) in pairs {
            if e > 0 {
                *map.entry(p).or_insert(0) += e;
            }
        }
        Self::from_map(map)
    }

    fn from_map(map: BTreeMap<BigUint, u32>) -> Self {
        let value = map
            .iter()
            .fold(BigUint::one(), |acc, (p, &e)| acc * Pow::pow(p, e));
        Factorization {
            factors: map.into_iter().collect(),
            value,
        }
    }

    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn exponent_of(&self, p: &BigUint) -> u32 {
        self.factors
            .binary_search_by(|(q, _)| q.cmp(p))
            .map(|i| self.factors[i].1)
            .unwrap_or(0)
    }

    pub fn merge(&self, other: &Factorization) -> Factorization {
        Self::from_prime_powers(self.factors.iter().chain(other.factors.iter()).cloned())
    }

    /// Whether every listed base is prime and the product matches `value`.
    pub fn is_valid(&self) -> bool {
        let increasing = self.factors.windows(2).all(|w| w[0].0 < w[1].0);
        let product = self
            .factors
            .iter()
            .fold(BigUint::one(), |acc, (p, e)| acc * Pow::pow(p, *e));
        increasing
            && product == self.value
            && self.factors.iter().all(|(p, e)| *e >= 1 && is_prime(p))
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        for (i, (p, e)) in self.factors.iter().enumerate() {
            if i > 0 {
                write!(f, " * ")?;
            }
            if *e == 1 {
                write!(f, "{p}")?;
            } else {
                write!(f, "{p}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Outcome of trial division: the small primes found and what is left over.
pub(crate) struct TrialDivision {
    pub found: Vec<(u32, u32)>,
    pub cofactor: BigUint,
    /// The cofactor is 1 or prime.
    pub complete: bool,
}

/// Divides out every prime of `primes` (ascending) up to `bound`. Stops early
/// once `p^2` exceeds the cofactor; this is only sound when every prime factor
/// of `n` below `bound` appears in `primes`.
pub(crate) fn trial_divide(n: &BigUint, primes: &[u32], bound: u32) -> TrialDivision {
    let mut found = Vec::new();
    let mut rest = n.clone();
    let mut small = rest.to_u64();
    for &p in primes {
        if p > bound {
            break;
        }
        if let Some(s) = small {
            let pp = p as u64;
            if pp * pp > s {
                return TrialDivision {
                    found,
                    cofactor: BigUint::from(s),
                    complete: true,
                };
            }
            if s % pp == 0 {
                let mut e = 0;
                let mut s = s;
                while s % pp == 0 {
                    s /= pp;
                    e += 1;
                }
                found.push((p, e));
                small = Some(s);
            }
        } else {
            if (&rest % p).is_zero() {
                let mut e = 0;
                while (&rest % p).is_zero() {
                    rest /= p;
                    e += 1;
                }
                found.push((p, e));
                small = rest.to_u64();
            }
        }
    }
    let cofactor = small.map(BigUint::from).unwrap_or(rest);
    let complete = cofactor.is_one()
        || primes
            .iter()
            .take_while(|&&p| p <= bound)
            .last()
            .is_some_and(|&p| {
                let p = BigUint::from(p);
                &p * &p > cofactor
            });
    TrialDivision {
        found,
        cofactor,
        complete,
    }
}

/// Fully factors `m`, all of whose prime factors exceed `min_prime`.
pub(crate) fn split_cofactor(
    m: &BigUint,
    min_prime: u64,
    meter: &mut Meter,
    out: &mut BTreeMap<BigUint, u32>,
    multiplicity: u32,
) -> Result<()> {
    if m.is_one() {
        return Ok(());
    }
    if is_prime(m) {
        *out.entry(m.clone()).or_insert(0) += multiplicity;
        return Ok(());
    }
    let prime_bits = 64 - min_prime.max(2).leading_zeros() as u64;
    let max_k = (m.bits() / prime_bits.max(1)).max(2) as u32;
    for k in 2..=max_k {
        if !is_prime_u64(k as u64) {
            continue;
        }
        if let Some(root) = exact_root(m, k) {
            return split_cofactor(&root, min_prime, meter, out, multiplicity * k);
        }
    }
    let d = rho::find_divisor(m, meter)?;
    let other = m / &d;
    split_cofactor(&d, min_prime, meter, out, multiplicity)?;
    split_cofactor(&other, min_prime, meter, out, multiplicity)
}

fn record_small(out: &mut BTreeMap<BigUint, u32>, found: &[(u32, u32)]) {
    for &(p, e) in found {
        *out.entry(BigUint::from(p)).or_insert(0) += e;
    }
}

/// Complete prime factorization of `x >= 1`.
pub fn factor(x: &BigUint) -> Result<Factorization> {
    factor_with(x, &FactorBudget::unlimited())
}

pub fn factor_with(x: &BigUint, budget: &FactorBudget) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::OutOfDomain(String::from("cannot factor 0")));
    }
    let mut out = BTreeMap::new();
    let trial = trial_divide(x, small_primes(), TRIAL_BOUND);
    record_small(&mut out, &trial.found);
    if trial.complete {
        if !trial.cofactor.is_one() {
            out.insert(trial.cofactor, 1);
        }
    } else {
        let mut meter = Meter::new(budget);
        split_cofactor(&trial.cofactor, TRIAL_BOUND as u64, &mut meter, &mut out, 1)
            .map_err(|_| Error::BudgetExceeded(x.to_string()))?;
    }
    Ok(Factorization::from_map(out))
}

/// Primes up to [`TRIAL_BOUND`] that can divide `Phi_index(b)`: those dividing
/// `index` and those congruent to 1 mod `index`.
pub(crate) fn candidate_primes(index: u32) -> Arc<Vec<u32>> {
    static MEMO: OnceLock<Mutex<HashMap<u32, Arc<Vec<u32>>>>> = OnceLock::new();
    let memo = MEMO.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(found) = memo.lock().expect("memo poisoned").get(&index) {
        return Arc::clone(found);
    }
    let list: Vec<u32> = small_primes()
        .iter()
        .copied()
        .filter(|&p| index.is_multiple_of(p) || p % index == 1 % index)
        .collect();
    let mut guard = memo.lock().expect("memo poisoned");
    Arc::clone(guard.entry(index).or_insert_with(|| Arc::new(list)))
}

/// `(b^(n*l) - 1) / (b^l - 1)`.
pub fn repunit_quotient(b: &BigUint, n: u32, l: u32) -> BigUint {
    let bl: BigUint = Pow::pow(b, l);
    let full: BigUint = Pow::pow(&bl, n);
    (full - 1u32) / (bl - 1u32)
}

/// Values `Phi_d(b)` of the cyclotomic pieces of the quotient, with their indices.
pub fn quotient_pieces(b: &BigUint, n: u32, l: u32) -> Vec<(u32, BigUint)> {
    cyclotomic_pieces(n, l)
        .iter()
        .map(|f| (f.index, f.poly.eval_unsigned(b)))
        .collect()
}

/// Factorization of `(b^(n*l) - 1) / (b^l - 1)` assembled from its cyclotomic pieces.
pub fn factor_quotient(b: &BigUint, n: u32, l: u32) -> Result<Factorization> {
    factor_quotient_with(b, n, l, &FactorBudget::unlimited())
}

pub fn factor_quotient_with(
    b: &BigUint,
    n: u32,
    l: u32,
    budget: &FactorBudget,
) -> Result<Factorization> {
    if b < &BigUint::from(2u32) {
        return Err(Error::InvalidBase(b.to_string()));
    }
    if n < 2 || l < 1 {
        return Err(Error::InvalidParameter(format!("need n >= 2 and l >= 1, got n = {n}, l = {l}")));
    }
    let mut out = BTreeMap::new();
    for (index, value) in quotient_pieces(b, n, l) {
        let trial = trial_divide(&value, &candidate_primes(index), TRIAL_BOUND);
        record_small(&mut out, &trial.found);
        if trial.complete {
            if !trial.cofactor.is_one() {
                *out.entry(trial.cofactor).or_insert(0) += 1;
            }
        } else {
            let mut meter = Meter::new(budget);
            split_cofactor(&trial.cofactor, TRIAL_BOUND as u64, &mut meter, &mut out, 1)
                .map_err(|_| Error::BudgetExceeded(value.to_string()))?;
        }
    }
    Ok(Factorization::from_map(out))
}
