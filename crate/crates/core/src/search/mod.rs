//! Exhaustive search for solutions of `y^q = c (b^(n l) - 1) / (b^l - 1)`,
//! `b^(l-1) <= c < b^l`, base by base.
//!
//! For a base `b` let `r` be the quotient and `d` the least multiplier making
//! `d r` a `q`-th power. Then `c r` is a `q`-th power exactly when
//! `c = k^q d`, so the solutions at `b` are indexed by the integers `k` with
//! `b^(l-1) <= k^q d < b^l`.

mod checkpoint;
mod fibonacci;
mod range;
mod record;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, Pow, ToPrimitive};

pub use checkpoint::Checkpoint;
pub use fibonacci::{search_fib_powers, search_fib_squares};
pub use range::{search_range, search_range_with, SearchOptions};
pub use record::{SolutionRecord, Violation, CSV_HEADER};

use crate::arith::{ceil_root, exact_root, iroot, integer_root};
use crate::error::{Error, Result};
use crate::factor::{
    candidate_primes, factor_quotient_with, quotient_pieces, repunit_quotient, split_cofactor,
    trial_divide, FactorBudget, Factorization, Meter, TRIAL_BOUND,
};
use crate::triples::Triple;

/// Least `d >= 1` such that `d * f.value()` is a perfect `q`-th power.
pub fn compute_defect(f: &Factorization, q: u32) -> BigUint {
    defect_of(f.factors().iter().map(|(p, e)| (p, *e)), q)
}

fn defect_of<'a, I: Iterator<Item = (&'a BigUint, u32)>>(pairs: I, q: u32) -> BigUint {
    pairs.fold(BigUint::one(), |acc, (p, e)| {
        let missing = (q - e % q) % q;
        acc * Pow::pow(p, missing)
    })
}

fn power_of(b: u64, e: u32) -> BigUint {
    Pow::pow(BigUint::from(b), e)
}

/// The defect of the quotient at base `b`, or `None` once it is provably at
/// least `b^l` (no admissible `c` then). Cofactors that trial division leaves
/// behind have only primes above the trial bound; one that is not a perfect
/// `q`-th power raises the defect past that bound, which often decides the
/// base without splitting the cofactor.
fn bounded_defect(t: Triple, b: u64, budget: &FactorBudget) -> Result<Option<BigUint>> {
    let limit = power_of(b, t.l);
    let floor = 1000u64.max(t.n as u64 * t.l as u64 + 1);
    let bound = limit
        .to_u64()
        .unwrap_or(u64::MAX)
        .clamp(floor, TRIAL_BOUND as u64) as u32;

    let mut known: BTreeMap<BigUint, u32> = BTreeMap::new();
    let mut cofactors = Vec::new();
    for (index, value) in quotient_pieces(&BigUint::from(b), t.n, t.l) {
        let trial = trial_divide(&value, &candidate_primes(index), bound);
        for (p, e) in trial.found {
            *known.entry(BigUint::from(p)).or_insert(0) += e;
        }
        if !trial.cofactor.is_one() {
            if trial.complete {
                *known.entry(trial.cofactor).or_insert(0) += 1;
            } else {
                cofactors.push(trial.cofactor);
            }
        }
    }

    let mut defect = defect_of(known.iter().map(|(p, e)| (p, *e)), t.q);
    if defect >= limit {
        return Ok(None);
    }
    for m in cofactors {
        if exact_root(&m, t.q).is_some() {
            continue;
        }
        if &defect * (bound as u64 + 1) >= limit {
            return Ok(None);
        }
        let mut split = BTreeMap::new();
        let mut meter = Meter::new(budget);
        split_cofactor(&m, bound as u64, &mut meter, &mut split, 1)
            .map_err(|_| Error::UnresolvedBase(b))?;
        defect *= defect_of(split.iter().map(|(p, e)| (p, *e)), t.q);
        if defect >= limit {
            return Ok(None);
        }
    }
    Ok(Some(defect))
}

/// All records `c = k^q d` in range, given the quotient `r` and its defect `d`.
fn solutions_with_defect(t: Triple, b: &BigUint, r: &BigUint, d: &BigUint) -> Result<Vec<SolutionRecord>> {
    let lower: BigUint = Pow::pow(b, t.l - 1);
    let limit = &lower * b;
    if d >= &limit {
        return Ok(Vec::new());
    }
    // smallest k with k^q d >= lower, largest with k^q d <= limit - 1
    let k_min = ceil_root(&Integer::div_ceil(&lower, d), t.q)?.max(BigUint::one());
    let (k_max, _) = iroot(&((&limit - 1u32) / d), t.q)?;
    if k_min > k_max {
        return Ok(Vec::new());
    }
    let z = exact_root(&(d * r), t.q)
        .ok_or_else(|| Error::InvalidParameter(format!("defect {d} does not complete a {}-th power", t.q)))?;
    let mut out = Vec::new();
    let mut k = k_min;
    while k <= k_max {
        let c = Pow::pow(&k, t.q) * d;
        let y = &k * &z;
        let record = SolutionRecord::new(t, b.clone(), y, c)?;
        debug_assert!(record.is_valid(), "{record}");
        if record.is_valid() {
            out.push(record);
        }
        k += 1u32;
    }
    Ok(out)
}

/// Every solution at base `b`, sorted by `y`.
pub fn solutions_for_base(t: Triple, b: u64) -> Result<Vec<SolutionRecord>> {
    solutions_for_base_with(t, b, &FactorBudget::unlimited())
}

/// As [`solutions_for_base`]; an exhausted budget yields [`Error::UnresolvedBase`].
pub fn solutions_for_base_with(t: Triple, b: u64, budget: &FactorBudget) -> Result<Vec<SolutionRecord>> {
    if b < 2 {
        return Err(Error::InvalidBase(b.to_string()));
    }
    match bounded_defect(t, b, budget)? {
        None => Ok(Vec::new()),
        Some(d) => {
            let base = BigUint::from(b);
            solutions_with_defect(t, &base, &repunit_quotient(&base, t.n, t.l), &d)
        }
    }
}

/// Same contract as [`solutions_for_base`], computed from the complete
/// factorization of the quotient without any early exit.
pub fn solutions_from_full_factorization(t: Triple, b: u64, budget: &FactorBudget) -> Result<Vec<SolutionRecord>> {
    let base = BigUint::from(b);
    let f = factor_quotient_with(&base, t.n, t.l, budget).map_err(|e| match e {
        Error::BudgetExceeded(_) => Error::UnresolvedBase(b),
        other => other,
    })?;
    let d = compute_defect(&f, t.q);
    solutions_with_defect(t, &base, f.value(), &d)
}

/// Largest block range the enumeration oracle accepts.
pub const BRUTE_LIMIT: u64 = 10_000_000;

/// Independent oracle: tries every `c` in `[b^(l-1), b^l)`.
pub fn brute_solutions_for_base(t: Triple, b: u64) -> Result<Vec<SolutionRecord>> {
    if b < 2 {
        return Err(Error::InvalidBase(b.to_string()));
    }
    let high = (b as u128).checked_pow(t.l).filter(|&h| h <= BRUTE_LIMIT as u128).ok_or_else(|| {
        Error::TooLarge(format!("{b}^{} exceeds the enumeration limit {BRUTE_LIMIT}", t.l))
    })?;
    let low = high / b as u128;
    let base = BigUint::from(b);
    let r = repunit_quotient(&base, t.n, t.l);
    let mut out = Vec::new();
    let small_r = r.to_u128().filter(|&r| r.checked_mul(high).is_some());
    for c in low..high {
        let root = match small_r {
            Some(r) => match integer_root(&(c * r), t.q)? {
                (y, true) => Some(BigUint::from(y)),
                _ => None,
            },
            None => exact_root(&(&r * c), t.q),
        };
        if let Some(y) = root {
            out.push(SolutionRecord::new(t, base.clone(), y, BigUint::from(c))?);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factor::factor;
    use crate::repr::Word;

    fn t(q: u32, n: u32, l: u32) -> Triple {
        Triple::new(q, n, l).unwrap()
    }

    fn big(v: u64) -> BigUint {
        BigUint::from(v)
    }

    fn summary(records: &[SolutionRecord]) -> Vec<(u64, u64)> {
        records
            .iter()
            .map(|r| (r.y.to_u64().unwrap(), r.c.to_u64().unwrap()))
            .collect()
    }

    #[test]
    fn defect_examples() {
        assert_eq!(compute_defect(&factor(&big(343)).unwrap(), 2), big(7));
        assert_eq!(compute_defect(&factor(&big(121)).unwrap(), 2), big(1));
        assert_eq!(compute_defect(&factor(&big(507)).unwrap(), 2), big(3));
        assert_eq!(compute_defect(&Factorization::one(), 5), big(1));
        assert_eq!(compute_defect(&factor(&big(2 * 2 * 2 * 2 * 3)).unwrap(), 3), big(2 * 2 * 9));
    }

    #[test]
    fn per_base_examples() {
        assert_eq!(summary(&solutions_for_base(t(2, 3, 1), 18).unwrap()), vec![(49, 7)]);
        assert_eq!(summary(&solutions_for_base(t(2, 3, 1), 22).unwrap()), vec![(39, 3), (78, 12)]);
        assert!(solutions_for_base(t(2, 3, 1), 2).unwrap().is_empty());
        let found = solutions_for_base(t(4, 2, 3), 19).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].y, big(70));
        assert_eq!(found[0].w, Word::canonical(19, &[9, 13, 4]).unwrap());
        assert!(matches!(solutions_for_base(t(2, 3, 1), 1), Err(Error::InvalidBase(_))));
    }

    #[test]
    fn brute_examples() {
        assert_eq!(summary(&brute_solutions_for_base(t(2, 3, 1), 18).unwrap()), vec![(49, 7)]);
        assert_eq!(summary(&brute_solutions_for_base(t(2, 3, 1), 22).unwrap()), vec![(39, 3), (78, 12)]);
        assert!(brute_solutions_for_base(t(2, 3, 1), 2).unwrap().is_empty());
        let found = brute_solutions_for_base(t(4, 2, 3), 19).unwrap();
        assert_eq!(summary(&found), vec![(70, 9 * 361 + 13 * 19 + 4)]);
        assert!(matches!(brute_solutions_for_base(t(2, 2, 3), 1000), Err(Error::TooLarge(_))));
    }

    #[test]
    fn early_exit_matches_full_factorization() {
        let budget = FactorBudget::unlimited();
        for (q, n, l) in [(2, 3, 1), (2, 3, 2), (3, 2, 2), (4, 2, 2), (3, 2, 4), (2, 2, 3), (5, 2, 2)] {
            for b in 2..=400u64 {
                let tr = t(q, n, l);
                assert_eq!(
                    solutions_for_base(tr, b).unwrap(),
                    solutions_from_full_factorization(tr, b, &budget).unwrap(),
                    "{tr} at b = {b}"
                );
            }
        }
    }

    #[test]
    fn large_base_needs_splitting() {
        // b^4 + 1 at the sporadic (3,2,4) base
        let found = solutions_for_base(t(3, 2, 4), 12400).unwrap();
        assert_eq!(found.len(), 1);
        assert_eq!(found[0].y, big(57_459_558_593));
        assert_eq!(found[0].w, Word::canonical(12400, &[4208, 7128, 8441, 5457]).unwrap());
    }

    #[test]
    fn admissible_square_family_has_many_solutions_per_base() {
        // (2,2,1): y^2 = c (b + 1), 1 <= c < b
        for b in 2..200u64 {
            assert_eq!(
                solutions_for_base(t(2, 2, 1), b).unwrap(),
                brute_solutions_for_base(t(2, 2, 1), b).unwrap()
            );
        }
    }
}
