//! Orbits of a quadratic integer of fixed norm under a power of a unit.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::arith::{integer_root, QuadInt};
use crate::error::{Error, Result};

/// Side condition preserved along a family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Congruence {
    /// Every member is congruent to the seed modulo `m Z[sqrt(D)]`.
    Fixed(u64),
    /// `m` divides the `sqrt(D)` coordinate of every member.
    Divisible(u64),
}

/// `seed * u^(k * step)` for `k = 0, 1, 2, ...`, where `u` is the unit with
/// nonnegative coordinates among `unit` and its conjugates, so every member
/// has positive coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormFamily {
    pub d: i64,
    pub target_norm: i64,
    pub seed: QuadInt,
    pub unit: QuadInt,
    pub step: u64,
    pub congruence: Option<Congruence>,
}

/// Fundamental units of the three rings that occur: `1+sqrt 2`, `2-sqrt 3`, `8-3 sqrt 7`.
pub fn fundamental_unit(d: i64) -> Result<QuadInt> {
    let (a, b) = match d {
        2 => (1, 1),
        3 => (2, -1),
        7 => (8, -3),
        _ => return Err(Error::InvalidRing(d.to_string())),
    };
    QuadInt::from_i64(a, b, d)
}

fn holds(c: Congruence, x: &QuadInt, reference: &QuadInt) -> bool {
    match c {
        Congruence::Fixed(m) => x.congruent(reference, &BigInt::from(m)).unwrap_or(false),
        Congruence::Divisible(m) => x.b().is_multiple_of(&BigInt::from(m)),
    }
}

impl NormFamily {
    pub fn new(
        d: i64,
        target_norm: i64,
        seed: QuadInt,
        unit: QuadInt,
        step: u64,
        congruence: Option<Congruence>,
    ) -> Result<Self> {
        let bad = |m: String| Err(Error::BadFamily(m));
        if seed.d() != &BigInt::from(d) || unit.d() != &BigInt::from(d) {
            return bad(format!("seed and unit must lie in Z[sqrt({d})]"));
        }
        if seed.norm() != BigInt::from(target_norm) {
            return bad(format!("N({seed}) = {} is not {target_norm}", seed.norm()));
        }
        if seed.a().is_negative() || seed.b().is_negative() {
            return bad(format!("seed {seed} needs nonnegative coordinates"));
        }
        if !unit.is_unit() {
            return bad(format!("{unit} is not a unit"));
        }
        if step == 0 {
            return bad(String::from("step must be at least 1"));
        }
        let jump = unit.abs_components().pow(step);
        if !jump.norm().is_one() {
            return bad(format!("{unit} to the power {step} has norm -1"));
        }
        if let Some(c) = congruence {
            let one = QuadInt::from_i64(1, 0, d)?;
            let ok = match c {
                Congruence::Fixed(_) => holds(c, &jump, &one),
                Congruence::Divisible(_) => holds(c, &seed, &seed) && holds(c, &jump, &jump),
            };
            if !ok {
                return bad(format!("{c:?} is not preserved by {unit} to the power {step}"));
            }
        }
        Ok(NormFamily { d, target_norm, seed, unit, step, congruence })
    }

    /// Endless iterator over the members, starting with the seed.
    pub fn members(&self) -> impl Iterator<Item = QuadInt> {
        let jump = self.unit.abs_components().pow(self.step);
        std::iter::successors(Some(self.seed.clone()), move |x| {
            Some(x.checked_mul(&jump).expect("same ring"))
        })
    }
}

/// The first `count` members of the family.
pub fn norm_family_iter(f: &NormFamily, count: usize) -> Vec<QuadInt> {
    f.members().take(count).collect()
}

/// Least `a + b sqrt(D)` with `b >= 1` (ordered by `b`) of the given norm
/// and `a >= 0` satisfying `accept`.
pub fn find_seed(d: i64, norm: i64, max_b: i64, accept: impl Fn(i64, i64) -> bool) -> Option<QuadInt> {
    for b in 1..=max_b {
        let sq = (d as i128) * (b as i128) * (b as i128) + norm as i128;
        if sq < 0 {
            continue;
        }
        let (a, exact) = integer_root(&(sq as u128), 2).ok()?;
        if exact {
            let a = a as i64;
            if accept(a, b) {
                return QuadInt::from_i64(a, b, d).ok();
            }
        }
    }
    None
}

/// Largest exponent [`find_step`] tries.
pub const STEP_CAP: u64 = 10_000;

/// Least `s >= 1` with `N(u^s) = 1` for which `u^s` preserves the congruence.
pub fn find_step(unit: &QuadInt, congruence: Option<Congruence>) -> Option<u64> {
    let u = unit.abs_components();
    let one = QuadInt::one(u.d().clone()).ok()?;
    let flips = !u.norm().is_one();
    let mut power = one.clone();
    for s in 1..=STEP_CAP {
        power = power.checked_mul(&u).ok()?;
        if let Some(Congruence::Fixed(m) | Congruence::Divisible(m)) = congruence {
            // only residues matter, so keep the coordinates small
            let m = BigInt::from(m);
            power = QuadInt::new(power.a().mod_floor(&m), power.b().mod_floor(&m), u.d().clone()).ok()?;
        }
        if flips && s % 2 == 1 {
            continue;
        }
        let ok = match congruence {
            None => true,
            Some(c @ Congruence::Fixed(_)) => holds(c, &power, &one),
            Some(c @ Congruence::Divisible(_)) => holds(c, &power, &power),
        };
        if ok {
            return Some(s);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn qi(a: i64, b: i64, d: i64) -> QuadInt {
        QuadInt::from_i64(a, b, d).unwrap()
    }

    #[test]
    fn pell_minus_one_family() {
        let u = fundamental_unit(2).unwrap();
        let f = NormFamily::new(2, -1, qi(1, 1, 2), u, 2, None).unwrap();
        let got: Vec<QuadInt> = norm_family_iter(&f, 3);
        assert_eq!(got, vec![qi(1, 1, 2), qi(7, 5, 2), qi(41, 29, 2)]);
        assert_eq!(norm_family_iter(&f, 1), vec![qi(1, 1, 2)]);
    }

    #[test]
    fn norm_minus_three_family() {
        let u = fundamental_unit(3).unwrap();
        let f = NormFamily::new(3, -3, qi(3, 2, 3), u, 2, Some(Congruence::Fixed(2))).unwrap();
        for x in norm_family_iter(&f, 100) {
            assert_eq!(x.norm(), BigInt::from(-3));
            assert!(x.a().is_odd() && x.b().is_even());
        }
    }

    #[test]
    fn printed_seeds_are_rejected() {
        let u3 = fundamental_unit(3).unwrap();
        assert!(matches!(NormFamily::new(3, -3, qi(1, 2, 3), u3, 2, None), Err(Error::BadFamily(_))));
        let u7 = fundamental_unit(7).unwrap();
        assert!(matches!(NormFamily::new(7, -3, qi(37, 98, 7), u7, 14, None), Err(Error::BadFamily(_))));
    }

    #[test]
    fn bad_steps_are_rejected() {
        let u = fundamental_unit(2).unwrap();
        assert!(NormFamily::new(2, -1, qi(1, 1, 2), u.clone(), 1, None).is_err());
        let u3 = fundamental_unit(3).unwrap();
        assert!(NormFamily::new(3, -3, qi(627, 362, 3), u3, 28, Some(Congruence::Fixed(98))).is_err());
        assert!(NormFamily::new(2, -1, qi(239, 169, 2), u, 14, Some(Congruence::Fixed(13))).is_err());
    }

    #[test]
    fn seeds_by_search() {
        assert_eq!(find_seed(3, -3, 1000, |a, b| a % 2 == 1 && b % 2 == 0), Some(qi(3, 2, 3)));
        assert_eq!(find_seed(3, -3, 10_000, |a, _| a % 98 == 39), Some(qi(627, 362, 3)));
        assert_eq!(find_seed(7, -3, 1000, |a, b| a % 2 == 1 && b % 14 == 0), Some(qi(37, 14, 7)));
        assert_eq!(find_seed(2, -1, 1000, |_, b| b % 13 == 0), Some(qi(239, 169, 2)));
        assert_eq!(find_seed(2, -1, 10, |_, _| true), Some(qi(1, 1, 2)));
    }

    #[test]
    fn steps_by_search() {
        let u2 = fundamental_unit(2).unwrap();
        let u3 = fundamental_unit(3).unwrap();
        let u7 = fundamental_unit(7).unwrap();
        assert_eq!(find_step(&u3, Some(Congruence::Fixed(98))), Some(56));
        assert_eq!(find_step(&u3, Some(Congruence::Fixed(2))), Some(2));
        assert_eq!(find_step(&u7, Some(Congruence::Fixed(14))), Some(14));
        assert_eq!(find_step(&u2, Some(Congruence::Divisible(13))), Some(14));
        assert_eq!(find_step(&u2, Some(Congruence::Fixed(13))), Some(28));
        assert_eq!(find_step(&u2, None), Some(2));
    }
}
