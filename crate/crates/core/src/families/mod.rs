//! Constructive families of solutions. Every generator builds candidates and
//! keeps only those passing the full digit check, in increasing order.

mod bijective;
mod curves;
mod fibonacci;
mod norm;
mod squares;

pub use bijective::{bijective_patterns, gen_bijective_square, gen_bijective_table_family, BijectivePattern};
pub use curves::{
    family_231, family_232, family_331, family_422, family_pell, gen_231, gen_232, gen_241, gen_322,
    gen_323, gen_331, gen_422, transform_331_to_323,
};
pub use fibonacci::{gen_fibonacci_family, gen_fibonacci_family2};
pub use norm::{find_seed, find_step, fundamental_unit, norm_family_iter, Congruence, NormFamily, STEP_CAP};
pub use squares::{base_parameters, gen_22_by_base, gen_22_by_length, gen_n21, witnesses};

use crate::error::{Error, Result};
use crate::search::SolutionRecord;
use crate::triples::Triple;

/// Consecutive failures tolerated before a generator gives up.
const MAX_SKIPS: usize = 64;

/// The first `count` candidates that verify; repeated bases are dropped.
pub(crate) fn take_verified<I>(count: usize, candidates: I) -> Vec<SolutionRecord>
where
    I: IntoIterator<Item = Result<SolutionRecord>>,
{
    let mut out: Vec<SolutionRecord> = Vec::with_capacity(count);
    let mut skipped = 0;
    for candidate in candidates {
        if out.len() == count || skipped > MAX_SKIPS {
            break;
        }
        match candidate {
            Ok(r) if r.is_valid() && out.last().is_none_or(|last| last.b != r.b || last.triple != r.triple) => {
                out.push(r);
                skipped = 0;
            }
            _ => skipped += 1,
        }
    }
    out
}

/// The family for an admissible triple. `base` selects the fixed-base
/// construction for `(2,2,l)`, where `l` is then determined by the base.
pub fn generate(t: Triple, count: usize, base: Option<u64>) -> Result<Vec<SolutionRecord>> {
    let Triple { q, n, l } = t;
    if let Some(b) = base {
        if (q, n) != (2, 2) {
            return Err(Error::UnknownFamily(format!("no fixed-base family for {t}")));
        }
        return gen_22_by_base(b, count);
    }
    Ok(match (q, n, l) {
        (2, 2, _) => gen_22_by_length(l, count)?,
        (_, 2, 1) => gen_n21(q, count)?,
        (2, 3, 1) => gen_231(count),
        (2, 3, 2) => gen_232(count),
        (3, 2, 2) => gen_322(count),
        (3, 2, 3) => gen_323(count),
        (3, 3, 1) => gen_331(count),
        (2, 4, 1) => gen_241(count),
        (4, 2, 2) => gen_422(count),
        _ => return Err(Error::UnknownFamily(format!("{t} is not admissible"))),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigUint;
    use crate::search::{search_range, solutions_for_base};

    #[test]
    fn dispatch() {
        for (q, n, l) in [(2, 2, 3), (5, 2, 1), (2, 3, 1), (2, 3, 2), (3, 2, 2), (3, 2, 3), (3, 3, 1), (2, 4, 1), (4, 2, 2)] {
            let t = Triple::new(q, n, l).unwrap();
            let records = generate(t, 3, None).unwrap();
            assert_eq!(records.len(), 3, "{t}");
            assert!(records.iter().all(|r| r.triple == t && r.is_valid()));
        }
        let t = Triple::new(2, 2, 1).unwrap();
        assert_eq!(generate(t, 2, Some(2)).unwrap()[0].y, BigUint::from(820u32));
        assert!(matches!(generate(Triple::new(2, 4, 2).unwrap(), 1, None), Err(Error::UnknownFamily(_))));
        assert!(matches!(generate(Triple::new(2, 3, 1).unwrap(), 1, Some(10)), Err(Error::UnknownFamily(_))));
    }

    #[test]
    fn generated_members_appear_in_searches() {
        let t = Triple::new(2, 3, 1).unwrap();
        let window = search_range(t, 2, 500, None).unwrap();
        for r in gen_231(5).into_iter().filter(|r| r.b <= BigUint::from(500u32)) {
            assert!(window.solutions.contains(&r), "{r}");
        }
        for r in gen_322(3).into_iter().chain(gen_241(3)).chain(gen_422(1)).chain(gen_331(1)).chain(gen_323(1)) {
            let b = u64::try_from(&r.b).unwrap();
            assert!(solutions_for_base(r.triple, b).unwrap().contains(&r), "{r}");
        }
        for r in gen_22_by_length(1, 5).unwrap().into_iter().chain(gen_22_by_length(2, 5).unwrap()) {
            let b = u64::try_from(&r.b).unwrap();
            assert!(solutions_for_base(r.triple, b).unwrap().contains(&r), "{r}");
        }
    }
}
