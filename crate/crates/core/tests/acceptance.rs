//! Acceptance criteria, one PASS/FAIL line each.

use std::collections::BTreeSet;
use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::{Signed, ToPrimitive, Zero};
use reppow::families::{
    family_232, gen_231, gen_232, gen_241, gen_322, gen_323, gen_331, gen_422, gen_bijective_table_family,
    bijective_patterns,
};
use reppow::search::{brute_solutions_for_base, search_fib_powers, search_fib_squares, search_range, solutions_for_base};
use reppow::triples::{f_value, is_admissible};
use reppow::verify::{bundled_corpora, bundled_corpus, verify_corpus, CorpusRow};
use reppow::{SolutionRecord, Triple};

type Outcome = Result<String, String>;

fn triple(q: u32, n: u32, l: u32) -> Triple {
    Triple::new(q, n, l).unwrap()
}

/// `(b, y, c, digits)` of a record, for set comparison.
fn key(r: &SolutionRecord) -> (BigUint, BigUint, BigUint, String) {
    (r.b.clone(), r.y.clone(), r.c.clone(), r.w.digit_list())
}

fn row_key(r: &CorpusRow) -> (BigUint, BigUint, BigUint, String) {
    (r.b.clone().unwrap(), r.y.clone(), r.c.clone().unwrap(), r.w.clone())
}

fn table_reproduction() -> Outcome {
    let corpus = bundled_corpus("table_231").map_err(|e| e.to_string())?;
    let expected: BTreeSet<_> = corpus.rows.iter().map(row_key).collect();
    let found = search_range(triple(2, 3, 1), 2, 500, None).map_err(|e| e.to_string())?;
    let got: BTreeSet<_> = found.solutions.iter().map(key).collect();
    if !found.unresolved.is_empty() {
        return Err(format!("unresolved bases {:?}", found.unresolved));
    }
    if got != expected {
        return Err(format!(
            "missing {:?}, extra {:?}",
            expected.difference(&got).collect::<Vec<_>>(),
            got.difference(&expected).collect::<Vec<_>>()
        ));
    }
    Ok(format!("{} rows reproduced over 2 <= b <= 500", got.len()))
}

fn sporadic_reproduction() -> Outcome {
    let corpus = bundled_corpus("sporadic").map_err(|e| e.to_string())?;
    for row in &corpus.rows {
        let t = triple(row.q, row.n, row.l.unwrap());
        let b_row = row.b.as_ref().unwrap().to_u64().unwrap();
        let hi = (b_row + 100).min(12_500);
        let expected: BTreeSet<_> = corpus
            .rows
            .iter()
            .filter(|r| (r.q, r.n, r.l) == (row.q, row.n, row.l) && r.b.as_ref().unwrap() <= &BigUint::from(hi))
            .map(row_key)
            .collect();
        let found = search_range(t, 2, hi, None).map_err(|e| e.to_string())?;
        if !found.unresolved.is_empty() {
            return Err(format!("{t}: unresolved bases {:?}", found.unresolved));
        }
        let got: BTreeSet<_> = found.solutions.iter().map(key).collect();
        if got != expected {
            return Err(format!("{t} over [2, {hi}]: expected {expected:?}, found {got:?}"));
        }
    }
    Ok(format!("{} rows, each searched over [2, b + 100]", corpus.rows.len()))
}

fn negative_searches() -> Outcome {
    let triples = [(2, 4, 2), (2, 6, 1), (3, 3, 2), (3, 4, 1), (3, 5, 1), (4, 2, 4), (4, 3, 2), (4, 4, 1), (5, 2, 3), (5, 3, 1)];
    for (q, n, l) in triples {
        let t = triple(q, n, l);
        let found = search_range(t, 2, 5000, None).map_err(|e| e.to_string())?;
        if !found.solutions.is_empty() {
            return Err(format!("{t}: unexpected {}", found.solutions[0]));
        }
        if !found.unresolved.is_empty() {
            return Err(format!("{t}: unresolved bases {:?}", found.unresolved));
        }
    }
    Ok(format!("{} triples empty over 2 <= b <= 5000", triples.len()))
}

fn fibonacci_table() -> Outcome {
    let corpus = bundled_corpus("fibonacci").map_err(|e| e.to_string())?;
    let expected: Vec<(u64, String)> = corpus
        .rows
        .iter()
        .filter(|r| r.q == 2)
        .map(|r| (r.y.to_u64().unwrap(), r.w.clone()))
        .collect();
    let got: Vec<(u64, String)> = search_fib_squares(34_000_000).into_iter().map(|(y, w)| (y, w.to_string())).collect();
    if got != expected {
        return Err(format!("squares differ: expected {} rows, found {got:?}", expected.len()));
    }
    let fourth: Vec<u64> = search_fib_powers(4, 2, 100).into_iter().map(|(y, _)| y).collect();
    if fourth != [2, 7] {
        return Err(format!("fourth powers: {fourth:?}"));
    }
    Ok(format!("{} squares below 34000000; fourth powers {{2, 7}}", got.len()))
}

fn generator_agreement() -> Outcome {
    let canon = |b: u64, d: &[u64]| reppow::Word::canonical(b, d).unwrap();
    let checks: Vec<(&str, Option<SolutionRecord>, (u64, u64, reppow::Word))> = vec![
        ("gen_322", gen_322(1).pop(), (7, 10, canon(7, &[2, 6]))),
        ("gen_331", gen_331(1).pop(), (18, 7, canon(18, &[1]))),
        ("gen_323", gen_323(1).pop(), (19, 140, canon(19, &[1, 2, 1]))),
        ("gen_241", gen_241(1).pop(), (7, 40, canon(7, &[4]))),
        ("gen_422", gen_422(1).pop(), (239, 78, canon(239, &[2, 170]))),
        ("gen_231", gen_231(1).pop(), (22, 39, canon(22, &[3]))),
        ("gen_232", gen_232(1).pop(), (313, 7_575_393, canon(313, &[19, 32]))),
    ];
    for (name, got, (b, y, w)) in checks {
        let got = got.ok_or(format!("{name} produced nothing"))?;
        if got.b != BigUint::from(b) || got.y != BigUint::from(y) || got.w != w {
            return Err(format!("{name}: {got}"));
        }
    }
    let second = gen_232(2).pop().ok_or("gen_232 has no second member")?;
    let member = family_232().members().nth(1).unwrap();
    let y0: num_bigint::BigInt = member.b().abs() / 2u32;
    let expected = (
        "33519770429365238471302383574583401",
        "68790306712490710007811612444611710421528067927390557506093905927147",
        "19352648480568478024495121554106701",
    );
    let got = (second.b.to_string(), second.c.to_string(), y0.to_string());
    if (got.0.as_str(), got.1.as_str(), got.2.as_str()) != expected || !second.is_valid() {
        return Err(format!("gen_232 k = 1: {got:?}"));
    }
    Ok(String::from("7 first members and the 35-digit (2,3,2) member match"))
}

fn oracle_equivalence() -> Outcome {
    let mut compared = 0;
    for q in 2..=4 {
        for n in 2..=4 {
            for l in 1..=2 {
                let t = triple(q, n, l);
                for b in 2..=100u64 {
                    let fast = solutions_for_base(t, b).map_err(|e| e.to_string())?;
                    let brute = brute_solutions_for_base(t, b).map_err(|e| e.to_string())?;
                    if fast != brute {
                        return Err(format!("{t} at b = {b}: {} vs {}", fast.len(), brute.len()));
                    }
                    compared += 1;
                }
            }
        }
    }
    Ok(format!("{compared} (triple, base) pairs agree"))
}

fn f_sign_suite() -> Outcome {
    let mut admissible = Vec::new();
    for k in 1..=10_000u32 {
        admissible.push(triple(2, 2, k));
        if k >= 2 {
            admissible.push(triple(k, 2, 1));
        }
    }
    for (q, n, l) in [(2, 3, 1), (2, 3, 2), (3, 2, 2), (3, 2, 3), (3, 3, 1), (2, 4, 1), (4, 2, 2)] {
        admissible.push(triple(q, n, l));
    }
    for t in &admissible {
        if !is_admissible(*t) || !f_value(*t).is_negative() {
            return Err(format!("{t}: expected admissible with F < 0, F = {}", f_value(*t)));
        }
    }
    let mut inadmissible = 0;
    for q in 2..=50 {
        for n in 2..=50 {
            for l in 1..=50 {
                let t = triple(q, n, l);
                if is_admissible(t) {
                    continue;
                }
                let f = f_value(t);
                if f.is_negative() || f.is_zero() {
                    return Err(format!("{t}: F = {f}"));
                }
                inadmissible += 1;
            }
        }
    }
    Ok(format!("{} admissible negative, {inadmissible} inadmissible positive", admissible.len()))
}

fn corpus_verification() -> Outcome {
    let mut rows = 0;
    for (id, corpus) in bundled_corpora() {
        let report = verify_corpus(&corpus);
        if !report.all_passed() || report.outcomes.is_empty() {
            return Err(format!("{id}:\n{report}"));
        }
        rows += report.passed();
    }
    let mut instances = 0;
    for b in 2..=9u64 {
        let count = bijective_patterns().iter().filter(|p| p.b == b).count();
        for row in 0..count {
            for n in 0..=50 {
                gen_bijective_table_family(b, row, n).map_err(|e| format!("base {b} row {row} n {n}: {e}"))?;
                instances += 1;
            }
        }
    }
    Ok(format!("{rows} bundled rows pass; {instances} bijective pattern instances hold"))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 8] = [
        ("(2,3,1) table reproduction", table_reproduction),
        ("sporadic reproduction", sporadic_reproduction),
        ("negative searches", negative_searches),
        ("Fibonacci table", fibonacci_table),
        ("generator/table agreement", generator_agreement),
        ("oracle equivalence", oracle_equivalence),
        ("F-sign suite", f_sign_suite),
        ("corpus verification", corpus_verification),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(run).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS {name} ({detail}; {secs:.1}s)", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {}: FAIL {name} ({why}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
