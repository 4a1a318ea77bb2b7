//! Line-delimited JSON checkpoints.
//!
//! ```text
//! {"triple":["2","3","1"]}
//! {"solution":{"b":"18","c":"7","l":"1","n":"3","q":"2","w":"(7)@18","y":"49"}}
//! {"unresolved":"1234"}
//! {"range":["2","500"]}
//! ```
//!
//! A chunk's solutions are appended before its range line, so a torn run
//! never marks a base as done without its results.

use std::fs::{self, File, OpenOptions};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use num_bigint::BigUint;
use serde_json::{json, Value};

use super::record::SolutionRecord;
use crate::error::{Error, Result};
use crate::repr::{System, Word};
use crate::triples::Triple;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub triple: Triple,
    /// Inclusive, sorted, disjoint and non-adjacent after [`Checkpoint::normalize`].
    pub completed_ranges: Vec<(u64, u64)>,
    pub solutions: Vec<SolutionRecord>,
    /// Bases whose quotient could not be factored within budget.
    pub unresolved: Vec<u64>,
}

impl Checkpoint {
    pub fn new(triple: Triple) -> Self {
        Checkpoint {
            triple,
            completed_ranges: Vec::new(),
            solutions: Vec::new(),
            unresolved: Vec::new(),
        }
    }

    pub fn normalize(&mut self) {
        self.completed_ranges.sort_unstable();
        let mut merged: Vec<(u64, u64)> = Vec::with_capacity(self.completed_ranges.len());
        for &(lo, hi) in &self.completed_ranges {
            match merged.last_mut() {
                Some(last) if lo <= last.1.saturating_add(1) => last.1 = last.1.max(hi),
                _ => merged.push((lo, hi)),
            }
        }
        self.completed_ranges = merged;
        self.solutions.sort();
        self.solutions.dedup();
        self.unresolved.sort_unstable();
        self.unresolved.dedup();
    }

    pub fn covers(&self, b: u64) -> bool {
        self.completed_ranges.iter().any(|&(lo, hi)| lo <= b && b <= hi)
    }

    /// Sub-intervals of `[lo, hi]` not yet searched.
    pub fn missing(&self, lo: u64, hi: u64) -> Vec<(u64, u64)> {
        let mut out = Vec::new();
        let mut next = lo;
        for &(a, z) in &self.completed_ranges {
            if z < next {
                continue;
            }
            if a > hi {
                break;
            }
            if a > next {
                out.push((next, a - 1));
            }
            next = match z.checked_add(1) {
                Some(v) => v,
                None => return out,
            };
            if next > hi {
                return out;
            }
        }
        if next <= hi {
            out.push((next, hi));
        }
        out
    }

    /// Solutions whose base lies in `[lo, hi]`.
    pub fn solutions_in(&self, lo: u64, hi: u64) -> Vec<&SolutionRecord> {
        let (lo, hi) = (BigUint::from(lo), BigUint::from(hi));
        self.solutions.iter().filter(|s| s.b >= lo && s.b <= hi).collect()
    }

    /// Checkpoint at `path`, or an empty one when the file does not exist.
    pub fn load_or_new(path: &Path, triple: Triple) -> Result<Self> {
        if !path.exists() {
            return Ok(Checkpoint::new(triple));
        }
        let text = fs::read_to_string(path)?;
        let cp = Checkpoint::parse(&text)?;
        if cp.triple != triple {
            return Err(Error::Checkpoint(format!(
                "{} holds triple {}, not {}",
                path.display(),
                cp.triple,
                triple
            )));
        }
        Ok(cp)
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut cp: Option<Checkpoint> = None;
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let lineno = i + 1;
            let bad = |msg: &str| Error::Checkpoint(format!("line {lineno}: {msg}"));
            let value: Value = serde_json::from_str(line).map_err(|e| bad(&e.to_string()))?;
            let obj = value.as_object().filter(|o| o.len() == 1).ok_or_else(|| bad("expected a one-key object"))?;
            let (key, body) = obj.iter().next().expect("one key");
            if key == "triple" {
                if cp.is_some() {
                    return Err(bad("repeated triple header"));
                }
                let parts = string_array(body, 3).ok_or_else(|| bad("triple must be three decimal strings"))?;
                let nums: Vec<u32> = parts.iter().map(|s| s.parse::<u32>()).collect::<std::result::Result<_, _>>().map_err(|_| bad("triple entries must be integers"))?;
                let triple = Triple::new(nums[0], nums[1], nums[2]).map_err(|e| bad(&e.to_string()))?;
                cp = Some(Checkpoint::new(triple));
                continue;
            }
            let cp = cp.as_mut().ok_or_else(|| bad("record before the triple header"))?;
            match key.as_str() {
                "range" => {
                    let parts = string_array(body, 2).ok_or_else(|| bad("range must be two decimal strings"))?;
                    let lo = parse_u64(&parts[0]).ok_or_else(|| bad("range bound is not an integer"))?;
                    let hi = parse_u64(&parts[1]).ok_or_else(|| bad("range bound is not an integer"))?;
                    if lo < 2 || lo > hi {
                        return Err(bad("range must satisfy 2 <= lo <= hi"));
                    }
                    cp.completed_ranges.push((lo, hi));
                }
                "unresolved" => {
                    let b = body.as_str().and_then(parse_u64).ok_or_else(|| bad("unresolved base must be a decimal string"))?;
                    cp.unresolved.push(b);
                }
                "solution" => {
                    let record = parse_solution(body, cp.triple).map_err(|m| bad(&m))?;
                    if let Err(v) = record.check() {
                        return Err(bad(&format!("stored solution fails {v}")));
                    }
                    cp.solutions.push(record);
                }
                other => return Err(bad(&format!("unknown record kind {other:?}"))),
            }
        }
        let mut cp = cp.ok_or_else(|| Error::Checkpoint(String::from("missing triple header")))?;
        cp.normalize();
        Ok(cp)
    }

    pub fn to_jsonl(&self) -> String {
        let mut out = String::new();
        out.push_str(&header_line(self.triple));
        for s in &self.solutions {
            out.push_str(&solution_line(s));
        }
        for &b in &self.unresolved {
            out.push_str(&unresolved_line(b));
        }
        for &(lo, hi) in &self.completed_ranges {
            out.push_str(&range_line(lo, hi));
        }
        out
    }

    /// Atomic replace: written to a sibling file first, then renamed.
    pub fn save(&self, path: &Path) -> Result<()> {
        let tmp = sibling(path, "tmp");
        {
            let mut f = BufWriter::new(File::create(&tmp)?);
            f.write_all(self.to_jsonl().as_bytes())?;
            f.flush()?;
            f.get_ref().sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }

    /// Solutions as CSV with header `q,n,l,b,y,c,w`.
    pub fn to_csv(&self) -> String {
        let mut out = String::from(super::CSV_HEADER);
        out.push('\n');
        for s in &self.solutions {
            out.push_str(&s.to_csv_line());
            out.push('\n');
        }
        out
    }
}

fn sibling(path: &Path, ext: &str) -> PathBuf {
    let mut name = path.file_name().map(|s| s.to_os_string()).unwrap_or_default();
    name.push(".");
    name.push(ext);
    path.with_file_name(name)
}

fn string_array(v: &Value, len: usize) -> Option<Vec<String>> {
    let arr = v.as_array().filter(|a| a.len() == len)?;
    arr.iter().map(|x| x.as_str().map(str::to_owned)).collect()
}

fn parse_u64(s: &str) -> Option<u64> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_big(s: &str) -> Option<BigUint> {
    if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    s.parse().ok()
}

fn parse_solution(body: &Value, triple: Triple) -> std::result::Result<SolutionRecord, String> {
    let obj = body.as_object().ok_or("solution must be an object")?;
    let field = |k: &str| -> std::result::Result<&str, String> {
        obj.get(k).and_then(Value::as_str).ok_or_else(|| format!("solution field {k:?} missing or not a string"))
    };
    let small = |k: &str| -> std::result::Result<u32, String> {
        field(k)?.parse::<u32>().map_err(|_| format!("solution field {k:?} is not an integer"))
    };
    let t = Triple { q: small("q")?, n: small("n")?, l: small("l")? };
    if t != triple {
        return Err(format!("solution for {t} in a checkpoint for {triple}"));
    }
    let b = parse_big(field("b")?).ok_or("bad b")?;
    let y = parse_big(field("y")?).ok_or("bad y")?;
    let c = parse_big(field("c")?).ok_or("bad c")?;
    let w = Word::parse(field("w")?, System::Canonical).map_err(|e| e.to_string())?;
    let record = SolutionRecord { triple, b, y, c, w };
    Ok(record)
}

pub(crate) fn header_line(t: Triple) -> String {
    line(json!({ "triple": [t.q.to_string(), t.n.to_string(), t.l.to_string()] }))
}

pub(crate) fn range_line(lo: u64, hi: u64) -> String {
    line(json!({ "range": [lo.to_string(), hi.to_string()] }))
}

pub(crate) fn unresolved_line(b: u64) -> String {
    line(json!({ "unresolved": b.to_string() }))
}

pub(crate) fn solution_line(s: &SolutionRecord) -> String {
    line(json!({ "solution": {
        "q": s.triple.q.to_string(),
        "n": s.triple.n.to_string(),
        "l": s.triple.l.to_string(),
        "b": s.b.to_string(),
        "y": s.y.to_string(),
        "c": s.c.to_string(),
        "w": s.w.to_string(),
    }}))
}

fn line(v: Value) -> String {
    let mut s = v.to_string();
    s.push('\n');
    s
}

/// Append-only writer used by the search coordinator.
pub(crate) struct Appender {
    file: BufWriter<File>,
}

impl Appender {
    pub(crate) fn open(path: &Path, triple: Triple) -> Result<Self> {
        let fresh = !path.exists() || fs::metadata(path)?.len() == 0;
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        let mut app = Appender { file: BufWriter::new(file) };
        if fresh {
            app.write(&header_line(triple))?;
        }
        Ok(app)
    }

    pub(crate) fn write(&mut self, text: &str) -> Result<()> {
        self.file.write_all(text.as_bytes())?;
        self.file.flush()?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::search::solutions_for_base;

    fn sample() -> Checkpoint {
        let t = Triple::new(2, 3, 1).unwrap();
        let mut cp = Checkpoint::new(t);
        cp.solutions.extend(solutions_for_base(t, 22).unwrap());
        cp.solutions.extend(solutions_for_base(t, 18).unwrap());
        cp.completed_ranges = vec![(10, 20), (2, 9), (30, 40)];
        cp.unresolved = vec![7, 3, 7];
        cp.normalize();
        cp
    }

    #[test]
    fn normalize_merges_adjacent() {
        let cp = sample();
        assert_eq!(cp.completed_ranges, vec![(2, 20), (30, 40)]);
        assert_eq!(cp.unresolved, vec![3, 7]);
        assert_eq!(cp.solutions[0].b, BigUint::from(18u32));
        assert_eq!(cp.missing(2, 50), vec![(21, 29), (41, 50)]);
        assert_eq!(cp.missing(5, 15), vec![]);
        assert_eq!(cp.missing(15, 35), vec![(21, 29)]);
    }

    #[test]
    fn jsonl_round_trip() {
        let cp = sample();
        let text = cp.to_jsonl();
        assert!(text.starts_with("{\"triple\":[\"2\",\"3\",\"1\"]}\n"));
        assert_eq!(Checkpoint::parse(&text).unwrap(), cp);
    }

    #[test]
    fn corrupt_lines_are_rejected() {
        let good = sample().to_jsonl();
        for bad in [
            format!("{good}{{\"range\":[\"5\"]}}\n"),
            format!("{good}{{\"range\":[5,6]}}\n"),
            format!("{good}not json\n"),
            format!("{good}{{\"what\":\"1\"}}\n"),
            good.replace("\"49\"", "\"50\""),
            good.replace("\"triple\":[\"2\",\"3\",\"1\"]", "\"triple\":[\"2\",\"3\"]"),
            String::from("{\"range\":[\"2\",\"3\"]}\n"),
            format!("{good}{{\"solution\":"),
        ] {
            assert!(matches!(Checkpoint::parse(&bad), Err(Error::Checkpoint(_))), "{bad}");
        }
    }

    #[test]
    fn save_and_load() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cp.jsonl");
        let cp = sample();
        cp.save(&path).unwrap();
        assert_eq!(Checkpoint::load_or_new(&path, cp.triple).unwrap(), cp);
        let other = Triple::new(2, 3, 2).unwrap();
        assert!(matches!(Checkpoint::load_or_new(&path, other), Err(Error::Checkpoint(_))));
        let missing = dir.path().join("none.jsonl");
        assert_eq!(Checkpoint::load_or_new(&missing, other).unwrap(), Checkpoint::new(other));
    }

    #[test]
    fn csv_export() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "q,n,l,b,y,c,w");
        assert_eq!(lines[1], "2,3,1,18,49,7,\"(7)\"");
        assert_eq!(lines.len(), 4);
    }
}
