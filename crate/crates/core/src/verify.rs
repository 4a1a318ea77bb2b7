//! Golden-table verification: CSV corpora of known solutions, re-checked
//! from scratch row by row.
//!
//! A corpus file starts with `#` header lines (`name:`, `source:`,
//! `system:`) followed by a CSV table. Canonical tables have columns
//! `q,n,l,b,y,c,w`; bijective tables `q,n,b,y,w`; Zeckendorf tables
//! `q,n,y,w` with `w` written as a bit string.

use std::fmt;
use std::path::Path;

use num_bigint::BigUint;
use num_traits::Pow;

use crate::error::{Error, Result};
use crate::repr::{repeat_word, to_bijective, to_zeckendorf, Radix, System, Word};
use crate::search::SolutionRecord;
use crate::triples::Triple;

/// True iff every invariant of the record holds, digits included.
pub fn verify_solution(rec: &SolutionRecord) -> bool {
    rec.is_valid()
}

/// One table row as written, before any validation beyond integer parsing.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusRow {
    pub line: usize,
    pub q: u32,
    pub n: u32,
    pub l: Option<u32>,
    pub b: Option<BigUint>,
    pub y: BigUint,
    pub c: Option<BigUint>,
    pub w: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCorpus {
    pub name: String,
    pub source: String,
    pub system: System,
    pub rows: Vec<CorpusRow>,
}

fn columns(system: System) -> &'static [&'static str] {
    match system {
        System::Canonical => &["q", "n", "l", "b", "y", "c", "w"],
        System::Bijective => &["q", "n", "b", "y", "w"],
        System::Zeckendorf => &["q", "n", "y", "w"],
    }
}

impl TableCorpus {
    pub fn parse(text: &str) -> Result<Self> {
        let mut name = String::new();
        let mut source = String::new();
        let mut system = System::Canonical;
        for (i, line) in text.lines().enumerate() {
            let Some(comment) = line.trim_start().strip_prefix('#') else { continue };
            let Some((key, value)) = comment.split_once(':') else { continue };
            let value = value.trim().to_owned();
            match key.trim() {
                "name" => name = value,
                "source" => source = value,
                "system" => {
                    system = value.parse().map_err(|_| Error::MalformedCorpus {
                        line: i + 1,
                        message: format!("unknown system {value:?}"),
                    })?
                }
                _ => {}
            }
        }

        let mut reader = csv::ReaderBuilder::new()
            .comment(Some(b'#'))
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());
        let expected = columns(system);
        let header_line = text
            .lines()
            .position(|l| !l.trim_start().starts_with('#') && !l.trim().is_empty())
            .map_or(1, |i| i + 1);
        let header = reader.headers().map_err(|e| Error::MalformedCorpus {
            line: header_line,
            message: e.to_string(),
        })?;
        if !header.is_empty() && header.iter().ne(expected.iter().copied()) {
            return Err(Error::MalformedCorpus {
                line: header_line,
                message: format!("expected columns {}, found {}", expected.join(","), header.iter().collect::<Vec<_>>().join(",")),
            });
        }

        // line numbers from byte offsets, so blank lines are counted
        let line_at = |byte: u64| {
            let bytes = text.as_bytes();
            let mut at = (byte as usize).min(bytes.len());
            while at < bytes.len() && (bytes[at] == b'\n' || bytes[at] == b'\r') {
                at += 1;
            }
            bytes[..at].iter().filter(|&&c| c == b'\n').count() + 1
        };
        let mut rows = Vec::new();
        for record in reader.records() {
            let record = record.map_err(|e| Error::MalformedCorpus {
                line: e.position().map_or(0, |p| line_at(p.byte())),
                message: e.to_string(),
            })?;
            let line = record.position().map_or(0, |p| line_at(p.byte()));
            let bad = |message: String| Error::MalformedCorpus { line, message };
            if record.len() != expected.len() {
                return Err(bad(format!("expected {} fields, found {}", expected.len(), record.len())));
            }
            let field = |name: &str| -> &str {
                let i = expected.iter().position(|c| *c == name).expect("known column");
                &record[i]
            };
            let small = |name: &str| -> Result<u32> {
                field(name).parse().map_err(|_| bad(format!("column {name}: {:?} is not a small integer", field(name))))
            };
            let big = |name: &str| -> Result<BigUint> {
                let s = field(name);
                if s.is_empty() || !s.bytes().all(|c| c.is_ascii_digit()) {
                    return Err(bad(format!("column {name}: {s:?} is not a nonnegative integer")));
                }
                Ok(s.parse().expect("digits"))
            };
            let has = |name: &str| expected.contains(&name);
            rows.push(CorpusRow {
                line,
                q: small("q")?,
                n: small("n")?,
                l: if has("l") { Some(small("l")?) } else { None },
                b: if has("b") { Some(big("b")?) } else { None },
                y: big("y")?,
                c: if has("c") { Some(big("c")?) } else { None },
                w: field("w").to_owned(),
            });
        }
        Ok(TableCorpus { name, source, system, rows })
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let mut corpus = Self::parse(&text)?;
        if corpus.name.is_empty() {
            corpus.name = path.display().to_string();
        }
        Ok(corpus)
    }
}

/// The first invariant a row fails, as a short description.
pub fn check_row(row: &CorpusRow, system: System) -> std::result::Result<(), String> {
    if row.q < 2 || row.n < 2 {
        return Err(String::from("parameters: need q >= 2, n >= 2"));
    }
    match system {
        System::Canonical => {
            let (l, b, c) = (row.l.unwrap_or(0), row.b.clone().unwrap_or_default(), row.c.clone().unwrap_or_default());
            let t = Triple::new(row.q, row.n, l).map_err(|e| format!("parameters: {e}"))?;
            let w = Word::parse(&format!("{}@{}", row.w, b), System::Canonical).map_err(|e| format!("word: {e}"))?;
            let rec = SolutionRecord { triple: t, b, y: row.y.clone(), c, w };
            rec.check().map_err(|v| v.to_string())
        }
        System::Bijective | System::Zeckendorf => {
            let w = if system == System::Zeckendorf {
                Word::zeckendorf(&row.w)
            } else {
                Word::parse(&format!("{}@{}", row.w, row.b.clone().unwrap_or_default()), System::Bijective)
            }
            .map_err(|e| format!("word: {e}"))?;
            if w.is_empty() {
                return Err(String::from("word: empty"));
            }
            let power: BigUint = Pow::pow(&row.y, row.q);
            let expanded = match w.radix() {
                Radix::Bijective(b) => to_bijective(&power, b).map_err(|e| e.to_string())?,
                _ => to_zeckendorf(&power),
            };
            let expected = repeat_word(&w, row.n as usize).map_err(|e| e.to_string())?;
            if expanded == expected {
                Ok(())
            } else {
                Err(format!("digit string: representation of y^q is {expanded}, not w repeated n times"))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowOutcome {
    pub line: usize,
    pub summary: String,
    pub failure: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusReport {
    pub name: String,
    pub outcomes: Vec<RowOutcome>,
}

impl CorpusReport {
    pub fn passed(&self) -> usize {
        self.outcomes.iter().filter(|o| o.failure.is_none()).count()
    }

    pub fn failed(&self) -> usize {
        self.outcomes.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }
}

impl fmt::Display for CorpusReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for o in &self.outcomes {
            match &o.failure {
                None => writeln!(f, "line {}: PASS {}", o.line, o.summary)?,
                Some(why) => writeln!(f, "line {}: FAIL {}: {}", o.line, o.summary, why)?,
            }
        }
        write!(f, "{}: {}/{} rows pass", self.name, self.passed(), self.outcomes.len())
    }
}

pub fn verify_corpus(corpus: &TableCorpus) -> CorpusReport {
    let outcomes = corpus
        .rows
        .iter()
        .map(|row| {
            let mut summary = format!("q={} n={}", row.q, row.n);
            if let Some(l) = row.l {
                summary.push_str(&format!(" l={l}"));
            }
            if let Some(b) = &row.b {
                summary.push_str(&format!(" b={b}"));
            }
            summary.push_str(&format!(" y={} w={}", row.y, row.w));
            RowOutcome {
                line: row.line,
                summary,
                failure: check_row(row, corpus.system).err(),
            }
        })
        .collect();
    CorpusReport {
        name: corpus.name.clone(),
        outcomes,
    }
}

const BUNDLED: &[(&str, &str)] = &[
    ("table_231", include_str!("../data/table_231.csv")),
    ("table_232", include_str!("../data/table_232.csv")),
    ("table_322", include_str!("../data/table_322.csv")),
    ("table_331", include_str!("../data/table_331.csv")),
    ("table_323", include_str!("../data/table_323.csv")),
    ("table_241", include_str!("../data/table_241.csv")),
    ("table_422", include_str!("../data/table_422.csv")),
    ("sporadic", include_str!("../data/sporadic.csv")),
    ("example_110", include_str!("../data/example_110.csv")),
    ("fibonacci", include_str!("../data/fibonacci.csv")),
    ("bijective", include_str!("../data/bijective.csv")),
];

/// Identifiers of the corpora compiled into the library.
pub fn bundled_names() -> Vec<&'static str> {
    BUNDLED.iter().map(|(id, _)| *id).collect()
}

pub fn bundled_corpus(id: &str) -> Result<TableCorpus> {
    let (_, text) = BUNDLED
        .iter()
        .find(|(name, _)| *name == id)
        .ok_or_else(|| Error::InvalidParameter(format!("no bundled corpus {id:?}")))?;
    TableCorpus::parse(text)
}

pub fn bundled_corpora() -> Vec<(&'static str, TableCorpus)> {
    BUNDLED
        .iter()
        .map(|(id, text)| (*id, TableCorpus::parse(text).expect("bundled corpora parse")))
        .collect()
}
