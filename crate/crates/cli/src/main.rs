//! Command-line front end for the `reppow` library.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 checkpoint error.

use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use reppow::factor::{factor_quotient_with, factor_with, quotient_pieces, repunit_quotient, FactorBudget};
use reppow::families::{
    gen_bijective_square, gen_bijective_table_family, gen_fibonacci_family, gen_fibonacci_family2, generate,
};
use reppow::repr::{to_bijective, to_canonical, to_zeckendorf};
use reppow::search::{search_range_with, SearchOptions, SolutionRecord, CSV_HEADER};
use reppow::triples::{f_value, is_admissible};
use reppow::verify::{bundled_corpora, bundled_corpus, bundled_names, verify_corpus, TableCorpus};
use reppow::{Error, System, Triple};

#[derive(Parser)]
#[command(name = "reppow", version, about = "Perfect powers whose digits repeat a block")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find every solution for a triple over a range of bases.
    Search(SearchArgs),
    /// Emit members of a constructive family.
    Generate(GenerateArgs),
    /// Report admissibility and the exact value of F.
    Classify { q: u32, n: u32, l: u32 },
    /// Re-check a table of known solutions.
    Verify(VerifyArgs),
    /// Factor (b^(nl) - 1) / (b^l - 1) piece by piece.
    Factor(FactorArgs),
    /// Write an integer in a representation system.
    Repr(ReprArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Jsonl,
}

#[derive(Args)]
struct SearchArgs {
    #[arg(long)]
    q: u32,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    #[arg(long)]
    b_lo: u64,
    #[arg(long)]
    b_hi: u64,
    /// Worker threads (default: available parallelism).
    #[arg(long)]
    workers: Option<usize>,
    /// Bases per work unit.
    #[arg(long, default_value_t = 512)]
    chunk_size: u64,
    /// Checkpoint file to resume from and append to.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Factoring time limit per base, in milliseconds.
    #[arg(long)]
    factor_budget: Option<u64>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct GenerateArgs {
    /// Triple as Q,N,L (canonical system only).
    #[arg(long)]
    triple: Option<Triple>,
    #[arg(long, default_value_t = 10)]
    count: usize,
    #[arg(long, default_value = "canonical")]
    system: System,
    /// Base: selects the fixed-base (2,2,l) family, or the bijective base.
    #[arg(long)]
    base: Option<u64>,
    /// Pattern row for bijective bases 2..=9, or family 1 or 2 for Fibonacci.
    #[arg(long)]
    pattern: Option<usize>,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// CSV corpus file.
    #[arg(long, conflicts_with_all = ["bundled", "all_bundled"])]
    corpus: Option<PathBuf>,
    /// Name of a corpus compiled into the binary.
    #[arg(long)]
    bundled: Option<String>,
    /// Verify every compiled-in corpus.
    #[arg(long)]
    all_bundled: bool,
    /// Print only the summary line of each report.
    #[arg(long)]
    quiet: bool,
}

#[derive(Args)]
struct FactorArgs {
    #[arg(long)]
    b: BigUint,
    #[arg(long)]
    n: u32,
    #[arg(long)]
    l: u32,
    /// Time limit in milliseconds for each piece.
    #[arg(long)]
    budget: Option<u64>,
}

#[derive(Args)]
struct ReprArgs {
    #[arg(long)]
    x: BigUint,
    #[arg(long)]
    base: Option<BigUint>,
    #[arg(long, default_value = "canonical")]
    system: System,
}

/// Failure with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure { code: 2, message: message.into() }
    }

    fn verification(message: impl Into<String>) -> Self {
        Failure { code: 1, message: message.into() }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Checkpoint(_) => 3,
            Error::Io(_) => 1,
            _ => 2,
        };
        Failure { code, message: e.to_string() }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure { code: 1, message: e.to_string() }
    }
}

type Outcome = Result<(), Failure>;

fn budget(ms: Option<u64>) -> FactorBudget {
    ms.map_or_else(FactorBudget::unlimited, FactorBudget::millis)
}

fn json_line(r: &SolutionRecord) -> String {
    let Triple { q, n, l } = r.triple;
    format!(
        "{{\"solution\":{{\"b\":\"{}\",\"c\":\"{}\",\"l\":\"{l}\",\"n\":\"{n}\",\"q\":\"{q}\",\"w\":\"{}\",\"y\":\"{}\"}}}}",
        r.b, r.c, r.w, r.y
    )
}

fn write_records(out: &mut impl Write, records: &[SolutionRecord], format: Format) -> io::Result<()> {
    if let Format::Csv = format {
        writeln!(out, "{CSV_HEADER}")?;
    }
    for r in records {
        match format {
            Format::Csv => writeln!(out, "{}", r.to_csv_line())?,
            Format::Jsonl => writeln!(out, "{}", json_line(r))?,
        }
    }
    Ok(())
}

fn search(args: SearchArgs) -> Outcome {
    let t = Triple::new(args.q, args.n, args.l)?;
    if args.b_lo < 2 || args.b_lo > args.b_hi {
        return Err(Failure::usage("need 2 <= b-lo <= b-hi"));
    }
    let mut opts = SearchOptions {
        chunk_size: args.chunk_size.max(1),
        budget: budget(args.factor_budget),
        ..SearchOptions::default()
    };
    if let Some(w) = args.workers {
        opts.workers = w.max(1);
    }
    let cp = search_range_with(t, args.b_lo, args.b_hi, args.checkpoint.as_deref(), &opts)?;
    let mut out = io::stdout().lock();
    let in_range: Vec<SolutionRecord> = cp.solutions_in(args.b_lo, args.b_hi).into_iter().cloned().collect();
    write_records(&mut out, &in_range, args.format)?;
    let unresolved: Vec<u64> = cp.unresolved.iter().copied().filter(|b| (args.b_lo..=args.b_hi).contains(b)).collect();
    if let Format::Jsonl = args.format {
        for b in &unresolved {
            writeln!(out, "{{\"unresolved\":\"{b}\"}}")?;
        }
    }
    if !unresolved.is_empty() {
        let list: Vec<String> = unresolved.iter().map(u64::to_string).collect();
        eprintln!("unresolved bases (factoring budget exceeded): {}", list.join(", "));
    }
    eprintln!("{t}: {} solutions in [{}, {}]", in_range.len(), args.b_lo, args.b_hi);
    Ok(())
}

fn generate_cmd(args: GenerateArgs) -> Outcome {
    let mut out = io::stdout().lock();
    match args.system {
        System::Canonical => {
            let t = args.triple.ok_or_else(|| Failure::usage("--triple is required for the canonical system"))?;
            let records = generate(t, args.count, args.base)?;
            write_records(&mut out, &records, args.format)?;
        }
        System::Bijective => {
            if args.triple.is_some_and(|t| (t.q, t.n) != (2, 2)) {
                return Err(Failure::usage("bijective families are squares written twice: q = n = 2"));
            }
            let b = args.base.ok_or_else(|| Failure::usage("--base is required for the bijective system"))?;
            writeln!(out, "q,n,b,y,w")?;
            for k in 0..args.count {
                let (y, w) = match args.pattern {
                    Some(row) => gen_bijective_table_family(b, row, k)?,
                    None => gen_bijective_square(b, k as u32 + 2)?,
                };
                writeln!(out, "2,2,{b},{y},\"{}\"", w.digit_list())?;
            }
        }
        System::Zeckendorf => {
            if args.triple.is_some_and(|t| (t.q, t.n) != (2, 2)) {
                return Err(Failure::usage("Fibonacci families are squares written twice: q = n = 2"));
            }
            let family = args.pattern.unwrap_or(1);
            if family != 1 && family != 2 {
                return Err(Failure::usage("--pattern must be 1 or 2 for the Fibonacci system"));
            }
            writeln!(out, "q,n,y,w")?;
            for k in 1..=args.count {
                let (y, w) = if family == 1 { gen_fibonacci_family(k)? } else { gen_fibonacci_family2(k)? };
                writeln!(out, "2,2,{y},{w}")?;
            }
        }
    }
    Ok(())
}

fn classify(q: u32, n: u32, l: u32) -> Outcome {
    let t = Triple::new(q, n, l)?;
    let f = f_value(t);
    let label = if is_admissible(t) { "admissible" } else { "inadmissible" };
    println!("{label} F={}/{}", f.numer(), f.denom());
    Ok(())
}

fn verify(args: VerifyArgs) -> Outcome {
    let corpora: Vec<(String, TableCorpus)> = if let Some(path) = &args.corpus {
        let corpus = TableCorpus::load(path).map_err(|e| match e {
            Error::MalformedCorpus { .. } => Failure::verification(format!("{}: {e}", path.display())),
            other => Failure::from(other),
        })?;
        vec![(path.display().to_string(), corpus)]
    } else if let Some(name) = &args.bundled {
        let corpus = bundled_corpus(name)
            .map_err(|_| Failure::usage(format!("unknown corpus {name:?}; available: {}", bundled_names().join(", "))))?;
        vec![(name.clone(), corpus)]
    } else if args.all_bundled {
        bundled_corpora().into_iter().map(|(id, c)| (id.to_owned(), c)).collect()
    } else {
        return Err(Failure::usage("give --corpus PATH, --bundled NAME or --all-bundled"));
    };
    let mut failed = 0;
    let mut out = io::stdout().lock();
    for (label, corpus) in corpora {
        let report = verify_corpus(&corpus);
        if args.quiet {
            writeln!(out, "{label}: {}/{} rows pass", report.passed(), report.outcomes.len())?;
        } else {
            writeln!(out, "{report}")?;
        }
        failed += report.failed();
    }
    if failed > 0 {
        return Err(Failure::verification(format!("{failed} rows failed")));
    }
    Ok(())
}

fn factor_cmd(args: FactorArgs) -> Outcome {
    if args.b < BigUint::from(2u32) {
        return Err(Failure::usage("need b >= 2"));
    }
    if args.n < 2 || args.l < 1 {
        return Err(Failure::usage("need n >= 2 and l >= 1"));
    }
    let budget = budget(args.budget);
    let mut out = io::stdout().lock();
    writeln!(out, "r = {}", repunit_quotient(&args.b, args.n, args.l))?;
    for (index, value) in quotient_pieces(&args.b, args.n, args.l) {
        let f = factor_with(&value, &budget)?;
        writeln!(out, "Phi_{index}(b) = {value} = {f}")?;
    }
    let total = factor_quotient_with(&args.b, args.n, args.l, &budget)?;
    writeln!(out, "r = {total}")?;
    Ok(())
}

fn repr(args: ReprArgs) -> Outcome {
    let word = match args.system {
        System::Zeckendorf => to_zeckendorf(&args.x),
        System::Canonical | System::Bijective => {
            let b = args.base.ok_or_else(|| Failure::usage("--base is required for this system"))?;
            if args.system == System::Canonical {
                to_canonical(&args.x, &b)?
            } else {
                to_bijective(&args.x, &b)?
            }
        }
    };
    match args.system {
        System::Zeckendorf => println!("{word}"),
        _ => println!("{}", word.digit_list()),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Search(a) => search(a),
        Command::Generate(a) => generate_cmd(a),
        Command::Classify { q, n, l } => classify(q, n, l),
        Command::Verify(a) => verify(a),
        Command::Factor(a) => factor_cmd(a),
        Command::Repr(a) => repr(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
