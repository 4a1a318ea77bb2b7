use std::path::Path;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use super::checkpoint::{range_line, solution_line, unresolved_line, Appender, Checkpoint};
use super::record::SolutionRecord;
use super::solutions_for_base_with;
use crate::error::{Error, Result};
use crate::factor::FactorBudget;
use crate::triples::Triple;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    pub workers: usize,
    /// Bases per unit of work; also the granularity of checkpoint ranges.
    pub chunk_size: u64,
    pub budget: FactorBudget,
    /// Stop after this many chunks have been recorded (simulated interruption).
    pub stop_after_chunks: Option<usize>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            workers: thread::available_parallelism().map(|n| n.get()).unwrap_or(1),
            chunk_size: 512,
            budget: FactorBudget::unlimited(),
            stop_after_chunks: None,
        }
    }
}

struct ChunkResult {
    lo: u64,
    hi: u64,
    solutions: Vec<SolutionRecord>,
    unresolved: Vec<u64>,
}

fn run_chunk(t: Triple, lo: u64, hi: u64, budget: &FactorBudget) -> Result<ChunkResult> {
    let mut solutions = Vec::new();
    let mut unresolved = Vec::new();
    for b in lo..=hi {
        match solutions_for_base_with(t, b, budget) {
            Ok(found) => solutions.extend(found),
            Err(Error::UnresolvedBase(b)) => unresolved.push(b),
            Err(e) => return Err(e),
        }
    }
    Ok(ChunkResult { lo, hi, solutions, unresolved })
}

/// Searches every base in `[b_lo, b_hi]`, resuming from and appending to the
/// checkpoint file when one is given.
pub fn search_range(t: Triple, b_lo: u64, b_hi: u64, checkpoint_path: Option<&Path>) -> Result<Checkpoint> {
    search_range_with(t, b_lo, b_hi, checkpoint_path, &SearchOptions::default())
}

pub fn search_range_with(
    t: Triple,
    b_lo: u64,
    b_hi: u64,
    checkpoint_path: Option<&Path>,
    opts: &SearchOptions,
) -> Result<Checkpoint> {
    if b_lo < 2 || b_lo > b_hi {
        return Err(Error::InvalidParameter(format!("base range [{b_lo}, {b_hi}] needs 2 <= lo <= hi")));
    }
    let mut cp = match checkpoint_path {
        Some(p) => Checkpoint::load_or_new(p, t)?,
        None => Checkpoint::new(t),
    };
    let mut appender = match checkpoint_path {
        Some(p) => Some(Appender::open(p, t)?),
        None => None,
    };

    let step = opts.chunk_size.max(1);
    let chunks: Vec<(u64, u64)> = cp
        .missing(b_lo, b_hi)
        .into_iter()
        .flat_map(|(lo, hi)| {
            let mut parts = Vec::new();
            let mut a = lo;
            loop {
                let z = a.saturating_add(step - 1).min(hi);
                parts.push((a, z));
                if z == hi {
                    break;
                }
                a = z + 1;
            }
            parts
        })
        .collect();

    let next = AtomicUsize::new(0);
    let stop = AtomicBool::new(false);
    let workers = opts.workers.max(1).min(chunks.len().max(1));
    let mut recorded = 0usize;
    let mut interrupted = false;
    let mut failure = None;

    thread::scope(|scope| {
        let (tx, rx) = mpsc::channel::<Result<ChunkResult>>();
        for _ in 0..workers {
            let tx = tx.clone();
            let (next, stop, chunks) = (&next, &stop, &chunks);
            scope.spawn(move || {
                while !stop.load(Ordering::Relaxed) {
                    let i = next.fetch_add(1, Ordering::Relaxed);
                    let Some(&(lo, hi)) = chunks.get(i) else { break };
                    if tx.send(run_chunk(t, lo, hi, &opts.budget)).is_err() {
                        break;
                    }
                }
            });
        }
        drop(tx);

        for msg in rx {
            if failure.is_some() || interrupted {
                continue;
            }
            let chunk = match msg {
                Ok(c) => c,
                Err(e) => {
                    failure = Some(e);
                    stop.store(true, Ordering::Relaxed);
                    continue;
                }
            };
            if let Some(app) = appender.as_mut() {
                let mut text = String::new();
                for s in &chunk.solutions {
                    text.push_str(&solution_line(s));
                }
                for &b in &chunk.unresolved {
                    text.push_str(&unresolved_line(b));
                }
                text.push_str(&range_line(chunk.lo, chunk.hi));
                if let Err(e) = app.write(&text) {
                    failure = Some(e);
                    stop.store(true, Ordering::Relaxed);
                    continue;
                }
            }
            cp.solutions.extend(chunk.solutions);
            cp.unresolved.extend(chunk.unresolved);
            cp.completed_ranges.push((chunk.lo, chunk.hi));
            recorded += 1;
            if opts.stop_after_chunks.is_some_and(|k| recorded >= k) {
                interrupted = true;
                stop.store(true, Ordering::Relaxed);
            }
        }
    });

    if let Some(e) = failure {
        return Err(e);
    }
    cp.normalize();
    drop(appender);
    if let (Some(p), false) = (checkpoint_path, interrupted) {
        cp.save(p)?;
    }
    Ok(cp)
}
