//! Perfect powers whose digits repeat a block: solutions of
//! `(y^q)_b = w` repeated `n` times, in canonical, bijective and Zeckendorf
//! representations.

pub mod arith;
pub mod error;
pub mod factor;
pub mod families;
pub mod repr;
pub mod search;
pub mod triples;
pub mod verify;

pub use arith::{QuadInt, Quadratic, Rational};
pub use error::{Error, Result};
pub use factor::{FactorBudget, Factorization};
pub use repr::{Radix, System, Word};
pub use search::{Checkpoint, SearchOptions, SolutionRecord};
pub use triples::Triple;
pub use verify::{verify_corpus, verify_solution, TableCorpus};
