//! Stratified possibilistic logic at desk scale: a complete SAT procedure,
//! inconsistency-tolerant entailment over stratified clause theories,
//! rational closure via the Z-ordering, exact and greedy learning of
//! stratifications from labeled default rules, brute-force MAP inference
//! over weighted clause theories, and VC-dimension instruments.
//!
//! Start with the runnable examples (`cargo run --example penguin_defaults`)
//! or the `poslog` binary, which exposes the pipeline as subcommands.

pub mod cardinality;
pub mod cli;
pub mod data;
pub mod exact;
pub mod heuristic;
pub mod logic;
pub mod map_infer;
pub mod rational;
pub mod sat;
pub mod theory;
pub mod vc;

pub use logic::{Assignment, Clause, CnfFormula, Literal, LiteralConjunction, Var, Vocabulary};
pub use theory::{DefaultRule, EvalReport, Label, LabeledExample, PossTheory};

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
    #[error("inconsistent default set")]
    InconsistentDefaults,
    #[error("{0}")]
    Guard(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
