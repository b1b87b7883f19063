//! Exact probabilistic interpretation of classical logic over finite model
//! tables.
//!
//! Data rows induce a distribution over logic models; a Bernoulli likelihood
//! with parameter mu interprets formulae on models; Bayes' rule then yields
//! marginal and conditional probabilities of formulae under strict (mu = 1),
//! limit (mu -> 1), and fixed-mu semantics. All arithmetic is exact rational
//! arithmetic, so statements like "probability 1 exactly when entailed" are
//! testable as written.
//!
//! Modules:
//! - [`formula`]: vocabularies, models, parsing, grounding, evaluation.
//! - [`worldstore`]: data ingestion, model counts, and priors.
//! - [`inference`]: likelihoods, marginals, conditionals, incremental updates.
//! - [`oracle`]: brute-force reference implementations and the theorem
//!   checking harness used to validate the engine.

pub mod formula;
pub mod inference;
pub mod oracle;
pub mod worldstore;

pub use formula::{Formula, FormulaError, Model, Term, Vocabulary};
pub use inference::{InferenceError, ProbResult, Semantics};
pub use worldstore::{PriorSpec, StoreError, WorldTable};
