//! Formula parsing, grounding, and classical evaluation.
//!
//! All values are immutable after construction and all operations are pure,
//! so everything here can be shared freely across threads.

mod ast;
mod eval;
mod parser;
mod vocab;

pub use ast::{Formula, Term};
pub use eval::{eval, ground, substitute, validate, Grounder};
pub use parser::parse;
pub use vocab::{GroundAtom, Model, Predicate, VocabError, Vocabulary, MAX_GROUND_ATOMS};

use thiserror::Error;

/// Errors raised while parsing, checking, grounding, or evaluating formulae.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormulaError {
    #[error("syntax error at byte {position}: expected {expected}, found {found}")]
    Syntax {
        position: usize,
        expected: String,
        found: String,
    },
    #[error("variable `{name}` is not bound by any enclosing quantifier")]
    UnboundVariable { name: String },
    #[error("`{name}` is not declared in the vocabulary")]
    UnknownSymbol { name: String },
    #[error("`{name}` expects {expected} argument(s), found {found}")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },
    #[error("the vocabulary has no constants for a quantifier to range over")]
    NoConstants,
    #[error("quantified variable `{name}` shadows a declared symbol")]
    ShadowsSymbol { name: String },
    #[error("quantified variable `{name}` is already bound in this scope")]
    RebindsVariable { name: String },
}
