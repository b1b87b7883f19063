//! Formula ASTs for closed propositional / function-free first-order sentences.

use std::fmt;

/// An argument of a predicate atom: a constant or a quantifier-bound variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Constant(String),
    Variable(String),
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(name) | Term::Variable(name) => write!(f, "{name}"),
        }
    }
}

/// A formula AST. Atoms with no arguments are propositions.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    Atom { name: String, args: Vec<Term> },
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn prop(name: impl Into<String>) -> Formula {
        Formula::Atom {
            name: name.into(),
            args: Vec::new(),
        }
    }

    pub fn pred(name: impl Into<String>, args: impl IntoIterator<Item = Term>) -> Formula {
        Formula::Atom {
            name: name.into(),
            args: args.into_iter().collect(),
        }
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(f: Formula, g: Formula) -> Formula {
        Formula::And(Box::new(f), Box::new(g))
    }

    pub fn or(f: Formula, g: Formula) -> Formula {
        Formula::Or(Box::new(f), Box::new(g))
    }

    pub fn implies(f: Formula, g: Formula) -> Formula {
        Formula::Implies(Box::new(f), Box::new(g))
    }

    pub fn iff(f: Formula, g: Formula) -> Formula {
        Formula::Iff(Box::new(f), Box::new(g))
    }

    pub fn forall(var: impl Into<String>, f: Formula) -> Formula {
        Formula::Forall(var.into(), Box::new(f))
    }

    pub fn exists(var: impl Into<String>, f: Formula) -> Formula {
        Formula::Exists(var.into(), Box::new(f))
    }

    pub fn has_quantifier(&self) -> bool {
        match self {
            Formula::Atom { .. } => false,
            Formula::Not(f) => f.has_quantifier(),
            Formula::And(f, g)
            | Formula::Or(f, g)
            | Formula::Implies(f, g)
            | Formula::Iff(f, g) => f.has_quantifier() || g.has_quantifier(),
            Formula::Forall(_, _) | Formula::Exists(_, _) => true,
        }
    }

    /// Left-folds a conjunction; panics on an empty list.
    pub fn conjoin(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .expect("conjoin needs at least one formula")
    }

    /// Left-folds a disjunction; panics on an empty list.
    pub fn disjoin(items: impl IntoIterator<Item = Formula>) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .expect("disjoin needs at least one formula")
    }
}

// Binding strength used by the printer. Quantifiers claim the weakest level
// because their body extends maximally to the right.
const PREC_QUANT: u8 = 0;
const PREC_IFF: u8 = 1;
const PREC_IMPLIES: u8 = 2;
const PREC_OR: u8 = 3;
const PREC_AND: u8 = 4;
const PREC_NOT: u8 = 5;
const PREC_ATOM: u8 = 6;

fn precedence(f: &Formula) -> u8 {
    match f {
        Formula::Atom { .. } => PREC_ATOM,
        Formula::Not(_) => PREC_NOT,
        Formula::And(_, _) => PREC_AND,
        Formula::Or(_, _) => PREC_OR,
        Formula::Implies(_, _) => PREC_IMPLIES,
        Formula::Iff(_, _) => PREC_IFF,
        Formula::Forall(_, _) | Formula::Exists(_, _) => PREC_QUANT,
    }
}

fn fmt_prec(f: &Formula, min: u8, out: &mut fmt::Formatter<'_>) -> fmt::Result {
    let wrap = precedence(f) < min;
    if wrap {
        write!(out, "(")?;
    }
    match f {
        Formula::Atom { name, args } => {
            if args.is_empty() {
                write!(out, "{name}")?;
            } else {
                let rendered: Vec<String> = args.iter().map(|t| t.to_string()).collect();
                write!(out, "{name}({})", rendered.join(","))?;
            }
        }
        Formula::Not(g) => {
            write!(out, "!")?;
            fmt_prec(g, PREC_NOT, out)?;
        }
        Formula::And(a, b) => {
            fmt_prec(a, PREC_AND, out)?;
            write!(out, " & ")?;
            fmt_prec(b, PREC_AND + 1, out)?;
        }
        Formula::Or(a, b) => {
            fmt_prec(a, PREC_OR, out)?;
            write!(out, " | ")?;
            fmt_prec(b, PREC_OR + 1, out)?;
        }
        Formula::Implies(a, b) => {
            fmt_prec(a, PREC_IMPLIES + 1, out)?;
            write!(out, " -> ")?;
            fmt_prec(b, PREC_IMPLIES, out)?;
        }
        Formula::Iff(a, b) => {
            fmt_prec(a, PREC_IFF, out)?;
            write!(out, " <-> ")?;
            fmt_prec(b, PREC_IFF + 1, out)?;
        }
        Formula::Forall(var, body) => {
            write!(out, "forall {var}. ")?;
            fmt_prec(body, PREC_QUANT, out)?;
        }
        Formula::Exists(var, body) => {
            write!(out, "exists {var}. ")?;
            fmt_prec(body, PREC_QUANT, out)?;
        }
    }
    if wrap {
        write!(out, ")")?;
    }
    Ok(())
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_prec(self, PREC_QUANT, f)
    }
}
