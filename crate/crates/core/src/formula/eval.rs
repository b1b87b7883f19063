//! Grounding and classical two-valued evaluation.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::ast::{Formula, Term};
use super::vocab::{GroundAtom, Model, Vocabulary};
use super::FormulaError;

/// Checks that `f` is closed and fits `vocab`: every atom is declared with
/// the right arity, every term is a declared constant or a bound variable,
/// and quantifiers only appear when the vocabulary has constants to range
/// over.
pub fn validate(f: &Formula, vocab: &Vocabulary) -> Result<(), FormulaError> {
    let mut scope = Vec::new();
    validate_rec(f, vocab, &mut scope)
}

fn validate_rec(
    f: &Formula,
    vocab: &Vocabulary,
    scope: &mut Vec<String>,
) -> Result<(), FormulaError> {
    match f {
        Formula::Atom { name, args } => {
            if args.is_empty() {
                if vocab.is_proposition(name) {
                    Ok(())
                } else if let Some(pred) = vocab.predicate(name) {
                    Err(FormulaError::ArityMismatch {
                        name: name.clone(),
                        expected: pred.arity,
                        found: 0,
                    })
                } else {
                    Err(FormulaError::UnknownSymbol { name: name.clone() })
                }
            } else {
                let pred = vocab
                    .predicate(name)
                    .ok_or_else(|| FormulaError::UnknownSymbol { name: name.clone() })?;
                if pred.arity != args.len() {
                    return Err(FormulaError::ArityMismatch {
                        name: name.clone(),
                        expected: pred.arity,
                        found: args.len(),
                    });
                }
                for arg in args {
                    match arg {
                        Term::Constant(c) => {
                            if !vocab.is_constant(c) {
                                return Err(FormulaError::UnknownSymbol { name: c.clone() });
                            }
                        }
                        Term::Variable(v) => {
                            if !scope.contains(v) {
                                return Err(FormulaError::UnboundVariable { name: v.clone() });
                            }
                        }
                    }
                }
                Ok(())
            }
        }
        Formula::Not(g) => validate_rec(g, vocab, scope),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) | Formula::Iff(a, b) => {
            validate_rec(a, vocab, scope)?;
            validate_rec(b, vocab, scope)
        }
        Formula::Forall(var, body) | Formula::Exists(var, body) => {
            if vocab.constants().is_empty() {
                return Err(FormulaError::NoConstants);
            }
            scope.push(var.clone());
            let result = validate_rec(body, vocab, scope);
            scope.pop();
            result
        }
    }
}

/// Replaces free occurrences of `var` by the constant `value`, stopping at
/// quantifiers that rebind the same name.
pub fn substitute(f: &Formula, var: &str, value: &str) -> Formula {
    match f {
        Formula::Atom { name, args } => Formula::Atom {
            name: name.clone(),
            args: args
                .iter()
                .map(|t| match t {
                    Term::Variable(v) if v == var => Term::Constant(value.to_string()),
                    other => other.clone(),
                })
                .collect(),
        },
        Formula::Not(g) => Formula::not(substitute(g, var, value)),
        Formula::And(a, b) => Formula::and(substitute(a, var, value), substitute(b, var, value)),
        Formula::Or(a, b) => Formula::or(substitute(a, var, value), substitute(b, var, value)),
        Formula::Implies(a, b) => {
            Formula::implies(substitute(a, var, value), substitute(b, var, value))
        }
        Formula::Iff(a, b) => Formula::iff(substitute(a, var, value), substitute(b, var, value)),
        Formula::Forall(v, body) if v == var => Formula::Forall(v.clone(), body.clone()),
        Formula::Exists(v, body) if v == var => Formula::Exists(v.clone(), body.clone()),
        Formula::Forall(v, body) => Formula::forall(v.clone(), substitute(body, var, value)),
        Formula::Exists(v, body) => Formula::exists(v.clone(), substitute(body, var, value)),
    }
}

/// Compiles quantifiers away over the vocabulary's finite constant list:
/// `forall` becomes the conjunction of its instances in constant declaration
/// order, `exists` the disjunction. The result evaluates identically to `f`
/// on every model of the vocabulary.
pub fn ground(f: &Formula, vocab: &Vocabulary) -> Result<Formula, FormulaError> {
    validate(f, vocab)?;
    Ok(ground_rec(f, vocab))
}

fn ground_rec(f: &Formula, vocab: &Vocabulary) -> Formula {
    match f {
        Formula::Atom { .. } => f.clone(),
        Formula::Not(g) => Formula::not(ground_rec(g, vocab)),
        Formula::And(a, b) => Formula::and(ground_rec(a, vocab), ground_rec(b, vocab)),
        Formula::Or(a, b) => Formula::or(ground_rec(a, vocab), ground_rec(b, vocab)),
        Formula::Implies(a, b) => Formula::implies(ground_rec(a, vocab), ground_rec(b, vocab)),
        Formula::Iff(a, b) => Formula::iff(ground_rec(a, vocab), ground_rec(b, vocab)),
        Formula::Forall(var, body) => Formula::conjoin(
            vocab
                .constants()
                .iter()
                .map(|c| ground_rec(&substitute(body, var, c), vocab)),
        ),
        Formula::Exists(var, body) => Formula::disjoin(
            vocab
                .constants()
                .iter()
                .map(|c| ground_rec(&substitute(body, var, c), vocab)),
        ),
    }
}

/// Classical evaluation: returns `true` exactly when `m` satisfies `f`.
///
/// Quantifiers are interpreted over the model's constant list. Both operands
/// of a connective are always evaluated so vocabulary errors surface
/// regardless of truth values.
pub fn eval(f: &Formula, m: &Model) -> Result<bool, FormulaError> {
    let mut scope: Vec<(String, String)> = Vec::new();
    eval_rec(f, m, &mut scope)
}

fn eval_rec(
    f: &Formula,
    m: &Model,
    scope: &mut Vec<(String, String)>,
) -> Result<bool, FormulaError> {
    match f {
        Formula::Atom { name, args } => {
            let atom = if args.is_empty() {
                GroundAtom::Proposition(name.clone())
            } else {
                let mut resolved = Vec::with_capacity(args.len());
                for arg in args {
                    match arg {
                        Term::Constant(c) => resolved.push(c.clone()),
                        Term::Variable(v) => {
                            let bound = scope
                                .iter()
                                .rev()
                                .find(|(name, _)| name == v)
                                .map(|(_, value)| value.clone())
                                .ok_or_else(|| FormulaError::UnboundVariable {
                                    name: v.clone(),
                                })?;
                            resolved.push(bound);
                        }
                    }
                }
                GroundAtom::Predicate {
                    name: name.clone(),
                    args: resolved,
                }
            };
            let id = m
                .vocab()
                .atom_id(&atom)
                .ok_or_else(|| FormulaError::UnknownSymbol {
                    name: atom.to_string(),
                })?;
            Ok(m.get(id))
        }
        Formula::Not(g) => Ok(!eval_rec(g, m, scope)?),
        Formula::And(a, b) => {
            let left = eval_rec(a, m, scope)?;
            let right = eval_rec(b, m, scope)?;
            Ok(left && right)
        }
        Formula::Or(a, b) => {
            let left = eval_rec(a, m, scope)?;
            let right = eval_rec(b, m, scope)?;
            Ok(left || right)
        }
        Formula::Implies(a, b) => {
            let left = eval_rec(a, m, scope)?;
            let right = eval_rec(b, m, scope)?;
            Ok(!left || right)
        }
        Formula::Iff(a, b) => {
            let left = eval_rec(a, m, scope)?;
            let right = eval_rec(b, m, scope)?;
            Ok(left == right)
        }
        Formula::Forall(var, body) => {
            let constants = m.vocab().constants();
            if constants.is_empty() {
                return Err(FormulaError::NoConstants);
            }
            let mut all = true;
            for c in constants {
                scope.push((var.clone(), c.clone()));
                let v = eval_rec(body, m, scope);
                scope.pop();
                all &= v?;
            }
            Ok(all)
        }
        Formula::Exists(var, body) => {
            let constants = m.vocab().constants();
            if constants.is_empty() {
                return Err(FormulaError::NoConstants);
            }
            let mut any = false;
            for c in constants {
                scope.push((var.clone(), c.clone()));
                let v = eval_rec(body, m, scope);
                scope.pop();
                any |= v?;
            }
            Ok(any)
        }
    }
}

/// Grounds formulae against one vocabulary, memoizing results per formula.
/// Safe to share across threads.
pub struct Grounder {
    vocab: Arc<Vocabulary>,
    cache: Mutex<HashMap<Formula, Arc<Formula>>>,
}

impl Grounder {
    pub fn new(vocab: Arc<Vocabulary>) -> Grounder {
        Grounder {
            vocab,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn ground(&self, f: &Formula) -> Result<Arc<Formula>, FormulaError> {
        if let Some(hit) = self.cache.lock().expect("grounder lock").get(f) {
            return Ok(hit.clone());
        }
        let grounded = Arc::new(ground(f, &self.vocab)?);
        self.cache
            .lock()
            .expect("grounder lock")
            .insert(f.clone(), grounded.clone());
        Ok(grounded)
    }
}
