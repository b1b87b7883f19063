//! Seeded random instance generation for the theorem harness and the
//! randomized test suites. Formulae are closed by construction; a seed is
//! always required so every run is reproducible.

use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;

use crate::formula::{Formula, Model, Predicate, Term, Vocabulary};
use crate::worldstore::{enumerate_models, PriorSpec, WorldTable};

/// Derives an independent per-trial seed from a master seed (splitmix64).
pub fn trial_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// A random vocabulary with between one and four ground atoms, sometimes
/// propositional and sometimes with a quantifiable predicate.
pub fn random_vocab(rng: &mut impl Rng) -> Arc<Vocabulary> {
    let props = ["p", "q", "r", "s"];
    match rng.random_range(0..4u8) {
        0 | 1 => {
            let n = rng.random_range(1..=4usize);
            Vocabulary::propositional(props[..n].iter().copied()).expect("valid vocabulary")
        }
        2 => {
            // unary predicate over one or two constants, plus up to two propositions
            let constants = ["a", "b"][..rng.random_range(1..=2usize)].to_vec();
            let n_props = rng.random_range(0..=2usize);
            Vocabulary::new(
                props[..n_props].iter().map(|s| s.to_string()).collect(),
                vec![Predicate {
                    name: "e".into(),
                    arity: 1,
                }],
                constants.into_iter().map(String::from).collect(),
            )
            .expect("valid vocabulary")
        }
        _ => {
            // binary predicate over two constants: exactly four ground atoms
            Vocabulary::new(
                vec![],
                vec![Predicate {
                    name: "e".into(),
                    arity: 2,
                }],
                vec!["a".into(), "b".into()],
            )
            .expect("valid vocabulary")
        }
    }
}

fn random_atom(rng: &mut impl Rng, vocab: &Vocabulary, scope: &[String]) -> Formula {
    let n_props = vocab.propositions().len();
    let n_preds = vocab.predicates().len();
    let pick = rng.random_range(0..n_props + n_preds);
    if pick < n_props {
        Formula::prop(vocab.propositions()[pick].clone())
    } else {
        let pred = &vocab.predicates()[pick - n_props];
        let args = (0..pred.arity)
            .map(|_| {
                let n_consts = vocab.constants().len();
                let choice = rng.random_range(0..n_consts + scope.len());
                if choice < n_consts {
                    Term::Constant(vocab.constants()[choice].clone())
                } else {
                    Term::Variable(scope[choice - n_consts].clone())
                }
            })
            .collect::<Vec<_>>();
        Formula::pred(pred.name.clone(), args)
    }
}

fn random_formula_rec(
    rng: &mut impl Rng,
    vocab: &Vocabulary,
    depth: usize,
    scope: &mut Vec<String>,
) -> Formula {
    if depth == 0 {
        return random_atom(rng, vocab, scope);
    }
    let quantifiable = !vocab.constants().is_empty() && !vocab.predicates().is_empty();
    let n_choices = if quantifiable { 8 } else { 6 };
    match rng.random_range(0..n_choices) {
        0 => random_atom(rng, vocab, scope),
        1 => Formula::not(random_formula_rec(rng, vocab, depth - 1, scope)),
        2 => Formula::and(
            random_formula_rec(rng, vocab, depth - 1, scope),
            random_formula_rec(rng, vocab, depth - 1, scope),
        ),
        3 => Formula::or(
            random_formula_rec(rng, vocab, depth - 1, scope),
            random_formula_rec(rng, vocab, depth - 1, scope),
        ),
        4 => Formula::implies(
            random_formula_rec(rng, vocab, depth - 1, scope),
            random_formula_rec(rng, vocab, depth - 1, scope),
        ),
        5 => Formula::iff(
            random_formula_rec(rng, vocab, depth - 1, scope),
            random_formula_rec(rng, vocab, depth - 1, scope),
        ),
        q => {
            let var = format!("x{}", scope.len());
            scope.push(var.clone());
            let body = random_formula_rec(rng, vocab, depth - 1, scope);
            scope.pop();
            if q == 6 {
                Formula::forall(var, body)
            } else {
                Formula::exists(var, body)
            }
        }
    }
}

/// A random closed formula of at most the given connective depth.
pub fn random_formula(rng: &mut impl Rng, vocab: &Vocabulary, max_depth: usize) -> Formula {
    let depth = rng.random_range(0..=max_depth);
    let mut scope = Vec::new();
    random_formula_rec(rng, vocab, depth, &mut scope)
}

/// A random evidence multiset of one to `max_len` formulae.
pub fn random_delta(
    rng: &mut impl Rng,
    vocab: &Vocabulary,
    max_len: usize,
    max_depth: usize,
) -> Vec<Formula> {
    let len = rng.random_range(1..=max_len);
    (0..len).map(|_| random_formula(rng, vocab, max_depth)).collect()
}

/// A uniformly random model of the vocabulary.
pub fn random_model(rng: &mut impl Rng, vocab: &Arc<Vocabulary>) -> Model {
    let bits: Vec<bool> = (0..vocab.num_atoms()).map(|_| rng.random()).collect();
    Model::new(vocab.clone(), bits).expect("bit count matches")
}

/// A random rational strictly between 0 and 1.
pub fn random_mu(rng: &mut impl Rng) -> BigRational {
    let denom = rng.random_range(2..=20i64);
    let numer = rng.random_range(1..denom);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A random MLE table; some models may carry no data at all, so the support
/// can be partial.
pub fn random_mle_table(rng: &mut impl Rng, vocab: &Arc<Vocabulary>) -> WorldTable {
    let models = enumerate_models(vocab).expect("generator stays within the bound");
    let mut counts: Vec<(Model, u64)> = models
        .into_iter()
        .map(|m| (m, rng.random_range(0..=4u64)))
        .collect();
    if counts.iter().all(|(_, c)| *c == 0) {
        let idx = rng.random_range(0..counts.len());
        counts[idx].1 = 1;
    }
    WorldTable::from_counts(vocab.clone(), counts).expect("valid counts")
}

/// A random table whose prior is strictly positive on every model of the
/// vocabulary, either as all-positive data counts or as explicit weights.
pub fn random_positive_table(rng: &mut impl Rng, vocab: &Arc<Vocabulary>) -> WorldTable {
    let models = enumerate_models(vocab).expect("generator stays within the bound");
    if rng.random() {
        let counts: Vec<(Model, u64)> = models
            .into_iter()
            .map(|m| (m, rng.random_range(1..=5u64)))
            .collect();
        WorldTable::from_counts(vocab.clone(), counts).expect("valid counts")
    } else {
        let raw: Vec<i64> = (0..models.len())
            .map(|_| rng.random_range(1..=9i64))
            .collect();
        let sum: i64 = raw.iter().sum();
        let pairs = models
            .into_iter()
            .zip(raw)
            .map(|(m, w)| (m, BigRational::new(BigInt::from(w), BigInt::from(sum))))
            .collect();
        WorldTable::build_prior(PriorSpec::Explicit(pairs), vocab.clone(), None)
            .expect("weights sum to one")
    }
}

/// One random harness instance: a vocabulary, an all-positive table, a query
/// formula, an evidence multiset, and a spare formula for building
/// contradictions.
#[derive(Debug, Clone)]
pub struct Trial {
    pub vocab: Arc<Vocabulary>,
    pub table: WorldTable,
    pub alpha: Formula,
    pub delta: Vec<Formula>,
    pub beta: Formula,
}

pub fn random_trial(rng: &mut impl Rng) -> Trial {
    let vocab = random_vocab(rng);
    let table = random_positive_table(rng, &vocab);
    let alpha = random_formula(rng, &vocab, 4);
    let delta = random_delta(rng, &vocab, 4, 3);
    let beta = random_formula(rng, &vocab, 2);
    Trial {
        vocab,
        table,
        alpha,
        delta,
        beta,
    }
}
