//! Brute-force reference implementations of the classical notions the engine
//! is checked against: model sets, entailment, consistency, maximal
//! consistent subsets, approximate models, and a full-joint conditional
//! evaluator with no algebraic shortcuts.
//!
//! Everything here favours being obviously correct over being fast; all
//! operations enumerate exhaustively at desk scale.

mod gen;
mod harness;

pub use gen::{
    random_delta, random_formula, random_model, random_mle_table, random_mu,
    random_positive_table, random_trial, random_vocab, trial_seed, Trial,
};
pub use harness::{
    check_theorems, check_theorems_with, evaluate_trial, Counterexample, Outcome, StandardEngine,
    TheoremEngine, TheoremId, TheoremReport, TheoremStats,
};

use std::collections::BTreeSet;
use std::sync::Arc;

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::{eval, validate, Formula, FormulaError, Model, Vocabulary};
use crate::inference::{InferenceError, ProbResult, UndefinedReason};
use crate::worldstore::{enumerate_models, StoreError, WorldTable};

/// Largest evidence multiset for which subset enumeration runs.
pub const DEFAULT_SUBSET_BOUND: usize = 16;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Inference(#[from] InferenceError),
    #[error("evidence multiset has {size} formulae, exceeding the subset bound of {bound}")]
    SubsetBound { size: usize, bound: usize },
    #[error("model set belongs to a different vocabulary")]
    VocabularyMismatch,
}

type Bits = Arc<[bool]>;

/// A deduplicated set of models over one vocabulary, iterated in canonical
/// bit order.
#[derive(Debug, Clone)]
pub struct ModelSet {
    vocab: Arc<Vocabulary>,
    members: BTreeSet<Bits>,
}

impl PartialEq for ModelSet {
    fn eq(&self, other: &Self) -> bool {
        self.vocab.as_ref() == other.vocab.as_ref() && self.members == other.members
    }
}

impl Eq for ModelSet {}

impl ModelSet {
    pub fn empty(vocab: Arc<Vocabulary>) -> ModelSet {
        ModelSet {
            vocab,
            members: BTreeSet::new(),
        }
    }

    pub fn from_models(
        vocab: Arc<Vocabulary>,
        models: impl IntoIterator<Item = Model>,
    ) -> Result<ModelSet, OracleError> {
        let mut members = BTreeSet::new();
        for m in models {
            if !m.same_vocab(&vocab) {
                return Err(OracleError::VocabularyMismatch);
            }
            members.insert(m.bits_arc().clone());
        }
        Ok(ModelSet { vocab, members })
    }

    /// All models of the vocabulary.
    pub fn universe(vocab: Arc<Vocabulary>) -> Result<ModelSet, OracleError> {
        let models = enumerate_models(&vocab)?;
        ModelSet::from_models(vocab, models)
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, m: &Model) -> bool {
        m.same_vocab(&self.vocab) && self.members.contains(m.bits_arc())
    }

    pub fn is_subset(&self, other: &ModelSet) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &ModelSet) -> ModelSet {
        ModelSet {
            vocab: self.vocab.clone(),
            members: self.members.intersection(&other.members).cloned().collect(),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = Model> + '_ {
        self.members
            .iter()
            .map(|bits| Model::from_bits_unchecked(self.vocab.clone(), bits.clone()))
    }
}

/// The set of models in which every member of `delta` is true; the empty
/// multiset denotes every model.
pub fn models_of(delta: &[Formula], vocab: &Arc<Vocabulary>) -> Result<ModelSet, OracleError> {
    for f in delta {
        validate(f, vocab)?;
    }
    let mut members = BTreeSet::new();
    for m in enumerate_models(vocab)? {
        let mut all = true;
        for f in delta {
            all &= eval(f, &m)?;
        }
        if all {
            members.insert(m.bits_arc().clone());
        }
    }
    Ok(ModelSet {
        vocab: vocab.clone(),
        members,
    })
}

/// Classical entailment: `alpha` is true in every model of `delta`.
pub fn entails(
    delta: &[Formula],
    alpha: &Formula,
    vocab: &Arc<Vocabulary>,
) -> Result<bool, OracleError> {
    let premises = models_of(delta, vocab)?;
    let conclusion = models_of(std::slice::from_ref(alpha), vocab)?;
    Ok(premises.is_subset(&conclusion))
}

/// True exactly when `delta` has at least one model.
pub fn consistent(delta: &[Formula], vocab: &Arc<Vocabulary>) -> Result<bool, OracleError> {
    Ok(!models_of(delta, vocab)?.is_empty())
}

fn check_subset_bound(len: usize) -> Result<(), OracleError> {
    if len > DEFAULT_SUBSET_BOUND {
        return Err(OracleError::SubsetBound {
            size: len,
            bound: DEFAULT_SUBSET_BOUND,
        });
    }
    Ok(())
}

/// Per-model satisfaction masks: bit j of the mask is set when formula j of
/// `delta` is true in the model.
fn satisfaction_masks(delta: &[Formula], models: &[Model]) -> Result<Vec<u32>, OracleError> {
    let mut masks = Vec::with_capacity(models.len());
    for m in models {
        let mut mask: u32 = 0;
        for (j, f) in delta.iter().enumerate() {
            if eval(f, m)? {
                mask |= 1 << j;
            }
        }
        masks.push(mask);
    }
    Ok(masks)
}

fn for_each_combination(n: usize, k: usize, f: &mut impl FnMut(u32)) {
    fn rec(start: usize, n: usize, left: usize, acc: u32, f: &mut impl FnMut(u32)) {
        if left == 0 {
            f(acc);
            return;
        }
        for i in start..=(n - left) {
            rec(i + 1, n, left - 1, acc | (1 << i), f);
        }
    }
    if k > n {
        return;
    }
    rec(0, n, k, 0, f);
}

/// Index subsets of maximum cardinality that some mask covers, scanning
/// cardinalities downward and stopping at the first hit.
fn max_coverable_subsets(masks: &[u32], len: usize) -> Vec<u32> {
    for size in (0..=len).rev() {
        let mut found = Vec::new();
        for_each_combination(len, size, &mut |subset| {
            if masks.iter().any(|&m| m & subset == subset) {
                found.push(subset);
            }
        });
        if !found.is_empty() {
            return found;
        }
    }
    unreachable!("the empty subset is always coverable when a model exists")
}

/// All sub-multisets of `delta` of maximum cardinality among the consistent
/// ones, deduplicated as multisets and returned with members sorted. A
/// consistent `delta` yields itself.
pub fn max_consistent_subsets(
    delta: &[Formula],
    vocab: &Arc<Vocabulary>,
) -> Result<Vec<Vec<Formula>>, OracleError> {
    check_subset_bound(delta.len())?;
    for f in delta {
        validate(f, vocab)?;
    }
    let models = enumerate_models(vocab)?;
    if models.is_empty() {
        // a vocabulary always has at least the empty model
        unreachable!("enumeration yields at least one model");
    }
    let masks = satisfaction_masks(delta, &models)?;
    let subsets = max_coverable_subsets(&masks, delta.len());
    let mut unique: BTreeSet<Vec<Formula>> = BTreeSet::new();
    for subset in subsets {
        let mut formulas: Vec<Formula> = (0..delta.len())
            .filter(|j| subset & (1 << j) != 0)
            .map(|j| delta[j].clone())
            .collect();
        formulas.sort();
        unique.insert(formulas);
    }
    Ok(unique.into_iter().collect())
}

/// The approximate models of `delta` within `support`: the support models
/// satisfying as many members of `delta` as possible. Equivalently, the
/// union of the support models of the maximal-cardinality subsets of `delta`
/// that are satisfiable within the support; both characterisations are
/// computed and cross-checked.
pub fn approximate_models(
    delta: &[Formula],
    support: &ModelSet,
) -> Result<ModelSet, OracleError> {
    check_subset_bound(delta.len())?;
    let vocab = support.vocab();
    for f in delta {
        validate(f, vocab)?;
    }
    if support.is_empty() {
        return Ok(ModelSet::empty(vocab.clone()));
    }
    let members: Vec<Model> = support.iter().collect();
    let masks = satisfaction_masks(delta, &members)?;

    // argmax of the satisfied count over the support
    let best = masks.iter().map(|m| m.count_ones()).max().unwrap();
    let argmax: BTreeSet<Bits> = members
        .iter()
        .zip(&masks)
        .filter(|(_, mask)| mask.count_ones() == best)
        .map(|(m, _)| m.bits_arc().clone())
        .collect();

    // union over maximal support-satisfiable subsets of their support models
    let subsets = max_coverable_subsets(&masks, delta.len());
    let mut union: BTreeSet<Bits> = BTreeSet::new();
    for subset in &subsets {
        for (m, mask) in members.iter().zip(&masks) {
            if mask & subset == *subset {
                union.insert(m.bits_arc().clone());
            }
        }
    }

    assert_eq!(
        union, argmax,
        "the two characterisations of approximate models must agree"
    );
    Ok(ModelSet {
        vocab: vocab.clone(),
        members: argmax,
    })
}

/// Evaluates the conditional by explicit summation over the full joint
/// distribution: models times data for MLE tables, models times prior
/// weights otherwise. Likelihoods are literal products over the evidence
/// multiset. Undefined on a zero denominator.
pub fn brute_force_conditional(
    alpha: &Formula,
    delta: &[Formula],
    table: &WorldTable,
    mu: &BigRational,
) -> Result<ProbResult, OracleError> {
    if *mu <= BigRational::zero() || *mu > BigRational::one() {
        return Err(InferenceError::MuOutOfRange(mu.to_string()).into());
    }
    let vocab = table.vocab();
    validate(alpha, vocab)?;
    for f in delta {
        validate(f, vocab)?;
    }
    let complement = BigRational::one() - mu;
    let bernoulli = |truth: bool| -> BigRational {
        if truth {
            mu.clone()
        } else {
            complement.clone()
        }
    };

    let mut numerator = BigRational::zero();
    let mut denominator = BigRational::zero();
    let data = table.data_multiset();
    for m in enumerate_models(vocab)? {
        let mass = if table.is_mle() {
            let per_datum = BigRational::new(1.into(), (table.total() as i64).into());
            let mut mass = BigRational::zero();
            for datum in &data {
                if *datum == m {
                    mass += &per_datum;
                }
            }
            mass
        } else {
            table.prior_of(&m)?
        };
        let mut evidence = BigRational::one();
        for f in delta {
            evidence *= bernoulli(eval(f, &m)?);
        }
        let alpha_prob = bernoulli(eval(alpha, &m)?);
        numerator += &mass * &alpha_prob * &evidence;
        denominator += &mass * &evidence;
    }
    if denominator.is_zero() {
        Ok(ProbResult::Undefined(
            UndefinedReason::EmptyConditioningSupport,
        ))
    } else {
        Ok(ProbResult::Value(numerator / denominator))
    }
}
