//! The inference engine: likelihoods, marginals, conditionals, and
//! constant-time marginal updates.
//!
//! Everything is a pure function of immutable inputs and returns exact
//! rationals, so queries can run in parallel over a shared table snapshot.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::formula::{eval, ground, validate, Formula, FormulaError, Model};
use crate::worldstore::{StoreError, WorldTable};

#[derive(Debug, Error)]
pub enum InferenceError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("mu must lie in [0,1], got {0}")]
    MuOutOfRange(String),
    #[error("mu must lie strictly between 0 and 1, got {0}")]
    MuNotInterior(String),
    #[error("operation requires an MLE prior")]
    RequiresMle,
}

/// A Bernoulli parameter strictly inside (0,1), as required by the fixed-mu
/// regime.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mu(BigRational);

impl Mu {
    pub fn new(value: BigRational) -> Result<Mu, InferenceError> {
        if value <= BigRational::zero() || value >= BigRational::one() {
            return Err(InferenceError::MuNotInterior(value.to_string()));
        }
        Ok(Mu(value))
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

/// The interpretation regime for conditional queries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Semantics {
    /// mu = 1 exactly: condition on the models of the evidence; undefined
    /// when no supported model satisfies all of it.
    Strict,
    /// mu -> 1 in closed form: condition on the supported models satisfying
    /// as much of the evidence as possible. Never undefined.
    Limit,
    /// A fixed mu in (0,1): full Bernoulli-weighted Bayes.
    Fixed(Mu),
}

impl Semantics {
    pub fn fixed(value: BigRational) -> Result<Semantics, InferenceError> {
        Ok(Semantics::Fixed(Mu::new(value)?))
    }
}

impl fmt::Display for Semantics {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Semantics::Strict => write!(f, "strict"),
            Semantics::Limit => write!(f, "limit"),
            Semantics::Fixed(mu) => write!(f, "mu={}", mu.value()),
        }
    }
}

/// Why a probability came out undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UndefinedReason {
    /// No supported model satisfies every conditioning formula, so the
    /// denominator is zero.
    EmptyConditioningSupport,
}

impl fmt::Display for UndefinedReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UndefinedReason::EmptyConditioningSupport => {
                write!(f, "empty conditioning support")
            }
        }
    }
}

/// An exact probability in [0,1], or the distinguished undefined value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ProbResult {
    Value(BigRational),
    Undefined(UndefinedReason),
}

impl ProbResult {
    pub fn value(r: BigRational) -> ProbResult {
        ProbResult::Value(r)
    }

    pub fn one() -> ProbResult {
        ProbResult::Value(BigRational::one())
    }

    pub fn is_undefined(&self) -> bool {
        matches!(self, ProbResult::Undefined(_))
    }

    pub fn as_value(&self) -> Option<&BigRational> {
        match self {
            ProbResult::Value(r) => Some(r),
            ProbResult::Undefined(_) => None,
        }
    }

    /// Unwraps the rational; panics if undefined.
    pub fn expect_value(&self, context: &str) -> &BigRational {
        self.as_value()
            .unwrap_or_else(|| panic!("undefined probability: {context}"))
    }
}

impl fmt::Display for ProbResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ProbResult::Value(r) => write!(f, "{r}"),
            ProbResult::Undefined(_) => write!(f, "undefined"),
        }
    }
}

fn ratio_pow(base: &BigRational, exp: u64) -> BigRational {
    num_traits::pow::pow(base.clone(), exp as usize)
}

/// The likelihood of observing every member of the multiset `delta` as true
/// in model `m`: mu^s (1-mu)^(J-s) where s counts the members true in `m`
/// (with multiplicity) and J is the multiset size. `mu` may be 0 or 1 here;
/// only the fixed-mu regime restricts it to the open interval.
pub fn likelihood(
    delta: &[Formula],
    m: &Model,
    mu: &BigRational,
) -> Result<BigRational, InferenceError> {
    if *mu < BigRational::zero() || *mu > BigRational::one() {
        return Err(InferenceError::MuOutOfRange(mu.to_string()));
    }
    let mut sat: u64 = 0;
    for f in delta {
        validate(f, m.vocab())?;
        if eval(f, m)? {
            sat += 1;
        }
    }
    let miss = delta.len() as u64 - sat;
    let complement = BigRational::one() - mu;
    Ok(ratio_pow(mu, sat) * ratio_pow(&complement, miss))
}

/// The prior probability of `alpha`: the summed weight of the supported
/// models satisfying it. Always defined because priors are normalized.
pub fn marginal(alpha: &Formula, table: &WorldTable) -> Result<ProbResult, InferenceError> {
    Ok(ProbResult::Value(marginal_ratio(alpha, table)?))
}

fn marginal_ratio(alpha: &Formula, table: &WorldTable) -> Result<BigRational, InferenceError> {
    let grounded = ground(alpha, table.vocab())?;
    let mut sum = BigRational::zero();
    for (model, weight) in table.support() {
        if eval(&grounded, &model)? {
            sum += weight;
        }
    }
    Ok(sum)
}

/// The conditional probability of `alpha` given the evidence multiset
/// `delta`, under the chosen semantics. An empty `delta` reduces to the
/// marginal in every regime.
pub fn conditional(
    alpha: &Formula,
    delta: &[Formula],
    table: &WorldTable,
    semantics: &Semantics,
) -> Result<ProbResult, InferenceError> {
    let vocab = table.vocab();
    let galpha = ground(alpha, vocab)?;
    let gdelta: Vec<Formula> = delta
        .iter()
        .map(|f| ground(f, vocab))
        .collect::<Result<_, _>>()?;
    let support = table.support();

    match semantics {
        Semantics::Strict => {
            let mut numerator = BigRational::zero();
            let mut denominator = BigRational::zero();
            for (model, weight) in &support {
                let mut all = true;
                for f in &gdelta {
                    all &= eval(f, model)?;
                }
                if all {
                    if eval(&galpha, model)? {
                        numerator += weight;
                    }
                    denominator += weight;
                }
            }
            if denominator.is_zero() {
                Ok(ProbResult::Undefined(
                    UndefinedReason::EmptyConditioningSupport,
                ))
            } else {
                Ok(ProbResult::Value(numerator / denominator))
            }
        }
        Semantics::Limit => {
            // Closed form of the mu -> 1 limit: only the supported models
            // satisfying the maximal number of evidence formulae survive.
            let mut sat_counts = Vec::with_capacity(support.len());
            let mut best: u64 = 0;
            for (model, _) in &support {
                let mut sat: u64 = 0;
                for f in &gdelta {
                    if eval(f, model)? {
                        sat += 1;
                    }
                }
                best = best.max(sat);
                sat_counts.push(sat);
            }
            let mut numerator = BigRational::zero();
            let mut denominator = BigRational::zero();
            for ((model, weight), sat) in support.iter().zip(&sat_counts) {
                if *sat == best {
                    if eval(&galpha, model)? {
                        numerator += weight;
                    }
                    denominator += weight;
                }
            }
            debug_assert!(!denominator.is_zero(), "support is never empty");
            Ok(ProbResult::Value(numerator / denominator))
        }
        Semantics::Fixed(mu) => {
            let mu = mu.value();
            let complement = BigRational::one() - mu;
            let mut numerator = BigRational::zero();
            let mut denominator = BigRational::zero();
            for (model, weight) in &support {
                let mut sat: u64 = 0;
                for f in &gdelta {
                    if eval(f, model)? {
                        sat += 1;
                    }
                }
                let miss = gdelta.len() as u64 - sat;
                let evidence = ratio_pow(mu, sat) * ratio_pow(&complement, miss);
                let alpha_prob = if eval(&galpha, model)? {
                    mu.clone()
                } else {
                    complement.clone()
                };
                numerator += weight * &alpha_prob * &evidence;
                denominator += weight * &evidence;
            }
            debug_assert!(!denominator.is_zero(), "0 < mu < 1 keeps all evidence positive");
            Ok(ProbResult::Value(numerator / denominator))
        }
    }
}

/// Folds one new datum into a known MLE marginal:
/// p' = (K * p + [alpha true in the datum's model]) / (K + 1).
/// Runs in time proportional to the formula size, independent of the table.
pub fn update_marginal(
    p_k: &BigRational,
    k: u64,
    alpha: &Formula,
    new_datum: &Model,
) -> Result<BigRational, InferenceError> {
    validate(alpha, new_datum.vocab())?;
    let indicator = if eval(alpha, new_datum)? {
        BigRational::one()
    } else {
        BigRational::zero()
    };
    Ok((BigRational::from_integer(BigInt::from(k)) * p_k + indicator)
        / BigRational::from_integer(BigInt::from(k + 1)))
}

/// The marginal computed as a sum over data rather than models: each datum
/// contributes indicator/K. Requires an MLE table and always equals
/// [`marginal`].
pub fn marginal_by_data(
    alpha: &Formula,
    table: &WorldTable,
) -> Result<BigRational, InferenceError> {
    if !table.is_mle() {
        return Err(InferenceError::RequiresMle);
    }
    let grounded = ground(alpha, table.vocab())?;
    let k = BigInt::from(table.total());
    let mut sum = BigRational::zero();
    for row in table.rows() {
        if eval(&grounded, &row.model)? {
            sum += BigRational::new(BigInt::from(row.count), k.clone());
        }
    }
    Ok(sum)
}
