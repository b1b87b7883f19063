//! Randomized checking of the engine's five correctness statements against
//! the brute-force oracle. Failures are report content, never panics, so a
//! broken engine produces counterexamples rather than crashes.

use std::collections::BTreeMap;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::gen::{random_trial, trial_seed, Trial};
use super::{consistent, entails, max_consistent_subsets, OracleError};
use crate::formula::Formula;
use crate::inference::{conditional, marginal, InferenceError, ProbResult, Semantics};
use crate::worldstore::WorldTable;

/// The conditional-probability engine under test. The default implementation
/// is the real engine; tests substitute mutants to prove the harness can
/// catch them.
pub trait TheoremEngine {
    fn conditional(
        &self,
        alpha: &Formula,
        delta: &[Formula],
        table: &WorldTable,
        semantics: &Semantics,
    ) -> Result<ProbResult, InferenceError>;
}

/// The production engine.
pub struct StandardEngine;

impl TheoremEngine for StandardEngine {
    fn conditional(
        &self,
        alpha: &Formula,
        delta: &[Formula],
        table: &WorldTable,
        semantics: &Semantics,
    ) -> Result<ProbResult, InferenceError> {
        conditional(alpha, delta, table, semantics)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
}

impl TheoremId {
    pub const ALL: [TheoremId; 5] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
    ];

    pub fn key(self) -> &'static str {
        match self {
            TheoremId::T1 => "T1",
            TheoremId::T2 => "T2",
            TheoremId::T3 => "T3",
            TheoremId::T4 => "T4",
            TheoremId::T5 => "T5",
        }
    }

    fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "strict p(alpha|delta)=1 iff delta entails alpha",
            TheoremId::T2 => {
                "strict p(alpha|delta) is undefined on inconsistent delta, which still entails alpha"
            }
            TheoremId::T3 => "limit p(alpha|delta)=1 iff delta entails alpha",
            TheoremId::T4 => "limit p(alpha|{beta & !beta}) equals the marginal p(alpha)",
            TheoremId::T5 => {
                "limit p(alpha|delta)=1 iff every maximal-cardinality consistent subset entails alpha"
            }
        }
    }

    fn hypothesis(self) -> &'static str {
        match self {
            TheoremId::T1 | TheoremId::T3 => "all-positive prior and consistent delta",
            TheoremId::T2 => "all-positive prior and inconsistent delta",
            TheoremId::T4 => "none",
            TheoremId::T5 => "all-positive prior (tested only under 0 not in p(M))",
        }
    }
}

/// The outcome of one theorem on one trial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass,
    /// The trial does not satisfy the theorem's hypothesis.
    Skipped,
    Fail(String),
}

#[derive(Debug, Clone, Serialize)]
pub struct Counterexample {
    pub trial: u64,
    pub trial_seed: u64,
    pub vocabulary: serde_json::Value,
    pub prior: Vec<PriorLine>,
    pub alpha: String,
    pub delta: Vec<String>,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct PriorLine {
    pub model: String,
    pub w: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremStats {
    pub statement: String,
    pub hypothesis: String,
    pub trials: u64,
    pub passes: u64,
    pub skipped: u64,
    pub counterexamples: Vec<Counterexample>,
}

#[derive(Debug, Clone, Serialize)]
pub struct TheoremReport {
    pub seed: u64,
    pub trials: u64,
    pub theorems: BTreeMap<String, TheoremStats>,
}

impl TheoremReport {
    pub fn all_passed(&self) -> bool {
        self.theorems
            .values()
            .all(|stats| stats.counterexamples.is_empty())
    }

    pub fn counterexample_count(&self) -> usize {
        self.theorems
            .values()
            .map(|stats| stats.counterexamples.len())
            .sum()
    }

    pub fn to_json_value(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn is_one(p: &ProbResult) -> bool {
    matches!(p, ProbResult::Value(r) if num_traits::One::is_one(r))
}

/// Runs every theorem that applies to one instance. Engine and oracle errors
/// are reported as failures of the theorem being evaluated.
pub fn evaluate_trial(trial: &Trial, engine: &dyn TheoremEngine) -> Vec<(TheoremId, Outcome)> {
    let Trial {
        vocab,
        table,
        alpha,
        delta,
        beta,
    } = trial;
    let all_positive = table.num_supported() == 1usize << vocab.num_atoms();

    let mut outcomes = Vec::with_capacity(5);
    let fail_all = |detail: String, outcomes: &mut Vec<(TheoremId, Outcome)>| {
        for id in TheoremId::ALL {
            outcomes.push((id, Outcome::Fail(detail.clone())));
        }
    };

    let delta_consistent = match consistent(delta, vocab) {
        Ok(c) => c,
        Err(e) => {
            fail_all(format!("oracle error: {e}"), &mut outcomes);
            return outcomes;
        }
    };
    let delta_entails_alpha = match entails(delta, alpha, vocab) {
        Ok(e) => e,
        Err(e) => {
            fail_all(format!("oracle error: {e}"), &mut outcomes);
            return outcomes;
        }
    };

    let strict = engine.conditional(alpha, delta, table, &Semantics::Strict);
    let limit = engine.conditional(alpha, delta, table, &Semantics::Limit);

    // T1 and T3: probability one coincides with entailment on consistent evidence.
    for (id, result) in [(TheoremId::T1, &strict), (TheoremId::T3, &limit)] {
        let outcome = if !(all_positive && delta_consistent) {
            Outcome::Skipped
        } else {
            match result {
                Err(e) => Outcome::Fail(format!("engine error: {e}")),
                Ok(p) => {
                    if is_one(p) == delta_entails_alpha {
                        Outcome::Pass
                    } else {
                        Outcome::Fail(format!(
                            "entails={delta_entails_alpha} but p(alpha|delta)={p}"
                        ))
                    }
                }
            }
        };
        outcomes.push((id, outcome));
    }

    // T2: inconsistent evidence makes strict conditioning undefined while
    // classical entailment still holds.
    let t2 = if !(all_positive && !delta_consistent) {
        Outcome::Skipped
    } else {
        match &strict {
            Err(e) => Outcome::Fail(format!("engine error: {e}")),
            Ok(p) if !p.is_undefined() => {
                Outcome::Fail(format!("expected undefined, got p(alpha|delta)={p}"))
            }
            Ok(_) if !delta_entails_alpha => {
                Outcome::Fail("inconsistent delta must classically entail alpha".into())
            }
            Ok(_) => Outcome::Pass,
        }
    };
    outcomes.push((TheoremId::T2, t2));

    // T4: conditioning on a contradiction is neutral under limit semantics.
    let contradiction = Formula::and(beta.clone(), Formula::not(beta.clone()));
    let t4 = match (
        engine.conditional(alpha, &[contradiction], table, &Semantics::Limit),
        marginal(alpha, table),
    ) {
        (Err(e), _) | (_, Err(e)) => Outcome::Fail(format!("engine error: {e}")),
        (Ok(lhs), Ok(rhs)) => {
            if lhs == rhs {
                Outcome::Pass
            } else {
                Outcome::Fail(format!(
                    "p(alpha|beta & !beta)={lhs} differs from p(alpha)={rhs}"
                ))
            }
        }
    };
    outcomes.push((TheoremId::T4, t4));

    // T5: limit probability one coincides with entailment from every
    // maximal-cardinality consistent subset.
    let t5 = if !all_positive {
        Outcome::Skipped
    } else {
        let subsets = max_consistent_subsets(delta, vocab);
        match (subsets, &limit) {
            (Err(e), _) => Outcome::Fail(format!("oracle error: {e}")),
            (_, Err(e)) => Outcome::Fail(format!("engine error: {e}")),
            (Ok(subsets), Ok(p)) => {
                let mut all_entail = true;
                let mut oracle_error = None;
                for subset in &subsets {
                    match entails(subset, alpha, vocab) {
                        Ok(e) => all_entail &= e,
                        Err(e) => {
                            oracle_error = Some(format!("oracle error: {e}"));
                            break;
                        }
                    }
                }
                if let Some(detail) = oracle_error {
                    Outcome::Fail(detail)
                } else if is_one(p) == all_entail {
                    Outcome::Pass
                } else {
                    Outcome::Fail(format!(
                        "all {} maximal consistent subsets entail alpha: {all_entail}, \
                         but p(alpha|delta)={p}",
                        subsets.len()
                    ))
                }
            }
        }
    };
    outcomes.push((TheoremId::T5, t5));

    outcomes
}

fn describe(trial: &Trial, trial_index: u64, seed: u64, detail: String) -> Counterexample {
    Counterexample {
        trial: trial_index,
        trial_seed: trial_seed(seed, trial_index),
        vocabulary: serde_json::from_str(&trial.vocab.to_json_string())
            .unwrap_or(serde_json::Value::Null),
        prior: trial
            .table
            .rows()
            .map(|row| PriorLine {
                model: row.model.bit_string(),
                w: row.weight.to_string(),
            })
            .collect(),
        alpha: trial.alpha.to_string(),
        delta: trial.delta.iter().map(|f| f.to_string()).collect(),
        detail,
    }
}

/// Runs `trials` random instances against the production engine.
pub fn check_theorems(trials: u64, seed: u64) -> Result<TheoremReport, OracleError> {
    check_theorems_with(trials, seed, &StandardEngine)
}

/// Runs `trials` random instances against an arbitrary engine. Each trial
/// draws its own rng seeded from the master seed, so trials are independent
/// and individually reproducible.
pub fn check_theorems_with(
    trials: u64,
    seed: u64,
    engine: &dyn TheoremEngine,
) -> Result<TheoremReport, OracleError> {
    let mut theorems: BTreeMap<String, TheoremStats> = TheoremId::ALL
        .into_iter()
        .map(|id| {
            (
                id.key().to_string(),
                TheoremStats {
                    statement: id.statement().to_string(),
                    hypothesis: id.hypothesis().to_string(),
                    trials,
                    passes: 0,
                    skipped: 0,
                    counterexamples: Vec::new(),
                },
            )
        })
        .collect();

    for index in 0..trials {
        let mut rng = ChaCha8Rng::seed_from_u64(trial_seed(seed, index));
        let trial = random_trial(&mut rng);
        for (id, outcome) in evaluate_trial(&trial, engine) {
            let stats = theorems.get_mut(id.key()).expect("stats preallocated");
            match outcome {
                Outcome::Pass => stats.passes += 1,
                Outcome::Skipped => stats.skipped += 1,
                Outcome::Fail(detail) => {
                    // keep reports readable on badly broken engines
                    if stats.counterexamples.len() < 10 {
                        stats
                            .counterexamples
                            .push(describe(&trial, index, seed, detail));
                    }
                }
            }
        }
    }

    Ok(TheoremReport {
        seed,
        trials,
        theorems,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, Vocabulary};
    use crate::worldstore::{enumerate_models, PriorSpec};
    use num_bigint::BigInt;
    use num_rational::BigRational;

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn small_run_is_clean_and_reproducible() {
        let report = check_theorems(60, 7).unwrap();
        assert!(report.all_passed(), "{:?}", report.to_json_value());
        let again = check_theorems(60, 7).unwrap();
        assert_eq!(report.to_json_value(), again.to_json_value());
    }

    #[test]
    fn zero_prior_instance_is_skipped_not_failed() {
        // Explicit prior (3/5, 0, 1/10, 3/10) over the four rain/wet models:
        // probability-one conditioning no longer implies entailment, and the
        // harness must flag the instance as outside the hypothesis.
        let vocab = Vocabulary::propositional(["rain", "wet"]).unwrap();
        let models = enumerate_models(&vocab).unwrap();
        let table = WorldTable::build_prior(
            PriorSpec::Explicit(vec![
                (models[0].clone(), ratio(3, 5)),
                (models[1].clone(), ratio(0, 1)),
                (models[2].clone(), ratio(1, 10)),
                (models[3].clone(), ratio(3, 10)),
            ]),
            vocab.clone(),
            None,
        )
        .unwrap();
        let trial = Trial {
            vocab: vocab.clone(),
            table,
            alpha: parse("rain", &vocab).unwrap(),
            delta: vec![parse("wet", &vocab).unwrap()],
            beta: parse("rain", &vocab).unwrap(),
        };
        let outcomes = evaluate_trial(&trial, &StandardEngine);
        let t1 = outcomes
            .iter()
            .find(|(id, _)| *id == TheoremId::T1)
            .map(|(_, o)| o.clone())
            .unwrap();
        assert_eq!(t1, Outcome::Skipped);
        // T4 has no positivity hypothesis and must still pass
        let t4 = outcomes
            .iter()
            .find(|(id, _)| *id == TheoremId::T4)
            .map(|(_, o)| o.clone())
            .unwrap();
        assert_eq!(t4, Outcome::Pass);
    }

    /// A broken engine whose limit semantics forgets to restrict to the
    /// best-scoring models (it conditions on nothing at all).
    struct DroppedMaxRestriction;

    impl TheoremEngine for DroppedMaxRestriction {
        fn conditional(
            &self,
            alpha: &Formula,
            delta: &[Formula],
            table: &WorldTable,
            semantics: &Semantics,
        ) -> Result<ProbResult, InferenceError> {
            match semantics {
                Semantics::Limit => marginal(alpha, table),
                other => conditional(alpha, delta, table, other),
            }
        }
    }

    #[test]
    fn mutant_engine_is_caught_by_t5() {
        let report = check_theorems_with(200, 7, &DroppedMaxRestriction).unwrap();
        let t5 = &report.theorems["T5"];
        assert!(
            !t5.counterexamples.is_empty(),
            "mutant must produce a T5 counterexample"
        );
    }
}
