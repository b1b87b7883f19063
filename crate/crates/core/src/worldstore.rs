//! Data storage: the observed multiset of rows, model counts, and priors.
//!
//! A [`WorldTable`] is an immutable snapshot. [`WorldTable::add_datum`]
//! returns a new snapshot, so readers can keep using the old one while a
//! single writer advances the current table.

use std::collections::BTreeMap;
use std::io::Read;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::formula::{FormulaError, Model, VocabError, Vocabulary};

/// Largest number of ground atoms for which full model enumeration runs
/// without an explicit override.
pub const DEFAULT_ENUMERATION_BOUND: usize = 20;

type Bits = Arc<[bool]>;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error(transparent)]
    Formula(#[from] FormulaError),
    #[error(transparent)]
    Vocab(#[from] VocabError),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("csv header column `{0}` is not a ground atom of the vocabulary")]
    UnknownColumn(String),
    #[error("csv header is missing ground atom `{0}`")]
    MissingColumn(String),
    #[error("csv header names column `{0}` more than once")]
    DuplicateColumn(String),
    #[error("data row {row}: cell `{value}` in column `{column}` is not 0 or 1")]
    NonBinaryCell {
        row: usize,
        column: String,
        value: String,
    },
    #[error("no data rows: at least one datum is required")]
    EmptyData,
    #[error("{atoms} ground atoms exceed the model enumeration bound of {bound}")]
    EnumerationBound { atoms: usize, bound: usize },
    #[error("prior weights sum to {sum}, expected exactly 1")]
    WeightsNotNormalized { sum: String },
    #[error("negative prior weight {weight} for model {model}")]
    NegativeWeight { model: String, weight: String },
    #[error("model {model} listed more than once")]
    DuplicateModel { model: String },
    #[error("model does not belong to this table's vocabulary")]
    VocabularyMismatch,
    #[error("operation requires an MLE prior, found {0}")]
    NotMle(&'static str),
    #[error("an `mle` prior needs data to estimate from")]
    MleRequiresData,
    #[error("cannot add data to a table whose prior was set by hand")]
    PriorFrozen,
    #[error("bad rational `{text}`: {reason}")]
    BadRational { text: String, reason: String },
    #[error("prior json: {0}")]
    PriorJson(String),
}

/// How a table's prior over models is determined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PriorMode {
    /// Maximum likelihood: each model's weight is its data share, count/total.
    Mle,
    /// Every model of the vocabulary weighted 1/2^A.
    Uniform,
    /// Hand-set weights over an explicit model list.
    Explicit,
}

impl PriorMode {
    pub fn name(self) -> &'static str {
        match self {
            PriorMode::Mle => "mle",
            PriorMode::Uniform => "uniform",
            PriorMode::Explicit => "explicit",
        }
    }
}

/// A prior specification, prior to being bound to a vocabulary.
#[derive(Debug, Clone, PartialEq)]
pub enum PriorSpec {
    Mle,
    Uniform,
    Explicit(Vec<(Model, BigRational)>),
}

/// One listed row of a table: a model, its data count, and its prior weight.
#[derive(Debug, Clone, PartialEq)]
pub struct TableRow {
    pub model: Model,
    pub count: u64,
    pub weight: BigRational,
}

/// A multiset of data grouped into models, with a prior over the models.
#[derive(Debug, Clone)]
pub struct WorldTable {
    vocab: Arc<Vocabulary>,
    counts: BTreeMap<Bits, u64>,
    weights: Option<BTreeMap<Bits, BigRational>>,
    mode: PriorMode,
    total: u64,
}

impl PartialEq for WorldTable {
    fn eq(&self, other: &Self) -> bool {
        self.vocab.as_ref() == other.vocab.as_ref()
            && self.mode == other.mode
            && self.total == other.total
            && self.counts == other.counts
            && self.weights == other.weights
    }
}

impl Eq for WorldTable {}

impl WorldTable {
    /// Ingests a CSV stream whose header names every ground atom exactly once
    /// (in any order) and whose cells are all 0 or 1. Each body row is one
    /// datum; identical rows aggregate into one model count. The prior is the
    /// maximum likelihood estimate.
    pub fn ingest_csv<R: Read>(reader: R, vocab: Arc<Vocabulary>) -> Result<WorldTable, StoreError> {
        let mut csv_reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .from_reader(reader);

        let headers = csv_reader.headers()?.clone();
        let mut column_atom = Vec::with_capacity(headers.len());
        let mut seen = vec![false; vocab.num_atoms()];
        for name in headers.iter() {
            let id = vocab
                .atom_id_by_name(name)
                .ok_or_else(|| StoreError::UnknownColumn(name.to_string()))?;
            if seen[id] {
                return Err(StoreError::DuplicateColumn(name.to_string()));
            }
            seen[id] = true;
            column_atom.push(id);
        }
        if let Some(missing) = seen.iter().position(|&s| !s) {
            return Err(StoreError::MissingColumn(vocab.atoms()[missing].to_string()));
        }

        let mut counts: BTreeMap<Bits, u64> = BTreeMap::new();
        let mut total: u64 = 0;
        for (i, record) in csv_reader.records().enumerate() {
            let record = record?;
            let mut bits = vec![false; vocab.num_atoms()];
            for (col, cell) in record.iter().enumerate() {
                let value = match cell {
                    "0" => false,
                    "1" => true,
                    other => {
                        return Err(StoreError::NonBinaryCell {
                            row: i + 1,
                            column: headers.get(col).unwrap_or("").to_string(),
                            value: other.to_string(),
                        })
                    }
                };
                bits[column_atom[col]] = value;
            }
            *counts.entry(bits.into()).or_insert(0) += 1;
            total += 1;
        }
        if total == 0 {
            return Err(StoreError::EmptyData);
        }
        Ok(WorldTable {
            vocab,
            counts,
            weights: None,
            mode: PriorMode::Mle,
            total,
        })
    }

    /// Builds an MLE table directly from (model, count) pairs. Models with a
    /// zero count are not materialized; they stay implicit with prior zero.
    pub fn from_counts(
        vocab: Arc<Vocabulary>,
        rows: impl IntoIterator<Item = (Model, u64)>,
    ) -> Result<WorldTable, StoreError> {
        let mut counts = BTreeMap::new();
        let mut total = 0u64;
        for (model, count) in rows {
            if !model.same_vocab(&vocab) {
                return Err(StoreError::VocabularyMismatch);
            }
            if count == 0 {
                continue;
            }
            if counts.insert(model.bits_arc().clone(), count).is_some() {
                return Err(StoreError::DuplicateModel {
                    model: model.bit_string(),
                });
            }
            total += count;
        }
        if total == 0 {
            return Err(StoreError::EmptyData);
        }
        Ok(WorldTable {
            vocab,
            counts,
            weights: None,
            mode: PriorMode::Mle,
            total,
        })
    }

    /// Builds a table whose prior follows `spec`. `Mle` passes `data`
    /// through; `Uniform` and `Explicit` ignore it and carry no data.
    pub fn build_prior(
        spec: PriorSpec,
        vocab: Arc<Vocabulary>,
        data: Option<&WorldTable>,
    ) -> Result<WorldTable, StoreError> {
        match spec {
            PriorSpec::Mle => {
                let data = data.ok_or(StoreError::MleRequiresData)?;
                if data.mode != PriorMode::Mle {
                    return Err(StoreError::NotMle(data.mode.name()));
                }
                if data.vocab.as_ref() != vocab.as_ref() {
                    return Err(StoreError::VocabularyMismatch);
                }
                Ok(data.clone())
            }
            PriorSpec::Uniform => {
                let models = enumerate_models(&vocab)?;
                let share = BigRational::new(
                    BigInt::one(),
                    BigInt::from(2u32).pow(vocab.num_atoms() as u32),
                );
                let weights = models
                    .into_iter()
                    .map(|m| (m.bits_arc().clone(), share.clone()))
                    .collect();
                Ok(WorldTable {
                    vocab,
                    counts: BTreeMap::new(),
                    weights: Some(weights),
                    mode: PriorMode::Uniform,
                    total: 0,
                })
            }
            PriorSpec::Explicit(pairs) => {
                let mut weights = BTreeMap::new();
                let mut sum = BigRational::zero();
                for (model, weight) in pairs {
                    if !model.same_vocab(&vocab) {
                        return Err(StoreError::VocabularyMismatch);
                    }
                    if weight < BigRational::zero() {
                        return Err(StoreError::NegativeWeight {
                            model: model.bit_string(),
                            weight: weight.to_string(),
                        });
                    }
                    sum += &weight;
                    if weights.insert(model.bits_arc().clone(), weight).is_some() {
                        return Err(StoreError::DuplicateModel {
                            model: model.bit_string(),
                        });
                    }
                }
                if !sum.is_one() {
                    return Err(StoreError::WeightsNotNormalized {
                        sum: sum.to_string(),
                    });
                }
                Ok(WorldTable {
                    vocab,
                    counts: BTreeMap::new(),
                    weights: Some(weights),
                    mode: PriorMode::Explicit,
                    total: 0,
                })
            }
        }
    }

    /// Adds one datum, returning a new snapshot with the row's count
    /// incremented (or the model newly listed with count 1) and the MLE
    /// prior implicitly refreshed. Hand-set priors are frozen and reject
    /// new data.
    pub fn add_datum(&self, row: &Model) -> Result<WorldTable, StoreError> {
        if self.mode != PriorMode::Mle {
            return Err(StoreError::PriorFrozen);
        }
        if !row.same_vocab(&self.vocab) {
            return Err(StoreError::VocabularyMismatch);
        }
        let mut counts = self.counts.clone();
        *counts.entry(row.bits_arc().clone()).or_insert(0) += 1;
        Ok(WorldTable {
            vocab: self.vocab.clone(),
            counts,
            weights: None,
            mode: PriorMode::Mle,
            total: self.total + 1,
        })
    }

    /// The maximum likelihood prior: each listed model's weight is
    /// count/total. Errors unless the table is in MLE mode.
    pub fn mle_prior(&self) -> Result<Vec<(Model, BigRational)>, StoreError> {
        if self.mode != PriorMode::Mle {
            return Err(StoreError::NotMle(self.mode.name()));
        }
        Ok(self
            .rows()
            .map(|row| (row.model, row.weight))
            .collect())
    }

    fn make_model(&self, bits: &Bits) -> Model {
        Model::from_bits_unchecked(self.vocab.clone(), bits.clone())
    }

    fn weight_of_bits(&self, bits: &Bits) -> BigRational {
        match &self.weights {
            None => match self.counts.get(bits) {
                Some(&count) => {
                    BigRational::new(BigInt::from(count), BigInt::from(self.total))
                }
                None => BigRational::zero(),
            },
            Some(weights) => weights.get(bits).cloned().unwrap_or_else(BigRational::zero),
        }
    }

    /// The prior weight of a model; models not listed have weight zero.
    pub fn prior_of(&self, model: &Model) -> Result<BigRational, StoreError> {
        if !model.same_vocab(&self.vocab) {
            return Err(StoreError::VocabularyMismatch);
        }
        Ok(self.weight_of_bits(model.bits_arc()))
    }

    /// All listed rows in canonical model order.
    pub fn rows(&self) -> impl Iterator<Item = TableRow> + '_ {
        let keys: Vec<&Bits> = match &self.weights {
            None => self.counts.keys().collect(),
            Some(weights) => weights.keys().collect(),
        };
        keys.into_iter().map(|bits| TableRow {
            model: self.make_model(bits),
            count: self.counts.get(bits).copied().unwrap_or(0),
            weight: self.weight_of_bits(bits),
        })
    }

    /// Rows with strictly positive prior weight, in canonical model order.
    pub fn support(&self) -> Vec<(Model, BigRational)> {
        self.rows()
            .filter(|row| row.weight > BigRational::zero())
            .map(|row| (row.model, row.weight))
            .collect()
    }

    pub fn num_supported(&self) -> usize {
        self.rows()
            .filter(|row| row.weight > BigRational::zero())
            .count()
    }

    /// The data multiset, with each model repeated by its count.
    pub fn data_multiset(&self) -> Vec<Model> {
        let mut data = Vec::with_capacity(self.total as usize);
        for (bits, &count) in &self.counts {
            for _ in 0..count {
                data.push(self.make_model(bits));
            }
        }
        data
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn mode(&self) -> PriorMode {
        self.mode
    }

    pub fn is_mle(&self) -> bool {
        self.mode == PriorMode::Mle
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }
}

/// Enumerates all 2^A models of the vocabulary in canonical bit order
/// (the all-false model first), refusing vocabularies above
/// [`DEFAULT_ENUMERATION_BOUND`] atoms.
pub fn enumerate_models(vocab: &Arc<Vocabulary>) -> Result<Vec<Model>, StoreError> {
    enumerate_models_with_bound(vocab, DEFAULT_ENUMERATION_BOUND)
}

/// As [`enumerate_models`], with an explicit atom-count bound for callers
/// that accept the blowup.
pub fn enumerate_models_with_bound(
    vocab: &Arc<Vocabulary>,
    bound: usize,
) -> Result<Vec<Model>, StoreError> {
    let atoms = vocab.num_atoms();
    if atoms > bound {
        return Err(StoreError::EnumerationBound { atoms, bound });
    }
    let mut models = Vec::with_capacity(1usize.checked_shl(atoms as u32).unwrap_or(0));
    let mut bits = vec![false; atoms];
    loop {
        models.push(Model::from_bits_unchecked(
            vocab.clone(),
            bits.clone().into(),
        ));
        // increment the bit vector, least significant bit last
        let mut pos = atoms;
        loop {
            if pos == 0 {
                return Ok(models);
            }
            pos -= 1;
            bits[pos] = !bits[pos];
            if bits[pos] {
                break;
            }
        }
    }
}

/// Parses a rational written as `num/den` or as a bare integer.
pub fn parse_ratio(text: &str) -> Result<BigRational, StoreError> {
    text.trim()
        .parse::<BigRational>()
        .map_err(|e| StoreError::BadRational {
            text: text.to_string(),
            reason: e.to_string(),
        })
}

#[derive(Serialize, Deserialize)]
struct PriorFile {
    mode: String,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    weights: Vec<PriorEntry>,
}

#[derive(Serialize, Deserialize)]
struct PriorEntry {
    model: String,
    w: String,
}

impl PriorSpec {
    /// Parses the prior JSON form
    /// `{"mode":"mle"|"uniform"|"explicit","weights":[{"model":"0101","w":"3/10"},...]}`,
    /// with model bits in canonical atom order and weights as `num/den`
    /// strings.
    pub fn from_json_str(text: &str, vocab: &Arc<Vocabulary>) -> Result<PriorSpec, StoreError> {
        let file: PriorFile =
            serde_json::from_str(text).map_err(|e| StoreError::PriorJson(e.to_string()))?;
        match file.mode.as_str() {
            "mle" | "uniform" => {
                if !file.weights.is_empty() {
                    return Err(StoreError::PriorJson(format!(
                        "mode `{}` does not take weights",
                        file.mode
                    )));
                }
                Ok(if file.mode == "mle" {
                    PriorSpec::Mle
                } else {
                    PriorSpec::Uniform
                })
            }
            "explicit" => {
                let mut pairs = Vec::with_capacity(file.weights.len());
                for entry in file.weights {
                    let model = Model::from_bit_str(vocab.clone(), &entry.model)?;
                    let weight = parse_ratio(&entry.w)?;
                    pairs.push((model, weight));
                }
                Ok(PriorSpec::Explicit(pairs))
            }
            other => Err(StoreError::PriorJson(format!("unknown mode `{other}`"))),
        }
    }

    pub fn to_json_string(&self) -> String {
        let file = match self {
            PriorSpec::Mle => PriorFile {
                mode: "mle".into(),
                weights: Vec::new(),
            },
            PriorSpec::Uniform => PriorFile {
                mode: "uniform".into(),
                weights: Vec::new(),
            },
            PriorSpec::Explicit(pairs) => PriorFile {
                mode: "explicit".into(),
                weights: pairs
                    .iter()
                    .map(|(model, weight)| PriorEntry {
                        model: model.bit_string(),
                        w: weight.to_string(),
                    })
                    .collect(),
            },
        };
        serde_json::to_string(&file).expect("prior serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rain_wet() -> Arc<Vocabulary> {
        Vocabulary::propositional(["rain", "wet"]).unwrap()
    }

    fn ratio(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Ten rows over rain/wet: counts 4, 2, 1, 3 in canonical model order.
    pub(crate) const RAIN_WET_CSV: &str = "rain,wet\n0,0\n0,0\n0,0\n0,0\n0,1\n0,1\n1,0\n1,1\n1,1\n1,1\n";

    #[test]
    fn ingest_aggregates_counts() {
        let table = WorldTable::ingest_csv(RAIN_WET_CSV.as_bytes(), rain_wet()).unwrap();
        assert_eq!(table.total(), 10);
        let rows: Vec<(String, u64)> = table
            .rows()
            .map(|r| (r.model.bit_string(), r.count))
            .collect();
        assert_eq!(
            rows,
            vec![
                ("00".into(), 4),
                ("01".into(), 2),
                ("10".into(), 1),
                ("11".into(), 3)
            ]
        );
    }

    #[test]
    fn mle_prior_is_count_over_total() {
        let table = WorldTable::ingest_csv(RAIN_WET_CSV.as_bytes(), rain_wet()).unwrap();
        let prior: Vec<BigRational> = table.mle_prior().unwrap().into_iter().map(|p| p.1).collect();
        assert_eq!(prior, vec![ratio(2, 5), ratio(1, 5), ratio(1, 10), ratio(3, 10)]);
    }

    #[test]
    fn mle_prior_of_three_model_table() {
        let vocab = Vocabulary::propositional(["p", "q"]).unwrap();
        let table = WorldTable::from_counts(
            vocab.clone(),
            [
                (Model::from_bit_str(vocab.clone(), "00").unwrap(), 2),
                (Model::from_bit_str(vocab.clone(), "01").unwrap(), 3),
                (Model::from_bit_str(vocab.clone(), "10").unwrap(), 5),
            ],
        )
        .unwrap();
        let prior: Vec<BigRational> = table.mle_prior().unwrap().into_iter().map(|p| p.1).collect();
        assert_eq!(prior, vec![ratio(1, 5), ratio(3, 10), ratio(1, 2)]);
    }

    #[test]
    fn degenerate_single_model_prior() {
        let vocab = Vocabulary::propositional(["p"]).unwrap();
        let table = WorldTable::from_counts(
            vocab.clone(),
            [(Model::from_bit_str(vocab, "1").unwrap(), 7)],
        )
        .unwrap();
        let prior = table.mle_prior().unwrap();
        assert_eq!(prior.len(), 1);
        assert!(prior[0].1.is_one());
    }

    #[test]
    fn header_only_csv_is_empty_data() {
        let err = WorldTable::ingest_csv("rain,wet\n".as_bytes(), rain_wet()).unwrap_err();
        assert!(matches!(err, StoreError::EmptyData));
    }

    #[test]
    fn header_errors() {
        assert!(matches!(
            WorldTable::ingest_csv("rain,snow\n0,0\n".as_bytes(), rain_wet()).unwrap_err(),
            StoreError::UnknownColumn(_)
        ));
        assert!(matches!(
            WorldTable::ingest_csv("rain\n0\n".as_bytes(), rain_wet()).unwrap_err(),
            StoreError::MissingColumn(_)
        ));
        assert!(matches!(
            WorldTable::ingest_csv("rain,rain\n0,0\n".as_bytes(), rain_wet()).unwrap_err(),
            StoreError::DuplicateColumn(_)
        ));
        assert!(matches!(
            WorldTable::ingest_csv("rain,wet\n0,2\n".as_bytes(), rain_wet()).unwrap_err(),
            StoreError::NonBinaryCell { .. }
        ));
    }

    #[test]
    fn header_order_does_not_matter() {
        let a = WorldTable::ingest_csv("rain,wet\n1,0\n0,1\n".as_bytes(), rain_wet()).unwrap();
        let b = WorldTable::ingest_csv("wet,rain\n0,1\n1,0\n".as_bytes(), rain_wet()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn add_datum_increments_and_refreshes() {
        let vocab = Vocabulary::propositional(["bird", "fly"]).unwrap();
        let table = WorldTable::from_counts(
            vocab.clone(),
            [
                (Model::from_bit_str(vocab.clone(), "00").unwrap(), 5),
                (Model::from_bit_str(vocab.clone(), "01").unwrap(), 2),
                (Model::from_bit_str(vocab.clone(), "11").unwrap(), 3),
            ],
        )
        .unwrap();
        let new_row = Model::from_bit_str(vocab.clone(), "10").unwrap();
        let updated = table.add_datum(&new_row).unwrap();
        assert_eq!(updated.total(), 11);
        let counts: Vec<u64> = updated.rows().map(|r| r.count).collect();
        assert_eq!(counts, vec![5, 2, 1, 3]);
        // the original snapshot is untouched
        assert_eq!(table.total(), 10);

        let twice = updated.add_datum(&new_row).unwrap();
        let counts: Vec<u64> = twice.rows().map(|r| r.count).collect();
        assert_eq!(counts, vec![5, 2, 2, 3]);
    }

    #[test]
    fn add_datum_rejects_foreign_vocabulary() {
        let vocab = rain_wet();
        let table = WorldTable::ingest_csv(RAIN_WET_CSV.as_bytes(), vocab).unwrap();
        let other = Vocabulary::propositional(["sun", "dry"]).unwrap();
        let row = Model::from_bit_str(other, "01").unwrap();
        assert!(matches!(
            table.add_datum(&row).unwrap_err(),
            StoreError::VocabularyMismatch
        ));
    }

    #[test]
    fn explicit_prior_is_frozen() {
        let vocab = rain_wet();
        let models = enumerate_models(&vocab).unwrap();
        let spec = PriorSpec::Explicit(vec![
            (models[0].clone(), ratio(3, 5)),
            (models[1].clone(), ratio(0, 1)),
            (models[2].clone(), ratio(1, 10)),
            (models[3].clone(), ratio(3, 10)),
        ]);
        let table = WorldTable::build_prior(spec, vocab.clone(), None).unwrap();
        assert_eq!(table.num_supported(), 3);
        let err = table.add_datum(&models[0]).unwrap_err();
        assert!(matches!(err, StoreError::PriorFrozen));
    }

    #[test]
    fn uniform_prior_shares_evenly() {
        let table =
            WorldTable::build_prior(PriorSpec::Uniform, rain_wet(), None).unwrap();
        let weights: Vec<BigRational> = table.rows().map(|r| r.weight).collect();
        assert_eq!(weights, vec![ratio(1, 4); 4]);
        assert_eq!(table.total(), 0);
    }

    #[test]
    fn explicit_weights_must_sum_to_one() {
        let vocab = rain_wet();
        let models = enumerate_models(&vocab).unwrap();
        let spec = PriorSpec::Explicit(vec![
            (models[0].clone(), ratio(3, 5)),
            (models[1].clone(), ratio(3, 10)),
        ]);
        let err = WorldTable::build_prior(spec, vocab, None).unwrap_err();
        assert!(matches!(err, StoreError::WeightsNotNormalized { .. }));
    }

    #[test]
    fn enumerate_models_in_bit_order() {
        let models = enumerate_models(&rain_wet()).unwrap();
        let bits: Vec<String> = models.iter().map(|m| m.bit_string()).collect();
        assert_eq!(bits, vec!["00", "01", "10", "11"]);

        let one = Vocabulary::propositional(["p"]).unwrap();
        assert_eq!(enumerate_models(&one).unwrap().len(), 2);

        let blames = Vocabulary::new(
            vec![],
            vec![crate::formula::Predicate {
                name: "blames".into(),
                arity: 2,
            }],
            vec!["a".into(), "b".into()],
        )
        .unwrap();
        assert_eq!(enumerate_models(&blames).unwrap().len(), 16);
    }

    #[test]
    fn enumeration_bound_is_enforced() {
        let vocab =
            Vocabulary::propositional((0..21).map(|i| format!("p{i}"))).unwrap();
        assert!(matches!(
            enumerate_models(&vocab).unwrap_err(),
            StoreError::EnumerationBound { atoms: 21, bound: 20 }
        ));
        assert_eq!(
            enumerate_models_with_bound(&vocab, 21).unwrap().len(),
            1 << 21
        );
    }

    #[test]
    fn prior_json_round_trip() {
        let vocab = rain_wet();
        let models = enumerate_models(&vocab).unwrap();
        let spec = PriorSpec::Explicit(vec![
            (models[0].clone(), ratio(3, 5)),
            (models[1].clone(), ratio(0, 1)),
            (models[2].clone(), ratio(1, 10)),
            (models[3].clone(), ratio(3, 10)),
        ]);
        let text = spec.to_json_string();
        let parsed = PriorSpec::from_json_str(&text, &vocab).unwrap();
        assert_eq!(parsed, spec);

        assert_eq!(
            PriorSpec::from_json_str(r#"{"mode":"uniform"}"#, &vocab).unwrap(),
            PriorSpec::Uniform
        );
        assert!(PriorSpec::from_json_str(r#"{"mode":"wat"}"#, &vocab).is_err());
    }

    #[test]
    fn incremental_equals_batch_ingest() {
        let vocab = rain_wet();
        let base = WorldTable::ingest_csv("rain,wet\n0,0\n1,1\n".as_bytes(), vocab.clone()).unwrap();
        let extended = base
            .add_datum(&Model::from_bit_str(vocab.clone(), "01").unwrap())
            .unwrap()
            .add_datum(&Model::from_bit_str(vocab.clone(), "11").unwrap())
            .unwrap();
        let batch = WorldTable::ingest_csv(
            "rain,wet\n0,0\n1,1\n0,1\n1,1\n".as_bytes(),
            vocab,
        )
        .unwrap();
        assert_eq!(extended, batch);
    }
}
