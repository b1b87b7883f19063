//! Vocabularies, ground atoms, and models (total truth assignments).

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Hard cap on the number of ground atoms a vocabulary may induce.
pub const MAX_GROUND_ATOMS: usize = 1 << 20;

/// Errors raised while constructing vocabularies and models.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VocabError {
    #[error("`{name}` is not a valid identifier")]
    InvalidName { name: String },
    #[error("symbol `{name}` is declared more than once")]
    DuplicateSymbol { name: String },
    #[error("constant `{name}` is declared more than once")]
    DuplicateConstant { name: String },
    #[error("predicate `{name}` has arity 0; declare a proposition instead")]
    NullaryPredicate { name: String },
    #[error("vocabulary induces {count} ground atoms, more than the cap of {cap}")]
    TooManyAtoms { count: usize, cap: usize },
    #[error("expected {expected} bits, found {found}")]
    WrongBitCount { expected: usize, found: usize },
    #[error("`{value}` is not a 0/1 assignment")]
    BadBit { value: String },
    #[error("`{name}` is not a ground atom of the vocabulary")]
    UnknownAtom { name: String },
    #[error("no assignment given for ground atom `{name}`")]
    MissingAtom { name: String },
    #[error("ground atom `{name}` is assigned more than once")]
    DuplicateAtom { name: String },
}

/// A declared predicate symbol with its arity.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Predicate {
    pub name: String,
    pub arity: usize,
}

/// A ground atom: a proposition, or a predicate applied to constants.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GroundAtom {
    Proposition(String),
    Predicate { name: String, args: Vec<String> },
}

impl fmt::Display for GroundAtom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroundAtom::Proposition(name) => write!(f, "{name}"),
            GroundAtom::Predicate { name, args } => {
                write!(f, "{name}({})", args.join(","))
            }
        }
    }
}

pub(crate) fn is_valid_ident(name: &str) -> bool {
    if name == "forall" || name == "exists" {
        return false;
    }
    let mut chars = name.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// A finite propositional or function-free first-order signature.
///
/// Construction fixes the canonical ground-atom list: propositions in
/// declaration order, then every predicate applied to every tuple of
/// constants, sorted lexicographically by (predicate name, argument tuple).
/// That list determines the bit layout of every [`Model`] and file format
/// built on top of it.
#[derive(Debug)]
pub struct Vocabulary {
    propositions: Vec<String>,
    predicates: Vec<Predicate>,
    constants: Vec<String>,
    atoms: Vec<GroundAtom>,
    atom_ids: HashMap<GroundAtom, usize>,
    atom_names: HashMap<String, usize>,
}

impl PartialEq for Vocabulary {
    fn eq(&self, other: &Self) -> bool {
        self.propositions == other.propositions
            && self.predicates == other.predicates
            && self.constants == other.constants
    }
}

impl Eq for Vocabulary {}

impl Vocabulary {
    pub fn new(
        propositions: Vec<String>,
        predicates: Vec<Predicate>,
        constants: Vec<String>,
    ) -> Result<Arc<Vocabulary>, VocabError> {
        let mut seen = HashMap::new();
        for name in propositions.iter().chain(predicates.iter().map(|p| &p.name)) {
            if !is_valid_ident(name) {
                return Err(VocabError::InvalidName { name: name.clone() });
            }
            if seen.insert(name.clone(), ()).is_some() {
                return Err(VocabError::DuplicateSymbol { name: name.clone() });
            }
        }
        for p in &predicates {
            if p.arity == 0 {
                return Err(VocabError::NullaryPredicate { name: p.name.clone() });
            }
        }
        let mut seen_consts = HashMap::new();
        for c in &constants {
            if !is_valid_ident(c) {
                return Err(VocabError::InvalidName { name: c.clone() });
            }
            if seen_consts.insert(c.clone(), ()).is_some() {
                return Err(VocabError::DuplicateConstant { name: c.clone() });
            }
        }

        let mut count: u128 = propositions.len() as u128;
        for p in &predicates {
            count += (constants.len() as u128).pow(p.arity as u32);
            if count > MAX_GROUND_ATOMS as u128 {
                return Err(VocabError::TooManyAtoms {
                    count: count.min(usize::MAX as u128) as usize,
                    cap: MAX_GROUND_ATOMS,
                });
            }
        }

        let mut atoms: Vec<GroundAtom> = propositions
            .iter()
            .map(|p| GroundAtom::Proposition(p.clone()))
            .collect();
        let mut pred_atoms = Vec::new();
        for p in &predicates {
            let mut tuple = vec![0usize; p.arity];
            if constants.is_empty() {
                continue;
            }
            loop {
                pred_atoms.push(GroundAtom::Predicate {
                    name: p.name.clone(),
                    args: tuple.iter().map(|&i| constants[i].clone()).collect(),
                });
                // advance the tuple like an odometer
                let mut pos = p.arity;
                loop {
                    if pos == 0 {
                        break;
                    }
                    pos -= 1;
                    tuple[pos] += 1;
                    if tuple[pos] < constants.len() {
                        break;
                    }
                    tuple[pos] = 0;
                }
                if tuple.iter().all(|&i| i == 0) {
                    break;
                }
            }
        }
        pred_atoms.sort();
        atoms.extend(pred_atoms);

        let atom_ids: HashMap<GroundAtom, usize> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.clone(), i))
            .collect();
        let atom_names: HashMap<String, usize> = atoms
            .iter()
            .enumerate()
            .map(|(i, a)| (a.to_string(), i))
            .collect();

        Ok(Arc::new(Vocabulary {
            propositions,
            predicates,
            constants,
            atoms,
            atom_ids,
            atom_names,
        }))
    }

    /// Convenience constructor for a purely propositional vocabulary.
    pub fn propositional<S: Into<String>>(
        names: impl IntoIterator<Item = S>,
    ) -> Result<Arc<Vocabulary>, VocabError> {
        Vocabulary::new(
            names.into_iter().map(Into::into).collect(),
            Vec::new(),
            Vec::new(),
        )
    }

    pub fn propositions(&self) -> &[String] {
        &self.propositions
    }

    pub fn predicates(&self) -> &[Predicate] {
        &self.predicates
    }

    pub fn constants(&self) -> &[String] {
        &self.constants
    }

    /// The canonical ground-atom list that fixes every model's bit layout.
    pub fn atoms(&self) -> &[GroundAtom] {
        &self.atoms
    }

    pub fn num_atoms(&self) -> usize {
        self.atoms.len()
    }

    pub fn atom_id(&self, atom: &GroundAtom) -> Option<usize> {
        self.atom_ids.get(atom).copied()
    }

    /// Looks an atom up by its canonical rendered name, e.g. `blames(a,b)`.
    pub fn atom_id_by_name(&self, name: &str) -> Option<usize> {
        self.atom_names.get(name).copied()
    }

    pub fn is_constant(&self, name: &str) -> bool {
        self.constants.iter().any(|c| c == name)
    }

    pub fn is_proposition(&self, name: &str) -> bool {
        self.propositions.iter().any(|p| p == name)
    }

    pub fn predicate(&self, name: &str) -> Option<&Predicate> {
        self.predicates.iter().find(|p| p.name == name)
    }
}

/// Serde shape of the vocabulary JSON file.
#[derive(serde::Serialize, serde::Deserialize)]
struct VocabularyFile {
    #[serde(default)]
    propositions: Vec<String>,
    #[serde(default)]
    predicates: Vec<PredicateFile>,
    #[serde(default)]
    constants: Vec<String>,
}

#[derive(serde::Serialize, serde::Deserialize)]
struct PredicateFile {
    name: String,
    arity: usize,
}

impl Vocabulary {
    /// Parses the JSON form
    /// `{"propositions":[...],"predicates":[{"name":...,"arity":...}],"constants":[...]}`.
    pub fn from_json_str(text: &str) -> Result<Arc<Vocabulary>, String> {
        let file: VocabularyFile =
            serde_json::from_str(text).map_err(|e| format!("vocabulary json: {e}"))?;
        Vocabulary::new(
            file.propositions,
            file.predicates
                .into_iter()
                .map(|p| Predicate {
                    name: p.name,
                    arity: p.arity,
                })
                .collect(),
            file.constants,
        )
        .map_err(|e| e.to_string())
    }

    pub fn to_json_string(&self) -> String {
        let file = VocabularyFile {
            propositions: self.propositions.clone(),
            predicates: self
                .predicates
                .iter()
                .map(|p| PredicateFile {
                    name: p.name.clone(),
                    arity: p.arity,
                })
                .collect(),
            constants: self.constants.clone(),
        };
        serde_json::to_string(&file).expect("vocabulary serializes")
    }
}

/// A total truth assignment over a vocabulary's ground atoms.
///
/// Identity is canonical: two models over the same vocabulary are equal
/// exactly when their bit vectors are equal.
#[derive(Debug, Clone)]
pub struct Model {
    vocab: Arc<Vocabulary>,
    bits: Arc<[bool]>,
}

impl Model {
    pub fn new(vocab: Arc<Vocabulary>, bits: Vec<bool>) -> Result<Model, VocabError> {
        if bits.len() != vocab.num_atoms() {
            return Err(VocabError::WrongBitCount {
                expected: vocab.num_atoms(),
                found: bits.len(),
            });
        }
        Ok(Model {
            vocab,
            bits: bits.into(),
        })
    }

    pub(crate) fn from_bits_unchecked(vocab: Arc<Vocabulary>, bits: Arc<[bool]>) -> Model {
        debug_assert_eq!(bits.len(), vocab.num_atoms());
        Model { vocab, bits }
    }

    /// Builds a model from a bit string such as `"0101"`, in canonical atom order.
    pub fn from_bit_str(vocab: Arc<Vocabulary>, text: &str) -> Result<Model, VocabError> {
        let bits: Vec<bool> = text
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(VocabError::BadBit {
                    value: other.to_string(),
                }),
            })
            .collect::<Result<_, _>>()?;
        Model::new(vocab, bits)
    }

    /// Builds a model from named assignments; every ground atom must appear
    /// exactly once under its canonical rendered name.
    pub fn from_assignments<'a>(
        vocab: Arc<Vocabulary>,
        pairs: impl IntoIterator<Item = (&'a str, bool)>,
    ) -> Result<Model, VocabError> {
        let mut bits = vec![None; vocab.num_atoms()];
        for (name, value) in pairs {
            let id = vocab
                .atom_id_by_name(name)
                .ok_or_else(|| VocabError::UnknownAtom {
                    name: name.to_string(),
                })?;
            if bits[id].is_some() {
                return Err(VocabError::DuplicateAtom {
                    name: name.to_string(),
                });
            }
            bits[id] = Some(value);
        }
        let bits: Vec<bool> = bits
            .into_iter()
            .enumerate()
            .map(|(i, b)| {
                b.ok_or_else(|| VocabError::MissingAtom {
                    name: vocab.atoms()[i].to_string(),
                })
            })
            .collect::<Result<_, _>>()?;
        Model::new(vocab, bits)
    }

    pub fn vocab(&self) -> &Arc<Vocabulary> {
        &self.vocab
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub(crate) fn bits_arc(&self) -> &Arc<[bool]> {
        &self.bits
    }

    /// The truth value of the atom at the given canonical index.
    pub fn get(&self, atom_id: usize) -> bool {
        self.bits[atom_id]
    }

    pub fn bit_string(&self) -> String {
        self.bits.iter().map(|&b| if b { '1' } else { '0' }).collect()
    }

    pub(crate) fn same_vocab(&self, other: &Arc<Vocabulary>) -> bool {
        Arc::ptr_eq(&self.vocab, other) || self.vocab.as_ref() == other.as_ref()
    }
}

impl PartialEq for Model {
    fn eq(&self, other: &Self) -> bool {
        self.bits == other.bits && self.same_vocab(&other.vocab)
    }
}

impl Eq for Model {}

impl std::hash::Hash for Model {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.bit_string())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn blames_vocab() -> Arc<Vocabulary> {
        Vocabulary::new(
            vec![],
            vec![Predicate {
                name: "blames".into(),
                arity: 2,
            }],
            vec!["a".into(), "b".into()],
        )
        .unwrap()
    }

    #[test]
    fn atom_order_is_props_then_sorted_predicates() {
        let v = Vocabulary::new(
            vec!["rain".into(), "wet".into()],
            vec![Predicate {
                name: "blames".into(),
                arity: 1,
            }],
            vec!["b".into(), "a".into()],
        )
        .unwrap();
        let names: Vec<String> = v.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(names, vec!["rain", "wet", "blames(a)", "blames(b)"]);
    }

    #[test]
    fn binary_predicate_over_two_constants_has_four_atoms() {
        let v = blames_vocab();
        let names: Vec<String> = v.atoms().iter().map(|a| a.to_string()).collect();
        assert_eq!(
            names,
            vec!["blames(a,a)", "blames(a,b)", "blames(b,a)", "blames(b,b)"]
        );
    }

    #[test]
    fn duplicate_symbols_rejected() {
        assert_eq!(
            Vocabulary::propositional(["rain", "rain"]).unwrap_err(),
            VocabError::DuplicateSymbol {
                name: "rain".into()
            }
        );
        assert!(matches!(
            Vocabulary::new(
                vec!["blames".into()],
                vec![Predicate { name: "blames".into(), arity: 1 }],
                vec!["a".into()],
            ),
            Err(VocabError::DuplicateSymbol { .. })
        ));
    }

    #[test]
    fn nullary_predicate_rejected() {
        assert!(matches!(
            Vocabulary::new(
                vec![],
                vec![Predicate { name: "p".into(), arity: 0 }],
                vec![],
            ),
            Err(VocabError::NullaryPredicate { .. })
        ));
    }

    #[test]
    fn keywords_are_not_identifiers() {
        assert!(matches!(
            Vocabulary::propositional(["forall"]),
            Err(VocabError::InvalidName { .. })
        ));
    }

    #[test]
    fn model_round_trips_through_bit_string() {
        let v = blames_vocab();
        let m = Model::from_bit_str(v.clone(), "1001").unwrap();
        assert_eq!(m.bit_string(), "1001");
        assert!(m.get(0));
        assert!(!m.get(1));
        assert_eq!(m, Model::new(v, vec![true, false, false, true]).unwrap());
    }

    #[test]
    fn model_from_assignments_requires_total_cover() {
        let v = Vocabulary::propositional(["rain", "wet"]).unwrap();
        let m = Model::from_assignments(v.clone(), [("wet", true), ("rain", false)]).unwrap();
        assert_eq!(m.bit_string(), "01");
        assert!(matches!(
            Model::from_assignments(v.clone(), [("rain", true)]),
            Err(VocabError::MissingAtom { .. })
        ));
        assert!(matches!(
            Model::from_assignments(v, [("rain", true), ("rain", false), ("wet", true)]),
            Err(VocabError::DuplicateAtom { .. })
        ));
    }

    #[test]
    fn vocabulary_json_round_trip() {
        let v = blames_vocab();
        let v2 = Vocabulary::from_json_str(&v.to_json_string()).unwrap();
        assert_eq!(*v, *v2);
    }
}
