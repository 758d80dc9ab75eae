//! Free isometric actions of free groups on weighted Cayley trees.
//!
//! The tree of a [`CayleyTreeAction`] has the reduced words as vertices and an
//! edge from `g` to `g·a` of length `weight(a)` for every generator `a`. Points are
//! always vertices; the identity word is the base point.

mod axis;
mod dilation;
mod ends;
mod oracle;

pub use axis::{axis_geometry, commutator_length, AxisGeometry, MeetKind};
pub use dilation::{dilation_line_action, LineAction};
pub use ends::{end_homomorphism, end_map, stabilizer_of_end, Direction, EndSpec};
pub use oracle::{brute_force_length, brute_force_length_auto, OracleLength};

use thiserror::Error;

use crate::freegrp::{cyclic_reduce, Alphabet, Word};
use crate::ogroup::{
    Embedding, GroupSignature, LexVector, OAutomorphism, OGroupError,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("expected {expected} weights, got {got}")]
    WeightCount { expected: usize, got: usize },
    #[error("weight of generator {generator} is not positive")]
    NonPositiveWeight { generator: String },
    #[error(transparent)]
    Group(#[from] OGroupError),
    #[error("element is trivial")]
    TrivialElement,
    #[error("elements commute, so their axes coincide")]
    Commuting,
    #[error("exponent must be nonzero")]
    ZeroExponent,
    #[error("the oracle needs integer weights of rank one, got {0}")]
    NotInteger(String),
    #[error("element does not fix the end")]
    DoesNotFixEnd,
    #[error("dilation factor must be positive")]
    NonPositiveDilation,
    #[error("aperiodic ends need at least two generators")]
    RankTooSmall,
    #[error("overlap {overlap} is not below {bound}")]
    OverlapTooLong { overlap: String, bound: String },
    #[error("word uses generator {0} outside the alphabet")]
    UnknownGenerator(usize),
}

/// A free group with positive edge weights in Λ₀.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CayleyTreeAction {
    alphabet: Alphabet,
    weights: Vec<LexVector>,
    sig: GroupSignature,
}

/// Translation data of an isometry: `ι(gx) = θ ι(x) + ν` along its axis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationData {
    pub length: LexVector,
    pub nu: LexVector,
    pub theta: OAutomorphism,
}

impl CayleyTreeAction {
    pub fn new(alphabet: Alphabet, weights: Vec<LexVector>) -> Result<Self, TreeError> {
        if weights.len() != alphabet.rank() {
            return Err(TreeError::WeightCount {
                expected: alphabet.rank(),
                got: weights.len(),
            });
        }
        let sig = weights[0].signature().clone();
        for (i, w) in weights.iter().enumerate() {
            if w.signature() != &sig {
                w.lex_compare(&weights[0])?;
            }
            if !w.is_positive() {
                return Err(TreeError::NonPositiveWeight {
                    generator: alphabet.name(i).to_string(),
                });
            }
        }
        Ok(CayleyTreeAction {
            alphabet,
            weights,
            sig,
        })
    }

    /// Integer weights of rank one.
    pub fn with_int_weights(alphabet: Alphabet, weights: &[i64]) -> Result<Self, TreeError> {
        Self::new(alphabet, weights.iter().map(|&w| LexVector::integers(&[w])).collect())
    }

    /// Every generator has length one in ℤ.
    pub fn unit(alphabet: Alphabet) -> Self {
        let n = alphabet.rank();
        Self::with_int_weights(alphabet, &vec![1; n]).expect("unit weights are positive")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn weights(&self) -> &[LexVector] {
        &self.weights
    }

    pub fn weight(&self, generator: usize) -> &LexVector {
        &self.weights[generator]
    }

    pub fn signature(&self) -> &GroupSignature {
        &self.sig
    }

    pub fn rank(&self) -> usize {
        self.alphabet.rank()
    }

    pub(crate) fn check_word(&self, w: &Word) -> Result<(), TreeError> {
        match w.letters().iter().find(|l| l.gen() >= self.rank()) {
            Some(l) => Err(TreeError::UnknownGenerator(l.gen())),
            None => Ok(()),
        }
    }

    /// Sum of the weights of the letters of `w`, taken literally.
    pub fn word_length(&self, w: &Word) -> LexVector {
        let mut counts = vec![0i64; self.rank()];
        for l in w.letters() {
            counts[l.gen()] += 1;
        }
        let mut total = LexVector::zero(&self.sig);
        for (g, &c) in counts.iter().enumerate() {
            if c != 0 {
                total = total + self.weights[g].scale_i64(c);
            }
        }
        total
    }

    /// Distance between the vertices `g` and `h`.
    pub fn distance(&self, g: &Word, h: &Word) -> LexVector {
        self.word_length(&g.inverse().mul(h).reduce())
    }

    /// Weighted length of the cyclic core; zero exactly for the trivial word.
    pub fn translation_length(&self, w: &Word) -> LexVector {
        let (_, core) = cyclic_reduce(w);
        self.word_length(&core.as_word())
    }

    /// `(ℓ, ν=ℓ, θ=1)` for an element of this isometric action.
    pub fn translation_data(&self, w: &Word) -> TranslationData {
        let length = self.translation_length(w);
        TranslationData {
            nu: length.clone(),
            length,
            theta: OAutomorphism::identity(&self.sig),
        }
    }

    /// Maps every weight through an order embedding.
    pub fn base_change(&self, h: &Embedding) -> Result<Self, TreeError> {
        let weights = self
            .weights
            .iter()
            .map(|w| h.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.alphabet.clone(), weights)
    }

    /// Applies an automorphism of Λ₀ to every weight (a rescaled metric).
    pub fn rescale(&self, eta: &OAutomorphism) -> Result<Self, TreeError> {
        let weights = self
            .weights
            .iter()
            .map(|w| eta.apply(w))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(self.alphabet.clone(), weights)
    }
}
