//! Exhaustive freeness and essential-hyperbolicity check on short words.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::britton::all_reduced_words;
use super::{BetaAssignment, CombineError, CyclicForm, GraphOfGroups, HnnPresentation, Solution};
use crate::freegrp::format_word;
use crate::ogroup::LexVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FreenessReport {
    pub length: usize,
    /// Nontrivial Britton-reduced words examined.
    pub words: usize,
    pub hyperbolic: usize,
    pub elliptic: usize,
    pub free: usize,
    pub tame: usize,
    /// First few words that are not free or not tame, with the reason.
    pub failures: Vec<String>,
}

impl FreenessReport {
    pub fn passed(&self) -> bool {
        self.free == self.words && self.tame == self.words
    }
}

const MAX_LISTED: usize = 10;

struct Outcome {
    hyperbolic: bool,
    free: bool,
    tame: bool,
}

/// Every nontrivial Britton-reduced word of length at most `length` must act
/// freely: hyperbolically on the tree of the splitting, or through a conjugate
/// of a vertex element with positive translation length. Tameness of
/// `(θ_g, ν_g)` is checked alongside.
pub fn freeness_check(
    g: &GraphOfGroups,
    sol: &Solution,
    beta: &BetaAssignment,
    length: usize,
) -> Result<FreenessReport, CombineError> {
    let pres = HnnPresentation::from_graph(g)?;
    let vx = &sol.vertices[0];
    let zero = LexVector::zero(&sol.signature);
    let words: Vec<_> = all_reduced_words(pres.alphabet().rank(), length)
        .into_iter()
        .filter(|w| !w.is_empty() && pres.is_reduced(w))
        .collect();

    let outcomes: Vec<Result<Outcome, CombineError>> = words
        .par_iter()
        .map(|w| match pres.cyclic_form(w) {
            CyclicForm::Hyperbolic { stable_count, word } => {
                let nu = zero.with_integer_prefix(&(stable_count as i64).into());
                let tame = beta.of_word(&word).to_extended().is_tame(&nu)?;
                Ok(Outcome {
                    hyperbolic: true,
                    free: stable_count > 0,
                    tame,
                })
            }
            CyclicForm::Elliptic(v) => {
                let ell = vx.translation_length(&v);
                let nu = ell.with_integer_prefix(&0.into());
                let tame = beta.of_word(&g.to_gamma(0, &v)).to_extended().is_tame(&nu)?;
                Ok(Outcome {
                    hyperbolic: false,
                    free: ell.is_positive(),
                    tame,
                })
            }
        })
        .collect();

    let mut report = FreenessReport {
        length,
        words: words.len(),
        hyperbolic: 0,
        elliptic: 0,
        free: 0,
        tame: 0,
        failures: Vec::new(),
    };
    for (w, o) in words.iter().zip(outcomes) {
        let o = o?;
        if o.hyperbolic {
            report.hyperbolic += 1;
        } else {
            report.elliptic += 1;
        }
        report.free += o.free as usize;
        report.tame += o.tame as usize;
        if (!o.free || !o.tame) && report.failures.len() < MAX_LISTED {
            let what = match (o.free, o.tame) {
                (false, _) => "has a fixed point",
                _ => "is not essentially hyperbolic",
            };
            report.failures.push(format!("{} {what}", format_word(pres.alphabet(), w)));
        }
    }
    Ok(report)
}
