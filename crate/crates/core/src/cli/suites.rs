//! Seeded randomized verification suites behind `verify`.

use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classify::{classify, ClassInput};
use crate::freegrp::{commutator_power, format_word, is_conjugate, Alphabet, Letter, Word};
use crate::treecalc::{brute_force_length_auto, commutator_length, CayleyTreeAction};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    /// Commutator-length formula against the brute-force oracle.
    Commutator,
    /// Translation length against the brute-force oracle.
    Lengths,
    /// Conjugacy decision against exhaustive conjugator search.
    Conjugacy,
    /// Classifier witnesses on random inputs.
    Classify,
}

impl Suite {
    pub const ALL: [Suite; 4] = [Suite::Commutator, Suite::Lengths, Suite::Conjugacy, Suite::Classify];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Commutator => "commutator",
            Suite::Lengths => "lengths",
            Suite::Conjugacy => "conjugacy",
            Suite::Classify => "classify",
        }
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?} (expected commutator, lengths, conjugacy or classify)"))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseFailure {
    pub case: usize,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteResult {
    pub suite: Suite,
    pub seed: u64,
    pub cases: usize,
    pub passed: usize,
    /// In case order.
    pub failures: Vec<CaseFailure>,
}

const ORACLE_RADIUS: usize = 16;
const CONJUGATOR_CAP: usize = 8;

fn random_word(rng: &mut ChaCha8Rng, rank: usize, min: usize, max: usize) -> Word {
    let len = rng.gen_range(min..=max);
    let mut letters: Vec<Letter> = Vec::with_capacity(len);
    while letters.len() < len {
        let l = Letter::new(rng.gen_range(0..rank), rng.gen_bool(0.5));
        if letters.last().is_some_and(|t| t.cancels(l)) {
            continue;
        }
        letters.push(l);
    }
    Word::from_letters(letters)
}

fn random_action(rng: &mut ChaCha8Rng, max_rank: usize) -> CayleyTreeAction {
    let rank = rng.gen_range(2..=max_rank);
    let weights: Vec<i64> = (0..rank).map(|_| rng.gen_range(1..=4)).collect();
    CayleyTreeAction::with_int_weights(Alphabet::of(&["a", "b", "c"][..rank]), &weights).expect("positive weights")
}

fn nonzero(rng: &mut ChaCha8Rng, k: i64) -> i64 {
    let v = rng.gen_range(1..=k);
    if rng.gen_bool(0.5) {
        v
    } else {
        -v
    }
}

/// Every case draws from its own stream, so results do not depend on the
/// order in which cases run.
fn case_rng(seed: u64, case: usize) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(case as u64);
    r
}

fn commutator_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_action(rng, 3);
    let (x, y) = loop {
        let x = random_word(rng, a.rank(), 1, 3);
        let y = random_word(rng, a.rank(), 1, 3);
        if x.mul(&y) != y.mul(&x) {
            break (x, y);
        }
    };
    let (m, n) = (nonzero(rng, 3), nonzero(rng, 3));
    let formula = commutator_length(&a, &x, &y, m, n).map_err(|e| e.to_string())?;
    let literal = commutator_power(&x, &y, m, n).map_err(|e| e.to_string())?;
    let oracle = brute_force_length_auto(&a, &literal, ORACLE_RADIUS).map_err(|e| e.to_string())?;
    let show = |w: &Word| format_word(a.alphabet(), w);
    if !oracle.stable {
        return Err(format!("oracle did not stabilize on {}", show(&literal)));
    }
    if formula != oracle.length {
        return Err(format!(
            "x = {}, y = {}, m = {m}, n = {n}: formula {formula}, oracle {}",
            show(&x),
            show(&y),
            oracle.length
        ));
    }
    Ok(())
}

fn lengths_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let a = random_action(rng, 3);
    let w = random_word(rng, a.rank(), 1, 8);
    let l = a.translation_length(&w);
    let oracle = brute_force_length_auto(&a, &w, ORACLE_RADIUS).map_err(|e| e.to_string())?;
    if !oracle.stable || oracle.length != l {
        return Err(format!("{}: {l} vs oracle {}", format_word(a.alphabet(), &w), oracle.length));
    }
    Ok(())
}

fn conjugacy_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let u = random_word(rng, 2, 1, 4);
    let v = if rng.gen_bool(0.5) {
        u.conjugate_by(&random_word(rng, 2, 0, 2))
    } else {
        random_word(rng, 2, 1, 4)
    };
    // Breadth-first over reduced conjugators up to the cap.
    let mut layer = vec![Word::empty()];
    let mut brute = u == v;
    for _ in 0..CONJUGATOR_CAP.min(u.len() + v.len()) {
        if brute {
            break;
        }
        let mut next = Vec::new();
        for c in &layer {
            for g in 0..2 {
                for inv in [false, true] {
                    let l = Letter::new(g, inv);
                    if c.last().is_some_and(|t| t.cancels(l)) {
                        continue;
                    }
                    let mut letters = c.letters().to_vec();
                    letters.push(l);
                    next.push(Word::from_letters(letters));
                }
            }
        }
        brute = next.iter().any(|c| u.conjugate_by(c) == v);
        layer = next;
    }
    let fast = is_conjugate(&u, &v);
    let xy = Alphabet::of(&["x", "y"]);
    match (&fast, brute) {
        (Some(c), true) if u.conjugate_by(c) == v => Ok(()),
        (None, false) => Ok(()),
        _ => Err(format!(
            "{} ~ {}: decision {:?}, search {brute}",
            format_word(&xy, &u),
            format_word(&xy, &v),
            fast.map(|c| format_word(&xy, &c))
        )),
    }
}

fn classify_case(rng: &mut ChaCha8Rng) -> Result<(), String> {
    let c = ClassInput::new(nonzero(rng, 4), nonzero(rng, 4), nonzero(rng, 4), nonzero(rng, 4))
        .expect("nonzero parameters");
    let v = classify(c).map_err(|e| format!("{c}: {e}"))?;
    if !v.verified {
        return Err(format!("{c}: {} witness failed its checks", v.kind));
    }
    Ok(())
}

pub fn run_suite(suite: Suite, cases: usize, seed: u64) -> SuiteResult {
    let case = match suite {
        Suite::Commutator => commutator_case,
        Suite::Lengths => lengths_case,
        Suite::Conjugacy => conjugacy_case,
        Suite::Classify => classify_case,
    };
    let outcomes: Vec<Result<(), String>> = (0..cases)
        .into_par_iter()
        .map(|i| case(&mut case_rng(seed, i)))
        .collect();
    let failures: Vec<CaseFailure> = outcomes
        .into_iter()
        .enumerate()
        .filter_map(|(case, r)| r.err().map(|detail| CaseFailure { case, detail }))
        .collect();
    SuiteResult {
        suite,
        seed,
        cases,
        passed: cases - failures.len(),
        failures,
    }
}
