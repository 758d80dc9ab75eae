//! Ends of the Cayley tree and their Busemann functions.

use super::{CayleyTreeAction, TreeError};
use crate::freegrp::{cyclic_membership, cyclic_reduce, is_proper_power, Letter, Word};
use crate::ogroup::LexVector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Attracting,
    Repelling,
}

impl Direction {
    pub fn flip(self) -> Self {
        match self {
            Direction::Attracting => Direction::Repelling,
            Direction::Repelling => Direction::Attracting,
        }
    }
}

/// An end of the Cayley tree.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum EndSpec {
    /// The attracting or repelling end of `conjugator · attractor · conjugator⁻¹`.
    Axis {
        attractor: Word,
        conjugator: Word,
        direction: Direction,
    },
    /// The ray `a bᵏ a² bᵏ a³ bᵏ …` on the first two generators. It is not
    /// eventually periodic, so its stabilizer is trivial, and different `k`
    /// give ends in different orbits.
    Aperiodic { pattern: u32 },
}

impl EndSpec {
    pub fn axis(attractor: Word, conjugator: Word, direction: Direction) -> Result<Self, TreeError> {
        if attractor.reduce().is_empty() {
            return Err(TreeError::TrivialElement);
        }
        Ok(EndSpec::Axis {
            attractor,
            conjugator,
            direction,
        })
    }

    /// The end `u` translates towards.
    pub fn attracting(u: &Word) -> Result<Self, TreeError> {
        Self::axis(u.clone(), Word::empty(), Direction::Attracting)
    }

    pub fn repelling(u: &Word) -> Result<Self, TreeError> {
        Self::axis(u.clone(), Word::empty(), Direction::Repelling)
    }

    /// The conjugated element whose axis converges to this end.
    fn element(&self) -> Option<Word> {
        match self {
            EndSpec::Axis {
                attractor,
                conjugator,
                ..
            } => Some(attractor.reduce().conjugate_by(&conjugator.reduce())),
            EndSpec::Aperiodic { .. } => None,
        }
    }

    fn check(&self, a: &CayleyTreeAction) -> Result<(), TreeError> {
        match self {
            EndSpec::Axis {
                attractor,
                conjugator,
                ..
            } => {
                a.check_word(attractor)?;
                a.check_word(conjugator)?;
                if attractor.reduce().is_empty() {
                    return Err(TreeError::TrivialElement);
                }
                Ok(())
            }
            EndSpec::Aperiodic { .. } if a.rank() < 2 => Err(TreeError::RankTooSmall),
            EndSpec::Aperiodic { .. } => Ok(()),
        }
    }

    /// The first `n` letters of the geodesic ray from the base to the end.
    pub fn ray_prefix(&self, n: usize) -> Word {
        match self {
            EndSpec::Axis { direction, .. } => {
                let g = self.element().expect("axis end");
                let (c, core) = cyclic_reduce(&g);
                let k: Vec<Letter> = match direction {
                    Direction::Attracting => core.letters().to_vec(),
                    Direction::Repelling => core.as_word().inverse().into_letters(),
                };
                let mut letters: Vec<Letter> = c.letters().iter().copied().take(n).collect();
                let mut i = 0;
                while letters.len() < n {
                    letters.push(k[i % k.len()]);
                    i += 1;
                }
                Word::from_letters(letters)
            }
            EndSpec::Aperiodic { pattern } => {
                let mut letters = Vec::with_capacity(n);
                let mut block = 1;
                'outer: loop {
                    for _ in 0..block {
                        if letters.len() == n {
                            break 'outer;
                        }
                        letters.push(Letter::new(0, false));
                    }
                    for _ in 0..*pattern {
                        if letters.len() == n {
                            break 'outer;
                        }
                        letters.push(Letter::new(1, false));
                    }
                    if letters.len() == n {
                        break;
                    }
                    block += 1;
                }
                Word::from_letters(letters)
            }
        }
    }

    /// Ray length after which the Busemann limit at `x` has stabilized.
    fn cutoff(&self, x: &Word) -> usize {
        match self.element() {
            Some(g) => {
                let (c, core) = cyclic_reduce(&g);
                x.len() + c.len() + 2 * core.len() + 1
            }
            None => x.len() + 1,
        }
    }
}

/// Busemann function `δ_ε(x) = lim d(base, pₙ) − d(x, pₙ)`, normalized so
/// that `δ_ε(base) = 0`.
pub fn end_map(a: &CayleyTreeAction, end: &EndSpec, x: &Word) -> Result<LexVector, TreeError> {
    end.check(a)?;
    a.check_word(x)?;
    let x = x.reduce();
    let p = end.ray_prefix(end.cutoff(&x));
    Ok(a.word_length(&p) - a.distance(&x, &p))
}

/// Generator of the stabilizer of the end: the root of the attractor,
/// conjugated back. Aperiodic ends have trivial stabilizer.
pub fn stabilizer_of_end(end: &EndSpec) -> Word {
    match end.element() {
        None => Word::empty(),
        Some(g) => match is_proper_power(&g) {
            Ok(Some((root, _))) => root,
            _ => g,
        },
    }
}

/// `τ_ε(s) = δ_ε(s·x) − δ_ε(x)`, evaluated at the base.
pub fn end_homomorphism(
    a: &CayleyTreeAction,
    end: &EndSpec,
    s: &Word,
) -> Result<LexVector, TreeError> {
    end.check(a)?;
    a.check_word(s)?;
    let root = stabilizer_of_end(end);
    let s = s.reduce();
    let fixes = if root.is_empty() {
        s.is_empty()
    } else {
        cyclic_membership(&s, &root).is_some()
    };
    if !fixes {
        return Err(TreeError::DoesNotFixEnd);
    }
    end_map(a, end, &s)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::{parse_word, Alphabet};

    fn uv() -> CayleyTreeAction {
        CayleyTreeAction::unit(Alphabet::of(&["u", "v"]))
    }

    fn int(k: i64) -> LexVector {
        LexVector::integers(&[k])
    }

    #[test]
    fn end_map_examples() {
        let a = uv();
        let u = Word::gen(0);
        let e = EndSpec::attracting(&u).unwrap();
        assert_eq!(end_map(&a, &e, &Word::empty()).unwrap(), int(0));
        assert_eq!(end_map(&a, &e, &u.pow(2)).unwrap(), int(2));
        assert_eq!(end_map(&a, &e, &u.inverse()).unwrap(), int(-1));
        assert_eq!(end_map(&a, &e, &Word::gen(1)).unwrap(), int(-1));
        let r = EndSpec::repelling(&u).unwrap();
        assert_eq!(end_map(&a, &r, &u.pow(2)).unwrap(), int(-2));
    }

    #[test]
    fn end_map_gains_distance_towards_the_end() {
        let a = CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y", "z"]), &[2, 3, 1]).unwrap();
        let e = EndSpec::axis(parse_word(a.alphabet(), "x y^-1").unwrap(), parse_word(a.alphabet(), "z").unwrap(), Direction::Attracting).unwrap();
        let x = parse_word(a.alphabet(), "y z^-1").unwrap();
        let ray = e.ray_prefix(12);
        // [x, ε) passes through x's projection onto the ray and then along it.
        let delta_x = end_map(&a, &e, &x).unwrap();
        for n in 6..12 {
            let y = Word::from_letters(ray.letters()[..n].to_vec());
            let gain = end_map(&a, &e, &y).unwrap() - &delta_x;
            assert_eq!(gain, a.distance(&x, &y));
        }
    }

    #[test]
    fn homomorphism_examples() {
        let a = uv();
        let u = Word::gen(0);
        let e = EndSpec::attracting(&u).unwrap();
        assert_eq!(end_homomorphism(&a, &e, &u).unwrap(), int(1));
        assert_eq!(end_homomorphism(&a, &e, &u.inverse()).unwrap(), int(-1));
        assert_eq!(end_homomorphism(&a, &e, &u.pow(2)).unwrap(), int(2));
        assert_eq!(end_homomorphism(&a, &e, &Word::gen(1)), Err(TreeError::DoesNotFixEnd));
    }

    #[test]
    fn homomorphism_is_additive_and_base_independent() {
        let a = CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y", "z"]), &[2, 3, 4]).unwrap();
        let g = parse_word(a.alphabet(), "x y x").unwrap().pow(2);
        let c = parse_word(a.alphabet(), "z y^-1").unwrap();
        for dir in [Direction::Attracting, Direction::Repelling] {
            let e = EndSpec::axis(g.clone(), c.clone(), dir).unwrap();
            let root = stabilizer_of_end(&e);
            assert_eq!(root, parse_word(a.alphabet(), "x y x").unwrap().conjugate_by(&c));
            let t1 = end_homomorphism(&a, &e, &root).unwrap();
            assert_eq!(t1.abs(), a.translation_length(&root));
            assert_eq!(t1.is_positive(), dir == Direction::Attracting);
            for k in -3..=3i64 {
                let tk = end_homomorphism(&a, &e, &root.pow(k)).unwrap();
                assert_eq!(tk, t1.scale_i64(k));
                for x in ["1", "y", "z^-1 x", "x y x z"] {
                    let x = parse_word(a.alphabet(), x).unwrap();
                    let sx = root.pow(k).mul(&x);
                    let diff = end_map(&a, &e, &sx).unwrap() - end_map(&a, &e, &x).unwrap();
                    assert_eq!(diff, tk);
                }
            }
        }
    }

    #[test]
    fn stabilizer_examples() {
        let a = Alphabet::of(&["x", "y", "z", "u"]);
        let u = Word::gen(3);
        assert_eq!(stabilizer_of_end(&EndSpec::attracting(&u).unwrap()), u);
        assert_eq!(stabilizer_of_end(&EndSpec::attracting(&u.pow(4)).unwrap()), u);
        let g = parse_word(&a, "z (x y)^2 z^-1").unwrap();
        assert_eq!(stabilizer_of_end(&EndSpec::attracting(&g).unwrap()), parse_word(&a, "z x y z^-1").unwrap());
        assert!(EndSpec::attracting(&Word::empty()).is_err());
    }

    #[test]
    fn aperiodic_ends() {
        let a = uv();
        let e = EndSpec::Aperiodic { pattern: 2 };
        assert_eq!(e.ray_prefix(9), parse_word(a.alphabet(), "u v^2 u^2 v^2 u^2").unwrap());
        assert_eq!(stabilizer_of_end(&e), Word::empty());
        assert_eq!(end_homomorphism(&a, &e, &Word::empty()).unwrap(), int(0));
        assert_eq!(end_homomorphism(&a, &e, &Word::gen(0)), Err(TreeError::DoesNotFixEnd));
        assert_eq!(end_map(&a, &e, &parse_word(a.alphabet(), "u v").unwrap()).unwrap(), int(2));
        let one = CayleyTreeAction::unit(Alphabet::of(&["u"]));
        assert_eq!(end_map(&one, &e, &Word::empty()), Err(TreeError::RankTooSmall));
    }
}
