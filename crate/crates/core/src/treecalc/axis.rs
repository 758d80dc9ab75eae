use std::collections::HashMap;

use num_bigint::BigInt;

use super::{CayleyTreeAction, TreeError};
use crate::freegrp::{cyclic_reduce, Word};
use crate::ogroup::LexVector;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MeetKind {
    Disjoint { bridge: LexVector },
    Point,
    Segment { overlap: LexVector },
}

impl MeetKind {
    pub fn name(&self) -> &'static str {
        match self {
            MeetKind::Disjoint { .. } => "disjoint",
            MeetKind::Point => "point",
            MeetKind::Segment { .. } => "segment",
        }
    }
}

/// How two axes sit relative to each other, with witnessing vertices: the
/// bridge ends (on `A_x`, then on `A_y`), the common vertex twice, or the two
/// ends of the overlap.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxisGeometry {
    pub meet: MeetKind,
    pub witnesses: (Word, Word),
}

/// Axis vertices `c·p` with `|c|+|p| ≤ radius`, ordered along the
/// translation direction.
fn axis_window(w: &Word, radius: usize) -> Result<Vec<Word>, TreeError> {
    let (c, core) = cyclic_reduce(w);
    if core.is_empty() {
        return Err(TreeError::TrivialElement);
    }
    let k = core.letters();
    let n = k.len();
    let reach = radius.saturating_sub(c.len());
    let mut behind = Vec::with_capacity(reach);
    let mut letters = c.letters().to_vec();
    for i in 0..reach {
        letters.push(k[n - 1 - i % n].inv());
        behind.push(Word::from_letters(letters.clone()));
    }
    let mut out: Vec<Word> = behind.into_iter().rev().collect();
    let mut letters = c.letters().to_vec();
    out.push(c.clone());
    for i in 0..reach {
        letters.push(k[i % n]);
        out.push(Word::from_letters(letters.clone()));
    }
    Ok(out)
}

/// Classifies `A_x` against `A_y` by enumerating both axes within a ball
/// around the base that is large enough to contain the bridge or overlap.
pub fn axis_geometry(
    a: &CayleyTreeAction,
    x: &Word,
    y: &Word,
) -> Result<AxisGeometry, TreeError> {
    a.check_word(x)?;
    a.check_word(y)?;
    let x = x.reduce();
    let y = y.reduce();
    if x.is_empty() || y.is_empty() {
        return Err(TreeError::TrivialElement);
    }
    if x.mul(&y) == y.mul(&x) {
        return Err(TreeError::Commuting);
    }
    let (_, kx) = cyclic_reduce(&x);
    let (_, ky) = cyclic_reduce(&y);
    let radius = x.len() + y.len() + kx.len() + ky.len() + 1;
    let ax = axis_window(&x, radius)?;
    let ay = axis_window(&y, radius)?;

    let index: HashMap<&Word, usize> = ax.iter().enumerate().map(|(i, v)| (v, i)).collect();
    let common: Vec<usize> = ay.iter().filter_map(|v| index.get(v).copied()).collect();

    if common.is_empty() {
        let mut best: Option<(LexVector, usize, usize)> = None;
        for (i, p) in ax.iter().enumerate() {
            for (j, q) in ay.iter().enumerate() {
                let d = a.distance(p, q);
                if best.as_ref().is_none_or(|(b, _, _)| d < *b) {
                    best = Some((d, i, j));
                }
            }
        }
        let (bridge, i, j) = best.expect("axis windows are nonempty");
        return Ok(AxisGeometry {
            meet: MeetKind::Disjoint { bridge },
            witnesses: (ax[i].clone(), ay[j].clone()),
        });
    }

    let lo = *common.iter().min().expect("nonempty");
    let hi = *common.iter().max().expect("nonempty");
    debug_assert_eq!(hi - lo + 1, common.len(), "axis intersection is a segment");
    if lo == 0 || hi + 1 == ax.len() {
        let overlap = a.distance(&ax[lo], &ax[hi]);
        return Err(TreeError::OverlapTooLong {
            overlap: overlap.to_string(),
            bound: "the enumeration window".to_string(),
        });
    }
    if lo == hi {
        return Ok(AxisGeometry {
            meet: MeetKind::Point,
            witnesses: (ax[lo].clone(), ax[lo].clone()),
        });
    }
    Ok(AxisGeometry {
        meet: MeetKind::Segment {
            overlap: a.distance(&ax[lo], &ax[hi]),
        },
        witnesses: (ax[lo].clone(), ax[hi].clone()),
    })
}

/// Closed-form translation length of `[x^m, y^n]` from the axis geometry.
pub fn commutator_length(
    a: &CayleyTreeAction,
    x: &Word,
    y: &Word,
    m: i64,
    n: i64,
) -> Result<LexVector, TreeError> {
    if m == 0 || n == 0 {
        return Err(TreeError::ZeroExponent);
    }
    let geometry = axis_geometry(a, x, y)?;
    let lx = a.translation_length(x).scale(&BigInt::from(m.unsigned_abs()));
    let ly = a.translation_length(y).scale(&BigInt::from(n.unsigned_abs()));
    let base = (&lx + &ly).scale_i64(2);
    Ok(match geometry.meet {
        MeetKind::Point => base,
        MeetKind::Disjoint { bridge } => base + bridge.scale_i64(4),
        MeetKind::Segment { overlap } => {
            let bound = &lx + &ly;
            if overlap >= bound {
                return Err(TreeError::OverlapTooLong {
                    overlap: overlap.to_string(),
                    bound: bound.to_string(),
                });
            }
            base - overlap.scale_i64(2)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::{commutator_power, parse_word, Alphabet};

    fn unit(names: &[&str]) -> CayleyTreeAction {
        CayleyTreeAction::unit(Alphabet::of(names))
    }

    fn xz_action() -> CayleyTreeAction {
        CayleyTreeAction::new(
            Alphabet::of(&["x", "z"]),
            vec![LexVector::integers(&[0, 2]), LexVector::integers(&[1, 0])],
        )
        .unwrap()
    }

    #[test]
    fn window_vertices_lie_on_the_axis() {
        let a = unit(&["x", "y", "z"]);
        let w = parse_word(a.alphabet(), "z x y x z^-1").unwrap();
        let l = a.translation_length(&w);
        for v in axis_window(&w, 9).unwrap() {
            let wv = w.mul(&v);
            assert_eq!(a.distance(&v, &wv), l);
        }
    }

    #[test]
    fn segment_example() {
        let a = unit(&["u", "v"]);
        let x = parse_word(a.alphabet(), "u^3 v").unwrap();
        let y = Word::gen(0);
        let g = axis_geometry(&a, &x, &y).unwrap();
        assert_eq!(g.meet, MeetKind::Segment { overlap: LexVector::integers(&[3]) });
        assert_eq!(commutator_length(&a, &x, &y, 1, 1).unwrap(), LexVector::integers(&[4]));
    }

    #[test]
    fn disjoint_example() {
        let a = xz_action();
        let x = Word::gen(0);
        let y = parse_word(a.alphabet(), "z^-1 x z").unwrap();
        let g = axis_geometry(&a, &x, &y).unwrap();
        assert_eq!(g.meet, MeetKind::Disjoint { bridge: LexVector::integers(&[1, 0]) });
        for (m, n) in [(1i64, 1i64), (2, -3), (-1, 2)] {
            let expected = LexVector::integers(&[4, 4 * m.abs() + 4 * n.abs()]);
            assert_eq!(commutator_length(&a, &x, &y, m, n).unwrap(), expected);
            let literal = commutator_power(&x, &y, m, n).unwrap();
            assert_eq!(a.translation_length(&literal), expected);
        }
    }

    #[test]
    fn point_example() {
        let a = CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y"]), &[3, 5]).unwrap();
        let g = axis_geometry(&a, &Word::gen(0), &Word::gen(1)).unwrap();
        assert_eq!(g.meet, MeetKind::Point);
        assert_eq!(g.witnesses.0, Word::empty());
        assert_eq!(
            commutator_length(&a, &Word::gen(0), &Word::gen(1), 2, -1).unwrap(),
            LexVector::integers(&[2 * 2 * 3 + 2 * 5])
        );
    }

    #[test]
    fn errors() {
        let a = unit(&["x", "y"]);
        let x = Word::gen(0);
        assert_eq!(axis_geometry(&a, &x, &Word::empty()), Err(TreeError::TrivialElement));
        assert_eq!(axis_geometry(&a, &x, &x.pow(3)), Err(TreeError::Commuting));
        assert_eq!(commutator_length(&a, &x, &Word::gen(1), 0, 1), Err(TreeError::ZeroExponent));
    }

    #[test]
    fn symmetric_and_conjugation_invariant() {
        let a = unit(&["x", "y", "z"]);
        let pairs = [("x y", "y x^2"), ("x z x^-1", "y"), ("x^2 y", "x y^-1"), ("z x y", "y^2 x")];
        let g = parse_word(a.alphabet(), "z y^-1 x").unwrap();
        for (p, q) in pairs {
            let x = parse_word(a.alphabet(), p).unwrap();
            let y = parse_word(a.alphabet(), q).unwrap();
            let forward = axis_geometry(&a, &x, &y).unwrap();
            let backward = axis_geometry(&a, &y, &x).unwrap();
            assert_eq!(forward.meet, backward.meet);
            let moved = axis_geometry(&a, &x.conjugate_by(&g), &y.conjugate_by(&g)).unwrap();
            assert_eq!(forward.meet, moved.meet);
        }
    }
}
