//! Brute-force translation lengths for ℤ-weighted trees.
//!
//! `d(v, wv)` is convex and piecewise linear along geodesics, with breaks
//! only at vertices, so its minimum over the subdivided tree is attained at a
//! vertex. A vertex minimizer strictly inside the searched ball is a local
//! minimum, hence global.

use num_traits::ToPrimitive;

use super::{CayleyTreeAction, TreeError};
use crate::freegrp::{Letter, Word};
use crate::ogroup::{ComponentKind, LexVector};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleLength {
    pub length: LexVector,
    /// The minimum was attained strictly inside the ball, so it is exact.
    pub stable: bool,
    pub minimizer: Word,
}

fn int_weights(a: &CayleyTreeAction) -> Result<Vec<i64>, TreeError> {
    let sig = a.signature();
    if sig.rank() != 1 || sig.kind(0) != ComponentKind::Integer {
        return Err(TreeError::NotInteger(sig.to_string()));
    }
    a.weights()
        .iter()
        .map(|w| w.coord(0).to_integer().to_i64().ok_or_else(|| TreeError::NotInteger(w.to_string())))
        .collect()
}

/// Weighted length of the free reduction of `v⁻¹ w v`.
fn displacement(weights: &[i64], v: &[Letter], w: &[Letter], stack: &mut Vec<Letter>) -> i64 {
    stack.clear();
    let inv = v.iter().rev().map(|l| l.inv());
    for l in inv.chain(w.iter().copied()).chain(v.iter().copied()) {
        if stack.last().is_some_and(|t| t.cancels(l)) {
            stack.pop();
        } else {
            stack.push(l);
        }
    }
    stack.iter().map(|l| weights[l.gen()]).sum()
}

struct Search<'a> {
    weights: Vec<i64>,
    rank: usize,
    w: &'a [Letter],
    radius: usize,
    inner: Option<(i64, Vec<Letter>)>,
    rim: Option<i64>,
    stack: Vec<Letter>,
}

impl Search<'_> {
    fn visit(&mut self, v: &mut Vec<Letter>) {
        let d = displacement(&self.weights, v, self.w, &mut self.stack);
        if v.len() < self.radius {
            if self.inner.as_ref().is_none_or(|(b, _)| d < *b) {
                self.inner = Some((d, v.clone()));
            }
        } else if self.rim.is_none_or(|b| d < b) {
            self.rim = Some(d);
        }
        if v.len() == self.radius {
            return;
        }
        for g in 0..self.rank {
            for inverse in [false, true] {
                let l = Letter::new(g, inverse);
                if v.last().is_some_and(|t| t.cancels(l)) {
                    continue;
                }
                v.push(l);
                self.visit(v);
                v.pop();
            }
        }
    }
}

/// Minimum of `d(v, wv)` over the vertices within `radius` letters of the
/// base. Needs weights in ℤ.
pub fn brute_force_length(
    a: &CayleyTreeAction,
    w: &Word,
    radius: usize,
) -> Result<OracleLength, TreeError> {
    a.check_word(w)?;
    let weights = int_weights(a)?;
    let w = w.reduce();
    let mut search = Search {
        weights,
        rank: a.rank(),
        w: w.letters(),
        radius,
        inner: None,
        rim: None,
        stack: Vec::new(),
    };
    search.visit(&mut Vec::new());
    let (length, stable, minimizer) = match (search.inner, search.rim) {
        (Some((d, v)), rim) => (d, rim.is_none_or(|r| d <= r), v),
        (None, Some(r)) => (r, false, Vec::new()),
        (None, None) => unreachable!("the base is always visited"),
    };
    Ok(OracleLength {
        length: LexVector::integers(&[length]),
        stable,
        minimizer: Word::from_letters(minimizer),
    })
}

/// Grows the radius until the oracle is stable, up to `max_radius`.
pub fn brute_force_length_auto(
    a: &CayleyTreeAction,
    w: &Word,
    max_radius: usize,
) -> Result<OracleLength, TreeError> {
    let mut radius = 1;
    loop {
        let r = brute_force_length(a, w, radius)?;
        if r.stable || radius >= max_radius {
            return Ok(r);
        }
        radius += 1;
    }
}
