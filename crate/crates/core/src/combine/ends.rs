//! Choice of the ends `ε_e` and of the orientation of each edge generator.

use super::{CombineError, GraphOfGroups};
use crate::freegrp::{format_word, is_conjugate, Word};
use crate::treecalc::{Direction, EndSpec};

/// Largest number of nontrivial edge pairs whose orientations are searched
/// exhaustively.
const MAX_SIGN_SEARCH: usize = 16;

/// Ends in the ambient trees of the vertex groups, one per directed edge.
///
/// Each pair `{e, ē}` gets a generator `s_e = s^σ`. Then `ε_e` is the
/// attracting end of `α_e(s_e)` and `ε_ē` the repelling end of `α_ē(s_e)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EndAssignment {
    pub ends: Vec<EndSpec>,
    pub signs: Vec<i64>,
}

impl EndAssignment {
    /// `α_f(s_e)` as a vertex-group word.
    pub fn edge_element(&self, g: &GraphOfGroups, f: usize) -> Word {
        g.edges[f].alpha.pow(self.signs[f])
    }

    /// The vertex-group element translating towards `ε_f`.
    pub fn toward(&self, g: &GraphOfGroups, f: usize) -> Word {
        let s = if g.edges[f].oriented { 1 } else { -1 };
        g.edges[f].alpha.pow(self.signs[f] * s)
    }

    pub fn describe(&self, g: &GraphOfGroups) -> Vec<String> {
        (0..g.edges.len())
            .map(|f| {
                let e = &g.edges[f];
                let gens = &g.vertices[e.origin].generators;
                match &self.ends[f] {
                    EndSpec::Aperiodic { pattern } => format!("{}: aperiodic end, pattern {pattern}", e.id),
                    EndSpec::Axis { direction, .. } => {
                        let kind = match direction {
                            Direction::Attracting => "attracting",
                            Direction::Repelling => "repelling",
                        };
                        format!(
                            "{}: {kind} end of {}",
                            e.id,
                            format_word(gens, &self.edge_element(g, f))
                        )
                    }
                }
            })
            .collect()
    }
}

/// Two directed edges at one vertex whose ends would share an orbit.
struct Clash {
    f: usize,
    g: usize,
    conjugator: Word,
}

fn first_clash(g: &GraphOfGroups, signs: &[i64]) -> Option<Clash> {
    for v in 0..g.vertices.len() {
        let at: Vec<usize> = g.edges_at(v).into_iter().filter(|&f| !g.is_trivial_edge(f)).collect();
        for (i, &f) in at.iter().enumerate() {
            for &h in &at[i + 1..] {
                let side = |k: usize| if g.edges[k].oriented { 1 } else { -1 };
                let a = g.edges[f].alpha.pow(signs[f] * side(f));
                let b = g.edges[h].alpha.pow(signs[h] * side(h));
                if let Some(c) = is_conjugate(&a, &b) {
                    return Some(Clash { f, g: h, conjugator: c });
                }
            }
        }
    }
    None
}

/// Picks orientations so that ends at a common vertex lie in distinct orbits
/// of the vertex group, then builds the ends.
pub fn assign_ends(g: &GraphOfGroups) -> Result<EndAssignment, CombineError> {
    let pairs: Vec<usize> = g
        .oriented_edges()
        .into_iter()
        .filter(|&e| !g.is_trivial_edge(e))
        .collect();
    let k = pairs.len().min(MAX_SIGN_SEARCH);
    let mut signs = vec![1i64; g.edges.len()];
    let mut found = None;
    for mask in 0u32..(1 << k) {
        for (i, &e) in pairs.iter().enumerate() {
            let s = if i < k && mask & (1 << i) != 0 { -1 } else { 1 };
            signs[e] = s;
            signs[g.edges[e].rev] = s;
        }
        if first_clash(g, &signs).is_none() {
            found = Some(signs.clone());
            break;
        }
    }
    let Some(signs) = found else {
        let all_plus = vec![1i64; g.edges.len()];
        let clash = first_clash(g, &all_plus).expect("the all-positive orientation clashes");
        let v = g.edges[clash.f].origin;
        return Err(CombineError::OrbitCollision {
            first: g.edges[clash.f].id.clone(),
            second: g.edges[clash.g].id.clone(),
            conjugator: format_word(&g.vertices[v].generators, &clash.conjugator),
        });
    };

    let mut ends = Vec::with_capacity(g.edges.len());
    let mut aperiodic = vec![0u32; g.vertices.len()];
    for (f, e) in g.edges.iter().enumerate() {
        let vx = &g.vertices[e.origin];
        if e.alpha.is_empty() {
            aperiodic[e.origin] += 1;
            if vx.ambient.rank() < 2 {
                return Err(CombineError::Spec(format!(
                    "edge {}: a trivial edge group needs a vertex group of rank at least 2",
                    e.id
                )));
            }
            ends.push(EndSpec::Aperiodic {
                pattern: aperiodic[e.origin],
            });
            continue;
        }
        let element = vx.embed(&e.alpha.pow(signs[f]));
        let direction = if e.oriented {
            Direction::Attracting
        } else {
            Direction::Repelling
        };
        ends.push(EndSpec::axis(element, Word::empty(), direction)?);
    }
    Ok(EndAssignment { ends, signs })
}
