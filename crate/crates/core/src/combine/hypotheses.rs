//! Hypothesis checks on the edge words of a graph of groups.

use std::collections::{HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{assign_ends, CombineError, GraphOfGroups, HnnPresentation};
use crate::freegrp::{cyclic_membership, format_word, is_conjugate, is_proper_power, Word};
use crate::treecalc::{stabilizer_of_end, EndSpec};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Condition {
    NotProperPower,
    NotConjugateToPartnerInverse,
    NoElementConjugateToOwnInverse,
    C2Prime,
    EndStabilizerMatch,
    DistinctOrbitEnds,
}

impl Condition {
    pub const ALL: [Condition; 6] = [
        Condition::NotProperPower,
        Condition::NotConjugateToPartnerInverse,
        Condition::NoElementConjugateToOwnInverse,
        Condition::C2Prime,
        Condition::EndStabilizerMatch,
        Condition::DistinctOrbitEnds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Condition::NotProperPower => "not-proper-power",
            Condition::NotConjugateToPartnerInverse => "not-conjugate-to-partner-inverse",
            Condition::NoElementConjugateToOwnInverse => "no-element-conjugate-to-own-inverse",
            Condition::C2Prime => "C2'",
            Condition::EndStabilizerMatch => "end-stabilizer-match",
            Condition::DistinctOrbitEnds => "distinct-orbit-ends",
        }
    }
}

impl fmt::Display for Condition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Verdict {
    Pass,
    Fail { witness: String, detail: String },
    Unknown { reason: String },
}

impl Verdict {
    fn fail(witness: impl Into<String>, detail: impl Into<String>) -> Self {
        Verdict::Fail {
            witness: witness.into(),
            detail: detail.into(),
        }
    }

    pub fn is_pass(&self) -> bool {
        matches!(self, Verdict::Pass)
    }

    pub fn is_fail(&self) -> bool {
        matches!(self, Verdict::Fail { .. })
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Pass => f.write_str("Pass"),
            Verdict::Fail { witness, detail } => write!(f, "Fail (witness {witness}: {detail})"),
            Verdict::Unknown { reason } => write!(f, "Unknown ({reason})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub condition: Condition,
    pub subject: String,
    pub verdict: Verdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct HypothesisReport {
    pub checks: Vec<Check>,
}

impl HypothesisReport {
    /// Worst verdict for one condition: any Fail, else any Unknown, else Pass.
    pub fn verdict(&self, c: Condition) -> Verdict {
        let mine = self.checks.iter().filter(|k| k.condition == c);
        let mut unknown = None;
        for k in mine {
            match &k.verdict {
                Verdict::Fail { .. } => return k.verdict.clone(),
                Verdict::Unknown { .. } if unknown.is_none() => unknown = Some(k.verdict.clone()),
                _ => {}
            }
        }
        unknown.unwrap_or(Verdict::Pass)
    }

    pub fn summary(&self) -> Vec<(Condition, Verdict)> {
        Condition::ALL.iter().map(|&c| (c, self.verdict(c))).collect()
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|k| k.verdict.is_pass())
    }

    pub fn has_fail(&self) -> bool {
        self.checks.iter().any(|k| k.verdict.is_fail())
    }
}

fn vertex_text(g: &GraphOfGroups, f: usize, w: &Word) -> String {
    format_word(&g.vertices[g.edges[f].origin].generators, w)
}

fn gamma_text(g: &GraphOfGroups, w: &Word) -> String {
    format_word(&g.gamma_alphabet(), w)
}

fn proper_power(g: &GraphOfGroups, f: usize) -> Result<Option<(Word, u32)>, CombineError> {
    is_proper_power(&g.edges[f].alpha).map_err(|e| CombineError::Spec(e.to_string()))
}

/// Conjugator `c` in π₁ with `c·α_e·c⁻¹ = α_e⁻¹`, following vertex-group
/// conjugations and edge relations. Exact when no edge word is a proper power.
fn inverse_conjugator(g: &GraphOfGroups, e: usize) -> Option<Word> {
    let nodes: Vec<usize> = (0..g.edges.len()).filter(|&f| !g.is_trivial_edge(f)).collect();
    let mut seen: HashMap<(usize, i64), Word> = HashMap::new();
    let mut queue = VecDeque::new();
    seen.insert((e, 1), Word::empty());
    queue.push_back((e, 1i64));
    while let Some((f, sign)) = queue.pop_front() {
        let c = seen[&(f, sign)].clone();
        if (f, sign) == (e, -1) {
            return Some(c);
        }
        let v = g.edges[f].origin;
        let here = g.edges[f].alpha.pow(sign);
        let mut next = Vec::new();
        for &h in &nodes {
            if g.edges[h].origin != v {
                continue;
            }
            for s in [1, -1] {
                if let Some(d) = is_conjugate(&here, &g.edges[h].alpha.pow(s)) {
                    next.push(((h, s), g.to_gamma(v, &d).mul(&c)));
                }
            }
        }
        // g_f α_f g_f⁻¹ = g_f̄ α_f̄ g_f̄⁻¹.
        let r = g.edges[f].rev;
        let pass = g.g_word(r).inverse().mul(&g.g_word(f));
        next.push(((r, sign), pass.mul(&c)));
        for (key, word) in next {
            if let std::collections::hash_map::Entry::Vacant(slot) = seen.entry(key) {
                slot.insert(word);
                queue.push_back(key);
            }
        }
    }
    None
}

/// Runs every hypothesis check. `bound` limits the conjugator search used
/// when the exact π₁ test does not apply.
pub fn validate_hypotheses(g: &GraphOfGroups, bound: usize) -> Result<HypothesisReport, CombineError> {
    let mut checks = Vec::new();
    let mut any_power = false;

    for f in 0..g.edges.len() {
        if g.is_trivial_edge(f) {
            continue;
        }
        let edge = &g.edges[f];
        let subject = edge.id.clone();
        let alpha = &edge.alpha;
        let (npp, stab) = match proper_power(g, f)? {
            Some((root, k)) => {
                any_power = true;
                let w = format!("{} = ({})^{k}", vertex_text(g, f, alpha), vertex_text(g, f, &root));
                (
                    Verdict::fail(vertex_text(g, f, alpha), w.clone()),
                    Verdict::fail(
                        vertex_text(g, f, alpha),
                        format!("end stabilizer is generated by {}, not by the edge word", vertex_text(g, f, &root)),
                    ),
                )
            }
            None => {
                let end = EndSpec::attracting(alpha)?;
                let root = stabilizer_of_end(&end);
                let stab = match cyclic_membership(alpha, &root) {
                    Some(k) if k.abs() == 1 => Verdict::Pass,
                    other => Verdict::fail(
                        vertex_text(g, f, alpha),
                        format!("edge word is the power {other:?} of the stabilizer generator"),
                    ),
                };
                (Verdict::Pass, stab)
            }
        };
        checks.push(Check {
            condition: Condition::NotProperPower,
            subject: subject.clone(),
            verdict: npp,
        });
        checks.push(Check {
            condition: Condition::EndStabilizerMatch,
            subject,
            verdict: stab,
        });
    }

    for e in g.oriented_edges() {
        if g.is_trivial_edge(e) {
            continue;
        }
        let r = g.edges[e].rev;
        let subject = g.edges[e].id.clone();
        let (u, v) = (&g.edges[e].alpha, &g.edges[r].alpha);
        let partner = if g.edges[e].origin != g.edges[r].origin {
            Verdict::Pass
        } else {
            match is_conjugate(u, &v.inverse()) {
                Some(c) => Verdict::fail(
                    vertex_text(g, e, &c),
                    format!(
                        "conjugating {} by it gives the inverse of {}",
                        vertex_text(g, e, u),
                        vertex_text(g, r, v)
                    ),
                ),
                None => Verdict::Pass,
            }
        };
        checks.push(Check {
            condition: Condition::NotConjugateToPartnerInverse,
            subject: subject.clone(),
            verdict: partner,
        });

        let own = if !any_power {
            match inverse_conjugator(g, e) {
                Some(c) => Verdict::fail(
                    gamma_text(g, &c),
                    format!("conjugates {} to its inverse in π₁", vertex_text(g, e, u)),
                ),
                None => Verdict::Pass,
            }
        } else if g.is_single_vertex() {
            let pres = HnnPresentation::from_graph(g)?;
            let a = g.to_gamma(g.edges[e].origin, u);
            match pres.search_inverse_conjugator(&a, bound) {
                Some(c) => Verdict::fail(
                    gamma_text(g, &c),
                    format!("conjugates {} to its inverse in π₁", vertex_text(g, e, u)),
                ),
                None => Verdict::Unknown {
                    reason: format!("no conjugator of length ≤ {bound}; some edge word is a proper power"),
                },
            }
        } else {
            Verdict::Unknown {
                reason: "some edge word is a proper power and the graph has several vertices".into(),
            }
        };
        checks.push(Check {
            condition: Condition::NoElementConjugateToOwnInverse,
            subject,
            verdict: own,
        });
    }

    for (v, vx) in g.vertices.iter().enumerate() {
        let at: Vec<usize> = g.edges_at(v).into_iter().filter(|&f| !g.is_trivial_edge(f)).collect();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for &f in &at {
            let a = &g.edges[f].alpha;
            let home = classes.iter_mut().find(|cls| {
                let b = &g.edges[cls[0]].alpha;
                is_conjugate(a, b).is_some() || is_conjugate(a, &b.inverse()).is_some()
            });
            match home {
                Some(cls) => cls.push(f),
                None => classes.push(vec![f]),
            }
        }
        let verdict = match classes.iter().find(|cls| cls.len() >= 3) {
            Some(cls) => Verdict::fail(
                cls.iter().map(|&f| g.edges[f].id.as_str()).collect::<Vec<_>>().join(", "),
                "three edge words at one vertex are conjugate up to inversion".to_string(),
            ),
            None => Verdict::Pass,
        };
        checks.push(Check {
            condition: Condition::C2Prime,
            subject: vx.id.clone(),
            verdict,
        });
    }

    let orbits = match assign_ends(g) {
        Ok(_) => Verdict::Pass,
        Err(CombineError::OrbitCollision {
            first,
            second,
            conjugator,
        }) => Verdict::fail(conjugator, format!("ends of {first} and {second} share an orbit")),
        Err(other) => return Err(other),
    };
    checks.push(Check {
        condition: Condition::DistinctOrbitEnds,
        subject: "graph".into(),
        verdict: orbits,
    });
    Ok(HypothesisReport { checks })
}
