//! Solvers for the dilations `θ_{g_e}` and for integer translation parts.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::smith::{solve_integer_system, IntegerSolution};
use super::{CombineError, EndAssignment, GraphOfGroups, VertexAction};
use crate::freegrp::{abelianization, format_word, Word};
use crate::ogroup::{
    coordinate_embedding, ComponentKind, GroupSignature, LexVector, OAutomorphism,
};
use crate::treecalc::{end_homomorphism, end_map};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Λ₀ = ℚ, stable letters act by positive rational scalings.
    ScaleQ,
    /// Λ₀ = ℤ², stable letters act by shears `(p,q) ↦ (p, q+ap)`.
    ShearZ2,
    /// Λ₀ = ℤ, trivial dilations and translation parts on vertex generators.
    C5Prime,
}

impl Strategy {
    pub fn name(self) -> &'static str {
        match self {
            Strategy::ScaleQ => "scaleq",
            Strategy::ShearZ2 => "shearz2",
            Strategy::C5Prime => "c5prime",
        }
    }

    pub fn signature(self) -> GroupSignature {
        match self {
            Strategy::ScaleQ => GroupSignature::rational(1),
            Strategy::ShearZ2 => GroupSignature::integer(2),
            Strategy::C5Prime => GroupSignature::integer(1),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "scaleq" => Ok(Strategy::ScaleQ),
            "shearz2" => Ok(Strategy::ShearZ2),
            "c5prime" => Ok(Strategy::C5Prime),
            other => Err(format!("unknown strategy {other:?} (expected scaleq, shearz2 or c5prime)")),
        }
    }
}

/// Solver output: vertex actions over the common Λ₀, the dilation `θ_{g_f}`
/// of every directed edge and the translation part of every vertex
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub strategy: Strategy,
    pub signature: GroupSignature,
    pub vertices: Vec<VertexAction>,
    pub theta: Vec<OAutomorphism>,
    pub mu: Vec<Vec<LexVector>>,
    pub transcript: Vec<String>,
}

impl Solution {
    /// `τ_f(w)` for a vertex word `w` at the origin of `f`.
    pub fn tau(&self, g: &GraphOfGroups, ends: &EndAssignment, f: usize, w: &Word) -> Result<LexVector, CombineError> {
        let vx = &self.vertices[g.edges[f].origin];
        Ok(end_homomorphism(&vx.ambient, &ends.ends[f], &vx.embed(w))?)
    }

    /// `δ_f(p)` for an ambient point `p` in the ball of the origin of `f`.
    pub fn delta(&self, g: &GraphOfGroups, ends: &EndAssignment, f: usize, p: &Word) -> Result<LexVector, CombineError> {
        let vx = &self.vertices[g.edges[f].origin];
        Ok(end_map(&vx.ambient, &ends.ends[f], p)?)
    }
}

fn strategy_error(strategy: Strategy, reason: String) -> CombineError {
    CombineError::Strategy {
        strategy: strategy.name().into(),
        reason,
    }
}

fn base_change(v: &VertexAction, strategy: Strategy) -> Result<VertexAction, CombineError> {
    let source = v.signature().clone();
    let target = strategy.signature();
    if source == target {
        return Ok(v.clone());
    }
    let position = match (strategy, source.components()) {
        (Strategy::ScaleQ, [_]) => 0,
        (Strategy::ShearZ2, [ComponentKind::Integer]) => 1,
        _ => {
            return Err(strategy_error(
                strategy,
                format!("vertex {} has weights in {source}, which does not embed in {target}", v.id),
            ))
        }
    };
    let h = coordinate_embedding(&source, &target, position)?;
    Ok(v.with_ambient(v.ambient.base_change(&h)?))
}

/// `θ` with `θ·x + y = 0`, for `x`, `y` of opposite signs.
fn solve_dilation(
    strategy: Strategy,
    edge: &str,
    x: &LexVector,
    y: &LexVector,
) -> Result<OAutomorphism, CombineError> {
    if x.is_positive() == y.is_positive() || x.is_zero() || y.is_zero() {
        return Err(CombineError::SameSign {
            edge: edge.into(),
            tau_e: x.to_string(),
            tau_ebar: y.to_string(),
        });
    }
    let sig = x.signature().clone();
    let theta = match strategy {
        Strategy::ScaleQ => {
            let q = -y.coord(0) / x.coord(0);
            OAutomorphism::scaling(&sig, q)?
        }
        Strategy::ShearZ2 => {
            let infeasible = || CombineError::ShearInfeasible {
                edge: edge.into(),
                tau_e: x.to_string(),
                tau_ebar: y.to_string(),
            };
            let (p1, q1) = (x.coord(0).to_integer(), x.coord(1).to_integer());
            let (p2, q2) = (y.coord(0).to_integer(), y.coord(1).to_integer());
            if !(&p1 + &p2).is_zero() {
                return Err(infeasible());
            }
            let s = q1 + q2;
            let a = if p1.is_zero() {
                if !s.is_zero() {
                    return Err(infeasible());
                }
                BigInt::zero()
            } else {
                if !(&s % &p1).is_zero() {
                    return Err(infeasible());
                }
                -(s / p1)
            };
            OAutomorphism::shear(&sig, 0, 1, BigRational::from_integer(a))?
        }
        Strategy::C5Prime => unreachable!("no dilations under the translation-part strategy"),
    };
    let check = theta.apply(x)? + y;
    assert!(check.is_zero(), "dilation solve violated θx + y = 0 on edge {edge}");
    Ok(theta)
}

fn edge_values(
    g: &GraphOfGroups,
    sol: &Solution,
    ends: &EndAssignment,
    e: usize,
) -> Result<(LexVector, LexVector), CombineError> {
    let r = g.edges[e].rev;
    Ok((
        sol.tau(g, ends, e, &ends.edge_element(g, e))?,
        sol.tau(g, ends, r, &ends.edge_element(g, r))?,
    ))
}

fn initial(g: &GraphOfGroups, strategy: Strategy) -> Result<Solution, CombineError> {
    let signature = strategy.signature();
    let vertices = g
        .vertices
        .iter()
        .map(|v| base_change(v, strategy))
        .collect::<Result<Vec<_>, _>>()?;
    let mu = vertices
        .iter()
        .map(|v| vec![LexVector::zero(&signature); v.rank()])
        .collect();
    Ok(Solution {
        strategy,
        theta: vec![OAutomorphism::identity(&signature); g.edges.len()],
        signature,
        vertices,
        mu,
        transcript: Vec::new(),
    })
}

/// Solves `θ_{g_e}·τ_e(α_e(s_e)) + τ_ē(α_ē(s_e)) = 0` for every non-tree
/// edge, after rescaling the vertex metrics along the maximal subtree so
/// that tree edges need no dilation.
pub fn solve_theta_ge(
    g: &GraphOfGroups,
    ends: &EndAssignment,
    strategy: Strategy,
) -> Result<Solution, CombineError> {
    if strategy == Strategy::C5Prime {
        return Err(strategy_error(strategy, "use solve_c5_prime".into()));
    }
    let mut sol = initial(g, strategy)?;
    sol.transcript.push(format!("Λ₀ = {}", sol.signature));

    // Rescale along the tree, starting from the first vertex.
    let mut fixed = vec![false; g.vertices.len()];
    fixed[0] = true;
    let mut queue = VecDeque::from([0]);
    while let Some(v) = queue.pop_front() {
        for f in g.edges_at(v) {
            let w = g.terminus(f);
            if !g.edges[f].in_tree || fixed[w] {
                continue;
            }
            fixed[w] = true;
            queue.push_back(w);
            if g.is_trivial_edge(f) {
                continue;
            }
            let r = g.edges[f].rev;
            let x = sol.tau(g, ends, f, &ends.edge_element(g, f))?;
            let y = sol.tau(g, ends, r, &ends.edge_element(g, r))?;
            let eta = solve_dilation(strategy, &g.edges[f].id, &y, &x)?;
            let rescaled = sol.vertices[w].ambient.rescale(&eta)?;
            sol.vertices[w] = sol.vertices[w].with_ambient(rescaled);
            let y2 = sol.tau(g, ends, r, &ends.edge_element(g, r))?;
            assert!((&x + &y2).is_zero(), "tree rescaling failed on edge {}", g.edges[f].id);
            sol.transcript.push(format!(
                "tree edge {}: rescale vertex {} by η = {eta}; τ values {x} and {y2}",
                g.edges[f].id, g.vertices[w].id
            ));
        }
    }

    for e in g.oriented_edges() {
        if g.is_trivial_edge(e) {
            continue;
        }
        let id = &g.edges[e].id;
        let (x, y) = edge_values(g, &sol, ends, e)?;
        if g.edges[e].in_tree {
            assert!((&x + &y).is_zero(), "tree edge {id} is not balanced");
            continue;
        }
        let theta = solve_dilation(strategy, id, &x, &y)?;
        let moved = theta.apply(&x)?;
        sol.transcript.push(format!(
            "edge {id}: τ_e(α_e(s_e)) = {x}, τ_ē(α_ē(s_e)) = {y}; θ = {theta}; θ·{x} + {y} = {}",
            moved + &y
        ));
        sol.theta[e] = theta;
    }
    Ok(sol)
}

/// Outcome of the integer translation-part system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum C5Outcome {
    Feasible {
        solution: Solution,
        rho: Vec<(String, BigInt)>,
    },
    Infeasible {
        equations: Vec<String>,
        /// Rational combination of the equations with integral left side and
        /// non-integral right side.
        certificate: Vec<String>,
    },
}

fn int_value(v: &LexVector, what: &str) -> Result<BigInt, CombineError> {
    if v.signature() != &GroupSignature::integer(1) {
        return Err(strategy_error(Strategy::C5Prime, format!("{what} = {v} is not in ℤ")));
    }
    Ok(v.coord(0).to_integer())
}

/// Solves `Σ uᵢρᵢ = Σ vᵢρᵢ = ℓ(v) − ℓ(u)` over ℤ for every edge pair at
/// once, where `u = α_e(s_e)` and `v = α_ē(s_e)`. Dilations are trivial.
pub fn solve_c5_prime(g: &GraphOfGroups, ends: &EndAssignment) -> Result<C5Outcome, CombineError> {
    let mut sol = initial(g, Strategy::C5Prime)?;
    let offsets: Vec<usize> = g
        .vertices
        .iter()
        .scan(0, |acc, v| {
            let o = *acc;
            *acc += v.rank();
            Some(o)
        })
        .collect();
    let unknowns = offsets.last().copied().unwrap_or(0) + g.vertices.last().map_or(0, VertexAction::rank);
    let names: Vec<String> = g
        .vertices
        .iter()
        .flat_map(|v| v.generators.names().iter().map(|n| format!("ρ_{n}")))
        .collect();

    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    let mut rhs: Vec<BigInt> = Vec::new();
    let mut equations = Vec::new();
    for e in g.oriented_edges() {
        if g.is_trivial_edge(e) {
            continue;
        }
        let r = g.edges[e].rev;
        let (u, v) = (ends.edge_element(g, e), ends.edge_element(g, r));
        let (ve, vr) = (g.edges[e].origin, g.edges[r].origin);
        let lu = int_value(&sol.vertices[ve].translation_length(&u), "ℓ(u)")?;
        let lv = int_value(&sol.vertices[vr].translation_length(&v), "ℓ(v)")?;
        let b = &lv - &lu;
        for (vertex, word) in [(ve, &u), (vr, &v)] {
            let mut row = vec![BigInt::zero(); unknowns];
            let ab = abelianization(word, g.vertices[vertex].rank());
            let mut terms = Vec::new();
            for (i, &k) in ab.iter().enumerate() {
                row[offsets[vertex] + i] = BigInt::from(k);
                if k != 0 {
                    terms.push(format!("{k}·{}", names[offsets[vertex] + i]));
                }
            }
            let lhs = if terms.is_empty() { "0".to_string() } else { terms.join(" + ") };
            equations.push(format!(
                "edge {} [{}]: {lhs} = {b}",
                g.edges[e].id,
                format_word(&g.vertices[vertex].generators, word)
            ));
            rows.push(row);
            rhs.push(b.clone());
        }
    }
    sol.transcript.extend(equations.iter().cloned());

    let rho = match solve_integer_system(&rows, unknowns, &rhs) {
        IntegerSolution::Infeasible { certificate } => {
            return Ok(C5Outcome::Infeasible {
                equations,
                certificate: certificate.iter().map(ToString::to_string).collect(),
            })
        }
        IntegerSolution::Solution(x) => x,
    };
    for (row, b) in rows.iter().zip(&rhs) {
        let lhs: BigInt = row.iter().zip(&rho).map(|(a, x)| a * x).sum();
        assert_eq!(&lhs, b, "translation-part solution fails substitution");
    }
    for (v, off) in offsets.iter().enumerate() {
        for i in 0..g.vertices[v].rank() {
            let value = rho[off + i].to_i64().map_or_else(
                || LexVector::new(GroupSignature::integer(1), vec![BigRational::from_integer(rho[off + i].clone())]),
                |k| Ok(LexVector::integers(&[k])),
            )?;
            sol.mu[v][i] = value;
        }
    }
    let assignments: Vec<(String, BigInt)> = names.into_iter().zip(rho).collect();
    sol.transcript.push(format!(
        "solution: {}",
        assignments
            .iter()
            .map(|(n, x)| format!("{n} = {x}"))
            .collect::<Vec<_>>()
            .join(", ")
    ));
    Ok(C5Outcome::Feasible {
        solution: sol,
        rho: assignments,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combine::assign_ends;
    use crate::freegrp::{parse_word, Alphabet};
    use crate::treecalc::CayleyTreeAction;

    fn hnn(action: CayleyTreeAction, u: &str, v: &str) -> GraphOfGroups {
        let vx = VertexAction::isometric("v", action);
        let a = vx.generators.clone();
        GraphOfGroups::one_edge_hnn(vx, parse_word(&a, u).unwrap(), parse_word(&a, v).unwrap()).unwrap()
    }

    fn unit_xy() -> CayleyTreeAction {
        CayleyTreeAction::unit(Alphabet::of(&["x", "y"]))
    }

    fn xz_vertex() -> VertexAction {
        let ambient = CayleyTreeAction::new(
            Alphabet::of(&["x", "z"]),
            vec![LexVector::integers(&[0, 2]), LexVector::integers(&[1, 0])],
        )
        .unwrap();
        let basis = vec![Word::gen(0), parse_word(ambient.alphabet(), "z^-1 x z").unwrap()];
        VertexAction::subgroup("v", Alphabet::of(&["x", "y"]), ambient, basis).unwrap()
    }

    fn r(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn scale_by_two() {
        let g = hnn(unit_xy(), "[x,y]", "[x^2,y^2]");
        let ends = assign_ends(&g).unwrap();
        let sol = solve_theta_ge(&g, &ends, Strategy::ScaleQ).unwrap();
        let sig = GroupSignature::rational(1);
        assert_eq!(sol.theta[0], OAutomorphism::scaling(&sig, r(2, 1)).unwrap());
        assert!(sol.theta[1].is_identity());
    }

    #[test]
    fn shear_on_the_xz_tree() {
        for (m, n, rr, s) in [(1, 1, 2, 2), (1, 1, 1, 1), (3, 1, 1, 1), (-2, 1, 3, -1)] {
            let vx = xz_vertex();
            let a = vx.generators.clone();
            let u = crate::freegrp::commutator_power(&Word::gen(0), &Word::gen(1), m, n).unwrap();
            let v = crate::freegrp::commutator_power(&Word::gen(0), &Word::gen(1), rr, s).unwrap();
            let g = GraphOfGroups::one_edge_hnn(vx, u, v).unwrap();
            let _ = a;
            let ends = assign_ends(&g).unwrap();
            let sol = solve_theta_ge(&g, &ends, Strategy::ShearZ2).unwrap();
            let shear = i64::abs(rr) - i64::abs(m) + i64::abs(s) - i64::abs(n);
            assert_eq!(sol.theta[0], OAutomorphism::z2_shear(shear), "{m} {n} {rr} {s}");
        }
    }

    #[test]
    fn shear_infeasible_when_leading_coordinates_differ() {
        let x = LexVector::integers(&[4, 1]);
        let y = LexVector::integers(&[-8, 0]);
        assert!(matches!(
            solve_dilation(Strategy::ShearZ2, "e", &x, &y),
            Err(CombineError::ShearInfeasible { .. })
        ));
        // Unit ℤ weights base-changed into ℤ²: lengths (0,4) and (0,8).
        let g = hnn(unit_xy(), "[x,y]", "[x^2,y^2]");
        let ends = assign_ends(&g).unwrap();
        assert!(matches!(
            solve_theta_ge(&g, &ends, Strategy::ShearZ2),
            Err(CombineError::ShearInfeasible { .. })
        ));
    }

    #[test]
    fn scale_examples() {
        let theta = solve_dilation(Strategy::ScaleQ, "e", &LexVector::rational(r(4, 1)), &LexVector::rational(r(-8, 1))).unwrap();
        assert_eq!(theta, OAutomorphism::scaling(&GroupSignature::rational(1), r(2, 1)).unwrap());
        assert!(matches!(
            solve_dilation(Strategy::ScaleQ, "e", &LexVector::rational(r(4, 1)), &LexVector::rational(r(8, 1))),
            Err(CombineError::SameSign { .. })
        ));
    }

    #[test]
    fn tree_edges_are_balanced_by_rescaling() {
        let text = r#"{
            "vertices": [
                {"id": "a", "generators": ["x", "y"], "weights": {"x": 1, "y": 1}},
                {"id": "b", "generators": ["p", "q"], "weights": {"p": 1, "q": 1}}
            ],
            "edges": [
                {"id": "e", "rev": "f", "origin": "a", "alpha": "[x,y]", "in_tree": true, "oriented": true},
                {"id": "f", "rev": "e", "origin": "b", "alpha": "[p^2,q]", "in_tree": true, "oriented": false},
                {"id": "h", "rev": "k", "origin": "a", "alpha": "x", "in_tree": false, "oriented": true},
                {"id": "k", "rev": "h", "origin": "b", "alpha": "p q", "in_tree": false, "oriented": false}
            ]
        }"#;
        let g = GraphOfGroups::from_spec(&serde_json::from_str(text).unwrap()).unwrap();
        let ends = assign_ends(&g).unwrap();
        let sol = solve_theta_ge(&g, &ends, Strategy::ScaleQ).unwrap();
        // ℓ[x,y] = 4, ℓ[p²,q] = 6, so b is rescaled by 2/3; then ℓ(pq) = 4/3.
        assert_eq!(sol.vertices[1].ambient.weight(0), &LexVector::rational(r(2, 3)));
        assert_eq!(sol.theta[2], OAutomorphism::scaling(&GroupSignature::rational(1), r(4, 3)).unwrap());
        assert!(sol.theta[0].is_identity());
    }

    #[test]
    fn c5_prime_examples() {
        // Commutators with equal lengths: ρ ≡ 0.
        let g = hnn(unit_xy(), "[x,y]", "[y,x^-1]");
        let ends = assign_ends(&g).unwrap();
        match solve_c5_prime(&g, &ends).unwrap() {
            C5Outcome::Feasible { rho, .. } => assert!(rho.iter().all(|(_, x)| x.is_zero())),
            other => panic!("{other:?}"),
        }
        // Different lengths: 0 = 4.
        let g = hnn(unit_xy(), "[x,y]", "[x^2,y^2]");
        let ends = assign_ends(&g).unwrap();
        assert!(matches!(solve_c5_prime(&g, &ends).unwrap(), C5Outcome::Infeasible { .. }));
        // u = x, v = y² with ℓ(x) = ℓ(y²) = 2.
        let g = hnn(CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y"]), &[2, 1]).unwrap(), "x", "y^2");
        let ends = assign_ends(&g).unwrap();
        match solve_c5_prime(&g, &ends).unwrap() {
            C5Outcome::Feasible { rho, .. } => assert!(rho.iter().all(|(_, x)| x.is_zero())),
            other => panic!("{other:?}"),
        }
        // u = x, v = y with ℓ(x) = 1, ℓ(y) = 3: ρ_x = ρ_y = 2.
        let g = hnn(CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y"]), &[1, 3]).unwrap(), "x", "y");
        let ends = assign_ends(&g).unwrap();
        match solve_c5_prime(&g, &ends).unwrap() {
            C5Outcome::Feasible { rho, solution } => {
                assert_eq!(rho.iter().map(|(_, x)| x.clone()).collect::<Vec<_>>(), vec![BigInt::from(2), BigInt::from(2)]);
                assert_eq!(solution.mu[0][1], LexVector::integers(&[2]));
            }
            other => panic!("{other:?}"),
        }
    }
}
