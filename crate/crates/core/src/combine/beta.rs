//! The homomorphism β from π₁ to the affine maps of ℤ×Λ₀.

use serde::{Deserialize, Serialize};

use super::{CombineError, EndAssignment, GammaLetter, GraphOfGroups, Solution};
use crate::freegrp::{Alphabet, Word};
use crate::ogroup::{AffineMap, GroupSignature, LexVector};

/// One verified identity, kept for the report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub edge: String,
    pub condition: String,
    pub lhs: String,
    pub rhs: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaAssignment {
    pub signature: GroupSignature,
    pub alphabet: Alphabet,
    pub images: Vec<AffineMap>,
    inverses: Vec<AffineMap>,
    pub relations: Vec<RelationRecord>,
}

impl BetaAssignment {
    pub fn new(signature: GroupSignature, alphabet: Alphabet, images: Vec<AffineMap>) -> Self {
        let inverses = images.iter().map(AffineMap::invert).collect();
        BetaAssignment {
            signature,
            alphabet,
            images,
            inverses,
            relations: Vec::new(),
        }
    }

    /// β of a π₁ word.
    pub fn of_word(&self, w: &Word) -> AffineMap {
        let mut acc = AffineMap::identity(&self.signature);
        for l in w.letters() {
            let m = if l.inverse {
                &self.inverses[l.gen()]
            } else {
                &self.images[l.gen()]
            };
            acc = acc.compose(m).expect("β images share one signature");
        }
        acc
    }

    /// Generator name and image, in alphabet order.
    pub fn table(&self) -> Vec<(String, AffineMap)> {
        self.alphabet
            .names()
            .iter()
            .cloned()
            .zip(self.images.iter().cloned())
            .collect()
    }
}

struct Recorder<'a> {
    edge: &'a str,
    records: Vec<RelationRecord>,
}

impl Recorder<'_> {
    fn check<T: PartialEq + ToString>(&mut self, condition: &str, lhs: &T, rhs: &T) -> Result<(), CombineError> {
        if lhs != rhs {
            return Err(CombineError::RelationFailure {
                edge: self.edge.into(),
                condition: condition.into(),
                lhs: lhs.to_string(),
                rhs: rhs.to_string(),
            });
        }
        self.records.push(RelationRecord {
            edge: self.edge.into(),
            condition: condition.into(),
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        });
        Ok(())
    }
}

/// Vertex generators map to `(1, μ)`, stable letters to `(θ_{g_e}, 0)`.
/// Every edge relation is then verified exactly.
pub fn build_beta(
    g: &GraphOfGroups,
    sol: &Solution,
    ends: &EndAssignment,
) -> Result<BetaAssignment, CombineError> {
    let alphabet = g.gamma_alphabet();
    let sig = sol.signature.clone();
    let images = (0..alphabet.rank())
        .map(|i| match g.gamma_letter(i) {
            GammaLetter::Vertex(v, k) => AffineMap::translation(sol.mu[v][k].clone()),
            GammaLetter::Stable(e) => AffineMap::dilation(sol.theta[e].clone()),
        })
        .collect();
    let mut beta = BetaAssignment::new(sig.clone(), alphabet, images);
    let mut records = Vec::new();

    for (f, edge) in g.edges.iter().enumerate() {
        let mut rec = Recorder {
            edge: &edge.id,
            records: Vec::new(),
        };
        // g_f = 1 forces θ_{g_f} = 1.
        let gf = beta.of_word(&g.g_word(f));
        rec.check("β(g_f) carries θ_{g_f}", gf.theta(), &sol.theta[f])?;
        if g.g_word(f).is_empty() {
            rec.check("C3_IE: θ_{g_f} = 1 when g_f = 1", &gf, &AffineMap::identity(&sig))?;
        }
        records.append(&mut rec.records);
    }

    for e in g.oriented_edges() {
        if g.is_trivial_edge(e) {
            continue;
        }
        let r = g.edges[e].rev;
        let mut rec = Recorder {
            edge: &g.edges[e].id,
            records: Vec::new(),
        };
        let (ve, vr) = (g.edges[e].origin, g.edges[r].origin);
        let (u, v) = (ends.edge_element(g, e), ends.edge_element(g, r));
        let ug = g.to_gamma(ve, &u);
        let vg = g.to_gamma(vr, &v);
        let (ge, gr) = (g.g_word(e), g.g_word(r));

        let lhs = beta.of_word(&ug.conjugate_by(&ge));
        let rhs = beta.of_word(&vg.conjugate_by(&gr));
        rec.check("Bass–Serre: β(g_e α_e(s) g_e⁻¹) = β(g_ē α_ē(s) g_ē⁻¹)", &lhs, &rhs)?;

        let mu_e = beta.of_word(&ug).mu().clone();
        for (f, word) in [(e, &ug), (r, &vg)] {
            let mu_f = beta.of_word(word).mu().clone();
            let moved = sol.theta[f].apply(&mu_f)?;
            rec.check("C4_IE: θ_{g_f} μ_{α_f(s)} = μ_{α_{|e|}(s)}", &moved, &mu_e)?;
        }

        let te = sol.tau(g, ends, e, &u)?;
        let tr = sol.tau(g, ends, r, &v)?;
        let sum: LexVector = sol.theta[e].apply(&te)? + sol.theta[r].apply(&tr)?;
        rec.check("C5_IE: θ_{g_e}τ_e α_e(s) + θ_{g_ē}τ_ē α_ē(s) = −μ_{α_e(s)}", &sum, &-&mu_e)?;
        records.append(&mut rec.records);
    }
    beta.relations = records;
    Ok(beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combine::{assign_ends, solve_c5_prime, solve_theta_ge, C5Outcome, Strategy, VertexAction};
    use crate::freegrp::parse_word;
    use crate::ogroup::OAutomorphism;
    use crate::treecalc::CayleyTreeAction;
    use num_rational::BigRational;

    fn gamma_1122() -> GraphOfGroups {
        let vx = VertexAction::isometric("v", CayleyTreeAction::unit(Alphabet::of(&["x", "y"])));
        let a = vx.generators.clone();
        GraphOfGroups::one_edge_hnn(vx, parse_word(&a, "[x,y]").unwrap(), parse_word(&a, "[x^2,y^2]").unwrap()).unwrap()
    }

    #[test]
    fn scale_q_beta() {
        let g = gamma_1122();
        let ends = assign_ends(&g).unwrap();
        let sol = solve_theta_ge(&g, &ends, Strategy::ScaleQ).unwrap();
        let beta = build_beta(&g, &sol, &ends).unwrap();
        let sig = GroupSignature::rational(1);
        let two = OAutomorphism::scaling(&sig, BigRational::from_integer(2.into())).unwrap();
        assert_eq!(beta.images[2], AffineMap::dilation(two));
        assert!(beta.images[0].is_identity());
        assert!(beta.relations.iter().any(|r| r.condition.starts_with("Bass")));
        assert_eq!(beta.table()[2].0, "t");
    }

    #[test]
    fn corrupted_theta_fails() {
        let g = gamma_1122();
        let ends = assign_ends(&g).unwrap();
        let mut sol = solve_theta_ge(&g, &ends, Strategy::ScaleQ).unwrap();
        sol.theta[0] = OAutomorphism::scaling(&sol.signature, BigRational::from_integer(3.into())).unwrap();
        match build_beta(&g, &sol, &ends) {
            Err(CombineError::RelationFailure { condition, .. }) => assert!(condition.starts_with("C5_IE")),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn identity_beta_for_isometric_matching_lengths() {
        let vx = VertexAction::isometric("v", CayleyTreeAction::unit(Alphabet::of(&["x", "y"])));
        let a = vx.generators.clone();
        let g = GraphOfGroups::one_edge_hnn(vx, parse_word(&a, "[x,y]").unwrap(), parse_word(&a, "[y,x^-1]").unwrap()).unwrap();
        let ends = assign_ends(&g).unwrap();
        let C5Outcome::Feasible { solution, .. } = solve_c5_prime(&g, &ends).unwrap() else {
            panic!("feasible")
        };
        let beta = build_beta(&g, &solution, &ends).unwrap();
        assert!(beta.images.iter().all(AffineMap::is_identity));
        assert_eq!(beta.table().len(), 3);
    }

    #[test]
    fn translation_parts_satisfy_relations() {
        let vx = VertexAction::isometric("v", CayleyTreeAction::with_int_weights(Alphabet::of(&["x", "y"]), &[1, 3]).unwrap());
        let g = GraphOfGroups::one_edge_hnn(vx, Word::gen(0), Word::gen(1)).unwrap();
        let ends = assign_ends(&g).unwrap();
        let C5Outcome::Feasible { solution, .. } = solve_c5_prime(&g, &ends).unwrap() else {
            panic!("feasible")
        };
        let beta = build_beta(&g, &solution, &ends).unwrap();
        assert_eq!(beta.images[0], AffineMap::translation(LexVector::integers(&[2])));
    }
}
