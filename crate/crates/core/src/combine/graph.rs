//! Graphs of groups with free vertex groups and cyclic edge groups.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::CombineError;
use crate::freegrp::{format_word, parse_word, Alphabet, Word};
use crate::ogroup::{GroupSignature, LexVector};
use crate::treecalc::CayleyTreeAction;

/// A free vertex group acting on a weighted Cayley tree.
///
/// The tree belongs to an ambient free group and each vertex generator is
/// sent to an ambient word, so subgroups such as `⟨x, z⁻¹xz⟩ ≤ F(x,z)` act by
/// restriction. The basis images must freely generate their span.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VertexAction {
    pub id: String,
    pub generators: Alphabet,
    pub ambient: CayleyTreeAction,
    pub basis: Vec<Word>,
}

impl VertexAction {
    /// The vertex group is the whole ambient group.
    pub fn isometric(id: impl Into<String>, action: CayleyTreeAction) -> Self {
        let basis = (0..action.rank()).map(Word::gen).collect();
        VertexAction {
            id: id.into(),
            generators: action.alphabet().clone(),
            ambient: action,
            basis,
        }
    }

    pub fn subgroup(
        id: impl Into<String>,
        generators: Alphabet,
        ambient: CayleyTreeAction,
        basis: Vec<Word>,
    ) -> Result<Self, CombineError> {
        let id = id.into();
        if basis.len() != generators.rank() {
            return Err(CombineError::Spec(format!(
                "vertex {id}: {} basis images for {} generators",
                basis.len(),
                generators.rank()
            )));
        }
        let mut reduced = Vec::with_capacity(basis.len());
        for (i, b) in basis.iter().enumerate() {
            let b = b.reduce();
            if b.is_empty() {
                return Err(CombineError::Spec(format!(
                    "vertex {id}: generator {} maps to the identity",
                    generators.name(i)
                )));
            }
            if b.letters().iter().any(|l| l.gen() >= ambient.rank()) {
                return Err(CombineError::Spec(format!("vertex {id}: basis word outside the ambient alphabet")));
            }
            reduced.push(b);
        }
        Ok(VertexAction {
            id,
            generators,
            ambient,
            basis: reduced,
        })
    }

    pub fn rank(&self) -> usize {
        self.generators.rank()
    }

    pub fn signature(&self) -> &GroupSignature {
        self.ambient.signature()
    }

    pub fn is_whole_ambient(&self) -> bool {
        self.basis.len() == self.ambient.rank()
            && self.basis.iter().enumerate().all(|(i, b)| *b == Word::gen(i))
    }

    /// Image of a vertex-group word in the ambient free group.
    pub fn embed(&self, w: &Word) -> Word {
        w.substitute(&self.basis)
    }

    pub fn translation_length(&self, w: &Word) -> LexVector {
        self.ambient.translation_length(&self.embed(w))
    }

    pub fn with_ambient(&self, ambient: CayleyTreeAction) -> Self {
        VertexAction {
            ambient,
            ..self.clone()
        }
    }
}

/// One directed edge. Each geometric edge appears twice, as `e` and `rev`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeData {
    pub id: String,
    pub rev: usize,
    pub origin: usize,
    /// Image of the edge-group generator in the origin vertex group; empty
    /// when the edge group is trivial.
    pub alpha: Word,
    pub in_tree: bool,
    pub oriented: bool,
    /// Name of `g_e`. Only the oriented edge of a non-tree pair carries one;
    /// `g_ē = 1`.
    pub stable_letter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphOfGroups {
    pub vertices: Vec<VertexAction>,
    pub edges: Vec<EdgeData>,
}

impl GraphOfGroups {
    pub fn new(vertices: Vec<VertexAction>, mut edges: Vec<EdgeData>) -> Result<Self, CombineError> {
        let bad = |m: String| Err(CombineError::Spec(m));
        if vertices.is_empty() {
            return bad("graph has no vertices".into());
        }
        let sig = vertices[0].signature().clone();
        let mut names = HashSet::new();
        for v in &vertices {
            if v.signature() != &sig {
                return bad(format!(
                    "vertex {} has signature {}, expected {sig}",
                    v.id,
                    v.signature()
                ));
            }
            for n in v.generators.names() {
                if !names.insert(n.clone()) {
                    return bad(format!("generator name {n} is used twice"));
                }
            }
        }
        let mut stable_count = 0;
        for (i, e) in edges.iter().enumerate() {
            let r = e.rev;
            if r >= edges.len() || r == i || edges[r].rev != i {
                return bad(format!("edge {}: reverse is not an involution", e.id));
            }
            let f = &edges[r];
            if e.origin >= vertices.len() {
                return bad(format!("edge {}: unknown origin", e.id));
            }
            if e.in_tree != f.in_tree {
                return bad(format!("edge {}: tree membership differs from its reverse", e.id));
            }
            if e.oriented == f.oriented {
                return bad(format!("edge {}: exactly one of e, ē must be oriented", e.id));
            }
            if e.alpha.reduce().is_empty() != f.alpha.reduce().is_empty() {
                return bad(format!("edge {}: trivial on one side only", e.id));
            }
            if e.alpha.letters().iter().any(|l| l.gen() >= vertices[e.origin].rank()) {
                return bad(format!("edge {}: alpha uses letters outside its vertex group", e.id));
            }
            if e.stable_letter.is_some() && (e.in_tree || !e.oriented) {
                return bad(format!(
                    "edge {}: only the oriented edge of a non-tree pair carries a stable letter",
                    e.id
                ));
            }
            if !e.in_tree && e.oriented {
                stable_count += 1;
            }
        }
        // Default stable letter names.
        let mut k = 0;
        for e in edges.iter_mut() {
            if !e.in_tree && e.oriented {
                k += 1;
                if e.stable_letter.is_none() {
                    e.stable_letter = Some(if stable_count == 1 { "t".into() } else { format!("t{k}") });
                }
                let n = e.stable_letter.clone().expect("just set");
                if !names.insert(n.clone()) {
                    return bad(format!("stable letter {n} clashes with another name"));
                }
            }
            e.alpha = e.alpha.reduce();
        }
        let g = GraphOfGroups { vertices, edges };
        g.check_tree()?;
        Ok(g)
    }

    fn check_tree(&self) -> Result<(), CombineError> {
        let n = self.vertices.len();
        let tree_pairs = self.edges.iter().filter(|e| e.in_tree && e.oriented).count();
        if tree_pairs + 1 != n {
            return Err(CombineError::Spec(format!(
                "maximal subtree has {tree_pairs} edges but there are {n} vertices"
            )));
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for e in self.edges.iter().filter(|e| e.in_tree && e.origin == v) {
                let w = self.edges[e.rev].origin;
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(CombineError::Spec("maximal subtree does not span the graph".into()));
        }
        Ok(())
    }

    pub fn signature(&self) -> &GroupSignature {
        self.vertices[0].signature()
    }

    pub fn is_single_vertex(&self) -> bool {
        self.vertices.len() == 1
    }

    /// `∂₁e`, the origin of the reverse edge.
    pub fn terminus(&self, e: usize) -> usize {
        self.edges[self.edges[e].rev].origin
    }

    /// Indices of the oriented edges, one per geometric edge.
    pub fn oriented_edges(&self) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].oriented).collect()
    }

    pub fn is_trivial_edge(&self, e: usize) -> bool {
        self.edges[e].alpha.is_empty()
    }

    /// Edges leaving vertex `v`.
    pub fn edges_at(&self, v: usize) -> Vec<usize> {
        (0..self.edges.len()).filter(|&i| self.edges[i].origin == v).collect()
    }

    fn vertex_offset(&self, v: usize) -> usize {
        self.vertices[..v].iter().map(VertexAction::rank).sum()
    }

    fn vertex_total(&self) -> usize {
        self.vertices.iter().map(VertexAction::rank).sum()
    }

    /// Generators of π₁: all vertex generators in vertex order, then the
    /// stable letters in edge order.
    pub fn gamma_alphabet(&self) -> Alphabet {
        let mut names: Vec<String> = self
            .vertices
            .iter()
            .flat_map(|v| v.generators.names().iter().cloned())
            .collect();
        names.extend(self.edges.iter().filter_map(|e| e.stable_letter.clone()));
        Alphabet::new(names).expect("names were checked for clashes")
    }

    /// Rewrites a vertex-group word over the π₁ alphabet.
    pub fn to_gamma(&self, v: usize, w: &Word) -> Word {
        let off = self.vertex_offset(v);
        let images: Vec<Word> = (0..self.vertices[v].rank()).map(|i| Word::gen(off + i)).collect();
        w.substitute(&images)
    }

    /// π₁ generator index of the stable letter of `e`, if it has one.
    pub fn stable_index(&self, e: usize) -> Option<usize> {
        self.edges[e].stable_letter.as_ref()?;
        let before = self.edges[..e].iter().filter(|f| f.stable_letter.is_some()).count();
        Some(self.vertex_total() + before)
    }

    /// `g_e` as a π₁ word.
    pub fn g_word(&self, e: usize) -> Word {
        match self.stable_index(e) {
            Some(i) => Word::gen(i),
            None => Word::empty(),
        }
    }

    /// Splits a π₁ generator into `(vertex, local generator)` or a stable edge.
    pub fn gamma_letter(&self, g: usize) -> GammaLetter {
        let mut off = 0;
        for (v, vx) in self.vertices.iter().enumerate() {
            if g < off + vx.rank() {
                return GammaLetter::Vertex(v, g - off);
            }
            off += vx.rank();
        }
        let k = g - off;
        let e = self
            .edges
            .iter()
            .enumerate()
            .filter(|(_, e)| e.stable_letter.is_some())
            .nth(k)
            .map(|(i, _)| i)
            .expect("generator index in range");
        GammaLetter::Stable(e)
    }

    pub fn from_spec(spec: &GraphSpec) -> Result<Self, CombineError> {
        let mut vertices = Vec::with_capacity(spec.vertices.len());
        let mut index = HashMap::new();
        for (i, v) in spec.vertices.iter().enumerate() {
            if index.insert(v.id.clone(), i).is_some() {
                return Err(CombineError::Spec(format!("duplicate vertex id {}", v.id)));
            }
            vertices.push(v.to_action()?);
        }
        let mut edge_index = HashMap::new();
        for (i, e) in spec.edges.iter().enumerate() {
            if edge_index.insert(e.id.clone(), i).is_some() {
                return Err(CombineError::Spec(format!("duplicate edge id {}", e.id)));
            }
        }
        let mut edges = Vec::with_capacity(spec.edges.len());
        for e in &spec.edges {
            let origin = *index
                .get(&e.origin)
                .ok_or_else(|| CombineError::Spec(format!("edge {}: unknown vertex {}", e.id, e.origin)))?;
            let rev = *edge_index
                .get(&e.rev)
                .ok_or_else(|| CombineError::Spec(format!("edge {}: unknown reverse {}", e.id, e.rev)))?;
            let alpha = parse_word(&vertices[origin].generators, &e.alpha)
                .map_err(|err| CombineError::Spec(format!("edge {}: {err}", e.id)))?;
            edges.push(EdgeData {
                id: e.id.clone(),
                rev,
                origin,
                alpha,
                in_tree: e.in_tree,
                oriented: e.oriented,
                stable_letter: e.stable_letter.clone(),
            });
        }
        Self::new(vertices, edges)
    }

    pub fn to_spec(&self) -> GraphSpec {
        GraphSpec {
            vertices: self.vertices.iter().map(VertexSpec::from_action).collect(),
            edges: self
                .edges
                .iter()
                .map(|e| EdgeSpec {
                    id: e.id.clone(),
                    rev: self.edges[e.rev].id.clone(),
                    origin: self.vertices[e.origin].id.clone(),
                    alpha: format_word(&self.vertices[e.origin].generators, &e.alpha),
                    in_tree: e.in_tree,
                    oriented: e.oriented,
                    stable_letter: e.stable_letter.clone(),
                })
                .collect(),
        }
    }

    /// One vertex `F(x,y)` with unit weights and the single loop
    /// `t·u·t⁻¹ = v`.
    pub fn one_edge_hnn(vertex: VertexAction, u: Word, v: Word) -> Result<Self, CombineError> {
        let edges = vec![
            EdgeData {
                id: "e".into(),
                rev: 1,
                origin: 0,
                alpha: u,
                in_tree: false,
                oriented: true,
                stable_letter: Some("t".into()),
            },
            EdgeData {
                id: "ebar".into(),
                rev: 0,
                origin: 0,
                alpha: v,
                in_tree: false,
                oriented: false,
                stable_letter: None,
            },
        ];
        Self::new(vec![vertex], edges)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GammaLetter {
    Vertex(usize, usize),
    Stable(usize),
}

/// Edge weight as written in a spec: an integer, text such as `"(0,2)"` or
/// `"1/2"`, or a full vector object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum WeightSpec {
    Int(i64),
    Text(String),
    Vector(LexVector),
}

impl WeightSpec {
    fn to_vector(&self, sig: Option<&GroupSignature>) -> Result<LexVector, CombineError> {
        let v = match self {
            WeightSpec::Int(k) => LexVector::parse(&k.to_string(), sig)?,
            WeightSpec::Text(t) => LexVector::parse(t, sig)?,
            WeightSpec::Vector(v) => v.clone(),
        };
        Ok(v)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AmbientSpec {
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    pub weights: BTreeMap<String, WeightSpec>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VertexSpec {
    pub id: String,
    pub generators: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub signature: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub weights: BTreeMap<String, WeightSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ambient: Option<AmbientSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub basis: Option<BTreeMap<String, String>>,
}

fn build_action(
    owner: &str,
    generators: &[String],
    signature: Option<&String>,
    weights: &BTreeMap<String, WeightSpec>,
) -> Result<CayleyTreeAction, CombineError> {
    let alphabet = Alphabet::new(generators.iter().cloned())
        .map_err(|e| CombineError::Spec(format!("vertex {owner}: {e}")))?;
    let sig = signature
        .map(|s| s.parse::<GroupSignature>())
        .transpose()?;
    if let Some(extra) = weights.keys().find(|k| alphabet.index_of(k).is_none()) {
        return Err(CombineError::Spec(format!("vertex {owner}: weight for unknown generator {extra}")));
    }
    let ws = generators
        .iter()
        .map(|g| {
            weights
                .get(g)
                .ok_or_else(|| CombineError::Spec(format!("vertex {owner}: no weight for {g}")))?
                .to_vector(sig.as_ref())
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(CayleyTreeAction::new(alphabet, ws)?)
}

fn weight_map(a: &CayleyTreeAction) -> BTreeMap<String, WeightSpec> {
    a.alphabet()
        .names()
        .iter()
        .zip(a.weights())
        .map(|(n, w)| (n.clone(), WeightSpec::Text(w.to_string())))
        .collect()
}

impl VertexSpec {
    fn to_action(&self) -> Result<VertexAction, CombineError> {
        match &self.ambient {
            None => {
                if self.basis.is_some() {
                    return Err(CombineError::Spec(format!("vertex {}: basis without ambient", self.id)));
                }
                let a = build_action(&self.id, &self.generators, self.signature.as_ref(), &self.weights)?;
                Ok(VertexAction::isometric(self.id.clone(), a))
            }
            Some(amb) => {
                if !self.weights.is_empty() {
                    return Err(CombineError::Spec(format!(
                        "vertex {}: weights belong to the ambient group",
                        self.id
                    )));
                }
                let ambient = build_action(&self.id, &amb.generators, amb.signature.as_ref(), &amb.weights)?;
                let generators = Alphabet::new(self.generators.iter().cloned())
                    .map_err(|e| CombineError::Spec(format!("vertex {}: {e}", self.id)))?;
                let basis_map = self
                    .basis
                    .as_ref()
                    .ok_or_else(|| CombineError::Spec(format!("vertex {}: ambient without basis", self.id)))?;
                let basis = self
                    .generators
                    .iter()
                    .map(|g| {
                        let text = basis_map
                            .get(g)
                            .ok_or_else(|| CombineError::Spec(format!("vertex {}: no basis image for {g}", self.id)))?;
                        parse_word(ambient.alphabet(), text)
                            .map_err(|e| CombineError::Spec(format!("vertex {}: {e}", self.id)))
                    })
                    .collect::<Result<Vec<_>, _>>()?;
                VertexAction::subgroup(self.id.clone(), generators, ambient, basis)
            }
        }
    }

    fn from_action(v: &VertexAction) -> Self {
        let signature = Some(v.signature().to_string());
        if v.is_whole_ambient() && v.generators == *v.ambient.alphabet() {
            return VertexSpec {
                id: v.id.clone(),
                generators: v.generators.names().to_vec(),
                signature,
                weights: weight_map(&v.ambient),
                ambient: None,
                basis: None,
            };
        }
        VertexSpec {
            id: v.id.clone(),
            generators: v.generators.names().to_vec(),
            signature: None,
            weights: BTreeMap::new(),
            ambient: Some(AmbientSpec {
                generators: v.ambient.alphabet().names().to_vec(),
                signature,
                weights: weight_map(&v.ambient),
            }),
            basis: Some(
                v.generators
                    .names()
                    .iter()
                    .zip(&v.basis)
                    .map(|(n, b)| (n.clone(), format_word(v.ambient.alphabet(), b)))
                    .collect(),
            ),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeSpec {
    pub id: String,
    pub rev: String,
    pub origin: String,
    pub alpha: String,
    pub in_tree: bool,
    pub oriented: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stable_letter: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphSpec {
    pub vertices: Vec<VertexSpec>,
    pub edges: Vec<EdgeSpec>,
}
