//! Britton normal forms in HNN extensions of a free group along cyclic
//! subgroups, `⟨F, t₁, …, t_k | tᵢ uᵢ tᵢ⁻¹ = vᵢ⟩`.

use super::{CombineError, GraphOfGroups};
use crate::freegrp::{cyclic_membership, Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HnnPresentation {
    alphabet: Alphabet,
    vertex_rank: usize,
    /// `(uᵢ, vᵢ)` with `tᵢ uᵢ tᵢ⁻¹ = vᵢ`, as vertex words.
    stables: Vec<(Word, Word)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Syllable {
    Vertex(Word),
    Stable { index: usize, inverse: bool },
}

/// Alternating vertex words and stable letters with no pinch.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BrittonWord {
    pub syllables: Vec<Syllable>,
}

/// Cyclically reduced shape of an element up to conjugacy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyclicForm {
    /// Conjugate into the vertex group, to this vertex word.
    Elliptic(Word),
    /// A cyclically pinch-free word with this many stable letters.
    Hyperbolic { stable_count: usize, word: Word },
}

impl BrittonWord {
    pub fn stable_count(&self) -> usize {
        self.syllables
            .iter()
            .filter(|s| matches!(s, Syllable::Stable { .. }))
            .count()
    }

    pub fn is_trivial(&self) -> bool {
        self.syllables.is_empty()
    }

    /// The vertex word when there are no stable letters.
    pub fn vertex_word(&self) -> Option<Word> {
        match self.syllables.as_slice() {
            [] => Some(Word::empty()),
            [Syllable::Vertex(w)] => Some(w.clone()),
            _ => None,
        }
    }
}

impl HnnPresentation {
    pub fn new(
        vertex: &Alphabet,
        stables: Vec<(String, Word, Word)>,
    ) -> Result<Self, CombineError> {
        let vertex_rank = vertex.rank();
        let alphabet = vertex
            .extended(stables.iter().map(|(n, _, _)| n.clone()))
            .map_err(|e| CombineError::Spec(e.to_string()))?;
        let mut pairs = Vec::with_capacity(stables.len());
        for (name, u, v) in stables {
            let (u, v) = (u.reduce(), v.reduce());
            if [&u, &v].iter().any(|w| w.letters().iter().any(|l| l.gen() >= vertex_rank)) {
                return Err(CombineError::Spec(format!("stable letter {name}: words outside the vertex group")));
            }
            if u.is_empty() != v.is_empty() {
                return Err(CombineError::Spec(format!("stable letter {name}: trivial on one side only")));
            }
            pairs.push((u, v));
        }
        Ok(HnnPresentation {
            alphabet,
            vertex_rank,
            stables: pairs,
        })
    }

    pub fn from_graph(g: &GraphOfGroups) -> Result<Self, CombineError> {
        if !g.is_single_vertex() {
            return Err(CombineError::MultiVertex);
        }
        let stables = g
            .edges
            .iter()
            .filter(|e| e.stable_letter.is_some())
            .map(|e| {
                let name = e.stable_letter.clone().expect("filtered");
                (name, e.alpha.clone(), g.edges[e.rev].alpha.clone())
            })
            .collect();
        let p = Self::new(&g.vertices[0].generators, stables)?;
        debug_assert_eq!(p.alphabet, g.gamma_alphabet());
        Ok(p)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_rank(&self) -> usize {
        self.vertex_rank
    }

    pub fn stable_count(&self) -> usize {
        self.stables.len()
    }

    pub fn stable_letter(&self, i: usize) -> Word {
        Word::gen(self.vertex_rank + i)
    }

    fn is_stable(&self, l: Letter) -> bool {
        l.gen() >= self.vertex_rank
    }

    pub fn britton_reduce(&self, w: &Word) -> BrittonWord {
        let mut stack: Vec<Syllable> = Vec::new();
        for &l in w.letters() {
            if self.is_stable(l) {
                self.push_stable(&mut stack, l.gen() - self.vertex_rank, l.inverse);
            } else {
                push_vertex(&mut stack, &Word::from_letters(vec![l]));
            }
        }
        BrittonWord { syllables: stack }
    }

    fn push_stable(&self, stack: &mut Vec<Syllable>, index: usize, inverse: bool) {
        let n = stack.len();
        let (middle, below) = match stack.last() {
            Some(Syllable::Vertex(w)) => (w.clone(), n.checked_sub(2).map(|i| &stack[i])),
            _ => (Word::empty(), stack.last()),
        };
        if let Some(&Syllable::Stable { index: j, inverse: below_inverse }) = below {
            if j == index && below_inverse != inverse {
                let (u, v) = &self.stables[index];
                // t x t⁻¹ with x ∈ ⟨u⟩, or t⁻¹ x t with x ∈ ⟨v⟩.
                let (base, image) = if below_inverse { (v, u) } else { (u, v) };
                if let Some(k) = cyclic_membership(&middle, base) {
                    if !middle.is_empty() {
                        stack.pop();
                    }
                    stack.pop();
                    push_vertex(stack, &image.pow(k));
                    return;
                }
            }
        }
        stack.push(Syllable::Stable { index, inverse });
    }

    pub fn to_word(&self, b: &BrittonWord) -> Word {
        let mut letters = Vec::new();
        for s in &b.syllables {
            match s {
                Syllable::Vertex(w) => letters.extend_from_slice(w.letters()),
                Syllable::Stable { index, inverse } => {
                    letters.push(Letter::new(self.vertex_rank + index, *inverse))
                }
            }
        }
        Word::from_letters(letters)
    }

    /// Whether `w` is trivial in the HNN extension.
    pub fn is_trivial(&self, w: &Word) -> bool {
        self.britton_reduce(w).is_trivial()
    }

    /// Freely reduced and free of pinches.
    pub fn is_reduced(&self, w: &Word) -> bool {
        if !w.is_reduced() {
            return false;
        }
        let stable = w.letters().iter().filter(|l| self.is_stable(**l)).count();
        self.britton_reduce(w).stable_count() == stable
    }

    pub fn cyclic_form(&self, w: &Word) -> CyclicForm {
        let mut b = self.britton_reduce(w);
        loop {
            let k = b.stable_count();
            if k == 0 {
                return CyclicForm::Elliptic(b.vertex_word().expect("no stable letters"));
            }
            // Conjugate so the word starts with a stable letter.
            let mut syl = b.syllables.clone();
            if let Some(Syllable::Vertex(_)) = syl.first() {
                let first = syl.remove(0);
                syl.push(first);
            }
            let w1 = self.to_word(&BrittonWord { syllables: syl }).reduce();
            let b1 = self.britton_reduce(&w1);
            // Move the last stable letter and its tail to the front.
            let syl = b1.syllables;
            let cut = syl
                .iter()
                .rposition(|s| matches!(s, Syllable::Stable { .. }))
                .expect("k > 0");
            let rotated: Vec<Syllable> = syl[cut..].iter().chain(&syl[..cut]).cloned().collect();
            let w2 = self.to_word(&BrittonWord { syllables: rotated }).reduce();
            let b2 = self.britton_reduce(&w2);
            if b2.stable_count() == k {
                return CyclicForm::Hyperbolic {
                    stable_count: k,
                    word: self.to_word(&b2),
                };
            }
            b = b2;
        }
    }

    /// A conjugator of length at most `bound` taking `a` to `a⁻¹`, if any.
    pub fn search_inverse_conjugator(&self, a: &Word, bound: usize) -> Option<Word> {
        all_reduced_words(self.alphabet.rank(), bound)
            .into_iter()
            .find(|c| self.is_trivial(&c.mul(a).mul(&c.inverse()).mul(a)))
    }
}

fn push_vertex(stack: &mut Vec<Syllable>, w: &Word) {
    if w.is_empty() {
        return;
    }
    if let Some(Syllable::Vertex(top)) = stack.last_mut() {
        *top = top.mul(w);
        if top.is_empty() {
            stack.pop();
        }
        return;
    }
    stack.push(Syllable::Vertex(w.reduce()));
}

/// All freely reduced words of length at most `len` over `rank` generators,
/// by length and then letter order.
pub(crate) fn all_reduced_words(rank: usize, len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    let mut layer = vec![Vec::<Letter>::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in 0..rank {
                for inverse in [false, true] {
                    let l = Letter::new(g, inverse);
                    if w.last().is_some_and(|t| t.cancels(l)) {
                        continue;
                    }
                    let mut v = w.clone();
                    v.push(l);
                    next.push(v);
                }
            }
        }
        out.extend(next.iter().cloned().map(Word::from_letters));
        layer = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freegrp::{format_word, parse_word};

    fn gamma_1122() -> HnnPresentation {
        let a = Alphabet::of(&["x", "y"]);
        HnnPresentation::new(
            &a,
            vec![(
                "t".into(),
                parse_word(&a, "[x,y]").unwrap(),
                parse_word(&a, "[x^2,y^2]").unwrap(),
            )],
        )
        .unwrap()
    }

    fn w(p: &HnnPresentation, s: &str) -> Word {
        parse_word(p.alphabet(), s).unwrap()
    }

    #[test]
    fn pinches() {
        let p = gamma_1122();
        let b = p.britton_reduce(&w(&p, "t [x,y] t^-1"));
        assert_eq!(b.vertex_word(), Some(w(&p, "[x^2,y^2]")));
        let b = p.britton_reduce(&w(&p, "t^-1 [x^2,y^2]^3 t"));
        assert_eq!(b.vertex_word(), Some(w(&p, "[x,y]^3")));
        let b = p.britton_reduce(&w(&p, "t x t^-1"));
        assert_eq!(b.stable_count(), 2);
        assert!(p.is_reduced(&w(&p, "t x t^-1")));
        assert!(!p.is_reduced(&w(&p, "t [x,y] t^-1")));
        let g = w(&p, "x t y^-1 t^-1 x t");
        assert!(p.is_trivial(&g.concat(&g.inverse())));
        assert!(p.is_trivial(&w(&p, "t [x,y] t^-1 [x^2,y^2]^-1")));
    }

    #[test]
    fn nested_pinches() {
        let a = Alphabet::of(&["x", "y"]);
        let p = HnnPresentation::new(&a, vec![("t".into(), Word::gen(0), parse_word(&a, "[x,y]").unwrap())]).unwrap();
        // t² x t⁻² = t [x,y] t⁻¹ is not a pinch, so it stays.
        let b = p.britton_reduce(&w(&p, "t^2 x t^-2"));
        assert_eq!(b.stable_count(), 2);
        assert_eq!(format_word(p.alphabet(), &p.to_word(&b)), "t x^-1 y^-1 x y t^-1");
        let v2 = w(&p, "[[x,y], t y t^-1]");
        assert!(p.is_trivial(&v2.mul(&w(&p, "t^2 x^-1 t^-2"))));
    }

    #[test]
    fn cyclic_forms() {
        let p = gamma_1122();
        match p.cyclic_form(&w(&p, "x t [x,y] t^-1 x^-1")) {
            CyclicForm::Elliptic(e) => assert!(crate::freegrp::is_conjugate(&e, &w(&p, "[x^2,y^2]")).is_some()),
            other => panic!("{other:?}"),
        }
        match p.cyclic_form(&w(&p, "y t x")) {
            CyclicForm::Hyperbolic { stable_count, .. } => assert_eq!(stable_count, 1),
            other => panic!("{other:?}"),
        }
        // Pinch across the seam: t⁻¹ · x · t [x,y] … after rotation.
        let g = w(&p, "[x,y] t x t^-1");
        match p.cyclic_form(&g) {
            CyclicForm::Hyperbolic { stable_count, .. } => assert_eq!(stable_count, 2),
            other => panic!("{other:?}"),
        }
        // The seam t·[x,y]²·t⁻¹ pinches only cyclically.
        let g = w(&p, "t^-1 y t [x,y]^2");
        assert!(p.is_reduced(&g));
        let target = w(&p, "y [x^2,y^2]^2");
        for h in [g.clone(), g.conjugate_by(&w(&p, "t x"))] {
            match p.cyclic_form(&h) {
                CyclicForm::Elliptic(e) => assert!(crate::freegrp::is_conjugate(&e, &target).is_some()),
                other => panic!("{other:?}"),
            }
        }
        assert!(p.search_inverse_conjugator(&w(&p, "[x,y]"), 3).is_none());
        assert_eq!(p.cyclic_form(&w(&p, "1")), CyclicForm::Elliptic(Word::empty()));
    }

    #[test]
    fn word_enumeration() {
        assert_eq!(all_reduced_words(2, 2).len(), 1 + 4 + 12);
        assert!(all_reduced_words(3, 3).iter().all(Word::is_reduced));
    }
}
