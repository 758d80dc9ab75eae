use super::{FreeGroupError, Letter, Word};

/// A cyclically reduced word considered up to rotation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CyclicWord {
    letters: Vec<Letter>,
}

/// Start index of the lexicographically least rotation (Booth).
pub fn least_rotation<T: Ord>(s: &[T]) -> usize {
    let n = s.len();
    if n == 0 {
        return 0;
    }
    let at = |i: usize| &s[i % n];
    let mut fail: Vec<isize> = vec![-1; 2 * n];
    let mut k: usize = 0;
    for j in 1..2 * n {
        let sj = at(j);
        let mut i = fail[j - k - 1];
        while i != -1 && sj != at(k + i as usize + 1) {
            if sj < at(k + i as usize + 1) {
                k = j - i as usize - 1;
            }
            i = fail[i as usize];
        }
        if sj != at(k + (i + 1) as usize) {
            if sj < at(k) {
                k = j;
            }
            fail[j - k] = -1;
        } else {
            fail[j - k] = i + 1;
        }
    }
    k % n
}

fn rotate<T: Clone>(s: &[T], i: usize) -> Vec<T> {
    let mut r = Vec::with_capacity(s.len());
    r.extend_from_slice(&s[i..]);
    r.extend_from_slice(&s[..i]);
    r
}

impl CyclicWord {
    /// Wraps letters that are already cyclically reduced.
    fn from_reduced(letters: Vec<Letter>) -> Self {
        CyclicWord { letters }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn as_word(&self) -> Word {
        Word::from_letters(self.letters.clone())
    }

    /// The least rotation, used as the canonical representative.
    pub fn canonical(&self) -> Vec<Letter> {
        rotate(&self.letters, least_rotation(&self.letters))
    }

    pub fn rotation(&self, i: usize) -> Vec<Letter> {
        rotate(&self.letters, i % self.len().max(1))
    }

    /// Some `i` with `rotation(i) == other`, if the words agree up to rotation.
    pub fn rotation_to(&self, other: &CyclicWord) -> Option<usize> {
        let n = self.len();
        if n != other.len() {
            return None;
        }
        if n == 0 {
            return Some(0);
        }
        let a = least_rotation(&self.letters);
        let b = least_rotation(&other.letters);
        if rotate(&self.letters, a) != rotate(&other.letters, b) {
            return None;
        }
        Some((a + n - b) % n)
    }

    /// Smallest period dividing the length, via the border array.
    fn primitive_period(&self) -> usize {
        let s = &self.letters;
        let n = s.len();
        let mut border = vec![0usize; n];
        let mut k = 0;
        for i in 1..n {
            while k > 0 && s[i] != s[k] {
                k = border[k - 1];
            }
            if s[i] == s[k] {
                k += 1;
            }
            border[i] = k;
        }
        let p = n - border[n - 1];
        if n.is_multiple_of(p) {
            p
        } else {
            n
        }
    }
}

/// Writes `w = c · core · c⁻¹` with the core cyclically reduced and no
/// cancellation in the product.
pub fn cyclic_reduce(w: &Word) -> (Word, CyclicWord) {
    let w = w.reduce();
    let s = w.letters();
    let mut i = 0;
    let mut j = s.len();
    while j - i >= 2 && s[i].cancels(s[j - 1]) {
        i += 1;
        j -= 1;
    }
    (
        Word::from_letters(s[..i].to_vec()),
        CyclicWord::from_reduced(s[i..j].to_vec()),
    )
}

/// Some `c` with `c·u·c⁻¹ = v`, or `None` when `u` and `v` are not conjugate.
pub fn is_conjugate(u: &Word, v: &Word) -> Option<Word> {
    let (a, ku) = cyclic_reduce(u);
    let (b, kv) = cyclic_reduce(v);
    let i = ku.rotation_to(&kv)?;
    // kv = p⁻¹·ku·p where p is the first i letters of ku.
    let p = Word::from_letters(ku.letters()[..i].to_vec());
    Some(b.mul(&p.inverse()).mul(&a.inverse()))
}

/// `Some((root, k))` with `root^k = u` and `k ≥ 2`, if `u` is a proper power.
pub fn is_proper_power(u: &Word) -> Result<Option<(Word, u32)>, FreeGroupError> {
    let (c, core) = cyclic_reduce(u);
    if core.is_empty() {
        return Err(FreeGroupError::TrivialWord);
    }
    let p = core.primitive_period();
    if p == core.len() {
        return Ok(None);
    }
    let root = Word::from_letters(core.letters()[..p].to_vec()).conjugate_by(&c);
    Ok(Some((root, (core.len() / p) as u32)))
}

/// Whether `u` is conjugate to `u⁻¹`.
pub fn conjugate_to_inverse(u: &Word) -> bool {
    let (_, k) = cyclic_reduce(u);
    let (_, ki) = cyclic_reduce(&u.inverse());
    k.rotation_to(&ki).is_some()
}

/// `Some(k)` with `w = base^k`, or `None` when `w ∉ ⟨base⟩`.
pub fn cyclic_membership(w: &Word, base: &Word) -> Option<i64> {
    let w = w.reduce();
    if w.is_empty() {
        return Some(0);
    }
    let (c, core) = cyclic_reduce(base);
    if core.is_empty() {
        return None;
    }
    let inner = c.inverse().mul(&w).mul(&c);
    let n = core.len();
    if inner.len() % n != 0 {
        return None;
    }
    let k = (inner.len() / n) as i64;
    let kw = core.as_word();
    if inner == kw.pow(k) {
        Some(k)
    } else if inner == kw.pow(-k) {
        Some(-k)
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;
    const Z: usize = 2;

    fn w(p: &[(usize, i64)]) -> Word {
        Word::from_powers(p)
    }

    fn naive_least_rotation(s: &[u8]) -> Vec<u8> {
        (0..s.len().max(1)).map(|i| rotate(s, i % s.len().max(1))).min().unwrap_or_default()
    }

    #[test]
    fn booth_matches_naive() {
        for s in [&b"bbaab"[..], b"aaaa", b"abab", b"cabcab", b"a", b"", b"bacbacbaa"] {
            let k = least_rotation(s);
            assert_eq!(rotate(s, k), naive_least_rotation(s), "{s:?}");
        }
    }

    #[test]
    fn cyclic_reduce_examples() {
        let (c, core) = cyclic_reduce(&w(&[(Z, -1), (X, 1), (Z, 1)]));
        assert_eq!(c, Word::gen_pow(Z, -1));
        assert_eq!(core.as_word(), Word::gen(X));

        let comm = w(&[(X, -1), (Y, -1), (X, 1), (Y, 1)]);
        let (c, core) = cyclic_reduce(&comm);
        assert!(c.is_empty());
        assert_eq!(core.as_word(), comm);

        // y x y⁻¹ x⁻¹ y starts and ends with y, so nothing cancels cyclically.
        let u = w(&[(Y, 1), (X, 1), (Y, -1), (X, -1), (Y, 1)]);
        let (c, core) = cyclic_reduce(&u);
        assert!(c.is_empty());
        assert_eq!(core.as_word(), u);
        assert_eq!(core.as_word().conjugate_by(&c), u);
    }

    #[test]
    fn conjugacy_examples() {
        let u = w(&[(X, -1), (Y, -1), (X, 1), (Y, 1)]);
        let c = w(&[(Y, -1), (X, 1), (Y, 1), (X, -1)]);
        let v = Word::from_letters(c.concat(&u).concat(&c.inverse()).into_letters()).reduce();
        let found = is_conjugate(&u, &v).unwrap();
        assert_eq!(u.conjugate_by(&found), v);

        assert_eq!(is_conjugate(&u, &u.inverse()), None);
        assert_eq!(is_conjugate(&u, &u), Some(Word::empty()));
        assert_eq!(is_conjugate(&Word::empty(), &Word::empty()), Some(Word::empty()));
        assert_eq!(is_conjugate(&Word::empty(), &u), None);
    }

    #[test]
    fn proper_power_examples() {
        let xy = w(&[(X, 1), (Y, 1)]);
        assert_eq!(is_proper_power(&xy.pow(3)), Ok(Some((xy.clone(), 3))));
        assert_eq!(is_proper_power(&w(&[(X, -1), (Y, -1), (X, 1), (Y, 1)])), Ok(None));
        let z = Word::gen(Z);
        let (root, k) = is_proper_power(&xy.pow(2).conjugate_by(&z)).unwrap().unwrap();
        assert_eq!(root, xy.conjugate_by(&z));
        assert_eq!(k, 2);
        assert_eq!(root.pow(2), xy.pow(2).conjugate_by(&z));
        assert_eq!(is_proper_power(&Word::empty()), Err(FreeGroupError::TrivialWord));
        assert_eq!(is_proper_power(&w(&[(X, 1), (Y, 1), (X, 1)])), Ok(None));
    }

    #[test]
    fn conjugate_to_inverse_examples() {
        assert!(!conjugate_to_inverse(&Word::gen(X)));
        assert!(!conjugate_to_inverse(&w(&[(X, -1), (Y, -1), (X, 1), (Y, 1)])));
        // The rotations of x y x⁻¹ y⁻¹ are xyXY, yXYx, XYxy, YxyX; its
        // inverse y x y⁻¹ x⁻¹ is none of them.
        let u = w(&[(X, 1), (Y, 1), (X, -1), (Y, -1)]);
        assert!(!conjugate_to_inverse(&u));
        assert!(conjugate_to_inverse(&Word::empty()));
    }

    #[test]
    fn membership() {
        let u = w(&[(X, 1), (Y, 1)]).conjugate_by(&Word::gen(Z));
        assert_eq!(cyclic_membership(&u.pow(3), &u), Some(3));
        assert_eq!(cyclic_membership(&u.pow(-2), &u), Some(-2));
        assert_eq!(cyclic_membership(&Word::empty(), &u), Some(0));
        assert_eq!(cyclic_membership(&Word::gen(X), &u), None);
        let sq = Word::gen_pow(X, 2);
        assert_eq!(cyclic_membership(&Word::gen(X), &sq), None);
        assert_eq!(cyclic_membership(&Word::gen_pow(X, -4), &sq), Some(-2));
    }
}
