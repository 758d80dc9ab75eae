use std::fmt;

use super::FreeGroupError;

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: u32,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter {
            generator: generator as u32,
            inverse,
        }
    }

    pub fn gen(self) -> usize {
        self.generator as usize
    }

    pub fn sign(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn cancels(self, other: Letter) -> bool {
        self.generator == other.generator && self.inverse != other.inverse
    }
}

/// A word in the free generators. Constructors that take raw letters keep
/// them as given; group operations return freely reduced words.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Self {
        Word { letters: Vec::new() }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Self {
        Word { letters }
    }

    /// A single generator raised to `exponent`.
    pub fn gen_pow(generator: usize, exponent: i64) -> Self {
        let l = Letter::new(generator, exponent < 0);
        Word {
            letters: vec![l; exponent.unsigned_abs() as usize],
        }
    }

    pub fn gen(generator: usize) -> Self {
        Self::gen_pow(generator, 1)
    }

    /// Builds a word from `(generator, ±exponent)` pairs, then reduces.
    pub fn from_powers(powers: &[(usize, i64)]) -> Self {
        let mut w = Word::empty();
        for &(g, e) in powers {
            w.letters.extend(Self::gen_pow(g, e).letters);
        }
        w.reduce()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn first(&self) -> Option<Letter> {
        self.letters.first().copied()
    }

    pub fn last(&self) -> Option<Letter> {
        self.letters.last().copied()
    }

    /// Free reduction by a single stack pass.
    pub fn reduce(&self) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            match out.last() {
                Some(&top) if top.cancels(l) => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        Word { letters: out }
    }

    pub fn is_reduced(&self) -> bool {
        self.letters.windows(2).all(|p| !p[0].cancels(p[1]))
    }

    pub fn inverse(&self) -> Self {
        Word {
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Concatenation without reduction.
    pub fn concat(&self, other: &Word) -> Self {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word { letters }
    }

    /// Reduced product. Assumes both factors are reduced, so only the seam
    /// can cancel.
    pub fn mul(&self, other: &Word) -> Self {
        let mut k = 0;
        let (a, b) = (&self.letters, &other.letters);
        while k < a.len() && k < b.len() && a[a.len() - 1 - k].cancels(b[k]) {
            k += 1;
        }
        let mut letters = Vec::with_capacity(a.len() + b.len() - 2 * k);
        letters.extend_from_slice(&a[..a.len() - k]);
        letters.extend_from_slice(&b[k..]);
        Word { letters }
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { self.clone() };
        let mut acc = Word::empty();
        for _ in 0..n.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }

    /// `c · self · c⁻¹`, reduced.
    pub fn conjugate_by(&self, c: &Word) -> Self {
        c.mul(self).mul(&c.inverse())
    }

    /// Replaces each generator by a word and reduces.
    pub fn substitute(&self, images: &[Word]) -> Self {
        let mut out = Word::empty();
        for l in &self.letters {
            let img = &images[l.gen()];
            out = if l.inverse { out.mul(&img.inverse()) } else { out.mul(img) };
        }
        out
    }

    /// Largest generator index plus one (0 for the empty word).
    pub fn support_rank(&self) -> usize {
        self.letters.iter().map(|l| l.gen() + 1).max().unwrap_or(0)
    }
}

impl fmt::Display for Word {
    /// Debug-oriented rendering with generators named `g0, g1, …`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .letters
            .iter()
            .map(|l| format!("g{}{}", l.generator, if l.inverse { "^-1" } else { "" }))
            .collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `[x,y] = x⁻¹ y⁻¹ x y`.
pub fn commutator(x: &Word, y: &Word) -> Word {
    x.inverse().mul(&y.inverse()).mul(x).mul(y)
}

/// `[x^m, y^n]`, reduced.
pub fn commutator_power(x: &Word, y: &Word, m: i64, n: i64) -> Result<Word, FreeGroupError> {
    if m == 0 || n == 0 {
        return Err(FreeGroupError::ZeroExponent);
    }
    Ok(commutator(&x.pow(m), &y.pow(n)))
}

/// Exponent sums per generator.
pub fn abelianization(g: &Word, rank: usize) -> Vec<i64> {
    let mut v = vec![0; rank.max(g.support_rank())];
    for l in g.letters() {
        v[l.gen()] += l.sign();
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    const X: usize = 0;
    const Y: usize = 1;

    fn w(p: &[(usize, i64)]) -> Word {
        Word::from_powers(p)
    }

    #[test]
    fn reduce_examples() {
        let raw = Word::from_letters(vec![Letter::new(X, false), Letter::new(X, true), Letter::new(Y, false)]);
        assert_eq!(raw.reduce(), Word::gen(Y));
        assert_eq!(Word::empty().reduce(), Word::empty());
        let raw = Word::gen(X).concat(&Word::gen(Y)).concat(&Word::gen_pow(Y, -1)).concat(&Word::gen_pow(X, -1));
        assert!(raw.reduce().is_empty());
    }

    #[test]
    fn commutator_examples() {
        let (x, y) = (Word::gen(X), Word::gen(Y));
        assert_eq!(commutator_power(&x, &y, 1, 1).unwrap(), w(&[(X, -1), (Y, -1), (X, 1), (Y, 1)]));
        assert_eq!(commutator_power(&x, &y, 2, 2).unwrap(), w(&[(X, -2), (Y, -2), (X, 2), (Y, 2)]));
        assert!(commutator_power(&x, &x, 1, 1).unwrap().is_empty());
        assert_eq!(commutator_power(&x, &y, 0, 1), Err(FreeGroupError::ZeroExponent));
    }

    #[test]
    fn abelianization_examples() {
        let c = commutator_power(&Word::gen(X), &Word::gen(Y), 3, -2).unwrap();
        assert_eq!(abelianization(&c, 2), vec![0, 0]);
        assert_eq!(abelianization(&w(&[(X, 3), (Y, -1)]), 2), vec![3, -1]);
        assert_eq!(abelianization(&w(&[(0, 3), (1, 1)]), 2), vec![3, 1]);
    }

    #[test]
    fn mul_cancels_across_seam() {
        let a = w(&[(X, 1), (Y, 2)]);
        assert!(a.mul(&a.inverse()).is_empty());
        assert_eq!(a.pow(-2), a.inverse().mul(&a.inverse()));
        let sub = w(&[(X, 1), (Y, -1)]).substitute(&[w(&[(Y, 1)]), w(&[(X, 1), (Y, 1)])]);
        assert_eq!(sub, w(&[(Y, 1), (Y, -1), (X, -1)]));
    }
}
