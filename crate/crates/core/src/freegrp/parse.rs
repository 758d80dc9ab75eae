//! Text syntax for words.
//!
//! Accepted forms include `x^-1 y^-1 x y`, the compact `X Y x y` (an
//! uppercase letter is the inverse of its lowercase generator), brackets
//! `[u^3 v, u]` for commutators, parentheses with exponents `(x y)^3`, and
//! `1` for the identity. Printing always uses `^` exponents separated by
//! spaces, and `parse_word(format_word(w)) == w` for every word.

use thiserror::Error;

use super::{Alphabet, Letter, Word};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("word parse error at position {position}: {message}")]
pub struct WordParseError {
    pub position: usize,
    pub message: String,
}

struct Parser<'a> {
    chars: Vec<char>,
    pos: usize,
    alphabet: &'a Alphabet,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T, WordParseError> {
        Err(WordParseError {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.pos < self.chars.len() && self.chars[self.pos].is_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    /// Sequence of factors up to `]`, `,`, `)` or the end.
    fn word(&mut self) -> Result<Word, WordParseError> {
        let mut letters = Vec::new();
        loop {
            self.skip_ws();
            match self.peek() {
                None | Some(']') | Some(',') | Some(')') => break,
                Some('*') | Some('.') => {
                    self.pos += 1;
                }
                _ => letters.extend(self.factor()?.into_letters()),
            }
        }
        Ok(Word::from_letters(letters))
    }

    fn factor(&mut self) -> Result<Word, WordParseError> {
        let base = self.atom()?;
        self.skip_ws();
        if self.peek() == Some('^') {
            self.pos += 1;
            self.skip_ws();
            let e = self.integer()?;
            let letters = if e < 0 {
                let inv = base.inverse();
                (0..-e).flat_map(|_| inv.letters().to_vec()).collect()
            } else {
                (0..e).flat_map(|_| base.letters().to_vec()).collect()
            };
            return Ok(Word::from_letters(letters));
        }
        Ok(base)
    }

    fn integer(&mut self) -> Result<i64, WordParseError> {
        let start = self.pos;
        if matches!(self.peek(), Some('-') | Some('+')) {
            self.pos += 1;
        }
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse::<i64>() {
            Ok(v) if v.unsigned_abs() <= 1_000_000 => Ok(v),
            _ => {
                self.pos = start;
                self.err("expected an integer exponent")
            }
        }
    }

    fn expect(&mut self, c: char) -> Result<(), WordParseError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{c}'"))
        }
    }

    fn atom(&mut self) -> Result<Word, WordParseError> {
        match self.peek() {
            Some('[') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(',')?;
                let b = self.word()?;
                self.expect(']')?;
                // Expanded literally, without reduction.
                let mut letters = a.inverse().into_letters();
                letters.extend(b.inverse().into_letters());
                letters.extend(a.into_letters());
                letters.extend(b.into_letters());
                Ok(Word::from_letters(letters))
            }
            Some('(') => {
                self.pos += 1;
                let a = self.word()?;
                self.expect(')')?;
                Ok(a)
            }
            Some(_) => self.generator(),
            None => self.err("unexpected end of input"),
        }
    }

    fn generator(&mut self) -> Result<Word, WordParseError> {
        let rest: String = self.chars[self.pos..].iter().collect();
        let mut best: Option<(usize, usize)> = None;
        for (i, name) in self.alphabet.names().iter().enumerate() {
            if rest.starts_with(name.as_str()) {
                let n = name.chars().count();
                if best.is_none_or(|(_, m)| n > m) {
                    best = Some((i, n));
                }
            }
        }
        if let Some((g, n)) = best {
            self.pos += n;
            return Ok(Word::from_letters(vec![Letter::new(g, false)]));
        }
        let c = self.peek().expect("caller checked for input");
        if c.is_uppercase() {
            let lower: String = c.to_lowercase().collect();
            if let Some(g) = self.alphabet.index_of(&lower) {
                self.pos += 1;
                return Ok(Word::from_letters(vec![Letter::new(g, true)]));
            }
        }
        if c == '1' {
            self.pos += 1;
            return Ok(Word::empty());
        }
        self.err(format!("unknown generator at {c:?}"))
    }
}

/// Parses a word literally (no free reduction is applied).
pub fn parse_word(alphabet: &Alphabet, text: &str) -> Result<Word, WordParseError> {
    let mut p = Parser {
        chars: text.chars().collect(),
        pos: 0,
        alphabet,
    };
    let w = p.word()?;
    p.skip_ws();
    if p.pos < p.chars.len() {
        return p.err(format!("unexpected {:?}", p.chars[p.pos]));
    }
    Ok(w)
}

/// Prints runs of equal letters as powers: `x^-2 y x^3`; the empty word is `1`.
pub fn format_word(alphabet: &Alphabet, w: &Word) -> String {
    if w.is_empty() {
        return "1".to_string();
    }
    let mut parts = Vec::new();
    let letters = w.letters();
    let mut i = 0;
    while i < letters.len() {
        let l = letters[i];
        let mut j = i;
        while j < letters.len() && letters[j] == l {
            j += 1;
        }
        let e = (j - i) as i64 * l.sign();
        let name = alphabet.name(l.gen());
        parts.push(if e == 1 { name.to_string() } else { format!("{name}^{e}") });
        i = j;
    }
    parts.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xy() -> Alphabet {
        Alphabet::of(&["x", "y"])
    }

    #[test]
    fn syntaxes_agree() {
        let a = xy();
        let expected = Word::from_powers(&[(0, -1), (1, -1), (0, 1), (1, 1)]);
        assert_eq!(parse_word(&a, "x^-1 y^-1 x y").unwrap(), expected);
        assert_eq!(parse_word(&a, "X Y x y").unwrap(), expected);
        assert_eq!(parse_word(&a, "XYxy").unwrap(), expected);
        assert_eq!(parse_word(&a, "[x,y]").unwrap(), expected);
        assert_eq!(parse_word(&a, "[x^2, y^2]").unwrap().reduce(), Word::from_powers(&[(0, -2), (1, -2), (0, 2), (1, 2)]));
        assert_eq!(parse_word(&a, "(x y)^2").unwrap(), Word::from_powers(&[(0, 1), (1, 1), (0, 1), (1, 1)]));
        assert_eq!(parse_word(&a, "1").unwrap(), Word::empty());
        assert_eq!(parse_word(&a, "").unwrap(), Word::empty());
    }

    #[test]
    fn bracket_of_words() {
        let a = Alphabet::of(&["u", "v"]);
        let w = parse_word(&a, "[u^3 v, u]").unwrap().reduce();
        let x1 = Word::from_powers(&[(0, 3), (1, 1)]);
        assert_eq!(w, super::super::commutator(&x1, &Word::gen(0)));
    }

    #[test]
    fn errors_carry_positions() {
        let a = xy();
        let e = parse_word(&a, "x y q").unwrap_err();
        assert_eq!(e.position, 4);
        let e = parse_word(&a, "[x, y").unwrap_err();
        assert_eq!(e.position, 5);
        let e = parse_word(&a, "x^").unwrap_err();
        assert_eq!(e.position, 2);
    }

    #[test]
    fn round_trip() {
        let a = Alphabet::of(&["x", "y", "t"]);
        for text in ["x^-1 y^-1 x y", "t x^2 t^-1 x^-1", "x x^-1", "1", "y^5 x^-3"] {
            let w = parse_word(&a, text).unwrap();
            assert_eq!(parse_word(&a, &format_word(&a, &w)).unwrap(), w);
        }
        assert_eq!(format_word(&a, &parse_word(&a, "X X y").unwrap()), "x^-2 y");
    }

    #[test]
    fn longest_name_wins() {
        let a = Alphabet::of(&["x", "x1", "y"]);
        let w = parse_word(&a, "x1 x y").unwrap();
        assert_eq!(w.letters()[0].gen(), 1);
        assert_eq!(w.len(), 3);
    }
}
