//! Letters, words and the complement involution.
//!
//! Letters are identified by their token; the position of a token in the
//! `alphabet` line is its canonical rank and every sweep in this crate visits
//! letters in that order.

use std::collections::HashMap;
use std::fmt;
use std::ops::Deref;

use crate::error::{Error, Result};

/// Index of a letter in its [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub usize);

impl Letter {
    #[inline]
    pub fn index(self) -> usize {
        self.0
    }
}

/// A finite alphabet equipped with a self-inverse complement map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    tokens: Vec<String>,
    complement: Vec<Letter>,
    lookup: HashMap<String, Letter>,
}

impl Alphabet {
    /// Builds an alphabet from its tokens and the complement pairs.
    ///
    /// Every letter must occur in exactly one pair; a pair `(x, x)` makes `x`
    /// a fixed point of the involution.
    pub fn new<S: AsRef<str>>(tokens: &[S], pairs: &[(S, S)]) -> Result<Self> {
        if tokens.len() < 2 {
            return Err(Error::InvalidAlphabet(
                "an alphabet needs at least 2 letters".into(),
            ));
        }
        let mut lookup = HashMap::with_capacity(tokens.len());
        for (i, t) in tokens.iter().enumerate() {
            let t = t.as_ref();
            if lookup.insert(t.to_string(), Letter(i)).is_some() {
                return Err(Error::InvalidAlphabet(format!("letter {t} listed twice")));
            }
        }
        let mut complement: Vec<Option<Letter>> = vec![None; tokens.len()];
        for (x, y) in pairs {
            let (x, y) = (x.as_ref(), y.as_ref());
            let lx = *lookup.get(x).ok_or_else(|| Error::UnknownLetter(x.into()))?;
            let ly = *lookup.get(y).ok_or_else(|| Error::UnknownLetter(y.into()))?;
            for (l, name) in [(lx, x), (ly, y)] {
                if complement[l.0].is_some() {
                    return Err(Error::InvalidAlphabet(format!(
                        "letter {name} complemented twice"
                    )));
                }
            }
            complement[lx.0] = Some(ly);
            complement[ly.0] = Some(lx);
        }
        let complement = complement
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                c.ok_or_else(|| {
                    Error::InvalidAlphabet(format!("letter {} has no complement", tokens[i].as_ref()))
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Alphabet {
            tokens: tokens.iter().map(|t| t.as_ref().to_string()).collect(),
            complement,
            lookup,
        })
    }

    /// `a, abar, b, bbar, ...` for `pairs` complementary pairs.
    pub fn with_pairs(pairs: usize) -> Self {
        let names: Vec<char> = ('a'..='z').collect();
        let mut tokens = Vec::new();
        let mut pairs_out = Vec::new();
        for c in names.iter().take(pairs) {
            tokens.push(c.to_string());
            tokens.push(format!("{c}bar"));
            pairs_out.push((c.to_string(), format!("{c}bar")));
        }
        Alphabet::new(&tokens, &pairs_out).expect("generated alphabet is valid")
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn letters(&self) -> impl ExactSizeIterator<Item = Letter> + Clone {
        (0..self.tokens.len()).map(Letter)
    }

    #[inline]
    pub fn complement(&self, a: Letter) -> Letter {
        self.complement[a.0]
    }

    pub fn token(&self, a: Letter) -> &str {
        &self.tokens[a.0]
    }

    pub fn letter(&self, token: &str) -> Result<Letter> {
        self.lookup
            .get(token)
            .copied()
            .ok_or_else(|| Error::UnknownLetter(token.into()))
    }

    /// Unordered complement pairs in canonical order, each listed once.
    pub fn complement_pairs(&self) -> Vec<(Letter, Letter)> {
        self.letters()
            .filter(|&a| self.complement(a) >= a)
            .map(|a| (a, self.complement(a)))
            .collect()
    }

    /// Reverses `w` and complements every letter.
    pub fn bar(&self, w: &[Letter]) -> Word {
        Word(w.iter().rev().map(|&a| self.complement(a)).collect())
    }

    /// Parses a comma-joined word; `-` (or the empty string) is the empty word.
    pub fn parse_word(&self, text: &str) -> Result<Word> {
        let text = text.trim();
        if text.is_empty() || text == "-" {
            return Ok(Word::empty());
        }
        text.split(',')
            .map(|t| self.letter(t.trim()))
            .collect::<Result<Vec<_>>>()
            .map(Word)
    }

    /// Comma-joined rendering of `w`; the empty word prints as `-`.
    pub fn format_word(&self, w: &[Letter]) -> String {
        if w.is_empty() {
            return "-".to_string();
        }
        w.iter()
            .map(|&a| self.token(a))
            .collect::<Vec<_>>()
            .join(",")
    }

    /// Checks that every letter index of `w` lies inside this alphabet.
    pub fn check_word(&self, w: &[Letter]) -> Result<()> {
        match w.iter().find(|a| a.0 >= self.len()) {
            Some(a) => Err(Error::UnknownLetter(format!("#{}", a.0))),
            None => Ok(()),
        }
    }
}

/// A word over some alphabet; the empty word is the neutral element.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn concat(parts: &[&[Letter]]) -> Self {
        Word(parts.iter().flat_map(|p| p.iter().copied()).collect())
    }

    pub fn repeat(w: &[Letter], times: usize) -> Self {
        Word(w.repeat(times))
    }

    /// The first `len` letters of the infinite word `w w w ...`.
    pub fn periodic_prefix(w: &[Letter], len: usize) -> Self {
        assert!(!w.is_empty() || len == 0, "period must be non-empty");
        Word((0..len).map(|i| w[i % w.len()]).collect())
    }
}

impl Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("-");
        }
        let parts: Vec<String> = self.0.iter().map(|a| format!("#{}", a.0)).collect();
        f.write_str(&parts.join(","))
    }
}

/// Length-lexicographic comparison in canonical letter order.
pub fn shortlex_cmp(a: &[Letter], b: &[Letter]) -> std::cmp::Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}
