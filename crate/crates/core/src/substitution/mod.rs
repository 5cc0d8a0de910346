//! Symbolic substitutions on finite alphabets.

mod arnoux_rauzy;
pub mod builtins;
pub mod io;
mod language;

use std::fmt;
use std::ops::Deref;

use num_bigint::BigInt;
use thiserror::Error;

use crate::algebra::IntMatrix;

pub use arnoux_rauzy::{
    ar_substitution, cyclically_equivalent_prefixes, default_prefix_bound, is_conjugate, parallel, sigma,
    CyclicEquivalenceWitness,
};
pub use language::factor_language;

/// Letter index into an [`Alphabet`].
pub type Letter = usize;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SubstitutionError {
    #[error("alphabet is empty")]
    EmptyAlphabet,
    #[error("duplicate letter name {0:?}")]
    DuplicateLetter(String),
    #[error("letter name {0:?} is empty or contains whitespace")]
    BadLetterName(String),
    #[error("expected {expected} images, got {got}")]
    WrongImageCount { expected: usize, got: usize },
    #[error("image of letter {0:?} is empty")]
    EmptyImage(String),
    #[error("letter index {index} outside an alphabet of size {size}")]
    ForeignLetter { index: Letter, size: usize },
    #[error("unknown letter {0:?}")]
    UnknownLetter(String),
    #[error("substitutions act on different alphabets")]
    AlphabetMismatch,
    #[error("abelianization {0:?} of the directive word is not strictly positive")]
    NotArnouxRauzy(Vec<i64>),
    #[error("Arnoux-Rauzy substitutions need at least two letters")]
    AlphabetTooSmall,
    #[error("image of {0:?} does not begin with {0:?}; no fixed word starts there")]
    NoFixedWord(String),
    #[error("substitution is not primitive")]
    NotPrimitive,
    #[error("no non-parallel cyclic equivalence for letters {i} and {j} within prefix length {bound}")]
    SearchBoundExceeded { i: String, j: String, bound: usize },
}

/// Named letters; words store indices and names appear only at I/O.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Alphabet {
    names: Vec<String>,
}

impl Alphabet {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self, SubstitutionError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(SubstitutionError::EmptyAlphabet);
        }
        let mut seen = std::collections::HashSet::new();
        for n in &names {
            if n.is_empty() || n.chars().any(char::is_whitespace) || n.contains(',') {
                return Err(SubstitutionError::BadLetterName(n.clone()));
            }
            if !seen.insert(n) {
                return Err(SubstitutionError::DuplicateLetter(n.clone()));
            }
        }
        Ok(Alphabet { names })
    }

    /// The alphabet `{1, …, d}`.
    pub fn numeric(d: usize) -> Result<Self, SubstitutionError> {
        Self::new((1..=d).map(|i| i.to_string()))
    }

    pub fn size(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Letter) -> &str {
        &self.names[a]
    }

    pub fn index(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name)
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Parses a word: one character per letter for single-character
    /// alphabets, otherwise whitespace- or dot-separated names.
    pub fn parse_word(&self, text: &str) -> Result<Word, SubstitutionError> {
        let text = text.trim();
        let tokens: Vec<String> = if self.single_char() {
            text.chars().filter(|c| !c.is_whitespace()).map(String::from).collect()
        } else {
            text.split(|c: char| c.is_whitespace() || c == '.').filter(|t| !t.is_empty()).map(String::from).collect()
        };
        tokens
            .iter()
            .map(|t| self.index(t).ok_or_else(|| SubstitutionError::UnknownLetter(t.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        let sep = if self.single_char() { "" } else { "." };
        w.iter().map(|&a| self.names[a].as_str()).collect::<Vec<_>>().join(sep)
    }
}

/// Finite sequence of letter indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn new(letters: Vec<Letter>) -> Self {
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_letters(self) -> Vec<Letter> {
        self.0
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn check(&self, d: usize) -> Result<(), SubstitutionError> {
        match self.0.iter().find(|&&a| a >= d) {
            Some(&index) => Err(SubstitutionError::ForeignLetter { index, size: d }),
            None => Ok(()),
        }
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

/// Letter counts of `w` over an alphabet of size `d`.
pub fn abelianize(w: &[Letter], d: usize) -> Vec<i64> {
    let mut v = vec![0i64; d];
    for &a in w {
        v[a] += 1;
    }
    v
}

/// Letter → nonempty word, with its incidence matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    alphabet: Alphabet,
    images: Vec<Word>,
    incidence: IntMatrix,
}

impl Substitution {
    pub fn new(alphabet: Alphabet, images: Vec<Word>) -> Result<Self, SubstitutionError> {
        let d = alphabet.size();
        if images.len() != d {
            return Err(SubstitutionError::WrongImageCount { expected: d, got: images.len() });
        }
        for (a, img) in images.iter().enumerate() {
            if img.is_empty() {
                return Err(SubstitutionError::EmptyImage(alphabet.name(a).to_string()));
            }
            img.check(d)?;
        }
        let mut incidence = IntMatrix::zeros(d, d);
        for (j, img) in images.iter().enumerate() {
            for (i, c) in abelianize(img, d).into_iter().enumerate() {
                incidence.set(i, j, BigInt::from(c));
            }
        }
        Ok(Substitution { alphabet, images, incidence })
    }

    /// Builds from `(name, image)` pairs given as text, e.g. `[("a", "ab"), ("b", "a")]`.
    pub fn from_rules(rules: &[(&str, &str)]) -> Result<Self, SubstitutionError> {
        let alphabet = Alphabet::new(rules.iter().map(|(n, _)| *n))?;
        let images = rules.iter().map(|(_, img)| alphabet.parse_word(img)).collect::<Result<Vec<_>, _>>()?;
        Self::new(alphabet, images)
    }

    pub fn identity(alphabet: Alphabet) -> Self {
        let images = (0..alphabet.size()).map(|a| Word(vec![a])).collect();
        Self::new(alphabet, images).expect("identity is well formed")
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn size(&self) -> usize {
        self.alphabet.size()
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a]
    }

    pub fn images(&self) -> &[Word] {
        &self.images
    }

    /// Column `j` counts the letters of the image of `j`.
    pub fn incidence(&self) -> &IntMatrix {
        &self.incidence
    }

    pub fn is_primitive(&self) -> bool {
        self.incidence.is_primitive()
    }

    pub fn apply(&self, w: &[Letter]) -> Result<Word, SubstitutionError> {
        if let Some(&index) = w.iter().find(|&&a| a >= self.size()) {
            return Err(SubstitutionError::ForeignLetter { index, size: self.size() });
        }
        Ok(self.apply_unchecked(w))
    }

    /// Image of a word already known to be over this alphabet.
    pub fn apply_unchecked(&self, w: &[Letter]) -> Word {
        let mut out = Vec::with_capacity(w.len() * 2);
        for &a in w {
            out.extend_from_slice(&self.images[a]);
        }
        Word(out)
    }

    /// Length of `φ(w)` without building it.
    pub fn image_len(&self, w: &[Letter]) -> usize {
        w.iter().map(|&a| self.images[a].len()).sum()
    }

    /// `(self ∘ other)(a) = self(other(a))`.
    pub fn compose(&self, other: &Substitution) -> Result<Substitution, SubstitutionError> {
        if self.alphabet != other.alphabet {
            return Err(SubstitutionError::AlphabetMismatch);
        }
        let images = other.images.iter().map(|w| self.apply_unchecked(w)).collect();
        Substitution::new(self.alphabet.clone(), images)
    }

    /// First `n` letters of the fixed word `φ^∞(a)`.
    pub fn fixed_point_prefix(&self, a: Letter, n: usize) -> Result<Word, SubstitutionError> {
        if a >= self.size() {
            return Err(SubstitutionError::ForeignLetter { index: a, size: self.size() });
        }
        let name = || self.alphabet.name(a).to_string();
        if self.images[a][0] != a {
            return Err(SubstitutionError::NoFixedWord(name()));
        }
        let mut w = vec![a];
        while w.len() < n {
            let mut next = Vec::with_capacity(n);
            for &c in &w {
                next.extend_from_slice(&self.images[c]);
                if next.len() >= n {
                    break;
                }
            }
            if next.len() == w.len() {
                // No growth: the fixed word is finite.
                return Err(SubstitutionError::NoFixedWord(name()));
            }
            next.truncate(n);
            w = next;
        }
        w.truncate(n);
        Ok(Word(w))
    }

    pub fn format_word(&self, w: &[Letter]) -> String {
        self.alphabet.format_word(w)
    }

    pub fn parse_word(&self, text: &str) -> Result<Word, SubstitutionError> {
        self.alphabet.parse_word(text)
    }
}

impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for a in 0..self.size() {
            if a > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{} -> {}", self.alphabet.name(a), self.format_word(&self.images[a]))?;
        }
        Ok(())
    }
}
