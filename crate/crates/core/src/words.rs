//! Alphabets, finite words, substitutions and generators of infinite words.
//!
//! Symbols are single lowercase ASCII letters. The alphabet keeps them in
//! byte order, which is the order used by every lexicographic comparison
//! downstream. Words compare in shortlex order (length first, then
//! lexicographically), which is the canonical order for code listings.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// A finite ordered set of symbols.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Alphabet {
    symbols: Vec<u8>,
}

impl Alphabet {
    pub fn new<I: IntoIterator<Item = u8>>(symbols: I) -> Result<Self> {
        let mut symbols: Vec<u8> = symbols.into_iter().collect();
        for &s in &symbols {
            if !s.is_ascii_lowercase() {
                return Err(Error::InvalidAlphabet(format!(
                    "symbol {:?} is not a lowercase ASCII letter",
                    s as char
                )));
            }
        }
        symbols.sort_unstable();
        symbols.dedup();
        if symbols.is_empty() {
            return Err(Error::InvalidAlphabet("alphabet is empty".into()));
        }
        Ok(Alphabet { symbols })
    }

    /// Alphabet made of the symbols of a string, e.g. `"abc"`.
    pub fn from_str_symbols(s: &str) -> Result<Self> {
        Alphabet::new(s.bytes())
    }

    pub fn symbols(&self) -> &[u8] {
        &self.symbols
    }

    /// Number of symbols, `k`.
    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn index_of(&self, symbol: u8) -> Option<usize> {
        self.symbols.binary_search(&symbol).ok()
    }

    pub fn contains(&self, symbol: u8) -> bool {
        self.index_of(symbol).is_some()
    }

    pub fn symbol(&self, index: usize) -> u8 {
        self.symbols[index]
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        match w.0.iter().find(|s| !self.contains(**s)) {
            Some(&s) => Err(Error::UnknownSymbol(s as char)),
            None => Ok(()),
        }
    }

    /// All words of length `n` in lexicographic order.
    pub fn words_of_length(&self, n: usize) -> Vec<Word> {
        let mut out = vec![Word::empty()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * self.len());
            for w in &out {
                for &a in &self.symbols {
                    next.push(w.push(a));
                }
            }
            out = next;
        }
        out
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", String::from_utf8_lossy(&self.symbols))
    }
}

impl Serialize for Alphabet {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.symbols.iter().map(|&s| (s as char).to_string()).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Alphabet {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let v: Vec<String> = Vec::deserialize(deserializer)?;
        let mut symbols = Vec::new();
        for s in v {
            let b = s.as_bytes();
            if b.len() != 1 {
                return Err(serde::de::Error::custom(format!("bad symbol {s:?}")));
            }
            symbols.push(b[0]);
        }
        Alphabet::new(symbols).map_err(serde::de::Error::custom)
    }
}

/// A finite word. The empty word is displayed as `1`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(Vec<u8>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_bytes(bytes: impl Into<Vec<u8>>) -> Self {
        Word(bytes.into())
    }

    /// Parses a word; `""` and `"1"` both denote the empty word.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Word::empty());
        }
        if let Some(c) = s.chars().find(|c| !c.is_ascii_lowercase()) {
            return Err(Error::UnknownSymbol(c));
        }
        Ok(Word(s.as_bytes().to_vec()))
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn symbol(&self, i: usize) -> u8 {
        self.0[i]
    }

    pub fn first(&self) -> Option<u8> {
        self.0.first().copied()
    }

    pub fn last(&self) -> Option<u8> {
        self.0.last().copied()
    }

    pub fn push(&self, a: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.extend_from_slice(&self.0);
        v.push(a);
        Word(v)
    }

    pub fn prepend(&self, a: u8) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(a);
        v.extend_from_slice(&self.0);
        Word(v)
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + other.0.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    pub fn prefix(&self, n: usize) -> Word {
        self.slice(0, n)
    }

    pub fn suffix(&self, n: usize) -> Word {
        self.slice(self.len() - n, self.len())
    }

    /// The word without its first `n` symbols.
    pub fn drop_front(&self, n: usize) -> Word {
        self.slice(n, self.len())
    }

    /// The word without its last `n` symbols.
    pub fn drop_back(&self, n: usize) -> Word {
        self.slice(0, self.len() - n)
    }

    pub fn is_prefix_of(&self, other: &Word) -> bool {
        other.0.starts_with(&self.0)
    }

    pub fn is_suffix_of(&self, other: &Word) -> bool {
        other.0.ends_with(&self.0)
    }

    pub fn is_factor_of(&self, other: &Word) -> bool {
        self.is_empty() || other.0.windows(self.len()).any(|w| w == self.0.as_slice())
    }

    pub fn prefix_comparable(&self, other: &Word) -> bool {
        self.is_prefix_of(other) || other.is_prefix_of(self)
    }

    pub fn suffix_comparable(&self, other: &Word) -> bool {
        self.is_suffix_of(other) || other.is_suffix_of(self)
    }

    pub fn is_palindrome(&self) -> bool {
        self.0.iter().eq(self.0.iter().rev())
    }

    /// Number of occurrences of `a`.
    pub fn count(&self, a: u8) -> usize {
        self.0.iter().filter(|&&s| s == a).count()
    }

    /// Starting positions of all occurrences of `u` (possibly overlapping).
    pub fn occurrences(&self, u: &Word) -> Vec<usize> {
        if u.is_empty() {
            return (0..=self.len()).collect();
        }
        self.0
            .windows(u.len())
            .enumerate()
            .filter(|(_, w)| *w == u.0.as_slice())
            .map(|(i, _)| i)
            .collect()
    }

    /// All prefixes, shortest first, including the empty word and the word itself.
    pub fn prefixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| self.prefix(i))
    }

    /// All suffixes, shortest first, including the empty word and the word itself.
    pub fn suffixes(&self) -> impl Iterator<Item = Word> + '_ {
        (0..=self.len()).map(move |i| self.suffix(i))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.len().cmp(&other.0.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", String::from_utf8_lossy(&self.0))
        }
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "\"{self}\"")
    }
}

impl From<&str> for Word {
    /// Panics on symbols outside `a..=z`; use [`Word::parse`] for untrusted input.
    fn from(s: &str) -> Self {
        Word::parse(s).expect("invalid word literal")
    }
}

impl Serialize for Word {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&String::from_utf8_lossy(&self.0))
    }
}

impl<'de> Deserialize<'de> for Word {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        Word::parse(&s).map_err(serde::de::Error::custom)
    }
}

/// Parses a comma- or whitespace-separated list of words.
pub fn parse_word_list(s: &str) -> Result<Vec<Word>> {
    s.split(|c: char| c == ',' || c.is_whitespace())
        .filter(|t| !t.is_empty())
        .map(Word::parse)
        .collect()
}

pub fn reversal(w: &Word) -> Word {
    Word(w.0.iter().rev().copied().collect())
}

/// Longest border lengths (KMP failure function) of `s`.
pub(crate) fn failure_function(s: &[u8]) -> Vec<usize> {
    let mut fail = vec![0usize; s.len() + 1];
    let mut k = 0usize;
    for i in 1..s.len() {
        while k > 0 && s[i] != s[k] {
            k = fail[k];
        }
        if s[i] == s[k] {
            k += 1;
        }
        fail[i + 1] = k;
    }
    fail
}

/// Length of the longest palindromic suffix of `w`.
///
/// A suffix of `w` is a palindrome iff it is also a prefix of the reversal
/// of `w`, so this is the longest border of `rev(w) # w`.
fn longest_palindromic_suffix(w: &[u8]) -> usize {
    if w.is_empty() {
        return 0;
    }
    let mut s = Vec::with_capacity(2 * w.len() + 1);
    s.extend(w.iter().rev());
    s.push(0);
    s.extend_from_slice(w);
    *failure_function(&s).last().unwrap()
}

/// Shortest palindrome having `w` as a prefix.
pub fn palindromic_closure(w: &Word) -> Word {
    let p = longest_palindromic_suffix(&w.0);
    let head = &w.0[..w.len() - p];
    let mut v = w.0.clone();
    v.extend(head.iter().rev());
    Word(v)
}

/// Iterated palindromic closure `Pal(w)`.
pub fn iterated_palindromic_closure(w: &Word) -> Word {
    let mut u = Word::empty();
    for &a in &w.0 {
        u = palindromic_closure(&u.push(a));
    }
    u
}

/// Image of `w` under the elementary morphism of `a`.
fn psi_letter(a: u8, w: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(2 * w.len());
    for &b in w {
        out.push(a);
        if b != a {
            out.push(b);
        }
    }
    out
}

/// Applies the composed elementary morphism `psi_u` to `w`.
pub fn psi(u: &Word, w: &Word) -> Word {
    let mut cur = w.0.clone();
    for &a in u.0.iter().rev() {
        cur = psi_letter(a, &cur);
    }
    Word(cur)
}

/// A monoid morphism given by nonempty letter images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Substitution {
    images: BTreeMap<char, Word>,
}

impl Substitution {
    pub fn new<I: IntoIterator<Item = (u8, Word)>>(images: I) -> Result<Self> {
        let images: BTreeMap<char, Word> =
            images.into_iter().map(|(a, w)| (a as char, w)).collect();
        if images.is_empty() {
            return Err(Error::InvalidGenerator("substitution has no images".into()));
        }
        for (a, w) in &images {
            if w.is_empty() {
                return Err(Error::InvalidGenerator(format!("image of {a} is empty")));
            }
            for &s in w.as_bytes() {
                if !images.contains_key(&(s as char)) {
                    return Err(Error::InvalidGenerator(format!(
                        "image of {a} uses symbol {} without an image",
                        s as char
                    )));
                }
            }
        }
        Ok(Substitution { images })
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.images.keys().map(|&c| c as u8)).expect("validated on construction")
    }

    pub fn image(&self, a: u8) -> &Word {
        &self.images[&(a as char)]
    }

    pub fn apply(&self, w: &Word) -> Word {
        let mut v = Vec::new();
        for &a in w.as_bytes() {
            v.extend_from_slice(self.image(a).as_bytes());
        }
        Word(v)
    }

    /// Incidence matrix `M[a][b] = |f(a)|_b` in alphabet order.
    pub fn incidence_matrix(&self) -> Vec<Vec<u64>> {
        let alpha = self.alphabet();
        alpha
            .symbols()
            .iter()
            .map(|&a| {
                alpha
                    .symbols()
                    .iter()
                    .map(|&b| self.image(a).count(b) as u64)
                    .collect()
            })
            .collect()
    }

    pub fn fibonacci() -> Self {
        Substitution::new([(b'a', Word::from("ab")), (b'b', Word::from("a"))]).unwrap()
    }

    pub fn thue_morse() -> Self {
        Substitution::new([(b'a', Word::from("ab")), (b'b', Word::from("ba"))]).unwrap()
    }

    pub fn tribonacci() -> Self {
        Substitution::new([
            (b'a', Word::from("ab")),
            (b'b', Word::from("ac")),
            (b'c', Word::from("a")),
        ])
        .unwrap()
    }
}

/// The eventually periodic directive word `preperiod · period^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirectiveWord {
    pub preperiod: Word,
    pub period: Word,
}

impl DirectiveWord {
    pub fn new(preperiod: Word, period: Word) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidGenerator("directive period is empty".into()));
        }
        Ok(DirectiveWord { preperiod, period })
    }

    pub fn letter(&self, i: usize) -> u8 {
        if i < self.preperiod.len() {
            self.preperiod.symbol(i)
        } else {
            let j = (i - self.preperiod.len()) % self.period.len();
            self.period.symbol(j)
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> Word {
        Word((0..n).map(|i| self.letter(i)).collect())
    }

    pub fn alphabet(&self) -> Alphabet {
        Alphabet::new(self.preperiod.as_bytes().iter().chain(self.period.as_bytes()).copied())
            .expect("nonempty period")
    }

    /// True iff every letter of the alphabet occurs in the period.
    pub fn is_strict(&self) -> bool {
        self.alphabet()
            .symbols()
            .iter()
            .all(|&a| self.period.as_bytes().contains(&a))
    }
}

/// A finite description of an infinite word.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Generator {
    /// The fix-point `f^ω(a)`.
    #[serde(rename = "fixpoint")]
    FixPoint { substitution: Substitution, start: char },
    /// The standard episturmian word `Pal(Δ)`.
    #[serde(rename = "pal")]
    Pal { directive: DirectiveWord },
    /// `prefix · period^ω`.
    #[serde(rename = "evper")]
    EventuallyPeriodic { prefix: Word, period: Word },
}

impl Generator {
    pub fn fixpoint(substitution: Substitution, start: u8) -> Result<Self> {
        let g = Generator::FixPoint { substitution, start: start as char };
        g.validate()?;
        Ok(g)
    }

    pub fn pal(preperiod: &str, period: &str) -> Result<Self> {
        Ok(Generator::Pal {
            directive: DirectiveWord::new(Word::parse(preperiod)?, Word::parse(period)?)?,
        })
    }

    pub fn eventually_periodic(prefix: &str, period: &str) -> Result<Self> {
        let g = Generator::EventuallyPeriodic {
            prefix: Word::parse(prefix)?,
            period: Word::parse(period)?,
        };
        g.validate()?;
        Ok(g)
    }

    pub fn fibonacci() -> Self {
        Generator::fixpoint(Substitution::fibonacci(), b'a').unwrap()
    }

    pub fn thue_morse() -> Self {
        Generator::fixpoint(Substitution::thue_morse(), b'a').unwrap()
    }

    pub fn tribonacci() -> Self {
        Generator::fixpoint(Substitution::tribonacci(), b'a').unwrap()
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            Generator::FixPoint { substitution, start } => {
                let a = *start as u8;
                if !substitution.alphabet().contains(a) {
                    return Err(Error::InvalidGenerator(format!("no image for start {start}")));
                }
                let img = substitution.image(a);
                if img.first() != Some(a) || img.len() < 2 {
                    return Err(Error::InvalidGenerator(format!(
                        "f({start}) = {img} must start with {start} and have length at least 2"
                    )));
                }
                Ok(())
            }
            Generator::Pal { directive } => {
                if directive.period.is_empty() {
                    return Err(Error::InvalidGenerator("directive period is empty".into()));
                }
                Ok(())
            }
            Generator::EventuallyPeriodic { period, .. } => {
                if period.is_empty() {
                    return Err(Error::InvalidGenerator("period is empty".into()));
                }
                Ok(())
            }
        }
    }

    pub fn alphabet(&self) -> Alphabet {
        match self {
            Generator::FixPoint { substitution, .. } => substitution.alphabet(),
            Generator::Pal { directive } => directive.alphabet(),
            Generator::EventuallyPeriodic { prefix, period } => {
                Alphabet::new(prefix.as_bytes().iter().chain(period.as_bytes()).copied())
                    .expect("nonempty period")
            }
        }
    }

    /// Prefix of length `n` of the infinite word.
    pub fn prefix(&self, n: usize) -> Result<Word> {
        self.validate()?;
        let mut w = match self {
            Generator::FixPoint { substitution, start } => {
                let mut w = Word(vec![*start as u8]);
                while w.len() < n {
                    w = substitution.apply(&w);
                }
                w
            }
            Generator::Pal { directive } => {
                let mut u = Word::empty();
                let mut i = 0;
                while u.len() < n {
                    u = palindromic_closure(&u.push(directive.letter(i)));
                    i += 1;
                }
                u
            }
            Generator::EventuallyPeriodic { prefix, period } => {
                let mut v = prefix.0.clone();
                let mut i = 0;
                while v.len() < n {
                    v.push(period.symbol(i % period.len()));
                    i += 1;
                }
                Word(v)
            }
        };
        w.0.truncate(n);
        Ok(w)
    }

    /// Palindrome prefixes `u_0 = 1, u_1, ..., u_n` of an episturmian generator.
    pub fn palindrome_prefixes(&self, n: usize) -> Option<Vec<Word>> {
        let Generator::Pal { directive } = self else {
            return None;
        };
        let mut out = vec![Word::empty()];
        for i in 0..n {
            let next = palindromic_closure(&out[i].push(directive.letter(i)));
            out.push(next);
        }
        Some(out)
    }
}
