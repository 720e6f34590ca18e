//! Codes inside a factor set: predicates, maximality and parses.

mod bifix;
mod transform;

pub use bifix::{
    analyze, code_from_kernel, complete_bifix, derived_code, enumerate_f_maximal_bifix,
    enumerate_f_maximal_bifix_with, intersect_with_f, is_admissible_kernel, BifixAnalysis,
    Completion, Intersection, ZSpec,
};
pub use transform::{applicable_transformations, internal_transformation, prefix_shorten};

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::words::Word;

/// A finite set of nonempty words in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<Word>", into = "Vec<Word>")]
pub struct CodeSet {
    words: BTreeSet<Word>,
}

impl TryFrom<Vec<Word>> for CodeSet {
    type Error = Error;
    fn try_from(v: Vec<Word>) -> Result<Self> {
        CodeSet::new(v)
    }
}

impl From<CodeSet> for Vec<Word> {
    fn from(c: CodeSet) -> Self {
        c.words.into_iter().collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeFlags {
    pub prefix: bool,
    pub suffix: bool,
    pub bifix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Prefix,
    Suffix,
    Bifix,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Maximality {
    pub maximal: bool,
    /// A word of `F` incomparable with every element, when not maximal.
    pub witness: Option<Word>,
}

/// One parse `w = v·x·u`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Parse {
    pub v: Word,
    pub x: Vec<Word>,
    pub u: Word,
}

impl CodeSet {
    pub fn new<I: IntoIterator<Item = Word>>(words: I) -> Result<Self> {
        let words: BTreeSet<Word> = words.into_iter().collect();
        if words.iter().any(Word::is_empty) {
            return Err(Error::EmptyWord);
        }
        Ok(CodeSet { words })
    }

    /// Parses a comma- or whitespace-separated list; `{}` and `∅` give the empty set.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.trim() == "∅" {
            return Ok(CodeSet::default());
        }
        Self::new(crate::words::parse_word_list(s)?)
    }

    pub fn empty() -> Self {
        CodeSet::default()
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Word> + Clone {
        self.words.iter()
    }

    pub fn words(&self) -> &BTreeSet<Word> {
        &self.words
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.words.contains(w)
    }

    pub fn max_len(&self) -> usize {
        self.words.iter().map(Word::len).max().unwrap_or(0)
    }

    pub fn total_length(&self) -> usize {
        self.words.iter().map(Word::len).sum()
    }

    pub fn is_subset(&self, other: &CodeSet) -> bool {
        self.words.is_subset(&other.words)
    }

    pub fn is_prefix(&self) -> bool {
        self.pairwise(|x, y| !x.is_prefix_of(y))
    }

    pub fn is_suffix(&self) -> bool {
        self.pairwise(|x, y| !x.is_suffix_of(y))
    }

    pub fn is_bifix(&self) -> bool {
        self.is_prefix() && self.is_suffix()
    }

    fn pairwise(&self, ok: impl Fn(&Word, &Word) -> bool) -> bool {
        self.words
            .iter()
            .all(|x| self.words.iter().all(|y| x == y || ok(x, y)))
    }

    pub fn classify(&self) -> CodeFlags {
        let prefix = self.is_prefix();
        let suffix = self.is_suffix();
        CodeFlags { prefix, suffix, bifix: prefix && suffix }
    }

    /// Proper prefixes, including the empty word.
    pub fn proper_prefixes(&self) -> BTreeSet<Word> {
        self.words
            .iter()
            .flat_map(|x| (0..x.len()).map(move |i| x.prefix(i)))
            .collect()
    }

    /// Proper suffixes, including the empty word.
    pub fn proper_suffixes(&self) -> BTreeSet<Word> {
        self.words
            .iter()
            .flat_map(|x| (0..x.len()).map(move |i| x.suffix(i)))
            .collect()
    }

    /// True iff some suffix of `w` is in the set, i.e. `w ∈ A*X`.
    pub fn has_suffix_in(&self, w: &[u8]) -> bool {
        self.words.iter().any(|x| w.ends_with(x.as_bytes()))
    }

    /// True iff some prefix of `w` is in the set, i.e. `w ∈ XA*`.
    pub fn has_prefix_in(&self, w: &[u8]) -> bool {
        self.words.iter().any(|x| w.starts_with(x.as_bytes()))
    }

    /// `pars_X(w)` for a prefix code: prefixes of `w` with no suffix in `X`.
    pub fn pars(&self, w: &Word) -> usize {
        let b = w.as_bytes();
        (0..=b.len()).filter(|&i| !self.has_suffix_in(&b[..i])).count()
    }

    /// Checks that every element lies in `F`.
    pub fn require_in(&self, f: &FactorSet) -> Result<()> {
        f.require_depth(self.max_len())?;
        match self.words.iter().find(|x| !f.contains(x)) {
            Some(x) => Err(Error::NotInFactorSet(x.to_string())),
            None => Ok(()),
        }
    }

    pub fn union(&self, other: &CodeSet) -> CodeSet {
        CodeSet { words: self.words.union(&other.words).cloned().collect() }
    }

    pub fn intersection_with(&self, f: &FactorSet) -> CodeSet {
        CodeSet { words: self.words.iter().filter(|w| f.contains(w)).cloned().collect() }
    }
}

impl fmt::Display for CodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.words.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.words.iter().map(|w| w.to_string()).collect();
        write!(f, "{}", parts.join(","))
    }
}

impl FromIterator<Word> for CodeSet {
    /// Panics on the empty word.
    fn from_iter<I: IntoIterator<Item = Word>>(iter: I) -> Self {
        CodeSet::new(iter).expect("code words must be nonempty")
    }
}

impl From<&[&str]> for CodeSet {
    fn from(v: &[&str]) -> Self {
        v.iter().map(|s| Word::from(*s)).collect()
    }
}

/// Checks that `X` is F-maximal of the given kind inside the window.
pub fn is_f_maximal(x: &CodeSet, f: &FactorSet, kind: Kind) -> Result<Maximality> {
    let m = x.max_len().max(1);
    f.require_depth(m + 1)?;
    x.require_in(f)?;
    let prefix_ok = || -> Result<Option<Word>> {
        if !x.is_prefix() {
            return Err(Error::NotPrefixCode);
        }
        Ok(f.level(m).iter().find(|w| !x.has_prefix_in(w.as_bytes())).cloned())
    };
    let suffix_ok = || -> Result<Option<Word>> {
        if !x.is_suffix() {
            return Err(Error::NotBifixCode);
        }
        Ok(f.level(m).iter().find(|w| !x.has_suffix_in(w.as_bytes())).cloned())
    };
    let witness = match kind {
        Kind::Prefix => prefix_ok()?,
        Kind::Suffix => suffix_ok()?,
        Kind::Bifix => {
            if !x.is_bifix() {
                return Err(Error::NotBifixCode);
            }
            prefix_ok()?.or(suffix_ok()?)
        }
    };
    Ok(Maximality { maximal: witness.is_none(), witness })
}

/// Factorizations of `w` over `X`, in order of the first factor's length.
fn factorizations(w: &[u8], x: &CodeSet) -> Vec<Vec<Word>> {
    if w.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for c in x.iter().filter(|c| w.starts_with(c.as_bytes())) {
        for mut rest in factorizations(&w[c.len()..], x) {
            rest.insert(0, c.clone());
            out.push(rest);
        }
    }
    out
}

/// All parses `(v, x, u)` of `w`: `v ∉ A*X`, `x ∈ X*`, `u ∉ XA*`.
pub fn parses(w: &Word, x: &CodeSet) -> Vec<Parse> {
    let b = w.as_bytes();
    let mut out = Vec::new();
    for i in 0..=b.len() {
        if x.has_suffix_in(&b[..i]) {
            continue;
        }
        for j in i..=b.len() {
            if x.has_prefix_in(&b[j..]) {
                continue;
            }
            if let Some(fact) = factorizations(&b[i..j], x).into_iter().next() {
                out.push(Parse { v: w.prefix(i), x: fact, u: w.drop_front(j) });
            }
        }
    }
    out
}

/// Number of parses by direct enumeration of the split points.
pub fn count_parses(w: &Word, x: &CodeSet) -> usize {
    let b = w.as_bytes();
    let n = b.len();
    // star[i][j]: b[i..j] ∈ X*
    let mut star = vec![vec![false; n + 1]; n + 1];
    for i in (0..=n).rev() {
        star[i][i] = true;
        for j in i + 1..=n {
            star[i][j] = x
                .iter()
                .any(|c| c.len() <= j - i && b[i..].starts_with(c.as_bytes()) && star[i + c.len()][j]);
        }
    }
    let mut count = 0;
    for i in 0..=n {
        if x.has_suffix_in(&b[..i]) {
            continue;
        }
        for j in i..=n {
            if star[i][j] && !x.has_prefix_in(&b[j..]) {
                count += 1;
            }
        }
    }
    count
}

/// `pars` tabulated on every word of a factor set.
#[derive(Debug, Clone)]
pub struct ParseProfile {
    pub cap: Option<usize>,
    table: HashMap<Word, usize>,
}

impl ParseProfile {
    pub fn get(&self, w: &Word) -> Option<usize> {
        self.table.get(w).copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Word, &usize)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn max(&self) -> usize {
        self.table.values().copied().max().unwrap_or(0)
    }

    /// `w ∈ A*X`, read off the profile as `pars(w) = pars(w')` with `w = w'a`.
    pub fn ends_in_code(&self, w: &Word) -> Option<bool> {
        if w.is_empty() {
            return Some(false);
        }
        Some(self.get(w)? == self.get(&w.drop_back(1))?)
    }
}

/// Left-to-right tabulation of `pars_X` (optionally capped at `d`) over `F`.
pub fn parse_profile(x: &CodeSet, f: &FactorSet, cap: Option<usize>) -> Result<ParseProfile> {
    if !x.is_prefix() {
        return Err(Error::NotPrefixCode);
    }
    let mut raw: HashMap<Word, usize> = HashMap::new();
    raw.insert(Word::empty(), 1);
    for l in 1..=f.depth() {
        for w in f.level(l) {
            let prev = raw[&w.drop_back(1)];
            let step = usize::from(!x.has_suffix_in(w.as_bytes()));
            raw.insert(w.clone(), prev + step);
        }
    }
    let table = match cap {
        Some(d) => raw.into_iter().map(|(w, p)| (w, p.min(d))).collect(),
        None => raw,
    };
    Ok(ParseProfile { cap, table })
}
