//! Depth-bounded factorial sets.
//!
//! A [`FactorSet`] stores every factor of length at most `L` of an infinite
//! word, computed from a finite prefix that is doubled until the length-`L`
//! factors stop changing. Everything downstream treats `F` as this window and
//! raises a window error instead of guessing beyond it.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use log::info;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::words::{reversal, Alphabet, Generator, Word};

/// Prefix length at which stabilization gives up.
pub const DEFAULT_PREFIX_CAP: usize = 1 << 23;

#[derive(Debug, Clone)]
pub struct FactorSet {
    alphabet: Alphabet,
    generator: Option<Generator>,
    depth: usize,
    levels: Vec<BTreeSet<Word>>,
    sample: Option<Word>,
    offset: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Query {
    pub member: bool,
    pub right_order: usize,
    pub left_order: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialWord {
    pub word: Word,
    pub order: usize,
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureProfile {
    /// `complexity[l]` is the number of factors of length `l`.
    pub complexity: Vec<usize>,
    pub reversal_closed: bool,
    /// Only meaningful on binary alphabets.
    pub balanced: Option<bool>,
    /// Every pair of factors of length at most `L/4` co-occurs inside the window.
    pub recurrent_within_window: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReturnWordSet {
    pub base: Word,
    pub right: BTreeSet<Word>,
    pub left: BTreeSet<Word>,
    pub complete: BTreeSet<Word>,
}

impl FactorSet {
    /// Factor set of `g` up to length `depth`.
    pub fn build(g: &Generator, depth: usize) -> Result<Self> {
        Self::build_with_cap(g, depth, DEFAULT_PREFIX_CAP)
    }

    pub fn build_with_cap(g: &Generator, depth: usize, cap: usize) -> Result<Self> {
        Self::build_at_offset(g, depth, 0, cap)
    }

    /// Factor set of the suffix of `g` starting at `offset`.
    pub fn build_at_offset(g: &Generator, depth: usize, offset: usize, cap: usize) -> Result<Self> {
        if depth == 0 {
            return Err(Error::Precondition("depth must be at least 1".into()));
        }
        g.validate()?;
        let mut n = 4 * depth;
        let mut sample = g.prefix(offset + n + 1)?;
        let mut top = top_level(&sample.as_bytes()[offset..], depth);
        loop {
            let n2 = 2 * n;
            if n2 > cap {
                return Err(Error::NotStabilized { cap });
            }
            let sample2 = g.prefix(offset + n2 + 1)?;
            let top2 = top_level(&sample2.as_bytes()[offset..], depth);
            let stable = top2.len() == top.len();
            n = n2;
            sample = sample2;
            top = top2;
            if stable {
                break;
            }
        }
        let sample = sample.drop_front(offset);
        Ok(Self::from_top(g.alphabet(), Some(g.clone()), depth, top, Some(sample), offset))
    }

    /// The full shift `A*` up to length `depth`.
    pub fn full(alphabet: &Alphabet, depth: usize) -> Self {
        let top: HashSet<Vec<u8>> = alphabet
            .words_of_length(depth)
            .into_iter()
            .map(|w| w.as_bytes().to_vec())
            .collect();
        Self::from_top(alphabet.clone(), None, depth, top, None, 0)
    }

    fn from_top(
        alphabet: Alphabet,
        generator: Option<Generator>,
        depth: usize,
        top: HashSet<Vec<u8>>,
        sample: Option<Word>,
        offset: usize,
    ) -> Self {
        let mut sets: Vec<HashSet<&[u8]>> = vec![HashSet::new(); depth + 1];
        for w in &top {
            for l in 0..=depth {
                for i in 0..=(depth - l) {
                    sets[l].insert(&w[i..i + l]);
                }
            }
        }
        let levels = sets
            .into_iter()
            .map(|s| s.into_iter().map(Word::from_bytes).collect())
            .collect();
        FactorSet { alphabet, generator, depth, levels, sample, offset }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn generator(&self) -> Option<&Generator> {
        self.generator.as_ref()
    }

    /// The window depth `L`.
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn offset(&self) -> usize {
        self.offset
    }

    /// The prefix the factors were read from, if any.
    pub fn sample(&self) -> Option<&Word> {
        self.sample.as_ref()
    }

    /// Factors of length `l` in lexicographic order.
    pub fn level(&self, l: usize) -> &BTreeSet<Word> {
        &self.levels[l]
    }

    /// All stored words in shortlex order.
    pub fn words(&self) -> impl Iterator<Item = &Word> {
        self.levels.iter().flat_map(|s| s.iter())
    }

    /// Membership; words longer than the window are reported absent.
    pub fn contains(&self, w: &Word) -> bool {
        w.len() <= self.depth && self.levels[w.len()].contains(w)
    }

    pub fn require_depth(&self, needed: usize) -> Result<()> {
        if needed > self.depth {
            Err(Error::WindowTooSmall { needed, depth: self.depth })
        } else {
            Ok(())
        }
    }

    pub fn right_extensions(&self, w: &Word) -> Vec<u8> {
        self.alphabet
            .symbols()
            .iter()
            .copied()
            .filter(|&a| self.contains(&w.push(a)))
            .collect()
    }

    pub fn left_extensions(&self, w: &Word) -> Vec<u8> {
        self.alphabet
            .symbols()
            .iter()
            .copied()
            .filter(|&a| self.contains(&w.prepend(a)))
            .collect()
    }

    pub fn query(&self, w: &Word) -> Result<Query> {
        self.alphabet.check_word(w)?;
        self.require_depth(w.len() + 1)?;
        Ok(Query {
            member: self.contains(w),
            right_order: self.right_extensions(w).len(),
            left_order: self.left_extensions(w).len(),
        })
    }

    pub fn special_words(&self, l: usize, side: Side) -> Result<Vec<SpecialWord>> {
        self.require_depth(l + 1)?;
        let k = self.alphabet.len();
        Ok(self.levels[l]
            .iter()
            .filter_map(|w| {
                let order = match side {
                    Side::Right => self.right_extensions(w).len(),
                    Side::Left => self.left_extensions(w).len(),
                };
                (order >= 2).then(|| SpecialWord { word: w.clone(), order, strict: order == k })
            })
            .collect())
    }

    pub fn structure_profile(&self) -> StructureProfile {
        let complexity = self.levels.iter().map(|s| s.len()).collect();
        let reversal_closed = self.words().all(|w| self.contains(&reversal(w)));
        let balanced = (self.alphabet.len() == 2).then(|| self.is_balanced());
        StructureProfile {
            complexity,
            reversal_closed,
            balanced,
            recurrent_within_window: self.recurrent_within_window(),
        }
    }

    fn is_balanced(&self) -> bool {
        let a = self.alphabet.symbol(0);
        self.levels.iter().all(|s| {
            let counts: Vec<usize> = s.iter().map(|w| w.count(a)).collect();
            match (counts.iter().min(), counts.iter().max()) {
                (Some(lo), Some(hi)) => hi - lo <= 1,
                _ => true,
            }
        })
    }

    fn recurrent_within_window(&self) -> bool {
        let m = self.depth / 4;
        if m == 0 {
            return true;
        }
        let mut seen: HashSet<(&[u8], &[u8])> = HashSet::new();
        for s in &self.levels[self.depth] {
            let s = s.as_bytes();
            for lu in 1..=m {
                for end in lu + 1..=s.len() {
                    for lw in 1..=m.min(end - lu) {
                        seen.insert((&s[..lu], &s[end - lw..end]));
                    }
                }
            }
        }
        (1..=m).all(|lu| {
            (1..=m).all(|lw| {
                self.levels[lu].iter().all(|u| {
                    self.levels[lw]
                        .iter()
                        .all(|w| seen.contains(&(u.as_bytes(), w.as_bytes())))
                })
            })
        })
    }

    /// Right and left return words to `u`.
    ///
    /// Completeness is certified when every length-`L` factor beginning with
    /// `u` contains a second occurrence of `u`.
    pub fn return_words(&self, u: &Word) -> Result<ReturnWordSet> {
        self.alphabet.check_word(u)?;
        self.require_depth(u.len() + 1)?;
        if !self.contains(u) {
            return Err(Error::NotInFactorSet(u.to_string()));
        }
        let mut complete = BTreeSet::new();
        for s in self.levels[self.depth].iter().filter(|s| u.is_prefix_of(s)) {
            let next = (1..=s.len() - u.len()).find(|&p| s.as_bytes()[p..].starts_with(u.as_bytes()));
            match next {
                Some(p) => {
                    complete.insert(s.prefix(p + u.len()));
                }
                None => {
                    return Err(Error::WindowTooSmall { needed: 2 * self.depth, depth: self.depth });
                }
            }
        }
        let right = complete.iter().map(|z| z.drop_front(u.len())).collect();
        let left = complete.iter().map(|z| z.drop_back(u.len())).collect();
        Ok(ReturnWordSet { base: u.clone(), right, left, complete })
    }

    /// JSON-friendly dump: length to sorted factor list.
    pub fn to_json(&self) -> serde_json::Value {
        let factors: BTreeMap<String, Vec<String>> = self
            .levels
            .iter()
            .enumerate()
            .skip(1)
            .map(|(l, s)| (l.to_string(), s.iter().map(|w| w.to_string()).collect()))
            .collect();
        serde_json::json!({
            "alphabet": self.alphabet,
            "depth": self.depth,
            "factors": factors,
        })
    }
}

fn top_level(sample: &[u8], depth: usize) -> HashSet<Vec<u8>> {
    if sample.len() <= depth {
        return HashSet::new();
    }
    sample[..sample.len() - 1]
        .windows(depth)
        .map(|w| w.to_vec())
        .collect()
}

/// Runs `f` on factor sets of growing depth until it stops failing with a
/// window error or `max_depth` is passed.
pub fn with_growing_depth<T>(
    g: &Generator,
    start: usize,
    max_depth: usize,
    mut f: impl FnMut(&FactorSet) -> Result<T>,
) -> Result<T> {
    let mut depth = start.max(1);
    loop {
        let fs = FactorSet::build(g, depth)?;
        match f(&fs) {
            Err(e) if e.is_window() && depth * 2 <= max_depth => {
                info!("window error at depth {depth} ({e}); growing to {}", depth * 2);
                depth *= 2;
            }
            other => return other,
        }
    }
}
