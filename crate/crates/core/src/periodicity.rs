//! Periods, repetitions and forced periodicity of forbidden-factor shifts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::codes::{count_parses, CodeSet};
use crate::error::{Error, Result};
use crate::factors::{FactorSet, DEFAULT_PREFIX_CAP};
use crate::graph::scc;
use crate::words::{failure_function, Alphabet, Generator, Word};

pub fn least_period(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    let fail = failure_function(w.as_bytes());
    Ok(w.len() - fail[w.len()])
}

/// Least length of a nonempty word prefix-comparable with `s` and
/// suffix-comparable with `p`.
pub fn repetition(p: &Word, s: &Word) -> Result<usize> {
    if p.is_empty() && s.is_empty() {
        return Err(Error::EmptyWord);
    }
    let (pb, sb) = (p.as_bytes(), s.as_bytes());
    let fits = |l: usize| {
        (0..l).all(|i| {
            let from_s = sb.get(i);
            let from_p = (i + pb.len()).checked_sub(l).and_then(|j| pb.get(j));
            match (from_s, from_p) {
                (Some(x), Some(y)) => x == y,
                _ => true,
            }
        })
    };
    Ok((1..=p.len() + s.len()).find(|&l| fits(l)).unwrap_or(p.len() + s.len()))
}

/// Maximum of `repetition` over all factorizations of `w`.
pub fn cft_least_period(w: &Word) -> Result<usize> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    (0..=w.len())
        .map(|i| repetition(&w.prefix(i), &w.drop_front(i)))
        .try_fold(0, |m, r| Ok(m.max(r?)))
}

/// Windows of length `m−1` avoiding the forbidden factors, joined by one-symbol shifts.
#[derive(Debug, Clone)]
pub struct FollowerGraph {
    vertices: Vec<Word>,
    /// `(source, symbol, target)`.
    edges: Vec<(usize, u8, usize)>,
    component: Vec<usize>,
}

fn avoids(w: &Word, forbidden: &BTreeSet<Word>) -> bool {
    forbidden.iter().all(|f| !f.is_factor_of(w))
}

impl FollowerGraph {
    pub fn build(alphabet: &Alphabet, forbidden: &BTreeSet<Word>) -> Result<Self> {
        if forbidden.iter().any(Word::is_empty) {
            return Err(Error::EmptyWord);
        }
        for w in forbidden {
            alphabet.check_word(w)?;
        }
        let m = forbidden.iter().map(Word::len).max().unwrap_or(1);
        let vertices: Vec<Word> = alphabet
            .words_of_length(m - 1)
            .into_iter()
            .filter(|w| avoids(w, forbidden))
            .collect();
        let pos: BTreeMap<&Word, usize> = vertices.iter().enumerate().map(|(i, w)| (w, i)).collect();
        let mut edges = Vec::new();
        for (i, u) in vertices.iter().enumerate() {
            for &a in alphabet.symbols() {
                let ua = u.push(a);
                if avoids(&ua, forbidden) {
                    edges.push((i, a, pos[&ua.drop_front(1)]));
                }
            }
        }
        let mut adj = vec![Vec::new(); vertices.len()];
        for &(p, _, q) in &edges {
            adj[p].push(q);
        }
        let component = scc(&adj);
        Ok(FollowerGraph { vertices, edges, component })
    }

    pub fn vertices(&self) -> &[Word] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(usize, u8, usize)] {
        &self.edges
    }

    pub fn component(&self, v: usize) -> usize {
        self.component[v]
    }

    fn internal_edges(&self, c: usize) -> Vec<(usize, u8, usize)> {
        self.edges
            .iter()
            .copied()
            .filter(|&(p, _, q)| self.component[p] == c && self.component[q] == c)
            .collect()
    }

    /// Components containing a cycle.
    pub fn nontrivial_components(&self) -> Vec<usize> {
        let n = self.component.iter().max().map_or(0, |m| m + 1);
        (0..n).filter(|&c| !self.internal_edges(c).is_empty()).collect()
    }

    /// True iff every vertex of the component has exactly one internal out-edge.
    pub fn is_simple_cycle(&self, c: usize) -> bool {
        let internal = self.internal_edges(c);
        let members = self.component.iter().filter(|&&x| x == c).count();
        let sources: BTreeSet<usize> = internal.iter().map(|e| e.0).collect();
        internal.len() == members && sources.len() == members
    }

    /// Label of the cycle through a simple component, read from its least vertex.
    fn cycle_label(&self, c: usize) -> Word {
        let internal = self.internal_edges(c);
        let start = internal.iter().map(|e| e.0).min().unwrap();
        let mut v = start;
        let mut label = Vec::new();
        loop {
            let &(_, a, q) = internal.iter().find(|e| e.0 == v).unwrap();
            label.push(a);
            v = q;
            if v == start {
                break;
            }
        }
        Word::from_bytes(label)
    }

    pub fn to_dot(&self) -> String {
        const COLORS: [&str; 6] = ["lightblue", "lightpink", "palegreen", "khaki", "plum", "lightsalmon"];
        let mut s = String::from("digraph follower {\n");
        for (i, w) in self.vertices.iter().enumerate() {
            let color = COLORS[self.component[i] % COLORS.len()];
            let _ = writeln!(s, "  {i} [label=\"{w}\", style=filled, fillcolor={color}];");
        }
        for (p, a, q) in &self.edges {
            let _ = writeln!(s, "  {p} -> {q} [label=\"{}\"];", *a as char);
        }
        s.push_str("}\n");
        s
    }
}

/// Least rotation of the primitive root of `w`.
pub fn canonical_cycle(w: &Word) -> Word {
    let p = least_period(w).unwrap_or(0);
    let root = if p > 0 && w.len().is_multiple_of(p) { w.prefix(p) } else { w.clone() };
    (0..root.len())
        .map(|i| root.drop_front(i).concat(&root.prefix(i)))
        .min_by(|a, b| a.as_bytes().cmp(b.as_bytes()))
        .unwrap_or(root)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ForcedReport {
    pub nonempty: bool,
    pub all_ultimately_periodic: bool,
    /// Canonical labels of the simple-cycle components.
    pub cycles: Vec<Word>,
}

/// Decides whether every infinite word avoiding `forbidden` is ultimately periodic.
pub fn forced_periodicity(alphabet: &Alphabet, forbidden: &BTreeSet<Word>) -> Result<ForcedReport> {
    let g = FollowerGraph::build(alphabet, forbidden)?;
    Ok(report(&g))
}

pub fn report(g: &FollowerGraph) -> ForcedReport {
    let comps = g.nontrivial_components();
    let cycles: BTreeSet<Word> = comps
        .iter()
        .filter(|&&c| g.is_simple_cycle(c))
        .map(|&c| canonical_cycle(&g.cycle_label(c)))
        .collect();
    ForcedReport {
        nonempty: !comps.is_empty(),
        all_ultimately_periodic: comps.iter().all(|&c| g.is_simple_cycle(c)),
        cycles: cycles.into_iter().collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableDegree {
    /// `(offset, degree)` pairs.
    pub degrees: Vec<(usize, usize)>,
    pub stable: bool,
}

/// Degree of `X` over the factor sets of the suffixes of `g` at offsets `0..=L/2`.
pub fn x_stable_degree(x: &CodeSet, g: &Generator, depth: usize) -> Result<StableDegree> {
    if depth < 2 * x.max_len() {
        return Err(Error::WindowTooSmall { needed: 2 * x.max_len(), depth });
    }
    let prefix = x.is_prefix();
    let mut degrees = Vec::new();
    for offset in 0..=depth / 2 {
        let f = FactorSet::build_at_offset(g, depth, offset, DEFAULT_PREFIX_CAP)?;
        let d = f
            .words()
            .map(|w| if prefix { x.pars(w) } else { count_parses(w, x) })
            .max()
            .unwrap_or(0);
        degrees.push((offset, d));
    }
    let stable = degrees.windows(2).all(|w| w[0].1 == w[1].1);
    Ok(StableDegree { degrees, stable })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> Word {
        Word::from(s)
    }

    fn brute_period(w: &Word) -> usize {
        let b = w.as_bytes();
        (1..=b.len()).find(|&n| (n..b.len()).all(|i| b[i] == b[i - n])).unwrap()
    }

    fn brute_rep(p: &Word, s: &Word) -> usize {
        let ab = Alphabet::from_str_symbols("ab").unwrap();
        (1..=p.len() + s.len())
            .find(|&l| ab.words_of_length(l).iter().any(|r| r.prefix_comparable(s) && r.suffix_comparable(p)))
            .unwrap()
    }

    #[test]
    fn periods() {
        assert_eq!(least_period(&w("aaaa")).unwrap(), 1);
        assert_eq!(least_period(&w("abab")).unwrap(), 2);
        assert_eq!(least_period(&w("abaab")).unwrap(), 3);
        assert!(least_period(&Word::empty()).is_err());
        let ab = Alphabet::from_str_symbols("ab").unwrap();
        for n in 1..=8 {
            for v in ab.words_of_length(n) {
                assert_eq!(least_period(&v).unwrap(), brute_period(&v));
            }
        }
    }

    #[test]
    fn repetitions() {
        assert_eq!(repetition(&w("a"), &w("a")).unwrap(), 1);
        assert_eq!(repetition(&w("ab"), &Word::empty()).unwrap(), 1);
        assert_eq!(repetition(&w("ab"), &w("ba")).unwrap(), 1);
        assert!(repetition(&Word::empty(), &Word::empty()).is_err());
        let ab = Alphabet::from_str_symbols("ab").unwrap();
        for n in 1..=6 {
            for v in ab.words_of_length(n) {
                for i in 0..=n {
                    let (p, s) = (v.prefix(i), v.drop_front(i));
                    assert_eq!(repetition(&p, &s).unwrap(), brute_rep(&p, &s));
                }
            }
        }
    }

    #[test]
    fn critical_factorization() {
        assert_eq!(cft_least_period(&w("abaab")).unwrap(), 3);
        assert_eq!(cft_least_period(&w("aa")).unwrap(), 1);
        assert_eq!(cft_least_period(&w("ab")).unwrap(), 2);
    }

    fn set(v: &[&str]) -> BTreeSet<Word> {
        v.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn forced() {
        let ab = Alphabet::from_str_symbols("ab").unwrap();
        let r = forced_periodicity(&ab, &set(&["aa", "bb"])).unwrap();
        assert!(r.nonempty && r.all_ultimately_periodic);
        assert_eq!(r.cycles, vec![w("ab")]);
        let r = forced_periodicity(&ab, &set(&["bb"])).unwrap();
        assert!(r.nonempty && !r.all_ultimately_periodic);
        let x3 = set(&["aaa", "aaba", "aabb", "ab", "baa", "baba", "babb", "bba", "bbb"]);
        let allowed = set(&["aaba", "ab", "baba"]);
        let forbidden: BTreeSet<Word> = x3.difference(&allowed).cloned().collect();
        let r = forced_periodicity(&ab, &forbidden).unwrap();
        assert!(r.nonempty && r.all_ultimately_periodic);
        assert_eq!(r.cycles, vec![w("ab")]);
        let r = forced_periodicity(&ab, &set(&["a", "b"])).unwrap();
        assert!(!r.nonempty && r.all_ultimately_periodic);
    }

    #[test]
    fn stable_degrees() {
        let a2 = CodeSet::from(&["aa", "ab", "ba", "bb"][..]);
        let s = x_stable_degree(&a2, &Generator::fibonacci(), 16).unwrap();
        assert!(s.stable && s.degrees.iter().all(|&(_, d)| d == 2));
        let x3 = CodeSet::from(&["aaa", "aaba", "aabb", "ab", "baa", "baba", "babb", "bba", "bbb"][..]);
        let per = Generator::eventually_periodic("", "ba").unwrap();
        assert!(x_stable_degree(&x3, &per, 16).unwrap().stable);
        let trunc = CodeSet::from(&["a", "baaaaab", "baaaab", "baaab", "baab", "bab", "bb"][..]);
        let tail = Generator::eventually_periodic("b", "a").unwrap();
        let s = x_stable_degree(&trunc, &tail, 16).unwrap();
        assert!(!s.stable);
        assert_eq!(s.degrees[0].1, 2);
        assert_eq!(s.degrees.last().unwrap().1, 1);
    }
}
