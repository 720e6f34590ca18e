//! Free-group elements, Stallings foldings and subgroup statistics.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

/// A reduced word over `A ∪ A⁻¹`; the flag marks an inverse letter.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement(Vec<(u8, bool)>);

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement(Vec::new())
    }

    /// Free reduction of an arbitrary letter sequence.
    pub fn reduce<I: IntoIterator<Item = (u8, bool)>>(letters: I) -> Self {
        let mut out: Vec<(u8, bool)> = Vec::new();
        for (a, inv) in letters {
            if out.last() == Some(&(a, !inv)) {
                out.pop();
            } else {
                out.push((a, inv));
            }
        }
        GroupElement(out)
    }

    pub fn from_word(w: &Word) -> Self {
        GroupElement(w.as_bytes().iter().map(|&a| (a, false)).collect())
    }

    /// Lowercase letters are generators, uppercase their inverses; `1` is the identity.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "1" {
            return Ok(Self::identity());
        }
        let mut v = Vec::new();
        for c in s.chars() {
            if c.is_ascii_lowercase() {
                v.push((c as u8, false));
            } else if c.is_ascii_uppercase() {
                v.push((c.to_ascii_lowercase() as u8, true));
            } else {
                return Err(Error::UnknownSymbol(c));
            }
        }
        Ok(Self::reduce(v))
    }

    pub fn letters(&self) -> &[(u8, bool)] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Self {
        GroupElement(self.0.iter().rev().map(|&(a, i)| (a, !i)).collect())
    }

    pub fn mul(&self, other: &GroupElement) -> Self {
        Self::reduce(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn check(&self, alphabet: &Alphabet) -> Result<()> {
        match self.0.iter().find(|(a, _)| !alphabet.contains(*a)) {
            Some(&(a, _)) => Err(Error::UnknownSymbol(a as char)),
            None => Ok(()),
        }
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for &(a, inv) in &self.0 {
            let c = if inv { (a as char).to_ascii_uppercase() } else { a as char };
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// A base-pointed graph with edges labeled by symbols; the base is vertex 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StallingsGraph {
    alphabet: Alphabet,
    vertices: usize,
    /// `(source, symbol, target)`, sorted.
    edges: Vec<(usize, char, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubgroupStats {
    pub rank: usize,
    /// `None` for infinite index.
    pub index: Option<usize>,
    pub complete: bool,
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut x = x;
        while self.0[x] != r {
            let n = self.0[x];
            self.0[x] = r;
            x = n;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra.max(rb)] = ra.min(rb);
        true
    }
}

/// Edges of the bouquet of cycles spelling the generators at the base.
fn bouquet(gens: &[Word]) -> (usize, Vec<(usize, u8, usize)>) {
    let mut n = 1;
    let mut edges = Vec::new();
    for g in gens {
        let mut cur = 0;
        for (i, &a) in g.as_bytes().iter().enumerate() {
            let next = if i + 1 == g.len() {
                0
            } else {
                n += 1;
                n - 1
            };
            edges.push((cur, a, next));
            cur = next;
        }
    }
    (n, edges)
}

/// Number of edges of the bouquet for `gens`, the length of a fold order.
pub fn bouquet_edge_count(gens: &[Word]) -> usize {
    gens.iter().map(Word::len).sum()
}

impl StallingsGraph {
    /// Folds the bouquet of `gens` over the symbols they use.
    pub fn fold(gens: &[Word]) -> Result<Self> {
        let alphabet = Alphabet::new(gens.iter().flat_map(|w| w.as_bytes().to_vec()))?;
        Self::fold_over(gens, &alphabet)
    }

    pub fn fold_over(gens: &[Word], alphabet: &Alphabet) -> Result<Self> {
        let order: Vec<usize> = (0..bouquet_edge_count(gens)).collect();
        Self::fold_with_order(gens, alphabet, &order)
    }

    /// Folds scanning bouquet edges in the given order.
    pub fn fold_with_order(gens: &[Word], alphabet: &Alphabet, order: &[usize]) -> Result<Self> {
        if gens.is_empty() || gens.iter().any(Word::is_empty) {
            return Err(Error::Precondition("generators must be nonempty positive words".into()));
        }
        for g in gens {
            alphabet.check_word(g)?;
        }
        let (n, edges) = bouquet(gens);
        if order.len() != edges.len() || order.iter().collect::<BTreeSet<_>>().len() != edges.len() {
            return Err(Error::Precondition("fold order must permute the bouquet edges".into()));
        }
        let mut uf = UnionFind((0..n).collect());
        loop {
            let mut merged = false;
            let mut out: HashMap<(usize, u8), usize> = HashMap::new();
            let mut inn: HashMap<(usize, u8), usize> = HashMap::new();
            for &e in order {
                let (p, a, q) = edges[e];
                let (p, q) = (uf.find(p), uf.find(q));
                match out.get(&(p, a)).copied() {
                    Some(t) if uf.find(t) != q => merged |= uf.union(t, q),
                    Some(_) => {}
                    None => {
                        out.insert((p, a), q);
                    }
                }
                let (p, q) = (uf.find(p), uf.find(q));
                match inn.get(&(q, a)).copied() {
                    Some(s) if uf.find(s) != p => merged |= uf.union(s, p),
                    Some(_) => {}
                    None => {
                        inn.insert((q, a), p);
                    }
                }
            }
            if !merged {
                break;
            }
        }
        let raw: Vec<(usize, u8, usize)> = edges.iter().map(|&(p, a, q)| (uf.find(p), a, uf.find(q))).collect();
        Ok(Self::canonical(alphabet, &raw))
    }

    /// Builds the graph of an automaton; it is folded iff the automaton is reversible.
    pub fn from_dfa(dfa: &Dfa) -> Self {
        Self::canonical(dfa.alphabet(), &dfa.transitions())
    }

    /// Renumbers vertices breadth-first from the base, following out-edges
    /// then in-edges in alphabet order, and drops duplicate edges.
    fn canonical(alphabet: &Alphabet, raw: &[(usize, u8, usize)]) -> Self {
        let mut out: HashMap<usize, Vec<(u8, usize)>> = HashMap::new();
        let mut inn: HashMap<usize, Vec<(u8, usize)>> = HashMap::new();
        for &(p, a, q) in raw {
            out.entry(p).or_default().push((a, q));
            inn.entry(q).or_default().push((a, p));
        }
        for v in out.values_mut().chain(inn.values_mut()) {
            v.sort_unstable();
            v.dedup();
        }
        let mut order: HashMap<usize, usize> = HashMap::from([(0, 0)]);
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            let nexts = out.get(&v).into_iter().flatten().chain(inn.get(&v).into_iter().flatten());
            for &(_, w) in nexts {
                if !order.contains_key(&w) {
                    order.insert(w, order.len());
                    queue.push_back(w);
                }
            }
        }
        let mut edges: Vec<(usize, char, usize)> = raw
            .iter()
            .filter(|(p, _, _)| order.contains_key(p))
            .map(|&(p, a, q)| (order[&p], a as char, order[&q]))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        StallingsGraph { alphabet: alphabet.clone(), vertices: order.len(), edges }
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[(usize, char, usize)] {
        &self.edges
    }

    pub fn is_folded(&self) -> bool {
        let mut out = BTreeSet::new();
        let mut inn = BTreeSet::new();
        self.edges.iter().all(|&(p, a, q)| out.insert((p, a)) && inn.insert((q, a)))
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.vertices * self.alphabet.len()
    }

    pub fn stats(&self) -> Result<SubgroupStats> {
        if !self.is_folded() {
            return Err(Error::Unfolded);
        }
        let complete = self.is_complete();
        Ok(SubgroupStats {
            rank: self.edges.len() + 1 - self.vertices,
            index: complete.then_some(self.vertices),
            complete,
        })
    }

    fn step(&self, v: usize, a: u8, inverse: bool) -> Option<usize> {
        let a = a as char;
        self.edges.iter().find_map(|&(p, b, q)| match inverse {
            false if p == v && b == a => Some(q),
            true if q == v && b == a => Some(p),
            _ => None,
        })
    }

    /// True iff `g` labels a closed path at the base.
    pub fn contains(&self, g: &GroupElement) -> Result<bool> {
        if !self.is_folded() {
            return Err(Error::Unfolded);
        }
        let mut v = 0;
        for &(a, inv) in g.letters() {
            match self.step(v, a, inv) {
                Some(w) => v = w,
                None => return Ok(false),
            }
        }
        Ok(v == 0)
    }

    /// A free basis read from a breadth-first spanning tree and its chords.
    pub fn basis(&self) -> Vec<GroupElement> {
        let mut path: Vec<Option<GroupElement>> = vec![None; self.vertices];
        path[0] = Some(GroupElement::identity());
        let mut tree = BTreeSet::new();
        let mut queue = VecDeque::from([0]);
        while let Some(v) = queue.pop_front() {
            for (i, &(p, a, q)) in self.edges.iter().enumerate() {
                let pv = path[v].clone().unwrap();
                if p == v && path[q].is_none() {
                    path[q] = Some(pv.mul(&GroupElement(vec![(a as u8, false)])));
                    tree.insert(i);
                    queue.push_back(q);
                } else if q == v && path[p].is_none() {
                    path[p] = Some(pv.mul(&GroupElement(vec![(a as u8, true)])));
                    tree.insert(i);
                    queue.push_back(p);
                }
            }
        }
        self.edges
            .iter()
            .enumerate()
            .filter(|(i, _)| !tree.contains(i))
            .map(|(_, &(p, a, q))| {
                let pp = path[p].clone().unwrap();
                let pq = path[q].clone().unwrap();
                pp.mul(&GroupElement(vec![(a as u8, false)])).mul(&pq.inverse())
            })
            .collect()
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph stallings {\n");
        for v in 0..self.vertices {
            let shape = if v == 0 { "doublecircle" } else { "circle" };
            let _ = writeln!(s, "  {v} [shape={shape}];");
        }
        for (p, a, q) in &self.edges {
            let _ = writeln!(s, "  {p} -> {q} [label=\"{a}\"];");
        }
        s.push_str("}\n");
        s
    }
}

/// True iff the words are a basis of the subgroup they generate.
pub fn is_basis(x: &[Word]) -> Result<bool> {
    let distinct: BTreeSet<&Word> = x.iter().collect();
    if distinct.len() != x.len() {
        return Ok(false);
    }
    Ok(StallingsGraph::fold(x)?.stats()?.rank == x.len())
}

/// Number of subgroups of index `d` in the free group of rank `k`.
pub fn hall_count(d: usize, k: usize) -> BigInt {
    let mut fact = vec![BigInt::one()];
    for i in 1..=d {
        let next = &fact[i - 1] * BigInt::from(i);
        fact.push(next);
    }
    let pow = |b: &BigInt| -> BigInt { (0..k.saturating_sub(1)).fold(BigInt::one(), |acc, _| acc * b) };
    let mut n: Vec<BigInt> = vec![BigInt::zero()];
    for e in 1..=d {
        let mut v = BigInt::from(e) * pow(&fact[e]);
        for (i, ni) in n.iter().enumerate().take(e).skip(1) {
            v -= pow(&fact[e - i]) * ni;
        }
        n.push(v);
    }
    n[d].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::seq::SliceRandom;
    use rand::SeedableRng;

    fn ws(v: &[&str]) -> Vec<Word> {
        v.iter().map(|s| Word::from(*s)).collect()
    }

    #[test]
    fn reduction() {
        assert_eq!(GroupElement::parse("abB").unwrap().to_string(), "a");
        assert_eq!(GroupElement::parse("aA").unwrap(), GroupElement::identity());
        assert_eq!(GroupElement::parse("aB").unwrap().to_string(), "aB");
        assert!(GroupElement::parse("a1").is_err());
        let g = GroupElement::parse("abAb").unwrap();
        assert_eq!(g.mul(&g.inverse()), GroupElement::identity());
    }

    #[test]
    fn folding_examples() {
        let g = StallingsGraph::fold(&ws(&["a", "bab", "baab"])).unwrap();
        assert_eq!(g.vertex_count(), 2);
        let s = g.stats().unwrap();
        assert_eq!((s.rank, s.index, s.complete), (3, Some(2), true));
        let g = StallingsGraph::fold(&ws(&["aba"])).unwrap();
        let s = g.stats().unwrap();
        assert_eq!((s.rank, s.index), (1, None));
        let g = StallingsGraph::fold(&ws(&["aa", "ab", "ba", "bb"])).unwrap();
        let s = g.stats().unwrap();
        assert_eq!((s.rank, s.index), (3, Some(2)));
        let g = StallingsGraph::fold(&ws(&["aa", "abaaba", "abab", "baab", "baba"])).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert!(g.is_complete());
    }

    #[test]
    fn membership() {
        let g = StallingsGraph::fold(&ws(&["a", "baab", "babaabaabab", "babaabab"])).unwrap();
        assert!(g.contains(&GroupElement::parse("bb").unwrap()).unwrap());
        let even = StallingsGraph::fold(&ws(&["aa", "ab", "ba", "bb"])).unwrap();
        assert!(!even.contains(&GroupElement::parse("a").unwrap()).unwrap());
        assert!(even.contains(&GroupElement::identity()).unwrap());
        assert!(even.contains(&GroupElement::parse("aB").unwrap()).unwrap());
    }

    #[test]
    fn bases() {
        assert!(is_basis(&ws(&["a", "bab", "baab"])).unwrap());
        assert!(!is_basis(&ws(&["ab", "aba", "b"])).unwrap());
        assert!(is_basis(&ws(&["a"])).unwrap());
        let g = StallingsGraph::fold(&ws(&["a", "bab", "baab"])).unwrap();
        let basis = g.basis();
        assert_eq!(basis.len(), 3);
        for b in &basis {
            assert!(g.contains(b).unwrap());
        }
    }

    #[test]
    fn hall_numbers() {
        let v: Vec<BigInt> = (1..=7).map(|d| hall_count(d, 2)).collect();
        let expected: Vec<BigInt> = [1, 3, 13, 71, 461, 3447, 29093].into_iter().map(BigInt::from).collect();
        assert_eq!(v, expected);
        assert_eq!(hall_count(1, 1), BigInt::one());
        assert_eq!(hall_count(3, 1), BigInt::one());
    }

    #[test]
    fn fold_order_is_irrelevant() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let gens = ws(&["aa", "abaaba", "abab", "baab", "baba"]);
        let alpha = Alphabet::from_str_symbols("ab").unwrap();
        let base = StallingsGraph::fold_over(&gens, &alpha).unwrap();
        for _ in 0..50 {
            let mut order: Vec<usize> = (0..bouquet_edge_count(&gens)).collect();
            order.shuffle(&mut rng);
            assert_eq!(StallingsGraph::fold_with_order(&gens, &alpha, &order).unwrap(), base);
        }
    }
}
