//! Deterministic automata for `X*`, minimization, the incidence graph of a
//! code and the coset automaton.
//!
//! State 0 is the initial state. Transitions are partial and indexed by the
//! position of the symbol in the alphabet.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::codes::CodeSet;
use crate::error::{Error, Result};
use crate::words::{Alphabet, Word};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    delta: Vec<Vec<Option<usize>>>,
    terminals: BTreeSet<usize>,
    labels: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Properties {
    pub simple: bool,
    pub trim: bool,
    pub complete: bool,
    pub reversible: bool,
    pub group: bool,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        delta: Vec<Vec<Option<usize>>>,
        terminals: BTreeSet<usize>,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        let n = delta.len();
        if n == 0 {
            return Err(Error::Precondition("automaton has no states".into()));
        }
        for row in &delta {
            if row.len() != alphabet.len() || row.iter().flatten().any(|&q| q >= n) {
                return Err(Error::Precondition("malformed transition table".into()));
            }
        }
        if terminals.iter().any(|&q| q >= n) {
            return Err(Error::Precondition("terminal state out of range".into()));
        }
        let labels = labels.unwrap_or_else(|| (0..n).map(|q| (q + 1).to_string()).collect());
        if labels.len() != n {
            return Err(Error::Precondition("label count differs from state count".into()));
        }
        Ok(Dfa { alphabet, delta, terminals, labels })
    }

    /// The group automaton of permutations, one per symbol, with base `0`.
    pub fn from_permutations(alphabet: Alphabet, perms: &[Vec<usize>]) -> Result<Self> {
        if perms.len() != alphabet.len() {
            return Err(Error::GeneratorCount { expected: alphabet.len(), got: perms.len() });
        }
        let n = perms.first().map_or(0, Vec::len);
        let delta = (0..n)
            .map(|q| perms.iter().map(|p| Some(p[q])).collect())
            .collect();
        Dfa::new(alphabet, delta, [0].into_iter().collect(), None)
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn num_states(&self) -> usize {
        self.delta.len()
    }

    pub fn initial(&self) -> usize {
        0
    }

    pub fn terminals(&self) -> &BTreeSet<usize> {
        &self.terminals
    }

    pub fn is_terminal(&self, q: usize) -> bool {
        self.terminals.contains(&q)
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn step(&self, q: usize, a: u8) -> Option<usize> {
        self.delta[q][self.alphabet.index_of(a)?]
    }

    pub fn step_index(&self, q: usize, i: usize) -> Option<usize> {
        self.delta[q][i]
    }

    pub fn run(&self, q: usize, w: &Word) -> Option<usize> {
        w.as_bytes().iter().try_fold(q, |q, &a| self.step(q, a))
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.run(0, w).is_some_and(|q| self.is_terminal(q))
    }

    /// Transitions `(p, a, q)` in state then alphabet order.
    pub fn transitions(&self) -> Vec<(usize, u8, usize)> {
        let mut out = Vec::new();
        for (p, row) in self.delta.iter().enumerate() {
            for (i, q) in row.iter().enumerate() {
                if let Some(q) = q {
                    out.push((p, self.alphabet.symbol(i), *q));
                }
            }
        }
        out
    }

    fn reachable(&self) -> Vec<bool> {
        let mut seen = vec![false; self.num_states()];
        let mut stack = vec![0];
        seen[0] = true;
        while let Some(p) = stack.pop() {
            for q in self.delta[p].iter().flatten() {
                if !seen[*q] {
                    seen[*q] = true;
                    stack.push(*q);
                }
            }
        }
        seen
    }

    fn coreachable(&self) -> Vec<bool> {
        let n = self.num_states();
        let mut rev = vec![Vec::new(); n];
        for (p, _, q) in self.transitions() {
            rev[q].push(p);
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = self.terminals.iter().copied().collect();
        for &t in &stack {
            seen[t] = true;
        }
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !seen[p] {
                    seen[p] = true;
                    stack.push(p);
                }
            }
        }
        seen
    }

    pub fn is_trim(&self) -> bool {
        self.reachable().into_iter().zip(self.coreachable()).all(|(a, b)| a && b)
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(|r| r.iter().all(Option::is_some))
    }

    pub fn is_reversible(&self) -> bool {
        (0..self.alphabet.len()).all(|i| {
            let mut seen = BTreeSet::new();
            self.delta.iter().filter_map(|r| r[i]).all(|q| seen.insert(q))
        })
    }

    pub fn properties(&self) -> Properties {
        let complete = self.is_complete();
        let reversible = self.is_reversible();
        Properties {
            simple: self.terminals.len() == 1 && self.is_terminal(0),
            trim: self.is_trim(),
            complete,
            reversible,
            group: complete && reversible,
        }
    }

    /// Renumbers reachable states in breadth-first order over the alphabet
    /// and labels each by its shortlex-least access word.
    pub fn renumbered(&self) -> Dfa {
        let n = self.num_states();
        let mut order = vec![usize::MAX; n];
        let mut access = vec![Word::empty(); n];
        let mut queue = VecDeque::from([0]);
        let mut seq = vec![0];
        order[0] = 0;
        while let Some(p) = queue.pop_front() {
            for (i, q) in self.delta[p].iter().enumerate() {
                if let Some(q) = *q {
                    if order[q] == usize::MAX {
                        order[q] = seq.len();
                        access[q] = access[p].push(self.alphabet.symbol(i));
                        seq.push(q);
                        queue.push_back(q);
                    }
                }
            }
        }
        let delta = seq
            .iter()
            .map(|&p| self.delta[p].iter().map(|q| q.map(|q| order[q])).collect())
            .collect();
        let terminals = self
            .terminals
            .iter()
            .filter(|&&t| order[t] != usize::MAX)
            .map(|&t| order[t])
            .collect();
        let labels = seq.iter().map(|&p| access[p].to_string()).collect();
        Dfa { alphabet: self.alphabet.clone(), delta, terminals, labels }
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("digraph automaton {\n  rankdir=LR;\n");
        for q in 0..self.num_states() {
            let shape = match (q == 0, self.is_terminal(q)) {
                (true, _) => "doublecircle",
                (false, true) => "doublecircle",
                _ => "circle",
            };
            let _ = writeln!(s, "  {q} [label=\"{}\", shape={shape}];", self.labels[q]);
        }
        for (p, a, q) in self.transitions() {
            let _ = writeln!(s, "  {p} -> {q} [label=\"{}\"];", a as char);
        }
        s.push_str("}\n");
        s
    }
}

#[derive(Serialize, Deserialize)]
struct DfaRepr {
    alphabet: Alphabet,
    states: usize,
    labels: Vec<String>,
    initial: usize,
    terminals: Vec<usize>,
    delta: Vec<(usize, String, usize)>,
}

impl Serialize for Dfa {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        DfaRepr {
            alphabet: self.alphabet.clone(),
            states: self.num_states(),
            labels: self.labels.clone(),
            initial: 0,
            terminals: self.terminals.iter().copied().collect(),
            delta: self
                .transitions()
                .into_iter()
                .map(|(p, a, q)| (p, (a as char).to_string(), q))
                .collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Dfa {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = DfaRepr::deserialize(deserializer)?;
        if r.initial != 0 {
            return Err(D::Error::custom("initial state must be 0"));
        }
        let mut delta = vec![vec![None; r.alphabet.len()]; r.states];
        for (p, a, q) in r.delta {
            let i = a
                .bytes()
                .next()
                .and_then(|b| r.alphabet.index_of(b))
                .ok_or_else(|| D::Error::custom(format!("unknown symbol {a}")))?;
            *delta
                .get_mut(p)
                .and_then(|row| row.get_mut(i))
                .ok_or_else(|| D::Error::custom("state out of range"))? = Some(q);
        }
        Dfa::new(r.alphabet, delta, r.terminals.into_iter().collect(), Some(r.labels))
            .map_err(D::Error::custom)
    }
}

fn code_alphabet(x: &CodeSet) -> Result<Alphabet> {
    Alphabet::new(x.iter().flat_map(|w| w.as_bytes().to_vec()))
}

/// The literal automaton `(P, 1, 1)` of `X*` over the symbols used by `X`.
pub fn literal_automaton(x: &CodeSet) -> Result<Dfa> {
    literal_automaton_over(x, &code_alphabet(x)?)
}

pub fn literal_automaton_over(x: &CodeSet, alphabet: &Alphabet) -> Result<Dfa> {
    if !x.is_prefix() {
        return Err(Error::NotPrefixCode);
    }
    let states: Vec<Word> = x.proper_prefixes().into_iter().collect();
    let index: HashMap<&Word, usize> = states.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let delta = states
        .iter()
        .map(|p| {
            alphabet
                .symbols()
                .iter()
                .map(|&a| {
                    let pa = p.push(a);
                    if x.contains(&pa) {
                        Some(0)
                    } else {
                        index.get(&pa).copied()
                    }
                })
                .collect()
        })
        .collect();
    let labels = states.iter().map(|p| p.to_string()).collect();
    Dfa::new(alphabet.clone(), delta, [0].into_iter().collect(), Some(labels))
}

/// Moore partition refinement; undefined transitions form their own class.
pub fn minimize(a: &Dfa) -> Result<Dfa> {
    if !a.is_trim() {
        return Err(Error::NotTrim);
    }
    let n = a.num_states();
    let mut class: Vec<usize> = (0..n).map(|q| usize::from(a.is_terminal(q))).collect();
    loop {
        let mut ids: BTreeMap<(usize, Vec<Option<usize>>), usize> = BTreeMap::new();
        let mut next = vec![0; n];
        for q in 0..n {
            let sig = (class[q], a.delta[q].iter().map(|t| t.map(|t| class[t])).collect());
            let len = ids.len();
            next[q] = *ids.entry(sig).or_insert(len);
        }
        let before = class.iter().collect::<BTreeSet<_>>().len();
        let after = ids.len();
        class = next;
        if before == after {
            break;
        }
    }
    let k = class.iter().max().map_or(0, |m| m + 1);
    let mut delta = vec![vec![None; a.alphabet.len()]; k];
    let mut terminals = BTreeSet::new();
    for q in 0..n {
        delta[class[q]] = a.delta[q].iter().map(|t| t.map(|t| class[t])).collect();
        if a.is_terminal(q) {
            terminals.insert(class[q]);
        }
    }
    // move the initial class to 0 before renumbering
    let init = class[0];
    let swap = |c: usize| if c == init { 0 } else if c == 0 { init } else { c };
    delta.swap(0, init);
    let delta = delta
        .into_iter()
        .map(|r| r.into_iter().map(|t| t.map(swap)).collect())
        .collect();
    let terminals = terminals.into_iter().map(swap).collect();
    Ok(Dfa { alphabet: a.alphabet.clone(), delta, terminals, labels: vec![String::new(); k] }.renumbered())
}

/// The minimal automaton of `X*` for a prefix code `X`.
pub fn minimal_automaton(x: &CodeSet) -> Result<Dfa> {
    minimize(&literal_automaton(x)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IncidenceGraph {
    /// Nonempty proper prefixes.
    pub prefixes: Vec<Word>,
    /// Nonempty proper suffixes.
    pub suffixes: Vec<Word>,
    /// `(i, j)` when `prefixes[i]·suffixes[j] ∈ X`.
    pub edges: Vec<(usize, usize)>,
    pub prefix_component: Vec<usize>,
    pub suffix_component: Vec<usize>,
    pub components: usize,
}

impl IncidenceGraph {
    pub fn vertex_count(&self) -> usize {
        self.prefixes.len() + self.suffixes.len()
    }

    /// A forest iff `E = V − C`.
    pub fn is_acyclic(&self) -> bool {
        self.edges.len() + self.components == self.vertex_count()
    }

    /// Prefix vertices of each component.
    pub fn prefix_traces(&self) -> Vec<BTreeSet<Word>> {
        let mut out = vec![BTreeSet::new(); self.components];
        for (i, p) in self.prefixes.iter().enumerate() {
            out[self.prefix_component[i]].insert(p.clone());
        }
        out
    }

    /// Suffix vertices of each component.
    pub fn suffix_traces(&self) -> Vec<BTreeSet<Word>> {
        let mut out = vec![BTreeSet::new(); self.components];
        for (j, s) in self.suffixes.iter().enumerate() {
            out[self.suffix_component[j]].insert(s.clone());
        }
        out
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph incidence {\n");
        for (i, p) in self.prefixes.iter().enumerate() {
            let _ = writeln!(s, "  p{i} [label=\"{p}⊗1\", group={}];", self.prefix_component[i]);
        }
        for (j, x) in self.suffixes.iter().enumerate() {
            let _ = writeln!(s, "  s{j} [label=\"1⊗{x}\", group={}];", self.suffix_component[j]);
        }
        for (i, j) in &self.edges {
            let _ = writeln!(s, "  p{i} -- s{j};");
        }
        s.push_str("}\n");
        s
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut x = x;
        while self.parent[x] != r {
            let next = self.parent[x];
            self.parent[x] = r;
            x = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

pub fn incidence_graph(x: &CodeSet) -> IncidenceGraph {
    let prefixes: Vec<Word> = x.proper_prefixes().into_iter().filter(|p| !p.is_empty()).collect();
    let suffixes: Vec<Word> = x.proper_suffixes().into_iter().filter(|s| !s.is_empty()).collect();
    let pi: HashMap<&Word, usize> = prefixes.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let si: HashMap<&Word, usize> = suffixes.iter().enumerate().map(|(i, s)| (s, i)).collect();
    let mut edges = Vec::new();
    for w in x.iter() {
        for cut in 1..w.len() {
            let (p, s) = (w.prefix(cut), w.drop_front(cut));
            edges.push((pi[&p], si[&s]));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    let np = prefixes.len();
    let mut uf = UnionFind::new(np + suffixes.len());
    for &(i, j) in &edges {
        uf.union(i, np + j);
    }
    let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
    let mut comp = vec![0; np + suffixes.len()];
    for (v, c) in comp.iter_mut().enumerate() {
        let r = uf.find(v);
        let len = ids.len();
        *c = *ids.entry(r).or_insert(len);
    }
    IncidenceGraph {
        prefix_component: comp[..np].to_vec(),
        suffix_component: comp[np..].to_vec(),
        components: ids.len(),
        prefixes,
        suffixes,
        edges,
    }
}

/// Classes of `θ_X` on the proper prefixes, `{1}` first, then by least member.
pub fn theta_classes(x: &CodeSet) -> Vec<BTreeSet<Word>> {
    let g = incidence_graph(x);
    let mut classes: Vec<BTreeSet<Word>> = vec![[Word::empty()].into_iter().collect()];
    let mut traces: Vec<BTreeSet<Word>> = g.prefix_traces().into_iter().filter(|t| !t.is_empty()).collect();
    traces.sort_by(|a, b| a.first().cmp(&b.first()));
    classes.extend(traces);
    classes
}

/// Quotient of the literal automaton by `θ_X`.
pub fn coset_automaton(x: &CodeSet) -> Result<Dfa> {
    coset_automaton_over(x, &code_alphabet(x)?)
}

pub fn coset_automaton_over(x: &CodeSet, alphabet: &Alphabet) -> Result<Dfa> {
    let lit = literal_automaton_over(x, alphabet)?;
    let classes = theta_classes(x);
    let mut class_of: HashMap<String, usize> = HashMap::new();
    for (c, members) in classes.iter().enumerate() {
        for p in members {
            class_of.insert(p.to_string(), c);
        }
    }
    let state_class: Vec<usize> = lit.labels.iter().map(|l| class_of[l]).collect();
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; alphabet.len()]; classes.len()];
    for (p, row) in lit.delta.iter().enumerate() {
        let c = state_class[p];
        for (i, q) in row.iter().enumerate() {
            if let Some(q) = q {
                let target = state_class[*q];
                match delta[c][i] {
                    Some(t) if t != target => {
                        return Err(Error::TransitionConflict { class: c, letter: alphabet.symbol(i) as char })
                    }
                    _ => delta[c][i] = Some(target),
                }
            }
        }
    }
    Ok(Dfa { alphabet: alphabet.clone(), delta, terminals: [0].into_iter().collect(), labels: vec![String::new(); classes.len()] }
        .renumbered())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(v: &[&str]) -> CodeSet {
        CodeSet::from(v)
    }

    fn ws(v: &[&str]) -> BTreeSet<Word> {
        v.iter().map(|s| Word::from(*s)).collect()
    }

    #[test]
    fn literal_examples() {
        let a = literal_automaton(&c(&["a", "ba"])).unwrap();
        assert_eq!(a.num_states(), 2);
        assert_eq!(a.labels(), &["1".to_string(), "b".to_string()]);
        assert_eq!(a.transitions(), vec![(0, b'a', 0), (0, b'b', 1), (1, b'a', 0)]);
        let p = a.properties();
        assert!(!p.complete && p.simple && p.trim);
        // a sends both states to 1, so the map is not injective
        let images: Vec<Option<usize>> = (0..a.num_states()).map(|q| a.step(q, b'a')).collect();
        assert_eq!(images, vec![Some(0), Some(0)]);
        assert!(!p.reversible);
        assert_eq!(literal_automaton(&c(&["aa", "ab", "ba"])).unwrap().num_states(), 3);
        let one = literal_automaton(&c(&["a"])).unwrap();
        assert_eq!(one.transitions(), vec![(0, b'a', 0)]);
        assert_eq!(literal_automaton(&c(&["a", "ab"])), Err(Error::NotPrefixCode));
    }

    #[test]
    fn minimization() {
        let a = literal_automaton(&c(&["a", "ba"])).unwrap();
        assert_eq!(minimize(&a).unwrap(), a);
        let g = minimal_automaton(&c(&["aa", "abaaba", "abab", "baab", "baba"])).unwrap();
        assert_eq!(g.num_states(), 9);
        // a non-minimal automaton: A² literal on {aa,ab,ba,bb} merges a and b
        let m = minimal_automaton(&c(&["aa", "ab", "ba", "bb"])).unwrap();
        assert_eq!(m.num_states(), 2);
    }

    #[test]
    fn incidence_examples() {
        let g = incidence_graph(&c(&["a", "baab", "babaabaabab", "babaabab"]));
        assert_eq!(g.components, 2);
        assert!(g.is_acyclic());
        let g = incidence_graph(&c(&["ab"]));
        assert_eq!((g.edges.len(), g.components), (1, 1));
        let g = incidence_graph(&c(&["aa", "ab", "ba"]));
        assert_eq!((g.vertex_count(), g.edges.len(), g.components), (4, 3, 1));
        assert!(g.is_acyclic());
    }

    #[test]
    fn theta_examples() {
        let t = theta_classes(&c(&["a", "baab", "babaabaabab", "babaabab"]));
        assert_eq!(
            t,
            vec![
                ws(&[""]),
                ws(&["babaabaaba", "babaaba", "baba", "baa", "b"]),
                ws(&["babaabaab", "babaabaa", "babaab", "babaa", "bab", "ba"]),
            ]
        );
        assert_eq!(theta_classes(&c(&["aa", "ab", "ba"])), vec![ws(&[""]), ws(&["a", "b"])]);
        assert_eq!(theta_classes(&c(&["ab"])), vec![ws(&[""]), ws(&["a"])]);
    }

    #[test]
    fn coset_examples() {
        let b = coset_automaton(&c(&["a", "baab", "babaabaabab", "babaabab"])).unwrap();
        assert_eq!(b.num_states(), 3);
        assert!(b.properties().group);
        for w in ["a", "bb", "babab", "baab", "babaabab"] {
            assert!(b.accepts(&Word::from(w)), "{w}");
        }
        for w in ["b", "ab", "babb"] {
            assert!(!b.accepts(&Word::from(w)), "{w}");
        }
        let g = coset_automaton(&c(&["aa", "abaaba", "abab", "baab", "baba"])).unwrap();
        assert_eq!(g.num_states(), 4);
        assert!(g.properties().group);
        let one = coset_automaton(&c(&["a", "b"])).unwrap();
        assert_eq!(one.transitions(), vec![(0, b'a', 0), (0, b'b', 0)]);
    }

    #[test]
    fn json_round_trip() {
        let a = coset_automaton(&c(&["a", "bab", "baab"])).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        assert_eq!(serde_json::from_str::<Dfa>(&s).unwrap(), a);
    }
}
