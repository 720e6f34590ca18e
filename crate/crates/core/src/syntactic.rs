//! Transition monoids, Green's relations, F-groups and group codes.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::{minimal_automaton, Dfa};
use crate::codes::{analyze, intersect_with_f, CodeSet, ZSpec};
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::graph::scc;
use crate::words::{Alphabet, Word};

pub const DEFAULT_MONOID_CAP: usize = 100_000;
const GROUP_CAP: usize = 1 << 20;
const EQUIVALENCE_DEGREE_CAP: usize = 12;

/// A partial map on states; `None` marks an undefined image.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartialMap(Vec<Option<usize>>);

impl PartialMap {
    pub fn identity(n: usize) -> Self {
        PartialMap((0..n).map(Some).collect())
    }

    pub fn new(images: Vec<Option<usize>>) -> Self {
        PartialMap(images)
    }

    pub fn apply(&self, p: usize) -> Option<usize> {
        self.0[p]
    }

    /// `self` first, then `g`.
    pub fn then(&self, g: &PartialMap) -> PartialMap {
        PartialMap(self.0.iter().map(|p| p.and_then(|p| g.0[p])).collect())
    }

    pub fn image(&self) -> BTreeSet<usize> {
        self.0.iter().flatten().copied().collect()
    }

    pub fn rank(&self) -> usize {
        self.image().len()
    }

    /// Classes of the domain grouped by common image.
    pub fn kernel(&self) -> BTreeSet<BTreeSet<usize>> {
        let mut by_image: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for (p, q) in self.0.iter().enumerate() {
            if let Some(q) = q {
                by_image.entry(*q).or_default().insert(p);
            }
        }
        by_image.into_values().collect()
    }

    pub fn is_idempotent(&self) -> bool {
        self.then(self) == *self
    }

    /// The permutation induced on `points`, indexed by position, if any.
    pub fn permutation_on(&self, points: &[usize]) -> Option<Vec<usize>> {
        let pos: HashMap<usize, usize> = points.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        let perm: Vec<usize> = points
            .iter()
            .map(|&p| self.0[p].and_then(|q| pos.get(&q).copied()))
            .collect::<Option<_>>()?;
        let distinct: BTreeSet<usize> = perm.iter().copied().collect();
        (distinct.len() == points.len()).then_some(perm)
    }
}

#[derive(Debug, Clone)]
pub struct TransitionMonoid {
    alphabet: Alphabet,
    states: usize,
    elements: Vec<PartialMap>,
    witnesses: Vec<Word>,
    index: HashMap<PartialMap, usize>,
    right: Vec<Vec<usize>>,
    left: Vec<Vec<usize>>,
}

/// Breadth-first closure of the symbol maps, keeping shortlex-least witnesses.
pub fn transition_monoid(dfa: &Dfa, cap: usize) -> Result<TransitionMonoid> {
    let n = dfa.num_states();
    let k = dfa.alphabet().len();
    let gens: Vec<PartialMap> = (0..k)
        .map(|i| PartialMap((0..n).map(|q| dfa.step_index(q, i)).collect()))
        .collect();
    let id = PartialMap::identity(n);
    let mut elements = vec![id.clone()];
    let mut witnesses = vec![Word::empty()];
    let mut index = HashMap::from([(id, 0)]);
    let mut right: Vec<Vec<usize>> = Vec::new();
    let mut queue = VecDeque::from([0]);
    while let Some(m) = queue.pop_front() {
        let mut row = Vec::with_capacity(k);
        for (i, g) in gens.iter().enumerate() {
            let next = elements[m].then(g);
            let j = match index.get(&next) {
                Some(&j) => j,
                None => {
                    if elements.len() >= cap {
                        return Err(Error::CapExceeded(cap));
                    }
                    let j = elements.len();
                    index.insert(next.clone(), j);
                    elements.push(next);
                    witnesses.push(witnesses[m].push(dfa.alphabet().symbol(i)));
                    queue.push_back(j);
                    j
                }
            };
            row.push(j);
        }
        right.push(row);
    }
    let left = elements
        .iter()
        .map(|m| gens.iter().map(|g| index[&g.then(m)]).collect())
        .collect();
    Ok(TransitionMonoid {
        alphabet: dfa.alphabet().clone(),
        states: n,
        elements,
        witnesses,
        index,
        right,
        left,
    })
}

impl TransitionMonoid {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn states(&self) -> usize {
        self.states
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn element(&self, i: usize) -> &PartialMap {
        &self.elements[i]
    }

    pub fn witness(&self, i: usize) -> &Word {
        &self.witnesses[i]
    }

    pub fn index_of(&self, m: &PartialMap) -> Option<usize> {
        self.index.get(m).copied()
    }

    /// Index of `φ(w)`.
    pub fn element_of(&self, w: &Word) -> Result<usize> {
        w.as_bytes().iter().try_fold(0, |m, &a| {
            let i = self.alphabet.index_of(a).ok_or(Error::UnknownSymbol(a as char))?;
            Ok(self.right[m][i])
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EggboxCell {
    pub elements: Vec<Word>,
    pub group: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DClassReport {
    pub rank: usize,
    /// Rows are R-classes, columns L-classes.
    pub cells: Vec<Vec<EggboxCell>>,
    pub structure_group: PermutationGroup,
}

impl DClassReport {
    pub fn rows(&self) -> usize {
        self.cells.len()
    }

    pub fn columns(&self) -> usize {
        self.cells.first().map_or(0, Vec::len)
    }

    pub fn group_cells(&self) -> usize {
        self.cells.iter().flatten().filter(|c| c.group).count()
    }

    pub fn render(&self) -> String {
        let text: Vec<Vec<String>> = self
            .cells
            .iter()
            .map(|row| {
                row.iter()
                    .map(|c| {
                        let star = if c.group { "*" } else { "" };
                        let ws: Vec<String> = c.elements.iter().map(Word::to_string).collect();
                        format!("{star}{}", ws.join(" "))
                    })
                    .collect()
            })
            .collect();
        let width = text.iter().flatten().map(|s| s.chars().count()).max().unwrap_or(0);
        let mut out = String::new();
        for row in &text {
            let cells: Vec<String> = row.iter().map(|s| format!("{s:width$}")).collect();
            let _ = writeln!(out, "| {} |", cells.join(" | "));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreenReport {
    pub r: Vec<usize>,
    pub l: Vec<usize>,
    pub h: Vec<usize>,
    pub d: Vec<usize>,
    pub idempotents: Vec<bool>,
    pub dclass: Option<DClassReport>,
}

impl GreenReport {
    pub fn members(class: &[usize], id: usize) -> Vec<usize> {
        class.iter().enumerate().filter(|(_, &c)| c == id).map(|(i, _)| i).collect()
    }

    pub fn d_class_count(&self) -> usize {
        self.d.iter().max().map_or(0, |m| m + 1)
    }
}

fn renumber(ids: &[usize]) -> Vec<usize> {
    let mut map = HashMap::new();
    ids.iter()
        .map(|&c| {
            let k = map.len();
            *map.entry(c).or_insert(k)
        })
        .collect()
}

/// Green's relations, and optionally the D-class met by `φ(F)` at `rank`
/// (the least rank over `φ(F)` by default).
pub fn green_analysis(m: &TransitionMonoid, restrict: Option<&FactorSet>, rank: Option<usize>) -> Result<GreenReport> {
    let r = scc(&m.right);
    let l = scc(&m.left);
    let h = renumber(&r.iter().zip(&l).map(|(&a, &b)| a * m.len() + b).collect::<Vec<_>>());
    let mut parent: Vec<usize> = (0..m.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut x = x;
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    let mut first_r: HashMap<usize, usize> = HashMap::new();
    let mut first_l: HashMap<usize, usize> = HashMap::new();
    for i in 0..m.len() {
        for j in [*first_r.entry(r[i]).or_insert(i), *first_l.entry(l[i]).or_insert(i)] {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a.max(b)] = a.min(b);
        }
    }
    let d = renumber(&(0..m.len()).map(|i| find(&mut parent, i)).collect::<Vec<_>>());
    let idempotents: Vec<bool> = m.elements.iter().map(PartialMap::is_idempotent).collect();
    let mut report = GreenReport { r, l, h, d, idempotents, dclass: None };
    if let Some(f) = restrict {
        let mut phi_f = BTreeSet::new();
        for w in f.words() {
            phi_f.insert(m.element_of(w)?);
        }
        let rank = match rank {
            Some(r) => r,
            None => phi_f.iter().map(|&i| m.elements[i].rank()).min().unwrap_or(0),
        };
        let classes: BTreeSet<usize> = phi_f
            .iter()
            .filter(|&&i| m.elements[i].rank() == rank)
            .map(|&i| report.d[i])
            .collect();
        match classes.len() {
            0 => return Err(Error::Precondition(format!("no element of phi(F) has rank {rank}"))),
            1 => {}
            n => return Err(Error::MultipleDClasses { rank, classes: n }),
        }
        let dc = *classes.iter().next().unwrap();
        report.dclass = Some(d_class_report(m, &report, dc, rank)?);
    }
    Ok(report)
}

fn d_class_report(m: &TransitionMonoid, g: &GreenReport, dc: usize, rank: usize) -> Result<DClassReport> {
    let members = GreenReport::members(&g.d, dc);
    let mut rows: Vec<usize> = Vec::new();
    let mut cols: Vec<usize> = Vec::new();
    for &i in &members {
        if !rows.contains(&g.r[i]) {
            rows.push(g.r[i]);
        }
        if !cols.contains(&g.l[i]) {
            cols.push(g.l[i]);
        }
    }
    let cells = rows
        .iter()
        .map(|&rc| {
            cols.iter()
                .map(|&lc| {
                    let inside: Vec<usize> = members.iter().copied().filter(|&i| g.r[i] == rc && g.l[i] == lc).collect();
                    EggboxCell {
                        group: inside.iter().any(|&i| g.idempotents[i]),
                        elements: inside.iter().map(|&i| m.witnesses[i].clone()).collect(),
                    }
                })
                .collect()
        })
        .collect();
    let e = members
        .iter()
        .copied()
        .find(|&i| g.idempotents[i])
        .ok_or_else(|| Error::Precondition("D-class is not regular".into()))?;
    let structure_group = h_class_group(m, g, e)?;
    Ok(DClassReport { rank, cells, structure_group })
}

/// The H-class of `i` acting on the common image of its elements.
pub fn h_class_group(m: &TransitionMonoid, g: &GreenReport, i: usize) -> Result<PermutationGroup> {
    let points: Vec<usize> = m.elements[i].image().into_iter().collect();
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for j in GreenReport::members(&g.h, g.h[i]) {
        let p = m.elements[j]
            .permutation_on(&points)
            .ok_or_else(|| Error::NotPermutation(m.witnesses[j].to_string()))?;
        gens.push(p);
        labels.push(m.witnesses[j].to_string());
    }
    PermutationGroup::new(points.iter().map(|p| p.to_string()).collect(), gens, labels)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PermutationGroup {
    pub points: Vec<String>,
    pub generators: Vec<Vec<usize>>,
    pub labels: Vec<String>,
}

fn compose(p: &[usize], q: &[usize]) -> Vec<usize> {
    p.iter().map(|&x| q[x]).collect()
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

impl PermutationGroup {
    pub fn new(points: Vec<String>, generators: Vec<Vec<usize>>, labels: Vec<String>) -> Result<Self> {
        let n = points.len();
        for g in &generators {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != n || distinct.len() != n || g.iter().any(|&x| x >= n) {
                return Err(Error::NotPermutation(format!("{g:?}")));
            }
        }
        if labels.len() != generators.len() {
            return Err(Error::Precondition("one label per generator".into()));
        }
        Ok(PermutationGroup { points, generators, labels })
    }

    /// Points `1..=n`, generators labeled by the first symbols.
    pub fn on_points(n: usize, generators: Vec<Vec<usize>>) -> Result<Self> {
        let labels = (0..generators.len()).map(|i| ((b'a' + i as u8) as char).to_string()).collect();
        Self::new((1..=n).map(|p| p.to_string()).collect(), generators, labels)
    }

    pub fn degree(&self) -> usize {
        self.points.len()
    }

    pub fn elements(&self) -> Result<Vec<Vec<usize>>> {
        let id: Vec<usize> = (0..self.degree()).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = compose(&p, g);
                if seen.insert(q.clone()) {
                    if seen.len() > GROUP_CAP {
                        return Err(Error::CapExceeded(GROUP_CAP));
                    }
                    queue.push_back(q);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.elements()?.len())
    }

    pub fn is_transitive(&self) -> bool {
        let n = self.degree();
        if n == 0 {
            return false;
        }
        let mut seen = vec![false; n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(p) = stack.pop() {
            for g in &self.generators {
                if !seen[g[p]] {
                    seen[g[p]] = true;
                    stack.push(g[p]);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    pub fn element_order(p: &[usize]) -> usize {
        let mut seen = vec![false; p.len()];
        let mut order = 1;
        for s in 0..p.len() {
            let mut len = 0;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
                len += 1;
            }
            if len > 0 {
                order = order / gcd(order, len) * len;
            }
        }
        order
    }

    pub fn exponent(&self) -> Result<usize> {
        Ok(self
            .elements()?
            .iter()
            .map(|p| Self::element_order(p))
            .fold(1, |acc, o| acc / gcd(acc, o) * o))
    }

    /// Cycle notation over the point names, `id` for the identity.
    pub fn cycles(&self, p: &[usize]) -> String {
        let mut seen = vec![false; p.len()];
        let mut out = String::new();
        for s in 0..p.len() {
            if seen[s] || p[s] == s {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                cyc.push(self.points[x].as_str());
                x = p[x];
            }
            let _ = write!(out, "({})", cyc.join(" "));
        }
        if out.is_empty() {
            "id".into()
        } else {
            out
        }
    }
}

/// `G_F(X)` computed from the return words to the shortest word with `d` parses.
pub fn f_group(x: &CodeSet, f: &FactorSet) -> Result<PermutationGroup> {
    let an = analyze(x, f)?;
    let dfa = minimal_automaton(x)?;
    let u = an.witness;
    let image: BTreeSet<usize> = (0..dfa.num_states()).filter_map(|q| dfa.run(q, &u)).collect();
    if image.len() != an.degree {
        return Err(Error::Verification(format!(
            "image of {u} has {} states, expected {}",
            image.len(),
            an.degree
        )));
    }
    let points: Vec<usize> = image.into_iter().collect();
    let returns = f.return_words(&u)?;
    let mut gens = Vec::new();
    let mut labels = Vec::new();
    for y in &returns.right {
        let map = PartialMap((0..dfa.num_states()).map(|q| dfa.run(q, y)).collect());
        gens.push(map.permutation_on(&points).ok_or_else(|| Error::NotPermutation(y.to_string()))?);
        labels.push(y.to_string());
    }
    let names = points.iter().map(|&q| dfa.labels()[q].clone()).collect();
    PermutationGroup::new(names, gens, labels)
}

/// The group automaton of `g` with base point `0` and its first returns of
/// length at most `max_len`.
pub fn group_code(g: &PermutationGroup, alphabet: &Alphabet, max_len: usize) -> Result<(Dfa, CodeSet)> {
    if g.generators.len() != alphabet.len() {
        return Err(Error::GeneratorCount { expected: alphabet.len(), got: g.generators.len() });
    }
    if !g.is_transitive() {
        return Err(Error::NotTransitive);
    }
    let dfa = Dfa::from_permutations(alphabet.clone(), &g.generators)?;
    let mut found = Vec::new();
    let mut frontier = vec![(Word::empty(), 0usize)];
    for _ in 0..max_len {
        let mut next = Vec::new();
        for (w, q) in &frontier {
            for &a in alphabet.symbols() {
                let p = dfa.step(*q, a).unwrap();
                if p == 0 {
                    found.push(w.push(a));
                } else {
                    next.push((w.push(a), p));
                }
            }
        }
        frontier = next;
    }
    Ok((dfa, CodeSet::new(found)?))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub code: CodeSet,
    pub degree: usize,
    pub fgroup: PermutationGroup,
    pub cardinality_ok: bool,
    pub equivalent: bool,
}

/// Builds `Z ∩ F` from the group code of `g` and compares its F-group with `g`.
pub fn realize_syntactic_group(g: &PermutationGroup, f: &FactorSet) -> Result<Realization> {
    let (dfa, _) = group_code(g, f.alphabet(), 0)?;
    let inter = intersect_with_f(&ZSpec::Automaton(dfa), f)?;
    let fgroup = f_group(&inter.code, f)?;
    let k = f.alphabet().len();
    let cardinality_ok = inter.code.len() == (k - 1) * g.degree() + 1;
    let equivalent = perm_group_equivalent(&fgroup, g)?;
    Ok(Realization { code: inter.code, degree: inter.degree, fgroup, cardinality_ok, equivalent })
}

/// True iff some bijection of points conjugates one group onto the other.
pub fn perm_group_equivalent(g: &PermutationGroup, h: &PermutationGroup) -> Result<bool> {
    let n = g.degree();
    if n != h.degree() {
        return Ok(false);
    }
    if n > EQUIVALENCE_DEGREE_CAP {
        return Err(Error::SearchCap(format!("degree {n} exceeds {EQUIVALENCE_DEGREE_CAP}")));
    }
    let ge = g.elements()?;
    let he = h.elements()?;
    let orders = |v: &[Vec<usize>]| {
        let mut o: Vec<usize> = v.iter().map(|p| PermutationGroup::element_order(p)).collect();
        o.sort_unstable();
        o
    };
    if ge.len() != he.len() || orders(&ge) != orders(&he) {
        return Ok(false);
    }
    let gens: Vec<&Vec<usize>> = g.generators.iter().collect();
    let mut beta = vec![usize::MAX; n];
    let mut used = vec![false; n];
    Ok(search(0, &gens, &he, &mut beta, &mut used))
}

fn consistent(gens: &[&Vec<usize>], he: &[Vec<usize>], beta: &[usize]) -> bool {
    gens.iter().all(|gen| {
        he.iter().any(|h| {
            (0..beta.len()).all(|p| {
                let (bp, bq) = (beta[p], beta[gen[p]]);
                bp == usize::MAX || bq == usize::MAX || h[bp] == bq
            })
        })
    })
}

fn search(p: usize, gens: &[&Vec<usize>], he: &[Vec<usize>], beta: &mut [usize], used: &mut [bool]) -> bool {
    if p == beta.len() {
        return true;
    }
    for t in 0..beta.len() {
        if used[t] {
            continue;
        }
        beta[p] = t;
        used[t] = true;
        if consistent(gens, he, beta) && search(p + 1, gens, he, beta, used) {
            return true;
        }
        used[t] = false;
        beta[p] = usize::MAX;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::Generator;

    fn giuseppina() -> CodeSet {
        CodeSet::from(&["aa", "abaaba", "abab", "baab", "baba"][..])
    }

    fn fib(depth: usize) -> FactorSet {
        FactorSet::build(&Generator::fibonacci(), depth).unwrap()
    }

    fn ab() -> Alphabet {
        Alphabet::from_str_symbols("ab").unwrap()
    }

    fn klein() -> PermutationGroup {
        PermutationGroup::on_points(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).unwrap()
    }

    #[test]
    fn small_monoids() {
        let dfa = Dfa::from_permutations(ab(), &[vec![0, 1], vec![1, 0]]).unwrap();
        assert_eq!(transition_monoid(&dfa, 100).unwrap().len(), 2);
        let one = Dfa::from_permutations(ab(), &[vec![0], vec![0]]).unwrap();
        let m = transition_monoid(&one, 100).unwrap();
        assert_eq!(m.len(), 1);
        let g = green_analysis(&m, None, None).unwrap();
        assert_eq!(g.d_class_count(), 1);
        assert!(matches!(transition_monoid(&minimal_automaton(&giuseppina()).unwrap(), 3), Err(Error::CapExceeded(3))));
    }

    #[test]
    fn giuseppina_eggbox() {
        let f = fib(16);
        let m = transition_monoid(&minimal_automaton(&giuseppina()).unwrap(), DEFAULT_MONOID_CAP).unwrap();
        let g = green_analysis(&m, Some(&f), Some(4)).unwrap();
        let dc = g.dclass.as_ref().unwrap();
        assert_eq!((dc.rows(), dc.columns(), dc.group_cells()), (3, 3, 5));
        assert!(dc.cells.iter().flatten().all(|c| c.elements.len() == 4));
        assert_eq!(dc.structure_group.order().unwrap(), 4);
        let dflt = green_analysis(&m, Some(&f), None).unwrap();
        assert_eq!(dflt.dclass.unwrap().rank, 4);
    }

    #[test]
    fn idempotent_h_classes() {
        let m = transition_monoid(&minimal_automaton(&giuseppina()).unwrap(), DEFAULT_MONOID_CAP).unwrap();
        let g = green_analysis(&m, None, None).unwrap();
        for e in (0..m.len()).filter(|&i| g.idempotents[i]) {
            let (im, ker) = (m.element(e).image(), m.element(e).kernel());
            for i in 0..m.len() {
                let same = m.element(i).image() == im && m.element(i).kernel() == ker;
                assert_eq!(g.h[i] == g.h[e], same);
            }
        }
    }

    fn canonical_cycles(s: &str) -> String {
        if s == "id" {
            return s.into();
        }
        let mut cycles: Vec<Vec<u32>> = s
            .trim_matches(|c| c == '(' || c == ')')
            .split(")(")
            .map(|c| {
                let mut v: Vec<u32> = c.split(' ').map(|x| x.parse().unwrap()).collect();
                let k = (0..v.len()).min_by_key(|&i| v[i]).unwrap();
                v.rotate_left(k);
                v
            })
            .collect();
        cycles.sort();
        cycles
            .iter()
            .map(|c| format!("({})", c.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")))
            .collect()
    }

    #[test]
    fn h_class_of_ba() {
        // States numbered by their access words.
        let number: BTreeMap<&str, &str> = [
            ("1", "1"), ("a", "2"), ("ab", "3"), ("aba", "4"), ("abaa", "5"),
            ("bab", "6"), ("b", "7"), ("ba", "8"), ("baa", "9"),
        ]
        .into_iter()
        .collect();
        let dfa = minimal_automaton(&giuseppina()).unwrap();
        let m = transition_monoid(&dfa, DEFAULT_MONOID_CAP).unwrap();
        let g = green_analysis(&m, None, None).unwrap();
        let ba = m.element_of(&Word::from("ba")).unwrap();
        let mut grp = h_class_group(&m, &g, ba).unwrap();
        grp.points = grp.points.iter().map(|p| number[dfa.labels()[p.parse::<usize>().unwrap()].as_str()].to_string()).collect();
        let mut got: BTreeMap<String, String> = BTreeMap::new();
        for w in ["ba", "baaba", "baba", "babaaba"] {
            let i = m.element_of(&Word::from(w)).unwrap();
            assert_eq!(g.h[i], g.h[ba]);
            let pts: Vec<usize> = m.element(ba).image().into_iter().collect();
            got.insert(w.into(), canonical_cycles(&grp.cycles(&m.element(i).permutation_on(&pts).unwrap())));
        }
        let expected: BTreeMap<String, String> = [
            ("ba", "(1 8)(2 4)"), ("baaba", "(1 2)(4 8)"), ("baba", "id"), ("babaaba", "(1 4)(2 8)"),
        ]
        .into_iter()
        .map(|(a, b)| (a.to_string(), b.to_string()))
        .collect();
        assert_eq!(got, expected);
        assert_eq!(GreenReport::members(&g.h, g.h[ba]).len(), 4);
    }

    #[test]
    fn f_groups() {
        let f = fib(32);
        let g = f_group(&giuseppina(), &f).unwrap();
        assert_eq!((g.degree(), g.order().unwrap(), g.exponent().unwrap()), (4, 4, 2));
        assert!(g.is_transitive());
        assert!(perm_group_equivalent(&g, &klein()).unwrap());
        let g = f_group(&CodeSet::from(&["a", "baab", "bab"][..]), &f).unwrap();
        assert_eq!(g.order().unwrap(), 2);
        let g = f_group(&CodeSet::from(&["a", "b"][..]), &f).unwrap();
        assert_eq!((g.degree(), g.order().unwrap()), (1, 1));
    }

    #[test]
    fn two_routes_agree() {
        let f = fib(32);
        let x = giuseppina();
        let m = transition_monoid(&minimal_automaton(&x).unwrap(), DEFAULT_MONOID_CAP).unwrap();
        let sg = green_analysis(&m, Some(&f), None).unwrap().dclass.unwrap().structure_group;
        assert!(perm_group_equivalent(&sg, &f_group(&x, &f).unwrap()).unwrap());
    }

    #[test]
    fn group_codes() {
        let z2 = PermutationGroup::on_points(2, vec![vec![0, 1], vec![1, 0]]).unwrap();
        let (_, z) = group_code(&z2, &ab(), 4).unwrap();
        assert_eq!(z, CodeSet::from(&["a", "baab", "bab", "bb"][..]));
        let c3 = PermutationGroup::on_points(3, vec![vec![1, 2, 0], vec![1, 2, 0]]).unwrap();
        let (_, z) = group_code(&c3, &ab(), 5).unwrap();
        assert_eq!(z, ab().words_of_length(3).into_iter().collect::<CodeSet>());
        let (dfa, _) = group_code(&klein(), &ab(), 0).unwrap();
        let inter = intersect_with_f(&ZSpec::Automaton(dfa), &fib(32)).unwrap();
        assert_eq!(inter.code, giuseppina());
        let bad = PermutationGroup::on_points(2, vec![vec![0, 1], vec![0, 1]]).unwrap();
        assert!(matches!(group_code(&bad, &ab(), 3), Err(Error::NotTransitive)));
        assert!(matches!(group_code(&z2, &Alphabet::from_str_symbols("abc").unwrap(), 3), Err(Error::GeneratorCount { .. })));
    }

    #[test]
    fn realizations() {
        let f = fib(32);
        let r = realize_syntactic_group(&klein(), &f).unwrap();
        assert_eq!(r.code.len(), 5);
        assert!(r.equivalent && r.cardinality_ok);
        let trivial = PermutationGroup::on_points(1, vec![vec![0], vec![0]]).unwrap();
        let r = realize_syntactic_group(&trivial, &f).unwrap();
        assert_eq!(r.code, CodeSet::from(&["a", "b"][..]));
        let s3 = PermutationGroup::on_points(3, vec![vec![1, 2, 0], vec![1, 0, 2]]).unwrap();
        let r = realize_syntactic_group(&s3, &f).unwrap();
        assert_eq!(r.code.len(), 4);
        assert_eq!(r.fgroup.order().unwrap(), 6);
        assert!(r.equivalent);
    }

    #[test]
    fn equivalence() {
        let c4 = PermutationGroup::on_points(4, vec![vec![1, 2, 3, 0], vec![1, 2, 3, 0]]).unwrap();
        assert!(perm_group_equivalent(&klein(), &klein()).unwrap());
        assert!(!perm_group_equivalent(&klein(), &c4).unwrap());
        let relabeled = PermutationGroup::on_points(4, vec![vec![2, 3, 0, 1], vec![3, 2, 1, 0]]).unwrap();
        assert!(perm_group_equivalent(&klein(), &relabeled).unwrap());
        let big = PermutationGroup::on_points(13, vec![(0..13).map(|i| (i + 1) % 13).collect()]).unwrap();
        assert!(matches!(perm_group_equivalent(&big, &big), Err(Error::SearchCap(_))));
    }
}
