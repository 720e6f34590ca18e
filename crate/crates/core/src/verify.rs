//! Reproduction checks for the worked examples, tables and theorems.

use std::collections::{BTreeMap, BTreeSet};
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use serde::Serialize;

use crate::automata::{coset_automaton_over, minimal_automaton};
use crate::codes::{
    analyze, code_from_kernel, count_parses, derived_code, enumerate_f_maximal_bifix, internal_transformation,
    intersect_with_f, parse_profile, CodeSet, ZSpec,
};
use crate::error::Result;
use crate::factors::FactorSet;
use crate::freegroup::{hall_count, StallingsGraph};
use crate::measures::{average_length, invariant_distribution, max_empirical_deviation};
use crate::periodicity::{canonical_cycle, cft_least_period, forced_periodicity, least_period};
use crate::scalar::{Quadratic, Scalar};
use crate::syntactic::{
    f_group, green_analysis, group_code, h_class_group, realize_syntactic_group,
    transition_monoid, PermutationGroup, DEFAULT_MONOID_CAP,
};
use crate::words::{Alphabet, Generator, Word};

pub const CRITERIA: usize = 15;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CriterionResult {
    pub id: usize,
    pub name: &'static str,
    pub passed: bool,
    /// Non-blocking criteria do not fail the suite.
    pub blocking: bool,
    pub detail: String,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let status = if self.passed { "PASS" } else { "FAIL" };
        let tag = if self.blocking { "" } else { " (stretch)" };
        format!("{status} [{:>2}] {}{tag}: {}", self.id, self.name, self.detail)
    }
}

struct Check {
    passed: bool,
    detail: String,
}

impl Check {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        Check { passed, detail: detail.into() }
    }
}

const NAMES: [&str; CRITERIA] = [
    "enumeration ground truth",
    "cardinality law",
    "subgroup theorem",
    "subgroup counting",
    "invariant measures",
    "average length",
    "return words",
    "parse calculus",
    "derivation and reconstruction",
    "internal transformations",
    "syntactic group",
    "realization",
    "periodicity",
    "intersections with F",
    "non-strict episturmian counterexample",
];

pub fn run(id: usize) -> CriterionResult {
    assert!((1..=CRITERIA).contains(&id), "criterion {id} out of range");
    let outcome = match id {
        1 => enumeration(),
        2 => cardinality(),
        3 => subgroups(),
        4 => hall(),
        5 => measures(),
        6 => average_lengths(),
        7 => return_words(),
        8 => parse_calculus(),
        9 => derivation(),
        10 => transformations(),
        11 => syntactic(),
        12 => realization(),
        13 => periodicity(),
        14 => intersections(),
        _ => non_strict(),
    };
    let (passed, detail) = match outcome {
        Ok(c) => (c.passed, c.detail),
        Err(e) => (false, format!("error {}: {e}", e.name())),
    };
    CriterionResult { id, name: NAMES[id - 1], passed, blocking: id != 15, detail }
}

pub fn run_all() -> Vec<CriterionResult> {
    (1..=CRITERIA).map(run).collect()
}

fn codes(v: &[&[&str]]) -> BTreeSet<CodeSet> {
    v.iter().map(|c| CodeSet::from(*c)).collect()
}

fn fib(depth: usize) -> Result<FactorSet> {
    FactorSet::build(&Generator::fibonacci(), depth)
}

fn trib(depth: usize) -> Result<FactorSet> {
    FactorSet::build(&Generator::tribonacci(), depth)
}

const FIB_DEPTH: usize = 32;
const TRIB_DEPTH: usize = 24;

pub fn degree_two_codes() -> BTreeSet<CodeSet> {
    codes(&[&["aa", "ab", "ba"], &["a", "baab", "bab"], &["aa", "aba", "b"]])
}

/// Rows of the degree-3 table: code, kernel and derived code.
pub fn degree_three_table() -> Vec<(CodeSet, CodeSet, CodeSet)> {
    let rows: [(&[&str], &[&str], &[&str]); 13] = [
        (&["aab", "aba", "baa", "bab"], &[], &["aa", "ab", "ba"]),
        (&["aa", "aba", "baab", "bab"], &["aa"], &["aa", "ab", "ba"]),
        (&["aaba", "ab", "baa", "baba"], &["ab"], &["aa", "ab", "ba"]),
        (&["aab", "abaa", "abab", "ba"], &["ba"], &["aa", "ab", "ba"]),
        (&["aa", "ab", "baaba", "baba"], &["aa", "ab"], &["aa", "ab", "ba"]),
        (&["aa", "abaab", "abab", "ba"], &["aa", "ba"], &["aa", "ab", "ba"]),
        (&["aabaa", "aababaa", "ab", "ba"], &["ab", "ba"], &["aa", "ab", "ba"]),
        (&["a", "baabaab", "baabab", "babaab"], &["a"], &["a", "baab", "bab"]),
        (&["a", "baab", "babaabaabab", "babaabab"], &["a", "baab"], &["a", "baab", "bab"]),
        (&["a", "baabaab", "baababaab", "bab"], &["a", "bab"], &["a", "baab", "bab"]),
        (&["aaba", "abaa", "ababa", "b"], &["b"], &["aa", "aba", "b"]),
        (&["aa", "abaaba", "ababa", "b"], &["aa", "b"], &["aa", "aba", "b"]),
        (&["aabaa", "aababaa", "aba", "b"], &["aba", "b"], &["aa", "aba", "b"]),
    ];
    rows.iter()
        .map(|(c, k, d)| (CodeSet::from(*c), CodeSet::from(*k), CodeSet::from(*d)))
        .collect()
}

/// Enumerated codes over Fibonacci at degrees 1–3 and Tribonacci at 1–2.
fn all_enumerated() -> Result<Vec<(FactorSet, usize, Vec<CodeSet>)>> {
    let f = fib(FIB_DEPTH)?;
    let t = trib(TRIB_DEPTH)?;
    let mut out = Vec::new();
    for d in 1..=3 {
        out.push((f.clone(), d, enumerate_f_maximal_bifix(&f, d)?));
    }
    for d in 1..=2 {
        out.push((t.clone(), d, enumerate_f_maximal_bifix(&t, d)?));
    }
    Ok(out)
}

fn enumeration() -> Result<Check> {
    let start = Instant::now();
    let f = fib(FIB_DEPTH)?;
    let two: BTreeSet<CodeSet> = enumerate_f_maximal_bifix(&f, 2)?.into_iter().collect();
    let three: BTreeSet<CodeSet> = enumerate_f_maximal_bifix(&f, 3)?.into_iter().collect();
    let elapsed = start.elapsed();
    let table: BTreeSet<CodeSet> = degree_three_table().into_iter().map(|r| r.0).collect();
    let ok = two == degree_two_codes() && three == table && elapsed < Duration::from_secs(10);
    Ok(Check::new(
        ok,
        format!("{} codes at degree 2, {} at degree 3, {:.2?}", two.len(), three.len(), elapsed),
    ))
}

fn cardinality() -> Result<Check> {
    let mut bad = Vec::new();
    let mut total = 0;
    for (f, d, list) in all_enumerated()? {
        let k = f.alphabet().len();
        for x in list {
            total += 1;
            if x.len() != (k - 1) * d + 1 {
                bad.push(x.to_string());
            }
        }
    }
    Ok(Check::new(bad.is_empty(), format!("{total} codes checked, {} violations {:?}", bad.len(), bad)))
}

fn subgroups() -> Result<Check> {
    let mut bad = Vec::new();
    let mut total = 0;
    for (f, d, list) in all_enumerated()? {
        for x in list {
            total += 1;
            let words: Vec<Word> = x.iter().cloned().collect();
            let g = StallingsGraph::fold_over(&words, f.alphabet())?;
            let s = g.stats()?;
            let coset = StallingsGraph::from_dfa(&coset_automaton_over(&x, f.alphabet())?);
            if !(s.complete && g.vertex_count() == d && s.rank == x.len() && coset == g) {
                bad.push(x.to_string());
            }
        }
    }
    Ok(Check::new(bad.is_empty(), format!("{total} codes checked, {} violations {:?}", bad.len(), bad)))
}

fn hall() -> Result<Check> {
    let start = Instant::now();
    let values: Vec<BigInt> = (1..=5).map(|d| hall_count(d, 2)).collect();
    let elapsed = start.elapsed();
    let expected: Vec<BigInt> = [1, 3, 13, 71, 461].into_iter().map(BigInt::from).collect();
    let f = fib(FIB_DEPTH)?;
    let mut counts = Vec::new();
    for d in 1..=3 {
        counts.push(BigInt::from(enumerate_f_maximal_bifix(&f, d)?.len()));
    }
    let ok = values == expected && counts[..] == values[..3] && elapsed < Duration::from_secs(1);
    let shown: Vec<String> = values.iter().map(BigInt::to_string).collect();
    Ok(Check::new(ok, format!("N(d,2) = {}, enumeration counts {:?}", shown.join(", "), counts)))
}

fn lam(p: i64, q: i64) -> Scalar {
    Scalar::Exact(&Quadratic::int(p) + &(&Quadratic::int(q) * &Quadratic::lambda()))
}

/// Invariant probabilities of the Fibonacci words of length at most 4.
pub fn fibonacci_measure_table() -> BTreeMap<Word, Scalar> {
    let rows: [(&str, i64, i64); 15] = [
        ("", 1, 0),
        ("a", 0, 1),
        ("b", 1, -1),
        ("aa", -1, 2),
        ("ab", 1, -1),
        ("ba", 1, -1),
        ("aab", -1, 2),
        ("aba", 1, -1),
        ("baa", -1, 2),
        ("bab", 2, -3),
        ("aaba", -1, 2),
        ("abaa", -1, 2),
        ("abab", 2, -3),
        ("baab", -1, 2),
        ("baba", 2, -3),
    ];
    rows.iter().map(|&(w, p, q)| (Word::from(w), lam(p, q))).collect()
}

/// Invariant probabilities of the Thue–Morse words of length at most 4.
pub fn thue_morse_measure_table() -> BTreeMap<Word, Scalar> {
    let rows: [(&str, i64, i64); 23] = [
        ("", 1, 1),
        ("a", 1, 2),
        ("b", 1, 2),
        ("aa", 1, 6),
        ("ab", 1, 3),
        ("ba", 1, 3),
        ("bb", 1, 6),
        ("aab", 1, 6),
        ("aba", 1, 6),
        ("abb", 1, 6),
        ("baa", 1, 6),
        ("bab", 1, 6),
        ("bba", 1, 6),
        ("aaba", 1, 12),
        ("aabb", 1, 12),
        ("abaa", 1, 12),
        ("abab", 1, 12),
        ("abba", 1, 6),
        ("baab", 1, 6),
        ("baba", 1, 12),
        ("babb", 1, 12),
        ("bbaa", 1, 12),
        ("bbab", 1, 12),
    ];
    rows.iter().map(|&(w, p, q)| (Word::from(w), Scalar::from_ratio(p, q))).collect()
}

fn measure_matches(g: &Generator, table: &BTreeMap<Word, Scalar>) -> Result<(bool, f64)> {
    let f = FactorSet::build(g, 4)?;
    let pi = invariant_distribution(&f)?;
    let words: BTreeSet<&Word> = f.words().collect();
    let exact = words == table.keys().collect::<BTreeSet<_>>()
        && table.iter().all(|(w, v)| pi.get(w).is_ok_and(|x| x == *v));
    let sample = g.prefix(100_000)?;
    Ok((exact, max_empirical_deviation(&pi, &sample, 4)))
}

fn measures() -> Result<Check> {
    let (fe, fd) = measure_matches(&Generator::fibonacci(), &fibonacci_measure_table())?;
    let (te, td) = measure_matches(&Generator::thue_morse(), &thue_morse_measure_table())?;
    let ok = fe && te && fd <= 1e-3 && td <= 1e-3;
    Ok(Check::new(
        ok,
        format!("Fibonacci exact {fe}, Thue-Morse exact {te}, empirical deviation {fd:.2e} / {td:.2e}"),
    ))
}

fn average_lengths() -> Result<Check> {
    let f = fib(12)?;
    let pi = invariant_distribution(&f)?;
    let big = fib(FIB_DEPTH)?;
    let mut bad = Vec::new();
    let mut total = 0;
    for d in 1..=3 {
        for x in enumerate_f_maximal_bifix(&big, d)? {
            total += 1;
            if average_length(&pi, x.iter())? != Scalar::from_ratio(d as i64, 1) {
                bad.push(x.to_string());
            }
        }
    }
    let worked = average_length(&pi, CodeSet::from(&["a", "bab", "baab"][..]).iter())?;
    let ok = bad.is_empty() && worked == Scalar::from_ratio(2, 1);
    Ok(Check::new(ok, format!("{total} codes, {} mismatches, lambda(a,bab,baab) = {worked}", bad.len())))
}

/// The right and left return words of the first Fibonacci factors.
pub fn return_word_table() -> Vec<(Word, CodeSet, CodeSet)> {
    let rows: [(&str, [&str; 2], [&str; 2]); 10] = [
        ("", ["a", "b"], ["a", "b"]),
        ("a", ["a", "ba"], ["a", "ab"]),
        ("b", ["ab", "aab"], ["ba", "baa"]),
        ("aa", ["baa", "babaa"], ["aab", "aabab"]),
        ("ab", ["ab", "aab"], ["ab", "aba"]),
        ("ba", ["ba", "aba"], ["ba", "baa"]),
        ("aab", ["aab", "abaab"], ["aab", "aabab"]),
        ("aba", ["ba", "aba"], ["ab", "aba"]),
        ("baa", ["baa", "babaa"], ["baa", "baaba"]),
        ("bab", ["aabab", "aabaabab"], ["babaa", "babaabaa"]),
    ];
    rows.iter()
        .map(|(u, r, l)| (Word::from(*u), CodeSet::from(&r[..]), CodeSet::from(&l[..])))
        .collect()
}

fn return_words() -> Result<Check> {
    let f = fib(64)?;
    let mut bad = Vec::new();
    for (u, right, left) in return_word_table() {
        let r = f.return_words(&u)?;
        let words: Vec<Word> = r.right.iter().cloned().collect();
        let g = StallingsGraph::fold_over(&words, f.alphabet())?;
        let ok = r.right == *right.words()
            && r.left == *left.words()
            && r.right.len() == 2
            && g.vertex_count() == 1
            && g.is_complete();
        if !ok {
            bad.push(u.to_string());
        }
    }
    Ok(Check::new(bad.is_empty(), format!("10 rows, mismatches {bad:?}")))
}

fn parse_calculus() -> Result<Check> {
    let f = fib(FIB_DEPTH)?;
    let mut bad = Vec::new();
    let mut total = 0;
    for d in 1..=3 {
        for x in enumerate_f_maximal_bifix(&f, d)? {
            total += 1;
            let profile = parse_profile(&x, &f, None)?;
            let get = |w: &Word| profile.get(w).unwrap_or(0) as i64;
            let mut ok = true;
            for w in f.words().filter(|w| w.len() <= 10) {
                if profile.get(w) != Some(count_parses(w, &x)) {
                    ok = false;
                }
                let n = w.len();
                let mut coef = get(w);
                if n >= 1 {
                    coef -= get(&w.drop_front(1)) + get(&w.drop_back(1));
                }
                if n >= 2 {
                    coef += get(&w.slice(1, n - 1));
                }
                let expected = if n == 0 { 1 } else if x.contains(w) { -1 } else { 0 };
                ok &= coef == expected;
            }
            if !ok {
                bad.push(x.to_string());
            }
        }
    }
    Ok(Check::new(bad.is_empty(), format!("{total} codes to length 10, mismatches {bad:?}")))
}

fn derivation() -> Result<Check> {
    let f = fib(FIB_DEPTH)?;
    let mut bad = Vec::new();
    for (x, kernel, derived) in degree_three_table() {
        let an = analyze(&x, &f)?;
        if an.kernel != kernel || derived_code(&x, &f)? != derived {
            bad.push(x.to_string());
        }
    }
    let mut total = 0;
    for (f, d, list) in all_enumerated()? {
        for x in list {
            total += 1;
            let k = analyze(&x, &f)?.kernel;
            if code_from_kernel(&k, &f, d)? != x {
                bad.push(format!("round trip {x}"));
            }
        }
    }
    Ok(Check::new(bad.is_empty(), format!("13 table rows, {total} round trips, mismatches {bad:?}")))
}

fn transformations() -> Result<Check> {
    let f = fib(16)?;
    let x1 = CodeSet::from(&["aa", "ab", "ba"][..]);
    let y1 = internal_transformation(&x1, &f, &Word::from("b"))?;
    let x2: CodeSet = f.level(4).iter().cloned().collect();
    let y2 = internal_transformation(&x2, &f, &Word::from("aba"))?;
    let mut ok = y1 == CodeSet::from(&["aa", "aba", "b"][..])
        && y2 == CodeSet::from(&["aabaa", "aabab", "aba", "baab", "babaa"][..]);
    for (x, y) in [(&x1, &y1), (&x2, &y2)] {
        ok &= x.len() == y.len() && analyze(x, &f)?.degree == analyze(y, &f)?.degree;
    }
    Ok(Check::new(ok, format!("{y1} and {y2}")))
}

/// The code of F-degree 4 whose F-group is the Klein four group.
pub fn klein_code() -> CodeSet {
    CodeSet::from(&["aa", "abaaba", "abab", "baab", "baba"][..])
}

pub fn klein_group() -> PermutationGroup {
    PermutationGroup::on_points(4, vec![vec![1, 0, 3, 2], vec![2, 3, 0, 1]]).expect("valid permutations")
}

/// States of the minimal automaton of the Klein code, numbered by access word.
fn klein_state_numbers() -> BTreeMap<&'static str, &'static str> {
    [
        ("1", "1"),
        ("a", "2"),
        ("ab", "3"),
        ("aba", "4"),
        ("abaa", "5"),
        ("bab", "6"),
        ("b", "7"),
        ("ba", "8"),
        ("baa", "9"),
    ]
    .into_iter()
    .collect()
}

/// Sorted transpositions of an involution, written over the state numbers.
fn involution(p: &[usize], names: &[String]) -> Option<Vec<(u32, u32)>> {
    let mut out = Vec::new();
    for (i, &j) in p.iter().enumerate() {
        if p[j] != i {
            return None;
        }
        if i < j {
            let (a, b): (u32, u32) = (names[i].parse().ok()?, names[j].parse().ok()?);
            out.push((a.min(b), a.max(b)));
        }
    }
    out.sort_unstable();
    Some(out)
}

fn syntactic() -> Result<Check> {
    let f = fib(FIB_DEPTH)?;
    let x = klein_code();
    let g = f_group(&x, &f)?;
    let group_ok = g.degree() == 4 && g.order()? == 4 && g.exponent()? == 2 && g.is_transitive();
    let dfa = minimal_automaton(&x)?;
    let m = transition_monoid(&dfa, DEFAULT_MONOID_CAP)?;
    let report = green_analysis(&m, Some(&f), Some(4))?;
    let dc = report.dclass.as_ref().expect("restriction requested");
    let eggbox_ok = dc.rows() == 3
        && dc.columns() == 3
        && dc.group_cells() == 5
        && dc.cells.iter().flatten().all(|c| c.elements.len() == 4);
    let numbers = klein_state_numbers();
    let ba = m.element_of(&Word::from("ba"))?;
    let h = h_class_group(&m, &report, ba)?;
    let names: Vec<String> = h
        .points
        .iter()
        .map(|p| numbers[dfa.labels()[p.parse::<usize>().expect("state index")].as_str()].to_string())
        .collect();
    let points: Vec<usize> = m.element(ba).image().into_iter().collect();
    let expected: [(&str, &[(u32, u32)]); 4] = [
        ("ba", &[(1, 8), (2, 4)]),
        ("baaba", &[(1, 2), (4, 8)]),
        ("baba", &[]),
        ("babaaba", &[(1, 4), (2, 8)]),
    ];
    let mut h_ok = h.generators.len() == 4;
    for (w, cycles) in expected {
        let i = m.element_of(&Word::from(w))?;
        let perm = m.element(i).permutation_on(&points);
        h_ok &= report.h[i] == report.h[ba] && perm.and_then(|p| involution(&p, &names)).as_deref() == Some(cycles);
    }
    Ok(Check::new(
        group_ok && eggbox_ok && h_ok,
        format!(
            "group order {} exponent {}, eggbox {}x{} with {} group cells, H-class {}",
            g.order()?,
            g.exponent()?,
            dc.rows(),
            dc.columns(),
            dc.group_cells(),
            if h_ok { "matches" } else { "differs" }
        ),
    ))
}

fn realization() -> Result<Check> {
    let f = fib(FIB_DEPTH)?;
    let r = realize_syntactic_group(&klein_group(), &f)?;
    let ok = r.code.len() == 5 && r.cardinality_ok && r.equivalent;
    Ok(Check::new(ok, format!("code {}, equivalent {}", r.code, r.equivalent)))
}

fn periodicity() -> Result<Check> {
    let start = Instant::now();
    let ab = Alphabet::from_str_symbols("ab")?;
    let mut mismatches = 0;
    for n in 1..=12 {
        for w in ab.words_of_length(n) {
            if cft_least_period(&w)? != least_period(&w)? {
                mismatches += 1;
            }
        }
    }
    let elapsed = start.elapsed();
    let x3 = CodeSet::from(&["aaa", "aaba", "aabb", "ab", "baa", "baba", "babb", "bba", "bbb"][..]);
    let allowed = CodeSet::from(&["aaba", "ab", "baba"][..]);
    let forbidden: BTreeSet<Word> = x3.iter().filter(|w| !allowed.contains(w)).cloned().collect();
    let r = forced_periodicity(&ab, &forbidden)?;
    let x3_ok = r.nonempty && r.all_ultimately_periodic && r.cycles.contains(&canonical_cycle(&Word::from("ba")));
    let golden = forced_periodicity(&ab, &[Word::from("bb")].into_iter().collect())?;
    let golden_ok = golden.nonempty && !golden.all_ultimately_periodic;
    let ok = mismatches == 0 && elapsed < Duration::from_secs(30) && x3_ok && golden_ok;
    Ok(Check::new(
        ok,
        format!("{mismatches} period mismatches in {elapsed:.2?}, forced cycles {:?}, bb aperiodic {golden_ok}", r.cycles.iter().map(Word::to_string).collect::<Vec<_>>()),
    ))
}

fn odd_b_automaton() -> Result<crate::automata::Dfa> {
    let z2 = PermutationGroup::on_points(2, vec![vec![0, 1], vec![1, 0]])?;
    Ok(group_code(&z2, &Alphabet::from_str_symbols("ab")?, 0)?.0)
}

fn intersections() -> Result<Check> {
    let f = fib(FIB_DEPTH)?;
    let tm = FactorSet::build(&Generator::thue_morse(), FIB_DEPTH)?;
    let a = intersect_with_f(&ZSpec::Automaton(odd_b_automaton()?), &f)?;
    let b = intersect_with_f(&ZSpec::Automaton(odd_b_automaton()?), &tm)?;
    let x3 = CodeSet::from(&["aaa", "aaba", "aabb", "ab", "baa", "baba", "babb", "bba", "bbb"][..]);
    let c = intersect_with_f(&ZSpec::Finite(x3), &f)?;
    let codes_ok = a.code == CodeSet::from(&["a", "baab", "bab"][..])
        && b.code == CodeSet::from(&["a", "baab", "bab", "bb"][..])
        && c.code == CodeSet::from(&["aaba", "ab", "baa", "baba"][..]);
    let degrees = [a.degree, b.degree, c.degree];
    let ok = codes_ok && degrees == [2, 2, 2] && c.z_degree == 3;
    Ok(Check::new(
        ok,
        format!(
            "codes {}; {}; {}; degrees {:?} expected [2, 2, 2], d(Z) = {}",
            a.code, b.code, c.code, degrees, c.z_degree
        ),
    ))
}

fn non_strict() -> Result<Check> {
    let g = Generator::pal("c", "ab")?;
    let f = FactorSet::build(&g, 48)?;
    let abc = Alphabet::from_str_symbols("abc")?;
    let perms: Vec<Vec<usize>> = [1, 2, 4].iter().map(|&m| (0..8).map(|i| i ^ m).collect()).collect();
    let group = PermutationGroup::on_points(8, perms)?;
    let (dfa, _) = group_code(&group, &abc, 0)?;
    let r = intersect_with_f(&ZSpec::Automaton(dfa), &f)?;
    let eight = count_parses(&Word::from("acbcacbc"), &r.code);
    let ok = r.code.len() == 10 && r.degree == 8 && eight == 8;
    Ok(Check::new(ok, format!("|Z ∩ F| = {}, F-degree {}", r.code.len(), r.degree)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tables_are_consistent() {
        assert_eq!(degree_three_table().len(), 13);
        assert_eq!(fibonacci_measure_table().len(), 15);
        assert_eq!(thue_morse_measure_table().len(), 23);
        for (x, k, _) in degree_three_table() {
            assert!(k.is_subset(&x));
            assert_eq!(x.len(), 4);
        }
    }
}
