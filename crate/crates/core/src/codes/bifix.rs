//! Degree, kernel, derivation, reconstruction and enumeration of F-maximal
//! bifix codes.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::{count_parses, is_f_maximal, parse_profile, CodeSet, Kind};
use crate::automata::Dfa;
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::par::Exec;
use crate::words::Word;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BifixAnalysis {
    pub degree: usize,
    pub kernel: CodeSet,
    /// Internal factors `I(X)`, including the empty word when some `|x| ≥ 2`.
    pub internal: BTreeSet<Word>,
    pub prefixes: BTreeSet<Word>,
    pub suffixes: BTreeSet<Word>,
    /// Shortlex-first word of `F` outside `I(X)`.
    pub witness: Word,
    pub cardinality: usize,
}

/// Words `x[i..j]` with `1 ≤ i ≤ j ≤ |x|−1`.
pub(crate) fn internal_factors(x: &CodeSet) -> BTreeSet<Word> {
    let mut out = BTreeSet::new();
    for w in x.iter() {
        for i in 1..w.len() {
            for j in i..w.len() {
                out.insert(w.slice(i, j));
            }
        }
    }
    out
}

/// Degree, kernel and boundary sets of a finite F-maximal bifix code.
pub fn analyze(x: &CodeSet, f: &FactorSet) -> Result<BifixAnalysis> {
    if !x.is_bifix() {
        return Err(Error::NotBifixCode);
    }
    let m = is_f_maximal(x, f, Kind::Bifix)?;
    if let Some(w) = m.witness {
        return Err(Error::NotMaximal(format!("{w} is incomparable with {x}")));
    }
    let internal = internal_factors(x);
    let witness = f
        .words()
        .find(|w| !internal.contains(*w))
        .cloned()
        .ok_or(Error::WindowTooSmall { needed: 2 * f.depth(), depth: f.depth() })?;
    let degree = x.pars(&witness);
    let kernel = x.iter().filter(|w| internal.contains(*w)).cloned().collect();
    Ok(BifixAnalysis {
        degree,
        kernel,
        internal,
        prefixes: x.proper_prefixes(),
        suffixes: x.proper_suffixes(),
        witness,
        cardinality: x.len(),
    })
}

/// `K ∪ (G ∩ D)` with `G = (IA∩F)∖I` and `D = (AI∩F)∖I`.
pub fn derived_code(x: &CodeSet, f: &FactorSet) -> Result<CodeSet> {
    let an = analyze(x, f)?;
    if an.degree < 2 {
        return Err(Error::DegreeTooSmall(an.degree));
    }
    let i = &an.internal;
    let longest = i.iter().map(Word::len).max().unwrap_or(0);
    f.require_depth(longest + 1)?;
    let mut g = BTreeSet::new();
    let mut d = BTreeSet::new();
    for w in i {
        for &a in f.alphabet().symbols() {
            let right = w.push(a);
            if f.contains(&right) && !i.contains(&right) {
                g.insert(right);
            }
            let left = w.prepend(a);
            if f.contains(&left) && !i.contains(&left) {
                d.insert(left);
            }
        }
    }
    let mut out = an.kernel.words().clone();
    out.extend(g.intersection(&d).cloned());
    CodeSet::new(out)
}

/// Checks the kernel conditions for degree `d`; returns the reason on failure.
pub fn is_admissible_kernel(y: &CodeSet, f: &FactorSet, d: usize) -> Result<()> {
    let bad = |r: String| Err(Error::InadmissibleKernel(r));
    if d == 0 {
        return bad("degree must be positive".into());
    }
    if !y.is_bifix() {
        return bad(format!("{y} is not a bifix code"));
    }
    y.require_in(f)?;
    if !y.is_empty() && is_f_maximal(y, f, Kind::Bifix)?.maximal {
        return bad(format!("{y} is already F-maximal"));
    }
    if let Some(p) = y.iter().map(|w| y.pars(w)).max() {
        if p > d - 1 {
            return bad(format!("max pars over {y} is {p} > {}", d - 1));
        }
    }
    Ok(())
}

/// The F-maximal bifix code of degree `d` with kernel `Y`.
pub fn code_from_kernel(y: &CodeSet, f: &FactorSet, d: usize) -> Result<CodeSet> {
    is_admissible_kernel(y, f, d)?;
    let profile = parse_profile(y, f, Some(d))?;
    let in_a_star_x = |w: &Word| profile.ends_in_code(w).expect("factorial window");
    let mut words = Vec::new();
    for l in 1..=f.depth() {
        for w in f.level(l) {
            if in_a_star_x(w) && (l == 1 || !in_a_star_x(&w.drop_front(1))) {
                words.push(w.clone());
            }
        }
    }
    let x = CodeSet::new(words)?;
    if let Some(w) = f.level(f.depth()).iter().find(|w| !x.has_prefix_in(w.as_bytes())) {
        return Err(Error::WindowExhausted {
            depth: f.depth(),
            reason: format!("{w} has no prefix in the reconstructed code"),
        });
    }
    let an = analyze(&x, f)?;
    if an.degree != d || &an.kernel != y {
        return Err(Error::Verification(format!(
            "rebuilt {x} has degree {} and kernel {}, expected {d} and {y}",
            an.degree, an.kernel
        )));
    }
    Ok(x)
}

/// All finite F-maximal bifix codes of degree `d`, in canonical order.
pub fn enumerate_f_maximal_bifix(f: &FactorSet, d: usize) -> Result<Vec<CodeSet>> {
    enumerate_f_maximal_bifix_with(f, d, Exec::default())
}

pub fn enumerate_f_maximal_bifix_with(f: &FactorSet, d: usize, exec: Exec) -> Result<Vec<CodeSet>> {
    if d == 0 {
        return Err(Error::Precondition("degree must be at least 1".into()));
    }
    let mut level: BTreeSet<CodeSet> = BTreeSet::new();
    level.insert(f.level(1).iter().cloned().collect());
    for e in 2..=d {
        let mut kernels: BTreeSet<CodeSet> = BTreeSet::new();
        for derived in &level {
            let items: Vec<&Word> = derived.iter().collect();
            for mask in 0u64..(1 << items.len()) {
                let y = items
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, w)| (*w).clone())
                    .collect();
                kernels.insert(y);
            }
        }
        let built = exec.map(kernels.into_iter().collect(), |y| match is_admissible_kernel(&y, f, e) {
            Ok(()) => code_from_kernel(&y, f, e).map(Some),
            Err(Error::InadmissibleKernel(_)) => Ok(None),
            Err(err) => Err(err),
        });
        let mut next = BTreeSet::new();
        for r in built {
            if let Some(x) = r? {
                next.insert(x);
            }
        }
        level = next;
    }
    Ok(level.into_iter().collect())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Completion {
    AlreadyMaximal { code: CodeSet },
    Completed { code: CodeSet, degree: usize },
}

impl Completion {
    pub fn code(&self) -> &CodeSet {
        match self {
            Completion::AlreadyMaximal { code } | Completion::Completed { code, .. } => code,
        }
    }
}

/// A finite F-maximal bifix code containing `X`.
///
/// With an explicit `d` the result has degree `d` and kernel `X`. Otherwise
/// the smallest degree with a completion is used.
pub fn complete_bifix(x: &CodeSet, f: &FactorSet, d: Option<usize>) -> Result<Completion> {
    if !x.is_bifix() {
        return Err(Error::NotBifixCode);
    }
    x.require_in(f)?;
    if !x.is_empty() && is_f_maximal(x, f, Kind::Bifix)?.maximal {
        return Ok(Completion::AlreadyMaximal { code: x.clone() });
    }
    if let Some(d) = d {
        let code = code_from_kernel(x, f, d)?;
        return Ok(Completion::Completed { code, degree: d });
    }
    let top = x.iter().map(|w| x.pars(w)).max().unwrap_or(0);
    let items: Vec<&Word> = x.iter().collect();
    let mut subsets: Vec<CodeSet> = (0u64..(1 << items.len()))
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, w)| (*w).clone())
                .collect()
        })
        .collect();
    subsets.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for e in top.max(1)..=top + 1 {
        for y in &subsets {
            match code_from_kernel(y, f, e) {
                Ok(code) if x.is_subset(&code) => return Ok(Completion::Completed { code, degree: e }),
                Ok(_) | Err(Error::InadmissibleKernel(_)) => {}
                Err(err) => return Err(err),
            }
        }
    }
    Err(Error::Verification(format!("no completion of {x} found")))
}

/// A bifix code given either explicitly or as the first returns of an automaton.
#[derive(Debug, Clone)]
pub enum ZSpec {
    Finite(CodeSet),
    /// First returns to the initial state, which must be terminal.
    Automaton(Dfa),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Intersection {
    pub code: CodeSet,
    /// `d_F(Z ∩ F)`.
    pub degree: usize,
    /// `d(Z)`.
    pub z_degree: usize,
}

/// `Z ∩ F` together with its F-degree and the degree of `Z`.
pub fn intersect_with_f(z: &ZSpec, f: &FactorSet) -> Result<Intersection> {
    let (code, z_degree) = match z {
        ZSpec::Finite(z) => {
            f.require_depth(z.max_len())?;
            let a = f.alphabet().symbol(0);
            let probe = Word::from_bytes(vec![a; z.max_len() + 1]);
            (z.intersection_with(f), count_parses(&probe, z))
        }
        ZSpec::Automaton(dfa) => (first_returns_in(dfa, f)?, dfa.num_states()),
    };
    let degree = analyze(&code, f)?.degree;
    Ok(Intersection { code, degree, z_degree })
}

fn first_returns_in(dfa: &Dfa, f: &FactorSet) -> Result<CodeSet> {
    let mut found = Vec::new();
    let mut frontier: Vec<(Word, usize)> = vec![(Word::empty(), dfa.initial())];
    for _ in 1..=f.depth() {
        let mut next = Vec::new();
        for (w, q) in &frontier {
            for a in f.right_extensions(w) {
                let Some(p) = dfa.step(*q, a) else { continue };
                if p == dfa.initial() {
                    found.push(w.push(a));
                } else {
                    next.push((w.push(a), p));
                }
            }
        }
        frontier = next;
        if frontier.is_empty() {
            return CodeSet::new(found);
        }
    }
    Err(Error::WindowTooSmall { needed: 2 * f.depth(), depth: f.depth() })
}
