//! Internal transformations and prefix shortening.

use std::collections::BTreeSet;

use super::{analyze, is_f_maximal, CodeSet, Kind};
use crate::error::{Error, Result};
use crate::factors::FactorSet;
use crate::words::Word;

/// `G = Xw⁻¹` and `D = w⁻¹X`.
fn quotients(x: &CodeSet, w: &Word) -> (BTreeSet<Word>, BTreeSet<Word>) {
    let g = x
        .iter()
        .filter(|c| w.is_suffix_of(c))
        .map(|c| c.drop_back(w.len()))
        .collect();
    let d = x
        .iter()
        .filter(|c| w.is_prefix_of(c))
        .map(|c| c.drop_front(w.len()))
        .collect();
    (g, d)
}

fn check_preconditions(x: &CodeSet, w: &Word) -> std::result::Result<(BTreeSet<Word>, BTreeSet<Word>), String> {
    if w.is_empty() {
        return Err("w must be nonempty".into());
    }
    let (g, d) = quotients(x, w);
    let mut failed = Vec::new();
    if g.is_empty() {
        failed.push("G is empty");
    }
    if d.is_empty() {
        failed.push("D is empty");
    }
    let gw: BTreeSet<Word> = g.iter().map(|p| p.concat(w)).collect();
    if d.iter().any(|s| gw.contains(&w.concat(s))) {
        failed.push("Gw and wD intersect");
    }
    if failed.is_empty() {
        Ok((g, d))
    } else {
        Err(format!("w = {w}: {}", failed.join(", ")))
    }
}

/// `Y = (X ∪ w ∪ (GwD ∩ F)) ∖ (Gw ∪ wD)`, checked to keep degree and maximality.
pub fn internal_transformation(x: &CodeSet, f: &FactorSet, w: &Word) -> Result<CodeSet> {
    let before = analyze(x, f)?;
    let (g, d) = check_preconditions(x, w).map_err(Error::Precondition)?;
    let gw: BTreeSet<Word> = g.iter().map(|p| p.concat(w)).collect();
    let wd: BTreeSet<Word> = d.iter().map(|s| w.concat(s)).collect();
    let mut words: BTreeSet<Word> = x.words().clone();
    words.insert(w.clone());
    for p in &g {
        for s in &d {
            let t = p.concat(w).concat(s);
            f.require_depth(t.len())?;
            if f.contains(&t) {
                words.insert(t);
            }
        }
    }
    words.retain(|v| !gw.contains(v) && !wd.contains(v));
    let y = CodeSet::new(words)?;
    let after = analyze(&y, f)?;
    if after.degree != before.degree {
        return Err(Error::Verification(format!(
            "degree changed from {} to {}",
            before.degree, after.degree
        )));
    }
    Ok(y)
}

/// Words `w` for which the internal transformation preconditions hold.
pub fn applicable_transformations(x: &CodeSet) -> Vec<Word> {
    let candidates: BTreeSet<Word> = x
        .iter()
        .flat_map(|c| (1..=c.len()).map(move |i| c.suffix(i)))
        .filter(|s| x.iter().any(|c| s.is_prefix_of(c)))
        .collect();
    candidates
        .into_iter()
        .filter(|w| check_preconditions(x, w).is_ok())
        .collect()
}

/// `Y = (X ∖ wD) ∪ w` for a nonempty prefix `w` of `X`.
pub fn prefix_shorten(x: &CodeSet, f: &FactorSet, w: &Word) -> Result<CodeSet> {
    if w.is_empty() {
        return Err(Error::EmptyWord);
    }
    if !is_f_maximal(x, f, Kind::Prefix)?.maximal {
        return Err(Error::NotMaximal(format!("{x} is not an F-maximal prefix code")));
    }
    let (_, d) = quotients(x, w);
    if d.is_empty() {
        return Err(Error::Precondition(format!("{w} is not a prefix of {x}")));
    }
    let mut words: BTreeSet<Word> = x.words().clone();
    words.retain(|v| !w.is_prefix_of(v));
    words.insert(w.clone());
    let y = CodeSet::new(words)?;
    if !is_f_maximal(&y, f, Kind::Prefix)?.maximal {
        return Err(Error::Verification(format!("{y} is not F-maximal prefix")));
    }
    Ok(y)
}
