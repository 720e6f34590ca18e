#![allow(dead_code)]

use std::sync::OnceLock;

use bifix_core::codes::enumerate_f_maximal_bifix;
use bifix_core::{CodeSet, FactorSet, Generator, Word};

pub struct Enumerated {
    pub f: FactorSet,
    pub degree: usize,
    pub codes: Vec<CodeSet>,
}

pub fn fibonacci(depth: usize) -> FactorSet {
    FactorSet::build(&Generator::fibonacci(), depth).unwrap()
}

/// F-maximal bifix codes over Fibonacci (degrees 1–3) and Tribonacci (1–2).
pub fn enumerated() -> &'static [Enumerated] {
    static CACHE: OnceLock<Vec<Enumerated>> = OnceLock::new();
    CACHE.get_or_init(|| {
        let fib = fibonacci(32);
        let trib = FactorSet::build(&Generator::tribonacci(), 24).unwrap();
        let mut out = Vec::new();
        for (f, max) in [(fib, 3), (trib, 2)] {
            for d in 1..=max {
                let codes = enumerate_f_maximal_bifix(&f, d).unwrap();
                out.push(Enumerated { f: f.clone(), degree: d, codes });
            }
        }
        out
    })
}

/// Membership in `X*` by dynamic programming over cut points.
pub fn in_star(w: &Word, x: &CodeSet) -> bool {
    let b = w.as_bytes();
    let mut ok = vec![false; b.len() + 1];
    ok[0] = true;
    for j in 1..=b.len() {
        ok[j] = (0..j).any(|i| ok[i] && x.contains(&Word::from_bytes(&b[i..j])));
    }
    ok[b.len()]
}

pub fn words(v: &[&str]) -> Vec<Word> {
    v.iter().map(|s| Word::from(*s)).collect()
}
