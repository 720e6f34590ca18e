mod common;

use std::collections::BTreeSet;

use bifix_core::codes::{
    analyze, applicable_transformations, count_parses, derived_code, internal_transformation, is_f_maximal,
    parse_profile, Kind,
};
use bifix_core::measures::{average_length, invariant_distribution, set_probability};
use bifix_core::scalar::Scalar;
use bifix_core::{CodeSet, FactorSet, Generator, Word};
use common::{enumerated, fibonacci};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

/// Grows a prefix code by repeatedly replacing a leaf with its extensions.
fn random_prefix_code(f: &FactorSet, seed: u64, splits: usize, max_len: usize) -> CodeSet {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut leaves: Vec<Word> = f.level(1).iter().cloned().collect();
    for _ in 0..splits {
        let open: Vec<usize> = (0..leaves.len()).filter(|&i| leaves[i].len() < max_len).collect();
        if open.is_empty() {
            break;
        }
        let w = leaves.swap_remove(open[rng.gen_range(0..open.len())]);
        leaves.extend(f.right_extensions(&w).into_iter().map(|a| w.push(a)));
    }
    CodeSet::new(leaves).unwrap()
}

#[test]
fn level_probabilities_sum_to_one() {
    for g in [Generator::fibonacci(), Generator::thue_morse(), Generator::tribonacci()] {
        let f = FactorSet::build(&g, 12).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        assert!(pi.satisfies_right_condition(&f) && pi.satisfies_left_condition(&f));
        assert!(pi.in_unit_interval());
        for l in 0..=12 {
            let total = set_probability(&pi, f.level(l)).unwrap();
            if pi.is_exact() {
                assert_eq!(total, Scalar::one(), "{g} at length {l}");
            } else {
                assert!(total.approx_eq(&Scalar::one()), "{g} at length {l}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn maximal_prefix_codes_have_probability_one(seed in any::<u64>(), splits in 0usize..24, which in 0usize..3) {
        let g = [Generator::fibonacci(), Generator::thue_morse(), Generator::tribonacci()][which].clone();
        let f = FactorSet::build(&g, 16).unwrap();
        let pi = invariant_distribution(&f).unwrap();
        let x = random_prefix_code(&f, seed, splits, 10);
        prop_assert!(is_f_maximal(&x, &f, Kind::Prefix).unwrap().maximal);
        prop_assert!(set_probability(&pi, x.iter()).unwrap().approx_eq(&Scalar::one()));
        let p: Vec<Word> = x.proper_prefixes().into_iter().collect();
        prop_assert!(average_length(&pi, x.iter()).unwrap().approx_eq(&set_probability(&pi, p.iter()).unwrap()));
        if x.len() > 1 {
            let dropped = CodeSet::new(x.iter().skip(1).cloned()).unwrap();
            prop_assert!(!is_f_maximal(&dropped, &f, Kind::Prefix).unwrap().maximal);
            let pr = set_probability(&pi, dropped.iter()).unwrap();
            prop_assert!(pr.to_f64() < 1.0 - 1e-9);
            prop_assert!(average_length(&pi, dropped.iter()).is_err());
        }
    }

    #[test]
    fn restriction_of_maximal_prefix_code(seed in any::<u64>(), splits in 0usize..40) {
        let mut rng = StdRng::seed_from_u64(seed);
        let mut leaves = vec![Word::from("a"), Word::from("b")];
        for _ in 0..splits {
            let i = rng.gen_range(0..leaves.len());
            if leaves[i].len() >= 8 {
                continue;
            }
            let w = leaves.swap_remove(i);
            leaves.push(w.push(b'a'));
            leaves.push(w.push(b'b'));
        }
        let z = CodeSet::new(leaves).unwrap();
        let f = fibonacci(12);
        let x = z.intersection_with(&f);
        prop_assert!(x.is_prefix());
        prop_assert!(is_f_maximal(&x, &f, Kind::Prefix).unwrap().maximal);
    }
}

#[test]
fn exact_fibonacci_average_length() {
    let f = fibonacci(8);
    let pi = invariant_distribution(&f).unwrap();
    let x = CodeSet::from(&["a", "ba"][..]);
    let lam = average_length(&pi, x.iter()).unwrap();
    let p = set_probability(&pi, x.proper_prefixes().iter()).unwrap();
    assert_eq!(lam, p);
    assert_eq!(lam.to_string(), "2-lambda");
}

#[test]
fn parse_counts_match_degree() {
    for e in enumerated() {
        for x in &e.codes {
            let an = analyze(x, &e.f).unwrap();
            assert_eq!(an.degree, e.degree);
            let profile = parse_profile(x, &e.f, None).unwrap();
            for w in e.f.words().filter(|w| w.len() <= 9) {
                let p = count_parses(w, x);
                assert_eq!(profile.get(w), Some(p), "{x} at {w}");
                assert!(p <= e.degree);
                assert_eq!(p < e.degree, an.internal.contains(w), "{x} at {w}");
                for a in e.f.right_extensions(w) {
                    assert!(count_parses(&w.push(a), x) >= p);
                }
                for a in e.f.left_extensions(w) {
                    assert!(count_parses(&w.prepend(a), x) >= p);
                }
            }
        }
    }
}

#[test]
fn cardinality_and_length_identities() {
    for e in enumerated() {
        let k = e.f.alphabet().len();
        for x in &e.codes {
            assert_eq!(x.len(), (k - 1) * e.degree + 1, "{x}");
            let lhs = x.total_length();
            let rhs = x.proper_prefixes().len() + x.proper_suffixes().len() + (k - 2) * e.degree;
            assert_eq!(lhs, rhs, "{x}");
        }
    }
}

#[test]
fn derived_codes() {
    for e in enumerated().iter().filter(|e| e.degree >= 2) {
        let lower: BTreeSet<&CodeSet> = enumerated()
            .iter()
            .filter(|o| o.degree == e.degree - 1 && o.f.alphabet() == e.f.alphabet())
            .flat_map(|o| o.codes.iter())
            .collect();
        for x in &e.codes {
            let an = analyze(x, &e.f).unwrap();
            let y = derived_code(x, &e.f).unwrap();
            assert_eq!(analyze(&y, &e.f).unwrap().degree, e.degree - 1, "{x}");
            assert!(lower.contains(&y));
            let s = x.proper_suffixes();
            let s_cap_i: BTreeSet<Word> = s.intersection(&an.internal).cloned().collect();
            assert_eq!(y.proper_suffixes(), s_cap_i, "{x}");
            let p_cap_i: BTreeSet<Word> = x.proper_prefixes().intersection(&an.internal).cloned().collect();
            assert_eq!(y.proper_prefixes(), p_cap_i, "{x}");
            let s_minus_i = CodeSet::new(s.difference(&an.internal).cloned()).unwrap();
            assert!(s_minus_i.is_prefix());
            assert!(is_f_maximal(&s_minus_i, &e.f, Kind::Prefix).unwrap().maximal);
        }
    }
}

#[test]
fn suffixes_split_into_maximal_prefix_codes() {
    for e in enumerated() {
        for x in &e.codes {
            let mut parts = Vec::new();
            let mut current = x.clone();
            loop {
                let an = analyze(&current, &e.f).unwrap();
                if an.degree == 1 {
                    break;
                }
                let s = current.proper_suffixes();
                parts.push(CodeSet::new(s.difference(&an.internal).cloned()).unwrap());
                current = derived_code(&current, &e.f).unwrap();
            }
            assert_eq!(parts.len(), e.degree - 1);
            let mut union = BTreeSet::new();
            for p in &parts {
                assert!(p.is_prefix());
                assert!(is_f_maximal(p, &e.f, Kind::Prefix).unwrap().maximal);
                for w in p.iter() {
                    assert!(union.insert(w.clone()), "{w} occurs twice in the split of {x}");
                }
            }
            let nonempty: BTreeSet<Word> = x.proper_suffixes().into_iter().filter(|w| !w.is_empty()).collect();
            assert_eq!(union, nonempty, "{x}");
        }
    }
}

#[test]
fn internal_transformations_preserve_shape() {
    for e in enumerated() {
        for x in &e.codes {
            for w in applicable_transformations(x) {
                let g: Vec<Word> = x.iter().filter(|c| w.is_suffix_of(c)).map(|c| c.drop_back(w.len())).collect();
                let d: Vec<Word> = x.iter().filter(|c| w.is_prefix_of(c)).map(|c| c.drop_front(w.len())).collect();
                let gwd = g
                    .iter()
                    .flat_map(|p| d.iter().map(|s| p.concat(&w).concat(s)))
                    .filter(|t| e.f.contains(t))
                    .count();
                assert_eq!(gwd, g.len() + d.len() - 1, "{x} with w={w}");
                let y = internal_transformation(x, &e.f, &w).unwrap();
                assert_eq!(y.len(), x.len());
                assert!(y.is_bifix());
                assert_eq!(analyze(&y, &e.f).unwrap().degree, e.degree);
            }
        }
    }
}
