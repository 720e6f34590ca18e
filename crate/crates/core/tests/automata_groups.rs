mod common;

use bifix_core::automata::{coset_automaton_over, incidence_graph, minimal_automaton, minimize, theta_classes};
use bifix_core::codes::{analyze, count_parses, intersect_with_f, is_f_maximal, Kind, ZSpec};
use bifix_core::freegroup::{bouquet_edge_count, hall_count, is_basis, GroupElement, StallingsGraph};
use bifix_core::syntactic::{
    f_group, green_analysis, group_code, perm_group_equivalent, transition_monoid, PartialMap, PermutationGroup,
    DEFAULT_MONOID_CAP,
};
use bifix_core::verify::{klein_code, klein_group};
use bifix_core::{CodeSet, FactorSet, Generator, Word};
use common::{enumerated, fibonacci, in_star};
use num_bigint::BigInt;
use proptest::prelude::*;

fn element(p: &Word, q: &Word) -> GroupElement {
    GroupElement::from_word(p).mul(&GroupElement::from_word(q).inverse())
}

#[test]
fn counts_match_subgroup_numbers() {
    for e in enumerated() {
        let k = e.f.alphabet().len();
        assert_eq!(BigInt::from(e.codes.len()), hall_count(e.degree, k), "d={} k={k}", e.degree);
    }
    assert_eq!(hall_count(2, 3), BigInt::from(7));
}

#[test]
fn codes_are_bases_of_finite_index_subgroups() {
    for e in enumerated() {
        let k = e.f.alphabet().len();
        for x in &e.codes {
            let gens: Vec<Word> = x.iter().cloned().collect();
            let s = StallingsGraph::fold_over(&gens, e.f.alphabet()).unwrap();
            let stats = s.stats().unwrap();
            assert_eq!(stats.index, Some(e.degree), "{x}");
            assert_eq!(stats.rank, x.len());
            assert_eq!(stats.rank, e.degree * (k - 1) + 1);
            assert!(is_basis(&gens).unwrap());
            for w in e.f.words().filter(|w| w.len() <= 10) {
                let member = s.contains(&GroupElement::from_word(w)).unwrap();
                assert_eq!(member, in_star(w, x), "{x} at {w}");
            }
        }
    }
}

#[test]
fn coset_automata() {
    for e in enumerated() {
        for x in &e.codes {
            let dfa = coset_automaton_over(x, e.f.alphabet()).unwrap();
            let props = dfa.properties();
            assert!(props.group && props.reversible, "{x}");
            assert_eq!(dfa.num_states(), e.degree);
            assert_eq!(minimize(&dfa).unwrap().num_states(), e.degree);
            let gens: Vec<Word> = x.iter().cloned().collect();
            assert_eq!(
                StallingsGraph::from_dfa(&dfa),
                StallingsGraph::fold_over(&gens, e.f.alphabet()).unwrap(),
                "{x}"
            );
            let inter = intersect_with_f(&ZSpec::Automaton(dfa), &e.f).unwrap();
            assert_eq!(&inter.code, x);
            assert_eq!(inter.degree, e.degree);
            assert_eq!(inter.z_degree, e.degree);
        }
    }
}

#[test]
fn theta_classes_are_cosets() {
    for e in enumerated() {
        for x in &e.codes {
            let g = incidence_graph(x);
            assert!(g.is_acyclic(), "{x}");
            for t in g.prefix_traces().into_iter().filter(|t| !t.is_empty()) {
                assert!(CodeSet::new(t.iter().cloned()).unwrap().is_suffix(), "{x}");
            }
            let classes = theta_classes(x);
            assert_eq!(classes.len(), e.degree);
            for c in &classes[1..] {
                let c = CodeSet::new(c.iter().cloned()).unwrap();
                assert!(is_f_maximal(&c, &e.f, Kind::Suffix).unwrap().maximal, "{c} in {x}");
            }
            let gens: Vec<Word> = x.iter().cloned().collect();
            let s = StallingsGraph::fold_over(&gens, e.f.alphabet()).unwrap();
            let all: Vec<(usize, &Word)> =
                classes.iter().enumerate().flat_map(|(i, c)| c.iter().map(move |p| (i, p))).collect();
            for &(i, p) in &all {
                for &(j, q) in &all {
                    assert_eq!(s.contains(&element(p, q)).unwrap(), i == j, "{x}: {p} vs {q}");
                }
            }
        }
    }
}

#[test]
fn return_words_generate_the_free_group() {
    for g in [Generator::fibonacci(), Generator::tribonacci()] {
        let f = FactorSet::build(&g, 96).unwrap();
        for l in 0..=4 {
            for u in f.level(l) {
                let r: Vec<Word> = f.return_words(u).unwrap().right.into_iter().collect();
                assert!(is_basis(&r).unwrap(), "{g} u={u}");
                let stats = StallingsGraph::fold_over(&r, f.alphabet()).unwrap().stats().unwrap();
                assert_eq!(stats.index, Some(1), "{g} u={u}");
            }
        }
    }
}

#[test]
fn full_rank_words_have_rank_d() {
    for e in enumerated() {
        for x in &e.codes {
            let an = analyze(x, &e.f).unwrap();
            let dfa = minimal_automaton(x).unwrap();
            for w in e.f.words().filter(|w| w.len() <= 9 && !an.internal.contains(*w)) {
                assert_eq!(count_parses(w, x), e.degree);
                let map = PartialMap::new((0..dfa.num_states()).map(|q| dfa.run(q, w)).collect());
                assert_eq!(map.rank(), e.degree, "{x} at {w}");
            }
        }
    }
}

#[test]
fn f_group_matches_structure_group() {
    for e in enumerated().iter().filter(|e| e.degree >= 2) {
        for x in &e.codes {
            let fg = f_group(x, &e.f).unwrap();
            assert!(fg.is_transitive());
            let m = transition_monoid(&minimal_automaton(x).unwrap(), DEFAULT_MONOID_CAP).unwrap();
            let green = green_analysis(&m, Some(&e.f), None).unwrap();
            let dc = green.dclass.unwrap();
            assert_eq!(dc.rank, e.degree);
            assert!(perm_group_equivalent(&fg, &dc.structure_group).unwrap(), "{x}");
        }
    }
    let f = fibonacci(32);
    let fg = f_group(&klein_code(), &f).unwrap();
    assert!(perm_group_equivalent(&fg, &klein_group()).unwrap());
}

fn transitive_groups() -> Vec<PermutationGroup> {
    vec![
        PermutationGroup::on_points(2, vec![vec![1, 0], vec![0, 1]]).unwrap(),
        PermutationGroup::on_points(2, vec![vec![1, 0], vec![1, 0]]).unwrap(),
        PermutationGroup::on_points(3, vec![vec![1, 2, 0], vec![0, 2, 1]]).unwrap(),
        PermutationGroup::on_points(3, vec![vec![1, 2, 0], vec![1, 2, 0]]).unwrap(),
        klein_group(),
    ]
}

#[test]
fn group_codes_restrict_with_the_same_degree() {
    let f = fibonacci(48);
    for g in transitive_groups() {
        let (dfa, z) = group_code(&g, f.alphabet(), 6).unwrap();
        let d = g.degree();
        let max = f
            .alphabet()
            .words_of_length(6)
            .iter()
            .flat_map(|w| w.prefixes().collect::<Vec<_>>())
            .map(|w| count_parses(&w, &z))
            .max()
            .unwrap();
        assert_eq!(max, d);
        let inter = intersect_with_f(&ZSpec::Automaton(dfa), &f).unwrap();
        assert_eq!(inter.z_degree, d);
        assert_eq!(inter.degree, d);
        assert_eq!(inter.code.len(), d + 1);
        let gens: Vec<Word> = inter.code.iter().cloned().collect();
        assert!(is_basis(&gens).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn folding_is_confluent(
        (which, order) in (0usize..13).prop_flat_map(|i| {
            let x = &enumerated()[2].codes[i];
            let gens: Vec<Word> = x.iter().cloned().collect();
            let n = bouquet_edge_count(&gens);
            (Just(i), Just((0..n).collect::<Vec<_>>()).prop_shuffle())
        })
    ) {
        let e = &enumerated()[2];
        let gens: Vec<Word> = e.codes[which].iter().cloned().collect();
        let reference = StallingsGraph::fold_over(&gens, e.f.alphabet()).unwrap();
        prop_assert_eq!(StallingsGraph::fold_with_order(&gens, e.f.alphabet(), &order).unwrap(), reference);
    }

    #[test]
    fn folded_words_are_members(gens in prop::collection::vec("[ab]{1,5}", 1..4), pick in prop::collection::vec(0usize..4, 0..6)) {
        let gens: Vec<Word> = gens.iter().map(|s| Word::from(s.as_str())).collect();
        let s = StallingsGraph::fold(&gens).unwrap();
        let mut g = GroupElement::identity();
        for i in pick {
            let h = GroupElement::from_word(&gens[i % gens.len()]);
            g = if i % 2 == 0 { g.mul(&h) } else { g.mul(&h.inverse()) };
        }
        prop_assert!(s.contains(&g).unwrap());
        let stats = s.stats().unwrap();
        prop_assert!(stats.rank <= gens.len());
    }
}

#[test]
fn degree_four_count_under_both_strategies() {
    use bifix_core::codes::enumerate_f_maximal_bifix_with;
    use bifix_core::par::Exec;
    let f = fibonacci(40);
    let seq = enumerate_f_maximal_bifix_with(&f, 4, Exec::Sequential).unwrap();
    let par = enumerate_f_maximal_bifix_with(&f, 4, Exec::Parallel).unwrap();
    assert_eq!(seq, par);
    assert_eq!(BigInt::from(seq.len()), hall_count(4, 2));
}
