mod support;

use std::collections::BTreeSet;

use autl_core::abelian::{abelian_invariants, brute_force_homs, hom_invariants, hom_order, DEFAULT_ORACLE_CAP};
use autl_core::constructions::{
    abelian_inventory, builtin, builtin_corpus, dihedral, generalized_quaternion, semidirect_cyclic,
};
use autl_core::theorems::{Backtracking, FilterRoute, GroupAnalysis};
use autl_core::{AbelianInvariants, AutConfig, AutomorphismSet, Deadline, Group};
use proptest::prelude::*;

use support::naive::{order_statistics, Table};

fn named(name: &str) -> Group {
    builtin(name).unwrap().build().unwrap()
}

fn image_set(s: &AutomorphismSet<'_>) -> BTreeSet<Vec<usize>> {
    s.elements()
        .iter()
        .map(|a| a.images().iter().map(|&x| x as usize).collect())
        .collect()
}

fn analyse(g: &Group) -> GroupAnalysis<'_> {
    GroupAnalysis::compute(g, &Backtracking, &FilterRoute, &AutConfig::default()).unwrap()
}

/// Library results against the naive table computations, compared as sets.
fn assert_matches_naive(name: &str) {
    let g = named(name);
    let t = Table::of(&g);
    let a = analyse(&g);

    let auts = t.automorphisms();
    assert_eq!(image_set(&a.aut), auts.iter().cloned().collect(), "{name}: Aut");
    assert_eq!(image_set(&a.inn), t.inner(), "{name}: Inn");

    let centre: BTreeSet<usize> = a.centre.elements().iter().copied().collect();
    assert_eq!(centre, t.centre(), "{name}: Z");
    let derived: BTreeSet<usize> = a.derived.elements().iter().copied().collect();
    assert_eq!(derived, t.commutator_subgroup(), "{name}: G'");

    let l = t.fixed_by_all(&auts);
    let lib_l: BTreeSet<usize> = a.absolute_centre.elements().iter().copied().collect();
    assert_eq!(lib_l, l, "{name}: L");

    assert_eq!(image_set(&a.autl), t.moving_within(&auts, &l), "{name}: Aut_l");
    let autc = t.moving_within(&auts, &t.centre());
    assert_eq!(image_set(&a.autc), autc, "{name}: Aut_c");
    let autlz: BTreeSet<Vec<usize>> = t
        .moving_within(&auts, &l)
        .into_iter()
        .filter(|m| t.centre().iter().all(|&z| m[z] == z))
        .collect();
    assert_eq!(image_set(&a.autlz), autlz, "{name}: Aut^L_Z");
}

#[test]
fn q8_against_naive_tables() {
    assert_matches_naive("Q8");
}

#[test]
fn d8_against_naive_tables() {
    assert_matches_naive("D8");
}

#[test]
fn heisenberg3_against_naive_tables() {
    assert_matches_naive("heisenberg3");
}

#[test]
fn small_groups_against_naive_tables() {
    for name in ["C2", "C2xC2", "C4xC2", "C2xC2xC2", "S3", "C3:C4", "Q16", "D16", "SD16", "M16", "C4:C4"] {
        assert_matches_naive(name);
    }
}

#[test]
fn spot_values() {
    let q8 = named("Q8");
    let a = analyse(&q8);
    assert_eq!((a.aut.order(), a.inn.order(), a.autl.order(), a.absolute_centre.order()), (24, 4, 4, 2));
    assert!(a.autl_eq_inn());

    let d8 = named("D8");
    let a = analyse(&d8);
    assert_eq!((a.aut.order(), a.inn.order(), a.autl.order()), (8, 4, 4));
    assert!(a.autl_eq_inn());

    let h = named("heisenberg3");
    let a = analyse(&h);
    assert_eq!((a.absolute_centre.order(), a.autl.order(), a.inn.order()), (1, 1, 9));
    assert!(!a.autl_eq_inn());
}

#[test]
fn automorphism_group_orders_match_known_values() {
    let known = [
        ("C2", 1),
        ("C2xC2", 6),
        ("C4xC2", 8),
        ("C2xC2xC2", 168),
        ("S3", 6),
        ("D8", 8),
        ("Q8", 24),
        ("C3xC3", 48),
        ("C3:C4", 12),
        ("C4xC4", 96),
        ("D16", 32),
        ("Q16", 32),
        ("SD16", 16),
        ("M16", 16),
        ("C4:C4", 32),
        ("D8xC2", 64),
        ("Q8xC2", 192),
        ("C9xC3", 108),
        ("heisenberg3", 432),
        ("extraspecial27", 54),
        ("D32", 128),
        ("Q32", 128),
        ("heisenberg5", 12000),
    ];
    for (name, order) in known {
        let g = named(name);
        let aut = autl_core::automorphism::automorphism_group(&g, &AutConfig::default()).unwrap();
        assert_eq!(aut.order(), order, "{name}");
    }
}

#[test]
fn quaternion16_inner_group() {
    let g = named("quaternion16");
    assert_eq!(analyse(&g).inn.order(), 8);
}

#[test]
fn quotient_by_centre_of_q8() {
    let g = generalized_quaternion(8).unwrap();
    let q = g.quotient(&g.centre()).unwrap();
    assert_eq!(abelian_invariants(q.image()).unwrap().factors(), &[2, 2]);
}

#[test]
fn commutator_subgroups() {
    for (name, order) in [("D8", 2), ("Q8", 2), ("heisenberg3", 3), ("D16", 4), ("S3", 3)] {
        let g = named(name);
        assert_eq!(g.derived_subgroup().order(), order, "{name}");
        assert_eq!(Table::of(&g).commutator_subgroup().len(), order, "{name}");
    }
}

fn is_isomorphism(g: &Group, h: &Group, map: &[usize]) -> bool {
    let (tg, th) = (Table::of(g), Table::of(h));
    map.iter().collect::<BTreeSet<_>>().len() == g.order()
        && (0..g.order()).all(|a| (0..g.order()).all(|b| map[tg.mul(a, b)] == th.mul(map[a], map[b])))
}

#[test]
fn semidirect_presentation_of_d8() {
    let s = semidirect_cyclic(4, 2, 3).unwrap();
    let d = dihedral(8).unwrap();
    let map = autl_core::automorphism::find_isomorphism(&s, &d, &Deadline::none())
        .unwrap()
        .expect("isomorphic");
    assert!(is_isomorphism(&s, &d, &map));
    let q = generalized_quaternion(8).unwrap();
    assert!(autl_core::automorphism::find_isomorphism(&s, &q, &Deadline::none()).unwrap().is_none());
}

#[test]
fn builtin_corpus_is_pairwise_non_isomorphic() {
    let corpus = builtin_corpus(243).unwrap();
    for (i, g) in corpus.iter().enumerate() {
        for h in &corpus[i + 1..] {
            if g.order() != h.order() {
                continue;
            }
            let same_stats = order_statistics(&Table::of(g)) == order_statistics(&Table::of(h));
            if !same_stats {
                continue;
            }
            let iso = autl_core::automorphism::find_isomorphism(g, h, &Deadline::none()).unwrap();
            assert!(iso.is_none(), "{} and {} are isomorphic", g.label(), h.label());
        }
    }
}

#[test]
fn characteristic_subgroups_are_preserved() {
    for g in builtin_corpus(81).unwrap() {
        let a = analyse(&g);
        for alpha in a.aut.elements() {
            for s in [&a.power, &a.centre, &a.derived, &a.absolute_centre, &a.absolute_centre_power] {
                assert!(
                    s.elements().iter().all(|&x| s.contains(alpha.image(x))),
                    "{}: subgroup of order {} moved",
                    g.label(),
                    s.order()
                );
            }
        }
    }
}

#[test]
fn abelian_invariants_separate_isomorphism_classes() {
    let inventory = abelian_inventory(64);
    let mut seen = BTreeSet::new();
    for g in &inventory {
        let inv = abelian_invariants(g).unwrap();
        assert_eq!(inv.order(), g.order() as u128);
        assert!(seen.insert(inv.factors().to_vec()), "{} repeated", g.label());
    }
    // For abelian groups, equal element-order statistics means isomorphic.
    for (i, g) in inventory.iter().enumerate() {
        for h in &inventory[i + 1..] {
            if g.order() == h.order() {
                assert_ne!(order_statistics(&Table::of(g)), order_statistics(&Table::of(h)));
            }
        }
    }
}

#[test]
fn hom_counts_match_naive_enumeration() {
    let small: Vec<Group> = abelian_inventory(12).into_iter().filter(|g| g.order() > 1).collect();
    for a in &small {
        for b in &small {
            let naive = Table::of(a).homs_into(&Table::of(b), false).len() as u128;
            let ia = abelian_invariants(a).unwrap();
            let ib = abelian_invariants(b).unwrap();
            assert_eq!(hom_order(&ia, &ib), naive, "{} -> {}", a.label(), b.label());
            let brute = brute_force_homs(a, b, DEFAULT_ORACLE_CAP).unwrap();
            assert_eq!(brute.len() as u128, naive, "{} -> {}", a.label(), b.label());
        }
    }
}

#[test]
fn hom_from_nonabelian_source_matches_naive() {
    for (src, dst) in [("Q8", "C4"), ("D8", "C2xC2"), ("S3", "C6"), ("heisenberg3", "C3")] {
        let (g, h) = (named(src), named(dst));
        let naive = Table::of(&g).homs_into(&Table::of(&h), false).len();
        let brute = brute_force_homs(&g, &h, DEFAULT_ORACLE_CAP).unwrap().len();
        assert_eq!(brute, naive, "{src} -> {dst}");
    }
}

fn small_factors() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(prop::sample::select(vec![2u64, 3, 4, 8, 9]), 0..4)
}

proptest! {
    #[test]
    fn normalisation_keeps_order_and_divisibility(f in small_factors()) {
        let inv = AbelianInvariants::from_cyclic_factors(f.iter().copied());
        prop_assert_eq!(inv.order(), f.iter().map(|&d| d as u128).product::<u128>());
        for w in inv.factors().windows(2) {
            prop_assert_eq!(w[1] % w[0], 0);
        }
        prop_assert!(inv.factors().iter().all(|&d| d > 1));
    }

    #[test]
    fn hom_group_order_is_symmetric(a in small_factors(), b in small_factors()) {
        let ia = AbelianInvariants::from_cyclic_factors(a);
        let ib = AbelianInvariants::from_cyclic_factors(b);
        prop_assert_eq!(hom_order(&ia, &ib), hom_order(&ib, &ia));
        prop_assert_eq!(hom_invariants(&ia, &ib).order(), hom_order(&ia, &ib));
    }

    #[test]
    fn hom_order_matches_brute_force(a in small_factors(), b in small_factors()) {
        let ga = autl_core::constructions::abelian_from_factors(&a).unwrap();
        let gb = autl_core::constructions::abelian_from_factors(&b).unwrap();
        prop_assume!(ga.order() <= 72 && gb.order() <= 72);
        let ia = abelian_invariants(&ga).unwrap();
        let ib = abelian_invariants(&gb).unwrap();
        if let Ok(homs) = brute_force_homs(&ga, &gb, DEFAULT_ORACLE_CAP) {
            prop_assert_eq!(homs.len() as u128, hom_order(&ia, &ib));
        }
    }

    #[test]
    fn direct_products_stay_associative(a in small_factors(), b in 0usize..3) {
        let ga = autl_core::constructions::abelian_from_factors(&a).unwrap();
        prop_assume!(ga.order() <= 36);
        let extra = [dihedral(8), generalized_quaternion(8), dihedral(6)][b].clone().unwrap();
        let p = autl_core::constructions::direct_product(&ga, &extra);
        prop_assert!(p.validate().is_ok());
        prop_assert_eq!(p.order(), ga.order() * extra.order());
    }
}
