mod oracle;

use num_bigint::BigUint;
use proptest::prelude::*;
use twhom_core::decomp::{heuristic_decomposition, to_nice, validate};
use twhom_core::graph::direct_product;
use twhom_core::hom::{constructible_set, hom_backtrack, hom_dp, hom_solve, HomQuery, Mode, SolveOptions};
use twhom_core::{Graph, Limits};

fn solve(g: &Graph, h: &Graph, mode: Mode) -> twhom_core::hom::HomResult {
    hom_solve(g, h, None, &SolveOptions::new(mode)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn dp_and_backtracking_match_brute_force(g in oracle::graph(1, 6), h in oracle::looped_graph(1, 4)) {
        let expected = BigUint::from(oracle::count_homs(&g, &h));
        let nice = to_nice(&heuristic_decomposition(&g)).unwrap();
        let dp = hom_dp(&g, &h, &nice, Mode::Count, &Limits::default()).unwrap();
        let bt = hom_backtrack(&HomQuery::new(&g, &h, Mode::Count)).unwrap();
        let dispatched = solve(&g, &h, Mode::Count);
        prop_assert_eq!(dp.count.as_ref(), Some(&expected));
        prop_assert_eq!(bt.count.as_ref(), Some(&expected));
        prop_assert_eq!(dispatched.count.as_ref(), Some(&expected));
        let found = solve(&g, &h, Mode::FindOne);
        prop_assert_eq!(found.exists, expected > BigUint::from(0u8));
        if let Some(w) = found.witness {
            prop_assert!(w.is_valid(&g, &h));
        }
    }

    #[test]
    fn coloring_matches_chromatic_number(g in oracle::graph(1, 9), k in 1usize..=4) {
        let chi = oracle::chromatic(&g).unwrap();
        let r = solve(&g, &oracle::clique(k), Mode::FindOne);
        prop_assert_eq!(r.exists, chi <= k);
        if let Some(w) = r.witness {
            prop_assert!(w.is_valid(&g, &oracle::clique(k)));
        }
    }

    #[test]
    fn product_law(g in oracle::graph(1, 7), a in oracle::graph(2, 4), b in oracle::graph(2, 4)) {
        let p = direct_product(&[&a, &b], &Limits::default()).unwrap();
        let both = solve(&g, &a, Mode::Decide).exists && solve(&g, &b, Mode::Decide).exists;
        let r = solve(&g, &p, Mode::FindOne);
        prop_assert_eq!(r.exists, both);
        if let Some(w) = r.witness {
            prop_assert!(w.is_valid(&g, &p));
        }
        let count = solve(&g, &p, Mode::Count).count.unwrap();
        prop_assert_eq!(count, BigUint::from(oracle::count_homs(&g, &a) * oracle::count_homs(&g, &b)));
    }

    #[test]
    fn witnesses_compose(g in oracle::graph(1, 7), h in oracle::graph(1, 5), k in 3usize..=4) {
        let target = oracle::clique(k);
        let gh = solve(&g, &h, Mode::FindOne);
        let hk = solve(&h, &target, Mode::FindOne);
        if let (Some(a), Some(b)) = (gh.witness, hk.witness) {
            prop_assert!(a.then(&b).is_valid(&g, &target));
        }
    }

    #[test]
    fn heuristic_decompositions_are_valid(g in oracle::looped_graph(0, 12)) {
        let d = heuristic_decomposition(&g);
        prop_assert_eq!(validate(&g, &d), Ok(()));
        let nice = to_nice(&d).unwrap();
        prop_assert!(nice.check_roles());
        prop_assert_eq!(nice.width(), d.width());
        prop_assert_eq!(validate(&g, &nice.as_tree_decomposition()), Ok(()));
    }

    #[test]
    fn pinned_enumeration_is_sorted_and_exact(g in oracle::graph(1, 5), h in oracle::graph(1, 4)) {
        let q = HomQuery::new(&g, &h, Mode::Enumerate);
        let r = hom_backtrack(&q).unwrap();
        prop_assert_eq!(r.solutions.len() as u128, oracle::count_homs(&g, &h));
        prop_assert!(r.solutions.windows(2).all(|w| w[0].mapping < w[1].mapping));
    }
}

#[test]
fn constructible_gadget_pin_excludes_the_pinned_color() {
    use twhom_core::gadgets::build_projective_gadget;
    let k3 = oracle::clique(3);
    let gd = build_projective_gadget(&k3, &Limits::default()).unwrap();
    let f = gd.graph.as_ref().unwrap();
    let images = constructible_set(f, gd.u_index(), &[(gd.v_index(), 0)], &k3, &Limits::default()).unwrap();
    assert_eq!(images, [1, 2]);
}

#[test]
fn dispatch_examples() {
    let k3 = oracle::clique(3);
    let c5 = oracle::cycle(5);
    let grotzsch = twhom_core::graph::NamedGraph::Grotzsch.build().unwrap();
    let u = twhom_core::graph::disjoint_union(&[&k3, &grotzsch]).graph;
    assert!(solve(&c5, &u, Mode::Decide).exists);
    let p = direct_product(&[&k3, &c5], &Limits::default()).unwrap();
    assert!(!solve(&oracle::clique(4), &p, Mode::Decide).exists);
    assert!(solve(&oracle::cycle(7), &p, Mode::Decide).exists);
    assert_eq!(oracle::count_homs(&oracle::clique(2), &k3), 6);
}
