use std::collections::BTreeSet;

use num_bigint::BigUint;
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use dtcayley::census::{run_census, CensusConfig, Dedup};
use dtcayley::families::{
    catalog_up_to, cayley_graph, complete_multipartite, example_connection_set, kq1_2d, kq1_2d_voltages, voltage_family,
};
use dtcayley::field::FieldGF;
use dtcayley::graph::Graph;
use dtcayley::graph6::{from_graph6, from_sparse6, to_graph6, to_sparse6};
use dtcayley::group::FiniteGroup;
use dtcayley::symmetry::{analyze, automorphism_group, canonical_form, group_order_bruteforce, is_isomorphic, Permutation};
use dtcayley::voltage::{is_n_cover, ArcVoltage, VoltageAssignment};

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

fn relabel_random(g: &Graph, rng: &mut ChaCha8Rng) -> Graph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    g.relabel(&perm)
}

proptest! {
    #[test]
    fn graph6_round_trip(g in arb_graph(70)) {
        prop_assert_eq!(from_graph6(&to_graph6(&g)).unwrap(), g.clone());
        prop_assert_eq!(from_sparse6(&to_sparse6(&g)).unwrap(), g);
    }

    #[test]
    fn aut_order_matches_brute_force(g in arb_graph(10)) {
        let fast = automorphism_group(&g).order();
        prop_assert_eq!(fast, BigUint::from(group_order_bruteforce(&g).unwrap()));
    }

    #[test]
    fn generators_are_automorphisms(g in arb_graph(30)) {
        for p in automorphism_group(&g).generators() {
            prop_assert!(p.is_automorphism_of(&g));
        }
    }

    #[test]
    fn canonical_form_is_label_invariant(g in arb_graph(24), seed in any::<u64>()) {
        let h = relabel_random(&g, &mut ChaCha8Rng::seed_from_u64(seed));
        prop_assert_eq!(canonical_form(&g).form, canonical_form(&h).form);
        let p = is_isomorphic(&g, &h).unwrap();
        prop_assert!(g.edges().into_iter().all(|(u, v)| h.has_edge(p.apply(u), p.apply(v))));
    }

    #[test]
    fn right_translations_are_automorphisms(n in 2u32..=6, mask in any::<u64>()) {
        let q = FiniteGroup::quaternion(n).unwrap();
        let blocks = dtcayley::census::blocks(n);
        let s: Vec<usize> = blocks.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).flat_map(|(_, b)| b.clone()).collect();
        let g = cayley_graph(&q, &s).unwrap();
        for t in q.elements() {
            let p = Permutation::from_images(q.elements().map(|x| q.mul(x, t)).collect()).unwrap();
            prop_assert!(p.is_automorphism_of(&g));
        }
    }

    #[test]
    fn voltage_inverse_law(n in 3usize..8, d in 2u32..6, seed in any::<u64>()) {
        let base = dtcayley::graph::small::complete(n);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let arcs: Vec<ArcVoltage> = base.edges().into_iter().map(|(u, v)| ArcVoltage { u, v, g: rng.gen_range(0..d as usize) }).collect();
        let psi = VoltageAssignment::from_arcs(base, FiniteGroup::cyclic(d).unwrap(), &arcs).unwrap();
        let z = psi.group().clone();
        for (u, v) in psi.base().edges() {
            prop_assert_eq!(psi.get(v, u).unwrap(), z.inv(psi.get(u, v).unwrap()));
        }
        let cover = psi.derive_cover();
        prop_assert!(is_n_cover(&cover.graph, &cover.fibers()));
        prop_assert_eq!(cover.graph.regular_degree(), Some(n - 1));
    }
}

#[test]
fn isomorphism_is_an_equivalence_on_random_graphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pool: Vec<Graph> = (0..50).map(|_| Graph::from_fn(12, |_, _| rng.gen_bool(0.4))).collect();
    for g in &pool {
        let p = is_isomorphic(g, g).expect("reflexive");
        assert!(p.is_automorphism_of(g));
    }
    for a in &pool {
        for b in &pool {
            assert_eq!(is_isomorphic(a, b).is_some(), is_isomorphic(b, a).is_some(), "symmetry");
        }
    }
    // relabelled copies give chains a ~ b ~ c
    for g in &pool[..10] {
        let b = relabel_random(g, &mut rng);
        let c = relabel_random(&b, &mut rng);
        assert!(is_isomorphic(g, &b).is_some() && is_isomorphic(&b, &c).is_some());
        assert!(is_isomorphic(g, &c).is_some(), "transitivity");
    }
}

#[test]
fn vertex_transitive_graphs_have_equal_distance_profiles() {
    for entry in catalog_up_to(32) {
        let g = &entry.graph;
        let first = g.distances().distribution(0);
        assert!((1..g.n()).all(|u| g.distances().distribution(u) == first), "{}", entry.name);
    }
}

#[test]
fn two_dt_with_girth_five_is_two_arc_transitive() {
    for entry in catalog_up_to(64) {
        let g = &entry.graph;
        if g.girth().is_some_and(|k| k >= 5) {
            let r = analyze(g).unwrap();
            assert!(!r.s_distance_transitive(2) || r.two_arc_transitive(), "{}", entry.name);
        }
    }
}

/// On every arc (u, v), the number of neighbours of v at distance 2 from u.
fn gamma2_counts(g: &Graph) -> BTreeSet<usize> {
    let d = g.distances();
    let mut counts = BTreeSet::new();
    for u in 0..g.n() {
        for v in g.neighbors(u) {
            counts.insert(g.neighbors(v).filter(|&w| d.get(u, w) == Some(2)).count());
        }
    }
    counts
}

#[test]
fn gamma2_intersection_is_constant_on_arcs() {
    for entry in catalog_up_to(48) {
        if entry.graph.is_complete() {
            continue;
        }
        assert_eq!(gamma2_counts(&entry.graph).len(), 1, "{}", entry.name);
    }
    for n in 2..=5u32 {
        let g = cayley_graph(&FiniteGroup::quaternion(n).unwrap(), &example_connection_set(n)).unwrap();
        assert_eq!(gamma2_counts(&g), BTreeSet::from([1]));
        assert!(is_isomorphic(&g, &complete_multipartite(2 * n as usize, 2).unwrap()).is_some());
    }
}

#[test]
fn kq_cover_does_not_depend_on_primitive_element() {
    for (q, d) in [(5, 2), (5, 4), (7, 3), (9, 4), (9, 8)] {
        let field = FieldGF::from_order(q).unwrap();
        let reference = kq1_2d(q, d).unwrap();
        let mut tried = 0;
        for theta in 2..q {
            let order = (1..q).find(|&k| (0..k).fold(1, |x, _| field.mul(x, theta)) == 1).unwrap();
            if order == q - 1 {
                let g = kq1_2d_voltages(q, d, Some(theta)).unwrap().derive_cover().graph;
                assert!(is_isomorphic(&g, &reference).is_some(), "q = {q}, d = {d}, theta = {theta}");
                tried += 1;
            }
        }
        assert!(tried >= 1);
    }
}

#[test]
fn covers_project_onto_their_fibres() {
    for (name, params) in [("x1", vec![3]), ("x1", vec![7]), ("kq", vec![7, 3]), ("x23", vec![]), ("x22", vec![])] {
        let (_, cover) = voltage_family(name, &params).unwrap();
        assert!(is_n_cover(&cover.graph, &cover.fibers()), "{name}");
    }
}

#[test]
fn census_dedup_preserves_hit_classes() {
    for n in 2..=4 {
        let classes = |dedup| {
            let report = run_census(&CensusConfig { n_values: vec![n], dedup, ..Default::default() }).unwrap();
            report.rows.iter().filter(|r| r.is_2dt()).map(|r| r.matched.clone()).collect::<BTreeSet<_>>()
        };
        let all = classes(Dedup::None);
        assert_eq!(classes(Dedup::Aut), all, "n = {n}");
        assert_eq!(classes(Dedup::Iso), all, "n = {n}");
    }
}

#[test]
fn census_rows_satisfy_implication_chain() {
    let report = run_census(&CensusConfig { n_values: vec![2, 3, 4, 5], ..Default::default() }).unwrap();
    for r in &report.rows {
        assert!(r.chain_holds(), "{:?}", r.set);
        if let Some(inv) = &r.invariants {
            assert!(!inv.arc_transitive || inv.vertex_transitive);
        }
    }
}

#[test]
fn small_sets_are_disconnected() {
    for n in 2..=8 {
        let q = FiniteGroup::quaternion(n).unwrap();
        for s in dtcayley::census::enumerate_connection_sets(n, 1, Some(3)) {
            assert!(!q.generates(&s), "n = {n}, S = {s:?}");
        }
    }
}
