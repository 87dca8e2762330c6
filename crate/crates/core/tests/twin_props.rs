mod common;

use proptest::prelude::*;
use sierpinski_metric::c4::sierpinski_c4;
use sierpinski_metric::solver::{brute_force_all_bases, brute_force_dimension};
use sierpinski_metric::twins::check_twin_characterization_c4;
use sierpinski_metric::{find_twins, Graph, Metric, TwinKind, Variant};

use common::{arb_connected, arb_graph, connected_corpus};

fn open_nbhd(g: &Graph, u: usize) -> Vec<usize> {
    g.neighbors(u).to_vec()
}

fn closed_nbhd(g: &Graph, u: usize) -> Vec<usize> {
    let mut v = g.neighbors(u).to_vec();
    v.push(u);
    v.sort_unstable();
    v
}

fn twins_brute(g: &Graph, u: usize, v: usize) -> bool {
    u != v && (open_nbhd(g, u) == open_nbhd(g, v) || closed_nbhd(g, u) == closed_nbhd(g, v))
}

proptest! {
    #[test]
    fn partition_matches_pairwise_comparison(g in arb_graph(9)) {
        let tp = find_twins(&g);
        prop_assert!(tp.anomalies.is_empty());
        let n = g.vertex_count();
        let t = tp.twin_vertices();
        for u in 0..n {
            let has_twin = (0..n).any(|v| twins_brute(&g, u, v));
            prop_assert_eq!(has_twin, t.contains(&u));
        }
        prop_assert_eq!(tp.twin_count(), t.len());
        for set in &tp.sets {
            prop_assert!(set.members.len() >= 2);
            for &a in &set.members {
                for &b in &set.members {
                    if a != b {
                        match set.kind {
                            TwinKind::NonAdjacent => prop_assert_eq!(open_nbhd(&g, a), open_nbhd(&g, b)),
                            TwinKind::Adjacent => prop_assert_eq!(closed_nbhd(&g, a), closed_nbhd(&g, b)),
                        }
                    }
                }
            }
            // Maximal: no outside vertex is a twin of a member.
            for w in 0..n {
                if !set.members.contains(&w) {
                    prop_assert!(!twins_brute(&g, set.members[0], w));
                }
            }
        }
    }

    #[test]
    fn twin_relation_is_transitive(g in arb_graph(9)) {
        let n = g.vertex_count();
        let tp = find_twins(&g);
        for u in 0..n {
            for v in 0..n {
                for w in 0..n {
                    if u != w && twins_brute(&g, u, v) && twins_brute(&g, v, w) {
                        prop_assert!(twins_brute(&g, u, w));
                        prop_assert_eq!(tp.set_of(u), tp.set_of(w));
                    }
                }
            }
        }
    }

    #[test]
    fn exchange_property(g in arb_connected(7)) {
        prop_assume!(g.vertex_count() >= 3);
        let m = Metric::new(&g).unwrap();
        let tp = find_twins(&g);
        for variant in [Variant::Mg, Variant::Emg] {
            for basis in brute_force_all_bases(&g, variant).unwrap() {
                for set in &tp.sets {
                    for &u in &set.members {
                        for &v in &set.members {
                            if basis.contains(&u) && !basis.contains(&v) {
                                let swapped: Vec<usize> = basis
                                    .iter()
                                    .map(|&x| if x == u { v } else { x })
                                    .collect();
                                prop_assert!(m.check(variant, &swapped).unwrap().accepted);
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn minimum_generators_satisfy_forced_inclusion(g in arb_connected(7)) {
        prop_assume!(g.vertex_count() >= 2);
        let tp = find_twins(&g);
        for variant in Variant::ALL {
            let forced = tp.forced_inclusion(&g, variant);
            for basis in brute_force_all_bases(&g, variant).unwrap() {
                prop_assert!(forced.is_satisfied_by(&basis), "{variant} {basis:?}");
            }
        }
    }
}

#[test]
fn doubling_rule_on_corpus() {
    let mut applied = 0;
    for g in connected_corpus(150, 23) {
        let tp = find_twins(&g);
        let dim = brute_force_dimension(&g, Variant::Mg).unwrap().value;
        if tp.doubling_applies(dim) {
            let ftdim = brute_force_dimension(&g, Variant::Ftmg).unwrap().value;
            assert_eq!(ftdim, 2 * dim, "{:?}", g.edges());
            applied += 1;
        }
    }
    assert!(applied > 0, "corpus never exercised the rule");
}

#[test]
fn level_three_twins() {
    let s = sierpinski_c4(3).unwrap();
    let g = s.graph();
    let tp = find_twins(g);
    let n = g.vertex_count();
    let brute: Vec<usize> = (0..n)
        .filter(|&u| (0..n).any(|v| twins_brute(g, u, v)))
        .collect();
    assert_eq!(brute.len(), 16);
    assert_eq!(tp.twin_vertices(), brute);
    assert_eq!(tp.twin_count(), 16);
    assert_eq!(tp.set_count(), 8);
    assert!(tp.all_sets_have_size(2));
}

#[test]
fn level_two_lower_bounds() {
    let tp = find_twins(sierpinski_c4(2).unwrap().graph());
    assert_eq!((tp.twin_count(), tp.set_count()), (8, 4));
    let lb = tp.lower_bounds();
    assert_eq!((lb.dim, lb.ftdim, lb.dim_e, lb.ftdim_e), (4, 8, 4, 8));
}

#[test]
fn twin_characterization() {
    for r in 2..=4 {
        let c = check_twin_characterization_c4(r).unwrap();
        assert!(c.holds(), "r={r}: {c:?}");
    }
    let c4 = check_twin_characterization_c4(4).unwrap();
    assert_eq!((c4.twin_count, c4.set_count), (48, 24));
}

#[test]
fn lower_bounds_never_exceed_exact_values() {
    for g in connected_corpus(80, 11) {
        let lb = find_twins(&g).lower_bounds();
        for v in Variant::ALL {
            let exact = brute_force_dimension(&g, v).unwrap().value;
            assert!(lb.get(v) <= exact, "{v}: {} > {exact}", lb.get(v));
        }
    }
}
