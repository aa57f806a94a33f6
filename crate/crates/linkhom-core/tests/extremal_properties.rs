use linkhom_core::extremal::{
    is_member, mantel_relation, min_k_subgraph_weight, phi4_formula, phi4_witness, phi_exact,
    phi_exact_with, total_weight, Budget, NodeCounter, SearchOptions, SearchStatus, WeightedGraph,
};
use proptest::prelude::*;

/// Minimum over every weight assignment in `0..=w`.
fn brute_force(n: usize, k: usize, w: u32) -> u64 {
    let m = n * (n - 1) / 2;
    let base = w as u64 + 1;
    let mut best = u64::MAX;
    for code in 0..base.pow(m as u32) {
        let mut c = code;
        let weights: Vec<u32> = (0..m)
            .map(|_| {
                let d = (c % base) as u32;
                c /= base;
                d
            })
            .collect();
        let total: u64 = weights.iter().map(|&x| x as u64).sum();
        if total >= best {
            continue;
        }
        let g = WeightedGraph::from_weights(n, weights).unwrap();
        if min_k_subgraph_weight(&g, k).unwrap() >= w as u64 {
            best = total;
        }
    }
    best
}

fn proven(n: usize, k: usize, w: u64) -> u64 {
    let r = phi_exact(n, k, w, Budget::default()).unwrap();
    assert_eq!(r.status, SearchStatus::ProvenOptimal);
    assert!(is_member(&r.witness, k, w).unwrap());
    assert_eq!(total_weight(&r.witness), r.value);
    r.value
}

#[test]
fn search_matches_exhaustive_enumeration() {
    for (n, k, w) in [
        (4, 4, 3),
        (4, 3, 1),
        (4, 3, 2),
        (5, 4, 3),
        (5, 3, 1),
        (5, 4, 2),
        (5, 3, 2),
    ] {
        assert_eq!(
            proven(n, k, w as u64),
            brute_force(n, k, w),
            "({}, {}, {})",
            n,
            k,
            w
        );
    }
}

#[test]
fn four_vertex_weight_three_sequence() {
    let expected = [3, 5, 8, 12];
    for (n, &v) in (4..=7).zip(expected.iter()) {
        assert_eq!(proven(n, 4, 3), v);
        assert_eq!(phi4_formula(n).unwrap(), v);
    }
}

#[test]
fn four_vertex_weight_three_at_eight() {
    assert_eq!(proven(8, 4, 3), 16);
    assert_eq!(total_weight(&phi4_witness(8).unwrap()), 16);
}

#[test]
fn unstrengthened_tree_proves_small_values() {
    let plain = SearchOptions {
        deletion_bound: false,
        degree_bound: false,
    };
    for (n, v) in [(5, 5), (6, 8), (7, 12)] {
        let r = phi_exact_with(n, 4, 3, plain, &mut NodeCounter::new(Budget::default())).unwrap();
        assert_eq!(r.status, SearchStatus::ProvenOptimal);
        assert_eq!(r.value, v);
    }
}

#[test]
fn mantel_values() {
    for n in 4..=8 {
        assert!(mantel_relation(n).unwrap(), "n = {}", n);
    }
}

#[test]
fn witnesses_up_to_twelve_are_members() {
    for n in 4..=12 {
        assert!(is_member(&phi4_witness(n).unwrap(), 4, 3).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn values_grow_with_n_and_w(n in 4usize..=6, k in 2usize..=4, w in 1u64..=3) {
        prop_assume!(k < n);
        let a = proven(n, k, w);
        let b = proven(n + 1, k, w);
        let c = proven(n, k, w + 1);
        prop_assert!(a <= b);
        prop_assert!(a <= c);
    }

    #[test]
    fn members_pass_the_degree_bound(weights in proptest::collection::vec(0u32..=3, 15)) {
        let g = WeightedGraph::from_weights(6, weights).unwrap();
        prop_assume!(is_member(&g, 4, 3).unwrap());
        let v = linkhom_core::extremal::degree_bound_witness(&g).unwrap();
        prop_assert!(3 * g.degree(v) >= 8);
    }
}
