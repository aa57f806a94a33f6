use linkhom_core::hlink::{HLetter, HWord, LongitudeTuple, Pair};
use linkhom_core::nh::{lambda, lambda3, q_count};
use linkhom_core::synthesis::{
    reorder_moves, synthesize_crossings, synthesize_delta, verify_moves, Move,
};
use num_bigint::BigInt;
use num_traits::ToPrimitive;
use proptest::prelude::*;

fn word(n: u8, max_len: usize) -> impl Strategy<Value = HWord> {
    proptest::collection::vec(
        (1..n, 1..n, prop_oneof![Just(1i8), Just(-1i8)]),
        0..=max_len,
    )
    .prop_map(move |letters| {
        letters
            .into_iter()
            .map(|(a, b, s)| {
                let (i, j) = if a < b { (a, b + 1) } else { (b, a + 1) };
                HLetter::new(Pair(i, j), s)
            })
            .collect()
    })
}

/// Appends clasps cancelling every linking number.
fn unlinked(t: &LongitudeTuple) -> LongitudeTuple {
    let n = t.n();
    let mut w = HWord::new();
    for i in 1..=n {
        for j in i + 1..=n {
            let lk = t.linking(i, j).to_i64().unwrap();
            for _ in 0..lk.abs() {
                w.push(HLetter::new(
                    Pair(i as u8, j as u8),
                    if lk > 0 { -1 } else { 1 },
                ));
            }
        }
    }
    t.stack(&LongitudeTuple::from_word(&w, n).unwrap()).unwrap()
}

fn delta_budget(n: usize) -> usize {
    2 * (n - 1) * (n - 2) * (n - 3) / 3
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn crossing_sequences_verify_within_bound(n in 4u8..=5, w in word(5, 10)) {
        let w: HWord = w.into_iter().filter(|l| l.gen.1 <= n).collect();
        let t = LongitudeTuple::from_word(&w, n as usize).unwrap();
        let seq = synthesize_crossings(&t).unwrap();
        prop_assert!(verify_moves(&t, &seq));
        let v = t.milnor();
        let bound = lambda(&v) + 2 * q_count(&v, n as usize);
        prop_assert!(BigInt::from(seq.len()) <= bound);
    }

    #[test]
    fn unlinked_targets_use_each_pair_evenly(n in 4u8..=5, w in word(5, 8)) {
        let w: HWord = w.into_iter().filter(|l| l.gen.1 <= n).collect();
        let t = unlinked(&LongitudeTuple::from_word(&w, n as usize).unwrap());
        let seq = synthesize_crossings(&t).unwrap();
        prop_assert!(verify_moves(&t, &seq));
        prop_assert!(seq.pair_counts().values().all(|c| c % 2 == 0));
    }

    #[test]
    fn delta_sequences_verify_within_bound(n in 3u8..=5, w in word(5, 8)) {
        let w: HWord = w.into_iter().filter(|l| l.gen.1 <= n).collect();
        let t = unlinked(&LongitudeTuple::from_word(&w, n as usize).unwrap());
        let seq = synthesize_delta(&t).unwrap();
        prop_assert!(verify_moves(&t, &seq));
        prop_assert!(seq.moves.iter().all(|m| matches!(m, Move::Delta(_))));
        let bound = lambda3(&t.milnor()) + delta_budget(n as usize);
        prop_assert!(BigInt::from(seq.len()) <= bound);
    }

    #[test]
    fn exchanging_moves_keeps_the_product(w in word(4, 8), k in 0usize..16) {
        let t = LongitudeTuple::from_word(&w, 4).unwrap();
        let seq = synthesize_crossings(&t).unwrap();
        prop_assume!(seq.len() >= 2);
        let p = k % (seq.len() - 1);
        let swapped = reorder_moves(&seq, p).unwrap();
        prop_assert!(verify_moves(&t, &swapped));
    }
}

#[test]
fn brunnian_type_elements_need_at_most_two_per_inner_strand() {
    use linkhom_core::hlink::phi;
    use linkhom_core::rf::RfLetter;
    let l = |g: u8, s: i8| RfLetter::new(g, s);
    // [[x1, x2], x3] and a product with [x4, x2], all in the kernel of deleting strand 5
    let words = [
        vec![
            l(1, -1),
            l(2, -1),
            l(1, 1),
            l(2, 1),
            l(3, -1),
            l(2, -1),
            l(1, -1),
            l(2, 1),
            l(1, 1),
            l(3, 1),
        ],
        vec![
            l(4, -1),
            l(2, -1),
            l(4, 1),
            l(2, 1),
            l(1, -1),
            l(3, -1),
            l(1, 1),
            l(3, 1),
        ],
    ];
    for w in words {
        let t = phi(&w, 5).unwrap();
        let seq = synthesize_crossings(&t).unwrap();
        assert!(verify_moves(&t, &seq));
        assert!(seq.len() <= 6);
    }
}
