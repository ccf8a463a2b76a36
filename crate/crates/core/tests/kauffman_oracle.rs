mod common;

use common::{fundamental_framing_factor, kauffman_prediction};
use proptest::prelude::*;
use qinv_core::links::{braid_closure, evaluate, evaluate_normalized};
use qinv_core::ribbon::{BraidGenerator, BraidWord, CrossingSign};
use qinv_core::ring::{Generic, LaurentScalar};

fn word(s: &str) -> BraidWord {
    s.parse().unwrap()
}

fn framed(w: &BraidWord, k: usize) -> LaurentScalar {
    evaluate(&Generic, &braid_closure(w, &vec![1; k]).unwrap()).unwrap()
}

#[test]
fn pins_unknot_and_kink() {
    assert_eq!(framed(&word(""), 1), kauffman_prediction(1, &word("")));
    assert_eq!(framed(&word("s1"), 2), kauffman_prediction(2, &word("s1")));
}

#[test]
fn trefoil_matches_bracket() {
    let w = word("s1 s1 s1");
    assert_eq!(framed(&w, 2), kauffman_prediction(2, &w));
    let normalized = evaluate_normalized(&Generic, &braid_closure(&w, &[1, 1]).unwrap()).unwrap();
    assert_eq!(
        normalized,
        &kauffman_prediction(2, &w) * &fundamental_framing_factor(&w)
    );
    assert_eq!(normalized.to_string(), "v^-2 + v^-6 + v^-10 - v^-18");
}

#[test]
fn mirror_trefoil_is_the_bar_image() {
    let w = word("s1 s1 s1");
    let a = evaluate_normalized(&Generic, &braid_closure(&w, &[1, 1]).unwrap()).unwrap();
    let b = evaluate_normalized(&Generic, &braid_closure(&w.mirror(), &[1, 1]).unwrap()).unwrap();
    assert_eq!(a.bar(), b);
    assert_ne!(a, b);
}

#[test]
fn named_links() {
    for (w, k) in [
        ("s1 s1", 2),
        ("s1 s2^-1 s1 s2^-1", 3),
        ("s1 s1 s1 s1 s1", 2),
        ("s1 s2^-1 s1 s2^-1 s1 s2^-1", 3),
        ("s1 s1 s1 s1", 2),
    ] {
        let w = word(w);
        assert_eq!(framed(&w, k), kauffman_prediction(k, &w), "{w}");
    }
}

fn braid_word(strands: usize, max_len: usize) -> impl Strategy<Value = BraidWord> {
    prop::collection::vec((1..strands, any::<bool>()), 0..=max_len).prop_map(|gens| {
        BraidWord(
            gens.into_iter()
                .map(|(index, pos)| BraidGenerator {
                    index,
                    sign: if pos {
                        CrossingSign::Positive
                    } else {
                        CrossingSign::Negative
                    },
                })
                .collect(),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn random_three_strand_closures(w in braid_word(3, 7)) {
        prop_assert_eq!(framed(&w, 3), kauffman_prediction(3, &w));
    }

    #[test]
    fn random_four_strand_closures(w in braid_word(4, 5)) {
        prop_assert_eq!(framed(&w, 4), kauffman_prediction(4, &w));
    }
}
