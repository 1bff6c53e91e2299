use jrnn_keyphrase::corpus::{
    decode_phrases, encode_phrases, encode_phrases_kp5, kp3_to_kp5, kp5_to_kp3, to_binary_labels,
    Kp3, Kp5, PhraseSpan,
};
use proptest::prelude::*;

fn kp3(v: &[usize]) -> Vec<Kp3> {
    v.iter().map(|&i| Kp3::from_index(i).unwrap()).collect()
}

#[test]
fn binary_projection() {
    assert_eq!(to_binary_labels(&kp3(&[1, 2, 0])), vec![1, 1, 0]);
    assert_eq!(to_binary_labels(&kp3(&[0, 0, 0])), vec![0, 0, 0]);
    assert_eq!(to_binary_labels(&kp3(&[2, 1, 2])), vec![1, 1, 1]);
}

#[test]
fn middle_and_end_merge_into_tail() {
    assert_eq!(kp5_to_kp3(&[Kp5::B, Kp5::M, Kp5::E]), kp3(&[1, 2, 2]));
    assert_eq!(kp5_to_kp3(&[Kp5::O, Kp5::O]), kp3(&[0, 0]));
}

#[test]
fn every_kp5_symbol_against_the_table() {
    let table = [("O", 0), ("B", 1), ("M", 2), ("E", 2), ("S", 1)];
    for (sym, expected) in table {
        let k = [Kp5::O, Kp5::B, Kp5::M, Kp5::E, Kp5::S]
            .into_iter()
            .find(|k| k.symbol() == sym)
            .unwrap();
        assert_eq!(k.to_kp3().index(), expected, "{sym}");
    }
    assert_eq!(
        kp5_to_kp3(&[Kp5::S, Kp5::O, Kp5::B, Kp5::E]),
        kp3(&[1, 0, 1, 2])
    );
}

#[test]
fn decoding_examples() {
    assert_eq!(
        decode_phrases(&kp3(&[1, 2, 2, 0, 1])),
        vec![PhraseSpan::new(0, 2), PhraseSpan::new(4, 4)]
    );
    assert_eq!(
        decode_phrases(&kp3(&[0, 2, 2])),
        vec![PhraseSpan::new(1, 2)]
    );
    assert!(decode_phrases(&kp3(&[0, 0, 0])).is_empty());
}

#[test]
fn encoding_examples() {
    assert_eq!(
        encode_phrases(&[PhraseSpan::new(0, 1), PhraseSpan::new(3, 3)], 4).unwrap(),
        kp3(&[1, 2, 0, 1])
    );
    assert_eq!(encode_phrases(&[], 3).unwrap(), kp3(&[0, 0, 0]));
    assert!(encode_phrases(&[PhraseSpan::new(0, 2), PhraseSpan::new(2, 3)], 5).is_err());
    assert!(encode_phrases(&[PhraseSpan::new(2, 4)], 4).is_err());
}

/// Random disjoint spans over a sequence of `len` positions.
fn spans_strategy() -> impl Strategy<Value = (Vec<PhraseSpan>, usize)> {
    prop::collection::vec((0usize..4, 1usize..4), 0..8).prop_map(|gaps| {
        let mut spans = Vec::new();
        let mut pos = 0;
        for (gap, len) in gaps {
            let start = pos + gap;
            spans.push(PhraseSpan::new(start, start + len - 1));
            pos = start + len;
        }
        let extra = pos % 3;
        (spans, pos + extra)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn encode_decode_round_trip((spans, len) in spans_strategy()) {
        let encoded = encode_phrases(&spans, len).unwrap();
        prop_assert_eq!(decode_phrases(&encoded), spans.clone());
        let kp5 = encode_phrases_kp5(&spans, len).unwrap();
        prop_assert_eq!(kp5_to_kp3(&kp5), encoded);
    }

    #[test]
    fn repaired_decoding_is_well_formed(raw in prop::collection::vec(0usize..3, 0..30)) {
        let labels = kp3(&raw);
        let spans = decode_phrases(&labels);
        for s in &spans {
            prop_assert!(s.start <= s.end && s.end < labels.len());
            // every covered position is positive and the span is maximal on the right
            prop_assert!(labels[s.start..=s.end].iter().all(|l| l.is_keyphrase()));
            prop_assert!(s.end + 1 == labels.len() || labels[s.end + 1] != Kp3::Tail);
        }
        for w in spans.windows(2) {
            prop_assert!(w[0].end < w[1].start);
        }
        let positives = labels.iter().filter(|l| l.is_keyphrase()).count();
        prop_assert_eq!(spans.iter().map(|s| s.len()).sum::<usize>(), positives);
        let reencoded = encode_phrases(&spans, labels.len()).unwrap();
        prop_assert_eq!(decode_phrases(&reencoded), spans);
    }

    #[test]
    fn binary_of_mapping_marks_non_outside(raw in prop::collection::vec(0usize..5, 0..40)) {
        let seq: Vec<Kp5> = raw.iter().map(|&i| Kp5::from_index(i).unwrap()).collect();
        let mapped = kp5_to_kp3(&seq);
        prop_assert_eq!(mapped.len(), seq.len());
        let binary = to_binary_labels(&mapped);
        for (b, k) in binary.iter().zip(&seq) {
            prop_assert_eq!(*b == 1, *k != Kp5::O);
        }
    }

    #[test]
    fn kp3_to_kp5_preserves_spans(raw in prop::collection::vec(0usize..3, 0..30)) {
        let labels = kp3(&raw);
        let kp5 = kp3_to_kp5(&labels);
        prop_assert_eq!(decode_phrases(&kp5_to_kp3(&kp5)), decode_phrases(&labels));
    }
}
