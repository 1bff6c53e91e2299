mod common;

use std::collections::HashMap;

use jrnn_keyphrase::augment::StopwordSet;
use jrnn_keyphrase::corpus::{decode_phrases, Kp3, Label, PhraseSpan, Token, Tweet};
use jrnn_keyphrase::rake::{rake_candidates, rake_extract, rake_scores, RakeConfig, Selection};
use proptest::prelude::*;

fn tweet(forms: &[&str]) -> Tweet {
    Tweet {
        id: "t".into(),
        tokens: forms
            .iter()
            .map(|f| Token::bare(*f, Label::Kp3(Kp3::Outside)))
            .collect(),
    }
}

/// deg and freq recounted from the candidate word lists.
fn brute_force(cands: &[Vec<String>]) -> HashMap<String, f64> {
    let mut words: Vec<&String> = cands.iter().flatten().collect();
    words.sort();
    words.dedup();
    words
        .into_iter()
        .map(|w| {
            let freq = cands.iter().flatten().filter(|x| *x == w).count();
            let deg: usize = cands
                .iter()
                .map(|c| c.iter().filter(|x| *x == w).count() * c.len())
                .sum();
            (w.clone(), deg as f64 / freq as f64)
        })
        .collect()
}

#[test]
fn deep_learning_hand_computation() {
    let corpus = common::rake_fixture();
    let t = &corpus.tweets()[0];
    let stop = StopwordSet::new(["and"]);
    let cands = rake_candidates(t, &stop);
    assert_eq!(cands, vec![PhraseSpan::new(0, 1), PhraseSpan::new(3, 4)]);
    let s = rake_scores(&cands, t);
    // deg(deep) = 2 + 2, freq(deep) = 2
    assert_eq!(s.word_scores["deep"], 4.0 / 2.0);
    assert_eq!(s.word_scores["learning"], 2.0);
    assert_eq!(s.word_scores["models"], 2.0);
    assert_eq!(
        s.phrases.iter().map(|p| p.score).collect::<Vec<_>>(),
        vec![4.0, 4.0]
    );
    let out = rake_extract(t, &RakeConfig::new(stop.clone())).unwrap();
    assert_eq!(out.selected, vec![PhraseSpan::new(0, 1)]);
    assert_eq!(out, rake_extract(t, &RakeConfig::new(stop)).unwrap());
}

#[test]
fn duplicated_phrase_doubles_counts_not_scores() {
    let once = tweet(&["kartu", "kredit", "x", "atm"]);
    let twice = tweet(&["kartu", "kredit", "x", "atm", "x", "kartu", "kredit"]);
    let stop = StopwordSet::new(["x"]);
    let a = rake_scores(&rake_candidates(&once, &stop), &once);
    let b = rake_scores(&rake_candidates(&twice, &stop), &twice);
    let words = |t: &Tweet| {
        rake_candidates(t, &stop)
            .iter()
            .map(|s| {
                t.tokens[s.start..=s.end]
                    .iter()
                    .map(|k| k.form.to_lowercase())
                    .collect()
            })
            .collect::<Vec<Vec<String>>>()
    };
    assert_eq!(b.word_scores, brute_force(&words(&twice)));
    assert_eq!(a.word_scores["kartu"], b.word_scores["kartu"]);
    assert_eq!(a.word_scores["kredit"], b.word_scores["kredit"]);
}

#[test]
fn labels_decode_to_selection() {
    let t = tweet(&["BCA", "x", "mobile", "banking", "x", "atm", "error"]);
    let out = rake_extract(&t, &RakeConfig::new(StopwordSet::new(["x"]))).unwrap();
    assert_eq!(decode_phrases(&out.labels), out.selected);
}

const WORDS: &[&str] = &[
    "bank", "atm", "kartu", "kredit", "di", "yang", ",", "Bank", "saldo", "dan",
];

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn scores_and_selection_match_brute_force(
        idx in prop::collection::vec(0usize..WORDS.len(), 1..25),
        frac in 0.05f64..1.0,
        top in 1usize..6,
        use_top in any::<bool>(),
    ) {
        let forms: Vec<&str> = idx.iter().map(|&i| WORDS[i]).collect();
        let t = tweet(&forms);
        let stop = StopwordSet::new(["di", "yang", "dan"]);
        let cands = rake_candidates(&t, &stop);
        let cand_words: Vec<Vec<String>> = cands
            .iter()
            .map(|s| t.tokens[s.start..=s.end].iter().map(|k| k.form.to_lowercase()).collect())
            .collect();
        let scores = rake_scores(&cands, &t);
        let expected = brute_force(&cand_words);
        prop_assert_eq!(scores.word_scores.len(), expected.len());
        for (w, v) in &expected {
            prop_assert!((scores.word_scores[w] - v).abs() < 1e-12);
        }
        for p in &scores.phrases {
            let sum: f64 = p.words.iter().map(|w| expected[w]).sum();
            prop_assert!((p.score - sum).abs() < 1e-12);
        }

        let selection = if use_top { Selection::TopN(top) } else { Selection::TopFraction(frac) };
        let out = rake_extract(&t, &RakeConfig { stopwords: stop.clone(), selection }).unwrap();
        let keep = if use_top { top.min(cands.len()) } else { ((frac * cands.len() as f64) - 1e-9).ceil() as usize };
        prop_assert_eq!(out.selected.len(), keep);
        // sort by score descending, then by position
        let mut order: Vec<usize> = (0..cands.len()).collect();
        order.sort_by(|&a, &b| scores.phrases[b].score.partial_cmp(&scores.phrases[a].score).unwrap().then(a.cmp(&b)));
        let mut expected_sel: Vec<PhraseSpan> = order[..keep].iter().map(|&i| cands[i]).collect();
        expected_sel.sort();
        prop_assert_eq!(&out.selected, &expected_sel);
        let min_sel = out.selected.iter().map(|s| scores.phrases.iter().find(|p| p.span == *s).unwrap().score).fold(f64::INFINITY, f64::min);
        for p in &scores.phrases {
            if !out.selected.contains(&p.span) {
                prop_assert!(p.score <= min_sel);
            }
        }
    }
}
