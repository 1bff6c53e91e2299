mod common;

use std::collections::HashSet;

use common::{fixture, scan_labels};
use jrnn_keyphrase::corpus::{
    corpus_stats, load_corpus, parse_corpus, split_train_val, Corpus, Label, LabelScheme, Token,
    Tweet,
};
use jrnn_keyphrase::Error;
use proptest::prelude::*;

#[test]
fn two_tweet_file_token_counts_match_lines() {
    let text = "# id = a\nbank\tNN\tO\t_\troot\t1\njelek\tJJ\tO\t0\tamod\t0\n\n\
                # id = b\natm\tNN\tO\t_\troot\t1\ndi\tIN\tO\t0\tcase\t0\nsana\tRB\tO\t0\tadvmod\t0\n";
    let c = parse_corpus(text, LabelScheme::Kp3).unwrap();
    assert_eq!(c.len(), 2);
    let lines = scan_labels(text);
    for (tweet, labels) in c.tweets().iter().zip(&lines) {
        assert_eq!(tweet.len(), labels.len());
    }
    assert_eq!(c.tweets()[1].id, "b");
}

#[test]
fn label_outside_alphabet_names_the_line() {
    let text = "bank\tNN\tO\t_\troot\t1\njelek\tJJ\tO\t0\tamod\t3\n";
    match parse_corpus(text, LabelScheme::Kp3) {
        Err(Error::Parse { line, message, .. }) => {
            assert_eq!(line, 2);
            assert!(message.contains('3'));
        }
        other => panic!("{other:?}"),
    }
}

#[test]
fn wrong_column_count_and_bad_head() {
    assert!(matches!(
        parse_corpus("a\tb\tc\n", LabelScheme::Kp3),
        Err(Error::Parse { line: 1, .. })
    ));
    assert!(matches!(
        parse_corpus(
            "a\tN\tO\t_\troot\t0\nb\tN\tO\t5\tdep\t0\n",
            LabelScheme::Kp3
        ),
        Err(Error::Parse { line: 2, .. })
    ));
}

/// Counts classes and keyphrases from the raw file without the parser. A
/// keyphrase starts at every `1` and at every `2` not preceded by `1`/`2`.
fn line_scan_stats(path: &std::path::Path) -> (usize, usize, usize, [usize; 3]) {
    let text = std::fs::read_to_string(path).unwrap();
    let tweets = scan_labels(&text);
    let mut classes = [0usize; 3];
    let mut phrases = 0;
    let mut words = 0;
    for labels in &tweets {
        let mut prev = "0";
        for l in labels {
            words += 1;
            classes[l.parse::<usize>().unwrap()] += 1;
            if l == "1" || (l == "2" && prev == "0") {
                phrases += 1;
            }
            prev = l;
        }
    }
    (tweets.len(), words, phrases, classes)
}

#[test]
fn stats_match_independent_line_scan() {
    for name in [
        "banking_train.conll",
        "banking_test.conll",
        "banking_small.conll",
    ] {
        let path = fixture(name);
        let stats = corpus_stats(&load_corpus(&path, LabelScheme::Kp3).unwrap());
        let (tweets, words, phrases, classes) = line_scan_stats(&path);
        assert_eq!(stats.tweets, tweets, "{name}");
        assert_eq!(stats.words, words, "{name}");
        assert_eq!(stats.keyphrases, phrases, "{name}");
        assert_eq!(stats.class_counts, classes, "{name}");
        assert_eq!(stats.class_counts.iter().sum::<usize>(), stats.words);
    }
}

#[test]
fn five_tweet_stats_with_orphans() {
    let text = "a\tN\tO\t_\tr\t1\nb\tN\tO\t0\td\t2\nc\tN\tO\t0\td\t0\n\n\
                d\tN\tO\t_\tr\t2\ne\tN\tO\t0\td\t2\n\n\
                f\tN\tO\t_\tr\t0\n\n\
                g\tN\tO\t_\tr\t1\nh\tN\tO\t0\td\t1\ni\tN\tO\t0\td\t0\nj\tN\tO\t0\td\t2\n\n\
                k\tN\tO\t_\tr\t0\nl\tN\tO\t0\td\t0\n";
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("five.conll");
    std::fs::write(&path, text).unwrap();
    let stats = corpus_stats(&load_corpus(&path, LabelScheme::Kp3).unwrap());
    let (tweets, words, phrases, classes) = line_scan_stats(&path);
    assert_eq!(
        (stats.tweets, stats.words, stats.keyphrases),
        (tweets, words, phrases)
    );
    assert_eq!(stats.class_counts, classes);
    assert_eq!(stats.keyphrases, 5);
}

#[test]
fn single_tweet_stats() {
    let c = parse_corpus(
        "a\tN\tO\t_\tr\t1\nb\tN\tO\t0\td\t2\nc\tN\tO\t0\td\t0\n",
        LabelScheme::Kp3,
    )
    .unwrap();
    let s = corpus_stats(&c);
    assert_eq!(s.keyphrases, 1);
    assert_eq!(s.class_counts, [1, 1, 1]);
    let empty = parse_corpus("a\tN\tO\t_\tr\t0\nb\tN\tO\t0\td\t0\n", LabelScheme::Kp3).unwrap();
    assert_eq!(corpus_stats(&empty).keyphrases, 0);
}

fn numbered(n: usize) -> Corpus {
    let tweets = (0..n)
        .map(|i| Tweet {
            id: format!("t{i}"),
            tokens: vec![Token::bare(
                "w",
                Label::Kp3(jrnn_keyphrase::corpus::Kp3::Outside),
            )],
        })
        .collect();
    Corpus::new(LabelScheme::Kp3, tweets).unwrap()
}

#[test]
fn thousand_tweets_split_nine_hundred_to_one_hundred() {
    let (train, val) = split_train_val(&numbered(1000), 0.1, 42).unwrap();
    assert_eq!((train.len(), val.len()), (900, 100));
}

#[test]
fn split_is_deterministic_and_validated() {
    let c = numbered(10);
    assert_eq!(
        split_train_val(&c, 0.1, 5).unwrap(),
        split_train_val(&c, 0.1, 5).unwrap()
    );
    assert!(split_train_val(&c, 0.0, 5).is_err());
    assert!(split_train_val(&c, 1.0, 5).is_err());
    assert!(split_train_val(&numbered(1), 0.5, 5).is_err());
}

#[test]
fn save_and_reload_is_identity() {
    let c = common::banking("banking_test.conll");
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.conll");
    c.save(&path).unwrap();
    assert_eq!(load_corpus(&path, LabelScheme::Kp3).unwrap(), c);
    assert_eq!(
        std::fs::read_to_string(&path).unwrap(),
        std::fs::read_to_string(fixture("banking_test.conll")).unwrap()
    );
}

proptest! {
    #[test]
    fn split_is_a_partition(n in 2usize..200, fraction in 0.01f64..0.99, seed in any::<u64>()) {
        let c = numbered(n);
        let (train, val) = split_train_val(&c, fraction, seed).unwrap();
        let ids = |c: &Corpus| c.tweets().iter().map(|t| t.id.clone()).collect::<Vec<_>>();
        let (a, b) = (ids(&train), ids(&val));
        prop_assert_eq!(b.len(), (fraction * n as f64).round() as usize);
        let sa: HashSet<_> = a.iter().collect();
        let sb: HashSet<_> = b.iter().collect();
        prop_assert!(sa.is_disjoint(&sb));
        prop_assert_eq!(sa.len() + sb.len(), n);
        // both halves keep corpus order
        let pos = |id: &String| id[1..].parse::<usize>().unwrap();
        prop_assert!(a.windows(2).all(|w| pos(&w[0]) < pos(&w[1])));
        prop_assert!(b.windows(2).all(|w| pos(&w[0]) < pos(&w[1])));
    }
}
