mod common;

use std::fs;
use std::path::{Path, PathBuf};

use jrnn_keyphrase::cli::{manifest_path, run_from, RunManifest};
use jrnn_keyphrase::corpus::{decode_phrases, load_corpus, LabelScheme};
use jrnn_keyphrase::synthetic;
use tempfile::TempDir;

struct Run {
    code: i32,
    stdout: String,
    stderr: String,
}

fn run(args: &[&str]) -> Run {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = run_from(
        std::iter::once("jrnn-kp").chain(args.iter().copied()),
        &mut out,
        &mut err,
    );
    Run {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn fx(name: &str) -> String {
    common::fixture(name).display().to_string()
}

fn path(dir: &TempDir, name: &str) -> PathBuf {
    dir.path().join(name)
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn manifest(artifact: &Path) -> RunManifest {
    serde_json::from_str(&fs::read_to_string(manifest_path(artifact)).unwrap()).unwrap()
}

/// Trains a small model on banking_small; 200 epochs are enough to memorise it.
fn train_small(dir: &TempDir, name: &str, epochs: &str, extra: &[&str]) -> PathBuf {
    let out = path(dir, name);
    let (corpus, emb) = (fx("banking_small.conll"), fx("embeddings.txt"));
    let mut args = vec![
        "train",
        "--corpus",
        &corpus,
        "--val",
        &corpus,
        "--embeddings",
        &emb,
        "--out",
        s(&out),
        "--hidden1",
        "32",
        "--hidden2",
        "32",
        "--epochs",
        epochs,
        "--patience",
        "200",
    ];
    args.extend_from_slice(extra);
    let r = run(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    out
}

#[test]
fn train_with_defaults_records_resolved_options() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(&dir, "m.jrkp");
    let (corpus, emb) = (fx("banking_small.conll"), fx("embeddings.txt"));
    let r = run(&[
        "train",
        "--corpus",
        &corpus,
        "--embeddings",
        &emb,
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("epoch   1"));
    let m = manifest(&out);
    assert_eq!(m.command, "train");
    assert_eq!(m.seed, Some(42));
    let model = &m.options["model"];
    assert_eq!(model["alpha"], 0.5);
    assert_eq!(model["lr"], 0.1);
    assert_eq!(model["hidden1"], 300);
    assert_eq!(model["hidden2"], 300);
    assert_eq!(model["epochs"], 50);
    assert_eq!(m.options["features"]["window"], 3);
    assert_eq!(m.inputs.len(), 2);
    assert!(fs::read_to_string(format!("{}.history.tsv", out.display()))
        .unwrap()
        .starts_with("epoch\ttrain_loss"));

    let out2 = path(&dir, "a.jrkp");
    let r = run(&[
        "train",
        "--corpus",
        &corpus,
        "--embeddings",
        &emb,
        "--out",
        s(&out2),
        "--alpha",
        "0.3",
        "--hidden1",
        "8",
        "--hidden2",
        "8",
        "--epochs",
        "2",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert_eq!(manifest(&out2).options["model"]["alpha"], 0.3);
}

#[test]
fn usage_and_input_errors_exit_two() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(&dir, "m.jrkp");
    let missing = path(&dir, "nope.txt");
    let corpus = fx("banking_small.conll");
    let r = run(&[
        "train",
        "--corpus",
        &corpus,
        "--embeddings",
        s(&missing),
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.contains("nope.txt"), "{}", r.stderr);
    assert!(!out.exists());

    assert_eq!(run(&["train", "--corpus", &corpus]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    let emb = fx("embeddings.txt");
    assert_eq!(
        run(&[
            "train",
            "--corpus",
            &corpus,
            "--embeddings",
            &emb,
            "--out",
            s(&out),
            "--alpha",
            "1.5"
        ])
        .code,
        2
    );
    // output may not clobber an input
    let copy = path(&dir, "c.conll");
    fs::copy(&corpus, &copy).unwrap();
    let before = fs::read(&copy).unwrap();
    assert_eq!(
        run(&[
            "train",
            "--corpus",
            s(&copy),
            "--embeddings",
            &emb,
            "--out",
            s(&copy),
            "--epochs",
            "1",
            "--hidden1",
            "4",
            "--hidden2",
            "4"
        ])
        .code,
        2
    );
    assert_eq!(fs::read(&copy).unwrap(), before);
    assert_eq!(run(&["--help"]).code, 0);
}

#[test]
fn predict_and_eval_on_memorised_corpus() {
    let dir = tempfile::tempdir().unwrap();
    let model = train_small(&dir, "m.jrkp", "200", &[]);
    let (corpus, emb) = (fx("banking_small.conll"), fx("embeddings.txt"));

    let out = path(&dir, "pred.conll");
    let r = run(&[
        "predict",
        "--model",
        s(&model),
        "--corpus",
        &corpus,
        "--embeddings",
        &emb,
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&out).unwrap();
    let gold_text = fs::read_to_string(&corpus).unwrap();
    let data_lines = |t: &str| {
        t.lines()
            .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    let (pred_lines, gold_lines) = (data_lines(&text), data_lines(&gold_text));
    assert_eq!(pred_lines.len(), gold_lines.len());
    for (p, g) in pred_lines.iter().zip(&gold_lines) {
        assert_eq!(p.split('\t').count(), 6);
        assert_eq!(
            p.rsplit_once('\t').unwrap().0,
            g.rsplit_once('\t').unwrap().0
        );
    }
    assert_eq!(manifest(&out).inputs.len(), 3);

    let r = run(&[
        "predict",
        "--model",
        s(&model),
        "--corpus",
        &corpus,
        "--embeddings",
        &emb,
        "--phrases",
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let predicted = load_corpus(&out, LabelScheme::Kp3).unwrap();
    let mut expected = String::new();
    for t in predicted.tweets() {
        for span in decode_phrases(&t.kp3_labels()) {
            let words: Vec<&str> = t.tokens[span.start..=span.end]
                .iter()
                .map(|k| k.form.as_str())
                .collect();
            expected.push_str(&format!(
                "{}\t{}-{}\t{}\n",
                t.id,
                span.start,
                span.end,
                words.join(" ")
            ));
        }
    }
    assert_eq!(r.stdout, expected);

    let report = path(&dir, "eval.tsv");
    let r = run(&[
        "eval",
        "--model",
        s(&model),
        "--test",
        &corpus,
        "--embeddings",
        &emb,
        "--parallel",
        "3",
        "--out",
        s(&report),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    assert!(r.stdout.contains("JRNN3-WE"));
    let row = fs::read_to_string(&report).unwrap();
    let fields: Vec<&str> = row.lines().nth(1).unwrap().split('\t').collect();
    assert_eq!(&fields[1..5], ["1.0000", "1.0000", "1.0000", "1.0000"]);
}

#[test]
fn predict_rejects_a_corpus_in_the_other_scheme() {
    let dir = tempfile::tempdir().unwrap();
    let model = train_small(&dir, "m.jrkp", "1", &[]);
    let kp5 = path(&dir, "kp5.conll");
    fs::write(
        &kp5,
        "BCA\tNNP\tORG\t_\troot\tS\nerror\tVB\tO\t0\txcomp\tO\n",
    )
    .unwrap();
    let r = run(&[
        "predict",
        "--model",
        s(&model),
        "--corpus",
        s(&kp5),
        "--embeddings",
        &fx("embeddings.txt"),
    ]);
    assert_eq!(r.code, 2);
    assert!(r.stderr.to_lowercase().contains("scheme"), "{}", r.stderr);
}

#[test]
fn augment_quadruples_and_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let input = path(&dir, "in.conll");
    fs::write(&input, synthetic::corpus(1000, 11).to_conll_string()).unwrap();
    let before = fs::read(&input).unwrap();
    let (syn, stop) = (fx("synsets.txt"), fx("stopwords.txt"));
    let go = |name: &str, extra: &[&str]| {
        let out = path(&dir, name);
        let mut args = vec![
            "augment",
            "--corpus",
            s(&input),
            "--synsets",
            &syn,
            "--stopwords",
            &stop,
            "--out",
            s(&out),
        ];
        args.extend_from_slice(extra);
        let r = run(&args);
        assert_eq!(r.code, 0, "{}", r.stderr);
        (out, r.stdout)
    };
    let (a, msg) = go("a.conll", &[]);
    assert!(msg.contains("1000 tweets -> 4000 tweets"));
    assert_eq!(load_corpus(&a, LabelScheme::Kp3).unwrap().len(), 4000);
    let (b, _) = go("b.conll", &[]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let (c, _) = go("c.conll", &["--seed", "7"]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
    let (z, _) = go("z.conll", &["--n", "0"]);
    assert_eq!(
        load_corpus(&z, LabelScheme::Kp3).unwrap(),
        load_corpus(&input, LabelScheme::Kp3).unwrap()
    );
    assert_eq!(fs::read(&input).unwrap(), before);
    assert_eq!(manifest(&a).seed, Some(42));
    assert_eq!(manifest(&a).inputs.len(), 3);
}

#[test]
fn rake_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, stop) = (fx("rake_deep_learning.conll"), fx("rake_stopwords.txt"));
    let r = run(&["rake", "--corpus", &corpus, "--stopwords", &stop]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let lines: Vec<&str> = r.stdout.lines().collect();
    assert_eq!(lines.len(), 2);
    assert!(
        lines[0].ends_with("\t1\t4.0000\t0-1\tdeep learning\t*"),
        "{}",
        lines[0]
    );
    assert!(
        lines[1].ends_with("\t2\t4.0000\t3-4\tdeep models\t"),
        "{}",
        lines[1]
    );

    let out = path(&dir, "rake.conll");
    let r = run(&[
        "rake",
        "--corpus",
        &corpus,
        "--stopwords",
        &stop,
        "--labels",
        "--top-n",
        "2",
        "--out",
        s(&out),
    ]);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let tagged = load_corpus(&out, LabelScheme::Kp3).unwrap();
    assert_eq!(tagged.tweets()[0].phrases().len(), 2);

    let empty = path(&dir, "empty.conll");
    fs::write(&empty, "").unwrap();
    let r = run(&["rake", "--corpus", s(&empty), "--stopwords", &stop]);
    assert_eq!((r.code, r.stdout.as_str()), (0, ""));
    assert_eq!(
        run(&[
            "rake",
            "--corpus",
            &corpus,
            "--stopwords",
            &stop,
            "--fraction",
            "0"
        ])
        .code,
        2
    );
}

#[test]
fn gradcheck_passes_and_detects_faults() {
    let dir = tempfile::tempdir().unwrap();
    let out = path(&dir, "gc.tsv");
    let r = run(&["gradcheck", "--epsilon", "1e-5", "--out", s(&out)]);
    assert_eq!(r.code, 0, "{}", r.stdout);
    assert_eq!(r.stdout.lines().count(), 1 + 24 + 1);
    assert!(r.stdout.trim_end().ends_with("(pass)"));
    assert_eq!(manifest(&out).options["epsilon"], 1e-5);

    let r = run(&["gradcheck", "--inject-fault"]);
    assert_eq!(r.code, 1);
    assert!(r.stdout.trim_end().ends_with("(FAIL)"));
}

#[test]
fn sweep_and_compare_reports() {
    let dir = tempfile::tempdir().unwrap();
    let (corpus, emb, stop) = (
        fx("banking_small.conll"),
        fx("embeddings.txt"),
        fx("stopwords.txt"),
    );
    let small = ["--hidden1", "8", "--hidden2", "8", "--epochs", "2"];
    let sweep = path(&dir, "sweep.tsv");
    let mut args = vec![
        "sweep",
        "--corpus",
        &corpus,
        "--test",
        &corpus,
        "--embeddings",
        &emb,
        "--out",
        s(&sweep),
    ];
    args.extend_from_slice(&small);
    let r = run(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&sweep).unwrap();
    assert_eq!(text.lines().count(), 6);
    assert!(text.starts_with("alpha\t"));

    let cmp = path(&dir, "cmp.tsv");
    let mut args = vec![
        "compare",
        "--corpus",
        &corpus,
        "--test",
        &corpus,
        "--embeddings",
        &emb,
        "--stopwords",
        &stop,
        "--methods",
        "RAKE,JRNN3-WE",
        "--out",
        s(&cmp),
    ];
    args.extend_from_slice(&small);
    let r = run(&args);
    assert_eq!(r.code, 0, "{}", r.stderr);
    let text = fs::read_to_string(&cmp).unwrap();
    let names: Vec<&str> = text
        .lines()
        .skip(1)
        .map(|l| l.split('\t').next().unwrap())
        .collect();
    assert_eq!(names, ["RAKE", "JRNN3-WE"]);

    let mut args = vec![
        "compare",
        "--corpus",
        &corpus,
        "--test",
        &corpus,
        "--embeddings",
        &emb,
        "--methods",
        "RAKE",
    ];
    args.extend_from_slice(&small);
    assert_eq!(run(&args).code, 2);
}

#[test]
fn identical_runs_reproduce_identical_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let a = train_small(&dir, "a.jrkp", "20", &[]);
    let b = train_small(&dir, "b.jrkp", "20", &[]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let (ma, mb) = (manifest(&a), manifest(&b));
    assert_eq!(ma.inputs, mb.inputs);
    assert_eq!(ma.options["model"], mb.options["model"]);
    let c = train_small(&dir, "c.jrkp", "20", &["--seed", "1"]);
    assert_ne!(fs::read(&a).unwrap(), fs::read(&c).unwrap());
}
