//! The `jrnn-kp` command line.
//!
//! Exit status is 0 on success, 1 when a verification (gradcheck) fails and
//! 2 on usage or input errors. Every command that writes a file with `--out`
//! also writes `<out>.manifest.json`.

mod manifest;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

pub use manifest::{file_digest, manifest_path, RunManifest};

use crate::augment::{augment_corpus, load_stopwords, load_synsets, AugmentConfig};
use crate::corpus::{
    load_corpus, load_unlabeled_corpus, split_train_val, Corpus, Label, LabelScheme, Token, Tweet,
};
use crate::error::{Error, Result};
use crate::eval::{
    evaluate_parallel, Experiment, Method, ModelLabeler, Report, ReportRow, DEFAULT_ALPHAS,
};
use crate::features::{load_embeddings, FeatureConfig, FeatureFlags};
use crate::network::{
    grad_check, load_model, save_model, train, Arch, GradCheckConfig, LossKind, Model, TrainConfig,
};
use crate::rake::{rake_extract, RakeConfig, Selection};

/// Largest relative gradient error accepted by `gradcheck`.
pub const GRADCHECK_TOLERANCE: f64 = 1e-4;

#[derive(Debug, Parser)]
#[command(
    name = "jrnn-kp",
    version,
    about = "Joint-layer RNN keyphrase extraction"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Train a tagger and write the model file
    Train(TrainArgs),
    /// Tag a corpus with a trained model
    Predict(PredictArgs),
    /// Score a trained model on a labelled corpus
    Eval(EvalArgs),
    /// Write a synonym-augmented copy of a corpus
    Augment(AugmentArgs),
    /// Run the RAKE baseline
    Rake(RakeArgs),
    /// Compare analytic and numerical gradients of every architecture
    Gradcheck(GradcheckArgs),
    /// Train one JRNN3 per alpha and report test metrics
    Sweep(SweepArgs),
    /// Train and score a list of methods
    Compare(CompareArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LossArg {
    Xent,
    Euclid,
}

impl From<LossArg> for LossKind {
    fn from(l: LossArg) -> LossKind {
        match l {
            LossArg::Xent => LossKind::CrossEntropy,
            LossArg::Euclid => LossKind::SquaredEuclidean,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SchemeArg {
    Kp3,
    Kp5,
}

impl From<SchemeArg> for LabelScheme {
    fn from(s: SchemeArg) -> LabelScheme {
        match s {
            SchemeArg::Kp3 => LabelScheme::Kp3,
            SchemeArg::Kp5 => LabelScheme::Kp5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ArchArg {
    Jrnn,
    Rnn,
    Lstm,
}

impl From<ArchArg> for Arch {
    fn from(a: ArchArg) -> Arch {
        match a {
            ArchArg::Jrnn => Arch::Jrnn,
            ArchArg::Rnn => Arch::Rnn,
            ArchArg::Lstm => Arch::Lstm,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct FeatureArgs {
    /// Odd number of embedding slots centred on the word
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    #[arg(long)]
    pub use_pos: bool,
    #[arg(long)]
    pub use_ne: bool,
    #[arg(long)]
    pub use_ds: bool,
}

impl FeatureArgs {
    fn flags(&self) -> FeatureFlags {
        FeatureFlags {
            pos: self.use_pos,
            ne: self.use_ne,
            ds: self.use_ds,
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ModelArgs {
    #[arg(long, value_enum, default_value_t = ArchArg::Jrnn)]
    pub arch: ArchArg,
    #[arg(long, value_enum, default_value_t = SchemeArg::Kp3)]
    pub scheme: SchemeArg,
    /// Weight of the keyphrase/non-keyphrase cost
    #[arg(long, default_value_t = 0.5)]
    pub alpha: f64,
    #[arg(long, default_value_t = 0.1)]
    pub lr: f64,
    #[arg(long, default_value_t = 300)]
    pub hidden1: usize,
    #[arg(long, default_value_t = 300)]
    pub hidden2: usize,
    #[arg(long, default_value_t = 50)]
    pub epochs: usize,
    #[arg(long, default_value_t = 5)]
    pub patience: usize,
    #[arg(long, default_value_t = 5.0)]
    pub clip: f64,
    #[arg(long, value_enum, default_value_t = LossArg::Xent)]
    pub loss: LossArg,
    /// Fraction of the training corpus held out for early stopping when no --val is given
    #[arg(long, default_value_t = 0.1)]
    pub val_fraction: f64,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
}

impl ModelArgs {
    fn train_config(&self) -> TrainConfig {
        TrainConfig {
            arch: self.arch.into(),
            alpha: self.alpha,
            learning_rate: self.lr,
            hidden1: self.hidden1,
            hidden2: self.hidden2,
            max_epochs: self.epochs,
            patience: self.patience,
            grad_clip_norm: self.clip,
            loss_kind: self.loss.into(),
            seed: self.seed,
            scheme: self.scheme.into(),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct TrainArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    /// Validation corpus; defaults to a seeded split of --corpus
    #[arg(long)]
    pub val: Option<PathBuf>,
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Model file to write
    #[arg(long)]
    pub out: PathBuf,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct PredictArgs {
    #[arg(long)]
    pub model: PathBuf,
    /// Corpus to tag; the LABEL column may be `_`
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Print one keyphrase per line instead of the tagged corpus
    #[arg(long)]
    pub phrases: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct EvalArgs {
    #[arg(long)]
    pub model: PathBuf,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long)]
    pub embeddings: PathBuf,
    /// Worker threads for scoring; results do not depend on it
    #[arg(long, default_value_t = 1)]
    pub parallel: usize,
    /// TSV report to write
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct AugmentArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub synsets: PathBuf,
    #[arg(long)]
    pub stopwords: PathBuf,
    /// Variants per tweet
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    /// Replaced words per variant
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct RakeArgs {
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub stopwords: PathBuf,
    /// Fraction of candidates kept per tweet
    #[arg(long, default_value_t = 1.0 / 3.0, conflicts_with = "top_n")]
    pub fraction: f64,
    /// Keep this many candidates per tweet instead of a fraction
    #[arg(long)]
    pub top_n: Option<usize>,
    /// Emit the corpus with KP3 labels instead of ranked phrases
    #[arg(long)]
    pub labels: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl RakeArgs {
    fn selection(&self) -> Selection {
        match self.top_n {
            Some(n) => Selection::TopN(n),
            None => Selection::TopFraction(self.fraction),
        }
    }
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct GradcheckArgs {
    #[arg(long, default_value_t = 1e-5)]
    pub epsilon: f64,
    #[arg(long, default_value_t = 12)]
    pub input_dim: usize,
    #[arg(long, default_value_t = 8)]
    pub hidden1: usize,
    #[arg(long, default_value_t = 8)]
    pub hidden2: usize,
    #[arg(long, default_value_t = 5)]
    pub length: usize,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Corrupt the analytic gradient to check that the harness catches it
    #[arg(long)]
    pub inject_fault: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct ExperimentArgs {
    /// Training corpus
    #[arg(long)]
    pub corpus: PathBuf,
    #[arg(long)]
    pub val: Option<PathBuf>,
    #[arg(long)]
    pub test: PathBuf,
    #[arg(long)]
    pub embeddings: PathBuf,
    /// TSV report to write
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct SweepArgs {
    #[command(flatten)]
    pub data: ExperimentArgs,
    #[arg(long, value_delimiter = ',', default_values_t = DEFAULT_ALPHAS.to_vec())]
    pub alphas: Vec<f64>,
    #[command(flatten)]
    pub features: FeatureArgs,
    #[command(flatten)]
    pub model: ModelArgs,
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct CompareArgs {
    #[command(flatten)]
    pub data: ExperimentArgs,
    /// Comma-separated method names such as RAKE,LSTM-WE,JRNN3-WE-POS; defaults to the full table
    #[arg(long, value_delimiter = ',')]
    pub methods: Vec<String>,
    #[arg(long)]
    pub stopwords: Option<PathBuf>,
    #[arg(long)]
    pub synsets: Option<PathBuf>,
    #[arg(long, default_value_t = 3)]
    pub n: usize,
    #[arg(long, default_value_t = 3)]
    pub m: usize,
    #[arg(long, default_value_t = 3)]
    pub window: usize,
    #[command(flatten)]
    pub model: ModelArgs,
}

/// Outcome of a command that ran to completion.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Success,
    VerificationFailed,
}

impl Status {
    pub fn code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::VerificationFailed => 1,
        }
    }
}

/// Parses `args` (including the program name) and runs the command, writing
/// normal output to `stdout` and diagnostics to `stderr`. Returns the exit status.
pub fn run_from<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(rendered.as_bytes())
            } else {
                stderr.write_all(rendered.as_bytes())
            };
            return if code == 0 { 0 } else { 2 };
        }
    };
    match run(&cli.command, stdout) {
        Ok(status) => status.code(),
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            2
        }
    }
}

pub fn run(command: &Command, stdout: &mut dyn Write) -> Result<Status> {
    match command {
        Command::Train(a) => cmd_train(a, stdout),
        Command::Predict(a) => cmd_predict(a, stdout),
        Command::Eval(a) => cmd_eval(a, stdout),
        Command::Augment(a) => cmd_augment(a, stdout),
        Command::Rake(a) => cmd_rake(a, stdout),
        Command::Gradcheck(a) => cmd_gradcheck(a, stdout),
        Command::Sweep(a) => cmd_sweep(a, stdout),
        Command::Compare(a) => cmd_compare(a, stdout),
    }
}

fn io_err(e: std::io::Error) -> Error {
    Error::io("<stdout>", e)
}

/// Refuses to overwrite any of the inputs.
fn check_out(out: &Path, inputs: &[&Path]) -> Result<()> {
    let canon = |p: &Path| fs::canonicalize(p).ok();
    if let Some(o) = canon(out) {
        if inputs.iter().any(|i| canon(i).as_ref() == Some(&o)) {
            return Err(Error::InvalidArgument(format!(
                "output {} would overwrite an input file",
                out.display()
            )));
        }
    }
    Ok(())
}

fn write_artifact<O: Serialize>(
    out: &Path,
    contents: &[u8],
    command: &str,
    options: &O,
    seed: Option<u64>,
    inputs: &[&Path],
) -> Result<()> {
    check_out(out, inputs)?;
    let manifest = RunManifest::new(command, options, seed, inputs)?;
    fs::write(out, contents).map_err(|e| Error::io(out, e))?;
    manifest.write_beside(out)?;
    Ok(())
}

/// Reads a labelled corpus in whichever scheme its labels use.
pub fn load_labeled(path: &Path) -> Result<Corpus> {
    match load_corpus(path, LabelScheme::Kp3) {
        Ok(c) => Ok(c),
        Err(kp3_err @ Error::Parse { .. }) => {
            load_corpus(path, LabelScheme::Kp5).map_err(|_| kp3_err)
        }
        Err(e) => Err(e),
    }
}

fn training_split(
    corpus: &Path,
    val: Option<&Path>,
    fraction: f64,
    seed: u64,
    scheme: LabelScheme,
) -> Result<(Corpus, Corpus)> {
    let train = load_labeled(corpus)?.to_scheme(scheme);
    match val {
        Some(v) => Ok((train, load_labeled(v)?.to_scheme(scheme))),
        None => split_train_val(&train, fraction, crate::seed::derive_seed(seed, "split")),
    }
}

fn history_tsv(model: &Model) -> String {
    let mut out = String::from("epoch\ttrain_loss\tP\tR\tF1\tAcc\n");
    for r in &model.history {
        let m = r.validation;
        out.push_str(&format!(
            "{}\t{:.6}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\n",
            r.epoch, r.train_loss, m.precision, m.recall, m.f1, m.accuracy
        ));
    }
    out
}

fn cmd_train(a: &TrainArgs, stdout: &mut dyn Write) -> Result<Status> {
    let config = a.model.train_config();
    config.validate()?;
    let table = load_embeddings(&a.embeddings)?;
    let (train_set, val_set) = training_split(
        &a.corpus,
        a.val.as_deref(),
        a.model.val_fraction,
        a.model.seed,
        config.scheme,
    )?;
    let features = FeatureConfig::from_corpus(&train_set, a.features.flags(), a.features.window)?;
    let model = train(&train_set, &val_set, &table, &features, &config)?;

    let mut inputs = vec![a.corpus.as_path(), a.embeddings.as_path()];
    if let Some(v) = &a.val {
        inputs.push(v);
    }
    check_out(&a.out, &inputs)?;
    let manifest = RunManifest::new("train", a, Some(a.model.seed), &inputs)?;
    save_model(&model, &a.out)?;
    manifest.write_beside(&a.out)?;
    let mut history_path = a.out.as_os_str().to_owned();
    history_path.push(".history.tsv");
    let history_path = PathBuf::from(history_path);
    fs::write(&history_path, history_tsv(&model)).map_err(|e| Error::io(&history_path, e))?;

    for r in &model.history {
        writeln!(
            stdout,
            "epoch {:>3}  loss {:.6}  val F1 {}  Acc {}",
            r.epoch,
            r.train_loss,
            crate::eval::format_metric(r.validation.f1),
            crate::eval::format_metric(r.validation.accuracy)
        )
        .map_err(io_err)?;
    }
    writeln!(stdout, "wrote {}", a.out.display()).map_err(io_err)?;
    Ok(Status::Success)
}

/// Loads a corpus to be tagged by `model`. Labels may be `_`; real labels must
/// belong to the model's scheme.
fn load_for_model(path: &Path, model: &Model) -> Result<Corpus> {
    match load_unlabeled_corpus(path, model.scheme) {
        Ok(c) => Ok(c),
        Err(e @ Error::Parse { .. }) => {
            let other = match model.scheme {
                LabelScheme::Kp3 => LabelScheme::Kp5,
                LabelScheme::Kp5 => LabelScheme::Kp3,
            };
            match load_unlabeled_corpus(path, other) {
                Ok(_) => Err(Error::SchemeMismatch {
                    model: model.scheme.to_string(),
                    input: other.to_string(),
                }),
                Err(_) => Err(e),
            }
        }
        Err(e) => Err(e),
    }
}

fn cmd_predict(a: &PredictArgs, stdout: &mut dyn Write) -> Result<Status> {
    let model = load_model(&a.model)?;
    let table = load_embeddings(&a.embeddings)?;
    let input = load_for_model(&a.corpus, &model)?;
    let mut tagged = Vec::with_capacity(input.len());
    for tweet in input.tweets() {
        let labels = model.predict(&table, tweet)?;
        let tokens = tweet
            .tokens
            .iter()
            .zip(labels)
            .map(|(t, label)| Token { label, ..t.clone() })
            .collect();
        tagged.push(Tweet {
            id: tweet.id.clone(),
            tokens,
        });
    }
    let tagged = Corpus::new(model.scheme, tagged)?;
    let text = if a.phrases {
        phrase_lines(&tagged)
    } else {
        tagged.to_conll_string()
    };
    match &a.out {
        Some(out) => write_artifact(
            out,
            text.as_bytes(),
            "predict",
            a,
            None,
            &[&a.model, &a.corpus, &a.embeddings],
        )?,
        None => stdout.write_all(text.as_bytes()).map_err(io_err)?,
    }
    Ok(Status::Success)
}

/// `id<TAB>start-end<TAB>words` for every decoded keyphrase.
fn phrase_lines(corpus: &Corpus) -> String {
    let mut out = String::new();
    for t in corpus.tweets() {
        for span in t.phrases() {
            let words: Vec<&str> = t.tokens[span.start..=span.end]
                .iter()
                .map(|tok| tok.form.as_str())
                .collect();
            out.push_str(&format!("{}\t{span}\t{}\n", t.id, words.join(" ")));
        }
    }
    out
}

fn model_method(model: &Model) -> Method {
    Method::Neural {
        arch: model.config.arch,
        scheme: model.scheme,
        features: model.features.flags(),
        augment: false,
    }
}

fn emit_report(
    report: &Report,
    out: Option<&Path>,
    command: &str,
    options: &impl Serialize,
    seed: Option<u64>,
    inputs: &[&Path],
    stdout: &mut dyn Write,
) -> Result<()> {
    stdout
        .write_all(report.to_table().as_bytes())
        .map_err(io_err)?;
    if let Some(out) = out {
        write_artifact(
            out,
            report.to_tsv().as_bytes(),
            command,
            options,
            seed,
            inputs,
        )?;
    }
    Ok(())
}

fn cmd_eval(a: &EvalArgs, stdout: &mut dyn Write) -> Result<Status> {
    let model = load_model(&a.model)?;
    let table = load_embeddings(&a.embeddings)?;
    let test = load_labeled(&a.test)?;
    let labeler = ModelLabeler {
        model: &model,
        table: &table,
    };
    let metrics = evaluate_parallel(&labeler, &test, a.parallel)?;
    let mut report = Report::new("Method");
    report.rows.push(ReportRow {
        name: model_method(&model).to_string(),
        metrics,
        marks: vec![],
        train_examples: None,
    });
    emit_report(
        &report,
        a.out.as_deref(),
        "eval",
        a,
        None,
        &[&a.model, &a.test, &a.embeddings],
        stdout,
    )?;
    Ok(Status::Success)
}

fn cmd_augment(a: &AugmentArgs, stdout: &mut dyn Write) -> Result<Status> {
    let corpus = load_labeled(&a.corpus)?;
    let db = load_synsets(&a.synsets)?;
    let stop = load_stopwords(&a.stopwords)?;
    let config = AugmentConfig {
        n: a.n,
        m: a.m,
        seed: a.seed,
    };
    let augmented = augment_corpus(&corpus, &db, &stop, &config)?;
    write_artifact(
        &a.out,
        augmented.to_conll_string().as_bytes(),
        "augment",
        a,
        Some(a.seed),
        &[&a.corpus, &a.synsets, &a.stopwords],
    )?;
    writeln!(
        stdout,
        "{} tweets -> {} tweets, wrote {}",
        corpus.len(),
        augmented.len(),
        a.out.display()
    )
    .map_err(io_err)?;
    Ok(Status::Success)
}

fn cmd_rake(a: &RakeArgs, stdout: &mut dyn Write) -> Result<Status> {
    let config = RakeConfig {
        stopwords: load_stopwords(&a.stopwords)?,
        selection: a.selection(),
    };
    config.selection.validate()?;
    let corpus = load_unlabeled_corpus(&a.corpus, LabelScheme::Kp3)
        .or_else(|_| load_unlabeled_corpus(&a.corpus, LabelScheme::Kp5))?;
    let mut text = String::new();
    let mut labeled = Vec::new();
    for tweet in corpus.tweets() {
        let result = rake_extract(tweet, &config)?;
        if a.labels {
            let tokens = tweet
                .tokens
                .iter()
                .zip(&result.labels)
                .map(|(t, l)| Token {
                    label: Label::Kp3(*l),
                    ..t.clone()
                })
                .collect();
            labeled.push(Tweet {
                id: tweet.id.clone(),
                tokens,
            });
        } else {
            for (rank, p) in result.ranked.iter().enumerate() {
                let chosen = if result.selected.contains(&p.span) {
                    "*"
                } else {
                    ""
                };
                text.push_str(&format!(
                    "{}\t{}\t{:.4}\t{}\t{}\t{chosen}\n",
                    tweet.id,
                    rank + 1,
                    p.score,
                    p.span,
                    p.words.join(" ")
                ));
            }
        }
    }
    if a.labels {
        text = Corpus::new(LabelScheme::Kp3, labeled)?.to_conll_string();
    }
    match &a.out {
        Some(out) => write_artifact(
            out,
            text.as_bytes(),
            "rake",
            a,
            None,
            &[&a.corpus, &a.stopwords],
        )?,
        None => stdout.write_all(text.as_bytes()).map_err(io_err)?,
    }
    Ok(Status::Success)
}

/// The architectures and schemes covered by `gradcheck`.
pub const GRADCHECK_FAMILIES: [(&str, Arch, usize); 4] = [
    ("JRNN3", Arch::Jrnn, 3),
    ("JRNN5", Arch::Jrnn, 5),
    ("RNN", Arch::Rnn, 3),
    ("LSTM", Arch::Lstm, 3),
];

fn cmd_gradcheck(a: &GradcheckArgs, stdout: &mut dyn Write) -> Result<Status> {
    let mut text = String::from("family\tloss\talpha\tmax_rel_error\tworst_tensor\tresult\n");
    let mut worst = 0.0f64;
    for (name, arch, classes) in GRADCHECK_FAMILIES {
        for loss in [LossKind::CrossEntropy, LossKind::SquaredEuclidean] {
            for alpha in [0.0, 0.5, 1.0] {
                let report = grad_check(&GradCheckConfig {
                    arch,
                    input_dim: a.input_dim,
                    hidden1: a.hidden1,
                    hidden2: a.hidden2,
                    n_classes: classes,
                    sequence_length: a.length,
                    epsilon: a.epsilon,
                    alpha,
                    loss_kind: loss,
                    seed: a.seed,
                    corrupt_analytic: a.inject_fault,
                })?;
                let ok = report.max_relative_error < GRADCHECK_TOLERANCE;
                worst = worst.max(report.max_relative_error);
                text.push_str(&format!(
                    "{name}\t{}\t{alpha}\t{:.3e}\t{}\t{}\n",
                    loss.name(),
                    report.max_relative_error,
                    report.worst_tensor,
                    if ok { "pass" } else { "FAIL" }
                ));
            }
        }
    }
    let passed = worst < GRADCHECK_TOLERANCE;
    text.push_str(&format!(
        "max relative error {worst:.3e} ({})\n",
        if passed { "pass" } else { "FAIL" }
    ));
    stdout.write_all(text.as_bytes()).map_err(io_err)?;
    if let Some(out) = &a.out {
        write_artifact(out, text.as_bytes(), "gradcheck", a, Some(a.seed), &[])?;
    }
    Ok(if passed {
        Status::Success
    } else {
        Status::VerificationFailed
    })
}

fn cmd_sweep(a: &SweepArgs, stdout: &mut dyn Write) -> Result<Status> {
    let base = TrainConfig {
        arch: Arch::Jrnn,
        scheme: LabelScheme::Kp3,
        ..a.model.train_config()
    };
    let table = load_embeddings(&a.data.embeddings)?;
    let (train_set, val_set) = training_split(
        &a.data.corpus,
        a.data.val.as_deref(),
        a.model.val_fraction,
        a.model.seed,
        LabelScheme::Kp3,
    )?;
    let test = load_labeled(&a.data.test)?;
    let experiment = Experiment::new(&train_set, &val_set, &test, &table, a.features.window);
    let report = experiment.alpha_sweep(a.features.flags(), &base, &a.alphas)?;
    let mut inputs = vec![
        a.data.corpus.as_path(),
        a.data.test.as_path(),
        a.data.embeddings.as_path(),
    ];
    if let Some(v) = &a.data.val {
        inputs.push(v);
    }
    emit_report(
        &report,
        a.data.out.as_deref(),
        "sweep",
        a,
        Some(a.model.seed),
        &inputs,
        stdout,
    )?;
    Ok(Status::Success)
}

fn cmd_compare(a: &CompareArgs, stdout: &mut dyn Write) -> Result<Status> {
    let methods: Vec<Method> = if a.methods.is_empty() {
        Method::table_rows()
    } else {
        a.methods.iter().map(|m| m.parse()).collect::<Result<_>>()?
    };
    let table = load_embeddings(&a.data.embeddings)?;
    let (train_set, val_set) = training_split(
        &a.data.corpus,
        a.data.val.as_deref(),
        a.model.val_fraction,
        a.model.seed,
        LabelScheme::Kp3,
    )?;
    let test = load_labeled(&a.data.test)?;
    let stopwords = a.stopwords.as_deref().map(load_stopwords).transpose()?;
    let synsets = a.synsets.as_deref().map(load_synsets).transpose()?;
    let mut experiment = Experiment::new(&train_set, &val_set, &test, &table, a.window);
    experiment.stopwords = stopwords.as_ref();
    experiment.synsets = synsets.as_ref();
    experiment.augment = AugmentConfig {
        n: a.n,
        m: a.m,
        seed: a.model.seed,
    };
    let report = experiment.compare(&a.model.train_config(), &methods)?;

    let mut inputs = vec![
        a.data.corpus.as_path(),
        a.data.test.as_path(),
        a.data.embeddings.as_path(),
    ];
    for p in [&a.data.val, &a.stopwords, &a.synsets]
        .into_iter()
        .flatten()
    {
        inputs.push(p);
    }
    emit_report(
        &report,
        a.data.out.as_deref(),
        "compare",
        a,
        Some(a.model.seed),
        &inputs,
        stdout,
    )?;
    Ok(Status::Success)
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn cli_definition_is_consistent() {
        Cli::command().debug_assert();
    }

    #[test]
    fn defaults() {
        let cli = Cli::try_parse_from([
            "jrnn-kp",
            "train",
            "--corpus",
            "c",
            "--embeddings",
            "e",
            "--out",
            "m",
        ])
        .unwrap();
        let Command::Train(a) = cli.command else {
            panic!()
        };
        let c = a.model.train_config();
        assert_eq!(c, TrainConfig::default());
        assert_eq!(a.features.window, 3);
    }

    #[test]
    fn usage_errors_exit_2() {
        let (mut out, mut err) = (Vec::new(), Vec::new());
        assert_eq!(run_from(["jrnn-kp", "bogus"], &mut out, &mut err), 2);
        assert_eq!(
            run_from(["jrnn-kp", "train", "--loss", "l1"], &mut out, &mut err),
            2
        );
        assert_eq!(run_from(["jrnn-kp", "--help"], &mut out, &mut err), 0);
    }
}
