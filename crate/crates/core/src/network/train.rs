use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::{sgd_step, Arch, LossKind, Network, Objective, SequenceTagger, Targets};
use crate::corpus::{Corpus, Kp3, Label, LabelScheme, Tweet};
use crate::error::{Error, Result};
use crate::eval::{confusion_counts, metrics, ConfusionCounts, MetricsReport};
use crate::features::{build_input_sequence, EmbeddingTable, FeatureConfig, InputSequence};
use crate::seed::derive_seed;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub arch: Arch,
    pub alpha: f64,
    pub learning_rate: f64,
    /// Hidden size of the first layer, and of the only layer for the baselines.
    pub hidden1: usize,
    pub hidden2: usize,
    pub max_epochs: usize,
    pub patience: usize,
    pub grad_clip_norm: f64,
    pub loss_kind: LossKind,
    pub seed: u64,
    pub scheme: LabelScheme,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            arch: Arch::Jrnn,
            alpha: 0.5,
            learning_rate: 0.1,
            hidden1: 300,
            hidden2: 300,
            max_epochs: 50,
            patience: 5,
            grad_clip_norm: 5.0,
            loss_kind: LossKind::CrossEntropy,
            seed: 42,
            scheme: LabelScheme::Kp3,
        }
    }
}

impl TrainConfig {
    pub fn validate(&self) -> Result<()> {
        Objective::new(self.alpha, self.loss_kind)?;
        if self.hidden1 == 0 || (self.arch == Arch::Jrnn && self.hidden2 == 0) {
            return Err(Error::InvalidArgument(
                "hidden sizes must be positive".into(),
            ));
        }
        if !(self.learning_rate > 0.0) {
            return Err(Error::InvalidArgument(format!(
                "learning rate must be positive, got {}",
                self.learning_rate
            )));
        }
        if !(self.grad_clip_norm > 0.0) {
            return Err(Error::InvalidArgument(
                "gradient clip norm must be positive".into(),
            ));
        }
        Ok(())
    }

    pub fn objective(&self) -> Objective {
        Objective {
            alpha: self.alpha,
            kind: self.loss_kind,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EpochRecord {
    pub epoch: usize,
    /// Mean joint loss over the epoch's training tweets.
    pub train_loss: f64,
    pub validation: MetricsReport,
}

/// A trained tagger together with everything needed to rebuild its inputs.
#[derive(Debug, Clone, PartialEq)]
pub struct Model {
    pub network: Network,
    pub features: FeatureConfig,
    pub embedding_dim: usize,
    pub scheme: LabelScheme,
    pub config: TrainConfig,
    pub history: Vec<EpochRecord>,
}

impl Model {
    pub fn input_sequence(&self, table: &EmbeddingTable, tweet: &Tweet) -> Result<InputSequence> {
        if table.dim() != self.embedding_dim {
            return Err(Error::Dimension(format!(
                "embeddings have dimension {}, model expects {}",
                table.dim(),
                self.embedding_dim
            )));
        }
        Ok(build_input_sequence(tweet, table, &self.features))
    }

    /// Arg-max of the tagging layer at every token.
    pub fn predict(&self, table: &EmbeddingTable, tweet: &Tweet) -> Result<Vec<Label>> {
        let x = self.input_sequence(table, tweet)?;
        self.network
            .predict_classes(&x)?
            .into_iter()
            .map(|c| {
                self.scheme
                    .label_from_index(c)
                    .ok_or_else(|| Error::Dimension(format!("class {c} outside {}", self.scheme)))
            })
            .collect()
    }

    /// Predictions mapped to the three-class scheme for evaluation.
    pub fn predict_kp3(&self, table: &EmbeddingTable, tweet: &Tweet) -> Result<Vec<Kp3>> {
        Ok(self
            .predict(table, tweet)?
            .into_iter()
            .map(Label::to_kp3)
            .collect())
    }

    /// Best validation F1 seen during training.
    pub fn best_validation_f1(&self) -> Option<f64> {
        self.history
            .iter()
            .map(|r| r.validation.f1)
            .fold(None, |acc, f| Some(acc.map_or(f, |a: f64| a.max(f))))
    }
}

fn validation_metrics(
    network: &Network,
    data: &[(InputSequence, Vec<Kp3>)],
    scheme: LabelScheme,
) -> Result<MetricsReport> {
    let mut counts = ConfusionCounts::default();
    for (x, gold) in data {
        let pred: Vec<Kp3> = network
            .predict_classes(x)?
            .into_iter()
            .map(|c| {
                scheme
                    .label_from_index(c)
                    .map(Label::to_kp3)
                    .unwrap_or(Kp3::Outside)
            })
            .collect();
        counts += confusion_counts(&pred, gold)?;
    }
    metrics(counts)
}

/// Per-tweet SGD over a seeded shuffle. After every epoch the word-level F1 on
/// `val` is measured; the parameters of the best epoch (the latest one on
/// ties) are kept and training stops once `patience` epochs pass without a
/// strict improvement. An empty `val` falls back to scoring on the training
/// tweets.
pub fn train(
    train: &Corpus,
    val: &Corpus,
    table: &EmbeddingTable,
    features: &FeatureConfig,
    config: &TrainConfig,
) -> Result<Model> {
    config.validate()?;
    features.validate()?;
    if train.is_empty() {
        return Err(Error::InvalidArgument("training corpus is empty".into()));
    }
    for corpus in [train, val] {
        if corpus.scheme() != config.scheme && !corpus.is_empty() {
            return Err(Error::SchemeMismatch {
                model: config.scheme.to_string(),
                input: corpus.scheme().to_string(),
            });
        }
    }

    let input_dim = features.input_dim(table.dim());
    let mut network = Network::init(
        config.arch,
        input_dim,
        config.hidden1,
        config.hidden2,
        config.scheme.n_classes(),
        derive_seed(config.seed, "init"),
    )?;
    let objective = config.objective();

    let examples: Vec<(InputSequence, Targets)> = train
        .tweets()
        .iter()
        .map(|t| {
            (
                build_input_sequence(t, table, features),
                Targets::from_labels(&t.labels()),
            )
        })
        .collect();
    let scoring_corpus = if val.is_empty() { train } else { val };
    let scoring: Vec<(InputSequence, Vec<Kp3>)> = scoring_corpus
        .tweets()
        .iter()
        .map(|t| (build_input_sequence(t, table, features), t.kp3_labels()))
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(config.seed, "shuffle"));
    let mut order: Vec<usize> = (0..examples.len()).collect();
    let mut history = Vec::new();
    let mut best: Option<(f64, Network)> = None;
    let mut since_improvement = 0;

    for epoch in 1..=config.max_epochs {
        order.shuffle(&mut rng);
        let mut total = 0.0;
        for &i in &order {
            let (x, targets) = &examples[i];
            let (loss, grad) = network.loss_and_gradient(x, targets, objective)?;
            sgd_step(
                &mut network,
                &grad,
                config.learning_rate,
                config.grad_clip_norm,
            )?;
            total += loss.joint;
        }
        let validation = validation_metrics(&network, &scoring, config.scheme)?;
        history.push(EpochRecord {
            epoch,
            train_loss: total / examples.len() as f64,
            validation,
        });
        // ties keep the later, longer-trained parameters but do not reset patience
        match &best {
            Some((f1, _)) if validation.f1 < *f1 => since_improvement += 1,
            Some((f1, _)) if validation.f1 == *f1 => {
                best = Some((validation.f1, network.clone()));
                since_improvement += 1;
            }
            _ => {
                best = Some((validation.f1, network.clone()));
                since_improvement = 0;
            }
        }
        if since_improvement >= config.patience {
            break;
        }
    }

    Ok(Model {
        network: best.map_or(network, |(_, n)| n),
        features: features.clone(),
        embedding_dim: table.dim(),
        scheme: config.scheme,
        config: *config,
        history,
    })
}
