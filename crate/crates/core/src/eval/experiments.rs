use std::fmt;
use std::str::FromStr;

use super::{evaluate, ModelLabeler, RakeLabeler, Report, ReportRow};
use crate::augment::{augment_corpus, AugmentConfig, StopwordSet, SynsetDb};
use crate::corpus::{Corpus, LabelScheme};
use crate::error::{Error, Result};
use crate::features::{EmbeddingTable, FeatureConfig, FeatureFlags};
use crate::network::{train, Arch, TrainConfig};
use crate::rake::{RakeConfig, Selection};

pub const DEFAULT_ALPHAS: [f64; 5] = [0.1, 0.3, 0.5, 0.7, 0.9];

/// One row of a method comparison.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Method {
    Rake,
    Neural {
        arch: Arch,
        scheme: LabelScheme,
        features: FeatureFlags,
        augment: bool,
    },
}

impl Method {
    pub fn jrnn3(features: FeatureFlags, augment: bool) -> Method {
        Method::Neural {
            arch: Arch::Jrnn,
            scheme: LabelScheme::Kp3,
            features,
            augment,
        }
    }

    fn baseline(arch: Arch, scheme: LabelScheme) -> Method {
        Method::Neural {
            arch,
            scheme,
            features: FeatureFlags::NONE,
            augment: false,
        }
    }

    /// The full comparison: RAKE, the three neural baselines, every JRNN3
    /// feature combination and the all-features augmented model.
    pub fn table_rows() -> Vec<Method> {
        let mut rows = vec![
            Method::Rake,
            Method::baseline(Arch::Rnn, LabelScheme::Kp3),
            Method::baseline(Arch::Lstm, LabelScheme::Kp3),
            Method::baseline(Arch::Jrnn, LabelScheme::Kp5),
        ];
        for (pos, ne, ds) in [
            (false, false, false),
            (true, false, false),
            (false, true, false),
            (false, false, true),
            (true, true, false),
            (true, false, true),
            (false, true, true),
            (true, true, true),
        ] {
            rows.push(Method::jrnn3(FeatureFlags { pos, ne, ds }, false));
        }
        rows.push(Method::jrnn3(FeatureFlags::ALL, true));
        rows
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Method::Rake => f.write_str("RAKE"),
            Method::Neural {
                arch,
                scheme,
                features,
                augment,
            } => {
                let base = match (arch, scheme) {
                    (Arch::Rnn, _) => "RNN",
                    (Arch::Lstm, _) => "LSTM",
                    (Arch::Jrnn, LabelScheme::Kp3) => "JRNN3",
                    (Arch::Jrnn, LabelScheme::Kp5) => "JRNN5",
                };
                write!(f, "{base}-WE")?;
                // the all-features model is conventionally listed as NE-POS-DS
                let order: [(bool, &str); 3] = if *features == FeatureFlags::ALL {
                    [(true, "-NE"), (true, "-POS"), (true, "-DS")]
                } else {
                    [
                        (features.pos, "-POS"),
                        (features.ne, "-NE"),
                        (features.ds, "-DS"),
                    ]
                };
                for (on, suffix) in order {
                    if on {
                        f.write_str(suffix)?;
                    }
                }
                if *augment {
                    f.write_str("-Augmentation")?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for Method {
    type Err = Error;

    /// Accepts names like `RAKE`, `LSTM-WE`, `JRNN5-WE` and
    /// `JRNN3-WE-NE-POS-DS-Augmentation`; suffixes may come in any order.
    fn from_str(s: &str) -> Result<Method> {
        let unknown = || Error::UnknownMethod(s.to_string());
        let upper = s.trim().to_ascii_uppercase();
        if upper == "RAKE" {
            return Ok(Method::Rake);
        }
        let mut parts = upper.split('-');
        let (arch, scheme) = match parts.next() {
            Some("RNN") => (Arch::Rnn, LabelScheme::Kp3),
            Some("LSTM") => (Arch::Lstm, LabelScheme::Kp3),
            Some("JRNN3") | Some("JRNN") => (Arch::Jrnn, LabelScheme::Kp3),
            Some("JRNN5") => (Arch::Jrnn, LabelScheme::Kp5),
            _ => return Err(unknown()),
        };
        let mut features = FeatureFlags::NONE;
        let mut augment = false;
        for part in parts {
            let flag = match part {
                "WE" => continue,
                "POS" => &mut features.pos,
                "NE" => &mut features.ne,
                "DS" => &mut features.ds,
                "AUGMENTATION" | "AUG" => &mut augment,
                _ => return Err(unknown()),
            };
            if *flag {
                return Err(unknown());
            }
            *flag = true;
        }
        Ok(Method::Neural {
            arch,
            scheme,
            features,
            augment,
        })
    }
}

/// Shared inputs of the comparison and sweep experiments.
#[derive(Debug, Clone)]
pub struct Experiment<'a> {
    pub train: &'a Corpus,
    pub val: &'a Corpus,
    pub test: &'a Corpus,
    pub table: &'a EmbeddingTable,
    pub window: usize,
    /// Required by RAKE and by augmented rows.
    pub stopwords: Option<&'a StopwordSet>,
    /// Required by augmented rows.
    pub synsets: Option<&'a SynsetDb>,
    pub augment: AugmentConfig,
    pub rake_selection: Selection,
}

impl<'a> Experiment<'a> {
    pub fn new(
        train: &'a Corpus,
        val: &'a Corpus,
        test: &'a Corpus,
        table: &'a EmbeddingTable,
        window: usize,
    ) -> Experiment<'a> {
        Experiment {
            train,
            val,
            test,
            table,
            window,
            stopwords: None,
            synsets: None,
            augment: AugmentConfig::default(),
            rake_selection: Selection::TopFraction(1.0 / 3.0),
        }
    }

    fn run_method(&self, method: &Method, base: &TrainConfig) -> Result<ReportRow> {
        let name = method.to_string();
        match *method {
            Method::Rake => {
                let stopwords = self
                    .stopwords
                    .ok_or_else(|| Error::InvalidArgument("RAKE needs a stopword list".into()))?;
                let config = RakeConfig {
                    stopwords: stopwords.clone(),
                    selection: self.rake_selection,
                };
                Ok(ReportRow {
                    name,
                    metrics: evaluate(&RakeLabeler(&config), self.test)?,
                    marks: vec![],
                    train_examples: None,
                })
            }
            Method::Neural {
                arch,
                scheme,
                features,
                augment,
            } => {
                let train_corpus = if augment {
                    let (Some(db), Some(stop)) = (self.synsets, self.stopwords) else {
                        return Err(Error::InvalidArgument(format!(
                            "{name} needs a synset database and a stopword list"
                        )));
                    };
                    augment_corpus(self.train, db, stop, &self.augment)?
                } else {
                    self.train.clone()
                }
                .to_scheme(scheme);
                let val = self.val.to_scheme(scheme);
                let fconfig = FeatureConfig::from_corpus(&train_corpus, features, self.window)?;
                let tconfig = TrainConfig {
                    arch,
                    scheme,
                    ..*base
                };
                let model = train(&train_corpus, &val, self.table, &fconfig, &tconfig)?;
                let labeler = ModelLabeler {
                    model: &model,
                    table: self.table,
                };
                Ok(ReportRow {
                    name,
                    metrics: evaluate(&labeler, self.test)?,
                    marks: vec![],
                    train_examples: Some(train_corpus.len()),
                })
            }
        }
    }

    /// One JRNN3 model per alpha, identical otherwise, scored on the test set.
    pub fn alpha_sweep(
        &self,
        features: FeatureFlags,
        base: &TrainConfig,
        alphas: &[f64],
    ) -> Result<Report> {
        if alphas.is_empty() {
            return Err(Error::InvalidArgument("alpha list is empty".into()));
        }
        if let Some(a) = alphas.iter().find(|a| !(0.0..=1.0).contains(*a)) {
            return Err(Error::InvalidArgument(format!("alpha {a} outside [0, 1]")));
        }
        let mut report = Report::new("alpha");
        let method = Method::jrnn3(features, false);
        for &alpha in alphas {
            let mut row = self.run_method(&method, &TrainConfig { alpha, ..*base })?;
            row.name = format!("{alpha}");
            report.rows.push(row);
        }
        report.mark_best();
        Ok(report)
    }

    pub fn compare(&self, base: &TrainConfig, methods: &[Method]) -> Result<Report> {
        let mut report = Report::new("Method");
        for method in methods {
            report.rows.push(self.run_method(method, base)?);
        }
        Ok(report)
    }
}

/// Trains one model per alpha on `train` (validated on `val`) and reports
/// test-set metrics with best-F1 / best-Acc markers.
pub fn alpha_sweep(
    train: &Corpus,
    val: &Corpus,
    test: &Corpus,
    table: &EmbeddingTable,
    fconfig: &FeatureConfig,
    base: &TrainConfig,
    alphas: &[f64],
) -> Result<Report> {
    Experiment::new(train, val, test, table, fconfig.window).alpha_sweep(
        fconfig.flags(),
        base,
        alphas,
    )
}

/// Parses each method name and runs [`Experiment::compare`].
pub fn compare_methods(
    experiment: &Experiment<'_>,
    base: &TrainConfig,
    methods: &[&str],
) -> Result<Report> {
    let parsed = methods
        .iter()
        .map(|m| m.parse::<Method>())
        .collect::<Result<Vec<_>>>()?;
    experiment.compare(base, &parsed)
}
