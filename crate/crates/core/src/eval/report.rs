use std::fmt::Write as _;

use super::MetricsReport;

/// Four decimals without the leading zero for values below one: `.7763`, `1.0000`.
pub fn format_metric(v: f64) -> String {
    let s = format!("{v:.4}");
    match s.strip_prefix("0.") {
        Some(rest) => format!(".{rest}"),
        None => s,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ReportRow {
    pub name: String,
    pub metrics: MetricsReport,
    /// Markers such as `best-F1`.
    pub marks: Vec<String>,
    /// Number of training tweets behind this row, when a model was trained.
    pub train_examples: Option<usize>,
}

/// A results table shaped like the method comparison / alpha sweep tables:
/// a key column followed by P, R, F1 and Acc.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub key_header: String,
    pub rows: Vec<ReportRow>,
}

impl Report {
    pub fn new(key_header: impl Into<String>) -> Report {
        Report {
            key_header: key_header.into(),
            rows: Vec::new(),
        }
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn row(&self, name: &str) -> Option<&ReportRow> {
        self.rows.iter().find(|r| r.name == name)
    }

    /// Marks the first row with the highest F1 and the first with the highest accuracy.
    pub fn mark_best(&mut self) {
        let best = |key: fn(&MetricsReport) -> f64, rows: &[ReportRow]| {
            rows.iter()
                .enumerate()
                .fold(None, |acc: Option<(usize, f64)>, (i, r)| {
                    let v = key(&r.metrics);
                    match acc {
                        Some((_, b)) if v <= b => acc,
                        _ => Some((i, v)),
                    }
                })
                .map(|(i, _)| i)
        };
        if let Some(i) = best(|m| m.f1, &self.rows) {
            self.rows[i].marks.push("best-F1".into());
        }
        if let Some(i) = best(|m| m.accuracy, &self.rows) {
            self.rows[i].marks.push("best-Acc".into());
        }
    }

    /// Aligned plain-text table.
    pub fn to_table(&self) -> String {
        let has_marks = self.rows.iter().any(|r| !r.marks.is_empty());
        let width = self
            .rows
            .iter()
            .map(|r| r.name.chars().count())
            .chain([self.key_header.chars().count()])
            .max()
            .unwrap_or(0);
        let mut out = String::new();
        write!(
            out,
            "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}",
            self.key_header, "P", "R", "F1", "Acc"
        )
        .unwrap();
        if has_marks {
            out.push_str("  Best");
        }
        out.push('\n');
        let rule = width + 4 * 8 + if has_marks { 6 } else { 0 };
        out.push_str(&"-".repeat(rule));
        out.push('\n');
        for r in &self.rows {
            let m = r.metrics;
            write!(
                out,
                "{:<width$}  {:>6}  {:>6}  {:>6}  {:>6}",
                r.name,
                format_metric(m.precision),
                format_metric(m.recall),
                format_metric(m.f1),
                format_metric(m.accuracy)
            )
            .unwrap();
            if has_marks && !r.marks.is_empty() {
                write!(out, "  {}", r.marks.join(",")).unwrap();
            }
            out.push('\n');
        }
        out
    }

    /// Tab-separated values with a header line; metrics with four decimals.
    pub fn to_tsv(&self) -> String {
        let mut out = format!("{}\tP\tR\tF1\tAcc\tbest\n", self.key_header);
        for r in &self.rows {
            let m = r.metrics;
            writeln!(
                out,
                "{}\t{:.4}\t{:.4}\t{:.4}\t{:.4}\t{}",
                r.name,
                m.precision,
                m.recall,
                m.f1,
                m.accuracy,
                r.marks.join(",")
            )
            .unwrap();
        }
        out
    }
}
