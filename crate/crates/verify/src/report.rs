//! Report rows and their CSV / JSON serialisation.

use std::cmp::Ordering;
use std::io::Write;

use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Format {
    Csv,
    Json,
}

pub const COLUMNS: [&str; 9] = [
    "experiment",
    "p",
    "N",
    "n",
    "q",
    "measured",
    "normalizer",
    "ratio",
    "status",
];

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub experiment: String,
    pub p: Option<f64>,
    #[serde(rename = "N")]
    pub level: Option<u32>,
    pub n: Option<usize>,
    pub q: Option<usize>,
    pub measured: f64,
    pub normalizer: f64,
    pub ratio: f64,
    pub status: String,
}

impl ReportRow {
    pub fn new(experiment: impl Into<String>, measured: f64, normalizer: f64, status: impl Into<String>) -> Self {
        Self {
            experiment: experiment.into(),
            p: None,
            level: None,
            n: None,
            q: None,
            measured,
            normalizer,
            ratio: measured / normalizer,
            status: status.into(),
        }
    }

    pub fn p(mut self, p: f64) -> Self {
        self.p = Some(p);
        self
    }

    pub fn level(mut self, level: u32) -> Self {
        self.level = Some(level);
        self
    }

    pub fn n(mut self, n: usize) -> Self {
        self.n = Some(n);
        self
    }

    pub fn q(mut self, q: usize) -> Self {
        self.q = Some(q);
        self
    }

    pub fn ratio(mut self, ratio: f64) -> Self {
        self.ratio = ratio;
        self
    }

    pub fn is_failure(&self) -> bool {
        self.status.contains(":FAIL")
    }

    fn key_cmp(&self, other: &Self) -> Ordering {
        fn opt<T: PartialOrd>(a: &Option<T>, b: &Option<T>) -> Ordering {
            match (a, b) {
                (None, None) => Ordering::Equal,
                (None, Some(_)) => Ordering::Less,
                (Some(_), None) => Ordering::Greater,
                (Some(x), Some(y)) => x.partial_cmp(y).unwrap_or(Ordering::Equal),
            }
        }
        self.experiment
            .cmp(&other.experiment)
            .then_with(|| opt(&self.p, &other.p))
            .then_with(|| opt(&self.level, &other.level))
            .then_with(|| opt(&self.n, &other.n))
            .then_with(|| opt(&self.q, &other.q))
    }
}

/// Lexicographic in `(experiment, p, N, n, q)`; ties keep their input order.
pub fn sort_rows(rows: &mut [ReportRow]) {
    rows.sort_by(|a, b| a.key_cmp(b));
}

fn float(v: f64) -> String {
    format!("{v:.15e}")
}

fn field<T: ToString>(v: &Option<T>) -> String {
    v.as_ref().map(ToString::to_string).unwrap_or_default()
}

pub fn write_csv<W: Write>(rows: &[ReportRow], out: W) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(out);
    w.write_record(COLUMNS)?;
    for r in rows {
        w.write_record([
            r.experiment.clone(),
            field(&r.p),
            field(&r.level),
            field(&r.n),
            field(&r.q),
            float(r.measured),
            float(r.normalizer),
            float(r.ratio),
            r.status.clone(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_json<W: Write>(rows: &[ReportRow], mut out: W) -> std::io::Result<()> {
    serde_json::to_writer_pretty(&mut out, rows)?;
    out.write_all(b"\n")
}

/// Sorts and serialises the rows.
pub fn render(rows: &[ReportRow], format: Format) -> Vec<u8> {
    let mut rows = rows.to_vec();
    sort_rows(&mut rows);
    let mut buf = Vec::new();
    match format {
        Format::Csv => write_csv(&rows, &mut buf).expect("writing to memory"),
        Format::Json => write_json(&rows, &mut buf).expect("writing to memory"),
    }
    buf
}
