//! CSV and JSON serialization of experiment results.
//!
//! CSV files start with one header line; real numbers are written with 17
//! significant digits so every value round-trips exactly.

use std::fs;
use std::io;
use std::path::Path;

use serde::Serialize;

use super::experiments::{CalibrationRow, ComparisonRow, CurveRow, MaxStatRow, Table1Row};
use crate::shrinkage::CurveModel;

/// A value that renders as one CSV row.
pub trait CsvRecord {
    const HEADER: &'static [&'static str];
    fn fields(&self) -> Vec<String>;
}

/// 17 significant digits in scientific notation; `NaN` for missing values.
pub fn fmt_real(x: f64) -> String {
    if x.is_nan() {
        "NaN".to_string()
    } else {
        format!("{x:.16e}")
    }
}

fn model_name(m: CurveModel) -> String {
    match m {
        CurveModel::Uniform => "uniform".into(),
        CurveModel::Gaussian => "gaussian".into(),
    }
}

pub fn to_csv<T: CsvRecord>(rows: &[T]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(T::HEADER).expect("in-memory write");
    for row in rows {
        w.write_record(row.fields()).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn write_csv<T: CsvRecord>(path: &Path, rows: &[T]) -> io::Result<()> {
    fs::write(path, to_csv(rows))
}

pub fn to_json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable report");
    s.push('\n');
    s
}

pub fn write_json<T: Serialize + ?Sized>(path: &Path, value: &T) -> io::Result<()> {
    fs::write(path, to_json(value))
}

impl CsvRecord for CurveRow {
    const HEADER: &'static [&'static str] = &[
        "model",
        "n",
        "step",
        "trials",
        "excluded",
        "mean_ratio",
        "std_ratio",
        "theory",
        "theory_unshifted",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            model_name(self.model),
            self.n.to_string(),
            self.step.to_string(),
            self.trials.to_string(),
            self.excluded.to_string(),
            fmt_real(self.mean),
            fmt_real(self.std),
            fmt_real(self.theory),
            fmt_real(self.theory_unshifted),
        ]
    }
}

impl CsvRecord for MaxStatRow {
    const HEADER: &'static [&'static str] = &[
        "n",
        "trials",
        "mean_max_abs",
        "std_max_abs",
        "mean_max",
        "std_max",
        "estimator",
        "refined_estimator",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.trials.to_string(),
            fmt_real(self.mean_max_abs),
            fmt_real(self.std_max_abs),
            fmt_real(self.mean_max),
            fmt_real(self.std_max),
            fmt_real(self.estimator),
            fmt_real(self.refined),
        ]
    }
}

impl CsvRecord for CalibrationRow {
    const HEADER: &'static [&'static str] = &["p", "n", "trials", "excluded", "accuracy"];
    fn fields(&self) -> Vec<String> {
        vec![
            self.depth.to_string(),
            self.n.to_string(),
            self.trials.to_string(),
            self.excluded.to_string(),
            fmt_real(self.accuracy),
        ]
    }
}

impl CsvRecord for ComparisonRow {
    const HEADER: &'static [&'static str] = &[
        "method",
        "n",
        "trials",
        "excluded",
        "accuracy",
        "auc",
        "auc_score",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.method.to_string(),
            self.n.to_string(),
            self.trials.to_string(),
            self.excluded.to_string(),
            fmt_real(self.accuracy),
            fmt_real(self.auc),
            fmt_real(self.auc_score),
        ]
    }
}

impl CsvRecord for Table1Row {
    const HEADER: &'static [&'static str] = &[
        "n",
        "k",
        "tail_depth",
        "u_harmonic",
        "v_alternating",
        "abs_diff",
        "mc_mean",
        "mc_std_err",
    ];
    fn fields(&self) -> Vec<String> {
        vec![
            self.n.to_string(),
            self.k.to_string(),
            self.depth.to_string(),
            fmt_real(self.harmonic),
            fmt_real(self.alternating),
            fmt_real(self.abs_diff),
            fmt_real(self.mc_mean),
            fmt_real(self.mc_std_err),
        ]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn seventeen_digits_round_trip() {
        for &x in &[97.0 / 99.0, 1e-300, -2.5, 0.1, 123_456_789.123_456_78] {
            let s = fmt_real(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            let mantissa = s.split('e').next().unwrap().replace(['-', '.'], "");
            assert_eq!(mantissa.len(), 17, "{s}");
        }
        assert_eq!(fmt_real(f64::NAN), "NaN");
    }

    #[test]
    fn csv_has_single_header() {
        let rows = vec![CalibrationRow {
            depth: 1,
            n: 100,
            trials: 10,
            excluded: 0,
            accuracy: 0.5,
        }];
        let text = to_csv(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), "p,n,trials,excluded,accuracy");
        assert_eq!(lines.next().unwrap(), "1,100,10,0,5.0000000000000000e-1");
        assert!(lines.next().is_none());
    }
}
