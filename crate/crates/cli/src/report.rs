//! Moment reports as CSV (with a header row) or JSONL.

use eisenstein_cubic::moments::MomentReport;
use serde::Serialize;

use crate::config::OutputFormat;
use crate::error::Result;

/// Column order of the CSV header.
pub const REPORT_FIELDS: [&str; 11] = [
    "x",
    "family_size",
    "first_moment_re",
    "first_moment_im",
    "second_moment",
    "nonvanishing_count",
    "nonvanishing_fraction",
    "predicted_main",
    "ratio",
    "tolerance_budget",
    "second_moment_budget",
];

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ReportRow {
    pub x: u64,
    pub family_size: usize,
    pub first_moment_re: f64,
    pub first_moment_im: f64,
    pub second_moment: f64,
    pub nonvanishing_count: usize,
    pub nonvanishing_fraction: f64,
    pub predicted_main: f64,
    pub ratio: f64,
    pub tolerance_budget: f64,
    pub second_moment_budget: f64,
}

impl From<&MomentReport> for ReportRow {
    fn from(r: &MomentReport) -> Self {
        ReportRow {
            x: r.x,
            family_size: r.family_size,
            first_moment_re: r.first_moment.re,
            first_moment_im: r.first_moment.im,
            second_moment: r.second_moment,
            nonvanishing_count: r.nonvanishing_count,
            nonvanishing_fraction: if r.family_size == 0 { 0.0 } else { r.nonvanishing_count as f64 / r.family_size as f64 },
            predicted_main: r.predicted_main,
            ratio: r.ratio,
            tolerance_budget: r.tolerance_budget,
            second_moment_budget: r.second_moment_budget,
        }
    }
}

impl ReportRow {
    fn csv(&self) -> String {
        // f64 Display is the shortest representation that round-trips.
        format!(
            "{},{},{},{},{},{},{},{},{},{},{}",
            self.x,
            self.family_size,
            self.first_moment_re,
            self.first_moment_im,
            self.second_moment,
            self.nonvanishing_count,
            self.nonvanishing_fraction,
            self.predicted_main,
            self.ratio,
            self.tolerance_budget,
            self.second_moment_budget
        )
    }
}

pub fn render_reports(reports: &[MomentReport], format: OutputFormat) -> Result<String> {
    let mut out = String::new();
    match format {
        OutputFormat::Csv => {
            out.push_str(&REPORT_FIELDS.join(","));
            out.push('\n');
            for r in reports {
                out.push_str(&ReportRow::from(r).csv());
                out.push('\n');
            }
        }
        OutputFormat::Jsonl => {
            for r in reports {
                out.push_str(&serde_json::to_string(&ReportRow::from(r))?);
                out.push('\n');
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use eisenstein_cubic::Complex64;

    fn report() -> MomentReport {
        MomentReport {
            x: 1000,
            family_size: 136,
            first_moment: Complex64::new(12.5, 0.0),
            second_moment: 300.25,
            nonvanishing_count: 136,
            predicted_main: 28.0,
            ratio: 12.5 / 28.0,
            tolerance_budget: 1e-6,
            second_moment_budget: 2e-6,
        }
    }

    #[test]
    fn csv_header_matches_row_width() {
        let text = render_reports(&[report()], OutputFormat::Csv).unwrap();
        let lines: Vec<_> = text.lines().collect();
        assert_eq!(lines[0].split(',').count(), lines[1].split(',').count());
        assert!(lines[0].starts_with("x,family_size,first_moment_re"));
        assert!(lines[1].starts_with("1000,136,12.5,0,300.25,136,1,28,"));
    }

    #[test]
    fn jsonl_keys_match_header() {
        let text = render_reports(&[report()], OutputFormat::Jsonl).unwrap();
        let v: serde_json::Map<String, serde_json::Value> = serde_json::from_str(text.trim()).unwrap();
        let keys: Vec<_> = v.keys().cloned().collect();
        let mut fields: Vec<_> = REPORT_FIELDS.iter().map(|s| s.to_string()).collect();
        fields.sort();
        let mut keys_sorted = keys;
        keys_sorted.sort();
        assert_eq!(keys_sorted, fields);
    }
}
