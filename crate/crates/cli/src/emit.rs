//! Deterministic CSV and JSON emission of scenario results.
//!
//! Floats are written with 17 significant digits and `\n` line endings so
//! identical runs produce byte-identical files.

use std::io::Write;
use std::path::Path;

use crate::scenario::{PathRow, Summary};
use crate::CliError;

fn fmt(x: f64) -> String {
    format!("{x:.16e}")
}

pub const CSV_HEADER: &str = "step,lambda,load_normalized,w_probe,w_normalized,iterations";

pub fn path_csv_string(rows: &[PathRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        out.push_str(&format!(
            "{},{},{},{},{},{}\n",
            r.step,
            fmt(r.lambda),
            fmt(r.load_normalized),
            fmt(r.w_probe),
            fmt(r.w_normalized),
            r.iterations
        ));
    }
    out
}

pub fn write_path_csv(path: &Path, rows: &[PathRow]) -> Result<(), CliError> {
    write_text(path, &path_csv_string(rows))
}

pub fn summary_json_string(summary: &Summary) -> String {
    let mut text = serde_json::to_string_pretty(summary).expect("summary serializes");
    text.push('\n');
    text
}

pub fn write_summary_json(path: &Path, summary: &Summary) -> Result<(), CliError> {
    write_text(path, &summary_json_string(summary))
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    let mut file = std::fs::File::create(path).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })?;
    file.write_all(text.as_bytes()).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        source: e,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_only_for_empty_path() {
        let text = path_csv_string(&[]);
        assert_eq!(text, format!("{CSV_HEADER}\n"));
    }

    #[test]
    fn rows_are_fixed_width_scientific() {
        let rows = vec![PathRow {
            step: 0,
            lambda: 0.5,
            load_normalized: 0.5,
            w_probe: -1.25e-4,
            w_normalized: -6.25e-4,
            iterations: 3,
        }];
        let text = path_csv_string(&rows);
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), CSV_HEADER);
        let row = lines.next().unwrap();
        assert_eq!(row, "0,5.0000000000000000e-1,5.0000000000000000e-1,-1.2500000000000000e-4,-6.2500000000000001e-4,3");
        assert!(lines.next().is_none());
    }
}
