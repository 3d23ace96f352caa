//! CSV emission: fixed column order, LF line endings, 12 significant digits.

use crate::error::{CliError, CliResult};
use std::path::Path;

/// Scientific notation with 12 significant digits.
pub fn num(v: f64) -> String {
    format!("{v:.11e}")
}

/// Writes `header` and `rows` to `dir/file`.
pub fn write_csv(dir: &Path, file: &str, header: &[&str], rows: &[Vec<String>]) -> CliResult<()> {
    let path = dir.join(file);
    let wrap = |source| CliError::Csv { path: path.clone(), source };
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_path(&path)
        .map_err(wrap)?;
    w.write_record(header).map_err(wrap)?;
    for row in rows {
        debug_assert_eq!(row.len(), header.len());
        w.write_record(row).map_err(wrap)?;
    }
    w.flush().map_err(|e| CliError::io(&path, e))
}
