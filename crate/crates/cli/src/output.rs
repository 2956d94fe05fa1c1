//! CSV output: fixed formatting (12 significant digits, `.` separator,
//! mandatory header), written to a file or stdout.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// Formats a value with 12 significant digits in scientific notation.
pub fn sig12(x: f64) -> String {
    format!("{:.11e}", x)
}

/// Writes `header` and `rows` as CSV to `path`, or to stdout when absent.
pub fn write_csv(path: Option<&Path>, header: &str, rows: &[String]) -> Result<()> {
    let mut body = String::with_capacity(rows.len() * 48 + header.len() + 1);
    body.push_str(header);
    body.push('\n');
    for row in rows {
        body.push_str(row);
        body.push('\n');
    }
    match path {
        Some(p) => std::fs::write(p, body)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(body.as_bytes())
                .map_err(|e| CliError::usage(format!("cannot write to stdout: {e}")))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn formatting_is_twelve_significant_digits() {
        assert_eq!(sig12(325521.6925816539), "3.25521692582e5");
        assert_eq!(sig12(0.98), "9.80000000000e-1");
        assert_eq!(sig12(0.0), "0.00000000000e0");
        assert_eq!(sig12(-1.5e-7), "-1.50000000000e-7");
    }
}
