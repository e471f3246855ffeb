// Copyright 2026 The cpb Authors
// SPDX-License-Identifier: Apache-2.0

//! Number formatting and CSV emission.

use std::io::Write;
use std::path::Path;

use crate::error::{CliError, Result};

/// Twelve significant digits in the shortest decimal that reads back to the
/// rounded value. Zero (of either sign) prints as `0`; magnitudes outside
/// `[1e-5, 1e16)` use exponent notation.
pub fn fmt_num(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    let a = rounded.abs();
    if (1e-5..1e16).contains(&a) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

/// Empty field for an absent value.
pub fn fmt_opt(x: Option<f64>) -> String {
    x.map(fmt_num).unwrap_or_default()
}

/// CSV text (LF line endings) for a header and rows. `preamble` lines are
/// written verbatim before the header, each prefixed with `# `.
pub fn csv_text(preamble: &[&str], header: &[&str], rows: &[Vec<String>]) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    for line in preamble {
        writeln!(buf, "# {line}")?;
    }
    let mut w = csv::WriterBuilder::new()
        .terminator(csv::Terminator::Any(b'\n'))
        .from_writer(buf);
    w.write_record(header)?;
    for row in rows {
        w.write_record(row)?;
    }
    w.into_inner().map_err(|e| CliError::Output(e.into_error()))
}

/// Writes `bytes` to `path`, or to standard output when `path` is `None`.
pub fn emit(path: Option<&Path>, bytes: &[u8]) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, bytes).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(bytes)?;
            out.flush()?;
            Ok(())
        }
    }
}
