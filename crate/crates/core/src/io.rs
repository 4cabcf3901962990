//! Plain-text sequence files: one sequence per line, `#` starts a comment
//! line, trailing whitespace is ignored, blank lines are skipped.

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::seq::DnaSequence;

/// A parsed sequence and the 1-based line it came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Record {
    pub line: usize,
    pub sequence: DnaSequence,
}

pub fn parse_sequences(text: &str) -> Result<Vec<Record>> {
    let mut out = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim_end();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let sequence = trimmed.parse().map_err(|e: Error| Error::Parse {
            line,
            message: e.to_string(),
        })?;
        out.push(Record { line, sequence });
    }
    Ok(out)
}

pub fn read_sequences(path: &Path) -> Result<Vec<Record>> {
    let text = fs::read_to_string(path).map_err(|e| Error::Parse {
        line: 0,
        message: format!("cannot read {}: {e}", path.display()),
    })?;
    parse_sequences(&text)
}

pub fn format_sequences<'a>(seqs: impl IntoIterator<Item = &'a DnaSequence>) -> String {
    seqs.into_iter().map(|q| format!("{q}\n")).collect()
}
