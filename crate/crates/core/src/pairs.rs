//! Text form of sequence pairs: one `A B` pair per line, `#` comments.

use crate::error::{Error, Result};
use crate::quat::{parse_seq, QuatSeq};

/// The explicit pairs of lengths 28, 30, 32 and 34 from the literature.
pub const EXPLICIT_PAIRS: &str = include_str!("../data/paper_pairs.txt");

pub fn format_pair(a: &QuatSeq, b: &QuatSeq) -> String {
    format!("{a} {b}")
}

/// Parses pair lines, skipping blanks and `#` comments. Line numbers in
/// errors are 1-based.
pub fn parse_pairs(text: &str) -> Result<Vec<(QuatSeq, QuatSeq)>> {
    let mut pairs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |reason: String| Error::BadPairLine { line: idx + 1, reason };
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields.len() != 2 {
            return Err(bad(format!("expected 2 sequences, found {}", fields.len())));
        }
        let a = parse_seq(fields[0]).map_err(|e| bad(e.to_string()))?;
        let b = parse_seq(fields[1]).map_err(|e| bad(e.to_string()))?;
        pairs.push((a, b));
    }
    Ok(pairs)
}

pub fn explicit_pairs() -> Vec<(QuatSeq, QuatSeq)> {
    parse_pairs(EXPLICIT_PAIRS).expect("bundled pair file is well formed")
}
