//! Loader for the UIUC multi-aspect review-assignment topic files: one row
//! of 25 non-negative topic weights per paper or reviewer, separated by
//! whitespace or commas.

use std::fs;
use std::path::Path;

use log::warn;
use peerassign_core::datagen::TopicVectors;

use crate::error::{FormatError, Result};

pub const TOPICS: usize = 25;

/// Parses topic rows. Blank lines and lines starting with `#` are skipped.
pub fn parse_topic_rows(text: &str, path: &Path) -> Result<Vec<Vec<f64>>> {
    let mut rows = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|f| !f.is_empty())
            .collect();
        if fields.len() != TOPICS {
            return Err(FormatError::Dimension {
                path: path.to_path_buf(),
                line: k + 1,
                expected: TOPICS,
                found: fields.len(),
            });
        }
        let mut row = Vec::with_capacity(TOPICS);
        for f in fields {
            let v: f64 = f.parse().map_err(|_| FormatError::Parse {
                path: path.to_path_buf(),
                line: k + 1,
                message: format!("not a number: {f:?}"),
            })?;
            if !(v >= 0.0 && v.is_finite()) {
                return Err(FormatError::Parse {
                    path: path.to_path_buf(),
                    line: k + 1,
                    message: format!("topic weight {v} is not a finite non-negative number"),
                });
            }
            row.push(v);
        }
        rows.push(row);
    }
    if rows.is_empty() {
        warn!("{}: no topic rows", path.display());
    }
    Ok(rows)
}

fn read_rows(path: &Path) -> Result<Vec<Vec<f64>>> {
    let text = fs::read_to_string(path).map_err(|e| FormatError::io(path, e))?;
    parse_topic_rows(&text, path)
}

pub fn load_uiuc(papers: &Path, reviewers: &Path) -> Result<TopicVectors> {
    Ok(TopicVectors {
        paper_vecs: read_rows(papers)?,
        reviewer_vecs: read_rows(reviewers)?,
    })
}
