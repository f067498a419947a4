use std::path::Path;

use thiserror::Error;

use super::{InstanceRecord, InstanceSource};
use crate::bandwidth::Graph;

#[derive(Debug, Error)]
pub enum MatrixMarketError {
    #[error("missing %%MatrixMarket banner")]
    MissingBanner,
    #[error("malformed banner: {0}")]
    MalformedBanner(String),
    #[error("only `matrix` objects in `coordinate` format are supported, got {0}")]
    UnsupportedFormat(String),
    #[error("missing size line")]
    MissingSize,
    #[error("malformed size line: {0}")]
    MalformedSize(String),
    #[error("adjacency requires a square matrix, got {rows} x {cols}")]
    NotSquare { rows: usize, cols: usize },
    #[error("malformed entry on line {line}: {text}")]
    MalformedEntry { line: usize, text: String },
    #[error("entry index out of range on line {line}: ({i}, {j}) in a {n} x {n} matrix")]
    IndexOutOfRange { line: usize, i: u64, j: u64, n: usize },
    #[error("expected {expected} entries, found {found}")]
    WrongEntryCount { expected: usize, found: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Reads a Matrix Market exchange file as an undirected simple graph:
/// vertices are the rows of a square coordinate-format matrix and every
/// off-diagonal stored entry contributes the edge `{i, j}` regardless of its
/// value. `general`, `symmetric`, `skew-symmetric` and `hermitian`
/// qualifiers, and all value fields including `pattern`, yield the same
/// graph; diagonal entries and duplicates are dropped.
pub fn parse_matrix_market(text: &str) -> Result<InstanceRecord, MatrixMarketError> {
    let mut lines = text.lines().enumerate();

    let (_, banner) = lines.next().ok_or(MatrixMarketError::MissingBanner)?;
    if !banner.starts_with("%%MatrixMarket") {
        return Err(MatrixMarketError::MissingBanner);
    }
    let fields: Vec<String> = banner
        .split_whitespace()
        .skip(1)
        .map(str::to_lowercase)
        .collect();
    if fields.len() < 3 {
        return Err(MatrixMarketError::MalformedBanner(banner.to_string()));
    }
    if fields[0] != "matrix" || fields[1] != "coordinate" {
        return Err(MatrixMarketError::UnsupportedFormat(format!(
            "{} {}",
            fields[0], fields[1]
        )));
    }
    let field = fields[2].as_str();
    if !matches!(field, "real" | "integer" | "complex" | "pattern") {
        return Err(MatrixMarketError::MalformedBanner(banner.to_string()));
    }
    if let Some(symmetry) = fields.get(3) {
        if !matches!(
            symmetry.as_str(),
            "general" | "symmetric" | "skew-symmetric" | "hermitian"
        ) {
            return Err(MatrixMarketError::MalformedBanner(banner.to_string()));
        }
    }

    // size line: first non-comment, non-blank line after the banner
    let mut size: Option<(usize, usize, usize)> = None;
    let mut entries: Vec<(u32, u32)> = Vec::new();
    let mut found = 0usize;
    for (index, raw) in lines {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        match size {
            None => {
                let mut parts = line.split_whitespace();
                let rows: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| MatrixMarketError::MalformedSize(line.to_string()))?;
                let cols: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| MatrixMarketError::MalformedSize(line.to_string()))?;
                let nnz: usize = parts
                    .next()
                    .and_then(|s| s.parse().ok())
                    .ok_or_else(|| MatrixMarketError::MalformedSize(line.to_string()))?;
                if parts.next().is_some() {
                    return Err(MatrixMarketError::MalformedSize(line.to_string()));
                }
                if rows != cols {
                    return Err(MatrixMarketError::NotSquare { rows, cols });
                }
                size = Some((rows, cols, nnz));
            }
            Some((n, _, _)) => {
                let mut parts = line.split_whitespace();
                let parse_index = |s: Option<&str>| -> Option<u64> { s.and_then(|x| x.parse().ok()) };
                let i = parse_index(parts.next()).ok_or_else(|| MatrixMarketError::MalformedEntry {
                    line: index + 1,
                    text: line.to_string(),
                })?;
                let j = parse_index(parts.next()).ok_or_else(|| MatrixMarketError::MalformedEntry {
                    line: index + 1,
                    text: line.to_string(),
                })?;
                // any trailing numeric values (real/integer/complex) are ignored
                if i == 0 || j == 0 || i > n as u64 || j > n as u64 {
                    return Err(MatrixMarketError::IndexOutOfRange {
                        line: index + 1,
                        i,
                        j,
                        n,
                    });
                }
                found += 1;
                if i != j {
                    entries.push((i as u32 - 1, j as u32 - 1));
                }
            }
        }
    }

    let (n, _, nnz) = size.ok_or(MatrixMarketError::MissingSize)?;
    if found != nnz {
        return Err(MatrixMarketError::WrongEntryCount {
            expected: nnz,
            found,
        });
    }
    let graph = Graph::from_edges(n, entries).expect("indices validated");
    Ok(InstanceRecord {
        graph,
        name: "mm".to_string(),
        source: None,
        reference_ub: None,
    })
}

/// Parses a Matrix Market file, naming the instance after the file stem and
/// recording the path as its source.
pub fn read_matrix_market_file(path: &Path) -> Result<InstanceRecord, MatrixMarketError> {
    let text = std::fs::read_to_string(path)?;
    let mut record = parse_matrix_market(&text)?;
    record.name = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "mm".to_string());
    record.source = Some(InstanceSource::MatrixMarket {
        path: path.to_string_lossy().into_owned(),
    });
    Ok(record)
}
