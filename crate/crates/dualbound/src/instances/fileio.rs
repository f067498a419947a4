use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use super::{InstanceRecord, InstanceSource, ReferenceUb, UbTag};
use crate::bandwidth::Graph;

#[derive(Debug, Error)]
pub enum InstanceFileError {
    #[error("missing header line")]
    MissingHeader,
    #[error("unsupported version or malformed header: {0}")]
    BadHeader(String),
    #[error("malformed metadata line: {0}")]
    BadMetadata(String),
    #[error("malformed edge line {line}: {text}")]
    BadEdge { line: usize, text: String },
    #[error("edge ({u}, {v}) violates the format (0-based, u < v, within n = {n})")]
    EdgeInvariant { u: u64, v: u64, n: usize },
    #[error("edges must be sorted lexicographically without duplicates")]
    EdgeOrder,
    #[error("expected {expected} edges, found {found}")]
    WrongEdgeCount { expected: usize, found: usize },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// Serializes a record in the canonical instance format:
///
/// ```text
/// bandwidth-instance v1 n=<n> m=<m>
/// # name=<name>
/// # source=<source>          (optional)
/// # seed=<seed>              (optional, echoes the generator seed)
/// # reference_ub=<value>     (optional)
/// # ub_tag=<tag>             (optional, with reference_ub)
/// <u> <v>                    (m lines, 0-based, u < v, sorted)
/// ```
///
/// The writer is canonical: fixed key order and formatting, so write/read
/// round trips are byte-exact.
pub fn write_instance(record: &InstanceRecord) -> String {
    let g = &record.graph;
    let mut out = String::new();
    writeln!(
        out,
        "bandwidth-instance v1 n={} m={}",
        g.vertex_count(),
        g.edge_count()
    )
    .expect("string write");
    writeln!(out, "# name={}", record.name).expect("string write");
    if let Some(source) = &record.source {
        writeln!(out, "# source={source}").expect("string write");
        let seed = match source {
            InstanceSource::Random { seed, .. } | InstanceSource::Turner { seed, .. } => Some(seed),
            InstanceSource::MatrixMarket { .. } => None,
        };
        if let Some(seed) = seed {
            writeln!(out, "# seed={seed}").expect("string write");
        }
    }
    if let Some(ub) = &record.reference_ub {
        writeln!(out, "# reference_ub={}", ub.value).expect("string write");
        writeln!(out, "# ub_tag={}", ub.tag).expect("string write");
    }
    for &(u, v) in g.edges() {
        writeln!(out, "{u} {v}").expect("string write");
    }
    out
}

/// Parses the canonical instance format, enforcing its invariants: version
/// `v1`, 0-based endpoints with `u < v` inside the declared vertex count,
/// sorted unique edges, and an edge count matching the header.
pub fn read_instance(text: &str) -> Result<InstanceRecord, InstanceFileError> {
    let mut lines = text.lines().enumerate();
    let (_, header) = lines.next().ok_or(InstanceFileError::MissingHeader)?;
    let mut parts = header.split_whitespace();
    if parts.next() != Some("bandwidth-instance") || parts.next() != Some("v1") {
        return Err(InstanceFileError::BadHeader(header.to_string()));
    }
    let n: usize = parts
        .next()
        .and_then(|s| s.strip_prefix("n="))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| InstanceFileError::BadHeader(header.to_string()))?;
    let m: usize = parts
        .next()
        .and_then(|s| s.strip_prefix("m="))
        .and_then(|s| s.parse().ok())
        .ok_or_else(|| InstanceFileError::BadHeader(header.to_string()))?;

    let mut name = String::from("unnamed");
    let mut source = None;
    let mut reference_value: Option<u32> = None;
    let mut reference_tag: Option<UbTag> = None;
    let mut edges: Vec<(u32, u32)> = Vec::with_capacity(m);

    for (index, raw) in lines {
        let line = raw.trim_end();
        if line.is_empty() {
            continue;
        }
        if let Some(meta) = line.strip_prefix('#') {
            let meta = meta.trim();
            let (key, value) = meta
                .split_once('=')
                .ok_or_else(|| InstanceFileError::BadMetadata(line.to_string()))?;
            match key {
                "name" => name = value.to_string(),
                "source" => {
                    source = Some(InstanceSource::parse(value).ok_or_else(|| {
                        InstanceFileError::BadMetadata(line.to_string())
                    })?);
                }
                "seed" => {
                    // redundant with the source; validated as numeric
                    value
                        .parse::<u64>()
                        .map_err(|_| InstanceFileError::BadMetadata(line.to_string()))?;
                }
                "reference_ub" => {
                    reference_value = Some(value.parse().map_err(|_| {
                        InstanceFileError::BadMetadata(line.to_string())
                    })?);
                }
                "ub_tag" => {
                    reference_tag = Some(value.parse().map_err(|_| {
                        InstanceFileError::BadMetadata(line.to_string())
                    })?);
                }
                _ => {} // unknown keys are ignored for forward compatibility
            }
            continue;
        }
        let mut fields = line.split_whitespace();
        let parse = |s: Option<&str>| -> Option<u64> { s.and_then(|x| x.parse().ok()) };
        let (u, v) = match (parse(fields.next()), parse(fields.next()), fields.next()) {
            (Some(u), Some(v), None) => (u, v),
            _ => {
                return Err(InstanceFileError::BadEdge {
                    line: index + 1,
                    text: line.to_string(),
                })
            }
        };
        if u >= v || v >= n as u64 {
            return Err(InstanceFileError::EdgeInvariant { u, v, n });
        }
        let edge = (u as u32, v as u32);
        if let Some(&last) = edges.last() {
            if last >= edge {
                return Err(InstanceFileError::EdgeOrder);
            }
        }
        edges.push(edge);
    }

    if edges.len() != m {
        return Err(InstanceFileError::WrongEdgeCount {
            expected: m,
            found: edges.len(),
        });
    }
    let graph = Graph::from_edges(n, edges).expect("edges validated");
    let reference_ub = match (reference_value, reference_tag) {
        (Some(value), Some(tag)) => Some(ReferenceUb { value, tag }),
        (Some(value), None) => Some(ReferenceUb {
            value,
            tag: UbTag::Heuristic,
        }),
        _ => None,
    };
    Ok(InstanceRecord {
        graph,
        name,
        source,
        reference_ub,
    })
}

pub fn write_instance_file(record: &InstanceRecord, path: &Path) -> Result<(), InstanceFileError> {
    std::fs::write(path, write_instance(record))?;
    Ok(())
}

pub fn read_instance_file(path: &Path) -> Result<InstanceRecord, InstanceFileError> {
    let text = std::fs::read_to_string(path)?;
    read_instance(&text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::gen_turner;

    #[test]
    fn round_trip_is_byte_exact() {
        let record = gen_turner(12, 3, 0.4, 7);
        let text = write_instance(&record);
        let back = read_instance(&text).unwrap();
        assert_eq!(write_instance(&back), text);
        assert_eq!(back.name, record.name);
        assert_eq!(back.source, record.source);
        assert_eq!(back.reference_ub, record.reference_ub);
        assert_eq!(back.graph.edges(), record.graph.edges());
    }

    #[test]
    fn hand_written_five_vertex_file() {
        let text = "bandwidth-instance v1 n=5 m=6\n0 1\n1 2\n1 3\n1 4\n2 4\n3 4\n";
        let record = read_instance(text).unwrap();
        assert_eq!(record.graph.vertex_count(), 5);
        assert_eq!(record.graph.edge_count(), 6);
        assert_eq!(record.name, "unnamed");
    }

    #[test]
    fn corrupted_index_is_rejected() {
        let text = "bandwidth-instance v1 n=3 m=1\n0 3\n";
        assert!(matches!(
            read_instance(text),
            Err(InstanceFileError::EdgeInvariant { .. })
        ));
    }

    #[test]
    fn unsorted_or_duplicate_edges_are_rejected() {
        let text = "bandwidth-instance v1 n=3 m=2\n1 2\n0 1\n";
        assert!(matches!(read_instance(text), Err(InstanceFileError::EdgeOrder)));
        let text = "bandwidth-instance v1 n=3 m=2\n0 1\n0 1\n";
        assert!(matches!(read_instance(text), Err(InstanceFileError::EdgeOrder)));
    }

    #[test]
    fn version_mismatch_is_rejected() {
        let text = "bandwidth-instance v2 n=3 m=0\n";
        assert!(matches!(read_instance(text), Err(InstanceFileError::BadHeader(_))));
    }

    #[test]
    fn edge_count_mismatch_is_rejected() {
        let text = "bandwidth-instance v1 n=3 m=2\n0 1\n";
        assert!(matches!(
            read_instance(text),
            Err(InstanceFileError::WrongEdgeCount { .. })
        ));
    }
}
