//! Instance acquisition: seeded random generators, a Matrix Market reader,
//! and a canonical line-oriented instance file format.

mod fileio;
mod gen;
mod matrix_market;

pub use fileio::{read_instance, read_instance_file, write_instance, write_instance_file, InstanceFileError};
pub use gen::{gen_random, gen_turner, gen_turner_with_layout};
pub use matrix_market::{parse_matrix_market, read_matrix_market_file, MatrixMarketError};

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::bandwidth::Graph;

/// Provenance of a reference upper bound.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UbTag {
    /// The generator guarantees an arrangement of this bandwidth.
    PlantedPhi,
    /// Produced by the level-ordering heuristic; an upper bound, not
    /// necessarily tight.
    Heuristic,
    /// Verified optimum from the brute-force oracle.
    Exact,
}

impl fmt::Display for UbTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            UbTag::PlantedPhi => "planted_phi",
            UbTag::Heuristic => "heuristic",
            UbTag::Exact => "exact",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for UbTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "planted_phi" => Ok(UbTag::PlantedPhi),
            "heuristic" => Ok(UbTag::Heuristic),
            "exact" => Ok(UbTag::Exact),
            other => Err(format!("unknown upper-bound tag {other:?}")),
        }
    }
}

/// A reference upper bound on the optimum, with its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReferenceUb {
    pub value: u32,
    pub tag: UbTag,
}

/// Where an instance came from.
#[derive(Clone, Debug, PartialEq)]
pub enum InstanceSource {
    Random { n: usize, d: f64, seed: u64 },
    Turner { n: usize, phi: u32, d: f64, seed: u64 },
    MatrixMarket { path: String },
}

impl fmt::Display for InstanceSource {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InstanceSource::Random { n, d, seed } => {
                write!(f, "random(n={n},d={d},seed={seed})")
            }
            InstanceSource::Turner { n, phi, d, seed } => {
                write!(f, "turner(n={n},phi={phi},d={d},seed={seed})")
            }
            InstanceSource::MatrixMarket { path } => write!(f, "matrix_market({path})"),
        }
    }
}

impl InstanceSource {
    fn parse(text: &str) -> Option<InstanceSource> {
        let (kind, rest) = text.split_once('(')?;
        let args = rest.strip_suffix(')')?;
        match kind {
            "matrix_market" => Some(InstanceSource::MatrixMarket {
                path: args.to_string(),
            }),
            "random" | "turner" => {
                let mut n = None;
                let mut d = None;
                let mut seed = None;
                let mut phi = None;
                for pair in args.split(',') {
                    let (key, value) = pair.split_once('=')?;
                    match key {
                        "n" => n = value.parse().ok(),
                        "d" => d = value.parse().ok(),
                        "seed" => seed = value.parse().ok(),
                        "phi" => phi = value.parse().ok(),
                        _ => return None,
                    }
                }
                if kind == "random" {
                    Some(InstanceSource::Random {
                        n: n?,
                        d: d?,
                        seed: seed?,
                    })
                } else {
                    Some(InstanceSource::Turner {
                        n: n?,
                        phi: phi?,
                        d: d?,
                        seed: seed?,
                    })
                }
            }
            _ => None,
        }
    }
}

/// A benchmark graph with provenance metadata and an optional reference
/// upper bound.
#[derive(Clone, Debug)]
pub struct InstanceRecord {
    pub graph: Graph,
    pub name: String,
    pub source: Option<InstanceSource>,
    pub reference_ub: Option<ReferenceUb>,
}

impl InstanceRecord {
    /// Test-set key used for grouping in reports: `random<n>`, `turner<n>`,
    /// `mm`, or `other`.
    pub fn testset(&self) -> String {
        match &self.source {
            Some(InstanceSource::Random { n, .. }) => format!("random{n}"),
            Some(InstanceSource::Turner { n, .. }) => format!("turner{n}"),
            Some(InstanceSource::MatrixMarket { .. }) => "mm".to_string(),
            None => "other".to_string(),
        }
    }
}
