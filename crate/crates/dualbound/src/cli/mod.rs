//! Experiment harness behind the `dualbound` binary: generate instance
//! grids, run bound provers under budgets, and distill the run records into
//! gap tables, frontier tables and performance-profile curves.

mod generate;
mod report;
mod run;

pub use generate::{cmd_gen, GenSpec};
pub use report::{cmd_profile, cmd_tables};
pub use run::{cmd_bound, cmd_exact, load_results, run_method};

use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bandwidth::BETA_DEFAULT_CAP;
use crate::dual::{BoundCertificate, SearchBudget, SearchStatus};
use crate::instances::{InstanceFileError, MatrixMarketError, ReferenceUb};
use crate::oracle::OracleError;
use crate::Bound;

/// Bound-proving strategies exposed by the harness.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    /// Worst-bound search, greedy endpoint selection.
    #[serde(rename = "wbh-vs")]
    WbhVs,
    /// Worst-bound search, fixed alternating (layered) endpoint order.
    #[serde(rename = "wbh-lr")]
    WbhLr,
    /// Depth-first baseline, layered order.
    #[serde(rename = "dfs")]
    Dfs,
    /// Breadth-first baseline, layered order.
    #[serde(rename = "bfs")]
    Bfs,
    /// No search: report the static lower bound.
    #[serde(rename = "static-bounds")]
    StaticBounds,
}

impl Method {
    pub const ALL: [Method; 5] = [
        Method::Bfs,
        Method::Dfs,
        Method::WbhLr,
        Method::WbhVs,
        Method::StaticBounds,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Method::WbhVs => "wbh-vs",
            Method::WbhLr => "wbh-lr",
            Method::Dfs => "dfs",
            Method::Bfs => "bfs",
            Method::StaticBounds => "static-bounds",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "wbh-vs" => Ok(Method::WbhVs),
            "wbh-lr" => Ok(Method::WbhLr),
            "dfs" => Ok(Method::Dfs),
            "bfs" => Ok(Method::Bfs),
            "static-bounds" => Ok(Method::StaticBounds),
            other => Err(format!(
                "unknown method {other:?} (expected wbh-vs, wbh-lr, dfs, bfs or static-bounds)"
            )),
        }
    }
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("empty generation grid: nothing to write")]
    EmptyGrid,
    #[error("no instances found under the given paths")]
    NoInstances,
    #[error("{path}: unsupported instance extension (expected .grf or .mtx)")]
    UnsupportedExtension { path: PathBuf },
    #[error("{path}: {source}")]
    InstanceFile {
        path: PathBuf,
        source: InstanceFileError,
    },
    #[error("{path}: {source}")]
    MatrixMarket {
        path: PathBuf,
        source: MatrixMarketError,
    },
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("result record {line} is malformed: {source}")]
    ResultParse {
        line: usize,
        source: serde_json::Error,
    },
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
}

/// One bound-proving run over a set of instances.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub method: Method,
    pub budget: SearchBudget,
    /// Instance files, or directories scanned for `.grf` and `.mtx` files.
    pub instances: Vec<PathBuf>,
    pub out_dir: PathBuf,
    pub seed: u64,
}

/// Outcome of one (instance, method) run, as stored in `runs.jsonl`.
#[derive(Clone, Debug)]
pub struct RunResult {
    pub instance: String,
    pub testset: String,
    pub n: usize,
    pub m: usize,
    pub method: Method,
    pub certificate: BoundCertificate,
    pub alpha: u32,
    pub gamma: u32,
    pub beta: Option<u32>,
    pub reference_ub: Option<ReferenceUb>,
    pub gap_percent: Option<f64>,
}

#[derive(Serialize, Deserialize)]
struct RunResultWire {
    instance: String,
    testset: String,
    n: usize,
    m: usize,
    method: Method,
    certificate: BoundCertificate,
    frontier_peaks: Vec<(usize, usize)>,
    best_terminal: Option<i64>,
    alpha: u32,
    gamma: u32,
    beta: Option<u32>,
    reference_ub: Option<ReferenceUb>,
    gap_percent: Option<f64>,
}

impl Serialize for RunResult {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        RunResultWire {
            instance: self.instance.clone(),
            testset: self.testset.clone(),
            n: self.n,
            m: self.m,
            method: self.method,
            certificate: self.certificate.clone(),
            frontier_peaks: self.certificate.frontier_peaks.clone(),
            best_terminal: self.certificate.best_terminal,
            alpha: self.alpha,
            gamma: self.gamma,
            beta: self.beta,
            reference_ub: self.reference_ub,
            gap_percent: self.gap_percent,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RunResult {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let wire = RunResultWire::deserialize(deserializer)?;
        let mut certificate = wire.certificate;
        certificate.frontier_peaks = wire.frontier_peaks;
        certificate.best_terminal = wire.best_terminal;
        Ok(RunResult {
            instance: wire.instance,
            testset: wire.testset,
            n: wire.n,
            m: wire.m,
            method: wire.method,
            certificate,
            alpha: wire.alpha,
            gamma: wire.gamma,
            beta: wire.beta,
            reference_ub: wire.reference_ub,
            gap_percent: wire.gap_percent,
        })
    }
}

impl RunResult {
    /// The strongest static bound, the benchmark row in gap tables.
    pub fn static_bound(&self) -> u32 {
        self.alpha.max(self.gamma)
    }

    /// The proved bound after `expansions` expansions, `None` when the run
    /// was cut by its budget before reaching that point.
    pub fn bound_at(&self, expansions: usize) -> Option<Bound> {
        if self.certificate.status == SearchStatus::BudgetExhausted
            && expansions > self.certificate.expansions
        {
            return None;
        }
        Some(self.certificate.bound_after(expansions))
    }

    /// Gap against the reference upper bound at a checkpoint, in percent,
    /// clamped at zero.
    pub fn gap_at(&self, expansions: usize) -> Option<f64> {
        let ub = self.reference_ub?;
        let bound = self.bound_at(expansions)?;
        Some(gap_percent(ub.value, bound))
    }

    /// Peak frontier size within the first `expansions` expansions, with the
    /// same availability rule as [`RunResult::bound_at`].
    pub fn frontier_at(&self, expansions: usize) -> Option<usize> {
        if self.certificate.status == SearchStatus::BudgetExhausted
            && expansions > self.certificate.expansions
        {
            return None;
        }
        Some(self.certificate.frontier_peak_after(expansions))
    }
}

/// `100 * (ub - bound) / ub`, clamped at zero (and zero for `ub = 0`).
pub fn gap_percent(reference_ub: u32, bound: Bound) -> f64 {
    let proved = match bound {
        Bound::Infinite => return 0.0,
        Bound::Finite(v) => v,
    };
    if reference_ub == 0 || proved >= i64::from(reference_ub) {
        return 0.0;
    }
    100.0 * (f64::from(reference_ub) - proved as f64) / f64::from(reference_ub)
}

/// Reference-bound checkpoints used by the gap and frontier tables.
pub const TABLE_CHECKPOINTS: [usize; 3] = [100, 1_000, 10_000];

pub(crate) fn beta_if_small(graph: &crate::bandwidth::Graph) -> Option<u32> {
    (graph.vertex_count() <= BETA_DEFAULT_CAP).then(|| {
        graph
            .beta_bound()
            .expect("cap checked before calling")
    })
}
