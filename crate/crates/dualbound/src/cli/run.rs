use std::fs;
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

use rayon::prelude::*;

use super::{beta_if_small, gap_percent, HarnessError, Method, RunConfig, RunResult};
use crate::bandwidth::{
    bandwidth_domain, ub_heuristic, Graph, GreedyEndpointSelector, LayeredEndpointSelector,
};
use crate::dual::{run_bfs, run_dfs, run_worst_bound, BoundCertificate, SearchBudget, SearchStatus};
use crate::instances::{
    read_instance_file, read_matrix_market_file, write_instance_file, InstanceRecord, ReferenceUb,
    UbTag,
};
use crate::oracle::{exact_bandwidth, EXACT_DEFAULT_CAP};
use crate::Bound;

/// Runs one strategy on one graph.
pub fn run_method(graph: &Graph, method: Method, budget: SearchBudget) -> BoundCertificate {
    match method {
        Method::StaticBounds => {
            let bound = Bound::from(graph.static_lower_bound());
            BoundCertificate {
                proved_bound: bound,
                status: SearchStatus::BudgetExhausted,
                expansions: 0,
                max_frontier: 1,
                trace: vec![(0, bound)],
                frontier_peaks: vec![(0, 1)],
                best_terminal: None,
            }
        }
        Method::WbhLr => {
            let model = bandwidth_domain(graph);
            let selector = LayeredEndpointSelector::new(graph);
            run_worst_bound(&model, &model, &selector, budget)
        }
        Method::WbhVs => {
            let model = bandwidth_domain(graph).with_memo();
            let selector = GreedyEndpointSelector::new(&model);
            run_worst_bound(&model, &model, &selector, budget)
        }
        Method::Dfs => {
            let model = bandwidth_domain(graph);
            let selector = LayeredEndpointSelector::new(graph);
            run_dfs(&model, &model, &selector, budget)
        }
        Method::Bfs => {
            let model = bandwidth_domain(graph);
            let selector = LayeredEndpointSelector::new(graph);
            run_bfs(&model, &model, &selector, budget)
        }
    }
}

/// Expands files and directories to a sorted list of instance paths.
fn collect_instance_paths(inputs: &[PathBuf]) -> Result<Vec<PathBuf>, HarnessError> {
    let mut paths = Vec::new();
    for input in inputs {
        if input.is_dir() {
            let mut found: Vec<PathBuf> = fs::read_dir(input)?
                .filter_map(|entry| entry.ok().map(|e| e.path()))
                .filter(|p| {
                    matches!(
                        p.extension().and_then(|e| e.to_str()),
                        Some("grf") | Some("mtx")
                    )
                })
                .collect();
            found.sort();
            paths.extend(found);
        } else {
            paths.push(input.clone());
        }
    }
    if paths.is_empty() {
        return Err(HarnessError::NoInstances);
    }
    Ok(paths)
}

fn load_instance(path: &Path) -> Result<InstanceRecord, HarnessError> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("mtx") => read_matrix_market_file(path).map_err(|source| {
            HarnessError::MatrixMarket {
                path: path.to_path_buf(),
                source,
            }
        }),
        Some("grf") => read_instance_file(path).map_err(|source| HarnessError::InstanceFile {
            path: path.to_path_buf(),
            source,
        }),
        _ => Err(HarnessError::UnsupportedExtension {
            path: path.to_path_buf(),
        }),
    }
}

/// Fills a missing reference upper bound: the brute-force optimum for small
/// graphs, the level-ordering heuristic otherwise.
fn ensure_reference_ub(record: &mut InstanceRecord) {
    if record.reference_ub.is_some() {
        return;
    }
    let graph = &record.graph;
    record.reference_ub = Some(if graph.vertex_count() <= EXACT_DEFAULT_CAP {
        ReferenceUb {
            value: exact_bandwidth(graph).expect("within cap"),
            tag: UbTag::Exact,
        }
    } else {
        ReferenceUb {
            value: ub_heuristic(graph).1,
            tag: UbTag::Heuristic,
        }
    });
}

fn result_for(record: &InstanceRecord, method: Method, budget: SearchBudget) -> RunResult {
    let graph = &record.graph;
    let certificate = run_method(graph, method, budget);
    let gap = record
        .reference_ub
        .map(|ub| gap_percent(ub.value, certificate.proved_bound));
    RunResult {
        instance: record.name.clone(),
        testset: record.testset(),
        n: graph.vertex_count(),
        m: graph.edge_count(),
        method,
        certificate,
        alpha: graph.alpha_bound(),
        gamma: graph.gamma_bound(),
        beta: beta_if_small(graph),
        reference_ub: record.reference_ub,
        gap_percent: gap,
    }
}

/// Runs the configured method over every instance, appending one JSON line
/// per result to `<out>/runs.jsonl` and one row to `<out>/runs.csv`. Failures
/// to load an instance are reported on stderr and skipped; results come back
/// ordered by instance name.
pub fn cmd_bound(config: &RunConfig) -> Result<Vec<RunResult>, HarnessError> {
    let paths = collect_instance_paths(&config.instances)?;
    let mut records = Vec::new();
    for path in &paths {
        match load_instance(path) {
            Ok(mut record) => {
                ensure_reference_ub(&mut record);
                records.push(record);
            }
            Err(err) => eprintln!("skipping {}: {err}", path.display()),
        }
    }
    if records.is_empty() {
        return Err(HarnessError::NoInstances);
    }
    records.sort_by(|a, b| a.name.cmp(&b.name));

    let method = config.method;
    let budget = config.budget;
    let mut results: Vec<RunResult> = records
        .par_iter()
        .map(|record| result_for(record, method, budget))
        .collect();
    results.sort_by(|a, b| a.instance.cmp(&b.instance));

    fs::create_dir_all(&config.out_dir)?;
    let jsonl_path = config.out_dir.join("runs.jsonl");
    let mut jsonl = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&jsonl_path)?;
    for result in &results {
        serde_json::to_writer(&mut jsonl, result).map_err(std::io::Error::from)?;
        jsonl.write_all(b"\n")?;
    }

    let csv_path = config.out_dir.join("runs.csv");
    let fresh = !csv_path.exists();
    let mut csv = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(&csv_path)?;
    if fresh {
        writeln!(
            csv,
            "instance,testset,method,n,m,bound,status,expansions,max_frontier,alpha,gamma,beta,reference_ub,ub_tag,gap_percent"
        )?;
    }
    for r in &results {
        let beta = r.beta.map_or(String::new(), |b| b.to_string());
        let (ub, tag) = r
            .reference_ub
            .map_or((String::new(), String::new()), |u| {
                (u.value.to_string(), u.tag.to_string())
            });
        let gap = r
            .gap_percent
            .map_or(String::new(), |g| format!("{g:.3}"));
        let status = match r.certificate.status {
            SearchStatus::Optimal => "optimal",
            SearchStatus::BudgetExhausted => "budget_exhausted",
            SearchStatus::TargetReached => "target_reached",
            SearchStatus::Infeasible => "infeasible",
        };
        writeln!(
            csv,
            "{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            r.instance,
            r.testset,
            r.method,
            r.n,
            r.m,
            r.certificate.proved_bound,
            status,
            r.certificate.expansions,
            r.certificate.max_frontier,
            r.alpha,
            r.gamma,
            beta,
            ub,
            tag,
            gap
        )?;
    }

    Ok(results)
}

/// Computes the exact optimum of each (small) instance and writes it back
/// into the instance metadata with the `exact` tag. Canonical files are
/// rewritten in place; Matrix Market inputs get a canonical `.grf` sibling.
pub fn cmd_exact(inputs: &[PathBuf]) -> Result<Vec<(String, u32)>, HarnessError> {
    let paths = collect_instance_paths(inputs)?;
    let mut out = Vec::new();
    for path in &paths {
        let mut record = load_instance(path)?;
        let optimum = exact_bandwidth(&record.graph)?;
        record.reference_ub = Some(ReferenceUb {
            value: optimum,
            tag: UbTag::Exact,
        });
        let target = if path.extension().and_then(|e| e.to_str()) == Some("mtx") {
            path.with_extension("grf")
        } else {
            path.clone()
        };
        write_instance_file(&record, &target).map_err(|source| HarnessError::InstanceFile {
            path: target.clone(),
            source,
        })?;
        out.push((record.name.clone(), optimum));
    }
    Ok(out)
}

/// Reads run records back from `runs.jsonl` files.
pub fn load_results(paths: &[PathBuf]) -> Result<Vec<RunResult>, HarnessError> {
    let mut results = Vec::new();
    for path in paths {
        let reader = BufReader::new(fs::File::open(path)?);
        for (index, line) in reader.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let result: RunResult = serde_json::from_str(&line)
                .map_err(|source| HarnessError::ResultParse {
                    line: index + 1,
                    source,
                })?;
            results.push(result);
        }
    }
    Ok(results)
}
