use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use super::{gap_percent, Method, RunResult, TABLE_CHECKPOINTS};
use crate::Bound;

/// Per-instance target bound for a profile: prove within `target_percent` of
/// the reference upper bound.
fn target_bound(reference_ub: u32, target_percent: f64) -> i64 {
    ((1.0 - target_percent / 100.0) * f64::from(reference_ub)).ceil() as i64
}

/// Builds performance-profile curves: for each method, the fraction of
/// instances whose proved bound reaches the per-instance target within a
/// given number of expansions. Emits CSV `method,expansions,fraction` step
/// points, plus a `bm` baseline row for the static bounds alone. Instances
/// without a reference upper bound are excluded with a warning.
pub fn cmd_profile(results: &[RunResult], target_percent: f64) -> String {
    let mut usable: Vec<&RunResult> = Vec::new();
    for result in results {
        if result.reference_ub.is_some() {
            usable.push(result);
        } else {
            eprintln!(
                "profile: skipping {} ({}): no reference upper bound",
                result.instance, result.method
            );
        }
    }

    let instances: BTreeSet<&str> = usable.iter().map(|r| r.instance.as_str()).collect();
    let denominator = instances.len();
    let mut csv = String::from("method,expansions,fraction\n");
    if denominator == 0 {
        return csv;
    }

    // static-bound baseline: which instances meet the target with no search
    let mut baseline_hits: BTreeSet<&str> = BTreeSet::new();
    for result in &usable {
        let ub = result.reference_ub.expect("filtered").value;
        let target = target_bound(ub, target_percent);
        if i64::from(result.static_bound()) >= target {
            baseline_hits.insert(result.instance.as_str());
        }
    }
    writeln!(
        csv,
        "bm,0,{:.6}",
        baseline_hits.len() as f64 / denominator as f64
    )
    .expect("string write");

    let methods: BTreeSet<Method> = usable.iter().map(|r| r.method).collect();
    for method in Method::ALL {
        if !methods.contains(&method) {
            continue;
        }
        // first-reach expansion count per instance
        let mut reached: Vec<usize> = Vec::new();
        for result in &usable {
            if result.method != method {
                continue;
            }
            let ub = result.reference_ub.expect("filtered").value;
            let target = target_bound(ub, target_percent);
            if let Some(first) = result.certificate.first_reach(target) {
                reached.push(first);
            }
        }
        reached.sort_unstable();

        let mut covered = 0usize;
        let mut index = 0usize;
        let mut points: Vec<(usize, f64)> = Vec::new();
        while index < reached.len() {
            let at = reached[index];
            while index < reached.len() && reached[index] == at {
                covered += 1;
                index += 1;
            }
            points.push((at, covered as f64 / denominator as f64));
        }
        if points.first().is_none_or(|&(at, _)| at != 0) {
            points.insert(0, (0, 0.0));
        }
        for (expansions, fraction) in points {
            writeln!(csv, "{method},{expansions},{fraction:.6}").expect("string write");
        }
    }
    csv
}

struct CellStats {
    values: Vec<Option<f64>>,
}

impl CellStats {
    fn mean_if_complete(&self) -> Option<f64> {
        if self.values.is_empty() || self.values.iter().any(Option::is_none) {
            return None;
        }
        let sum: f64 = self.values.iter().map(|v| v.expect("checked")).sum();
        Some(sum / self.values.len() as f64)
    }
}

/// Builds the gap and frontier tables as CSV strings.
///
/// Gap table: `testset,method,gap_at_100,gap_at_1000,gap_at_10000` with one
/// `bm` row per test set for the static bounds. Frontier table mirrors it
/// with `frontier_at_*` columns. Cells whose runs were cut before a
/// checkpoint stay empty rather than zero.
pub fn cmd_tables(results: &[RunResult]) -> (String, String) {
    let mut testsets: BTreeSet<&str> = BTreeSet::new();
    for result in results {
        testsets.insert(result.testset.as_str());
    }

    let mut gap_csv = String::from("testset,method,gap_at_100,gap_at_1000,gap_at_10000\n");
    let mut frontier_csv =
        String::from("testset,method,frontier_at_100,frontier_at_1000,frontier_at_10000\n");

    for testset in &testsets {
        let in_set: Vec<&RunResult> =
            results.iter().filter(|r| r.testset == *testset).collect();
        let methods: BTreeSet<Method> = in_set.iter().map(|r| r.method).collect();

        for method in Method::ALL {
            if !methods.contains(&method) {
                continue;
            }
            let rows: Vec<&&RunResult> =
                in_set.iter().filter(|r| r.method == method).collect();

            let mut gap_cells = Vec::new();
            let mut frontier_cells = Vec::new();
            for &checkpoint in &TABLE_CHECKPOINTS {
                let gaps = CellStats {
                    values: rows.iter().map(|r| r.gap_at(checkpoint)).collect(),
                };
                gap_cells.push(render(gaps.mean_if_complete(), 3));
                let frontiers = CellStats {
                    values: rows
                        .iter()
                        .map(|r| r.frontier_at(checkpoint).map(|f| f as f64))
                        .collect(),
                };
                frontier_cells.push(render(frontiers.mean_if_complete(), 1));
            }
            writeln!(
                gap_csv,
                "{testset},{method},{},{},{}",
                gap_cells[0], gap_cells[1], gap_cells[2]
            )
            .expect("string write");
            writeln!(
                frontier_csv,
                "{testset},{method},{},{},{}",
                frontier_cells[0], frontier_cells[1], frontier_cells[2]
            )
            .expect("string write");
        }

        // benchmark row: the strongest static bound, constant in the budget
        let mut bm_gaps: BTreeMap<&str, f64> = BTreeMap::new();
        for result in &in_set {
            if let Some(ub) = result.reference_ub {
                bm_gaps.insert(
                    result.instance.as_str(),
                    gap_percent(ub.value, Bound::from(result.static_bound())),
                );
            }
        }
        if !bm_gaps.is_empty() {
            let mean: f64 = bm_gaps.values().sum::<f64>() / bm_gaps.len() as f64;
            let cell = format!("{mean:.3}");
            writeln!(gap_csv, "{testset},bm,{cell},{cell},{cell}").expect("string write");
        }
    }
    (gap_csv, frontier_csv)
}

fn render(value: Option<f64>, decimals: usize) -> String {
    match value {
        Some(v) => format!("{v:.decimals$}"),
        None => String::new(),
    }
}
