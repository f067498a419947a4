use std::fs;
use std::path::{Path, PathBuf};

use super::HarnessError;
use crate::instances::{gen_random, gen_turner, write_instance_file};

/// A parameter grid of instances to generate.
#[derive(Clone, Debug)]
pub enum GenSpec {
    Random {
        n: usize,
        densities: Vec<f64>,
        seeds: u64,
        seed_base: u64,
    },
    Turner {
        n: usize,
        phis: Vec<u32>,
        densities: Vec<f64>,
        seeds: u64,
        seed_base: u64,
    },
}

/// Writes one canonical instance file per grid cell and seed into `out`,
/// returning the paths. File names follow the instance names, so reruns with
/// the same grid overwrite the same files.
pub fn cmd_gen(spec: &GenSpec, out: &Path) -> Result<Vec<PathBuf>, HarnessError> {
    let records: Vec<_> = match spec {
        GenSpec::Random {
            n,
            densities,
            seeds,
            seed_base,
        } => {
            if densities.is_empty() || *seeds == 0 {
                return Err(HarnessError::EmptyGrid);
            }
            densities
                .iter()
                .flat_map(|&d| {
                    (0..*seeds).map(move |s| (d, seed_base + s))
                })
                .map(|(d, seed)| gen_random(*n, d, seed))
                .collect()
        }
        GenSpec::Turner {
            n,
            phis,
            densities,
            seeds,
            seed_base,
        } => {
            if phis.is_empty() || densities.is_empty() || *seeds == 0 {
                return Err(HarnessError::EmptyGrid);
            }
            phis.iter()
                .flat_map(|&phi| {
                    densities.iter().flat_map(move |&d| {
                        (0..*seeds).map(move |s| (phi, d, seed_base + s))
                    })
                })
                .map(|(phi, d, seed)| gen_turner(*n, phi, d, seed))
                .collect()
        }
    };

    fs::create_dir_all(out)?;
    let mut paths = Vec::with_capacity(records.len());
    for record in &records {
        let path = out.join(format!("{}.grf", record.name));
        write_instance_file(record, &path).map_err(|source| HarnessError::InstanceFile {
            path: path.clone(),
            source,
        })?;
        paths.push(path);
    }
    Ok(paths)
}
