//! λ sweep driver: one ground-state solve per λ, reductions and
//! concurrence/witness evaluation per arrangement, CSV output.

use std::io::Write;
use std::path::Path;

use anyhow::{Context, Result};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use trispin::{
    ground_state_with, reduced_density, witness_minimize, wootters_concurrence, SolveOptions,
    XxzParams,
};

use crate::config::{Quantity, SweepConfig};

/// One CSV row. Witness columns stay empty on concurrence rows.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRecord {
    pub lambda: f64,
    pub arrangement: String,
    pub kind: Quantity,
    pub value: f64,
    pub witness_r0: Option<f64>,
    pub witness_orientation: Option<i8>,
    pub ground_energy: f64,
    pub gap_flag: bool,
    pub sites: String,
}

/// Runs the sweep: λ points are dispatched to the rayon pool, one solver
/// instance per point, and results are flattened back in grid order so the
/// output is deterministic regardless of thread count.
pub fn run_sweep(cfg: &SweepConfig) -> Result<Vec<SweepRecord>> {
    let per_lambda: Vec<Result<Vec<SweepRecord>>> =
        cfg.lambdas.par_iter().map(|&lambda| records_at(cfg, lambda)).collect();
    let mut records = Vec::new();
    for chunk in per_lambda {
        records.extend(chunk?);
    }
    Ok(records)
}

fn records_at(cfg: &SweepConfig, lambda: f64) -> Result<Vec<SweepRecord>> {
    let params = XxzParams::new(cfg.n_sites, lambda)?;
    let opts = SolveOptions { seed: cfg.seed, ..Default::default() };
    let state = ground_state_with(&params, cfg.n_up, &opts)
        .with_context(|| format!("ground-state solve failed at lambda = {lambda}"))?;
    let mut records = Vec::new();
    for arrangement in &cfg.arrangements {
        for &kind in &cfg.quantities {
            let matches_arity = match kind {
                Quantity::Concurrence => arrangement.sites.len() == 2,
                Quantity::Witness => arrangement.sites.len() == 3,
            };
            if !matches_arity {
                continue;
            }
            let rho = reduced_density(&state, &arrangement.sites)
                .with_context(|| format!("reduction failed for sites {:?}", arrangement.sites))?;
            let (value, witness_r0, witness_orientation) = match kind {
                Quantity::Concurrence => (wootters_concurrence(&rho)?, None, None),
                Quantity::Witness => {
                    let cls = witness_minimize(&rho)?;
                    (
                        cls.witness_value,
                        Some(cls.witness_argmin.r0_param()),
                        Some(cls.witness_argmin.orientation().index()),
                    )
                }
            };
            records.push(SweepRecord {
                lambda,
                arrangement: arrangement.label.clone(),
                kind,
                value,
                witness_r0,
                witness_orientation,
                ground_energy: state.energy,
                gap_flag: state.diagnostics.degenerate,
                sites: arrangement.sites_label.clone(),
            });
        }
    }
    Ok(records)
}

pub fn write_csv(records: &[SweepRecord], out: &mut impl Write) -> Result<()> {
    let mut writer = csv::Writer::from_writer(out);
    for record in records {
        writer.serialize(record)?;
    }
    writer.flush()?;
    Ok(())
}

pub fn write_csv_file(records: &[SweepRecord], path: &Path) -> Result<()> {
    let mut file =
        std::fs::File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_csv(records, &mut file)
}

#[cfg(test)]
pub fn read_csv(reader: impl std::io::Read) -> Result<Vec<SweepRecord>> {
    let mut out = Vec::new();
    for row in csv::Reader::from_reader(reader).deserialize() {
        out.push(row?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::config;

    fn small_config() -> SweepConfig {
        let text = r#"
            n_sites = 8
            output = "out.csv"
            quantities = ["concurrence", "witness"]
            arrangements = [[1, 2], [1, 2, 3]]
            seed = 3
            lambda_grid = [0.5, -0.9]
        "#;
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("cfg.toml");
        std::fs::write(&path, text).unwrap();
        config::load(&path).unwrap()
    }

    #[test]
    fn records_are_sorted_and_complete() {
        let cfg = small_config();
        let records = run_sweep(&cfg).unwrap();
        // 2 lambdas x (1 pair concurrence + 1 triple witness)
        assert_eq!(records.len(), 4);
        assert_eq!(records[0].lambda, -0.9);
        assert_eq!(records[0].arrangement, "12");
        assert!(matches!(records[0].kind, Quantity::Concurrence));
        assert!(records[0].witness_r0.is_none());
        assert_eq!(records[1].arrangement, "123");
        assert!(records[1].witness_r0.is_some());
        assert_eq!(records[2].lambda, 0.5);
    }

    #[test]
    fn csv_round_trips_losslessly() {
        let cfg = small_config();
        let records = run_sweep(&cfg).unwrap();
        let mut buf = Vec::new();
        write_csv(&records, &mut buf).unwrap();
        let back = read_csv(buf.as_slice()).unwrap();
        assert_eq!(records, back);
    }

    #[test]
    fn rerun_is_bit_identical() {
        let cfg = small_config();
        let mut a = Vec::new();
        write_csv(&run_sweep(&cfg).unwrap(), &mut a).unwrap();
        let mut b = Vec::new();
        write_csv(&run_sweep(&cfg).unwrap(), &mut b).unwrap();
        assert_eq!(a, b);
    }
}
