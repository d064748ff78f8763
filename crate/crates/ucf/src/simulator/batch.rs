//! Run specifications and batch campaigns over seeds.

use serde::{Deserialize, Serialize};

use super::{run, AdversaryKind, AdversaryPolicy, Interruption, Outcome, ScriptStep, SimConfig};
use crate::error::{Result, UcfError};
use crate::geometry::{Point, TolerancePolicy};

/// Adversary names as used in files and on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AdversaryName {
    Fullsync,
    Semisync,
    Async,
    Scripted,
}

impl AdversaryName {
    pub const ALL: [AdversaryName; 4] =
        [AdversaryName::Fullsync, AdversaryName::Semisync, AdversaryName::Async, AdversaryName::Scripted];

    pub fn as_str(self) -> &'static str {
        match self {
            AdversaryName::Fullsync => "fullsync",
            AdversaryName::Semisync => "semisync",
            AdversaryName::Async => "async",
            AdversaryName::Scripted => "scripted",
        }
    }
}

impl std::str::FromStr for AdversaryName {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        Self::ALL.into_iter().find(|a| a.as_str() == s).ok_or_else(|| format!("unknown adversary {s:?}"))
    }
}

fn default_delta() -> f64 {
    0.01
}

fn default_max_cycles() -> u64 {
    50_000
}

/// A single run as written by hand: either explicit initial points or a
/// swarm size to draw them from the seed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub initial: Option<Vec<Point>>,
    pub adversary: AdversaryName,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "default_delta")]
    pub delta: f64,
    #[serde(default = "default_max_cycles")]
    pub max_cycles: u64,
    #[serde(default)]
    pub script: Vec<ScriptStep>,
    #[serde(default)]
    pub interruption: Option<Interruption>,
    #[serde(default)]
    pub frame_noise: Option<bool>,
    #[serde(default)]
    pub tol: Option<TolerancePolicy>,
}

impl RunSpec {
    pub fn to_config(&self) -> Result<SimConfig> {
        let bad = |m: &str| Err(UcfError::InvalidArgument(m.into()));
        let kind = match self.adversary {
            AdversaryName::Fullsync => AdversaryKind::FullySync,
            AdversaryName::Semisync => AdversaryKind::SemiSync,
            AdversaryName::Async => AdversaryKind::Async,
            AdversaryName::Scripted if self.script.is_empty() => return bad("scripted adversary needs a script"),
            AdversaryName::Scripted => AdversaryKind::Scripted(self.script.clone()),
        };
        let mut cfg = match (&self.initial, self.n) {
            (Some(pts), n) => {
                if n.is_some_and(|n| n != pts.len()) {
                    return bad("n disagrees with the number of initial points");
                }
                SimConfig {
                    n: pts.len(),
                    initial: pts.clone(),
                    adversary: AdversaryPolicy::new(kind, self.seed, self.delta),
                    max_cycles: self.max_cycles,
                    tol: TolerancePolicy::default(),
                    regular_tolerance: 1e-6,
                }
            }
            (None, Some(n)) => SimConfig::random(n, kind, self.seed, self.max_cycles),
            (None, None) => return bad("give n or initial points"),
        };
        cfg.adversary.delta = self.delta;
        if let Some(i) = self.interruption {
            cfg.adversary.interruption = i;
        }
        if let Some(f) = self.frame_noise {
            cfg.adversary.frame_noise = f;
        }
        if let Some(t) = self.tol {
            cfg.tol = t;
        }
        Ok(cfg)
    }
}

/// One grid cell of a campaign: `seeds` runs from consecutive seeds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchCell {
    pub n: usize,
    pub adversary: AdversaryName,
    pub seeds: u64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BatchSpec {
    pub cells: Vec<BatchCell>,
    #[serde(default)]
    pub first_seed: u64,
    #[serde(default = "default_max_cycles")]
    pub max_cycles: u64,
}

/// Summary of one cell. Cycles are averaged over all runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchRow {
    pub n: usize,
    pub adversary: AdversaryName,
    pub runs: u64,
    pub reached: u64,
    pub success_rate: f64,
    pub mean_cycles: f64,
    pub max_cycles: u64,
    pub zero_collisions: bool,
}

/// Runs one cell. Scripted cells run without a script, so they fall back to
/// fully synchronous rounds.
pub fn run_cell(cell: &BatchCell, first_seed: u64, max_cycles: u64) -> Result<BatchRow> {
    let mut row = BatchRow {
        n: cell.n,
        adversary: cell.adversary,
        runs: cell.seeds,
        reached: 0,
        success_rate: 0.0,
        mean_cycles: 0.0,
        max_cycles: 0,
        zero_collisions: true,
    };
    let mut total = 0u64;
    for seed in first_seed..first_seed + cell.seeds {
        let kind = match cell.adversary {
            AdversaryName::Fullsync => AdversaryKind::FullySync,
            AdversaryName::Semisync => AdversaryKind::SemiSync,
            AdversaryName::Async => AdversaryKind::Async,
            AdversaryName::Scripted => AdversaryKind::Scripted(Vec::new()),
        };
        let cfg = SimConfig::random(cell.n, kind, seed, max_cycles);
        cfg.validate()?;
        let r = run(&cfg);
        log::debug!("n={} {} seed={seed}: {:?} after {} cycles", cell.n, cell.adversary.as_str(), r.outcome, r.cycles);
        match r.outcome {
            Outcome::ReachedRegular => row.reached += 1,
            Outcome::CollisionDetected { .. } => row.zero_collisions = false,
            _ => {}
        }
        total += r.cycles;
        row.max_cycles = row.max_cycles.max(r.cycles);
    }
    if cell.seeds > 0 {
        row.success_rate = row.reached as f64 / cell.seeds as f64;
        row.mean_cycles = total as f64 / cell.seeds as f64;
    }
    Ok(row)
}

/// Runs every cell; rows come back in cell order.
pub fn run_batch(spec: &BatchSpec) -> Result<Vec<BatchRow>> {
    spec.cells.iter().map(|c| run_cell(c, spec.first_seed, spec.max_cycles)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_with_n_draws_points_from_the_seed() {
        let spec: RunSpec = serde_json::from_str(r#"{"n": 6, "adversary": "async", "seed": 4}"#).unwrap();
        let cfg = spec.to_config().unwrap();
        assert_eq!(cfg, SimConfig::random(6, AdversaryKind::Async, 4, 50_000));
    }

    #[test]
    fn scripted_spec_needs_a_script() {
        let spec: RunSpec = serde_json::from_str(r#"{"n": 5, "adversary": "scripted"}"#).unwrap();
        assert!(spec.to_config().is_err());
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<RunSpec>(r#"{"n": 5, "adversary": "async", "colour": 1}"#).is_err());
    }

    #[test]
    fn batch_rows_follow_cell_order() {
        let spec = BatchSpec {
            cells: vec![
                BatchCell { n: 6, adversary: AdversaryName::Fullsync, seeds: 2 },
                BatchCell { n: 5, adversary: AdversaryName::Async, seeds: 2 },
            ],
            first_seed: 0,
            max_cycles: 20_000,
        };
        let rows = run_batch(&spec).unwrap();
        assert_eq!(rows.iter().map(|r| r.n).collect::<Vec<_>>(), vec![6, 5]);
        assert!(rows.iter().all(|r| r.success_rate == 1.0 && r.zero_collisions));
    }
}
