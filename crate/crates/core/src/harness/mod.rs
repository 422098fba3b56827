//! Seeded ensembles of link traces and their aggregation.

mod report;

pub use report::{report, ReportFiles};

use std::fs;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::census::fit_exponent;
use crate::error::{Error, Result};
use crate::estimators::{compute_trace, geometric_checkpoints, LinkTrace, TraceOptions, DEFAULT_PROBE_PREFIX};
use crate::pa_graph::{generate, PaParams};

/// Environment variable that overrides [`ExperimentConfig::output_dir`].
pub const OUTPUT_DIR_ENV: &str = "PA_LAB_OUTPUT_DIR";

/// Seed of replicate `index`: SplitMix64 applied to
/// `master + (index + 1) * 0x9E3779B97F4A7C15` (wrapping).
pub fn mix_seed(master: u64, index: u64) -> u64 {
    let mut z = master.wrapping_add(index.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15));
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EstimatorMode {
    /// Exact `ℓ` and `b_IK`.
    Exact,
    /// Probe-prefix surrogates only.
    Hatted,
    Both,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Final node count `T`.
    pub nodes: u32,
    pub m: u32,
    pub delta: f64,
    pub q: usize,
    pub replicates: u32,
    pub master_seed: u64,
    /// Explicit checkpoints; empty means geometric with
    /// `checkpoints_per_decade` points per decade.
    pub checkpoints: Vec<u32>,
    pub checkpoints_per_decade: u32,
    pub mode: EstimatorMode,
    pub probe_prefix: u32,
    pub mom_blocks: usize,
    pub output_dir: Option<PathBuf>,
    /// Worker threads; 0 uses every core.
    pub threads: usize,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        Self::desk()
    }
}

impl ExperimentConfig {
    /// Laptop-scale protocol: `T = 2000`, 50 replicates.
    pub fn desk() -> Self {
        Self {
            nodes: 2000,
            m: 7,
            delta: -5.0,
            q: 2,
            replicates: 50,
            master_seed: 2024,
            checkpoints: Vec::new(),
            checkpoints_per_decade: 20,
            mode: EstimatorMode::Both,
            probe_prefix: DEFAULT_PROBE_PREFIX,
            mom_blocks: 10,
            output_dir: None,
            threads: 0,
        }
    }

    /// Full-scale protocol: `T = 10^4`, 500 replicates, hatted bounds.
    pub fn full() -> Self {
        Self {
            nodes: 10_000,
            replicates: 500,
            mode: EstimatorMode::Hatted,
            ..Self::desk()
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn params(&self, seed: u64) -> PaParams {
        PaParams::new(self.nodes, self.m, self.delta, seed)
    }

    pub fn checkpoint_schedule(&self) -> Vec<u32> {
        if self.checkpoints.is_empty() {
            geometric_checkpoints(self.nodes, self.checkpoints_per_decade)
        } else {
            self.checkpoints.clone()
        }
    }

    /// Output directory with the environment override applied.
    pub fn resolved_output_dir(&self) -> Option<PathBuf> {
        match std::env::var_os(OUTPUT_DIR_ENV) {
            Some(dir) if !dir.is_empty() => Some(PathBuf::from(dir)),
            _ => self.output_dir.clone(),
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.params(0).validate()?;
        if self.replicates == 0 {
            return Err(Error::InvalidParams("at least one replicate is required".into()));
        }
        if self.q == 0 {
            return Err(Error::InvalidParams("ensembles track q >= 1".into()));
        }
        if self.mom_blocks == 0 {
            return Err(Error::InvalidParams("median of means needs at least one block".into()));
        }
        let cps = self.checkpoint_schedule();
        if cps.is_empty() || cps.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParams("checkpoints must be nonempty and increasing".into()));
        }
        if cps[0] == 0 || *cps.last().unwrap() > self.nodes {
            return Err(Error::InvalidParams(format!("checkpoints must lie in 1..={}", self.nodes)));
        }
        Ok(())
    }
}

/// Curves of one replicate sampled at the checkpoints.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReplicateCurves {
    pub seed: u64,
    pub betti: Vec<i64>,
    pub upper: Vec<i64>,
    /// Hatted lower bound (exact in `Exact` mode).
    pub lower: Vec<i64>,
    /// Present in `Both` mode.
    pub lower_exact: Option<Vec<i64>>,
}

impl ReplicateCurves {
    fn from_trace(seed: u64, trace: &LinkTrace, checkpoints: &[u32], mode: EstimatorMode) -> Self {
        let rows: Vec<_> = checkpoints.iter().map(|&t| trace.row(t).expect("checkpoint within T")).collect();
        let exact = |r: &crate::estimators::TraceRow| r.lower_exact.expect("exact estimators evaluated");
        Self {
            seed,
            betti: rows.iter().map(|r| r.betti.expect("betti at checkpoint") as i64).collect(),
            upper: rows.iter().map(|r| r.upper).collect(),
            lower: rows
                .iter()
                .map(|r| if mode == EstimatorMode::Exact { exact(r) } else { r.lower_hat })
                .collect(),
            lower_exact: (mode == EstimatorMode::Both).then(|| rows.iter().map(|r| exact(r)).collect()),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Stat {
    pub mean: f64,
    pub median_of_means: f64,
    pub std_error: f64,
}

impl Stat {
    /// Blocks hold `len / blocks` consecutive values each; the remainder is
    /// dropped. More blocks than values degrade to one value per block.
    pub fn of(values: &[f64], blocks: usize) -> Self {
        let n = values.len();
        assert!(n > 0, "no values to aggregate");
        let mean = values.iter().sum::<f64>() / n as f64;
        let std_error = if n > 1 {
            let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1) as f64;
            (var / n as f64).sqrt()
        } else {
            0.0
        };
        Self {
            mean,
            median_of_means: median_of_means(values, blocks),
            std_error,
        }
    }
}

pub fn median_of_means(values: &[f64], blocks: usize) -> f64 {
    let blocks = blocks.clamp(1, values.len());
    let size = values.len() / blocks;
    let mut means: Vec<f64> = values
        .chunks_exact(size)
        .take(blocks)
        .map(|c| c.iter().sum::<f64>() / size as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    let k = means.len();
    if k % 2 == 1 {
        means[k / 2]
    } else {
        (means[k / 2 - 1] + means[k / 2]) / 2.0
    }
}

/// Per-checkpoint statistics of every curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EnsembleSummary {
    pub config: ExperimentConfig,
    pub checkpoints: Vec<u32>,
    pub betti: Vec<Stat>,
    pub upper: Vec<Stat>,
    pub lower: Vec<Stat>,
    pub lower_exact: Option<Vec<Stat>>,
    /// Log-log slope of the mean Betti curve over the last decade.
    pub tail_slope: Option<f64>,
}

fn aggregate(curves: &[ReplicateCurves], pick: impl Fn(&ReplicateCurves) -> &[i64], j: usize, blocks: usize) -> Stat {
    let values: Vec<f64> = curves.iter().map(|c| pick(c)[j] as f64).collect();
    Stat::of(&values, blocks)
}

/// Slope of `ln y` against `ln T` over checkpoints in `[T_last / 10, T_last]`.
pub fn tail_slope(checkpoints: &[u32], values: &[f64]) -> Option<f64> {
    let last = *checkpoints.last()? as f64;
    let series: Vec<(f64, f64)> = checkpoints
        .iter()
        .zip(values)
        .filter(|(&t, _)| t as f64 >= last / 10.0)
        .map(|(&t, &v)| (t as f64, v))
        .collect();
    fit_exponent(&series).ok().map(|f| f.slope)
}

impl EnsembleSummary {
    pub fn from_replicates(config: ExperimentConfig, checkpoints: Vec<u32>, curves: &[ReplicateCurves]) -> Result<Self> {
        if curves.is_empty() {
            return Err(Error::InvalidParams("no replicates to summarize".into()));
        }
        if checkpoints.is_empty() {
            return Err(Error::EmptySummary);
        }
        let blocks = config.mom_blocks;
        let stats = |pick: &dyn Fn(&ReplicateCurves) -> &[i64]| -> Vec<Stat> {
            (0..checkpoints.len()).map(|j| aggregate(curves, pick, j, blocks)).collect()
        };
        let betti = stats(&|c| &c.betti);
        let means: Vec<f64> = betti.iter().map(|s| s.mean).collect();
        let lower_exact = curves
            .iter()
            .all(|c| c.lower_exact.is_some())
            .then(|| stats(&|c| c.lower_exact.as_deref().unwrap()));
        Ok(Self {
            tail_slope: tail_slope(&checkpoints, &means),
            upper: stats(&|c| &c.upper),
            lower: stats(&|c| &c.lower),
            lower_exact,
            betti,
            checkpoints,
            config,
        })
    }

    pub fn is_empty(&self) -> bool {
        self.checkpoints.is_empty()
    }
}

/// Summary plus the per-replicate curves it was built from.
#[derive(Debug, Clone, PartialEq)]
pub struct Ensemble {
    pub summary: EnsembleSummary,
    pub replicates: Vec<ReplicateCurves>,
}

fn run_replicate(cfg: &ExperimentConfig, checkpoints: &[u32], i: u32, dir: Option<&Path>) -> Result<ReplicateCurves> {
    let seed = mix_seed(cfg.master_seed, i as u64);
    let g = generate(cfg.params(seed))?;
    let opts = TraceOptions {
        probe_prefix: cfg.probe_prefix,
        exact_cap: if cfg.mode == EstimatorMode::Hatted { 0 } else { u32::MAX },
        checkpoints: checkpoints.to_vec(),
    };
    let trace = compute_trace(&g, cfg.q, &opts)?;
    if let Some(dir) = dir {
        let path = dir.join(format!("replicate_{i:04}.csv"));
        let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
        trace.write_csv(BufWriter::new(file)).map_err(|e| Error::io(&path, e))?;
    }
    Ok(ReplicateCurves::from_trace(seed, &trace, checkpoints, cfg.mode))
}

/// Runs every replicate of `cfg` on a pool of `cfg.threads` workers. Each
/// replicate writes only its own file, so outputs do not depend on the
/// schedule.
pub fn run_ensemble(cfg: &ExperimentConfig) -> Result<Ensemble> {
    cfg.validate()?;
    let checkpoints = cfg.checkpoint_schedule();
    let dir = cfg.resolved_output_dir();
    if let Some(dir) = &dir {
        fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads)
        .build()
        .map_err(|e| Error::InvalidParams(format!("thread pool: {e}")))?;
    let replicates = pool.install(|| {
        (0..cfg.replicates)
            .into_par_iter()
            .map(|i| run_replicate(cfg, &checkpoints, i, dir.as_deref()))
            .collect::<Result<Vec<_>>>()
    })?;
    let summary = EnsembleSummary::from_replicates(cfg.clone(), checkpoints, &replicates)?;
    if let Some(dir) = &dir {
        let path = dir.join("summary.json");
        fs::write(&path, serde_json::to_string_pretty(&summary)?).map_err(|e| Error::io(&path, e))?;
    }
    Ok(Ensemble { summary, replicates })
}
