//! Seeded Monte Carlo sweeps over (N, alpha) grids.
//!
//! A sweep samples K instances per grid point, solves each with the
//! configured DFS, and (when N is at or below the topology cap) enumerates
//! the solution set and its cluster/freezing structure. Aggregation is a
//! deterministic fold over the (point, sample) index space: per-instance
//! seeds come from a stated splitmix64 chain, samples are computed in
//! parallel but collected in index order, so the CSV is byte-identical
//! regardless of thread count.
//!
//! Per-point analytics carried alongside the measurements:
//!
//! * predicted solutions 2^N (7/8)^M — each clause independently removes
//!   1/8 of the space in replacement mode;
//! * predicted log search effort N * alpha * ln(8/7), the log of the
//!   expected branches-to-first-solution under idealized path sampling.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::error::{Error, Result};
use crate::formula::{Formula, GenConfig, SampleMode};
use crate::hypercube::enumerate_with_cap;
use crate::rng::mix64;
use crate::solver::{solve, SolveStatus, SolverConfig};
use crate::topology::{clusters, freeze_report};

/// Dynamical clustering threshold reported for 3-SAT (asymptotic).
pub const ALPHA_D: f64 = 3.86;

/// Satisfiability threshold reported for 3-SAT (asymptotic).
pub const ALPHA_S: f64 = 4.267;

/// Salt for deriving per-point seeds from the master seed.
const POINT_SALT: u64 = 0x9E37_79B9_7F4A_7C15;
/// Salt for deriving per-sample seeds from the point seed.
const SAMPLE_SALT: u64 = 0xD1B5_4A32_D192_ED03;
/// Salt separating the solver's seed stream from the generator's.
const SOLVER_SALT: u64 = 0x2545_F491_4F6C_DD1D;

/// Per-instance seed: `mix64(mix64(mix64(master) ^ point ^ POINT_SALT)
/// ^ sample ^ SAMPLE_SALT)` where `mix64` is the splitmix64 output function.
pub fn instance_seed(master_seed: u64, point: u64, sample: u64) -> u64 {
    let h = mix64(master_seed);
    let h = mix64(h ^ point ^ POINT_SALT);
    mix64(h ^ sample ^ SAMPLE_SALT)
}

/// M = round(alpha * N), half-up.
pub fn round_clauses(n_vars: u32, alpha: f64) -> u64 {
    (alpha * n_vars as f64 + 0.5).floor() as u64
}

/// 2^n (7/8)^m.
pub fn expected_solutions(n_vars: u32, m: u64) -> f64 {
    (n_vars as f64).exp2() * 0.875f64.powf(m as f64)
}

/// (8/7)^m: expected branches explored before the first solution under
/// idealized uniform path sampling.
pub fn expected_search_effort(m: u64) -> f64 {
    (8.0f64 / 7.0).powf(m as f64)
}

/// n * alpha * ln(8/7) = ln(expected_search_effort(alpha * n)).
pub fn log_effort(n_vars: u32, alpha: f64) -> f64 {
    n_vars as f64 * alpha * (8.0f64 / 7.0).ln()
}

#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct AlphaRange {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

/// Sweep configuration. Accepts the short JSON keys `N`, `K`, `seed` as
/// aliases. Exactly one of `alphas` / `alpha_range` must be given.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    #[serde(alias = "N")]
    pub n_vars: u32,
    #[serde(default)]
    pub alphas: Vec<f64>,
    #[serde(default)]
    pub alpha_range: Option<AlphaRange>,
    #[serde(alias = "K")]
    pub samples_per_point: u64,
    #[serde(default)]
    pub gen_mode: SampleMode,
    #[serde(default)]
    pub solver: SolverConfig,
    /// Enumeration and topology run only when n_vars <= topology_cap.
    #[serde(default = "default_topology_cap")]
    pub topology_cap: u32,
    #[serde(alias = "seed")]
    pub master_seed: u64,
}

fn default_topology_cap() -> u32 {
    crate::hypercube::DEFAULT_ENUM_CAP
}

impl SweepConfig {
    pub fn alpha_grid(&self) -> Result<Vec<f64>> {
        match (&self.alphas[..], &self.alpha_range) {
            ([], None) => Err(Error::Config("no alpha grid given".into())),
            (list, None) => Ok(list.to_vec()),
            ([], Some(r)) => {
                if r.step <= 0.0 || r.stop < r.start {
                    return Err(Error::Config("bad alpha_range".into()));
                }
                let mut out = Vec::new();
                let mut i = 0u32;
                loop {
                    let a = r.start + r.step * i as f64;
                    if a > r.stop + 1e-9 {
                        break;
                    }
                    out.push(a);
                    i += 1;
                }
                Ok(out)
            }
            (_, Some(_)) => Err(Error::Config(
                "give either alphas or alpha_range, not both".into(),
            )),
        }
    }

    pub fn validate(&self) -> Result<Vec<f64>> {
        if self.n_vars < 3 {
            return Err(Error::InvalidN {
                n: self.n_vars as u64,
            });
        }
        if self.samples_per_point < 1 {
            return Err(Error::Config("samples_per_point must be >= 1".into()));
        }
        let grid = self.alpha_grid()?;
        if grid.iter().any(|a| *a < 0.0 || !a.is_finite()) {
            return Err(Error::Config("alphas must be finite and >= 0".into()));
        }
        if self.gen_mode == SampleMode::Unique {
            let capacity = crate::formula::clause_universe_size(self.n_vars)?;
            for &a in &grid {
                let m = round_clauses(self.n_vars, a);
                if m > capacity {
                    return Err(Error::CapacityExceeded {
                        requested: m,
                        capacity,
                        n: self.n_vars,
                    });
                }
            }
        }
        Ok(grid)
    }
}

/// Everything measured on one sampled instance.
#[derive(Clone, Debug, Serialize)]
pub struct InstanceRecord {
    pub sample: u64,
    pub seed: u64,
    pub status: SolveStatus,
    pub nodes: u64,
    pub depth1_refutation: bool,
    pub n_solutions: Option<u64>,
    pub n_clusters: Option<u64>,
    pub global_frozen_frac: Option<f64>,
    pub local_frozen_frac: Option<f64>,
}

/// Aggregated statistics at one grid point. `None` fields mean the quantity
/// was not measurable there (topology above the cap, empty outcome class,
/// or a single-sample stderr).
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub alpha: f64,
    pub m: u64,
    pub n_samples: u64,
    pub p_sat: Option<f64>,
    pub p_sat_lo: Option<f64>,
    pub p_sat_hi: Option<f64>,
    pub mean_solutions: Option<f64>,
    pub sol_stderr: Option<f64>,
    pub predicted_solutions: f64,
    pub mean_clusters: Option<f64>,
    pub global_frozen_frac: Option<f64>,
    pub local_frozen_frac: Option<f64>,
    pub median_nodes_all: Option<f64>,
    pub median_nodes_sat: Option<f64>,
    pub median_nodes_unsat: Option<f64>,
    pub depth1_frac: Option<f64>,
    pub predicted_log_effort: f64,
}

#[derive(Clone, Debug)]
pub struct SweepOutcome {
    pub rows: Vec<SweepRow>,
    /// Per-point instance records, indexed like `rows`.
    pub per_instance: Vec<Vec<InstanceRecord>>,
    pub n_exhausted: Vec<u64>,
}

/// Run the full grid. Samples are independent jobs; the fold that builds
/// each row consumes them in sample order, so results do not depend on the
/// degree of parallelism.
pub fn run_sweep(cfg: &SweepConfig) -> Result<SweepOutcome> {
    run_sweep_with_progress(cfg, |_, _| {})
}

pub fn run_sweep_with_progress<F>(cfg: &SweepConfig, mut progress: F) -> Result<SweepOutcome>
where
    F: FnMut(usize, usize),
{
    let grid = cfg.validate()?;
    let mut rows = Vec::with_capacity(grid.len());
    let mut per_instance = Vec::with_capacity(grid.len());
    let mut n_exhausted = Vec::with_capacity(grid.len());
    for (pi, &alpha) in grid.iter().enumerate() {
        let m = round_clauses(cfg.n_vars, alpha);
        let records: Vec<InstanceRecord> = (0..cfg.samples_per_point)
            .into_par_iter()
            .map(|sample| run_instance(cfg, pi as u64, sample, m))
            .collect::<Result<Vec<_>>>()?;
        rows.push(aggregate(cfg, alpha, m, &records));
        n_exhausted.push(
            records
                .iter()
                .filter(|r| r.status == SolveStatus::BudgetExhausted)
                .count() as u64,
        );
        per_instance.push(records);
        progress(pi + 1, grid.len());
    }
    Ok(SweepOutcome {
        rows,
        per_instance,
        n_exhausted,
    })
}

fn run_instance(cfg: &SweepConfig, point: u64, sample: u64, m: u64) -> Result<InstanceRecord> {
    let seed = instance_seed(cfg.master_seed, point, sample);
    let f = Formula::random(&GenConfig {
        n_vars: cfg.n_vars,
        n_clauses: m,
        mode: cfg.gen_mode,
        seed,
    })?;
    let solver_cfg = SolverConfig {
        seed: mix64(seed ^ SOLVER_SALT ^ mix64(cfg.solver.seed)),
        ..cfg.solver
    };
    let solved = solve(&f, &solver_cfg)?;

    let mut record = InstanceRecord {
        sample,
        seed,
        status: solved.status,
        nodes: solved.stats.nodes_visited,
        depth1_refutation: solved.stats.depth1_refutation,
        n_solutions: None,
        n_clusters: None,
        global_frozen_frac: None,
        local_frozen_frac: None,
    };
    if cfg.n_vars <= cfg.topology_cap {
        let s = enumerate_with_cap(&f, cfg.topology_cap)?;
        let count = s.count();
        record.n_solutions = Some(count);
        let cr = clusters(&s);
        record.n_clusters = Some(cr.n_clusters() as u64);
        if count > 0 {
            let fr = freeze_report(&s, &cr)?;
            let n = cfg.n_vars as f64;
            record.global_frozen_frac = Some(fr.global_frozen.len() as f64 / n);
            let local_total: usize = fr.per_cluster.iter().map(|m| m.len()).sum();
            record.local_frozen_frac = Some(local_total as f64 / (fr.per_cluster.len() as f64 * n));
        }
    }
    Ok(record)
}

fn aggregate(cfg: &SweepConfig, alpha: f64, m: u64, records: &[InstanceRecord]) -> SweepRow {
    let n_samples = records.len() as u64;
    let sat: Vec<&InstanceRecord> = records
        .iter()
        .filter(|r| r.status == SolveStatus::Sat)
        .collect();
    let unsat: Vec<&InstanceRecord> = records
        .iter()
        .filter(|r| r.status == SolveStatus::Unsat)
        .collect();
    let decided = sat.len() as u64 + unsat.len() as u64;

    let (p_sat, p_sat_lo, p_sat_hi) = if decided > 0 {
        let (p, lo, hi) = wilson_interval(sat.len() as u64, decided);
        (Some(p), Some(lo), Some(hi))
    } else {
        (None, None, None)
    };

    let solution_counts: Vec<f64> = records
        .iter()
        .filter_map(|r| r.n_solutions.map(|c| c as f64))
        .collect();
    let (mean_solutions, sol_stderr) = if solution_counts.len() == records.len() {
        let mean = mean(&solution_counts);
        let stderr = (solution_counts.len() >= 2).then(|| {
            let sd = sample_stddev(&solution_counts, mean);
            sd / (solution_counts.len() as f64).sqrt()
        });
        (Some(mean), stderr)
    } else {
        (None, None)
    };

    let cluster_counts: Vec<f64> = records
        .iter()
        .filter_map(|r| r.n_clusters.map(|c| c as f64))
        .collect();
    let mean_clusters = (cluster_counts.len() == records.len()).then(|| mean(&cluster_counts));

    let global_fracs: Vec<f64> = records
        .iter()
        .filter_map(|r| r.global_frozen_frac)
        .collect();
    let local_fracs: Vec<f64> = records.iter().filter_map(|r| r.local_frozen_frac).collect();

    let nodes_of =
        |rs: &[&InstanceRecord]| -> Vec<f64> { rs.iter().map(|r| r.nodes as f64).collect() };
    let all_decided: Vec<&InstanceRecord> = records
        .iter()
        .filter(|r| r.status != SolveStatus::BudgetExhausted)
        .collect();

    let depth1_frac = (!unsat.is_empty())
        .then(|| unsat.iter().filter(|r| r.depth1_refutation).count() as f64 / unsat.len() as f64);

    SweepRow {
        alpha,
        m,
        n_samples,
        p_sat,
        p_sat_lo,
        p_sat_hi,
        mean_solutions,
        sol_stderr,
        predicted_solutions: expected_solutions(cfg.n_vars, m),
        mean_clusters,
        global_frozen_frac: (!global_fracs.is_empty()).then(|| mean(&global_fracs)),
        local_frozen_frac: (!local_fracs.is_empty()).then(|| mean(&local_fracs)),
        median_nodes_all: median(&mut nodes_of(&all_decided)),
        median_nodes_sat: median(&mut nodes_of(&sat)),
        median_nodes_unsat: median(&mut nodes_of(&unsat)),
        depth1_frac,
        predicted_log_effort: log_effort(cfg.n_vars, alpha),
    }
}

fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

fn sample_stddev(xs: &[f64], mean: f64) -> f64 {
    let ss: f64 = xs.iter().map(|x| (x - mean) * (x - mean)).sum();
    (ss / (xs.len() as f64 - 1.0)).sqrt()
}

fn median(xs: &mut [f64]) -> Option<f64> {
    if xs.is_empty() {
        return None;
    }
    xs.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let mid = xs.len() / 2;
    Some(if xs.len() % 2 == 1 {
        xs[mid]
    } else {
        (xs[mid - 1] + xs[mid]) / 2.0
    })
}

/// Wilson 95% score interval (z = 1.96) for `successes` out of `n`.
fn wilson_interval(successes: u64, n: u64) -> (f64, f64, f64) {
    let z = 1.96f64;
    let n_f = n as f64;
    let p = successes as f64 / n_f;
    let z2 = z * z;
    let denom = 1.0 + z2 / n_f;
    let center = p + z2 / (2.0 * n_f);
    let spread = z * (p * (1.0 - p) / n_f + z2 / (4.0 * n_f * n_f)).sqrt();
    (p, (center - spread) / denom, (center + spread) / denom)
}

// ---------------------------------------------------------------------------
// CSV output

pub const CSV_HEADER: &str = "alpha,m,n_samples,p_sat,p_sat_lo,p_sat_hi,mean_solutions,sol_stderr,predicted_solutions,mean_clusters,global_frozen_frac,local_frozen_frac,median_nodes_all,median_nodes_sat,median_nodes_unsat,depth1_frac,predicted_log_effort";

fn csv_cell(x: Option<f64>) -> String {
    // shortest round-trip formatting keeps the bytes deterministic
    x.map(|v| format!("{v}")).unwrap_or_default()
}

pub fn rows_to_csv(rows: &[SweepRow]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let cells = [
            format!("{}", r.alpha),
            format!("{}", r.m),
            format!("{}", r.n_samples),
            csv_cell(r.p_sat),
            csv_cell(r.p_sat_lo),
            csv_cell(r.p_sat_hi),
            csv_cell(r.mean_solutions),
            csv_cell(r.sol_stderr),
            format!("{}", r.predicted_solutions),
            csv_cell(r.mean_clusters),
            csv_cell(r.global_frozen_frac),
            csv_cell(r.local_frozen_frac),
            csv_cell(r.median_nodes_all),
            csv_cell(r.median_nodes_sat),
            csv_cell(r.median_nodes_unsat),
            csv_cell(r.depth1_frac),
            format!("{}", r.predicted_log_effort),
        ];
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

/// JSON sidecar: configuration, seed derivation, per-point bookkeeping
/// (including mean node counts, the heavy-tail-sensitive companions of the
/// CSV medians), and the reference threshold constants.
pub fn sidecar_json(cfg: &SweepConfig, outcome: &SweepOutcome) -> serde_json::Value {
    let points: Vec<serde_json::Value> = outcome
        .rows
        .iter()
        .zip(&outcome.per_instance)
        .zip(&outcome.n_exhausted)
        .map(|((row, records), &ex)| {
            let class_mean = |status: Option<SolveStatus>| -> Option<f64> {
                let nodes: Vec<f64> = records
                    .iter()
                    .filter(|r| {
                        status.map_or(r.status != SolveStatus::BudgetExhausted, |s| r.status == s)
                    })
                    .map(|r| r.nodes as f64)
                    .collect();
                (!nodes.is_empty()).then(|| mean(&nodes))
            };
            json!({
                "alpha": row.alpha,
                "m": row.m,
                "n_exhausted": ex,
                "mean_nodes_all": class_mean(None),
                "mean_nodes_sat": class_mean(Some(SolveStatus::Sat)),
                "mean_nodes_unsat": class_mean(Some(SolveStatus::Unsat)),
            })
        })
        .collect();
    json!({
        "config": cfg,
        "seed_derivation": "instance_seed = splitmix64(splitmix64(splitmix64(master) ^ point ^ 0x9E3779B97F4A7C15) ^ sample ^ 0xD1B54A32D192ED03)",
        "reference": { "alpha_d": ALPHA_D, "alpha_s": ALPHA_S },
        "points": points,
    })
}

// ---------------------------------------------------------------------------
// Post-hoc analytics

/// Class statistic: a median, or a too-small-to-report marker.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ClassMedian {
    Median { nodes: f64 },
    InsufficientSamples { count: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct HardnessPoint {
    pub alpha: f64,
    pub p_sat: Option<f64>,
    pub sat: ClassMedian,
    pub unsat: ClassMedian,
}

/// Minimum class size before a per-class median is reported.
pub const MIN_CLASS_SAMPLES: u64 = 10;

/// Split search cost by outcome so the two competing trends (SAT cost
/// rising while SAT instances thin out, UNSAT cost falling while they take
/// over) are separately visible. Classes with fewer than
/// [`MIN_CLASS_SAMPLES`] instances are marked, not fabricated.
pub fn hardness_decomposition(outcome: &SweepOutcome) -> Vec<HardnessPoint> {
    outcome
        .rows
        .iter()
        .zip(&outcome.per_instance)
        .map(|(row, records)| {
            let class = |status: SolveStatus| -> ClassMedian {
                let mut nodes: Vec<f64> = records
                    .iter()
                    .filter(|r| r.status == status)
                    .map(|r| r.nodes as f64)
                    .collect();
                if (nodes.len() as u64) < MIN_CLASS_SAMPLES {
                    ClassMedian::InsufficientSamples {
                        count: nodes.len() as u64,
                    }
                } else {
                    ClassMedian::Median {
                        nodes: median(&mut nodes).expect("non-empty"),
                    }
                }
            };
            HardnessPoint {
                alpha: row.alpha,
                p_sat: row.p_sat,
                sat: class(SolveStatus::Sat),
                unsat: class(SolveStatus::Unsat),
            }
        })
        .collect()
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationFlag {
    pub alpha: f64,
    pub m: u64,
    pub mean_solutions: f64,
    pub predicted_solutions: f64,
    pub stderr: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ExpectationSkip {
    pub alpha: f64,
    pub reason: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct ExpectationReport {
    pub flagged: Vec<ExpectationFlag>,
    pub skipped: Vec<ExpectationSkip>,
}

/// Flag grid points whose measured mean |S| sits more than 3 standard
/// errors from 2^N (7/8)^M. Points without enumeration data or without a
/// defined stderr are skipped with a notice.
pub fn validate_expectation(rows: &[SweepRow]) -> ExpectationReport {
    let mut report = ExpectationReport::default();
    for row in rows {
        let (Some(mean), Some(stderr)) = (row.mean_solutions, row.sol_stderr) else {
            report.skipped.push(ExpectationSkip {
                alpha: row.alpha,
                reason: if row.mean_solutions.is_none() {
                    "no enumeration data".into()
                } else {
                    "stderr undefined for a single sample".into()
                },
            });
            continue;
        };
        if (mean - row.predicted_solutions).abs() > 3.0 * stderr {
            report.flagged.push(ExpectationFlag {
                alpha: row.alpha,
                m: row.m,
                mean_solutions: mean,
                predicted_solutions: row.predicted_solutions,
                stderr,
            });
        }
    }
    report
}
