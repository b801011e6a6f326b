//! Experiment driver: named scenarios over a shared benchmark, seeded
//! replications executed in parallel, byte-stable CSV/JSON outputs, scenario
//! summaries with significance tests, and bound-table queries.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::analysis::{self, BoundInputs};
use crate::core::{Individual, ObjectiveVector, RngStream};
use crate::moea::{self, Algorithm, AlgorithmConfig, StopRule, UpdatePolicy};
use crate::problems::io::{load_reference_front, motsp_from_json_file, motsp_from_tsplib_files};
use crate::problems::{
    brute_force_pareto, EnumerationLimit, MotspInstance, MotspProblem, OjzjParams, OjzjProblem,
    Problem,
};
use crate::ranking::non_dominated_sort;
use crate::variation::VariationConfig;
use crate::{Error, Result};

/// Which benchmark an experiment runs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum ProblemSpec {
    /// The bi-objective jump benchmark.
    Ojzj { n: usize, k: usize },
    /// Tour costs under several edge-weight matrices: either one JSON
    /// instance file or one TSPLIB file per objective. Runs are scored by
    /// mean distance to `reference_front`, brute-forced when omitted.
    Motsp {
        instance: Vec<PathBuf>,
        #[serde(default)]
        reference_front: Option<PathBuf>,
    },
}

fn default_update() -> UpdatePolicy {
    UpdatePolicy::Deterministic
}

/// One named algorithm configuration. `budget` and `stop` fall back to
/// benchmark-appropriate defaults when omitted: run-until-coverage with a
/// 10^9 safety budget for the jump benchmark, a flat 10^6-evaluation budget
/// for tours.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    pub algorithm: Algorithm,
    pub mu: usize,
    #[serde(default)]
    pub p_c: f64,
    #[serde(default)]
    pub p_s: f64,
    #[serde(default = "default_update")]
    pub update: UpdatePolicy,
    #[serde(default)]
    pub archive_enabled: bool,
    #[serde(default)]
    pub budget: Option<u64>,
    #[serde(default)]
    pub stop: Option<StopRule>,
    #[serde(default)]
    pub variation: VariationConfig,
}

impl Scenario {
    fn resolve(&self, problem: &ProblemSpec, seed: u64) -> AlgorithmConfig {
        let (default_budget, default_stop) = match problem {
            ProblemSpec::Ojzj { .. } => (1_000_000_000, StopRule::FullFrontCoverage),
            ProblemSpec::Motsp { .. } => (1_000_000, StopRule::BudgetOnly),
        };
        AlgorithmConfig {
            algorithm: self.algorithm,
            mu: self.mu,
            p_c: self.p_c,
            p_s: self.p_s,
            update: self.update,
            archive_enabled: self.archive_enabled,
            budget: self.budget.unwrap_or(default_budget),
            stop: self.stop.unwrap_or(default_stop),
            seed: Some(seed),
            variation: self.variation.clone(),
        }
    }
}

/// A full experiment: one benchmark, several scenarios, seeded replications.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSpec {
    pub problem: ProblemSpec,
    pub scenarios: Vec<Scenario>,
    pub replications: u64,
    pub base_seed: u64,
    /// Where `rows.csv` and `summary.json` go; overridable at run time.
    #[serde(default)]
    pub output_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn from_json(text: &str) -> Result<Self> {
        let spec: ExperimentSpec = serde_json::from_str(text)?;
        spec.validate()?;
        Ok(spec)
    }

    pub fn from_json_file(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&fs::read_to_string(path)?)
    }

    pub fn validate(&self) -> Result<()> {
        if self.scenarios.is_empty() {
            return Err(Error::EmptyInput("scenario list"));
        }
        if self.replications == 0 {
            return Err(Error::InvalidConfig("replications must be at least 1".into()));
        }
        let mut names = std::collections::HashSet::new();
        for scenario in &self.scenarios {
            if scenario.name.is_empty() {
                return Err(Error::InvalidConfig("scenario names must be non-empty".into()));
            }
            if scenario.name.contains([',', '"', '\n', '\r']) {
                return Err(Error::InvalidConfig(format!(
                    "scenario name {:?} contains CSV delimiter characters",
                    scenario.name
                )));
            }
            if !names.insert(scenario.name.as_str()) {
                return Err(Error::InvalidConfig(format!(
                    "duplicate scenario name {:?}",
                    scenario.name
                )));
            }
            scenario.resolve(&self.problem, 0).validate().map_err(|e| {
                Error::InvalidConfig(format!("scenario {:?}: {e}", scenario.name))
            })?;
        }
        if let ProblemSpec::Ojzj { n, k } = self.problem {
            OjzjParams::new(n, k)?;
        }
        Ok(())
    }
}

/// One completed (scenario, replication) cell.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ResultRow {
    pub scenario: String,
    pub replication: u64,
    pub seed: u64,
    pub evaluations: u64,
    pub success: bool,
    /// Evaluations used (jump benchmark) or mean distance to the reference
    /// front of the returned non-dominated set (tours).
    pub indicator: f64,
    /// Zero unless timing was requested, keeping outputs byte-reproducible.
    pub wallclock_ms: u64,
}

/// Per-scenario aggregate; `p_vs_baseline` is absent on the baseline itself.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScenarioSummary {
    pub scenario: String,
    pub replications: usize,
    pub mean_evaluations: f64,
    pub std_evaluations: f64,
    pub mean_indicator: f64,
    pub std_indicator: f64,
    pub success_rate: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_vs_baseline: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub significant_vs_baseline: Option<bool>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExperimentSummary {
    /// Scenario the others are tested against: the last one listed.
    pub baseline: String,
    pub alpha: f64,
    pub scenarios: Vec<ScenarioSummary>,
}

/// Knobs that do not belong in the spec file: parallelism, wall-clock
/// recording (off by default so outputs stay byte-identical), and an output
/// directory override.
#[derive(Clone, Debug, Default)]
pub struct RunOptions {
    /// Worker threads; 0 picks the library default.
    pub workers: usize,
    pub timing: bool,
    pub output_dir: Option<PathBuf>,
}

pub struct ExperimentOutput {
    pub rows: Vec<ResultRow>,
    pub summary: ExperimentSummary,
}

/// Per-cell seed: base seed XOR an FNV-1a hash of the scenario name and
/// replication index. Depends only on spec content, never on scheduling.
fn cell_seed(base_seed: u64, scenario: &str, replication: u64) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in scenario.bytes().chain(replication.to_le_bytes()) {
        hash ^= u64::from(byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    base_seed ^ hash
}

enum LoadedProblem {
    Ojzj(OjzjProblem),
    Motsp { problem: MotspProblem, reference: Vec<ObjectiveVector> },
}

impl LoadedProblem {
    fn load(spec: &ProblemSpec) -> Result<Self> {
        match spec {
            ProblemSpec::Ojzj { n, k } => {
                Ok(LoadedProblem::Ojzj(OjzjProblem::new(OjzjParams::new(*n, *k)?)))
            }
            ProblemSpec::Motsp { instance, reference_front } => {
                let problem = MotspProblem::new(load_instance(instance)?);
                let reference = match reference_front {
                    Some(path) => load_reference_front(path, problem.directions())?,
                    None => {
                        brute_force_pareto(&problem, &EnumerationLimit::default())?.points().to_vec()
                    }
                };
                Ok(LoadedProblem::Motsp { problem, reference })
            }
        }
    }

    fn problem(&self) -> &dyn Problem {
        match self {
            LoadedProblem::Ojzj(p) => p,
            LoadedProblem::Motsp { problem, .. } => problem,
        }
    }
}

fn load_instance(paths: &[PathBuf]) -> Result<MotspInstance> {
    match paths {
        [] => Err(Error::EmptyInput("instance path list")),
        [single] if single.extension().is_some_and(|e| e.eq_ignore_ascii_case("json")) => {
            motsp_from_json_file(single)
        }
        [_] => Err(Error::InvalidConfig(
            "a single instance file must be JSON; TSPLIB costs need one file per objective".into(),
        )),
        many => motsp_from_tsplib_files(many),
    }
}

/// Runs every scenario x replication cell, writes `rows.csv` and
/// `summary.json` when an output directory is known, and returns the rows
/// and summary. Identical spec and base seed give byte-identical files
/// regardless of worker count.
pub fn run_experiment(spec: &ExperimentSpec, options: &RunOptions) -> Result<ExperimentOutput> {
    spec.validate()?;
    let problem = LoadedProblem::load(&spec.problem)?;

    struct Cell {
        scenario: usize,
        replication: u64,
        seed: u64,
        config: AlgorithmConfig,
    }
    let cells: Vec<Cell> = spec
        .scenarios
        .iter()
        .enumerate()
        .flat_map(|(scenario, sc)| {
            let problem_spec = &spec.problem;
            (0..spec.replications).map(move |replication| {
                let seed = cell_seed(spec.base_seed, &sc.name, replication);
                Cell { scenario, replication, seed, config: sc.resolve(problem_spec, seed) }
            })
        })
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(options.workers)
        .build()
        .map_err(|e| Error::InvalidConfig(format!("worker pool: {e}")))?;
    let timing = options.timing;
    let rows: Result<Vec<ResultRow>> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| {
                let mut rng = RngStream::new(cell.seed, 0);
                let started = Instant::now();
                let result = moea::run(&cell.config, problem.problem(), &mut rng)?;
                Ok(ResultRow {
                    scenario: spec.scenarios[cell.scenario].name.clone(),
                    replication: cell.replication,
                    seed: cell.seed,
                    evaluations: result.evaluations_used,
                    success: result.success,
                    indicator: indicator_for(&problem, &result)?,
                    wallclock_ms: if timing { started.elapsed().as_millis() as u64 } else { 0 },
                })
            })
            .collect()
    });
    let rows = rows?;
    let summary = summarize(&rows)?;

    if let Some(dir) = options.output_dir.as_ref().or(spec.output_dir.as_ref()) {
        fs::create_dir_all(dir)?;
        fs::write(dir.join("rows.csv"), rows_csv(&rows))?;
        let mut json = serde_json::to_string_pretty(&summary)?;
        json.push('\n');
        fs::write(dir.join("summary.json"), json)?;
    }
    Ok(ExperimentOutput { rows, summary })
}

fn indicator_for(problem: &LoadedProblem, result: &moea::RunResult) -> Result<f64> {
    match problem {
        LoadedProblem::Ojzj(_) => Ok(result.evaluations_used as f64),
        LoadedProblem::Motsp { reference, .. } => {
            // Score the returned set: the archive when one is kept (unless the
            // budget died during initialization and left it empty), the final
            // population otherwise.
            let returned: &[Individual] = match result.final_archive.as_deref() {
                Some(archive) if !archive.is_empty() => archive,
                _ => &result.final_population,
            };
            let vectors: Vec<ObjectiveVector> =
                returned.iter().map(|ind| ind.objectives.clone()).collect();
            let fronts = non_dominated_sort(&vectors)?;
            let best: Vec<ObjectiveVector> =
                fronts.front(0).iter().map(|&i| vectors[i].clone()).collect();
            analysis::igd(reference, &best)
        }
    }
}

/// The rows file as a string: fixed header and column order, LF endings,
/// shortest round-trip decimals.
pub fn rows_csv(rows: &[ResultRow]) -> String {
    let mut out = String::from("scenario,replication,seed,evaluations,success,indicator,wallclock_ms\n");
    for row in rows {
        let _ = writeln!(
            out,
            "{},{},{},{},{},{},{}",
            row.scenario,
            row.replication,
            row.seed,
            row.evaluations,
            row.success,
            row.indicator,
            row.wallclock_ms
        );
    }
    out
}

/// Aggregates rows per scenario (first-appearance order) and tests each
/// scenario's indicator sample against the last-listed scenario at alpha
/// = 0.05. Sample standard deviation; a single replication reports 0 with a
/// warning.
pub fn summarize(rows: &[ResultRow]) -> Result<ExperimentSummary> {
    if rows.is_empty() {
        return Err(Error::EmptyInput("result rows"));
    }
    let mut order: Vec<&str> = Vec::new();
    for row in rows {
        if !order.contains(&row.scenario.as_str()) {
            order.push(&row.scenario);
        }
    }
    let baseline = *order.last().expect("non-empty row set");
    let collect = |name: &str, pick: fn(&ResultRow) -> f64| -> Vec<f64> {
        rows.iter().filter(|r| r.scenario == name).map(pick).collect()
    };
    let baseline_indicators = collect(baseline, |r| r.indicator);

    let mut scenarios = Vec::with_capacity(order.len());
    for name in &order {
        let evaluations = collect(name, |r| r.evaluations as f64);
        let indicators = collect(name, |r| r.indicator);
        let successes = rows.iter().filter(|r| r.scenario == *name && r.success).count();
        let n = indicators.len();
        let mut warnings = Vec::new();
        if n == 1 {
            warnings.push("single replication: standard deviation reported as 0".to_string());
        }
        let (p_vs_baseline, significant_vs_baseline) = if *name == baseline {
            (None, None)
        } else {
            let (_, p) = analysis::wilcoxon_rank_sum(&indicators, &baseline_indicators)?;
            (Some(p), Some(p < 0.05))
        };
        scenarios.push(ScenarioSummary {
            scenario: name.to_string(),
            replications: n,
            mean_evaluations: mean(&evaluations),
            std_evaluations: sample_std(&evaluations),
            mean_indicator: mean(&indicators),
            std_indicator: sample_std(&indicators),
            success_rate: successes as f64 / n as f64,
            p_vs_baseline,
            significant_vs_baseline,
            warnings,
        });
    }
    Ok(ExperimentSummary { baseline: baseline.to_string(), alpha: 0.05, scenarios })
}

fn mean(values: &[f64]) -> f64 {
    values.iter().sum::<f64>() / values.len() as f64
}

fn sample_std(values: &[f64]) -> f64 {
    if values.len() < 2 {
        return 0.0;
    }
    let m = mean(values);
    (values.iter().map(|v| (v - m) * (v - m)).sum::<f64>() / (values.len() - 1) as f64).sqrt()
}

/// Population sizes used for the benchmark tables, by algorithm and archive
/// use: 8 / 8(n-2k+3) for the generational loop with/without an archive,
/// 5 / 2(n-2k+4) for the steady-state one.
pub fn ojzj_population_rule(n: usize, k: usize, archived: bool, algorithm: Algorithm) -> usize {
    let spread = n.saturating_sub(2 * k);
    match (algorithm, archived) {
        (Algorithm::Nsga2, true) => 8,
        (Algorithm::Nsga2, false) => 8 * (spread + 3),
        (Algorithm::SmsEmoa, true) => 5,
        (Algorithm::SmsEmoa, false) => 2 * (spread + 4),
    }
}

/// One row of a bound-table query.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundRow {
    pub inputs: BoundInputs,
    pub c: f64,
    pub optimal_m: u64,
    pub bound_ln: f64,
    pub bound_linear: f64,
    /// This row's bound over the first row's, computed in log space.
    pub ratio_vs_first: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

/// Evaluates the bound calculator over a parameter grid. The first row is
/// the ratio baseline, so ordering pairs of interest adjacent to it reads as
/// a direct comparison column.
pub fn bounds_query(grid: &[BoundInputs]) -> Result<Vec<BoundRow>> {
    if grid.is_empty() {
        return Err(Error::EmptyInput("bound query grid"));
    }
    let mut rows = Vec::with_capacity(grid.len());
    let mut first_ln = 0.0;
    for (i, inputs) in grid.iter().enumerate() {
        let c = analysis::bound_c(inputs)?;
        let value = analysis::bound_value(inputs)?;
        if i == 0 {
            first_ln = value.ln;
        }
        rows.push(BoundRow {
            inputs: *inputs,
            c,
            optimal_m: analysis::optimal_m(inputs.k, c)?,
            bound_ln: value.ln,
            bound_linear: value.linear,
            ratio_vs_first: (value.ln - first_ln).exp(),
            warnings: inputs.bound_range_warnings(),
        });
    }
    Ok(rows)
}
