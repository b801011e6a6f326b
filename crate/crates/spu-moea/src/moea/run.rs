//! The full optimization loops: initialization, breeding, archiving,
//! survival selection, stop rules, and per-run bookkeeping.

use std::collections::{HashMap, HashSet};

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core::{Individual, ObjectiveVector, RngStream};
use crate::moea::{
    nsga2_survivors_deterministic, nsga2_survivors_spu, pick, sms_removal_deterministic,
    sms_removal_spu, Algorithm, AlgorithmConfig, Archive, StopRule, UpdatePolicy,
};
use crate::problems::{ParetoFront, Problem};
use crate::variation::{crossover_pair, crossover_single, mutate};
use crate::{Error, Result};

/// Outcome of one run.
///
/// `evaluations_used` stays within the budget for the steady-state loop; the
/// generational loop evaluates in whole batches of `mu`, so its final
/// generation may overshoot the budget by up to `mu - 1` (recorded as-is).
/// `success` reports whether the stop rule's goal was met: full front
/// coverage for that rule, trivially true for budget-only runs.
#[derive(Clone, Debug, PartialEq)]
pub struct RunResult {
    pub evaluations_used: u64,
    pub generations: u64,
    /// `(evaluations_used, covered front points)`, recorded at
    /// initialization and whenever the covered count changes; empty when the
    /// problem has no known front.
    pub coverage_trajectory: Vec<(u64, usize)>,
    pub final_population: Vec<Individual>,
    pub final_archive: Option<Vec<Individual>>,
    pub success: bool,
}

/// Hook called once after initialization (generation 0, empty offspring
/// slice) and once per generation after survival selection, with that
/// generation's offspring.
pub trait GenerationObserver {
    fn observe(&mut self, generation: u64, population: &[Individual], offspring: &[Individual]);
}

struct NoopObserver;

impl GenerationObserver for NoopObserver {
    fn observe(&mut self, _: u64, _: &[Individual], _: &[Individual]) {}
}

/// Instrumentation for the maintenance guarantee of the stochastic update:
/// once a Pareto-front objective vector has appeared in the population or
/// among offspring, it must be present in every later population. Violations
/// are counted rather than panicking so callers can assert on them.
pub struct FrontPersistenceObserver {
    front_keys: HashSet<(u64, u64)>,
    found: HashSet<(u64, u64)>,
    violations: u64,
    first_violation: Option<u64>,
}

impl FrontPersistenceObserver {
    pub fn new(front: &ParetoFront) -> Self {
        FrontPersistenceObserver {
            front_keys: front.points().iter().map(vector_key).collect(),
            found: HashSet::new(),
            violations: 0,
            first_violation: None,
        }
    }

    pub fn violations(&self) -> u64 {
        self.violations
    }

    pub fn first_violation(&self) -> Option<u64> {
        self.first_violation
    }

    /// Number of distinct front vectors seen so far.
    pub fn found(&self) -> usize {
        self.found.len()
    }
}

fn vector_key(v: &ObjectiveVector) -> (u64, u64) {
    debug_assert_eq!(v.len(), 2);
    (v.normalized(0).to_bits(), v.normalized(1).to_bits())
}

impl GenerationObserver for FrontPersistenceObserver {
    fn observe(&mut self, generation: u64, population: &[Individual], offspring: &[Individual]) {
        for o in offspring {
            let key = vector_key(&o.objectives);
            if self.front_keys.contains(&key) {
                self.found.insert(key);
            }
        }
        let present: HashSet<(u64, u64)> = population
            .iter()
            .map(|i| vector_key(&i.objectives))
            .filter(|k| self.front_keys.contains(k))
            .collect();
        for key in &self.found {
            if !present.contains(key) {
                self.violations += 1;
                self.first_violation.get_or_insert(generation);
            }
        }
        self.found.extend(present);
    }
}

// Incremental record of which known-front points are attained by the
// current population and (monotonously) by the archive.
struct CoverageTracker {
    slots: HashMap<(u64, u64), usize>,
    pop_count: Vec<u32>,
    in_archive: Vec<bool>,
    count_archive: bool,
    covered: usize,
}

impl CoverageTracker {
    fn new(front: &ParetoFront, count_archive: bool) -> Result<Self> {
        if front.points()[0].len() != 2 {
            return Err(Error::InvalidConfig(
                "front coverage tracking supports two objectives".into(),
            ));
        }
        let slots = front
            .points()
            .iter()
            .enumerate()
            .map(|(i, v)| (vector_key(v), i))
            .collect();
        Ok(CoverageTracker {
            slots,
            pop_count: vec![0; front.len()],
            in_archive: vec![false; front.len()],
            count_archive,
            covered: 0,
        })
    }

    fn total(&self) -> usize {
        self.pop_count.len()
    }

    fn covered(&self) -> usize {
        self.covered
    }

    fn full(&self) -> bool {
        self.covered == self.total()
    }

    fn slot_covered(&self, s: usize) -> bool {
        self.pop_count[s] > 0 || (self.count_archive && self.in_archive[s])
    }

    fn enter_population(&mut self, v: &ObjectiveVector) {
        if let Some(&s) = self.slots.get(&vector_key(v)) {
            let before = self.slot_covered(s);
            self.pop_count[s] += 1;
            if !before {
                self.covered += 1;
            }
        }
    }

    fn leave_population(&mut self, v: &ObjectiveVector) {
        if let Some(&s) = self.slots.get(&vector_key(v)) {
            debug_assert!(self.pop_count[s] > 0);
            self.pop_count[s] -= 1;
            if !self.slot_covered(s) {
                self.covered -= 1;
            }
        }
    }

    fn enter_archive(&mut self, v: &ObjectiveVector) {
        if !self.count_archive {
            return;
        }
        if let Some(&s) = self.slots.get(&vector_key(v)) {
            let before = self.slot_covered(s);
            self.in_archive[s] = true;
            if !before {
                self.covered += 1;
            }
        }
    }
}

// Shared per-run state around the algorithm-specific breeding loops.
struct RunState<'a> {
    problem: &'a dyn Problem,
    archive: Option<Archive>,
    tracker: Option<CoverageTracker>,
    trajectory: Vec<(u64, usize)>,
    evaluations: u64,
    coverage_stop: bool,
}

impl<'a> RunState<'a> {
    fn prepare(cfg: &AlgorithmConfig, problem: &'a dyn Problem) -> Result<Self> {
        cfg.validate()?;
        let coverage_stop = cfg.stop == StopRule::FullFrontCoverage;
        let tracker = match problem.known_front() {
            Some(front) => Some(CoverageTracker::new(front, cfg.archive_enabled)?),
            None if coverage_stop => {
                return Err(Error::InvalidConfig(
                    "full-front-coverage stop needs a problem with a known front".into(),
                ))
            }
            None => None,
        };
        Ok(RunState {
            problem,
            archive: cfg.archive_enabled.then(Archive::new),
            tracker,
            trajectory: Vec::new(),
            evaluations: 0,
            coverage_stop,
        })
    }

    fn initial_population(&mut self, mu: usize, rng: &mut RngStream) -> Result<Vec<Individual>> {
        let mut population = Vec::with_capacity(mu);
        for _ in 0..mu {
            let genome = self.problem.random_genome(rng);
            let objectives = self.problem.evaluate(&genome)?;
            self.evaluations += 1;
            if let Some(t) = &mut self.tracker {
                t.enter_population(&objectives);
            }
            population.push(Individual::new(genome, objectives));
        }
        if let Some(t) = &self.tracker {
            self.trajectory.push((self.evaluations, t.covered()));
        }
        Ok(population)
    }

    // Evaluates a bred genome and offers it to the archive. The offspring is
    // not yet part of the population; survival selection settles that.
    fn evaluate_offspring(&mut self, genome: crate::core::Genome) -> Result<Individual> {
        let objectives = self.problem.evaluate(&genome)?;
        self.evaluations += 1;
        let offspring = Individual::new(genome, objectives);
        if let Some(archive) = &mut self.archive {
            if archive.update(offspring.clone())? {
                if let Some(t) = &mut self.tracker {
                    t.enter_archive(&offspring.objectives);
                }
            }
        }
        Ok(offspring)
    }

    fn note_coverage(&mut self) {
        if let Some(t) = &self.tracker {
            let last = self.trajectory.last().map(|&(_, c)| c);
            if last != Some(t.covered()) {
                self.trajectory.push((self.evaluations, t.covered()));
            }
        }
    }

    fn coverage_met(&self) -> bool {
        self.coverage_stop && self.tracker.as_ref().is_some_and(CoverageTracker::full)
    }

    fn finish(
        self,
        generations: u64,
        population: Vec<Individual>,
        stop: StopRule,
    ) -> RunResult {
        let success = match stop {
            StopRule::BudgetOnly => true,
            StopRule::FullFrontCoverage => {
                self.tracker.as_ref().map(CoverageTracker::full).unwrap_or(false)
            }
        };
        RunResult {
            evaluations_used: self.evaluations,
            generations,
            coverage_trajectory: self.trajectory,
            final_population: population,
            final_archive: self.archive.map(|a| a.members().to_vec()),
            success,
        }
    }
}

/// Steady-state loop: one uniformly bred, optionally recombined, mutated
/// offspring per generation, then survival selection over the `mu + 1` pool.
pub fn run_sms_emoa(
    cfg: &AlgorithmConfig,
    problem: &dyn Problem,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_sms_emoa_observed(cfg, problem, rng, &mut NoopObserver)
}

pub fn run_sms_emoa_observed(
    cfg: &AlgorithmConfig,
    problem: &dyn Problem,
    rng: &mut RngStream,
    observer: &mut dyn GenerationObserver,
) -> Result<RunResult> {
    if cfg.algorithm != Algorithm::SmsEmoa {
        return Err(Error::InvalidConfig("configured algorithm is not the steady-state loop".into()));
    }
    if problem.num_objectives() != 2 {
        return Err(Error::InvalidConfig(
            "the hypervolume-based update supports exactly two objectives".into(),
        ));
    }
    let mut state = RunState::prepare(cfg, problem)?;
    let mut population = state.initial_population(cfg.mu, rng)?;
    observer.observe(0, &population, &[]);

    let mut generations = 0u64;
    while !state.coverage_met() && state.evaluations < cfg.budget {
        generations += 1;
        let parent = &population[rng.gen_range(0..cfg.mu)];
        let bred = if rng.gen_bool(cfg.p_c) {
            let partner = &population[rng.gen_range(0..cfg.mu)];
            crossover_single(&parent.genome, &partner.genome, &cfg.variation, rng)?
        } else {
            parent.genome.clone()
        };
        let mutated = mutate(&bred, &cfg.variation, rng)?;
        let offspring = state.evaluate_offspring(mutated)?;

        let mut pool = std::mem::take(&mut population);
        pool.push(offspring.clone());
        let removed_index = match cfg.update {
            UpdatePolicy::Deterministic => sms_removal_deterministic(&pool, None, rng)?,
            UpdatePolicy::Spu => sms_removal_spu(&pool, cfg.p_s, None, rng)?,
        };
        let removed = pool.remove(removed_index);
        population = pool;

        if let Some(t) = &mut state.tracker {
            t.enter_population(&offspring.objectives);
            t.leave_population(&removed.objectives);
        }
        state.note_coverage();
        observer.observe(generations, &population, std::slice::from_ref(&offspring));
    }
    debug_assert_eq!(state.evaluations, cfg.mu as u64 + generations);
    Ok(state.finish(generations, population, cfg.stop))
}

/// Generational loop: fair selection pairs every population member once per
/// generation, each pair breeds two offspring, and survival selection keeps
/// `mu` of the combined `2 mu` pool. Stop rules are checked at generation
/// boundaries only.
pub fn run_nsga2(
    cfg: &AlgorithmConfig,
    problem: &dyn Problem,
    rng: &mut RngStream,
) -> Result<RunResult> {
    run_nsga2_observed(cfg, problem, rng, &mut NoopObserver)
}

pub fn run_nsga2_observed(
    cfg: &AlgorithmConfig,
    problem: &dyn Problem,
    rng: &mut RngStream,
    observer: &mut dyn GenerationObserver,
) -> Result<RunResult> {
    if cfg.algorithm != Algorithm::Nsga2 {
        return Err(Error::InvalidConfig("configured algorithm is not the generational loop".into()));
    }
    let mut state = RunState::prepare(cfg, problem)?;
    let mut population = state.initial_population(cfg.mu, rng)?;
    observer.observe(0, &population, &[]);

    let mut generations = 0u64;
    let mut order: Vec<usize> = (0..cfg.mu).collect();
    while !state.coverage_met() && state.evaluations < cfg.budget {
        generations += 1;
        order.shuffle(rng);
        let mut offspring = Vec::with_capacity(cfg.mu);
        for pair in order.chunks_exact(2) {
            let (x, y) = (&population[pair[0]].genome, &population[pair[1]].genome);
            let (a, b) = if rng.gen_bool(cfg.p_c) {
                crossover_pair(x, y, &cfg.variation, rng)?
            } else {
                (x.clone(), y.clone())
            };
            for child in [a, b] {
                let mutated = mutate(&child, &cfg.variation, rng)?;
                offspring.push(state.evaluate_offspring(mutated)?);
            }
        }

        let mut pool = std::mem::take(&mut population);
        pool.extend(offspring.iter().cloned());
        let survivors = match cfg.update {
            UpdatePolicy::Deterministic => nsga2_survivors_deterministic(&pool, rng)?,
            UpdatePolicy::Spu => nsga2_survivors_spu(&pool, cfg.p_s, rng)?,
        };
        if let Some(t) = &mut state.tracker {
            let mut kept = vec![false; pool.len()];
            for &i in &survivors {
                kept[i] = true;
            }
            // Offspring occupy pool indices mu..; parents that die leave the
            // counts, offspring that survive enter them.
            for (i, member) in pool.iter().enumerate() {
                match (i < cfg.mu, kept[i]) {
                    (true, false) => t.leave_population(&member.objectives),
                    (false, true) => t.enter_population(&member.objectives),
                    _ => {}
                }
            }
        }
        population = pick(pool, &survivors);
        state.note_coverage();
        observer.observe(generations, &population, &offspring);
    }
    debug_assert_eq!(state.evaluations, cfg.mu as u64 * (generations + 1));
    Ok(state.finish(generations, population, cfg.stop))
}

/// Runs whichever loop the configuration selects.
pub fn run(cfg: &AlgorithmConfig, problem: &dyn Problem, rng: &mut RngStream) -> Result<RunResult> {
    match cfg.algorithm {
        Algorithm::SmsEmoa => run_sms_emoa(cfg, problem, rng),
        Algorithm::Nsga2 => run_nsga2(cfg, problem, rng),
    }
}
