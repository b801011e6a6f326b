//! The two optimizer loops and their survival-selection policies.
//!
//! Both algorithms share the same skeleton — breed, evaluate, optionally
//! archive, then shrink the combined pool back to `mu` — and differ in how
//! many offspring a generation produces and how the pool is shrunk.
//! Each policy comes in a deterministic form and a stochastic form in which
//! only a random subset of the pool faces selection at all, so every
//! individual survives with probability at least `p_s` regardless of its
//! quality.

mod run;

pub use run::{
    run, run_nsga2, run_nsga2_observed, run_sms_emoa, run_sms_emoa_observed,
    FrontPersistenceObserver, GenerationObserver, RunResult,
};

use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::core::{dominance, Individual, ObjectiveVector, RngStream};
use crate::ranking::{crowding_distance, hv_contributions_2d, non_dominated_sort, worst_by_delta};
use crate::variation::VariationConfig;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Algorithm {
    SmsEmoa,
    Nsga2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum UpdatePolicy {
    Deterministic,
    Spu,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StopRule {
    BudgetOnly,
    FullFrontCoverage,
}

fn default_update() -> UpdatePolicy {
    UpdatePolicy::Deterministic
}

fn default_stop() -> StopRule {
    StopRule::BudgetOnly
}

/// Everything a single run needs besides the problem and the rng.
///
/// `p_s` is the survival proportion of the stochastic update and is ignored
/// by the deterministic one; `seed` is a convenience for standalone runs
/// (experiment drivers derive per-replication streams instead).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgorithmConfig {
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
    pub budget: u64,
    #[serde(default = "default_stop")]
    pub stop: StopRule,
    #[serde(default)]
    pub seed: Option<u64>,
    #[serde(default)]
    pub variation: VariationConfig,
}

impl AlgorithmConfig {
    pub fn validate(&self) -> Result<()> {
        if self.mu == 0 {
            return Err(Error::InvalidConfig("population size must be positive".into()));
        }
        if !(0.0..=1.0).contains(&self.p_c) {
            return Err(Error::InvalidConfig(format!(
                "crossover probability must lie in [0, 1], got {}",
                self.p_c
            )));
        }
        self.variation.validate()?;
        if self.budget < self.mu as u64 {
            return Err(Error::InvalidConfig(format!(
                "budget {} cannot cover initialization of {} individuals",
                self.budget, self.mu
            )));
        }
        if self.algorithm == Algorithm::Nsga2 && self.mu % 2 != 0 {
            return Err(Error::InvalidConfig(
                "fair selection pairs solutions; population size must be even".into(),
            ));
        }
        if self.update == UpdatePolicy::Spu {
            if self.p_s <= 0.0 {
                return Err(Error::InvalidConfig(
                    "stochastic update needs p_s > 0; use the deterministic update instead".into(),
                ));
            }
            match self.algorithm {
                Algorithm::SmsEmoa => {
                    let pool = (self.mu + 1) as f64;
                    if self.p_s < 1.0 / pool || self.p_s >= 1.0 {
                        return Err(Error::InvalidConfig(format!(
                            "SMS-EMOA stochastic update needs p_s in [1/(mu+1), 1), got {}",
                            self.p_s
                        )));
                    }
                    if (pool * (1.0 - self.p_s)).floor() < 1.0 {
                        return Err(Error::InvalidConfig(
                            "p_s leaves no removal candidates".into(),
                        ));
                    }
                }
                Algorithm::Nsga2 => {
                    let pool = (2 * self.mu) as f64;
                    if self.p_s < 1.0 / pool || self.p_s > 0.5 {
                        return Err(Error::InvalidConfig(format!(
                            "NSGA-II stochastic update needs p_s in [1/(2 mu), 1/2], got {}",
                            self.p_s
                        )));
                    }
                    // The survivor count is exactly mu only when the two
                    // floors below are mu apart; reject p_s values whose
                    // rounding breaks that.
                    let sampled = (pool * (1.0 - self.p_s)).floor() as usize;
                    let kept = (pool * (0.5 - self.p_s)).floor() as usize;
                    if sampled != kept + self.mu {
                        return Err(Error::InvalidConfig(format!(
                            "p_s = {} rounds inconsistently; pick a value with an exact binary representation",
                            self.p_s
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Unbounded store of the non-dominated solutions seen so far.
///
/// An insert is rejected only when a present member strictly dominates the
/// newcomer; otherwise the newcomer enters and every member it weakly
/// dominates — including one with an equal objective vector — is dropped.
/// Members are thus mutually non-dominated with pairwise distinct vectors.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Archive {
    members: Vec<Individual>,
}

impl Archive {
    pub fn new() -> Self {
        Archive::default()
    }

    /// Offers a solution; returns whether it was inserted.
    pub fn update(&mut self, x: Individual) -> Result<bool> {
        for z in &self.members {
            if dominance(&z.objectives, &x.objectives)? == crate::core::Dominance::ADominates {
                return Ok(false);
            }
        }
        let mut kept = Vec::with_capacity(self.members.len() + 1);
        for z in self.members.drain(..) {
            if !dominance(&x.objectives, &z.objectives)?.a_weakly_dominates() {
                kept.push(z);
            }
        }
        kept.push(x);
        self.members = kept;
        Ok(true)
    }

    pub fn members(&self) -> &[Individual] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

fn objective_slice(pool: &[Individual], indices: &[usize]) -> Vec<ObjectiveVector> {
    indices.iter().map(|&i| pool[i].objectives.clone()).collect()
}

// Index (into `pool`) of the member a steady-state step removes: the
// minimum-contribution member of the worst front among `candidates`.
fn steady_state_removal(
    pool: &[Individual],
    candidates: &[usize],
    reference: Option<&ObjectiveVector>,
    rng: &mut RngStream,
) -> Result<usize> {
    let vectors = objective_slice(pool, candidates);
    let partition = non_dominated_sort(&vectors)?;
    let last = partition.front(partition.num_fronts() - 1);
    let front_vectors: Vec<ObjectiveVector> = last.iter().map(|&i| vectors[i].clone()).collect();
    let contributions = hv_contributions_2d(&front_vectors, reference)?;
    let within = worst_by_delta(last, &contributions, rng)?;
    Ok(candidates[within])
}

pub(crate) fn sms_removal_deterministic(
    q: &[Individual],
    reference: Option<&ObjectiveVector>,
    rng: &mut RngStream,
) -> Result<usize> {
    if q.len() < 2 {
        return Err(Error::EmptyInput("steady-state update pool"));
    }
    let all: Vec<usize> = (0..q.len()).collect();
    steady_state_removal(q, &all, reference, rng)
}

pub(crate) fn sms_removal_spu(
    q: &[Individual],
    p_s: f64,
    reference: Option<&ObjectiveVector>,
    rng: &mut RngStream,
) -> Result<usize> {
    if q.len() < 2 {
        return Err(Error::EmptyInput("steady-state update pool"));
    }
    let amount = (q.len() as f64 * (1.0 - p_s)).floor() as usize;
    if amount < 1 {
        return Err(Error::InvalidParameter(format!(
            "p_s = {p_s} leaves no removal candidates in a pool of {}",
            q.len()
        )));
    }
    let sampled = rand::seq::index::sample(rng, q.len(), amount).into_vec();
    steady_state_removal(q, &sampled, reference, rng)
}

/// Steady-state survival selection: drops one minimum-contribution member
/// of the worst front of the whole pool.
pub fn sms_update_deterministic(
    mut q: Vec<Individual>,
    reference: Option<&ObjectiveVector>,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    let removed = sms_removal_deterministic(&q, reference, rng)?;
    q.remove(removed);
    Ok(q)
}

/// Stochastic steady-state survival selection: only a uniform sample of
/// `floor(|Q| (1 - p_s))` pool members faces selection, and the one removed
/// is the minimum-contribution member of the worst front *within that
/// sample*.
pub fn sms_update_spu(
    mut q: Vec<Individual>,
    p_s: f64,
    reference: Option<&ObjectiveVector>,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    let removed = sms_removal_spu(&q, p_s, reference, rng)?;
    q.remove(removed);
    Ok(q)
}

// Extends `chosen` by `target - chosen.len()` members drawn from successive
// fronts of `candidates` (indices into `pool`): whole fronts while they fit
// strictly below the target, then the critical front by descending crowding
// distance with uniform random tie-breaking.
fn fill_by_fronts_and_crowding(
    pool: &[Individual],
    candidates: &[usize],
    target: usize,
    chosen: &mut Vec<usize>,
    rng: &mut RngStream,
) -> Result<()> {
    debug_assert!(target <= candidates.len());
    if target == 0 {
        return Ok(());
    }
    let vectors = objective_slice(pool, candidates);
    let partition = non_dominated_sort(&vectors)?;
    for front in partition.fronts() {
        let have = chosen.len();
        if have + front.len() <= target {
            chosen.extend(front.iter().map(|&i| candidates[i]));
            if chosen.len() == target {
                return Ok(());
            }
            continue;
        }
        // Critical front: keep the most isolated members.
        let needed = target - have;
        let front_vectors: Vec<ObjectiveVector> =
            front.iter().map(|&i| vectors[i].clone()).collect();
        let distances = crowding_distance(&front_vectors)?;
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.shuffle(rng);
        order.sort_by(|&a, &b| distances[b].partial_cmp(&distances[a]).unwrap());
        chosen.extend(order.iter().take(needed).map(|&i| candidates[front[i]]));
        return Ok(());
    }
    Err(Error::InvalidParameter("not enough candidates to fill the population".into()))
}

pub(crate) fn nsga2_survivors_deterministic(
    q: &[Individual],
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    if q.is_empty() || q.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "generational update pool must have even positive size, got {}",
            q.len()
        )));
    }
    let mu = q.len() / 2;
    let all: Vec<usize> = (0..q.len()).collect();
    let mut chosen = Vec::with_capacity(mu);
    fill_by_fronts_and_crowding(q, &all, mu, &mut chosen, rng)?;
    chosen.sort_unstable();
    Ok(chosen)
}

pub(crate) fn nsga2_survivors_spu(
    q: &[Individual],
    p_s: f64,
    rng: &mut RngStream,
) -> Result<Vec<usize>> {
    if q.is_empty() || q.len() % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "generational update pool must have even positive size, got {}",
            q.len()
        )));
    }
    let mu = q.len() / 2;
    let pool = q.len() as f64;
    let amount = (pool * (1.0 - p_s)).floor() as usize;
    let target = (pool * (0.5 - p_s)).floor() as usize;
    if amount != target + mu {
        return Err(Error::InvalidParameter(format!(
            "p_s = {p_s} rounds inconsistently for a pool of {}",
            q.len()
        )));
    }
    let exposed = rand::seq::index::sample(rng, q.len(), amount).into_vec();
    let mut kept_exposed = Vec::with_capacity(target);
    if target > 0 {
        fill_by_fronts_and_crowding(q, &exposed, target, &mut kept_exposed, rng)?;
    }
    let mut keep = vec![true; q.len()];
    for &i in &exposed {
        keep[i] = false;
    }
    for &i in &kept_exposed {
        keep[i] = true;
    }
    let survivors: Vec<usize> = (0..q.len()).filter(|&i| keep[i]).collect();
    debug_assert_eq!(survivors.len(), mu);
    Ok(survivors)
}

/// Generational survival selection: keeps whole fronts while they fit, then
/// tops up from the critical front by descending crowding distance.
pub fn nsga2_update_deterministic(
    q: Vec<Individual>,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    let survivors = nsga2_survivors_deterministic(&q, rng)?;
    Ok(pick(q, &survivors))
}

/// Stochastic generational survival selection: a uniform sample of
/// `floor(|Q| (1 - p_s))` members faces selection and only
/// `floor(|Q| (1/2 - p_s))` of them — chosen by fronts, then crowding — are
/// kept; everyone outside the sample survives untouched.
pub fn nsga2_update_spu(
    q: Vec<Individual>,
    p_s: f64,
    rng: &mut RngStream,
) -> Result<Vec<Individual>> {
    let survivors = nsga2_survivors_spu(&q, p_s, rng)?;
    Ok(pick(q, &survivors))
}

// Consumes `q`, keeping the (ascending) `indices`.
pub(crate) fn pick(q: Vec<Individual>, indices: &[usize]) -> Vec<Individual> {
    let mut keep = vec![false; q.len()];
    for &i in indices {
        keep[i] = true;
    }
    q.into_iter()
        .zip(keep)
        .filter_map(|(ind, k)| k.then_some(ind))
        .collect()
}
