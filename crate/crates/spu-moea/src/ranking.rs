//! Non-dominated sorting, crowding distance, and exact bi-objective
//! hypervolume with per-point contributions.

use std::collections::HashMap;

use rand::Rng;

use crate::core::{dominance, Dominance, ObjectiveVector, RngStream};
use crate::{Error, Result};

/// Hypervolume reference point; `None` selects the bi-objective mode that
/// omits the reference and treats the two boundary points as indispensable.
pub type ReferencePoint = Option<ObjectiveVector>;

/// Population partition into fronts of non-dominated sorting, best first.
/// Every index of the input appears in exactly one front.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrontPartition {
    fronts: Vec<Vec<usize>>,
}

impl FrontPartition {
    pub fn fronts(&self) -> &[Vec<usize>] {
        &self.fronts
    }

    pub fn front(&self, i: usize) -> &[usize] {
        &self.fronts[i]
    }

    pub fn num_fronts(&self) -> usize {
        self.fronts.len()
    }
}

fn check_uniform(population: &[ObjectiveVector]) -> Result<()> {
    let first = &population[0];
    for v in population {
        if v.len() != first.len() {
            return Err(Error::LengthMismatch(v.len(), first.len()));
        }
        if v.directions() != first.directions() {
            return Err(Error::DirectionMismatch);
        }
    }
    Ok(())
}

/// Fast non-dominated sort. Equal vectors never dominate each other, so they
/// always land in the same front; indices within a front keep input order.
pub fn non_dominated_sort(population: &[ObjectiveVector]) -> Result<FrontPartition> {
    if population.is_empty() {
        return Err(Error::EmptyInput("non_dominated_sort population"));
    }
    check_uniform(population)?;
    let n = population.len();
    let mut dominates: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut dominated_count = vec![0usize; n];
    for i in 0..n {
        for j in (i + 1)..n {
            match dominance(&population[i], &population[j])? {
                Dominance::ADominates => {
                    dominates[i].push(j);
                    dominated_count[j] += 1;
                }
                Dominance::BDominates => {
                    dominates[j].push(i);
                    dominated_count[i] += 1;
                }
                _ => {}
            }
        }
    }
    let mut current: Vec<usize> = (0..n).filter(|&i| dominated_count[i] == 0).collect();
    let mut fronts = Vec::new();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &i in &current {
            for &j in &dominates[i] {
                dominated_count[j] -= 1;
                if dominated_count[j] == 0 {
                    next.push(j);
                }
            }
        }
        next.sort_unstable();
        fronts.push(std::mem::replace(&mut current, next));
    }
    Ok(FrontPartition { fronts })
}

/// Crowding distance of every member of one front.
///
/// Per objective, members are sorted ascending (ties keep input order); the
/// first and last of each sort get infinity, interior members accumulate the
/// neighbor gap normalized by the objective's range. A zero range contributes
/// nothing. In a bi-objective front at most four members end up infinite.
pub fn crowding_distance(front: &[ObjectiveVector]) -> Result<Vec<f64>> {
    if front.is_empty() {
        return Err(Error::EmptyInput("crowding_distance front"));
    }
    check_uniform(front)?;
    let n = front.len();
    let mut dist = vec![0.0f64; n];
    for j in 0..front[0].len() {
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| front[a].value(j).partial_cmp(&front[b].value(j)).unwrap());
        dist[order[0]] = f64::INFINITY;
        dist[order[n - 1]] = f64::INFINITY;
        let range = front[order[n - 1]].value(j) - front[order[0]].value(j);
        if range > 0.0 {
            for w in 1..n - 1 {
                let gap = front[order[w + 1]].value(j) - front[order[w - 1]].value(j);
                dist[order[w]] += gap / range;
            }
        }
    }
    Ok(dist)
}

fn check_biobjective(front: &[ObjectiveVector], reference: &ObjectiveVector) -> Result<()> {
    if reference.len() != 2 {
        return Err(Error::LengthMismatch(reference.len(), 2));
    }
    for v in front {
        if v.len() != 2 {
            return Err(Error::LengthMismatch(v.len(), 2));
        }
        if v.directions() != reference.directions() {
            return Err(Error::DirectionMismatch);
        }
        for j in 0..2 {
            if v.normalized(j) < reference.normalized(j) {
                return Err(Error::InvalidParameter(format!(
                    "front point {:?} does not weakly dominate the reference point",
                    v.values()
                )));
            }
        }
    }
    Ok(())
}

/// Exact bi-objective hypervolume: the area dominated by `front` and bounded
/// below by `reference`. Every point must weakly dominate the reference.
pub fn hv_2d(front: &[ObjectiveVector], reference: &ObjectiveVector) -> Result<f64> {
    check_biobjective(front, reference)?;
    let r1 = reference.normalized(0);
    let r2 = reference.normalized(1);
    let mut pts: Vec<(f64, f64)> =
        front.iter().map(|v| (v.normalized(0), v.normalized(1))).collect();
    pts.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    // Sweep from the largest f1 down, adding disjoint horizontal strips.
    let mut covered_f2 = r2;
    let mut area = 0.0;
    for (f1, f2) in pts {
        if f2 > covered_f2 {
            area += (f1 - r1) * (f2 - covered_f2);
            covered_f2 = f2;
        }
    }
    Ok(area)
}

/// Per-point hypervolume contributions of a bi-objective front.
///
/// With a reference point the contribution of a point is the hypervolume
/// loss from removing it. Without one (the mode used by the steady-state
/// loop) the front must be mutually non-dominated: every copy of a
/// duplicated vector contributes zero, the unique extreme points are
/// infinite, and interior points contribute the exact rectangle spanned by
/// their distinct neighbors.
pub fn hv_contributions_2d(
    front: &[ObjectiveVector],
    reference: Option<&ObjectiveVector>,
) -> Result<Vec<f64>> {
    match reference {
        Some(r) => {
            let total = hv_2d(front, r)?;
            let mut deltas = Vec::with_capacity(front.len());
            let mut rest = Vec::with_capacity(front.len().saturating_sub(1));
            for i in 0..front.len() {
                rest.clear();
                rest.extend(front.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, v)| v.clone()));
                deltas.push(total - hv_2d(&rest, r)?);
            }
            Ok(deltas)
        }
        None => hv_contributions_no_reference(front),
    }
}

fn hv_contributions_no_reference(front: &[ObjectiveVector]) -> Result<Vec<f64>> {
    if front.is_empty() {
        return Ok(Vec::new());
    }
    check_uniform(front)?;
    if front[0].len() != 2 {
        return Err(Error::LengthMismatch(front[0].len(), 2));
    }
    // Group exact-duplicate vectors; contributions are per distinct vector.
    let mut groups: HashMap<(u64, u64), Vec<usize>> = HashMap::new();
    for (i, v) in front.iter().enumerate() {
        groups.entry((v.normalized(0).to_bits(), v.normalized(1).to_bits())).or_default().push(i);
    }
    let mut distinct: Vec<(f64, f64, Vec<usize>)> = groups
        .into_iter()
        .map(|(k, idx)| (f64::from_bits(k.0), f64::from_bits(k.1), idx))
        .collect();
    distinct.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap());
    for w in distinct.windows(2) {
        // Mutual non-dominance of distinct vectors forces f1 strictly
        // ascending and f2 strictly descending.
        if w[1].0 <= w[0].0 || w[1].1 >= w[0].1 {
            return Err(Error::InvalidParameter(
                "hypervolume contributions without a reference need a mutually non-dominated front"
                    .into(),
            ));
        }
    }
    let mut out = vec![0.0f64; front.len()];
    let last = distinct.len() - 1;
    for (pos, (f1, f2, indices)) in distinct.iter().enumerate() {
        if indices.len() > 1 {
            continue; // removing one copy loses nothing
        }
        let delta = if pos == 0 || pos == last {
            f64::INFINITY
        } else {
            (f1 - distinct[pos - 1].0) * (f2 - distinct[pos + 1].1)
        };
        out[indices[0]] = delta;
    }
    Ok(out)
}

/// Index (drawn from `front_indices`) of a minimum-contribution member, ties
/// broken uniformly at random.
pub fn worst_by_delta(
    front_indices: &[usize],
    contributions: &[f64],
    rng: &mut RngStream,
) -> Result<usize> {
    if front_indices.is_empty() || front_indices.len() != contributions.len() {
        return Err(Error::LengthMismatch(front_indices.len(), contributions.len()));
    }
    if contributions.iter().any(|c| c.is_nan()) {
        return Err(Error::NonFiniteObjective);
    }
    let min = contributions.iter().copied().fold(f64::INFINITY, f64::min);
    let ties: Vec<usize> = contributions
        .iter()
        .enumerate()
        .filter(|&(_, &c)| c == min)
        .map(|(i, _)| front_indices[i])
        .collect();
    Ok(ties[rng.gen_range(0..ties.len())])
}
