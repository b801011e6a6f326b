//! Independent reference implementations used to cross-check the fast code
//! paths: a rasterized hypervolume, a quadratic repeated-extraction
//! non-dominated sort, and a fully enumerated rank-sum tail probability.
//!
//! Everything here is intentionally naive and shares no logic with the
//! modules it checks; budgets keep the costs bounded.

use itertools::Itertools;

use crate::core::{Direction, ObjectiveVector};
use crate::{Error, Result};

/// Cost caps for the oracle computations.
#[derive(Clone, Copy, Debug)]
pub struct OracleBudget {
    /// Maximum number of input points for the sort and raster oracles.
    pub max_points: usize,
    /// Maximum number of unit cells the raster oracle will visit.
    pub max_grid: u64,
    /// Maximum number of rank assignments the rank-sum oracle will enumerate.
    pub max_enumeration: u64,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget { max_points: 256, max_grid: 10_000_000, max_enumeration: 2_000_000 }
    }
}

fn up(v: &ObjectiveVector, j: usize) -> f64 {
    match v.directions()[j] {
        Direction::Maximize => v.value(j),
        Direction::Minimize => -v.value(j),
    }
}

/// Bi-objective hypervolume by counting dominated unit cells.
///
/// All coordinates (after mapping to maximization) and the reference point
/// must be integers; the dominated region is measured by walking every unit
/// cell of the bounding grid.
pub fn hv_raster(
    front: &[ObjectiveVector],
    reference: &ObjectiveVector,
    budget: &OracleBudget,
) -> Result<f64> {
    if front.len() > budget.max_points {
        return Err(Error::OracleBudgetExceeded(format!(
            "{} points exceeds max_points {}",
            front.len(),
            budget.max_points
        )));
    }
    if reference.len() != 2 {
        return Err(Error::LengthMismatch(reference.len(), 2));
    }
    let as_int = |x: f64| -> Result<i64> {
        if x.fract() != 0.0 || x.abs() > 1e15 {
            return Err(Error::InvalidParameter(format!("raster oracle needs integer coordinates, got {x}")));
        }
        Ok(x as i64)
    };
    let r1 = as_int(up(reference, 0))?;
    let r2 = as_int(up(reference, 1))?;
    let mut points = Vec::with_capacity(front.len());
    for v in front {
        if v.len() != 2 {
            return Err(Error::LengthMismatch(v.len(), 2));
        }
        points.push((as_int(up(v, 0))?, as_int(up(v, 1))?));
    }
    let max1 = points.iter().map(|p| p.0).max().unwrap_or(r1).max(r1);
    let max2 = points.iter().map(|p| p.1).max().unwrap_or(r2).max(r2);
    let cells = ((max1 - r1) as u64).saturating_mul((max2 - r2) as u64);
    if cells > budget.max_grid {
        return Err(Error::OracleBudgetExceeded(format!(
            "{cells} grid cells exceeds max_grid {}",
            budget.max_grid
        )));
    }
    let mut area = 0u64;
    for x in r1..max1 {
        for y in r2..max2 {
            // Cell [x, x+1) x [y, y+1) lies inside some point's box.
            if points.iter().any(|&(p1, p2)| p1 >= x + 1 && p2 >= y + 1) {
                area += 1;
            }
        }
    }
    Ok(area as f64)
}

/// Non-dominated sorting by repeated extraction of the non-dominated set.
///
/// Returns front membership as index lists, best front first. Quadratic per
/// extraction round and entirely separate from the production sort.
pub fn sort_quadratic(
    population: &[ObjectiveVector],
    budget: &OracleBudget,
) -> Result<Vec<Vec<usize>>> {
    if population.is_empty() {
        return Err(Error::EmptyInput("sort_quadratic population"));
    }
    if population.len() > budget.max_points {
        return Err(Error::OracleBudgetExceeded(format!(
            "{} points exceeds max_points {}",
            population.len(),
            budget.max_points
        )));
    }
    let m = population[0].len();
    for v in population {
        if v.len() != m {
            return Err(Error::LengthMismatch(v.len(), m));
        }
        if v.directions() != population[0].directions() {
            return Err(Error::DirectionMismatch);
        }
    }
    // Strict dominance, spelled out locally on purpose.
    let beats = |a: &ObjectiveVector, b: &ObjectiveVector| -> bool {
        let mut strictly = false;
        for j in 0..m {
            if up(a, j) < up(b, j) {
                return false;
            }
            if up(a, j) > up(b, j) {
                strictly = true;
            }
        }
        strictly
    };
    let mut remaining: Vec<usize> = (0..population.len()).collect();
    let mut fronts = Vec::new();
    while !remaining.is_empty() {
        let front: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| !remaining.iter().any(|&j| beats(&population[j], &population[i])))
            .collect();
        remaining.retain(|i| !front.contains(i));
        fronts.push(front);
    }
    Ok(fronts)
}

/// Two-sided exact rank-sum p-value by enumerating every assignment of ranks
/// to the first sample.
///
/// Refuses tied observations and pooled sizes above 12. The statistic is the
/// Mann-Whitney U of `a`; the p-value doubles the smaller tail and clamps
/// at 1.
pub fn exact_rank_sum_p(a: &[f64], b: &[f64], budget: &OracleBudget) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("rank-sum sample"));
    }
    let n = a.len();
    let total = n + b.len();
    if total > 12 {
        return Err(Error::EnumerationTooLarge(format!(
            "pooled size {total} exceeds the oracle cap of 12"
        )));
    }
    let mut pooled: Vec<f64> = a.iter().chain(b.iter()).copied().collect();
    pooled.sort_by(|x, y| x.partial_cmp(y).unwrap());
    if pooled.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidParameter("rank-sum oracle requires tie-free samples".into()));
    }
    let assignments = binomial(total as u64, n as u64);
    if assignments > budget.max_enumeration {
        return Err(Error::OracleBudgetExceeded(format!(
            "{assignments} rank assignments exceeds max_enumeration {}",
            budget.max_enumeration
        )));
    }

    // Observed U of `a`: pairs it wins outright.
    let u_obs = a
        .iter()
        .map(|&x| b.iter().filter(|&&y| x > y).count() as u64)
        .sum::<u64>();

    let base = (n * (n + 1) / 2) as u64;
    let mut count_le = 0u64;
    let mut count_ge = 0u64;
    let mut count_all = 0u64;
    for ranks in (1..=total as u64).combinations(n) {
        let u = ranks.iter().sum::<u64>() - base;
        if u <= u_obs {
            count_le += 1;
        }
        if u >= u_obs {
            count_ge += 1;
        }
        count_all += 1;
    }
    let tail = count_le.min(count_ge) as f64 / count_all as f64;
    Ok((2.0 * tail).min(1.0))
}

fn binomial(n: u64, k: u64) -> u64 {
    let k = k.min(n - k);
    let mut acc = 1u64;
    for i in 0..k {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}
