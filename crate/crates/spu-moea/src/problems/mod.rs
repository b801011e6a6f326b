//! Benchmark problems: the OneJumpZeroJump bi-objective bitstring family
//! with its closed-form Pareto front, and a multi-objective symmetric TSP
//! over shared cities, plus exhaustive front enumeration for small search
//! spaces.

pub mod io;

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::core::{dominance, Direction, Dominance, Genome, ObjectiveVector, RngStream};
use crate::{Error, Result};

/// A problem an algorithm can run against.
pub trait Problem: Sync {
    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector>;
    fn random_genome(&self, rng: &mut RngStream) -> Genome;
    fn directions(&self) -> &[Direction];
    fn num_objectives(&self) -> usize {
        self.directions().len()
    }
    /// Exact Pareto front, when the problem has a closed form for it.
    fn known_front(&self) -> Option<&ParetoFront> {
        None
    }
    fn space(&self) -> SearchSpace;
}

/// Shape of a problem's search space, used for exhaustive enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SearchSpace {
    Bitstrings { len: usize },
    Permutations { cities: usize },
}

/// A set of mutually non-dominated, pairwise distinct objective vectors,
/// kept sorted by the first objective. `inner` flags the subset that is
/// reachable without jumping a fitness valley (meaningful for
/// OneJumpZeroJump, all-false elsewhere).
#[derive(Clone, Debug, PartialEq)]
pub struct ParetoFront {
    points: Vec<ObjectiveVector>,
    inner: Vec<bool>,
}

impl ParetoFront {
    pub fn new(points: Vec<ObjectiveVector>, inner: Vec<bool>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::EmptyInput("ParetoFront points"));
        }
        if points.len() != inner.len() {
            return Err(Error::LengthMismatch(points.len(), inner.len()));
        }
        let mut order: Vec<usize> = (0..points.len()).collect();
        order.sort_by(|&a, &b| {
            points[a]
                .values()
                .partial_cmp(points[b].values())
                .expect("finite objective values")
        });
        let points_sorted: Vec<ObjectiveVector> = order.iter().map(|&i| points[i].clone()).collect();
        let inner_sorted: Vec<bool> = order.iter().map(|&i| inner[i]).collect();
        for i in 0..points_sorted.len() {
            for j in (i + 1)..points_sorted.len() {
                match dominance(&points_sorted[i], &points_sorted[j])? {
                    Dominance::Incomparable => {}
                    _ => {
                        return Err(Error::InvalidParameter(
                            "Pareto front points must be distinct and mutually non-dominated".into(),
                        ))
                    }
                }
            }
        }
        Ok(ParetoFront { points: points_sorted, inner: inner_sorted })
    }

    pub fn points(&self) -> &[ObjectiveVector] {
        &self.points
    }

    pub fn inner_flags(&self) -> &[bool] {
        &self.inner
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, v: &ObjectiveVector) -> bool {
        self.points.iter().any(|p| p == v)
    }
}

/// Parameters of OneJumpZeroJump: bitstring length `n` and jump gap `k`,
/// with `2 <= k < n/2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct OjzjParams {
    pub n: usize,
    pub k: usize,
}

impl OjzjParams {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        if k < 2 || 2 * k >= n {
            return Err(Error::InvalidParameter(format!(
                "OneJumpZeroJump needs 2 <= k < n/2, got n={n}, k={k}"
            )));
        }
        Ok(OjzjParams { n, k })
    }
}

/// Evaluates OneJumpZeroJump: the first objective rewards many ones but
/// drops into a valley on the last `k-1` steps before the all-ones string;
/// the second mirrors it with zeros. Both objectives are maximized.
pub fn ojzj_evaluate(params: &OjzjParams, genome: &Genome) -> Result<ObjectiveVector> {
    let bits = genome.as_bits()?;
    if bits.len() != params.n {
        return Err(Error::LengthMismatch(bits.len(), params.n));
    }
    let (n, k) = (params.n as f64, params.k as f64);
    let ones = bits.iter().filter(|&&b| b).count() as f64;
    let zeros = n - ones;
    let f1 = if ones <= n - k || ones == n { k + ones } else { n - ones };
    let f2 = if zeros <= n - k || zeros == n { k + zeros } else { n - zeros };
    Ok(ObjectiveVector::max2(f1, f2))
}

/// Closed-form Pareto front of OneJumpZeroJump: `(a, n + 2k - a)` for
/// `a` in `[2k, n]` (the inner part) plus the two extreme points `(k, n+k)`
/// and `(n+k, k)`; `n - 2k + 3` points in total.
pub fn ojzj_pareto_front(params: &OjzjParams) -> ParetoFront {
    let (n, k) = (params.n, params.k);
    let mut points = Vec::with_capacity(n - 2 * k + 3);
    let mut inner = Vec::with_capacity(n - 2 * k + 3);
    points.push(ObjectiveVector::max2(k as f64, (n + k) as f64));
    inner.push(false);
    for a in 2 * k..=n {
        points.push(ObjectiveVector::max2(a as f64, (n + 2 * k - a) as f64));
        inner.push(true);
    }
    points.push(ObjectiveVector::max2((n + k) as f64, k as f64));
    inner.push(false);
    ParetoFront::new(points, inner).expect("closed-form front is a valid antichain")
}

/// OneJumpZeroJump as a runnable problem.
#[derive(Clone, Debug)]
pub struct OjzjProblem {
    params: OjzjParams,
    front: ParetoFront,
    directions: [Direction; 2],
}

impl OjzjProblem {
    pub fn new(params: OjzjParams) -> Self {
        OjzjProblem {
            params,
            front: ojzj_pareto_front(&params),
            directions: [Direction::Maximize; 2],
        }
    }

    pub fn params(&self) -> &OjzjParams {
        &self.params
    }
}

impl Problem for OjzjProblem {
    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector> {
        ojzj_evaluate(&self.params, genome)
    }

    fn random_genome(&self, rng: &mut RngStream) -> Genome {
        Genome::Bitstring((0..self.params.n).map(|_| rng.gen::<bool>()).collect())
    }

    fn directions(&self) -> &[Direction] {
        &self.directions
    }

    fn known_front(&self) -> Option<&ParetoFront> {
        Some(&self.front)
    }

    fn space(&self) -> SearchSpace {
        SearchSpace::Bitstrings { len: self.params.n }
    }
}

/// Cost matrices of a multi-objective symmetric TSP: one `D x D` matrix per
/// objective, all symmetric with zero diagonals and finite non-negative
/// weights. Tours are permutations of `0..D`, all objectives minimized.
#[derive(Clone, Debug, PartialEq)]
pub struct MotspInstance {
    cities: usize,
    weights: Vec<Vec<f64>>, // per objective, row-major D x D
}

impl MotspInstance {
    pub fn new(matrices: Vec<Vec<Vec<f64>>>) -> Result<Self> {
        if matrices.len() < 2 {
            return Err(Error::InvalidParameter(format!(
                "a multi-objective TSP instance needs at least two cost matrices, got {}",
                matrices.len()
            )));
        }
        let cities = matrices[0].len();
        if cities < 2 {
            return Err(Error::InvalidParameter("instance needs at least two cities".into()));
        }
        let mut weights = Vec::with_capacity(matrices.len());
        for (m_idx, matrix) in matrices.iter().enumerate() {
            if matrix.len() != cities {
                return Err(Error::InvalidParameter(format!(
                    "matrix {m_idx} has {} rows, expected {cities}",
                    matrix.len()
                )));
            }
            let mut flat = Vec::with_capacity(cities * cities);
            for (i, row) in matrix.iter().enumerate() {
                if row.len() != cities {
                    return Err(Error::InvalidParameter(format!(
                        "matrix {m_idx} row {i} has {} entries, expected {cities}",
                        row.len()
                    )));
                }
                for (j, &w) in row.iter().enumerate() {
                    if !w.is_finite() || w < 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "matrix {m_idx} entry ({i}, {j}) must be finite and non-negative"
                        )));
                    }
                    if i == j && w != 0.0 {
                        return Err(Error::InvalidParameter(format!(
                            "matrix {m_idx} diagonal entry ({i}, {i}) must be zero"
                        )));
                    }
                    if matrix[j][i] != w {
                        return Err(Error::InvalidParameter(format!(
                            "matrix {m_idx} is not symmetric at ({i}, {j})"
                        )));
                    }
                    flat.push(w);
                }
            }
            weights.push(flat);
        }
        Ok(MotspInstance { cities, weights })
    }

    /// Seeded random instance with integer symmetric costs in `1..=max_cost`.
    pub fn random_integer(
        cities: usize,
        objectives: usize,
        max_cost: u32,
        rng: &mut RngStream,
    ) -> Result<Self> {
        if max_cost == 0 {
            return Err(Error::InvalidParameter("max_cost must be positive".into()));
        }
        let mut matrices = vec![vec![vec![0.0; cities]; cities]; objectives];
        for matrix in &mut matrices {
            for i in 0..cities {
                for j in (i + 1)..cities {
                    let w = rng.gen_range(1..=max_cost) as f64;
                    matrix[i][j] = w;
                    matrix[j][i] = w;
                }
            }
        }
        MotspInstance::new(matrices)
    }

    pub fn cities(&self) -> usize {
        self.cities
    }

    pub fn num_objectives(&self) -> usize {
        self.weights.len()
    }

    pub fn weight(&self, objective: usize, from: usize, to: usize) -> f64 {
        self.weights[objective][from * self.cities + to]
    }
}

/// Tour costs of a permutation genome, one summed cycle per objective.
pub fn motsp_evaluate(instance: &MotspInstance, genome: &Genome) -> Result<ObjectiveVector> {
    let tour = genome.as_permutation()?;
    if tour.len() != instance.cities {
        return Err(Error::LengthMismatch(tour.len(), instance.cities));
    }
    let mut values = Vec::with_capacity(instance.num_objectives());
    for objective in 0..instance.num_objectives() {
        let mut cost = 0.0;
        for i in 0..tour.len() {
            let from = tour[i] as usize;
            let to = tour[(i + 1) % tour.len()] as usize;
            cost += instance.weight(objective, from, to);
        }
        values.push(cost);
    }
    ObjectiveVector::new(values, vec![Direction::Minimize; instance.num_objectives()])
}

/// A multi-objective TSP instance as a runnable problem.
#[derive(Clone, Debug)]
pub struct MotspProblem {
    instance: MotspInstance,
    directions: Vec<Direction>,
}

impl MotspProblem {
    pub fn new(instance: MotspInstance) -> Self {
        let directions = vec![Direction::Minimize; instance.num_objectives()];
        MotspProblem { instance, directions }
    }

    pub fn instance(&self) -> &MotspInstance {
        &self.instance
    }
}

impl Problem for MotspProblem {
    fn evaluate(&self, genome: &Genome) -> Result<ObjectiveVector> {
        motsp_evaluate(&self.instance, genome)
    }

    fn random_genome(&self, rng: &mut RngStream) -> Genome {
        let mut tour: Vec<u32> = (0..self.instance.cities as u32).collect();
        tour.shuffle(rng);
        Genome::Permutation(tour)
    }

    fn directions(&self) -> &[Direction] {
        &self.directions
    }

    fn space(&self) -> SearchSpace {
        SearchSpace::Permutations { cities: self.instance.cities }
    }
}

/// Search-space sizes [`brute_force_pareto`] will enumerate.
#[derive(Clone, Copy, Debug)]
pub struct EnumerationLimit {
    pub max_bits: usize,
    pub max_cities: usize,
}

impl Default for EnumerationLimit {
    fn default() -> Self {
        EnumerationLimit { max_bits: 20, max_cities: 9 }
    }
}

/// Exact Pareto front by exhaustive enumeration.
///
/// Bitstring spaces are walked completely; tour spaces are canonicalized
/// (first city fixed, orientation by the second city) so each of the
/// `(D-1)!/2` distinct cycles is evaluated once. Inner flags are all false.
pub fn brute_force_pareto(problem: &dyn Problem, limit: &EnumerationLimit) -> Result<ParetoFront> {
    let mut vectors: Vec<ObjectiveVector> = Vec::new();
    match problem.space() {
        SearchSpace::Bitstrings { len } => {
            if len > limit.max_bits {
                return Err(Error::EnumerationTooLarge(format!(
                    "bitstring length {len} exceeds the enumeration limit {}",
                    limit.max_bits
                )));
            }
            for code in 0u64..(1u64 << len) {
                let bits: Vec<bool> = (0..len).map(|j| code >> j & 1 == 1).collect();
                vectors.push(problem.evaluate(&Genome::Bitstring(bits))?);
            }
        }
        SearchSpace::Permutations { cities } => {
            if cities > limit.max_cities {
                return Err(Error::EnumerationTooLarge(format!(
                    "{cities} cities exceeds the enumeration limit {}",
                    limit.max_cities
                )));
            }
            let mut tour: Vec<u32> = (0..cities as u32).collect();
            let mut visit = |tour: &[u32]| -> Result<()> {
                // Orientation filter: keep one direction of each cycle.
                if tour.len() >= 3 && tour[1] > tour[tour.len() - 1] {
                    return Ok(());
                }
                vectors.push(problem.evaluate(&Genome::Permutation(tour.to_vec()))?);
                Ok(())
            };
            permute_tail(&mut tour, 1, &mut visit)?;
        }
    }
    let distinct = dedupe_vectors(vectors);
    let front = pareto_filter(distinct)?;
    let inner = vec![false; front.len()];
    ParetoFront::new(front, inner)
}

// Enumerates permutations of tour[start..] in place, first entries fixed.
fn permute_tail(
    tour: &mut Vec<u32>,
    start: usize,
    visit: &mut impl FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    if start + 1 >= tour.len() {
        return visit(tour);
    }
    for i in start..tour.len() {
        tour.swap(start, i);
        permute_tail(tour, start + 1, visit)?;
        tour.swap(start, i);
    }
    Ok(())
}

fn dedupe_vectors(vectors: Vec<ObjectiveVector>) -> Vec<ObjectiveVector> {
    let mut seen: HashSet<Vec<u64>> = HashSet::new();
    let mut out = Vec::new();
    for v in vectors {
        let key: Vec<u64> = v.values().iter().map(|x| x.to_bits()).collect();
        if seen.insert(key) {
            out.push(v);
        }
    }
    out
}

fn pareto_filter(mut distinct: Vec<ObjectiveVector>) -> Result<Vec<ObjectiveVector>> {
    if distinct.is_empty() {
        return Err(Error::EmptyInput("pareto_filter candidates"));
    }
    if distinct[0].len() == 2 {
        // Sweep: after sorting by the first objective descending, a point
        // survives iff it improves the best second objective seen so far.
        distinct.sort_by(|a, b| {
            (b.normalized(0), b.normalized(1))
                .partial_cmp(&(a.normalized(0), a.normalized(1)))
                .unwrap()
        });
        let mut best = f64::NEG_INFINITY;
        let mut out = Vec::new();
        for v in distinct {
            if v.normalized(1) > best {
                best = v.normalized(1);
                out.push(v);
            }
        }
        Ok(out)
    } else {
        let mut out = Vec::new();
        for i in 0..distinct.len() {
            let mut beaten = false;
            for j in 0..distinct.len() {
                if i != j && dominance(&distinct[j], &distinct[i])? == Dominance::ADominates {
                    beaten = true;
                    break;
                }
            }
            if !beaten {
                out.push(distinct[i].clone());
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits_with_ones(n: usize, ones: usize) -> Genome {
        Genome::Bitstring((0..n).map(|i| i < ones).collect())
    }

    #[test]
    fn ojzj_values_across_the_landscape() {
        let p = OjzjParams::new(10, 3).unwrap();
        let eval = |ones| ojzj_evaluate(&p, &bits_with_ones(10, ones)).unwrap();
        assert_eq!(eval(5).values(), &[8.0, 8.0]);
        assert_eq!(eval(10).values(), &[13.0, 3.0]);
        assert_eq!(eval(0).values(), &[3.0, 13.0]);
        assert_eq!(eval(8).values(), &[2.0, 5.0]);
        assert_eq!(eval(1).values(), &[4.0, 1.0]);
    }

    #[test]
    fn ojzj_parameter_validation() {
        assert!(OjzjParams::new(10, 3).is_ok());
        assert!(OjzjParams::new(5, 2).is_ok());
        assert!(OjzjParams::new(4, 2).is_err());
        assert!(OjzjParams::new(10, 1).is_err());
        assert!(OjzjParams::new(10, 5).is_err());
    }

    #[test]
    fn ojzj_front_closed_form() {
        let p = OjzjParams::new(10, 3).unwrap();
        let front = ojzj_pareto_front(&p);
        let expected: Vec<(f64, f64)> = vec![
            (3.0, 13.0),
            (6.0, 10.0),
            (7.0, 9.0),
            (8.0, 8.0),
            (9.0, 7.0),
            (10.0, 6.0),
            (13.0, 3.0),
        ];
        let got: Vec<(f64, f64)> =
            front.points().iter().map(|v| (v.value(0), v.value(1))).collect();
        assert_eq!(got, expected);
        assert_eq!(front.len(), 10 - 6 + 3);
        assert_eq!(front.inner_flags(), &[false, true, true, true, true, true, false]);
    }

    #[test]
    fn ojzj_front_matches_brute_force_small() {
        let p = OjzjProblem::new(OjzjParams::new(6, 2).unwrap());
        let brute = brute_force_pareto(&p, &EnumerationLimit::default()).unwrap();
        assert_eq!(brute.points(), p.known_front().unwrap().points());
    }

    // Also pins the sum identity: a vector lies on the front iff its
    // components add up to n + 2k.
    #[test]
    fn ojzj_front_matches_brute_force_everywhere_small() {
        for n in 5..=12 {
            for k in 2..((n + 1) / 2) {
                let p = OjzjProblem::new(OjzjParams::new(n, k).unwrap());
                let brute = brute_force_pareto(&p, &EnumerationLimit::default()).unwrap();
                let front = p.known_front().unwrap();
                assert_eq!(brute.points(), front.points(), "n={n} k={k}");
                for code in 0u64..(1u64 << n) {
                    let bits: Vec<bool> = (0..n).map(|j| code >> j & 1 == 1).collect();
                    let v = p.evaluate(&Genome::Bitstring(bits)).unwrap();
                    let on_front = front.contains(&v);
                    let sum = v.value(0) + v.value(1);
                    assert_eq!(on_front, sum == (n + 2 * k) as f64);
                    assert!(sum <= (n + 2 * k) as f64);
                }
            }
        }
    }

    fn tiny_motsp() -> MotspInstance {
        let m1 = vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 3.0],
            vec![2.0, 3.0, 0.0],
        ];
        MotspInstance::new(vec![m1.clone(), m1]).unwrap()
    }

    #[test]
    fn motsp_tour_cost() {
        let inst = tiny_motsp();
        let v = motsp_evaluate(&inst, &Genome::Permutation(vec![0, 1, 2])).unwrap();
        assert_eq!(v.values(), &[6.0, 6.0]);
        assert_eq!(v.directions(), &[Direction::Minimize; 2]);
    }

    #[test]
    fn motsp_cost_is_rotation_and_reversal_invariant() {
        let mut rng = RngStream::new(77, 0);
        let inst = MotspInstance::random_integer(7, 2, 50, &mut rng).unwrap();
        for _ in 0..200 {
            let mut tour: Vec<u32> = (0..7).collect();
            tour.shuffle(&mut rng);
            let base = motsp_evaluate(&inst, &Genome::Permutation(tour.clone())).unwrap();
            let mut rotated = tour.clone();
            rotated.rotate_left(rng.gen_range(0..7));
            let mut reversed = tour.clone();
            reversed.reverse();
            for other in [rotated, reversed] {
                let v = motsp_evaluate(&inst, &Genome::Permutation(other)).unwrap();
                assert_eq!(v.values(), base.values());
            }
        }
    }

    #[test]
    fn motsp_instance_validation() {
        let bad_diag = vec![vec![vec![1.0, 2.0], vec![2.0, 0.0]]; 2];
        assert!(MotspInstance::new(bad_diag).is_err());
        let asymmetric = vec![vec![vec![0.0, 2.0], vec![3.0, 0.0]]; 2];
        assert!(MotspInstance::new(asymmetric).is_err());
        let single = vec![vec![vec![0.0, 2.0], vec![2.0, 0.0]]];
        assert!(MotspInstance::new(single).is_err());
        let negative = vec![vec![vec![0.0, -2.0], vec![-2.0, 0.0]]; 2];
        assert!(MotspInstance::new(negative).is_err());
    }

    #[test]
    fn motsp_brute_force_three_cities_is_one_tour() {
        let p = MotspProblem::new(tiny_motsp());
        let front = brute_force_pareto(&p, &EnumerationLimit::default()).unwrap();
        assert_eq!(front.len(), 1);
        assert_eq!(front.points()[0].values(), &[6.0, 6.0]);
    }

    #[test]
    fn motsp_brute_force_matches_independent_enumeration() {
        let mut rng = RngStream::new(123, 0);
        let inst = MotspInstance::random_integer(4, 2, 20, &mut rng).unwrap();
        let p = MotspProblem::new(inst.clone());
        let front = brute_force_pareto(&p, &EnumerationLimit::default()).unwrap();

        // All three distinct 4-city cycles, spelled out.
        let tours: Vec<Vec<u32>> = vec![vec![0, 1, 2, 3], vec![0, 1, 3, 2], vec![0, 2, 1, 3]];
        let mut costs: Vec<Vec<f64>> = tours
            .iter()
            .map(|t| motsp_evaluate(&inst, &Genome::Permutation(t.clone())).unwrap().values().to_vec())
            .collect();
        costs.sort_by(|a, b| a.partial_cmp(b).unwrap());
        costs.dedup();
        let survivors: Vec<Vec<f64>> = costs
            .iter()
            .filter(|c| {
                !costs
                    .iter()
                    .any(|o| o != *c && o[0] <= c[0] && o[1] <= c[1] && (o[0] < c[0] || o[1] < c[1]))
            })
            .cloned()
            .collect();
        let got: Vec<Vec<f64>> = front.points().iter().map(|v| v.values().to_vec()).collect();
        assert_eq!(got, survivors);
    }

    #[test]
    fn brute_force_refuses_large_spaces() {
        let p = OjzjProblem::new(OjzjParams::new(21, 2).unwrap());
        assert!(matches!(
            brute_force_pareto(&p, &EnumerationLimit::default()),
            Err(Error::EnumerationTooLarge(_))
        ));
        let mut rng = RngStream::new(5, 0);
        let inst = MotspInstance::random_integer(10, 2, 9, &mut rng).unwrap();
        let p = MotspProblem::new(inst);
        assert!(matches!(
            brute_force_pareto(&p, &EnumerationLimit::default()),
            Err(Error::EnumerationTooLarge(_))
        ));
    }

    #[test]
    fn canonical_tour_enumeration_counts_cycles() {
        // (D-1)!/2 distinct cycles for D = 5.
        let mut rng = RngStream::new(6, 0);
        let inst = MotspInstance::random_integer(5, 2, 1, &mut rng).unwrap();
        let p = MotspProblem::new(inst);
        let mut count = 0usize;
        let mut tour: Vec<u32> = (0..5).collect();
        permute_tail(&mut tour, 1, &mut |t| {
            if t[1] < t[t.len() - 1] {
                count += 1;
            }
            Ok(())
        })
        .unwrap();
        assert_eq!(count, 12);
        // With all weights equal the front is a single point.
        assert_eq!(brute_force_pareto(&p, &EnumerationLimit::default()).unwrap().len(), 1);
    }

    #[test]
    fn pareto_front_constructor_rejects_bad_sets() {
        let a = ObjectiveVector::max2(1.0, 3.0);
        let b = ObjectiveVector::max2(2.0, 2.0);
        let dominated = ObjectiveVector::max2(1.0, 2.0);
        assert!(ParetoFront::new(vec![a.clone(), b.clone()], vec![false, false]).is_ok());
        assert!(ParetoFront::new(vec![a.clone(), dominated], vec![false, false]).is_err());
        assert!(ParetoFront::new(vec![a.clone(), a.clone()], vec![false, false]).is_err());
        assert!(ParetoFront::new(vec![], vec![]).is_err());
        assert!(ParetoFront::new(vec![a], vec![false, true]).is_err());
    }

    #[test]
    fn random_genomes_fit_the_space() {
        let mut rng = RngStream::new(9, 0);
        let oj = OjzjProblem::new(OjzjParams::new(10, 3).unwrap());
        let g = oj.random_genome(&mut rng);
        assert_eq!(g.as_bits().unwrap().len(), 10);

        let mo = MotspProblem::new(tiny_motsp());
        let g = mo.random_genome(&mut rng);
        assert!(Genome::permutation(g.as_permutation().unwrap().to_vec()).is_ok());
    }
}
