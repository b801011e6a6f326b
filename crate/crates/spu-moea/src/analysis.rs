//! Solution-set quality indicators, the rank-sum significance test used to
//! compare experiment scenarios, and the closed-form runtime-bound
//! calculator for the two optimizers.

use std::collections::HashSet;
use std::f64::consts::E;

use serde::{Deserialize, Serialize};
use statrs::distribution::{ContinuousCDF, Normal};

use crate::core::{Individual, ObjectiveVector};
use crate::moea::Algorithm;
use crate::problems::ParetoFront;
use crate::{Error, Result};

/// Indicator summary of one solution set against a reference front.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IndicatorReport {
    /// Mean distance from each reference point to its nearest obtained point.
    pub igd: f64,
    /// Reference points whose objective vector is attained exactly.
    pub covered: usize,
    /// Size of the reference front.
    pub total_reference: usize,
}

/// Inverted generational distance: the mean over `reference` of the minimum
/// Euclidean distance (in raw objective values) to any point of `obtained`.
///
/// Zero exactly when every reference point is attained.
pub fn igd(reference: &[ObjectiveVector], obtained: &[ObjectiveVector]) -> Result<f64> {
    if reference.is_empty() {
        return Err(Error::EmptyInput("igd reference set"));
    }
    if obtained.is_empty() {
        return Err(Error::EmptyInput("igd obtained set"));
    }
    let dirs = reference[0].directions();
    if reference.iter().chain(obtained).any(|v| v.directions() != dirs) {
        return Err(Error::DirectionMismatch);
    }
    let total: f64 = reference
        .iter()
        .map(|r| obtained.iter().map(|o| euclidean(r, o)).fold(f64::INFINITY, f64::min))
        .sum();
    Ok(total / reference.len() as f64)
}

fn euclidean(x: &ObjectiveVector, y: &ObjectiveVector) -> f64 {
    x.values()
        .iter()
        .zip(y.values())
        .map(|(a, b)| (a - b) * (a - b))
        .sum::<f64>()
        .sqrt()
}

/// Number of distinct front points whose objective vector is exactly attained
/// by some solution. Compares raw values bitwise; callers supply solutions
/// evaluated under the same objectives as the front.
pub fn coverage(front: &ParetoFront, solutions: &[Individual]) -> usize {
    let attained: HashSet<Vec<u64>> = solutions.iter().map(|s| bits_key(&s.objectives)).collect();
    front.points().iter().filter(|p| attained.contains(&bits_key(p))).count()
}

fn bits_key(v: &ObjectiveVector) -> Vec<u64> {
    v.values().iter().map(|x| x.to_bits()).collect()
}

/// IGD and coverage of `solutions` against `reference` in one report.
pub fn indicator_report(reference: &ParetoFront, solutions: &[Individual]) -> Result<IndicatorReport> {
    let obtained: Vec<ObjectiveVector> = solutions.iter().map(|s| s.objectives.clone()).collect();
    Ok(IndicatorReport {
        igd: igd(reference.points(), &obtained)?,
        covered: coverage(reference, solutions),
        total_reference: front_len(reference),
    })
}

fn front_len(front: &ParetoFront) -> usize {
    front.points().len()
}

// ---------------------------------------------------------------------------
// Rank-sum test
// ---------------------------------------------------------------------------

struct RankSummary {
    /// Mann-Whitney U of the first sample, from midranks.
    u_a: f64,
    /// Sum of t^3 - t over tie groups, for the variance correction.
    tie_correction: f64,
    has_ties: bool,
}

fn rank_samples(a: &[f64], b: &[f64]) -> Result<RankSummary> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyInput("rank-sum sample"));
    }
    if a.iter().chain(b).any(|v| !v.is_finite()) {
        return Err(Error::InvalidParameter("rank-sum samples must be finite".into()));
    }
    let mut pooled: Vec<(f64, bool)> = a
        .iter()
        .map(|&v| (v, true))
        .chain(b.iter().map(|&v| (v, false)))
        .collect();
    pooled.sort_by(|x, y| x.0.partial_cmp(&y.0).expect("finite values"));

    let mut rank_sum_a = 0.0;
    let mut tie_correction = 0.0;
    let mut has_ties = false;
    let mut i = 0;
    while i < pooled.len() {
        let mut j = i + 1;
        while j < pooled.len() && pooled[j].0 == pooled[i].0 {
            j += 1;
        }
        // Tied block occupies ranks i+1..=j; every member gets the average.
        let midrank = (i + 1 + j) as f64 / 2.0;
        if j - i > 1 {
            has_ties = true;
            let t = (j - i) as f64;
            tie_correction += t * t * t - t;
        }
        rank_sum_a += midrank * pooled[i..j].iter().filter(|p| p.1).count() as f64;
        i = j;
    }
    let n_a = a.len() as f64;
    Ok(RankSummary { u_a: rank_sum_a - n_a * (n_a + 1.0) / 2.0, tie_correction, has_ties })
}

/// Two-sided rank-sum test. Returns the Mann-Whitney U of `a` (midranks for
/// ties) and a two-sided p-value: the exact tail distribution when the pooled
/// sample is tie-free and has at most 12 observations, otherwise a normal
/// approximation with tie and continuity corrections.
pub fn wilcoxon_rank_sum(a: &[f64], b: &[f64]) -> Result<(f64, f64)> {
    let ranks = rank_samples(a, b)?;
    let p = if !ranks.has_ties && a.len() + b.len() <= 12 {
        wilcoxon_exact_p(a, b)?
    } else {
        normal_p(a.len(), b.len(), ranks.u_a, ranks.tie_correction)
    };
    Ok((ranks.u_a, p))
}

/// Exact two-sided rank-sum p-value: twice the smaller inclusive tail of the
/// exact U distribution, clamped at 1. The distribution is built by a counting
/// recurrence, not enumeration. Refuses ties and pooled sizes above 64.
pub fn wilcoxon_exact_p(a: &[f64], b: &[f64]) -> Result<f64> {
    let ranks = rank_samples(a, b)?;
    if ranks.has_ties {
        return Err(Error::InvalidParameter("exact rank-sum p-value requires tie-free samples".into()));
    }
    let (n, m) = (a.len(), b.len());
    if n + m > 64 {
        return Err(Error::EnumerationTooLarge(format!(
            "pooled size {} exceeds the exact-distribution cap of 64",
            n + m
        )));
    }
    // Tie-free midranks are integers, so U is too.
    let u_obs = ranks.u_a.round() as u64;
    let nm = (n * m) as u64;
    let counts = u_distribution(n, m);
    let total: u128 = counts.iter().sum();
    let cutoff = u_obs.min(nm - u_obs) as usize;
    let tail: u128 = counts[..=cutoff].iter().sum();
    Ok((2.0 * (tail as f64 / total as f64)).min(1.0))
}

/// Number of size-`n`/size-`m` sample interleavings attaining each U value.
///
/// Recurrence on the largest pooled observation: if it belongs to the first
/// sample it outranks all `j` remaining second-sample values, else it adds
/// nothing — N(i, j, u) = N(i-1, j, u-j) + N(i, j-1, u).
fn u_distribution(n: usize, m: usize) -> Vec<u128> {
    let width = n * m + 1;
    let mut rows: Vec<Vec<u128>> = (0..=m)
        .map(|_| {
            let mut row = vec![0u128; width];
            row[0] = 1; // i = 0: the empty first sample has U = 0
            row
        })
        .collect();
    for _i in 1..=n {
        // rows[0] stays (1, 0, ..): with no second-sample values, U = 0.
        for j in 1..=m {
            let (done, pending) = rows.split_at_mut(j);
            let prev_j = &done[j - 1]; // already advanced to i
            let cur = &mut pending[0]; // still at i - 1
            for u in (0..width).rev() {
                let from_first = if u >= j { cur[u - j] } else { 0 };
                cur[u] = from_first + prev_j[u];
            }
        }
    }
    rows.pop().expect("m + 1 rows")
}

/// Two-sided normal-approximation rank-sum p-value with midranks, tie-corrected
/// variance, and a 0.5 continuity correction. Degenerate pooled samples (all
/// observations equal) have zero variance and return 1.
pub fn wilcoxon_normal_approx_p(a: &[f64], b: &[f64]) -> Result<f64> {
    let ranks = rank_samples(a, b)?;
    Ok(normal_p(a.len(), b.len(), ranks.u_a, ranks.tie_correction))
}

fn normal_p(n: usize, m: usize, u_a: f64, tie_correction: f64) -> f64 {
    let n_f = n as f64;
    let m_f = m as f64;
    let pooled = n_f + m_f;
    let mean = n_f * m_f / 2.0;
    let variance = n_f * m_f / 12.0 * ((pooled + 1.0) - tie_correction / (pooled * (pooled - 1.0)));
    if variance <= 0.0 {
        return 1.0;
    }
    let z = ((u_a - mean).abs() - 0.5).max(0.0) / variance.sqrt();
    let normal = Normal::new(0.0, 1.0).expect("unit normal");
    (2.0 * (1.0 - normal.cdf(z))).clamp(0.0, 1.0)
}

// ---------------------------------------------------------------------------
// Runtime-bound calculator
// ---------------------------------------------------------------------------

/// Inputs to the runtime-bound formulas.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoundInputs {
    pub n: usize,
    pub k: usize,
    pub mu: usize,
    pub p_s: f64,
    pub p_c: f64,
    pub variant: Algorithm,
}

impl BoundInputs {
    fn validate(&self) -> Result<()> {
        if self.n == 0 || self.k == 0 || self.mu == 0 {
            return Err(Error::InvalidParameter("n, k, and mu must be positive".into()));
        }
        if !(self.p_s > 0.0 && self.p_s <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "survival probability must lie in (0, 1], got {}",
                self.p_s
            )));
        }
        if !(0.0..1.0).contains(&self.p_c) {
            return Err(Error::InvalidParameter(format!(
                "crossover probability must lie in [0, 1), got {}",
                self.p_c
            )));
        }
        Ok(())
    }

    /// Advisory checks against the parameter ranges under which the runtime
    /// guarantees are proved. Returns one message per violated range; the
    /// calculator itself accepts any valid inputs, so these are warnings, not
    /// errors.
    pub fn bound_range_warnings(&self) -> Vec<String> {
        let mut warnings = Vec::new();
        let n = self.n as f64;
        let k = self.k as f64;
        let mu = self.mu as f64;
        if self.k < 2 || 2 * self.k >= self.n {
            warnings.push(format!(
                "the benchmark requires 2 <= k < n/2; got n = {}, k = {}",
                self.n, self.k
            ));
        }
        if !(self.p_s > 0.0 && self.p_s < 1.0) {
            warnings.push(format!("survival probability p_s = {} lies outside (0, 1)", self.p_s));
        }
        if !(0.0..1.0).contains(&self.p_c) {
            warnings.push(format!(
                "crossover probability p_c = {} lies outside [0, 1); the guarantees need 1 - p_c > 0",
                self.p_c
            ));
        }
        match self.variant {
            Algorithm::SmsEmoa => {
                let floor = 1.0 / (mu + 1.0);
                if self.p_s < floor {
                    warnings.push(format!(
                        "the steady-state guarantees assume p_s >= 1/(mu+1) = {floor:.6}; got {}",
                        self.p_s
                    ));
                }
                if self.p_s < 1.0 {
                    let need = (n - 2.0 * k + 4.0) / (1.0 - self.p_s);
                    if mu < need {
                        warnings.push(format!(
                            "without an archive the guarantee needs mu >= (n-2k+4)/(1-p_s) = {need:.2}; got mu = {}",
                            self.mu
                        ));
                    }
                }
                if self.mu < 3 {
                    warnings.push(format!(
                        "with an archive the guarantee needs mu >= 3; got mu = {}",
                        self.mu
                    ));
                } else {
                    let cap = (mu - 2.0) / (mu + 1.0);
                    if self.p_s > cap {
                        warnings.push(format!(
                            "with an archive the guarantee needs p_s <= (mu-2)/(mu+1) = {cap:.6}; got {}",
                            self.p_s
                        ));
                    }
                }
            }
            Algorithm::Nsga2 => {
                let floor = 1.0 / (2.0 * mu);
                if self.p_s < floor {
                    warnings.push(format!(
                        "the generational guarantees assume p_s >= 1/(2 mu) = {floor:.6}; got {}",
                        self.p_s
                    ));
                }
                if self.p_s >= 0.5 {
                    warnings.push(format!(
                        "without an archive the guarantee assumes p_s < 1/2; got p_s = {}",
                        self.p_s
                    ));
                } else {
                    let need = 4.0 * (n - 2.0 * k + 3.0) / (1.0 - 2.0 * self.p_s);
                    if mu < need {
                        warnings.push(format!(
                            "without an archive the guarantee needs mu >= 4(n-2k+3)/(1-2 p_s) = {need:.2}; got mu = {}",
                            self.mu
                        ));
                    }
                }
                if self.mu < 5 {
                    warnings.push(format!(
                        "with an archive the guarantee needs mu >= 5; got mu = {}",
                        self.mu
                    ));
                } else {
                    let cap = (mu - 4.0) / (2.0 * mu);
                    if self.p_s > cap {
                        warnings.push(format!(
                            "with an archive the guarantee needs p_s <= (mu-4)/(2 mu) = {cap:.6}; got {}",
                            self.p_s
                        ));
                    }
                }
            }
        }
        if self.p_c == 0.0 {
            warnings.push(
                "with an archive the guarantee assumes crossover occurs with constant probability; p_c = 0 disables it"
                    .into(),
            );
        }
        warnings
    }
}

/// The constant governing the stepping-stone trade-off: e*mu/(p_s*(1-p_c)) for
/// the steady-state optimizer, e/(p_s*(1-p_c)) for the generational one.
pub fn bound_c(inp: &BoundInputs) -> Result<f64> {
    inp.validate()?;
    let denom = inp.p_s * (1.0 - inp.p_c);
    Ok(match inp.variant {
        Algorithm::SmsEmoa => E * inp.mu as f64 / denom,
        Algorithm::Nsga2 => E / denom,
    })
}

/// Number of stepping-stone stages minimizing (M+1)^(1-k) * C^M: zero when the
/// continuous optimum (k-1)/ln C - 1 is non-positive, otherwise its ceiling.
/// Lands within one unit of the discrete argmin because the log of the
/// objective is convex in M.
pub fn optimal_m(k: usize, c: f64) -> Result<u64> {
    if k == 0 {
        return Err(Error::InvalidParameter("jump width k must be at least 1".into()));
    }
    if !c.is_finite() || c <= 1.0 {
        return Err(Error::InvalidParameter(format!("bound constant must exceed 1, got {c}")));
    }
    let ln_c = c.ln();
    let k_minus_1 = (k - 1) as f64;
    if k_minus_1 <= ln_c {
        return Ok(0);
    }
    Ok((k_minus_1 / ln_c - 1.0).ceil() as u64)
}

/// A runtime upper-bound score in both scales.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BoundValue {
    /// Natural log of the bound; finite even when the linear value overflows.
    pub ln: f64,
    /// mu * n^k * min(1, (e ln C / k)^(k-1)); may saturate to infinity.
    pub linear: f64,
}

/// Evaluates mu * n^k * min(1, (e ln C / k)^(k-1)) with C per [`bound_c`].
///
/// This is a comparable score with the constants of the underlying O(.)
/// dropped, not a predicted evaluation count.
pub fn bound_value(inp: &BoundInputs) -> Result<BoundValue> {
    let c = bound_c(inp)?;
    let k = inp.k as f64;
    let ratio = E * c.ln() / k;
    let factor_ln = if ratio >= 1.0 { 0.0 } else { (k - 1.0) * ratio.ln() };
    let mu = inp.mu as f64;
    let n = inp.n as f64;
    Ok(BoundValue {
        ln: mu.ln() + k * n.ln() + factor_ln,
        linear: mu * n.powi(inp.k as i32) * if ratio >= 1.0 { 1.0 } else { factor_ln.exp() },
    })
}

/// Lower bound on the probability that one offspring chain crosses the
/// fitness valley in `jumps + 1` stages, evaluated in log space:
/// (1-p_c) (M+1)^k / (e mu n^k) * C^-M for the steady-state optimizer and
/// p_s^M (1-p_c)^(M+1) (M+1)^k / (e^(M+1) n^k) for the generational one.
pub fn trail_probability_lb(inp: &BoundInputs, jumps: u64) -> Result<f64> {
    inp.validate()?;
    let m = jumps as f64;
    let k = inp.k as f64;
    let ln_n = (inp.n as f64).ln();
    let ln_p = match inp.variant {
        Algorithm::SmsEmoa => {
            let c = bound_c(inp)?;
            (1.0 - inp.p_c).ln() + k * (m + 1.0).ln()
                - 1.0
                - (inp.mu as f64).ln()
                - k * ln_n
                - m * c.ln()
        }
        Algorithm::Nsga2 => {
            m * inp.p_s.ln() + (m + 1.0) * (1.0 - inp.p_c).ln() + k * (m + 1.0).ln()
                - (m + 1.0)
                - k * ln_n
        }
    };
    Ok(ln_p.exp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::core::{Direction, Genome, RngStream};
    use crate::oracle::{self, OracleBudget};
    use crate::problems::{OjzjParams, OjzjProblem, Problem};
    use rand::Rng;

    fn vec2(f1: f64, f2: f64) -> ObjectiveVector {
        ObjectiveVector::max2(f1, f2)
    }

    fn ojzj_individuals(problem: &OjzjProblem, bitstrings: &[Vec<bool>]) -> Vec<Individual> {
        bitstrings
            .iter()
            .map(|bits| {
                let genome = Genome::Bitstring(bits.clone());
                let objectives = problem.evaluate(&genome).unwrap();
                Individual::new(genome, objectives)
            })
            .collect()
    }

    #[test]
    fn igd_hand_values() {
        let reference = vec![vec2(0.0, 0.0), vec2(1.0, 1.0)];
        let obtained = vec![vec2(0.0, 0.0)];
        assert_eq!(igd(&reference, &obtained).unwrap(), 2.0f64.sqrt() / 2.0);

        let superset = vec![vec2(1.0, 1.0), vec2(0.0, 0.0), vec2(9.0, 9.0)];
        assert_eq!(igd(&reference, &superset).unwrap(), 0.0);

        let single_ref = vec![vec2(0.0, 0.0)];
        let single_got = vec![vec2(3.0, 4.0)];
        assert_eq!(igd(&single_ref, &single_got).unwrap(), 5.0);
    }

    #[test]
    fn igd_rejects_empty_and_mismatched_inputs() {
        let reference = vec![vec2(0.0, 0.0)];
        assert!(matches!(igd(&[], &reference), Err(Error::EmptyInput(_))));
        assert!(matches!(igd(&reference, &[]), Err(Error::EmptyInput(_))));

        let minimized = ObjectiveVector::new(vec![0.0, 0.0], vec![Direction::Minimize; 2]).unwrap();
        assert!(matches!(igd(&reference, &[minimized.clone()]), Err(Error::DirectionMismatch)));
        let three = ObjectiveVector::new(vec![0.0; 3], vec![Direction::Maximize; 3]).unwrap();
        assert!(matches!(igd(&reference, &[three]), Err(Error::DirectionMismatch)));
    }

    #[test]
    fn igd_is_zero_exactly_when_every_reference_point_is_attained() {
        let mut rng = RngStream::new(77, 0);
        for _ in 0..100 {
            let m = 2 + rng.gen_range(0..2usize);
            let dirs = vec![Direction::Maximize; m];
            let mut reference: Vec<ObjectiveVector> = Vec::new();
            let mut seen = HashSet::new();
            while reference.len() < 5 {
                let vals: Vec<f64> = (0..m).map(|_| rng.gen_range(0..50) as f64).collect();
                if seen.insert(bits_key(&ObjectiveVector::new(vals.clone(), dirs.clone()).unwrap())) {
                    reference.push(ObjectiveVector::new(vals, dirs.clone()).unwrap());
                }
            }
            let mut covered_set = reference.clone();
            covered_set.push(ObjectiveVector::new(vec![999.0; m], dirs.clone()).unwrap());
            assert_eq!(igd(&reference, &covered_set).unwrap(), 0.0);

            // Reference points are distinct, so dropping one leaves it unmatched.
            let missing_one: Vec<ObjectiveVector> = reference[1..].to_vec();
            assert!(igd(&reference, &missing_one).unwrap() > 0.0);
        }
    }

    #[test]
    fn coverage_counts_exactly_attained_front_points() {
        let problem = OjzjProblem::new(OjzjParams::new(10, 3).unwrap());
        let front = problem.known_front().unwrap();
        assert_eq!(coverage(front, &[]), 0);

        let extremes = ojzj_individuals(&problem, &[vec![true; 10], vec![false; 10]]);
        assert_eq!(coverage(front, &extremes), 2);

        // Every bitstring of length 10: the attainable vectors include the
        // whole front, so coverage saturates at n - 2k + 3 = 7.
        let all: Vec<Vec<bool>> =
            (0..1u32 << 10).map(|code| (0..10).map(|i| code >> i & 1 == 1).collect()).collect();
        let everyone = ojzj_individuals(&problem, &all);
        assert_eq!(coverage(front, &everyone), 7);
    }

    #[test]
    fn indicator_report_combines_igd_and_coverage() {
        let problem = OjzjProblem::new(OjzjParams::new(10, 3).unwrap());
        let front = problem.known_front().unwrap();
        let extremes = ojzj_individuals(&problem, &[vec![true; 10], vec![false; 10]]);
        let report = indicator_report(front, &extremes).unwrap();
        assert_eq!(report.covered, 2);
        assert_eq!(report.total_reference, 7);
        assert!(report.igd > 0.0);

        let all: Vec<Vec<bool>> =
            (0..1u32 << 10).map(|code| (0..10).map(|i| code >> i & 1 == 1).collect()).collect();
        let full = indicator_report(front, &ojzj_individuals(&problem, &all)).unwrap();
        assert_eq!(full.covered, full.total_reference);
        assert_eq!(full.igd, 0.0);
    }

    #[test]
    fn rank_sum_separated_samples_give_exact_tenth() {
        let (u, p) = wilcoxon_rank_sum(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]).unwrap();
        assert_eq!(u, 0.0);
        assert_eq!(p, 0.1);
    }

    #[test]
    fn rank_sum_identical_samples_give_p_one() {
        let sample = [3.0, 1.0, 4.0];
        let (_, p) = wilcoxon_rank_sum(&sample, &sample).unwrap();
        assert_eq!(p, 1.0);
        // Fully degenerate pooled sample: zero variance route.
        let (_, p) = wilcoxon_rank_sum(&[5.0, 5.0], &[5.0, 5.0, 5.0]).unwrap();
        assert_eq!(p, 1.0);
    }

    #[test]
    fn rank_sum_large_disjoint_samples_are_significant() {
        let a: Vec<f64> = (1..=30).map(|v| v as f64).collect();
        let b: Vec<f64> = (31..=60).map(|v| v as f64).collect();
        let (u, p) = wilcoxon_rank_sum(&a, &b).unwrap();
        assert_eq!(u, 0.0);
        assert!(p < 0.05);
    }

    #[test]
    fn rank_sum_midranks_handle_cross_sample_ties() {
        // Pooled sort: 1, 2, 2, 2, 3 with the tied block at ranks 2..4 -> 3.
        let (u, p) = wilcoxon_rank_sum(&[1.0, 2.0, 2.0], &[2.0, 3.0]).unwrap();
        assert_eq!(u, 1.0);
        assert!(p > 0.0 && p <= 1.0);
    }

    #[test]
    fn exact_p_matches_enumeration_oracle() {
        let budget = OracleBudget::default();
        let mut rng = RngStream::new(501, 0);
        for _ in 0..200 {
            let n = rng.gen_range(1..=6usize);
            let m = rng.gen_range(1..=6usize);
            let picks = rand::seq::index::sample(&mut rng, 100_000, n + m);
            let values: Vec<f64> = picks.iter().map(|v| v as f64).collect();
            let (a, b) = values.split_at(n);
            let ours = wilcoxon_exact_p(a, b).unwrap();
            let oracle_p = oracle::exact_rank_sum_p(a, b, &budget).unwrap();
            assert_eq!(ours, oracle_p, "a={a:?} b={b:?}");
        }
    }

    #[test]
    fn exact_and_normal_p_agree_on_tie_free_ten_vs_ten() {
        let mut rng = RngStream::new(502, 0);
        for _ in 0..100 {
            let picks = rand::seq::index::sample(&mut rng, 1_000_000, 20);
            let values: Vec<f64> = picks.iter().map(|v| v as f64).collect();
            let (a, b) = values.split_at(10);
            let exact = wilcoxon_exact_p(a, b).unwrap();
            let approx = wilcoxon_normal_approx_p(a, b).unwrap();
            assert!(
                (exact - approx).abs() <= 0.02,
                "exact {exact} vs approx {approx} on a={a:?} b={b:?}"
            );
        }
    }

    #[test]
    fn exact_p_refuses_ties_and_oversized_samples() {
        assert!(matches!(
            wilcoxon_exact_p(&[1.0, 2.0], &[2.0, 3.0]),
            Err(Error::InvalidParameter(_))
        ));
        let big: Vec<f64> = (0..40).map(|v| v as f64).collect();
        let rest: Vec<f64> = (40..80).map(|v| v as f64).collect();
        assert!(matches!(wilcoxon_exact_p(&big, &rest), Err(Error::EnumerationTooLarge(_))));
        assert!(matches!(wilcoxon_rank_sum(&[], &[1.0]), Err(Error::EmptyInput(_))));
        assert!(matches!(
            wilcoxon_rank_sum(&[f64::NAN], &[1.0]),
            Err(Error::InvalidParameter(_))
        ));
    }

    #[test]
    fn bound_constant_hand_values_are_exact() {
        for n in [5usize, 10, 64, 1000] {
            let inp = BoundInputs {
                n,
                k: 3,
                mu: 2 * n,
                p_s: 0.5,
                p_c: 0.5,
                variant: Algorithm::SmsEmoa,
            };
            assert_eq!(bound_c(&inp).unwrap(), 8.0 * E * n as f64);
        }
        let small = BoundInputs { n: 10, k: 3, mu: 5, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        assert_eq!(bound_c(&small).unwrap(), 20.0 * E);
        let gen = BoundInputs { n: 10, k: 3, mu: 8, p_s: 0.25, p_c: 0.0, variant: Algorithm::Nsga2 };
        assert_eq!(bound_c(&gen).unwrap(), 4.0 * E);
    }

    #[test]
    fn bound_constant_rejects_degenerate_probabilities() {
        let mut inp = BoundInputs { n: 10, k: 3, mu: 8, p_s: 0.0, p_c: 0.5, variant: Algorithm::SmsEmoa };
        assert!(bound_c(&inp).is_err());
        inp.p_s = 0.5;
        inp.p_c = 1.0;
        assert!(bound_c(&inp).is_err());
        inp.p_c = 0.5;
        inp.mu = 0;
        assert!(bound_c(&inp).is_err());
    }

    #[test]
    fn optimal_stage_count_hand_values() {
        assert_eq!(optimal_m(3, 20.0 * E).unwrap(), 0);
        assert_eq!(optimal_m(40, 4.0 * E).unwrap(), 16);
        assert_eq!(optimal_m(1, 1.5).unwrap(), 0);
        assert!(optimal_m(3, 1.0).is_err());
        assert!(optimal_m(0, 4.0).is_err());
    }

    #[test]
    fn optimal_stage_count_is_within_one_of_the_discrete_argmin() {
        for k in 2usize..=50 {
            for c in [4.0 * E, 8.0 * E, 20.0 * E, 8.0 * E * 64.0] {
                let ln_c = c.ln();
                // Minimize the log of (M+1)^(1-k) C^M directly.
                let argmin = (0..=5 * k as u64)
                    .min_by(|&x, &y| {
                        let g = |m: u64| m as f64 * ln_c - (k as f64 - 1.0) * (m as f64 + 1.0).ln();
                        g(x).partial_cmp(&g(y)).unwrap()
                    })
                    .unwrap();
                let ours = optimal_m(k, c).unwrap();
                assert!(
                    ours.abs_diff(argmin) <= 1,
                    "k={k} C={c}: ours {ours} argmin {argmin}"
                );
            }
        }
    }

    #[test]
    fn bound_value_clamps_to_population_times_power() {
        let inp = BoundInputs { n: 10, k: 3, mu: 16, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        let value = bound_value(&inp).unwrap();
        assert_eq!(value.linear, 16.0 * 1000.0);
        assert_eq!(value.ln, 16.0f64.ln() + 3.0 * 10.0f64.ln());
    }

    #[test]
    fn bound_value_shrinks_with_the_archived_population_size() {
        let large = BoundInputs { n: 64, k: 8, mu: 128, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        let small = BoundInputs { mu: 5, ..large };
        let big_value = bound_value(&large).unwrap();
        let small_value = bound_value(&small).unwrap();
        assert!(small_value.linear < big_value.linear);
        assert!(small_value.ln < big_value.ln);

        // Same comparison where the clamp is inactive on both sides.
        let steep_large = BoundInputs { n: 200, k: 50, ..large };
        let steep_small = BoundInputs { mu: 5, ..steep_large };
        let sl = bound_value(&steep_large).unwrap();
        let ss = bound_value(&steep_small).unwrap();
        assert!(ss.ln < sl.ln);
        assert!(ss.linear < sl.linear);
    }

    #[test]
    fn generational_bound_never_exceeds_steady_state_bound() {
        for n in [10usize, 30, 64] {
            for k in [2usize, 3, 8, 20] {
                if 2 * k >= n {
                    continue;
                }
                for mu in [2usize, 5, 16, 128] {
                    for p_s in [0.25, 0.5] {
                        for p_c in [0.0, 0.5] {
                            let sms = BoundInputs { n, k, mu, p_s, p_c, variant: Algorithm::SmsEmoa };
                            let nsga = BoundInputs { variant: Algorithm::Nsga2, ..sms };
                            let sv = bound_value(&sms).unwrap();
                            let nv = bound_value(&nsga).unwrap();
                            assert!(nv.ln <= sv.ln, "{nsga:?}");
                            assert!(nv.linear <= sv.linear, "{nsga:?}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn trail_probability_hand_value_and_ranges() {
        let inp = BoundInputs { n: 10, k: 3, mu: 16, p_s: 0.5, p_c: 0.0, variant: Algorithm::SmsEmoa };
        let p = trail_probability_lb(&inp, 0).unwrap();
        let direct = 1.0 / (E * 16.0 * 1000.0);
        assert!((p / direct - 1.0).abs() < 1e-12);

        let gen = BoundInputs { variant: Algorithm::Nsga2, ..inp };
        let p1 = trail_probability_lb(&gen, 1).unwrap();
        let direct1 = 0.5 * 1.0 * 8.0 / (E * E * 1000.0);
        assert!((p1 / direct1 - 1.0).abs() < 1e-12);

        for variant in [Algorithm::SmsEmoa, Algorithm::Nsga2] {
            for jumps in 0..=10u64 {
                for k in [2usize, 3, 8] {
                    for n in [10usize, 50] {
                        let inp = BoundInputs { n, k, mu: 16, p_s: 0.25, p_c: 0.5, variant };
                        let p = trail_probability_lb(&inp, jumps).unwrap();
                        assert!(p > 0.0 && p <= 1.0, "{inp:?} jumps={jumps} p={p}");
                    }
                }
            }
        }
    }

    #[test]
    fn trail_probability_decreases_with_problem_size() {
        let mut previous = f64::INFINITY;
        for n in [10usize, 11, 12, 20] {
            let inp = BoundInputs { n, k: 3, mu: 16, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
            let p = trail_probability_lb(&inp, 2).unwrap();
            assert!(p < previous);
            previous = p;
        }
    }

    #[test]
    fn range_warnings_are_empty_inside_the_proven_regime() {
        let sms = BoundInputs { n: 12, k: 3, mu: 20, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        assert!(sms.bound_range_warnings().is_empty(), "{:?}", sms.bound_range_warnings());
        let nsga = BoundInputs { n: 12, k: 3, mu: 72, p_s: 0.25, p_c: 0.5, variant: Algorithm::Nsga2 };
        assert!(nsga.bound_range_warnings().is_empty(), "{:?}", nsga.bound_range_warnings());
    }

    #[test]
    fn range_warnings_flag_each_violated_condition() {
        let tiny = BoundInputs { n: 12, k: 3, mu: 2, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        let messages = tiny.bound_range_warnings();
        assert!(messages.iter().any(|w| w.contains("mu >= 3")));
        assert!(messages.iter().any(|w| w.contains("(n-2k+4)/(1-p_s)")));

        let half = BoundInputs { n: 12, k: 3, mu: 72, p_s: 0.5, p_c: 0.5, variant: Algorithm::Nsga2 };
        assert!(half.bound_range_warnings().iter().any(|w| w.contains("p_s < 1/2")));

        let short = BoundInputs { n: 12, k: 3, mu: 70, p_s: 0.25, p_c: 0.5, variant: Algorithm::Nsga2 };
        assert!(short
            .bound_range_warnings()
            .iter()
            .any(|w| w.contains("4(n-2k+3)/(1-2 p_s)")));

        let no_crossover = BoundInputs { n: 12, k: 3, mu: 72, p_s: 0.25, p_c: 0.0, variant: Algorithm::Nsga2 };
        assert!(no_crossover.bound_range_warnings().iter().any(|w| w.contains("p_c = 0")));

        let bad_k = BoundInputs { n: 10, k: 5, mu: 20, p_s: 0.5, p_c: 0.5, variant: Algorithm::SmsEmoa };
        assert!(bad_k.bound_range_warnings().iter().any(|w| w.contains("2 <= k < n/2")));
    }
}
