//! Variation operators: one-point and uniform crossover plus bit-wise
//! mutation on bitstrings, order crossover plus segment inversion on
//! permutations, and the configuration that selects among them.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::core::{Genome, RngStream};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BitstringCrossover {
    OnePoint,
    Uniform,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationCrossover {
    Order,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PermutationMutation {
    Inversion,
}

/// Operator selection shared by both algorithms. `mutation_rate` of `None`
/// means one over the genome length.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct VariationConfig {
    pub mutation_rate: Option<f64>,
    pub bitstring_crossover: BitstringCrossover,
    pub permutation_crossover: PermutationCrossover,
    pub permutation_mutation: PermutationMutation,
}

impl Default for VariationConfig {
    fn default() -> Self {
        VariationConfig {
            mutation_rate: None,
            bitstring_crossover: BitstringCrossover::OnePoint,
            permutation_crossover: PermutationCrossover::Order,
            permutation_mutation: PermutationMutation::Inversion,
        }
    }
}

impl VariationConfig {
    pub fn validate(&self) -> Result<()> {
        if let Some(rate) = self.mutation_rate {
            if !(0.0..=1.0).contains(&rate) {
                return Err(Error::InvalidParameter(format!(
                    "mutation_rate must lie in [0, 1], got {rate}"
                )));
            }
        }
        Ok(())
    }
}

fn check_same_len<T>(x: &[T], y: &[T]) -> Result<()> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    if x.is_empty() {
        return Err(Error::EmptyInput("crossover parents"));
    }
    Ok(())
}

/// One-point crossover child at cut `i`: the first `i` bits of `x`, the rest
/// of `y`. `i` ranges over `1..=len`, so the first bit always comes from `x`.
pub fn one_point_crossover_single_at(x: &[bool], y: &[bool], i: usize) -> Result<Vec<bool>> {
    check_same_len(x, y)?;
    if i == 0 || i > x.len() {
        return Err(Error::InvalidParameter(format!("cut index {i} outside 1..={}", x.len())));
    }
    let mut child = x[..i].to_vec();
    child.extend_from_slice(&y[i..]);
    Ok(child)
}

pub fn one_point_crossover_single(x: &[bool], y: &[bool], rng: &mut RngStream) -> Result<Vec<bool>> {
    check_same_len(x, y)?;
    let i = rng.gen_range(1..=x.len());
    one_point_crossover_single_at(x, y, i)
}

/// Both one-point children for a shared cut index.
pub fn one_point_crossover_pair_at(
    x: &[bool],
    y: &[bool],
    i: usize,
) -> Result<(Vec<bool>, Vec<bool>)> {
    Ok((one_point_crossover_single_at(x, y, i)?, one_point_crossover_single_at(y, x, i)?))
}

pub fn one_point_crossover_pair(
    x: &[bool],
    y: &[bool],
    rng: &mut RngStream,
) -> Result<(Vec<bool>, Vec<bool>)> {
    check_same_len(x, y)?;
    let i = rng.gen_range(1..=x.len());
    one_point_crossover_pair_at(x, y, i)
}

/// Uniform crossover: each position independently keeps or swaps the parent
/// bits with probability one half; the children are complementary.
pub fn uniform_crossover_pair(
    x: &[bool],
    y: &[bool],
    rng: &mut RngStream,
) -> Result<(Vec<bool>, Vec<bool>)> {
    check_same_len(x, y)?;
    let mut a = Vec::with_capacity(x.len());
    let mut b = Vec::with_capacity(x.len());
    for j in 0..x.len() {
        if rng.gen::<bool>() {
            a.push(x[j]);
            b.push(y[j]);
        } else {
            a.push(y[j]);
            b.push(x[j]);
        }
    }
    Ok((a, b))
}

pub fn uniform_crossover_single(x: &[bool], y: &[bool], rng: &mut RngStream) -> Result<Vec<bool>> {
    check_same_len(x, y)?;
    Ok((0..x.len()).map(|j| if rng.gen::<bool>() { x[j] } else { y[j] }).collect())
}

/// Flips every bit independently with probability `rate`.
pub fn bitwise_mutation(x: &[bool], rate: f64, rng: &mut RngStream) -> Result<Vec<bool>> {
    if !(0.0..=1.0).contains(&rate) {
        return Err(Error::InvalidParameter(format!("mutation rate must lie in [0, 1], got {rate}")));
    }
    Ok(x.iter().map(|&bit| if rng.gen_bool(rate) { !bit } else { bit }).collect())
}

/// Order crossover with a fixed half-open segment `[a, b)`.
///
/// Child one copies `x`'s segment in place and fills the remaining positions,
/// cyclically from `b`, with `y`'s cities in the order they appear from `b`;
/// child two swaps the parent roles.
pub fn order_crossover_with_segment(
    x: &[u32],
    y: &[u32],
    a: usize,
    b: usize,
) -> Result<(Vec<u32>, Vec<u32>)> {
    check_same_len(x, y)?;
    if a > b || b > x.len() {
        return Err(Error::InvalidParameter(format!("segment [{a}, {b}) outside 0..={}", x.len())));
    }
    let fill = |seg_parent: &[u32], other: &[u32]| -> Vec<u32> {
        let d = seg_parent.len();
        let mut child = vec![0u32; d];
        let mut used = vec![false; d];
        child[a..b].copy_from_slice(&seg_parent[a..b]);
        for &v in &seg_parent[a..b] {
            used[v as usize] = true;
        }
        let mut pos = b % d.max(1);
        for step in 0..d {
            let v = other[(b + step) % d];
            if used[v as usize] {
                continue;
            }
            while pos >= a && pos < b {
                pos = (pos + 1) % d;
            }
            child[pos] = v;
            used[v as usize] = true;
            pos = (pos + 1) % d;
        }
        child
    };
    Ok((fill(x, y), fill(y, x)))
}

pub fn order_crossover(x: &[u32], y: &[u32], rng: &mut RngStream) -> Result<(Vec<u32>, Vec<u32>)> {
    check_same_len(x, y)?;
    let c1 = rng.gen_range(0..=x.len());
    let c2 = rng.gen_range(0..=x.len());
    order_crossover_with_segment(x, y, c1.min(c2), c1.max(c2))
}

/// Reverses the inclusive segment `[i, j]` (after ordering the endpoints).
pub fn inversion_mutation_at(x: &[u32], i: usize, j: usize) -> Result<Vec<u32>> {
    if i >= x.len() || j >= x.len() {
        return Err(Error::InvalidParameter(format!("positions ({i}, {j}) outside 0..{}", x.len())));
    }
    let (a, b) = (i.min(j), i.max(j));
    let mut out = x.to_vec();
    out[a..=b].reverse();
    Ok(out)
}

pub fn inversion_mutation(x: &[u32], rng: &mut RngStream) -> Result<Vec<u32>> {
    if x.is_empty() {
        return Err(Error::EmptyInput("inversion parent"));
    }
    let i = rng.gen_range(0..x.len());
    let j = rng.gen_range(0..x.len());
    inversion_mutation_at(x, i, j)
}

/// Single crossover child of two genomes of the same kind and length.
pub fn crossover_single(
    x: &Genome,
    y: &Genome,
    config: &VariationConfig,
    rng: &mut RngStream,
) -> Result<Genome> {
    match (x, y) {
        (Genome::Bitstring(a), Genome::Bitstring(b)) => {
            let child = match config.bitstring_crossover {
                BitstringCrossover::OnePoint => one_point_crossover_single(a, b, rng)?,
                BitstringCrossover::Uniform => uniform_crossover_single(a, b, rng)?,
            };
            Ok(Genome::Bitstring(child))
        }
        (Genome::Permutation(a), Genome::Permutation(b)) => {
            let PermutationCrossover::Order = config.permutation_crossover;
            let (child, _) = order_crossover(a, b, rng)?;
            Ok(Genome::Permutation(child))
        }
        _ => Err(Error::GenomeKind { expected: "matching" }),
    }
}

/// Both crossover children of two genomes of the same kind and length.
pub fn crossover_pair(
    x: &Genome,
    y: &Genome,
    config: &VariationConfig,
    rng: &mut RngStream,
) -> Result<(Genome, Genome)> {
    match (x, y) {
        (Genome::Bitstring(a), Genome::Bitstring(b)) => {
            let (c1, c2) = match config.bitstring_crossover {
                BitstringCrossover::OnePoint => one_point_crossover_pair(a, b, rng)?,
                BitstringCrossover::Uniform => uniform_crossover_pair(a, b, rng)?,
            };
            Ok((Genome::Bitstring(c1), Genome::Bitstring(c2)))
        }
        (Genome::Permutation(a), Genome::Permutation(b)) => {
            let PermutationCrossover::Order = config.permutation_crossover;
            let (c1, c2) = order_crossover(a, b, rng)?;
            Ok((Genome::Permutation(c1), Genome::Permutation(c2)))
        }
        _ => Err(Error::GenomeKind { expected: "matching" }),
    }
}

/// Mutates a genome: bit-wise flips at `mutation_rate` (default one over the
/// length) for bitstrings, one segment inversion for permutations.
pub fn mutate(genome: &Genome, config: &VariationConfig, rng: &mut RngStream) -> Result<Genome> {
    match genome {
        Genome::Bitstring(bits) => {
            let rate = config.mutation_rate.unwrap_or(1.0 / bits.len() as f64);
            Ok(Genome::Bitstring(bitwise_mutation(bits, rate, rng)?))
        }
        Genome::Permutation(perm) => {
            let PermutationMutation::Inversion = config.permutation_mutation;
            Ok(Genome::Permutation(inversion_mutation(perm, rng)?))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bits(s: &str) -> Vec<bool> {
        s.chars().map(|c| c == '1').collect()
    }

    #[test]
    fn one_point_cut_splits_parents() {
        let (x, y) = (bits("1111"), bits("0000"));
        assert_eq!(one_point_crossover_single_at(&x, &y, 2).unwrap(), bits("1100"));
        assert_eq!(one_point_crossover_single_at(&x, &y, 4).unwrap(), bits("1111"));
        let (c1, c2) = one_point_crossover_pair_at(&x, &y, 2).unwrap();
        assert_eq!((c1, c2), (bits("1100"), bits("0011")));
        assert!(one_point_crossover_single_at(&x, &y, 0).is_err());
        assert!(one_point_crossover_single_at(&x, &y, 5).is_err());
    }

    #[test]
    fn one_point_first_bit_comes_from_first_parent() {
        let (x, y) = (bits("1010"), bits("0101"));
        let mut rng = RngStream::new(11, 0);
        for _ in 0..10_000 {
            let child = one_point_crossover_single(&x, &y, &mut rng).unwrap();
            assert_eq!(child[0], x[0]);
        }
    }

    #[test]
    fn uniform_children_are_complementary() {
        let (x, y) = (bits("11111111"), bits("00000000"));
        let mut rng = RngStream::new(12, 0);
        let mut from_x = 0usize;
        for _ in 0..1000 {
            let (c1, c2) = uniform_crossover_pair(&x, &y, &mut rng).unwrap();
            for j in 0..x.len() {
                assert_ne!(c1[j], c2[j]);
            }
            from_x += c1.iter().filter(|&&b| b).count();
        }
        // Roughly half of the positions should keep the first parent.
        assert!((3600..=4400).contains(&from_x));
    }

    #[test]
    fn mutation_rate_extremes() {
        let x = bits("1010");
        let mut rng = RngStream::new(13, 0);
        assert_eq!(bitwise_mutation(&x, 0.0, &mut rng).unwrap(), x);
        assert_eq!(bitwise_mutation(&x, 1.0, &mut rng).unwrap(), bits("0101"));
        assert!(bitwise_mutation(&x, 1.5, &mut rng).is_err());
    }

    #[test]
    fn mutation_flip_count_tracks_binomial() {
        let n = 100usize;
        let x = vec![false; n];
        let rate = 1.0 / n as f64;
        let mut rng = RngStream::new(14, 0);
        let trials = 100_000usize;
        let mut buckets = [0usize; 4]; // 0, 1, 2, >=3 flips
        let mut total_flips = 0usize;
        for _ in 0..trials {
            let flips = bitwise_mutation(&x, rate, &mut rng).unwrap().iter().filter(|&&b| b).count();
            total_flips += flips;
            buckets[flips.min(3)] += 1;
        }
        let mean = total_flips as f64 / trials as f64;
        assert!((0.97..=1.03).contains(&mean), "mean flips {mean}");

        // Chi-square against Binomial(n, 1/n) over {0, 1, 2, >=3}.
        let q = 1.0 - rate;
        let p0 = q.powi(n as i32);
        let p1 = n as f64 * rate * q.powi(n as i32 - 1);
        let p2 = (n * (n - 1) / 2) as f64 * rate * rate * q.powi(n as i32 - 2);
        let expected = [p0, p1, p2, 1.0 - p0 - p1 - p2].map(|p| p * trials as f64);
        let chi2: f64 = buckets
            .iter()
            .zip(expected.iter())
            .map(|(&obs, &exp)| (obs as f64 - exp).powi(2) / exp)
            .sum();
        assert!(chi2 < 16.27, "chi-square {chi2} exceeds the 0.999 quantile for df=3");
    }

    #[test]
    fn order_crossover_traced_segment() {
        let x: Vec<u32> = vec![0, 1, 2, 3, 4, 5];
        let y: Vec<u32> = vec![5, 4, 3, 2, 1, 0];
        let (c1, c2) = order_crossover_with_segment(&x, &y, 2, 4).unwrap();
        assert_eq!(c1, vec![5, 4, 2, 3, 1, 0]);
        assert_eq!(c2, vec![0, 1, 3, 2, 4, 5]);
    }

    #[test]
    fn order_crossover_degenerate_segments() {
        let x: Vec<u32> = vec![0, 1, 2, 3];
        let y: Vec<u32> = vec![3, 2, 1, 0];
        let (c1, c2) = order_crossover_with_segment(&x, &y, 0, 4).unwrap();
        assert_eq!((c1, c2), (x.clone(), y.clone()));
        let (c1, _) = order_crossover_with_segment(&x, &x, 1, 3).unwrap();
        assert_eq!(c1, x);
    }

    #[test]
    fn order_crossover_always_yields_permutations() {
        let mut rng = RngStream::new(15, 0);
        for _ in 0..10_000 {
            let d = rng.gen_range(2..=9);
            let mut x: Vec<u32> = (0..d).collect();
            let mut y: Vec<u32> = (0..d).collect();
            for k in (1..d as usize).rev() {
                x.swap(k, rng.gen_range(0..=k));
                y.swap(k, rng.gen_range(0..=k));
            }
            let (c1, c2) = order_crossover(&x, &y, &mut rng).unwrap();
            assert!(Genome::permutation(c1).is_ok());
            assert!(Genome::permutation(c2).is_ok());
        }
    }

    #[test]
    fn inversion_reverses_segment() {
        let x: Vec<u32> = vec![0, 1, 2, 3];
        assert_eq!(inversion_mutation_at(&x, 1, 2).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(inversion_mutation_at(&x, 2, 1).unwrap(), vec![0, 2, 1, 3]);
        assert_eq!(inversion_mutation_at(&x, 0, 3).unwrap(), vec![3, 2, 1, 0]);
        assert_eq!(inversion_mutation_at(&x, 2, 2).unwrap(), x);
        let mut rng = RngStream::new(16, 0);
        for _ in 0..10_000 {
            let out = inversion_mutation(&x, &mut rng).unwrap();
            assert!(Genome::permutation(out).is_ok());
        }
    }

    #[test]
    fn genome_dispatch_enforces_kinds() {
        let cfg = VariationConfig::default();
        let mut rng = RngStream::new(17, 0);
        let b = Genome::bitstring(bits("1010")).unwrap();
        let p = Genome::permutation(vec![0, 1, 2, 3]).unwrap();
        assert!(matches!(
            crossover_single(&b, &p, &cfg, &mut rng),
            Err(Error::GenomeKind { .. })
        ));
        let child = crossover_single(&b, &b.clone(), &cfg, &mut rng).unwrap();
        assert_eq!(child, b);
        let mutated = mutate(&p, &cfg, &mut rng).unwrap();
        assert!(mutated.as_permutation().is_ok());
    }

    #[test]
    fn config_validation() {
        let mut cfg = VariationConfig::default();
        assert!(cfg.validate().is_ok());
        cfg.mutation_rate = Some(1.5);
        assert!(cfg.validate().is_err());
    }
}
