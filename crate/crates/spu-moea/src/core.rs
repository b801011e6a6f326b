//! Shared domain types: genomes, objective vectors, Pareto dominance, and
//! reproducible RNG streams.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

/// Optimization direction of a single objective component.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Maximize,
    Minimize,
}

/// A candidate solution's genotype.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Genome {
    /// Fixed-length bitstring, `len >= 1`.
    Bitstring(Vec<bool>),
    /// Permutation of `0..len`, each index exactly once.
    Permutation(Vec<u32>),
}

impl Genome {
    pub fn bitstring(bits: Vec<bool>) -> Result<Self> {
        if bits.is_empty() {
            return Err(Error::InvalidParameter("bitstring must be non-empty".into()));
        }
        Ok(Genome::Bitstring(bits))
    }

    pub fn permutation(perm: Vec<u32>) -> Result<Self> {
        let len = perm.len();
        let mut seen = vec![false; len];
        for &v in &perm {
            if (v as usize) >= len || seen[v as usize] {
                return Err(Error::InvalidPermutation { len });
            }
            seen[v as usize] = true;
        }
        Ok(Genome::Permutation(perm))
    }

    pub fn len(&self) -> usize {
        match self {
            Genome::Bitstring(b) => b.len(),
            Genome::Permutation(p) => p.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn as_bits(&self) -> Result<&[bool]> {
        match self {
            Genome::Bitstring(b) => Ok(b),
            Genome::Permutation(_) => Err(Error::GenomeKind { expected: "bitstring" }),
        }
    }

    pub fn as_permutation(&self) -> Result<&[u32]> {
        match self {
            Genome::Permutation(p) => Ok(p),
            Genome::Bitstring(_) => Err(Error::GenomeKind { expected: "permutation" }),
        }
    }
}

/// Number of one-bits of a bitstring genome.
pub fn ones_count(genome: &Genome) -> Result<usize> {
    Ok(genome.as_bits()?.iter().filter(|&&b| b).count())
}

/// An evaluated objective vector together with per-component directions.
///
/// All values are finite and there are at least two components; vectors may
/// only be compared when lengths and directions agree.
#[derive(Clone, Debug, PartialEq)]
pub struct ObjectiveVector {
    values: Vec<f64>,
    directions: Vec<Direction>,
}

impl ObjectiveVector {
    pub fn new(values: Vec<f64>, directions: Vec<Direction>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooFewObjectives(values.len()));
        }
        if values.len() != directions.len() {
            return Err(Error::LengthMismatch(values.len(), directions.len()));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteObjective);
        }
        Ok(ObjectiveVector { values, directions })
    }

    /// Bi-objective maximization vector; the common case in this crate.
    pub fn max2(f1: f64, f2: f64) -> Self {
        ObjectiveVector::new(vec![f1, f2], vec![Direction::Maximize; 2]).expect("finite pair")
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn value(&self, j: usize) -> f64 {
        self.values[j]
    }

    /// Component `j` mapped so that larger is always better.
    pub fn normalized(&self, j: usize) -> f64 {
        match self.directions[j] {
            Direction::Maximize => self.values[j],
            Direction::Minimize => -self.values[j],
        }
    }

    fn check_comparable(&self, other: &Self) -> Result<()> {
        if self.values.len() != other.values.len() {
            return Err(Error::LengthMismatch(self.values.len(), other.values.len()));
        }
        if self.directions != other.directions {
            return Err(Error::DirectionMismatch);
        }
        Ok(())
    }
}

/// Outcome of a pairwise dominance comparison.
///
/// `AWeaklyDominates`/`BWeaklyDominates` mark weak but non-strict dominance
/// of distinct vectors; for real-valued vectors that case coincides with
/// `Equal`, so [`dominance`] never constructs them, but consumers match on
/// the full relation via the predicate methods below.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Dominance {
    ADominates,
    BDominates,
    AWeaklyDominates,
    BWeaklyDominates,
    Equal,
    Incomparable,
}

impl Dominance {
    /// `a` is at least as good as `b` in every component.
    pub fn a_weakly_dominates(self) -> bool {
        matches!(self, Dominance::ADominates | Dominance::AWeaklyDominates | Dominance::Equal)
    }

    /// `b` is at least as good as `a` in every component.
    pub fn b_weakly_dominates(self) -> bool {
        matches!(self, Dominance::BDominates | Dominance::BWeaklyDominates | Dominance::Equal)
    }
}

/// Compares two objective vectors after normalizing all components to
/// maximization. Strict dominance needs weak dominance plus at least one
/// strictly better component.
pub fn dominance(a: &ObjectiveVector, b: &ObjectiveVector) -> Result<Dominance> {
    a.check_comparable(b)?;
    let mut a_better = false;
    let mut b_better = false;
    for j in 0..a.len() {
        let (x, y) = (a.normalized(j), b.normalized(j));
        if x > y {
            a_better = true;
        } else if y > x {
            b_better = true;
        }
    }
    Ok(match (a_better, b_better) {
        (false, false) => Dominance::Equal,
        (true, false) => Dominance::ADominates,
        (false, true) => Dominance::BDominates,
        (true, true) => Dominance::Incomparable,
    })
}

/// A genome paired with its cached evaluation.
///
/// Construction sites must pass the objectives produced by evaluating
/// `genome` on the problem at hand; the pair is never re-evaluated.
#[derive(Clone, Debug, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub objectives: ObjectiveVector,
}

impl Individual {
    pub fn new(genome: Genome, objectives: ObjectiveVector) -> Self {
        Individual { genome, objectives }
    }
}

/// Deterministic random stream addressed by `(seed, stream)`.
///
/// Backed by ChaCha8; the same address yields bit-identical draws on every
/// platform, and distinct stream ids yield independent sequences under one
/// seed.
#[derive(Clone, Debug)]
pub struct RngStream {
    seed: u64,
    stream: u64,
    inner: ChaCha8Rng,
}

impl RngStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut inner = ChaCha8Rng::seed_from_u64(seed);
        inner.set_stream(stream);
        RngStream { seed, stream, inner }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn stream(&self) -> u64 {
        self.stream
    }
}

impl RngCore for RngStream {
    fn next_u32(&mut self) -> u32 {
        self.inner.next_u32()
    }

    fn next_u64(&mut self) -> u64 {
        self.inner.next_u64()
    }

    fn fill_bytes(&mut self, dest: &mut [u8]) {
        self.inner.fill_bytes(dest)
    }

    fn try_fill_bytes(&mut self, dest: &mut [u8]) -> std::result::Result<(), rand::Error> {
        self.inner.try_fill_bytes(dest)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn vec_max(values: &[f64]) -> ObjectiveVector {
        ObjectiveVector::new(values.to_vec(), vec![Direction::Maximize; values.len()]).unwrap()
    }

    #[test]
    fn dominance_strict_on_shared_component() {
        let a = vec_max(&[3.0, 3.0]);
        let b = vec_max(&[3.0, 1.0]);
        assert_eq!(dominance(&a, &b).unwrap(), Dominance::ADominates);
        assert_eq!(dominance(&b, &a).unwrap(), Dominance::BDominates);
    }

    #[test]
    fn dominance_incomparable() {
        let a = vec_max(&[1.0, 5.0]);
        let b = vec_max(&[2.0, 4.0]);
        assert_eq!(dominance(&a, &b).unwrap(), Dominance::Incomparable);
    }

    #[test]
    fn dominance_equal_vectors() {
        let a = vec_max(&[3.0, 1.0]);
        assert_eq!(dominance(&a, &a.clone()).unwrap(), Dominance::Equal);
        assert!(dominance(&a, &a.clone()).unwrap().a_weakly_dominates());
        assert!(dominance(&a, &a.clone()).unwrap().b_weakly_dominates());
    }

    #[test]
    fn dominance_respects_directions() {
        let dirs = vec![Direction::Maximize, Direction::Minimize];
        let a = ObjectiveVector::new(vec![3.0, 2.0], dirs.clone()).unwrap();
        let b = ObjectiveVector::new(vec![2.0, 3.0], dirs).unwrap();
        assert_eq!(dominance(&a, &b).unwrap(), Dominance::ADominates);
    }

    #[test]
    fn dominance_rejects_mismatches() {
        let a = vec_max(&[1.0, 2.0]);
        let b = vec_max(&[1.0, 2.0, 3.0]);
        assert!(matches!(dominance(&a, &b), Err(Error::LengthMismatch(2, 3))));

        let c = ObjectiveVector::new(vec![1.0, 2.0], vec![Direction::Minimize; 2]).unwrap();
        assert!(matches!(dominance(&a, &c), Err(Error::DirectionMismatch)));
    }

    #[test]
    fn objective_vector_validation() {
        assert!(matches!(
            ObjectiveVector::new(vec![1.0], vec![Direction::Maximize]),
            Err(Error::TooFewObjectives(1))
        ));
        assert!(matches!(
            ObjectiveVector::new(vec![1.0, f64::NAN], vec![Direction::Maximize; 2]),
            Err(Error::NonFiniteObjective)
        ));
        assert!(matches!(
            ObjectiveVector::new(vec![1.0, f64::INFINITY], vec![Direction::Maximize; 2]),
            Err(Error::NonFiniteObjective)
        ));
    }

    #[test]
    fn ones_count_bounds() {
        let zeros = Genome::bitstring(vec![false; 8]).unwrap();
        let ones = Genome::bitstring(vec![true; 8]).unwrap();
        assert_eq!(ones_count(&zeros).unwrap(), 0);
        assert_eq!(ones_count(&ones).unwrap(), 8);

        let perm = Genome::permutation(vec![0, 1, 2]).unwrap();
        assert!(matches!(ones_count(&perm), Err(Error::GenomeKind { .. })));
    }

    #[test]
    fn permutation_validation() {
        assert!(Genome::permutation(vec![2, 0, 1]).is_ok());
        assert!(matches!(
            Genome::permutation(vec![0, 0, 1]),
            Err(Error::InvalidPermutation { len: 3 })
        ));
        assert!(matches!(
            Genome::permutation(vec![0, 3, 1]),
            Err(Error::InvalidPermutation { len: 3 })
        ));
    }

    #[test]
    fn rng_stream_replays_exactly() {
        let mut a = RngStream::new(42, 7);
        let mut b = RngStream::new(42, 7);
        for _ in 0..1_000_000 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    #[test]
    fn rng_stream_ids_are_independent() {
        let mut a = RngStream::new(42, 0);
        let mut b = RngStream::new(42, 1);
        let same = (0..1000).filter(|_| a.next_u64() == b.next_u64()).count();
        assert_eq!(same, 0);
    }

    // Weak dominance is antisymmetric (up to equality) and transitive.
    #[test]
    fn dominance_order_axioms_hold_on_random_triples() {
        let mut rng = RngStream::new(0xD0A11CE, 0);
        for trial in 0..10_000 {
            let m = if trial % 2 == 0 { 2 } else { 3 };
            let dirs: Vec<Direction> = (0..m)
                .map(|_| if rng.gen::<bool>() { Direction::Maximize } else { Direction::Minimize })
                .collect();
            let draw = |rng: &mut RngStream| {
                let values = (0..m).map(|_| rng.gen_range(0..5) as f64).collect();
                ObjectiveVector::new(values, dirs.clone()).unwrap()
            };
            let (a, b, c) = (draw(&mut rng), draw(&mut rng), draw(&mut rng));

            let ab = dominance(&a, &b).unwrap();
            if ab.a_weakly_dominates() && ab.b_weakly_dominates() {
                assert_eq!(ab, Dominance::Equal);
                assert_eq!(a, b);
            }

            let bc = dominance(&b, &c).unwrap();
            let ac = dominance(&a, &c).unwrap();
            if ab.a_weakly_dominates() && bc.a_weakly_dominates() {
                assert!(ac.a_weakly_dominates());
            }
        }
    }

    // Flipping direction and negating values leaves the relation unchanged.
    #[test]
    fn dominance_is_normalization_invariant() {
        let mut rng = RngStream::new(0x5EED, 1);
        for _ in 0..10_000 {
            let values =
                |rng: &mut RngStream| (0..2).map(|_| rng.gen_range(-4..5) as f64).collect::<Vec<_>>();
            let (va, vb) = (values(&mut rng), values(&mut rng));
            let max = vec![Direction::Maximize; 2];
            let min = vec![Direction::Minimize; 2];
            let a = ObjectiveVector::new(va.clone(), max.clone()).unwrap();
            let b = ObjectiveVector::new(vb.clone(), max).unwrap();
            let na = ObjectiveVector::new(va.iter().map(|v| -v).collect(), min.clone()).unwrap();
            let nb = ObjectiveVector::new(vb.iter().map(|v| -v).collect(), min).unwrap();
            assert_eq!(dominance(&a, &b).unwrap(), dominance(&na, &nb).unwrap());
        }
    }
}
