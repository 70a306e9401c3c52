//! Shared vocabulary: problem shapes, solutions, objective vectors, dominance
//! and seeded random sources.

use std::cmp::Ordering;
use std::fmt;

use rand::SeedableRng;
use rand_xoshiro::Xoshiro256PlusPlus;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// The pseudo-random generator every run uses.
pub type RandomSource = Xoshiro256PlusPlus;

/// Name of [`RandomSource`] as written into output metadata.
pub const GENERATOR_NAME: &str = "xoshiro256++ (rand_xoshiro 0.7, seed_from_u64)";

/// Largest supported `r`; decision values are stored as `u8`.
pub const MAX_R: u32 = 256;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DomainError {
    #[error("n must be at least 1")]
    EmptyShape,
    #[error("r must be in [2..{MAX_R}], got {0}")]
    InvalidArity(u32),
    #[error("solution has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("value {value} at position {index} is outside [0..{max}]")]
    ValueOutOfRange { index: usize, value: u8, max: u32 },
}

/// Number of decision variables `n` and number of values per variable `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ProblemShape {
    n: usize,
    r: u32,
}

impl ProblemShape {
    pub fn new(n: usize, r: u32) -> Result<Self, DomainError> {
        if n == 0 {
            return Err(DomainError::EmptyShape);
        }
        if !(2..=MAX_R).contains(&r) {
            return Err(DomainError::InvalidArity(r));
        }
        Ok(Self { n, r })
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn r(&self) -> u32 {
        self.r
    }

    /// Largest value a variable may take, `r - 1`.
    #[inline]
    pub fn max_value(&self) -> u8 {
        (self.r - 1) as u8
    }

    /// `n (r - 1)`, the largest value either objective can reach.
    #[inline]
    pub fn max_objective(&self) -> u64 {
        self.n as u64 * (self.r as u64 - 1)
    }

    /// Number of Pareto-front points of both benchmarks, `n (r - 1) + 1`.
    #[inline]
    pub fn front_size(&self) -> usize {
        self.max_objective() as usize + 1
    }
}

impl fmt::Display for ProblemShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "n={}, r={}", self.n, self.r)
    }
}

/// A point of `[0..r-1]^n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Solution(Vec<u8>);

impl Solution {
    /// Validates `values` against `shape`.
    pub fn new(values: Vec<u8>, shape: ProblemShape) -> Result<Self, DomainError> {
        if values.len() != shape.n() {
            return Err(DomainError::LengthMismatch {
                expected: shape.n(),
                got: values.len(),
            });
        }
        if let Some((index, &value)) = values
            .iter()
            .enumerate()
            .find(|(_, &v)| v > shape.max_value())
        {
            return Err(DomainError::ValueOutOfRange {
                index,
                value,
                max: shape.r() - 1,
            });
        }
        Ok(Self(values))
    }

    /// Wraps values already known to be in range.
    pub(crate) fn from_raw(values: Vec<u8>) -> Self {
        Self(values)
    }

    pub fn uniform(shape: ProblemShape, value: u8) -> Result<Self, DomainError> {
        Self::new(vec![value; shape.n()], shape)
    }

    /// Draws each coordinate independently and uniformly, in coordinate order.
    pub fn random<R: rand::Rng + ?Sized>(shape: ProblemShape, rng: &mut R) -> Self {
        let values = (0..shape.n())
            .map(|_| rng.random_range(0..shape.r()) as u8)
            .collect();
        Self(values)
    }

    #[inline]
    pub fn values(&self) -> &[u8] {
        &self.0
    }

    #[inline]
    pub(crate) fn values_mut(&mut self) -> &mut [u8] {
        &mut self.0
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_values(self) -> Vec<u8> {
        self.0
    }
}

impl fmt::Display for Solution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

/// Bi-objective value `(f1, f2)`, both maximized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ObjectiveVector {
    pub f1: u64,
    pub f2: u64,
}

impl ObjectiveVector {
    #[inline]
    pub const fn new(f1: u64, f2: u64) -> Self {
        Self { f1, f2 }
    }

    #[inline]
    pub fn min_component(&self) -> u64 {
        self.f1.min(self.f2)
    }
}

impl From<(u64, u64)> for ObjectiveVector {
    fn from((f1, f2): (u64, u64)) -> Self {
        Self { f1, f2 }
    }
}

impl fmt::Display for ObjectiveVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.f1, self.f2)
    }
}

/// Outcome of comparing `u` against `v` under componentwise maximization.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Dominance {
    /// `u >= v` componentwise and `u != v`.
    Dominates,
    /// `u == v`.
    Equal,
    /// `v` strictly dominates `u`.
    DominatedBy,
    Incomparable,
}

impl Dominance {
    /// `u` weakly dominates `v`: strictly dominates or equal.
    #[inline]
    pub fn weakly_dominates(self) -> bool {
        matches!(self, Dominance::Dominates | Dominance::Equal)
    }

    #[inline]
    pub fn reverse(self) -> Self {
        match self {
            Dominance::Dominates => Dominance::DominatedBy,
            Dominance::DominatedBy => Dominance::Dominates,
            other => other,
        }
    }
}

#[inline]
pub fn compare(u: ObjectiveVector, v: ObjectiveVector) -> Dominance {
    match (u.f1.cmp(&v.f1), u.f2.cmp(&v.f2)) {
        (Ordering::Equal, Ordering::Equal) => Dominance::Equal,
        (Ordering::Greater | Ordering::Equal, Ordering::Greater | Ordering::Equal) => {
            Dominance::Dominates
        }
        (Ordering::Less | Ordering::Equal, Ordering::Less | Ordering::Equal) => {
            Dominance::DominatedBy
        }
        _ => Dominance::Incomparable,
    }
}

/// Seed of one run. Equal seeds and configurations give identical runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RunSeed(pub u64);

impl RunSeed {
    pub fn rng(self) -> RandomSource {
        RandomSource::seed_from_u64(self.0)
    }
}

impl fmt::Display for RunSeed {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ov(f1: u64, f2: u64) -> ObjectiveVector {
        ObjectiveVector::new(f1, f2)
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(ov(3, 2), ov(2, 2)), Dominance::Dominates);
        assert_eq!(compare(ov(3, 2), ov(3, 2)), Dominance::Equal);
        assert_eq!(compare(ov(3, 1), ov(2, 2)), Dominance::Incomparable);
        assert_eq!(compare(ov(2, 2), ov(3, 2)), Dominance::DominatedBy);
    }

    #[test]
    fn shape_validation() {
        assert_eq!(ProblemShape::new(0, 3), Err(DomainError::EmptyShape));
        assert_eq!(ProblemShape::new(3, 1), Err(DomainError::InvalidArity(1)));
        assert_eq!(ProblemShape::new(3, 257), Err(DomainError::InvalidArity(257)));
        let shape = ProblemShape::new(3, 4).unwrap();
        assert_eq!(shape.front_size(), 10);
        assert_eq!(shape.max_objective(), 9);
    }

    #[test]
    fn solution_validation() {
        let shape = ProblemShape::new(3, 3).unwrap();
        assert!(Solution::new(vec![0, 1, 2], shape).is_ok());
        assert_eq!(
            Solution::new(vec![0, 1], shape),
            Err(DomainError::LengthMismatch { expected: 3, got: 2 })
        );
        assert_eq!(
            Solution::new(vec![0, 3, 1], shape),
            Err(DomainError::ValueOutOfRange { index: 1, value: 3, max: 2 })
        );
    }

    #[test]
    fn same_seed_same_stream() {
        use rand::RngCore;
        let mut a = RunSeed(42).rng();
        let mut b = RunSeed(42).rng();
        for _ in 0..100 {
            assert_eq!(a.next_u64(), b.next_u64());
        }
    }

    fn arb_vector() -> impl Strategy<Value = ObjectiveVector> {
        (0u64..6, 0u64..6).prop_map(|(a, b)| ov(a, b))
    }

    proptest! {
        #[test]
        fn equal_is_reflexive(u in arb_vector()) {
            prop_assert_eq!(compare(u, u), Dominance::Equal);
        }

        #[test]
        fn strict_dominance_is_antisymmetric(u in arb_vector(), v in arb_vector()) {
            let forward = compare(u, v);
            prop_assert_eq!(compare(v, u), forward.reverse());
            if forward == Dominance::Dominates {
                prop_assert_ne!(compare(v, u), Dominance::Dominates);
                prop_assert_ne!(compare(v, u), Dominance::Incomparable);
            }
        }

        #[test]
        fn matches_componentwise_definition(u in arb_vector(), v in arb_vector()) {
            let weak = u.f1 >= v.f1 && u.f2 >= v.f2;
            prop_assert_eq!(compare(u, v) == Dominance::Dominates, weak && u != v);
            prop_assert_eq!(compare(u, v).weakly_dominates(), weak);
        }

        #[test]
        fn weak_dominance_is_transitive(u in arb_vector(), v in arb_vector(), w in arb_vector()) {
            if compare(u, v).weakly_dominates() && compare(v, w).weakly_dominates() {
                prop_assert!(compare(u, w).weakly_dominates());
            }
        }
    }
}
