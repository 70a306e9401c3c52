//! G-OneMinMax and G-LOTZ, their closed-form Pareto fronts, and an exhaustive
//! oracle for small instances.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::domain::{compare, Dominance, ObjectiveVector, ProblemShape, Solution};

/// Exhaustive enumeration refuses instances with more than this many points.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ProblemError {
    #[error("front index {k} outside [0..{max}]")]
    FrontIndexOutOfRange { k: u64, max: u64 },
    #[error("instance {shape} has more than {BRUTE_FORCE_LIMIT} solutions")]
    InstanceTooLarge { shape: ProblemShape },
    #[error("unknown benchmark `{0}` (expected gomm or glotz)")]
    UnknownBenchmark(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum BenchmarkKind {
    GOneMinMax,
    GLotz,
}

impl BenchmarkKind {
    /// Short name used on the command line and in output files.
    pub fn as_str(self) -> &'static str {
        match self {
            BenchmarkKind::GOneMinMax => "gomm",
            BenchmarkKind::GLotz => "glotz",
        }
    }
}

impl fmt::Display for BenchmarkKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BenchmarkKind {
    type Err = ProblemError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "gomm" | "g-oneminmax" | "goneminmax" => Ok(BenchmarkKind::GOneMinMax),
            "glotz" | "g-lotz" => Ok(BenchmarkKind::GLotz),
            other => Err(ProblemError::UnknownBenchmark(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Benchmark {
    pub kind: BenchmarkKind,
    pub shape: ProblemShape,
}

impl Benchmark {
    pub fn new(kind: BenchmarkKind, shape: ProblemShape) -> Self {
        Self { kind, shape }
    }

    pub fn evaluate(&self, x: &Solution) -> ObjectiveVector {
        match self.kind {
            BenchmarkKind::GOneMinMax => evaluate_gomm(self.shape, x),
            BenchmarkKind::GLotz => evaluate_glotz(self.shape, x),
        }
    }

    /// Objective vector of `child`, which equals the parent with objective
    /// `parent` except at `index`, where the parent held `old_value`.
    ///
    /// O(1) for G-OneMinMax; for G-LOTZ O(1) unless the step completes the
    /// certified prefix or clears the last nonzero entry, which costs a scan.
    #[inline]
    pub fn evaluate_step(
        &self,
        parent: ObjectiveVector,
        child: &[u8],
        index: usize,
        old_value: u8,
    ) -> ObjectiveVector {
        match self.kind {
            BenchmarkKind::GOneMinMax => {
                let new_value = child[index];
                if new_value > old_value {
                    ObjectiveVector::new(parent.f1 + 1, parent.f2 - 1)
                } else if new_value < old_value {
                    ObjectiveVector::new(parent.f1 - 1, parent.f2 + 1)
                } else {
                    parent
                }
            }
            BenchmarkKind::GLotz => glotz_step(self.shape, parent, child, index),
        }
    }
}

/// `(sum x_i, sum (r - 1 - x_i))`.
pub fn evaluate_gomm(shape: ProblemShape, x: &Solution) -> ObjectiveVector {
    let f1: u64 = x.values().iter().map(|&v| v as u64).sum();
    ObjectiveVector::new(f1, shape.max_objective() - f1)
}

/// G-LO credits the prefix of `r - 1` entries plus the value of the first
/// deficient entry; G-TZ credits the suffix of zeros plus `r - 1 - x_s` for
/// the last nonzero entry `s`. Two linear scans.
pub fn evaluate_glotz(shape: ProblemShape, x: &Solution) -> ObjectiveVector {
    ObjectiveVector::new(glotz_leading(shape, x.values()), glotz_trailing(shape, x.values()))
}

fn glotz_leading(shape: ProblemShape, values: &[u8]) -> u64 {
    let max = shape.max_value();
    let m = max as u64;
    match values.iter().position(|&v| v < max) {
        Some(p) => p as u64 * m + values[p] as u64,
        None => shape.max_objective(),
    }
}

fn glotz_trailing(shape: ProblemShape, values: &[u8]) -> u64 {
    let m = shape.max_value() as u64;
    match values.iter().rposition(|&v| v > 0) {
        Some(s) => (values.len() - 1 - s) as u64 * m + (m - values[s] as u64),
        None => shape.max_objective(),
    }
}

/// Incremental G-LOTZ update. The position of the first deficient entry is
/// recovered from `f1 = p (r-1) + x_p`, and the last nonzero entry from
/// `f2 = (n-1-s)(r-1) + (r-1-x_s)`.
fn glotz_step(shape: ProblemShape, parent: ObjectiveVector, child: &[u8], index: usize) -> ObjectiveVector {
    let n = shape.n();
    let max = shape.max_value();
    let m = max as u64;
    let full = shape.max_objective();

    let f1 = if parent.f1 == full {
        // Only a decrement is possible; the prefix now stops at `index`.
        index as u64 * m + child[index] as u64
    } else {
        let p = (parent.f1 / m) as usize;
        match index.cmp(&p) {
            std::cmp::Ordering::Greater => parent.f1,
            std::cmp::Ordering::Less => index as u64 * m + child[index] as u64,
            std::cmp::Ordering::Equal => {
                if child[p] < max {
                    p as u64 * m + child[p] as u64
                } else {
                    match child[p + 1..].iter().position(|&v| v < max) {
                        Some(off) => {
                            let q = p + 1 + off;
                            q as u64 * m + child[q] as u64
                        }
                        None => full,
                    }
                }
            }
        }
    };

    let f2 = if parent.f2 == full {
        // All zeros before; the only feasible step raises `index` to 1.
        (n - 1 - index) as u64 * m + (m - child[index] as u64)
    } else {
        let s = n - 1 - (parent.f2 / m) as usize;
        match index.cmp(&s) {
            std::cmp::Ordering::Less => parent.f2,
            std::cmp::Ordering::Greater => (n - 1 - index) as u64 * m + (m - child[index] as u64),
            std::cmp::Ordering::Equal => {
                if child[s] > 0 {
                    (n - 1 - s) as u64 * m + (m - child[s] as u64)
                } else {
                    match child[..s].iter().rposition(|&v| v > 0) {
                        Some(q) => (n - 1 - q) as u64 * m + (m - child[q] as u64),
                        None => full,
                    }
                }
            }
        }
    };

    ObjectiveVector::new(f1, f2)
}

/// The common Pareto front `{(k, n(r-1) - k)}` of both benchmarks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParetoFrontDescriptor {
    pub points: Vec<ObjectiveVector>,
}

impl ParetoFrontDescriptor {
    pub fn size(&self) -> usize {
        self.points.len()
    }
}

pub fn pareto_front(benchmark: Benchmark) -> ParetoFrontDescriptor {
    let top = benchmark.shape.max_objective();
    ParetoFrontDescriptor {
        points: (0..=top).map(|k| ObjectiveVector::new(k, top - k)).collect(),
    }
}

/// Position `k` on the G-LOTZ Pareto path, written as `k = q (r-1) + a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GLotzPathPoint {
    pub k: u64,
    pub q: u64,
    pub a: u64,
}

impl GLotzPathPoint {
    pub fn new(shape: ProblemShape, k: u64) -> Result<Self, ProblemError> {
        let max = shape.max_objective();
        if k > max {
            return Err(ProblemError::FrontIndexOutOfRange { k, max });
        }
        let m = shape.max_value() as u64;
        Ok(Self { k, q: k / m, a: k % m })
    }
}

/// `q` copies of `r - 1`, then `a`, then zeros.
pub fn glotz_pareto_solution(shape: ProblemShape, k: u64) -> Result<Solution, ProblemError> {
    let point = GLotzPathPoint::new(shape, k)?;
    let n = shape.n();
    let q = point.q as usize;
    let mut values = vec![0u8; n];
    values[..q].fill(shape.max_value());
    if q < n {
        values[q] = point.a as u8;
    }
    Ok(Solution::from_raw(values))
}

/// Enumerates `[0..r-1]^n` in odometer order (last coordinate fastest) and
/// keeps the solutions whose objective vector no other vector strictly
/// dominates. Returns the Pareto set in enumeration order and the front
/// sorted by `f1`.
pub fn brute_force_pareto(
    benchmark: Benchmark,
) -> Result<(Vec<Solution>, Vec<ObjectiveVector>), ProblemError> {
    let shape = benchmark.shape;
    let total = (shape.r() as u64)
        .checked_pow(shape.n() as u32)
        .filter(|&t| t <= BRUTE_FORCE_LIMIT)
        .ok_or(ProblemError::InstanceTooLarge { shape })?;

    let mut all = Vec::with_capacity(total as usize);
    let mut values = vec![0u8; shape.n()];
    loop {
        let x = Solution::from_raw(values.clone());
        let fx = benchmark.evaluate(&x);
        all.push((x, fx));
        if !odometer_next(&mut values, shape.max_value()) {
            break;
        }
    }

    let distinct: Vec<ObjectiveVector> = all
        .iter()
        .map(|(_, f)| *f)
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let front: Vec<ObjectiveVector> = distinct
        .iter()
        .copied()
        .filter(|&u| {
            distinct
                .iter()
                .all(|&v| compare(v, u) != Dominance::Dominates)
        })
        .collect();

    let set = all
        .into_iter()
        .filter(|(_, f)| front.binary_search(f).is_ok())
        .map(|(x, _)| x)
        .collect();
    Ok((set, front))
}

fn odometer_next(values: &mut [u8], max: u8) -> bool {
    for v in values.iter_mut().rev() {
        if *v < max {
            *v += 1;
            return true;
        }
        *v = 0;
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::RunSeed;
    use proptest::prelude::*;

    fn shape(n: usize, r: u32) -> ProblemShape {
        ProblemShape::new(n, r).unwrap()
    }

    fn sol(shape: ProblemShape, v: &[u8]) -> Solution {
        Solution::new(v.to_vec(), shape).unwrap()
    }

    fn ov(f1: u64, f2: u64) -> ObjectiveVector {
        ObjectiveVector::new(f1, f2)
    }

    /// G-LO and G-TZ written as the literal sums of products.
    fn glotz_by_products(shape: ProblemShape, x: &[u8]) -> ObjectiveVector {
        let max = shape.max_value();
        let n = x.len();
        let lo: u64 = (0..n)
            .map(|i| {
                let prefix: u64 = (0..i).map(|j| (x[j] == max) as u64).product();
                prefix * x[i] as u64
            })
            .sum();
        let tz: u64 = (0..n)
            .map(|i| {
                let suffix: u64 = (i + 1..n).map(|j| (x[j] == 0) as u64).product();
                suffix * (max - x[i]) as u64
            })
            .sum();
        ov(lo, tz)
    }

    #[test]
    fn gomm_examples() {
        let s = shape(3, 3);
        assert_eq!(evaluate_gomm(s, &sol(s, &[0, 0, 0])), ov(0, 6));
        assert_eq!(evaluate_gomm(s, &sol(s, &[2, 2, 2])), ov(6, 0));
        assert_eq!(evaluate_gomm(s, &sol(s, &[1, 2, 0])), ov(3, 3));
    }

    #[test]
    fn glotz_examples() {
        let s = shape(3, 3);
        assert_eq!(evaluate_glotz(s, &sol(s, &[2, 1, 0])), ov(3, 3));
        assert_eq!(evaluate_glotz(s, &sol(s, &[2, 2, 2])), ov(6, 0));
        assert_eq!(evaluate_glotz(s, &sol(s, &[1, 2, 0])), ov(1, 2));
        let b = shape(2, 2);
        assert_eq!(evaluate_glotz(b, &sol(b, &[1, 0])), ov(1, 1));
    }

    #[test]
    fn glotz_examples_match_literal_form() {
        let s = shape(3, 3);
        for v in [[2, 1, 0], [2, 2, 2], [1, 2, 0], [0, 0, 0]] {
            assert_eq!(evaluate_glotz(s, &sol(s, &v)), glotz_by_products(s, &v));
        }
    }

    #[test]
    fn front_examples() {
        let expected: Vec<_> = [(0, 4), (1, 3), (2, 2), (3, 1), (4, 0)]
            .iter()
            .map(|&(a, b)| ov(a, b))
            .collect();
        for kind in [BenchmarkKind::GOneMinMax, BenchmarkKind::GLotz] {
            let front = pareto_front(Benchmark::new(kind, shape(2, 3)));
            assert_eq!(front.points, expected);
            assert_eq!(front.size(), 5);
            let tiny = pareto_front(Benchmark::new(kind, shape(1, 2)));
            assert_eq!(tiny.points, vec![ov(0, 1), ov(1, 0)]);
        }
    }

    #[test]
    fn glotz_path_examples() {
        assert_eq!(glotz_pareto_solution(shape(3, 3), 3).unwrap().values(), &[2, 1, 0]);
        assert_eq!(glotz_pareto_solution(shape(3, 3), 0).unwrap().values(), &[0, 0, 0]);
        assert_eq!(glotz_pareto_solution(shape(2, 3), 4).unwrap().values(), &[2, 2]);
        assert_eq!(
            glotz_pareto_solution(shape(2, 3), 5),
            Err(ProblemError::FrontIndexOutOfRange { k: 5, max: 4 })
        );
        let p = GLotzPathPoint::new(shape(3, 3), 3).unwrap();
        assert_eq!((p.q, p.a), (1, 1));
    }

    #[test]
    fn brute_force_examples() {
        let (set, front) =
            brute_force_pareto(Benchmark::new(BenchmarkKind::GOneMinMax, shape(2, 3))).unwrap();
        assert_eq!(set.len(), 9);
        assert_eq!(front.len(), 5);

        let s = shape(2, 3);
        let (set, _) = brute_force_pareto(Benchmark::new(BenchmarkKind::GLotz, s)).unwrap();
        let expected: Vec<_> = [[0, 0], [1, 0], [2, 0], [2, 1], [2, 2]]
            .iter()
            .map(|v| sol(s, v))
            .collect();
        assert_eq!(set, expected);

        let b = shape(1, 2);
        let (set, _) = brute_force_pareto(Benchmark::new(BenchmarkKind::GLotz, b)).unwrap();
        assert_eq!(set, vec![sol(b, &[0]), sol(b, &[1])]);
    }

    #[test]
    fn brute_force_guard() {
        let big = Benchmark::new(BenchmarkKind::GOneMinMax, shape(24, 2));
        assert!(matches!(
            brute_force_pareto(big),
            Err(ProblemError::InstanceTooLarge { .. })
        ));
        let huge = Benchmark::new(BenchmarkKind::GOneMinMax, shape(100, 5));
        assert!(brute_force_pareto(huge).is_err());
    }

    #[test]
    fn glotz_sum_reaches_bound_exactly_on_path() {
        for n in 1..=4 {
            for r in 2..=4 {
                let s = shape(n, r);
                let path: BTreeSet<Solution> = (0..=s.max_objective())
                    .map(|k| glotz_pareto_solution(s, k).unwrap())
                    .collect();
                let mut values = vec![0u8; n];
                loop {
                    let x = sol(s, &values);
                    let f = evaluate_glotz(s, &x);
                    assert!(f.f1 + f.f2 <= s.max_objective());
                    assert_eq!(f.f1 + f.f2 == s.max_objective(), path.contains(&x), "{x}");
                    if !odometer_next(&mut values, s.max_value()) {
                        break;
                    }
                }
            }
        }
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("gomm".parse::<BenchmarkKind>().unwrap(), BenchmarkKind::GOneMinMax);
        assert_eq!("GLOTZ".parse::<BenchmarkKind>().unwrap(), BenchmarkKind::GLotz);
        assert!("cocz".parse::<BenchmarkKind>().is_err());
    }

    fn arb_instance() -> impl Strategy<Value = (ProblemShape, Vec<u8>)> {
        (1usize..30, 2u32..9).prop_flat_map(|(n, r)| {
            (
                Just(shape(n, r)),
                prop::collection::vec(0u8..r as u8, n),
            )
        })
    }

    /// Solutions biased towards path-like shapes so prefix/suffix edge cases occur.
    fn arb_structured() -> impl Strategy<Value = (ProblemShape, Vec<u8>)> {
        (1usize..20, 2u32..6, any::<u64>()).prop_map(|(n, r, seed)| {
            use rand::Rng;
            let s = shape(n, r);
            let mut rng = RunSeed(seed).rng();
            let k = rng.random_range(0..=s.max_objective());
            let mut v = glotz_pareto_solution(s, k).unwrap().into_values();
            for _ in 0..rng.random_range(0..3) {
                let i = rng.random_range(0..n);
                v[i] = rng.random_range(0..r) as u8;
            }
            (s, v)
        })
    }

    proptest! {
        #[test]
        fn gomm_lies_on_front_line((s, v) in arb_instance()) {
            let f = evaluate_gomm(s, &sol(s, &v));
            prop_assert_eq!(f.f1 + f.f2, s.max_objective());
        }

        #[test]
        fn glotz_scans_match_products((s, v) in arb_instance()) {
            prop_assert_eq!(evaluate_glotz(s, &sol(s, &v)), glotz_by_products(s, &v));
        }

        #[test]
        fn glotz_structured_scans_match_products((s, v) in arb_structured()) {
            prop_assert_eq!(evaluate_glotz(s, &sol(s, &v)), glotz_by_products(s, &v));
        }

        #[test]
        fn step_update_matches_full_evaluation(
            (s, v) in prop_oneof![arb_instance(), arb_structured()],
            index_seed in any::<usize>(),
            up in any::<bool>(),
        ) {
            let index = index_seed % s.n();
            let old = v[index];
            let new = if up { old.checked_add(1).filter(|&x| x <= s.max_value()) } else { old.checked_sub(1) };
            if let Some(new) = new {
                let mut child = v.clone();
                child[index] = new;
                for kind in [BenchmarkKind::GOneMinMax, BenchmarkKind::GLotz] {
                    let b = Benchmark::new(kind, s);
                    let parent = b.evaluate(&sol(s, &v));
                    let full = b.evaluate(&sol(s, &child));
                    prop_assert_eq!(b.evaluate_step(parent, &child, index, old), full);
                }
            }
        }
    }
}
