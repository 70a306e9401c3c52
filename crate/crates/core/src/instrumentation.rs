//! Per-run traces of population size, distance to the Pareto borders and the
//! drift potential of the maximum-`f1` member.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algorithms::Archive;
use crate::domain::{ProblemShape, Solution};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum InstrumentationError {
    #[error("archive is empty")]
    EmptyArchive,
    #[error("potential overflows 128 bits for r = {r}")]
    PotentialOverflow { r: u32 },
}

/// Which quantities to record and how often.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstrumentationPlan {
    pub sample_every: u64,
    pub record_population_size: bool,
    pub record_border_distance: bool,
    pub record_potential: bool,
}

impl InstrumentationPlan {
    /// Records nothing.
    pub const fn none() -> Self {
        Self {
            sample_every: 1,
            record_population_size: false,
            record_border_distance: false,
            record_potential: false,
        }
    }

    /// Records every quantity every `sample_every` iterations (clamped to 1).
    pub fn all(sample_every: u64) -> Self {
        Self {
            sample_every: sample_every.max(1),
            record_population_size: true,
            record_border_distance: true,
            record_potential: true,
        }
    }

    /// Sampling interval used when tracing is switched on without one: `n r`.
    pub fn default_interval(shape: ProblemShape) -> u64 {
        shape.n() as u64 * shape.r() as u64
    }

    pub fn is_active(&self) -> bool {
        self.record_population_size || self.record_border_distance || self.record_potential
    }

    #[inline]
    pub fn is_due(&self, iteration: u64) -> bool {
        self.is_active() && iteration.is_multiple_of(self.sample_every.max(1))
    }
}

impl Default for InstrumentationPlan {
    fn default() -> Self {
        Self::none()
    }
}

/// One trace row. Fields not requested by the plan are `None`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceSample {
    pub iteration: u64,
    pub population_size: Option<usize>,
    pub d_pf: Option<u64>,
    pub g_potential: Option<u128>,
    /// Equal-objective replacements so far in the run.
    pub equal_replacements: Option<u64>,
}

/// `min(min f1, min f2)` over the archive. Zero iff an extreme front point
/// is present.
pub fn border_distance(archive: &Archive) -> Result<u64, InstrumentationError> {
    // f1 ascends and f2 descends along the members.
    let first = archive.members().first().ok_or(InstrumentationError::EmptyArchive)?;
    let last = archive.members().last().ok_or(InstrumentationError::EmptyArchive)?;
    Ok(first.objectives.f1.min(last.objectives.f2))
}

/// `sum_i (2^(r-1-x_i) - 1)` of one solution; zero iff it is `(r-1)^n`.
pub fn potential_of(shape: ProblemShape, x: &Solution) -> Result<u128, InstrumentationError> {
    let overflow = InstrumentationError::PotentialOverflow { r: shape.r() };
    x.values().iter().try_fold(0u128, |acc, &v| {
        let term = potential_term(shape, v).ok_or(overflow)?;
        acc.checked_add(term).ok_or(overflow)
    })
}

#[inline]
pub(crate) fn potential_term(shape: ProblemShape, value: u8) -> Option<u128> {
    let exponent = shape.r() - 1 - value as u32;
    1u128.checked_shl(exponent).map(|p| p - 1)
}

/// Potential of the archive member with maximum `f1`.
pub fn potential_g(archive: &Archive, shape: ProblemShape) -> Result<u128, InstrumentationError> {
    let top = archive.max_f1_member().ok_or(InstrumentationError::EmptyArchive)?;
    potential_of(shape, &top.solution)
}

/// Sample for `iteration` when it is due under `plan`.
pub fn sample(
    archive: &Archive,
    shape: ProblemShape,
    iteration: u64,
    plan: &InstrumentationPlan,
) -> Result<Option<TraceSample>, InstrumentationError> {
    if !plan.is_due(iteration) {
        return Ok(None);
    }
    let g = if plan.record_potential {
        Some(potential_g(archive, shape)?)
    } else {
        None
    };
    build_sample(archive, iteration, plan, g).map(Some)
}

pub(crate) fn build_sample(
    archive: &Archive,
    iteration: u64,
    plan: &InstrumentationPlan,
    g_potential: Option<u128>,
) -> Result<TraceSample, InstrumentationError> {
    Ok(TraceSample {
        iteration,
        population_size: plan.record_population_size.then(|| archive.len()),
        d_pf: if plan.record_border_distance {
            Some(border_distance(archive)?)
        } else {
            None
        },
        g_potential: g_potential.filter(|_| plan.record_potential),
        equal_replacements: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::ObjectiveVector;

    fn shape(n: usize, r: u32) -> ProblemShape {
        ProblemShape::new(n, r).unwrap()
    }

    fn archive(shape: ProblemShape, members: &[(&[u8], (u64, u64))]) -> Archive {
        let mut a = Archive::new();
        for (values, (f1, f2)) in members {
            let x = Solution::new(values.to_vec(), shape).unwrap();
            a.insert_semo(x, ObjectiveVector::new(*f1, *f2));
        }
        a
    }

    #[test]
    fn border_distance_examples() {
        let s = shape(2, 3);
        assert_eq!(border_distance(&archive(s, &[(&[1, 1], (2, 2))])).unwrap(), 2);
        assert_eq!(
            border_distance(&archive(s, &[(&[0, 0], (0, 4)), (&[1, 1], (2, 2))])).unwrap(),
            0
        );
        assert_eq!(
            border_distance(&archive(s, &[(&[1, 0], (1, 3)), (&[2, 1], (3, 1))])).unwrap(),
            1
        );
        assert_eq!(border_distance(&Archive::new()), Err(InstrumentationError::EmptyArchive));
    }

    #[test]
    fn potential_examples() {
        let s = shape(3, 4);
        assert_eq!(potential_g(&archive(s, &[(&[3, 3, 3], (9, 0))]), s).unwrap(), 0);
        let s = shape(2, 3);
        assert_eq!(potential_g(&archive(s, &[(&[0, 0], (0, 4))]), s).unwrap(), 6);
        // Uses the maximum-f1 member only.
        let a = archive(s, &[(&[0, 0], (0, 4)), (&[2, 1], (3, 1))]);
        assert_eq!(potential_g(&a, s).unwrap(), 1);
        let s = shape(1, 4);
        assert_eq!(potential_g(&archive(s, &[(&[1], (1, 2))]), s).unwrap(), 3);
        assert_eq!(potential_g(&Archive::new(), s), Err(InstrumentationError::EmptyArchive));
    }

    #[test]
    fn potential_is_exact_up_to_r_64() {
        let s = shape(1000, 64);
        let zeros = Solution::uniform(s, 0).unwrap();
        assert_eq!(potential_of(s, &zeros).unwrap(), 1000 * ((1u128 << 63) - 1));
        let s = shape(3, 129);
        assert_eq!(
            potential_of(s, &Solution::uniform(s, 0).unwrap()),
            Err(InstrumentationError::PotentialOverflow { r: 129 })
        );
    }

    #[test]
    fn sampling_schedule_and_fields() {
        let s = shape(2, 3);
        let a = archive(s, &[(&[1, 1], (2, 2))]);
        let every = InstrumentationPlan::all(1);
        for t in 0..5 {
            assert!(sample(&a, s, t, &every).unwrap().is_some());
        }
        let sparse = InstrumentationPlan::all(1000);
        assert!(sample(&a, s, 500, &sparse).unwrap().is_none());
        assert!(sample(&a, s, 2000, &sparse).unwrap().is_some());

        let only_pop = InstrumentationPlan {
            record_population_size: true,
            ..InstrumentationPlan::none()
        };
        let row = sample(&a, s, 0, &only_pop).unwrap().unwrap();
        assert_eq!(row.population_size, Some(1));
        assert_eq!(row.d_pf, None);
        assert_eq!(row.g_potential, None);
        assert!(sample(&a, s, 0, &InstrumentationPlan::none()).unwrap().is_none());
    }
}
