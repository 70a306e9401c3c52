//! Unit-strength local mutation and the two parent-selection rules.
//!
//! Draw order is fixed so that runs replay identically from a seed: mutation
//! draws the position first and the direction second; delayed selection
//! draws the target `f1` value first.

use rand::Rng;
use thiserror::Error;

use crate::algorithms::{Archive, Member};
use crate::domain::{ProblemShape, Solution};

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum SelectionError {
    #[error("cannot select from an empty population")]
    EmptyPopulation,
}

/// Direction of a unit step.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
}

impl Direction {
    pub fn delta(self) -> i8 {
        match self {
            Direction::Up => 1,
            Direction::Down => -1,
        }
    }
}

/// The two random draws of one mutation and whether the step was applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub index: usize,
    pub direction: Direction,
    /// Value at `index` before the step.
    pub old_value: u8,
    /// False when the step left `[0..r-1]` and was discarded.
    pub applied: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationOutcome {
    pub offspring: Solution,
    pub changed_index: Option<usize>,
    pub direction: Option<Direction>,
    pub was_boundary_discard: bool,
}

#[inline]
fn draw_step<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, Direction) {
    let index = rng.random_range(0..n);
    let direction = if rng.random::<bool>() {
        Direction::Up
    } else {
        Direction::Down
    };
    (index, direction)
}

/// Applies one unit-strength mutation to `values` in place. An infeasible
/// step leaves `values` untouched. Always consumes exactly two draws.
#[inline]
pub fn mutate_in_place<R: Rng + ?Sized>(values: &mut [u8], shape: ProblemShape, rng: &mut R) -> Step {
    let (index, direction) = draw_step(shape.n(), rng);
    let old_value = values[index];
    let applied = match direction {
        Direction::Up if old_value < shape.max_value() => {
            values[index] = old_value + 1;
            true
        }
        Direction::Down if old_value > 0 => {
            values[index] = old_value - 1;
            true
        }
        _ => false,
    };
    Step {
        index,
        direction,
        old_value,
        applied,
    }
}

/// Picks a position uniformly, moves it by ±1 with equal probability, and
/// returns the parent unchanged when the move would leave `[0..r-1]`.
pub fn unit_strength_mutate<R: Rng + ?Sized>(
    parent: &Solution,
    shape: ProblemShape,
    rng: &mut R,
) -> MutationOutcome {
    let mut offspring = parent.clone();
    let step = mutate_in_place(offspring.values_mut(), shape, rng);
    MutationOutcome {
        offspring,
        changed_index: step.applied.then_some(step.index),
        direction: step.applied.then_some(step.direction),
        was_boundary_discard: !step.applied,
    }
}

/// Uniform parent selection over the archive.
#[inline]
pub fn select_uniform<'a, R: Rng + ?Sized>(
    population: &'a Archive,
    rng: &mut R,
) -> Result<&'a Member, SelectionError> {
    if population.is_empty() {
        return Err(SelectionError::EmptyPopulation);
    }
    let i = rng.random_range(0..population.len());
    Ok(&population.members()[i])
}

/// Delayed selection: draws `i` uniformly from `[0..n(r-1)]` and returns the
/// member with `f1 = i`, or `None` when no member has that value.
///
/// A pairwise non-dominated archive holds at most one member per `f1` value,
/// so the match, when present, is unique.
#[inline]
pub fn select_delayed<'a, R: Rng + ?Sized>(
    population: &'a Archive,
    shape: ProblemShape,
    rng: &mut R,
) -> Option<&'a Member> {
    let target = rng.random_range(0..=shape.max_objective());
    population.find_f1(target)
}
