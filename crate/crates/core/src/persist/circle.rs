use crate::cochain::{vertex_angles, AlmostIntegralCocycle, CircleMap};
use crate::complex::{SimplicialComplex, VertexId};
use crate::error::Result;
use crate::rational::int;
use crate::unroll::{max_copies_needed, theta_decompose, unroll};
use crate::Rational;

use super::level::{level_persistence_at, LevelPoint};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct CircleOptions {
    /// Windows of the cover kept on each side of the level; `|X|` by default.
    pub budget: Option<usize>,
    /// Copy index of the level inside the cover; `budget` by default.
    pub centre: Option<usize>,
}

/// Level persistence of the lift of a circle map at a lift of `θ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CirclePersistenceResult {
    pub theta: Rational,
    pub alpha: Rational,
    /// Windows of length `α` kept on each side; deaths further away are ∞.
    pub budget: usize,
    /// Copies unrolled.
    pub copies: usize,
    /// Numbers at the level, with steps and `τ` values in the units of `α`.
    pub point: LevelPoint,
}

pub fn circle_level_persistence(
    complex: &SimplicialComplex,
    cm: &CircleMap,
    theta: Rational,
) -> Result<CirclePersistenceResult> {
    circle_level_persistence_with(complex, cm, theta, CircleOptions::default())
}

/// Unrolls `centre + budget` copies, so the level `θ + centre·α` has at least
/// `budget` windows of cover on each side, and reads level persistence there.
pub fn circle_level_persistence_with(
    complex: &SimplicialComplex,
    cm: &CircleMap,
    theta: Rational,
    options: CircleOptions,
) -> Result<CirclePersistenceResult> {
    let decomp = theta_decompose(complex, cm, theta)?;
    let budget = options.budget.unwrap_or_else(|| max_copies_needed(complex));
    let centre = options.centre.unwrap_or(budget).max(budget);
    let copies = centre + budget;
    let cover = unroll(&decomp, complex, cm, copies)?;
    let alpha = cm.alpha();
    let level = theta + int(centre as i128) * alpha;
    let point = level_persistence_at(cover.realized(), cover.lifted(), level)?;
    Ok(CirclePersistenceResult {
        theta,
        alpha,
        budget,
        copies,
        point: point.truncated(int(budget as i128) * alpha),
    })
}

/// Circle persistence of the angles assigned to `c` from `base`.
pub fn cocycle_persistence(
    complex: &SimplicialComplex,
    c: &AlmostIntegralCocycle,
    theta: Rational,
    base: VertexId,
) -> Result<CirclePersistenceResult> {
    cocycle_persistence_with(complex, c, theta, base, CircleOptions::default())
}

pub fn cocycle_persistence_with(
    complex: &SimplicialComplex,
    c: &AlmostIntegralCocycle,
    theta: Rational,
    base: VertexId,
    options: CircleOptions,
) -> Result<CirclePersistenceResult> {
    let cm = vertex_angles(c, complex, base)?;
    circle_level_persistence_with(complex, &cm, theta, options)
}
