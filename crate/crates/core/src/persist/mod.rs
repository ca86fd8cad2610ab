//! Standard, level, circle and cocycle persistence, and barcodes read off the
//! count tables.

mod circle;
mod grid;
mod level;
mod standard;

use alloc::vec::Vec;

use crate::reduce::Death;
use crate::Rational;

pub use circle::{
    circle_level_persistence, circle_level_persistence_with, cocycle_persistence,
    cocycle_persistence_with, CircleOptions, CirclePersistenceResult,
};
pub use grid::SGrid;
pub use level::{
    level_persistence, level_persistence_at, level_point, view_stages, LevelPersistence,
    LevelPoint, StepTable,
};
pub use standard::{filtered_pairs, mu_from_beta, standard_persistence, StandardPersistence};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    /// Sublevel bars, and level classes followed upward.
    Up,
    /// Level classes followed downward.
    Down,
    /// Level classes followed both ways.
    Pair,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Endpoint {
    Value(Rational),
    Infinite,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Bar {
    pub degree: usize,
    pub direction: Direction,
    pub birth: Rational,
    /// Death going up; going down for [`Direction::Down`].
    pub death: Endpoint,
    /// Death going down, for [`Direction::Pair`].
    pub lower_death: Option<Endpoint>,
    pub multiplicity: usize,
}

/// Sublevel bars `[t_i, t_j)`; same-stage pairs are dropped.
pub fn standard_bars(p: &StandardPersistence) -> Vec<Bar> {
    p.mu_table()
        .iter()
        .filter(|(&(_, i, j), _)| j != Death::Finite(i))
        .map(|(&(r, i, j), &n)| Bar {
            degree: r,
            direction: Direction::Up,
            birth: p.value(i),
            death: match j {
                Death::Finite(j) => Endpoint::Value(p.value(j)),
                Death::Infinite => Endpoint::Infinite,
            },
            lower_death: None,
            multiplicity: n,
        })
        .collect()
}

/// Bars of the level classes at one point: each class once upward, once
/// downward, and once with both deaths.
pub fn level_bars(p: &LevelPoint) -> Vec<Bar> {
    let up = |k: Death| match k {
        Death::Finite(k) => Endpoint::Value(p.value() + p.up_tau(k)),
        Death::Infinite => Endpoint::Infinite,
    };
    let down = |k: Death| match k {
        Death::Finite(k) => Endpoint::Value(p.value() - p.down_tau(k)),
        Death::Infinite => Endpoint::Infinite,
    };
    let mut bars = Vec::new();
    for (&(r, k), &n) in p.nu_plus_table() {
        bars.push(Bar {
            degree: r,
            direction: Direction::Up,
            birth: p.value(),
            death: up(k),
            lower_death: None,
            multiplicity: n,
        });
    }
    for (&(r, k), &n) in p.nu_minus_table() {
        bars.push(Bar {
            degree: r,
            direction: Direction::Down,
            birth: p.value(),
            death: down(k),
            lower_death: None,
            multiplicity: n,
        });
    }
    for (&(r, j, k), &n) in p.omega_table() {
        bars.push(Bar {
            degree: r,
            direction: Direction::Pair,
            birth: p.value(),
            death: up(k),
            lower_death: Some(down(j)),
            multiplicity: n,
        });
    }
    bars
}
