use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::cochain::Cochain0;
use crate::complex::SimplicialComplex;
use crate::complex::{
    incidence_matrix, make_filtration_compatible, topological_order, CellComplex,
};
use crate::derive::{
    cut_cell_complex, halfspace_cell_complex, level_cell_complex, CellComplexView, CellRole, Group,
    Side,
};
use crate::error::Result;
use crate::reduce::{
    betti_numbers, reduce_matrix, relative_reduce, simultaneous_numbers, Death, OmegaTable,
};
use crate::Rational;
use num_traits::Zero;

use super::grid::SGrid;
use super::standard::filtered_pairs;

/// `(r, k) -> count`, `k ≥ 1` grid steps or ∞.
pub type StepTable = BTreeMap<(usize, Death), usize>;

/// Level persistence numbers at one grid point `s_i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPoint {
    index: usize,
    value: Rational,
    degrees: usize,
    l: Vec<usize>,
    up_steps: Vec<Rational>,
    down_steps: Vec<Rational>,
    nu_up: StepTable,
    nu_down: StepTable,
    omega: OmegaTable,
}

impl LevelPoint {
    /// Grid index `i`.
    pub fn index(&self) -> usize {
        self.index
    }

    /// `s_i`.
    pub fn value(&self) -> Rational {
        self.value
    }

    pub fn degrees(&self) -> usize {
        self.degrees
    }

    /// `l_r(i) = dim H_r(X_{s_i})`.
    pub fn l(&self, r: usize) -> usize {
        self.l.get(r).copied().unwrap_or(0)
    }

    /// Steps available upward; `τ` for step `k` is `up_tau(k)`.
    pub fn max_up(&self) -> usize {
        self.up_steps.len()
    }

    pub fn max_down(&self) -> usize {
        self.down_steps.len()
    }

    /// `s_{i+k} - s_i`.
    pub fn up_tau(&self, k: usize) -> Rational {
        k.checked_sub(1)
            .map_or_else(Rational::zero, |k| self.up_steps[k])
    }

    /// `s_i - s_{i-k}`.
    pub fn down_tau(&self, k: usize) -> Rational {
        k.checked_sub(1)
            .map_or_else(Rational::zero, |k| self.down_steps[k])
    }

    /// `ν⁺_r(i; k)`, classes of the level first dying `k` steps up. Zero at `k = 0`.
    pub fn nu_plus(&self, r: usize, k: Death) -> usize {
        self.nu_up.get(&(r, k)).copied().unwrap_or(0)
    }

    pub fn nu_minus(&self, r: usize, k: Death) -> usize {
        self.nu_down.get(&(r, k)).copied().unwrap_or(0)
    }

    pub fn nu_plus_table(&self) -> &StepTable {
        &self.nu_up
    }

    pub fn nu_minus_table(&self) -> &StepTable {
        &self.nu_down
    }

    /// `l⁺_r(i; j) = Σ_{k ≤ j} ν⁺_r(i; k)`.
    pub fn l_plus(&self, r: usize, j: usize) -> usize {
        (1..=j).map(|k| self.nu_plus(r, Death::Finite(k))).sum()
    }

    pub fn l_minus(&self, r: usize, j: usize) -> usize {
        (1..=j).map(|k| self.nu_minus(r, Death::Finite(k))).sum()
    }

    /// `ω_r(i; j, k)`: classes dying `j` steps down and `k` steps up.
    pub fn omega(&self, r: usize, j: Death, k: Death) -> usize {
        self.omega.get(&(r, j, k)).copied().unwrap_or(0)
    }

    pub fn omega_table(&self) -> &OmegaTable {
        &self.omega
    }

    /// `e_r(i; j, k) = Σ_{j' ≤ j, k' ≤ k} ω_r(i; j', k')`.
    pub fn e(&self, r: usize, j: Death, k: Death) -> usize {
        self.omega
            .iter()
            .filter(|(&(d, a, b), _)| d == r && a <= j && b <= k)
            .map(|(_, &n)| n)
            .sum()
    }

    /// Deaths more than `cutoff` away from `s_i` become infinite, and steps
    /// beyond it are dropped.
    pub fn truncated(&self, cutoff: Rational) -> LevelPoint {
        let up = self.up_steps.iter().take_while(|&&t| t <= cutoff).count();
        let down = self.down_steps.iter().take_while(|&&t| t <= cutoff).count();
        let cap = |d: Death, limit: usize| match d {
            Death::Finite(k) if k > limit => Death::Infinite,
            d => d,
        };
        let remap = |t: &StepTable, limit: usize| {
            let mut out = StepTable::new();
            for (&(r, k), &n) in t {
                *out.entry((r, cap(k, limit))).or_insert(0) += n;
            }
            out
        };
        let mut omega = OmegaTable::new();
        for (&(r, j, k), &n) in &self.omega {
            *omega.entry((r, cap(j, down), cap(k, up))).or_insert(0) += n;
        }
        LevelPoint {
            index: self.index,
            value: self.value,
            degrees: self.degrees,
            l: self.l.clone(),
            up_steps: self.up_steps[..up].to_vec(),
            down_steps: self.down_steps[..down].to_vec(),
            nu_up: remap(&self.nu_up, up),
            nu_down: remap(&self.nu_down, down),
            omega,
        }
    }

    /// Failures of the zero identities and of the agreement between the half
    /// space counts and the simultaneous counts.
    pub fn identity_violations(&self) -> Vec<String> {
        let mut out = Vec::new();
        let i = self.index;
        let (z, one, inf) = (Death::Finite(0), Death::Finite(1), Death::Infinite);
        for r in 0..self.degrees {
            let mut check = |ok: bool, what: &str| {
                if !ok {
                    out.push(format!("i={i} r={r}: {what}"));
                }
            };
            check(
                self.l_plus(r, 0) == 0 && self.l_minus(r, 0) == 0,
                "l±(i;0) = 0",
            );
            if SGrid::is_critical(i) {
                check(
                    self.l_plus(r, 1) == 0 && self.l_minus(r, 1) == 0,
                    "l±(2i;1) = 0",
                );
                check(self.e(r, one, one) == 0, "e(2i;1,1) = 0");
            }
            check(
                self.e(r, z, z) == 0 && self.e(r, z, one) == 0 && self.e(r, one, z) == 0,
                "e(i;0,0) = e(i;0,1) = e(i;1,0) = 0",
            );
            let downs = (1..=self.max_down()).map(Death::Finite).chain([inf]);
            for j in downs {
                let row: usize = self
                    .omega
                    .iter()
                    .filter(|(&(d, a, _), _)| d == r && a == j)
                    .map(|(_, n)| n)
                    .sum();
                check(row == self.nu_minus(r, j), "Σ_k ω(j,k) = ν⁻(j)");
            }
            let ups = (1..=self.max_up()).map(Death::Finite).chain([inf]);
            for k in ups {
                let col: usize = self
                    .omega
                    .iter()
                    .filter(|(&(d, _, b), _)| d == r && b == k)
                    .map(|(_, n)| n)
                    .sum();
                check(col == self.nu_plus(r, k), "Σ_j ω(j,k) = ν⁺(k)");
            }
            check(self.e(r, inf, inf) == self.l(r), "e(i;∞,∞) = l(i)");
            let total_up: usize = self
                .nu_up
                .iter()
                .filter(|(&(d, _), _)| d == r)
                .map(|(_, n)| n)
                .sum();
            check(total_up == self.l(r), "Σ ν⁺ = l");
            let total_down: usize = self
                .nu_down
                .iter()
                .filter(|(&(d, _), _)| d == r)
                .map(|(_, n)| n)
                .sum();
            check(total_down == self.l(r), "Σ ν⁻ = l");
        }
        out
    }
}

/// Level persistence at every point of the grid of vertex values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelPersistence {
    grid: SGrid,
    degrees: usize,
    points: Vec<LevelPoint>,
}

impl LevelPersistence {
    pub fn grid(&self) -> &SGrid {
        &self.grid
    }

    pub fn degrees(&self) -> usize {
        self.degrees
    }

    /// Point `i`, 1-based.
    pub fn point(&self, i: usize) -> &LevelPoint {
        &self.points[i - 1]
    }

    pub fn points(&self) -> &[LevelPoint] {
        &self.points
    }

    pub fn identity_violations(&self) -> Vec<String> {
        self.points
            .iter()
            .flat_map(|p| p.identity_violations())
            .collect()
    }
}

/// Stage of each view cell: 0 on the level, grid steps to the chunk's value
/// otherwise.
pub fn view_stages(view: &CellComplexView, grid: &SGrid, i: usize) -> Vec<usize> {
    view.cells()
        .iter()
        .zip(view.groups())
        .map(|(c, g)| match (c.role, g) {
            (CellRole::Simplex, Group::Minus) => grid.steps_down(i, c.value),
            (CellRole::Simplex, _) => grid.steps_up(i, c.value),
            _ => 0,
        })
        .collect()
}

fn level_counts(view: &CellComplexView, degrees: usize) -> Result<Vec<usize>> {
    let mut b = betti_numbers(&reduce_matrix(view.matrix())?);
    b.resize(degrees, 0);
    Ok(b)
}

fn halfspace_counts(
    complex: &SimplicialComplex,
    f: &Cochain0,
    grid: &SGrid,
    i: usize,
    side: Side,
) -> Result<StepTable> {
    let view = halfspace_cell_complex(complex, f, grid.s(i), side)?;
    let stages = view_stages(&view, grid, i);
    let mu = filtered_pairs(&view, &stages)?.mu();
    Ok(mu
        .into_iter()
        .filter(|&((_, birth, death), _)| birth == 0 && death != Death::Finite(0))
        .map(|((r, _, death), n)| ((r, death), n))
        .collect())
}

fn cut_counts(
    complex: &SimplicialComplex,
    f: &Cochain0,
    grid: &SGrid,
    i: usize,
) -> Result<OmegaTable> {
    let view = cut_cell_complex(complex, f, grid.s(i))?;
    let stages = view_stages(&view, grid, i);
    // Shared block first, then the down side, then the up side, each sorted
    // by its own stage.
    let span = grid.len() + 1;
    let key: Vec<usize> = view
        .groups()
        .iter()
        .zip(&stages)
        .map(|(g, &s)| match g {
            Group::Shared => 0,
            Group::Minus => s,
            Group::Plus => span + s,
        })
        .collect();
    let order = make_filtration_compatible(&view, &topological_order(&view), &key)?;
    let m = incidence_matrix(&view, &order)?;
    let groups: Vec<Group> = order.cells().iter().map(|&c| view.groups()[c]).collect();
    let by_pos: Vec<usize> = order.cells().iter().map(|&c| stages[c]).collect();
    let rel = relative_reduce(&m, &groups)?;
    Ok(simultaneous_numbers(&rel, &by_pos))
}

/// All level persistence numbers at grid point `i`.
pub fn level_point(
    complex: &SimplicialComplex,
    f: &Cochain0,
    grid: &SGrid,
    i: usize,
) -> Result<LevelPoint> {
    let degrees = complex.max_dim().map_or(0, |d| d + 1);
    let s = grid.s(i);
    let level = level_cell_complex(complex, f, s)?;
    Ok(LevelPoint {
        index: i,
        value: s,
        degrees,
        l: level_counts(&level, degrees)?,
        up_steps: (1..=grid.len() - i).map(|k| grid.s(i + k) - s).collect(),
        down_steps: (1..i).map(|k| s - grid.s(i - k)).collect(),
        nu_up: halfspace_counts(complex, f, grid, i, Side::Up)?,
        nu_down: halfspace_counts(complex, f, grid, i, Side::Down)?,
        omega: cut_counts(complex, f, grid, i)?,
    })
}

pub fn level_persistence(complex: &SimplicialComplex, f: &Cochain0) -> Result<LevelPersistence> {
    let grid = SGrid::from_values(complex, f)?;
    let points = (1..=grid.len())
        .map(|i| level_point(complex, f, &grid, i))
        .collect::<Result<Vec<_>>>()?;
    Ok(LevelPersistence {
        degrees: complex.max_dim().map_or(0, |d| d + 1),
        grid,
        points,
    })
}

/// Level persistence at an arbitrary level `s`, measured on the grid of
/// vertex values with `s` taking the place of the regular point beside it.
pub fn level_persistence_at(
    complex: &SimplicialComplex,
    f: &Cochain0,
    s: Rational,
) -> Result<LevelPoint> {
    f.check_injective(complex)?;
    let mut critical = f.values()[..complex.vertex_count()].to_vec();
    critical.sort_unstable();
    let (grid, i) = SGrid::through(critical, s)?;
    level_point(complex, f, &grid, i)
}
