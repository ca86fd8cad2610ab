//! Cell complexes read off the simplicial structure under a generic linear
//! map: levels `X_t`, half spaces `X_{t,∞}` / `X_{-∞,t}`, bands `X_{t1,t2}`
//! and the cut of `X` along a level.
//!
//! A simplex `σ` with value interval `[σ] = [lo, hi]` contributes a level cell
//! `σ̂` (one dimension lower) to `X_t` when `lo < t < hi`, and a chunk
//! `σ ∩ f⁻¹(I)` to any region `I` it meets in its interior. A vertex sitting
//! exactly on a level becomes a 0-cell of that level.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::cochain::Cochain0;
use crate::complex::{
    incidence_matrix, CellComplex, CellOrder, IncidenceMatrix, SimplexId, SimplicialComplex,
};
use crate::error::{Error, Result};
use crate::Rational;

/// Convex hull of the vertex values of a simplex.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValueInterval {
    pub lo: Rational,
    pub hi: Rational,
}

impl ValueInterval {
    pub fn of(complex: &SimplicialComplex, f: &Cochain0, simplex: SimplexId) -> Self {
        let s = complex.simplex(simplex);
        let mut lo = f.value(s[0]);
        let mut hi = lo;
        for &v in &s[1..] {
            lo = lo.min(f.value(v));
            hi = hi.max(f.value(v));
        }
        Self { lo, hi }
    }

    /// `lo < t < hi`.
    pub fn contains_interior(&self, t: Rational) -> bool {
        self.lo < t && t < self.hi
    }

    /// The closed interval meets the open interval `(a, b)`; `None` is unbounded.
    pub fn meets_open(&self, a: Option<Rational>, b: Option<Rational>) -> bool {
        a.is_none_or(|a| self.hi > a) && b.is_none_or(|b| self.lo < b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum CellRole {
    /// `σ̂` for a simplex crossing the level.
    Level,
    /// A vertex lying on the level.
    Vertex,
    /// A chunk of a simplex, keeping its dimension.
    Simplex,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Cell {
    pub origin: SimplexId,
    pub dim: usize,
    pub role: CellRole,
    /// The level for level and vertex cells; the max (up side) or min (down
    /// side) vertex value for simplex chunks.
    pub value: Rational,
}

/// Which part of a cut complex a cell belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Group {
    /// The level itself.
    Shared,
    /// Chunks below the level.
    Minus,
    /// Chunks above the level.
    Plus,
}

/// An ordered cell complex with its incidence matrix.
///
/// Cells are stored in construction order, which always satisfies Condition
/// A; `order` is that identity order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellComplexView {
    cells: Vec<Cell>,
    facets: Vec<Vec<usize>>,
    groups: Vec<Group>,
    order: CellOrder,
    matrix: IncidenceMatrix,
}

impl CellComplex for CellComplexView {
    fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn cell_dim(&self, cell: usize) -> usize {
        self.cells[cell].dim
    }

    fn facets(&self, cell: usize) -> &[usize] {
        &self.facets[cell]
    }
}

impl CellComplexView {
    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn cell(&self, id: usize) -> &Cell {
        &self.cells[id]
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn groups(&self) -> &[Group] {
        &self.groups
    }

    pub fn order(&self) -> &CellOrder {
        &self.order
    }

    pub fn matrix(&self) -> &IncidenceMatrix {
        &self.matrix
    }

    /// Cells whose role is level or vertex.
    pub fn level_cells(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len()).filter(|&c| self.cells[c].role != CellRole::Simplex)
    }
}

/// A bounded or unbounded open interval whose simplex chunks become cells.
#[derive(Clone, Copy)]
struct Region {
    lo: Option<Rational>,
    hi: Option<Rational>,
    group: Group,
    use_max: bool,
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Key {
    Level(usize, SimplexId),
    Vertex(usize),
    Chunk(usize, SimplexId),
}

struct Builder<'a> {
    complex: &'a SimplicialComplex,
    f: &'a Cochain0,
    intervals: Vec<ValueInterval>,
    levels: Vec<Rational>,
    cells: Vec<Cell>,
    facets: Vec<Vec<usize>>,
    groups: Vec<Group>,
    index: BTreeMap<Key, usize>,
}

impl<'a> Builder<'a> {
    fn new(complex: &'a SimplicialComplex, f: &'a Cochain0, levels: Vec<Rational>) -> Result<Self> {
        f.check_injective(complex)?;
        let intervals = (0..complex.len())
            .map(|s| ValueInterval::of(complex, f, s))
            .collect();
        Ok(Self {
            complex,
            f,
            intervals,
            levels,
            cells: Vec::new(),
            facets: Vec::new(),
            groups: Vec::new(),
            index: BTreeMap::new(),
        })
    }

    fn push(&mut self, key: Key, cell: Cell, facets: Vec<usize>, group: Group) {
        self.index.insert(key, self.cells.len());
        self.cells.push(cell);
        self.facets.push(facets);
        self.groups.push(group);
    }

    /// The vertex lying exactly on level `k`, if any.
    fn vertex_on(&self, k: usize) -> Option<usize> {
        let t = self.levels[k];
        (0..self.complex.vertex_count()).find(|&v| self.f.value(v) == t)
    }

    fn add_level(&mut self, k: usize) {
        let t = self.levels[k];
        let on_level = self.vertex_on(k);
        if let Some(v) = on_level {
            let cell = Cell {
                origin: v,
                dim: 0,
                role: CellRole::Vertex,
                value: t,
            };
            self.push(Key::Vertex(k), cell, Vec::new(), Group::Shared);
        }
        for s in 0..self.complex.len() {
            if !self.intervals[s].contains_interior(t) {
                continue;
            }
            let mut facets: Vec<usize> = self
                .complex
                .facets(s)
                .iter()
                .filter_map(|&tau| self.index.get(&Key::Level(k, tau)).copied())
                .collect();
            if let Some(v) = on_level {
                if self.complex.dim(s) == 2 && self.complex.simplex(s).contains(&v) {
                    facets.push(self.index[&Key::Vertex(k)]);
                }
            }
            let cell = Cell {
                origin: s,
                dim: self.complex.dim(s) - 1,
                role: CellRole::Level,
                value: t,
            };
            self.push(Key::Level(k, s), cell, facets, Group::Shared);
        }
    }

    /// Level index whose value is `t`.
    fn level_at(&self, t: Rational) -> Option<usize> {
        self.levels.iter().position(|&l| l == t)
    }

    fn add_region(&mut self, g: usize, region: Region) {
        for s in 0..self.complex.len() {
            let iv = self.intervals[s];
            if !iv.meets_open(region.lo, region.hi) {
                continue;
            }
            let mut facets: Vec<usize> = self
                .complex
                .facets(s)
                .iter()
                .filter_map(|&tau| self.index.get(&Key::Chunk(g, tau)).copied())
                .collect();
            for bound in [region.lo, region.hi].into_iter().flatten() {
                let k = self.level_at(bound).expect("region bounds are levels");
                if iv.contains_interior(bound) {
                    facets.push(self.index[&Key::Level(k, s)]);
                }
                if self.complex.dim(s) == 1
                    && self
                        .complex
                        .simplex(s)
                        .iter()
                        .any(|&v| self.f.value(v) == bound)
                {
                    facets.push(self.index[&Key::Vertex(k)]);
                }
            }
            let cell = Cell {
                origin: s,
                dim: self.complex.dim(s),
                role: CellRole::Simplex,
                value: if region.use_max { iv.hi } else { iv.lo },
            };
            self.push(Key::Chunk(g, s), cell, facets, region.group);
        }
    }

    fn finish(self) -> Result<CellComplexView> {
        let mut facets = self.facets;
        for f in &mut facets {
            f.sort_unstable();
        }
        let mut view = CellComplexView {
            cells: self.cells,
            facets,
            groups: self.groups,
            order: CellOrder::new(&SimplicialComplex::empty(), Vec::new())?,
            matrix: IncidenceMatrix::from_columns(Vec::new(), Vec::new(), Vec::new()),
        };
        view.order = CellOrder::new(&view, (0..view.len()).collect())?;
        view.matrix = incidence_matrix(&view, &view.order)?;
        Ok(view)
    }
}

/// `X_t`: one cell `σ̂` per simplex with `t` in the interior of `[σ]`, preceded
/// by the vertex with value `t` when there is one.
pub fn level_cell_complex(
    complex: &SimplicialComplex,
    f: &Cochain0,
    t: Rational,
) -> Result<CellComplexView> {
    let mut b = Builder::new(complex, f, alloc::vec![t])?;
    b.add_level(0);
    b.finish()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Side {
    /// `X_{t,∞}`, filtered by `f - t`.
    Up,
    /// `X_{-∞,t}`, filtered by `t - f`.
    Down,
}

/// `X_t` followed by the chunks of simplices meeting `(t, ∞)` (up) or
/// `(-∞, t)` (down).
pub fn halfspace_cell_complex(
    complex: &SimplicialComplex,
    f: &Cochain0,
    t: Rational,
    side: Side,
) -> Result<CellComplexView> {
    let mut b = Builder::new(complex, f, alloc::vec![t])?;
    b.add_level(0);
    b.add_region(0, region(t, side));
    b.finish()
}

fn region(t: Rational, side: Side) -> Region {
    match side {
        Side::Up => Region {
            lo: Some(t),
            hi: None,
            group: Group::Plus,
            use_max: true,
        },
        Side::Down => Region {
            lo: None,
            hi: Some(t),
            group: Group::Minus,
            use_max: false,
        },
    }
}

/// `X_{t1}`, then `X_{t2}`, then the chunks of simplices meeting `(t1, t2)`.
pub fn band_cell_complex(
    complex: &SimplicialComplex,
    f: &Cochain0,
    t1: Rational,
    t2: Rational,
) -> Result<CellComplexView> {
    if t1 >= t2 {
        return Err(Error::BadInterval);
    }
    let mut b = Builder::new(complex, f, alloc::vec![t1, t2])?;
    b.add_level(0);
    b.add_level(1);
    b.add_region(
        0,
        Region {
            lo: Some(t1),
            hi: Some(t2),
            group: Group::Plus,
            use_max: true,
        },
    );
    b.finish()
}

/// `X` cut open along `X_t`: the level (group [`Group::Shared`]), then the
/// down chunks, then the up chunks. The two halves meet only in the level.
pub fn cut_cell_complex(
    complex: &SimplicialComplex,
    f: &Cochain0,
    t: Rational,
) -> Result<CellComplexView> {
    let mut b = Builder::new(complex, f, alloc::vec![t])?;
    b.add_level(0);
    b.add_region(0, region(t, Side::Down));
    b.add_region(1, region(t, Side::Up));
    b.finish()
}

/// The whole complex as a view, each simplex valued by its max vertex value.
pub fn simplicial_view(complex: &SimplicialComplex, f: &Cochain0) -> Result<CellComplexView> {
    let mut b = Builder::new(complex, f, Vec::new())?;
    b.add_region(
        0,
        Region {
            lo: None,
            hi: None,
            group: Group::Plus,
            use_max: true,
        },
    );
    b.finish()
}

/// Stage of each simplex in the sublevel filtration: the rank of its max
/// vertex value among the sorted vertex values.
pub fn sublevel_subcomplex_filtration(
    complex: &SimplicialComplex,
    f: &Cochain0,
) -> Result<Vec<usize>> {
    f.check_injective(complex)?;
    let mut values: Vec<Rational> = f.values()[..complex.vertex_count()].to_vec();
    values.sort_unstable();
    Ok((0..complex.len())
        .map(|s| {
            let hi = ValueInterval::of(complex, f, s).hi;
            values.binary_search(&hi).unwrap()
        })
        .collect())
}
