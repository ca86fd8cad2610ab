//! Finite pieces of the infinite cyclic cover of a circle-valued map.
//!
//! Cutting the circle at a regular angle `θ` splits the simplices into those
//! crossing `θ` (`L`), their faces just below and just above `θ` (`∂₋`, `∂₊`),
//! and the rest (`T`). Stacking copies of these blocks in the order
//! `∂₋(0), ∂₊(0), L(0), ∂₋(1), T(0), ∂₊(1), L(1), ...` gives a complex whose
//! vertices carry real lifts of the angles.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::cochain::{CircleMap, Cochain0};
use crate::complex::{
    incidence_matrix, CellComplex, CellOrder, IncidenceMatrix, SimplexId, SimplicialComplex,
    VertexId,
};
use crate::error::{Error, Result};
use crate::rational::{int, rem_euclid, short_rem, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Block {
    /// Non-crossing faces of crossing simplices lying just below `θ`.
    DownBoundary,
    /// Simplices whose short arc crosses `θ`.
    Level,
    /// Non-crossing faces of crossing simplices lying just above `θ`.
    UpBoundary,
    /// Everything else.
    Rest,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThetaDecomposition {
    theta: Rational,
    alpha: Rational,
    blocks: Vec<Block>,
}

impl ThetaDecomposition {
    pub fn theta(&self) -> Rational {
        self.theta
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    pub fn block(&self, simplex: SimplexId) -> Block {
        self.blocks[simplex]
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn members(&self, block: Block) -> impl Iterator<Item = SimplexId> + '_ {
        (0..self.blocks.len()).filter(move |&s| self.blocks[s] == block)
    }
}

/// Lifts of the vertices of `simplex` along the short arcs from its first
/// vertex.
fn short_lifts(complex: &SimplicialComplex, cm: &CircleMap, simplex: SimplexId) -> Vec<Rational> {
    let s = complex.simplex(simplex);
    let a0 = cm.angle(s[0]);
    s.iter()
        .map(|&v| a0 + short_rem(cm.angle(v) - a0, cm.alpha()))
        .collect()
}

pub fn theta_decompose(
    complex: &SimplicialComplex,
    cm: &CircleMap,
    theta: Rational,
) -> Result<ThetaDecomposition> {
    let alpha = cm.alpha();
    if cm.angles().len() < complex.vertex_count() {
        return Err(Error::MissingVertexValue {
            vertex: cm.angles().len(),
        });
    }
    if let Some(v) =
        (0..complex.vertex_count()).find(|&v| rem_euclid(cm.angle(v) - theta, alpha).is_zero())
    {
        return Err(Error::VertexOnLevel { vertex: v });
    }
    let half = alpha / int(2);
    let mut blocks = alloc::vec![Block::Rest; complex.len()];
    for (s, block) in blocks.iter_mut().enumerate() {
        let lifts = short_lifts(complex, cm, s);
        let lo = *lifts.iter().min().unwrap();
        let hi = *lifts.iter().max().unwrap();
        let span = hi - lo;
        if span >= half {
            return Err(Error::SpanTooWide { simplex: s });
        }
        let x = rem_euclid(theta - lo, alpha);
        if x > Rational::zero() && x < span {
            *block = Block::Level;
        }
    }
    for s in 0..complex.len() {
        if blocks[s] != Block::Level {
            continue;
        }
        let mut stack: Vec<SimplexId> = complex.facets(s).to_vec();
        while let Some(t) = stack.pop() {
            if blocks[t] != Block::Rest {
                continue;
            }
            let first = complex.simplex(t)[0];
            blocks[t] = if short_rem(theta - cm.angle(first), alpha) > Rational::zero() {
                Block::DownBoundary
            } else {
                Block::UpBoundary
            };
            stack.extend_from_slice(complex.facets(t));
        }
    }
    Ok(ThetaDecomposition {
        theta,
        alpha,
        blocks,
    })
}

/// Copy budget sufficient for every persistence number: `|X|`.
pub fn max_copies_needed(complex: &SimplicialComplex) -> usize {
    complex.len()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnrolledCell {
    pub block: Block,
    pub copy: usize,
    pub origin: SimplexId,
}

/// `X̃(n)` with cells in juxtaposition order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnrolledComplex {
    cells: Vec<UnrolledCell>,
    dims: Vec<usize>,
    facets: Vec<Vec<usize>>,
    matrix: IncidenceMatrix,
    realized: SimplicialComplex,
    realized_id: Vec<SimplexId>,
    lifted: Cochain0,
    copies: usize,
}

impl CellComplex for UnrolledComplex {
    fn cell_count(&self) -> usize {
        self.cells.len()
    }

    fn cell_dim(&self, cell: usize) -> usize {
        self.dims[cell]
    }

    fn facets(&self, cell: usize) -> &[usize] {
        &self.facets[cell]
    }
}

impl UnrolledComplex {
    pub fn cells(&self) -> &[UnrolledCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn copies(&self) -> usize {
        self.copies
    }

    pub fn matrix(&self) -> &IncidenceMatrix {
        &self.matrix
    }

    /// The same cells as an ordinary simplicial complex on fresh vertices.
    pub fn realized(&self) -> &SimplicialComplex {
        &self.realized
    }

    /// Simplex of [`UnrolledComplex::realized`] for every cell.
    pub fn realized_id(&self, cell: usize) -> SimplexId {
        self.realized_id[cell]
    }

    /// Real lift of the circle map on the vertices of the realized complex.
    pub fn lifted(&self) -> &Cochain0 {
        &self.lifted
    }

    pub fn position(&self, cell: UnrolledCell) -> Option<usize> {
        self.cells.iter().position(|&c| c == cell)
    }
}

/// Builds `X̃(n_copies)`.
///
/// `L(n)` has its faces in `L(n)`, `∂₋(n)` and `∂₊(n)`; `T(n)` has its faces
/// in `T(n)`, `∂₊(n)` and `∂₋(n+1)`. A vertex of angle `a` lifts to
/// `θ + ((a - θ) mod α) + nα` in copy `n`, less `α` when it lies in `∂₋`.
pub fn unroll(
    decomp: &ThetaDecomposition,
    complex: &SimplicialComplex,
    cm: &CircleMap,
    n_copies: usize,
) -> Result<UnrolledComplex> {
    let by_block = |b: Block| decomp.members(b).collect::<Vec<_>>();
    let (down, level, up, rest) = (
        by_block(Block::DownBoundary),
        by_block(Block::Level),
        by_block(Block::UpBoundary),
        by_block(Block::Rest),
    );
    let mut cells = Vec::new();
    let mut push = |block: Block, copy: usize, members: &[SimplexId]| {
        for &origin in members {
            cells.push(UnrolledCell {
                block,
                copy,
                origin,
            });
        }
    };
    push(Block::DownBoundary, 0, &down);
    for n in 0..n_copies {
        push(Block::UpBoundary, n, &up);
        push(Block::Level, n, &level);
        push(Block::DownBoundary, n + 1, &down);
        push(Block::Rest, n, &rest);
    }
    let index: BTreeMap<UnrolledCell, usize> =
        cells.iter().enumerate().map(|(p, &c)| (c, p)).collect();

    // Block and copy holding the face `tau` of a cell in `cell`'s block.
    let face_home = |cell: UnrolledCell, tau: SimplexId| -> UnrolledCell {
        let b = decomp.block(tau);
        let copy = match (cell.block, b) {
            (Block::Rest, Block::DownBoundary) => cell.copy + 1,
            _ => cell.copy,
        };
        UnrolledCell {
            block: b,
            copy,
            origin: tau,
        }
    };

    let facets: Vec<Vec<usize>> = cells
        .iter()
        .map(|&c| {
            let mut f: Vec<usize> = complex
                .facets(c.origin)
                .iter()
                .map(|&tau| index[&face_home(c, tau)])
                .collect();
            f.sort_unstable();
            f
        })
        .collect();
    let dims: Vec<usize> = cells.iter().map(|c| complex.dim(c.origin)).collect();

    let alpha = decomp.alpha();
    let theta = decomp.theta();
    let mut vertex_of: BTreeMap<usize, VertexId> = BTreeMap::new();
    let mut lifted = Vec::new();
    for (p, c) in cells.iter().enumerate() {
        if dims[p] == 0 {
            let base = theta + rem_euclid(cm.angle(c.origin) - theta, alpha);
            let shift = if c.block == Block::DownBoundary {
                int(c.copy as i128 - 1)
            } else {
                int(c.copy as i128)
            };
            vertex_of.insert(p, lifted.len());
            lifted.push(base + shift * alpha);
        }
    }
    // Vertices of every cell, collected through its faces.
    let mut vertex_sets: Vec<Vec<VertexId>> = Vec::with_capacity(cells.len());
    for p in 0..cells.len() {
        let set = if dims[p] == 0 {
            alloc::vec![vertex_of[&p]]
        } else {
            let mut s: Vec<VertexId> = facets[p]
                .iter()
                .flat_map(|&f| vertex_sets[f].iter().copied())
                .collect();
            s.sort_unstable();
            s.dedup();
            s
        };
        vertex_sets.push(set);
    }
    let realized = SimplicialComplex::build(lifted.len(), &vertex_sets)?;
    let realized_id = vertex_sets
        .iter()
        .map(|s| realized.id_of(s).expect("every cell is realized"))
        .collect();

    let mut out = UnrolledComplex {
        cells,
        dims,
        facets,
        matrix: IncidenceMatrix::from_columns(Vec::new(), Vec::new(), Vec::new()),
        realized,
        realized_id,
        lifted: Cochain0::new(lifted),
        copies: n_copies,
    };
    let order = CellOrder::new(&out, (0..out.len()).collect())?;
    out.matrix = incidence_matrix(&out, &order)?;
    Ok(out)
}
