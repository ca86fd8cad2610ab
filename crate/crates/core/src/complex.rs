//! Simplicial complexes, cell orders and GF(2) incidence matrices.
//!
//! Simplices are identified by their strictly increasing vertex tuple, which
//! doubles as the canonical orientation. Orientation signs never matter over
//! the two-element field, so none are stored.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type SimplexId = usize;

/// Anything with cells, cell dimensions and codimension-1 faces.
///
/// Facets of a cell must have dimension exactly one less than the cell.
pub trait CellComplex {
    fn cell_count(&self) -> usize;
    fn cell_dim(&self, cell: usize) -> usize;
    fn facets(&self, cell: usize) -> &[usize];

    fn max_dim(&self) -> Option<usize> {
        (0..self.cell_count()).map(|c| self.cell_dim(c)).max()
    }
}

/// A finite face-closed family of vertex sets.
///
/// Vertices `0..vertex_count` are always present as 0-simplices, so the
/// simplex id of vertex `v` is `v`. Simplices are sorted by dimension and then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertex_count: usize,
    simplices: Vec<Vec<VertexId>>,
    index: BTreeMap<Vec<VertexId>, SimplexId>,
    facets: Vec<Vec<SimplexId>>,
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        Self::from_closed(0, BTreeSet::new())
    }

    /// Face closure of `maximal` on the vertex set `0..vertex_count`.
    pub fn build(vertex_count: usize, maximal: &[Vec<VertexId>]) -> Result<Self> {
        let mut closed = BTreeSet::new();
        for simplex in maximal {
            if simplex.is_empty() {
                return Err(Error::EmptyInput);
            }
            let mut sorted = simplex.clone();
            sorted.sort_unstable();
            for pair in sorted.windows(2) {
                if pair[0] == pair[1] {
                    return Err(Error::RepeatedVertex { vertex: pair[0] });
                }
            }
            if let Some(&v) = sorted.iter().find(|&&v| v >= vertex_count) {
                return Err(Error::InvalidVertexId {
                    vertex: v,
                    vertex_count,
                });
            }
            insert_faces(&sorted, &mut closed);
        }
        Ok(Self::from_closed(vertex_count, closed))
    }

    fn from_closed(vertex_count: usize, mut closed: BTreeSet<Vec<VertexId>>) -> Self {
        for v in 0..vertex_count {
            closed.insert(alloc::vec![v]);
        }
        let mut simplices: Vec<Vec<VertexId>> = closed.into_iter().collect();
        simplices.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let index: BTreeMap<_, _> = simplices
            .iter()
            .enumerate()
            .map(|(i, s)| (s.clone(), i))
            .collect();
        let facets = simplices
            .iter()
            .map(|s| {
                if s.len() < 2 {
                    return Vec::new();
                }
                let mut f: Vec<SimplexId> = (0..s.len())
                    .map(|skip| {
                        let face: Vec<VertexId> = s
                            .iter()
                            .enumerate()
                            .filter(|&(i, _)| i != skip)
                            .map(|(_, &v)| v)
                            .collect();
                        index[&face]
                    })
                    .collect();
                f.sort_unstable();
                f
            })
            .collect();
        Self {
            vertex_count,
            simplices,
            index,
            facets,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn simplices(&self) -> &[Vec<VertexId>] {
        &self.simplices
    }

    pub fn simplex(&self, id: SimplexId) -> &[VertexId] {
        &self.simplices[id]
    }

    pub fn dim(&self, id: SimplexId) -> usize {
        self.simplices[id].len() - 1
    }

    pub fn id_of(&self, vertices: &[VertexId]) -> Option<SimplexId> {
        let mut key = vertices.to_vec();
        key.sort_unstable();
        self.index.get(&key).copied()
    }

    /// Ids of all simplices of dimension `dim`, in stored order.
    pub fn of_dim(&self, dim: usize) -> impl Iterator<Item = SimplexId> + '_ {
        self.simplices
            .iter()
            .enumerate()
            .filter(move |(_, s)| s.len() == dim + 1)
            .map(|(i, _)| i)
    }

    /// Edges as canonical `(x, y)` pairs with `x < y`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        self.of_dim(1)
            .map(|e| (self.simplices[e][0], self.simplices[e][1]))
    }

    /// Simplices that are not a proper face of another simplex.
    pub fn maximal_simplices(&self) -> Vec<Vec<VertexId>> {
        let mut has_coface = alloc::vec![false; self.len()];
        for f in &self.facets {
            for &face in f {
                has_coface[face] = true;
            }
        }
        self.simplices
            .iter()
            .zip(has_coface)
            .filter(|(_, c)| !c)
            .map(|(s, _)| s.clone())
            .collect()
    }

    /// Neighbours of every vertex through edges, sorted.
    pub fn adjacency(&self) -> Vec<Vec<VertexId>> {
        let mut adj = alloc::vec![Vec::new(); self.vertex_count];
        for (x, y) in self.edges() {
            adj[x].push(y);
            adj[y].push(x);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        adj
    }

    /// Closed star of `v`: every simplex containing `v`, together with all of
    /// its faces.
    pub fn star(&self, v: VertexId) -> Result<BTreeSet<SimplexId>> {
        if v >= self.vertex_count {
            return Err(Error::InvalidVertexId {
                vertex: v,
                vertex_count: self.vertex_count,
            });
        }
        let mut star = BTreeSet::new();
        for s in self.simplices.iter().filter(|s| s.contains(&v)) {
            let mut faces = BTreeSet::new();
            insert_faces(s, &mut faces);
            star.extend(faces.iter().map(|f| self.index[f]));
        }
        Ok(star)
    }
}

impl CellComplex for SimplicialComplex {
    fn cell_count(&self) -> usize {
        self.len()
    }

    fn cell_dim(&self, cell: usize) -> usize {
        self.dim(cell)
    }

    fn facets(&self, cell: usize) -> &[usize] {
        &self.facets[cell]
    }
}

fn insert_faces(sorted: &[VertexId], out: &mut BTreeSet<Vec<VertexId>>) {
    let n = sorted.len();
    debug_assert!(n < usize::BITS as usize);
    for mask in 1usize..(1 << n) {
        let face: Vec<VertexId> = (0..n)
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| sorted[i])
            .collect();
        out.insert(face);
    }
}

/// A total order on the cells of a complex.
///
/// `cells[p]` is the cell placed at position `p`. The flags record what was
/// verified when the order was produced.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellOrder {
    cells: Vec<usize>,
    satisfies_a: bool,
    satisfies_b: bool,
}

impl CellOrder {
    /// Wrap an explicit order; checks that it is a permutation and records
    /// whether faces precede cofaces.
    pub fn new(complex: &impl CellComplex, cells: Vec<usize>) -> Result<Self> {
        let n = complex.cell_count();
        if cells.len() != n {
            return Err(Error::NotAPermutation);
        }
        let mut seen = alloc::vec![false; n];
        for &c in &cells {
            if c >= n || seen[c] {
                return Err(Error::NotAPermutation);
            }
            seen[c] = true;
        }
        let satisfies_a = condition_a_violation(complex, &cells).is_none();
        Ok(Self {
            cells,
            satisfies_a,
            satisfies_b: false,
        })
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn satisfies_a(&self) -> bool {
        self.satisfies_a
    }

    /// Set only by [`make_filtration_compatible`].
    pub fn satisfies_b(&self) -> bool {
        self.satisfies_b
    }

    /// Inverse permutation: position of every cell.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = alloc::vec![0; self.cells.len()];
        for (p, &c) in self.cells.iter().enumerate() {
            pos[c] = p;
        }
        pos
    }
}

/// First `(face, coface)` pair placed in the wrong order, if any.
pub fn condition_a_violation(
    complex: &impl CellComplex,
    cells: &[usize],
) -> Option<(usize, usize)> {
    let mut pos = alloc::vec![usize::MAX; complex.cell_count()];
    for (p, &c) in cells.iter().enumerate() {
        pos[c] = p;
    }
    for &c in cells {
        for &f in complex.facets(c) {
            if pos[f] >= pos[c] {
                return Some((f, c));
            }
        }
    }
    None
}

/// True when stages never decrease along the order.
pub fn satisfies_condition_b(cells: &[usize], stages: &[usize]) -> bool {
    cells.windows(2).all(|w| stages[w[0]] <= stages[w[1]])
}

/// Dimension first, then the complex's own cell order.
pub fn topological_order(complex: &impl CellComplex) -> CellOrder {
    let mut cells: Vec<usize> = (0..complex.cell_count()).collect();
    cells.sort_by_key(|&c| complex.cell_dim(c));
    let satisfies_a = condition_a_violation(complex, &cells).is_none();
    debug_assert!(satisfies_a);
    CellOrder {
        cells,
        satisfies_a,
        satisfies_b: false,
    }
}

/// Repairs a Condition-A order so that it also respects `stages`.
///
/// Repeatedly takes the first cell entering at a smaller stage than some
/// earlier cell and swaps it leftward past its predecessor until no
/// predecessor has a larger stage. Each swap keeps faces before cofaces,
/// because a face never enters later than its coface.
pub fn make_filtration_compatible(
    complex: &impl CellComplex,
    order: &CellOrder,
    stages: &[usize],
) -> Result<CellOrder> {
    let n = complex.cell_count();
    if stages.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: stages.len(),
        });
    }
    if let Some((face, coface)) = condition_a_violation(complex, order.cells()) {
        return Err(Error::OrderViolatesConditionA { face, coface });
    }
    for c in 0..n {
        for &f in complex.facets(c) {
            if stages[f] > stages[c] {
                return Err(Error::NonMonotoneFiltration { face: f, coface: c });
            }
        }
    }
    let mut cells = order.cells().to_vec();
    while let Some(mut p) = first_condition_b_violator(&cells, stages) {
        while p > 0 && stages[cells[p - 1]] > stages[cells[p]] {
            cells.swap(p - 1, p);
            p -= 1;
        }
    }
    debug_assert!(condition_a_violation(complex, &cells).is_none());
    Ok(CellOrder {
        cells,
        satisfies_a: true,
        satisfies_b: true,
    })
}

/// Position of the first cell preceded by a cell of a larger stage.
fn first_condition_b_violator(cells: &[usize], stages: &[usize]) -> Option<usize> {
    let mut running_max = 0;
    for (p, &c) in cells.iter().enumerate() {
        if p > 0 && stages[c] < running_max {
            return Some(p);
        }
        running_max = running_max.max(stages[c]);
    }
    None
}

/// Boundary matrix over GF(2) in a fixed cell order.
///
/// Column `j` lists the positions of the codimension-1 faces of the cell at
/// position `j`, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IncidenceMatrix {
    cells: Vec<usize>,
    dims: Vec<usize>,
    columns: Vec<Vec<usize>>,
}

impl IncidenceMatrix {
    /// Build directly from columns. Callers are responsible for the class-U
    /// property; [`IncidenceMatrix::is_class_u`] checks it.
    pub fn from_columns(cells: Vec<usize>, dims: Vec<usize>, columns: Vec<Vec<usize>>) -> Self {
        let columns = columns
            .into_iter()
            .map(|mut c| {
                c.sort_unstable();
                c
            })
            .collect();
        Self {
            cells,
            dims,
            columns,
        }
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Cell stored at every position.
    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    pub fn columns(&self) -> &[Vec<usize>] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> bool {
        self.columns[j].binary_search(&i).is_ok()
    }

    /// Upper triangular with zero diagonal.
    pub fn is_class_u(&self) -> bool {
        self.columns
            .iter()
            .enumerate()
            .all(|(j, col)| col.iter().all(|&i| i < j))
    }
}

/// `M[i, j] = 1` exactly when the cell at position `i` is a codimension-1
/// face of the cell at position `j`.
pub fn incidence_matrix(complex: &impl CellComplex, order: &CellOrder) -> Result<IncidenceMatrix> {
    if let Some((face, coface)) = condition_a_violation(complex, order.cells()) {
        return Err(Error::OrderViolatesConditionA { face, coface });
    }
    let pos = order.positions();
    let cells = order.cells().to_vec();
    let dims = cells.iter().map(|&c| complex.cell_dim(c)).collect();
    let columns = cells
        .iter()
        .map(|&c| complex.facets(c).iter().map(|&f| pos[f]).collect())
        .collect();
    Ok(IncidenceMatrix::from_columns(cells, dims, columns))
}
