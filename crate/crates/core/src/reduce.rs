//! Column reduction over GF(2), persistence pairs, and the relative reduction
//! of a cut complex that yields simultaneous persistence.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::complex::IncidenceMatrix;
use crate::derive::Group;
use crate::error::{Error, Result};

/// A sparse GF(2) column as sorted row positions.
pub type Column = Vec<usize>;

/// Symmetric difference of two sorted columns.
pub fn add_columns(a: &[usize], b: &[usize]) -> Column {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => {
                out.push(a[i]);
                i += 1;
            }
            core::cmp::Ordering::Greater => {
                out.push(b[j]);
                j += 1;
            }
            core::cmp::Ordering::Equal => {
                i += 1;
                j += 1;
            }
        }
    }
    out.extend_from_slice(&a[i..]);
    out.extend_from_slice(&b[j..]);
    out
}

/// A basis in echelon form, keyed by the low of each vector.
#[derive(Clone, Debug, Default)]
pub struct PivotBasis {
    by_low: BTreeMap<usize, Column>,
}

impl PivotBasis {
    pub fn new() -> Self {
        Self::default()
    }

    /// Reduces `col` against the basis. The result is zero or has a low not
    /// owned by the basis.
    pub fn reduce(&self, mut col: Column) -> Column {
        while let Some(&low) = col.last() {
            match self.by_low.get(&low) {
                Some(b) => col = add_columns(&col, b),
                None => break,
            }
        }
        col
    }

    /// Adds `col` to the basis; returns false when it was already in the span.
    pub fn insert(&mut self, col: Column) -> bool {
        let col = self.reduce(col);
        match col.last() {
            Some(&low) => {
                self.by_low.insert(low, col);
                true
            }
            None => false,
        }
    }

    pub fn contains(&self, col: Column) -> bool {
        self.reduce(col).is_empty()
    }

    pub fn rank(&self) -> usize {
        self.by_low.len()
    }
}

/// A matrix in reduced form: no two nonzero columns share a low.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedMatrix {
    columns: Vec<Column>,
    low: Vec<Option<usize>>,
    dims: Vec<usize>,
    cells: Vec<usize>,
}

impl ReducedMatrix {
    pub fn columns(&self) -> &[Column] {
        &self.columns
    }

    pub fn column(&self, j: usize) -> &[usize] {
        &self.columns[j]
    }

    /// Largest nonzero row of column `j`.
    pub fn low(&self, j: usize) -> Option<usize> {
        self.low[j]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn cells(&self) -> &[usize] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.columns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.columns.is_empty()
    }

    /// Column whose low is row `i`, if any.
    pub fn column_with_low(&self, i: usize) -> Option<usize> {
        (0..self.len()).find(|&j| self.low[j] == Some(i))
    }

    pub fn is_reduced(&self) -> bool {
        let mut seen = BTreeMap::new();
        self.low
            .iter()
            .flatten()
            .all(|&l| seen.insert(l, ()).is_none())
    }
}

/// Left-to-right reduction: while the low of column `j` is owned by an
/// earlier column, add that column.
pub fn reduce_matrix(m: &IncidenceMatrix) -> Result<ReducedMatrix> {
    reduce_columns(m.columns().to_vec(), m.dims().to_vec(), m.cells().to_vec())
}

fn reduce_columns(
    columns: Vec<Column>,
    dims: Vec<usize>,
    cells: Vec<usize>,
) -> Result<ReducedMatrix> {
    for (j, col) in columns.iter().enumerate() {
        if col.iter().any(|&i| i >= j) {
            return Err(Error::NotUpperTriangular { column: j });
        }
    }
    let n = columns.len();
    let mut owner: Vec<Option<usize>> = alloc::vec![None; n];
    let mut out: Vec<Column> = Vec::with_capacity(n);
    let mut low = Vec::with_capacity(n);
    for mut col in columns {
        while let Some(&l) = col.last() {
            match owner[l] {
                Some(k) => col = add_columns(&col, &out[k]),
                None => break,
            }
        }
        let l = col.last().copied();
        if let Some(l) = l {
            owner[l] = Some(out.len());
        }
        low.push(l);
        out.push(col);
    }
    Ok(ReducedMatrix {
        columns: out,
        low,
        dims,
        cells,
    })
}

fn degree_count(dims: &[usize]) -> usize {
    dims.iter().max().map_or(0, |d| d + 1)
}

/// `dim H_r` = zero `r`-columns minus nonzero `(r+1)`-columns.
pub fn betti_numbers(r: &ReducedMatrix) -> Vec<usize> {
    let top = degree_count(&r.dims);
    let mut zero = alloc::vec![0usize; top + 1];
    let mut nonzero = alloc::vec![0usize; top + 1];
    for j in 0..r.len() {
        if r.low[j].is_some() {
            nonzero[r.dims[j]] += 1;
        } else {
            zero[r.dims[j]] += 1;
        }
    }
    (0..top).map(|d| zero[d] - nonzero[d + 1]).collect()
}

/// Death stage of a class; essential classes never die.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Death {
    Finite(usize),
    Infinite,
}

impl Death {
    pub fn finite(self) -> Option<usize> {
        match self {
            Death::Finite(k) => Some(k),
            Death::Infinite => None,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Pair {
    /// Position of the cell creating the class.
    pub birth: usize,
    /// Position of the cell killing it.
    pub death: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairTable {
    pub pairs: Vec<Pair>,
    /// `(position, degree)` of zero columns that are no column's low.
    pub unpaired: Vec<(usize, usize)>,
    /// Stage of every position.
    pub stages: Vec<usize>,
}

/// `(r, i, j) -> count` with `j` possibly infinite.
pub type CountTable = BTreeMap<(usize, usize, Death), usize>;

impl PairTable {
    /// `μ_r(i, j)`: pairs born at stage `i` and killed at stage `j`, plus the
    /// essential classes born at `i` under `j = ∞`. Same-stage pairs are kept.
    pub fn mu(&self) -> CountTable {
        let mut t = CountTable::new();
        for p in &self.pairs {
            let key = (
                p.degree,
                self.stages[p.birth],
                Death::Finite(self.stages[p.death]),
            );
            *t.entry(key).or_insert(0) += 1;
        }
        for &(pos, r) in &self.unpaired {
            *t.entry((r, self.stages[pos], Death::Infinite)).or_insert(0) += 1;
        }
        t
    }
}

/// Pairs `(low(j), j)` of a reduced matrix. `stages` is indexed by cell id and
/// must be nondecreasing along the order of `r`.
pub fn persistence_pairs(r: &ReducedMatrix, stages: &[usize]) -> Result<PairTable> {
    let by_pos: Vec<usize> = r.cells.iter().map(|&c| stages[c]).collect();
    if let Some(p) = (1..by_pos.len()).find(|&p| by_pos[p - 1] > by_pos[p]) {
        return Err(Error::OrderNotFiltrationCompatible { position: p });
    }
    let mut is_low = alloc::vec![false; r.len()];
    let mut pairs = Vec::new();
    for j in 0..r.len() {
        if let Some(i) = r.low[j] {
            is_low[i] = true;
            pairs.push(Pair {
                birth: i,
                death: j,
                degree: r.dims[i],
            });
        }
    }
    let unpaired = (0..r.len())
        .filter(|&j| r.low[j].is_none() && !is_low[j])
        .map(|j| (j, r.dims[j]))
        .collect();
    Ok(PairTable {
        pairs,
        unpaired,
        stages: by_pos,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Triple {
    /// Position of an `r`-cell of the shared block.
    pub k: usize,
    /// Position of the down-side cell at whose stage the class dies below.
    pub k_minus: usize,
    /// Position of the up-side cell killing the class above.
    pub k_plus: usize,
    pub degree: usize,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TripleTable {
    pub triples: Vec<Triple>,
}

/// Both halves of a cut complex reduced with a common reduction of the shared
/// block, together with the classes each half kills.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelativeReduction {
    /// `[A | II]`, column and row positions as in the full matrix.
    pub minus: ReducedMatrix,
    /// `[A | III]`, positions as in the full matrix.
    pub plus: ReducedMatrix,
    pub triples: TripleTable,
    /// Down-side positions whose reduced column lies in `A`.
    pub killed_minus: Vec<usize>,
    /// Up-side positions whose reduced column lies in `A`.
    pub killed_plus: Vec<usize>,
    /// `dim H_r(A)` for every degree.
    pub shared_betti: Vec<usize>,
    pub groups: Vec<Group>,
}

/// Reduces `[A | II]` and `[A | III]`, then finds for each class killed in
/// `III` the down-side stage at which it also becomes a boundary.
///
/// A cycle `w` killed above is matched with the shortest prefix `U_{<p}` of
/// the classes killed below such that `w` lies in the span of `B(A)`, the
/// earlier up-killed cycles and `U_{<p}`; the triple is then
/// `(low(w), U[p-1], w)`. This counts `dim(K⁻_j ∩ K⁺_k)` exactly for every
/// pair of prefixes.
///
/// `groups` is indexed by position. Shared cells must come first and the two
/// halves may only meet in shared cells.
pub fn relative_reduce(m: &IncidenceMatrix, groups: &[Group]) -> Result<RelativeReduction> {
    let n = m.len();
    if groups.len() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: groups.len(),
        });
    }
    let shared = groups.iter().take_while(|&&g| g == Group::Shared).count();
    if groups[shared..].contains(&Group::Shared) {
        return Err(Error::BlocksOverlap("shared cells must come first".into()));
    }
    for j in 0..n {
        for &i in m.column(j) {
            let (gi, gj) = (groups[i], groups[j]);
            if gi != gj && gi != Group::Shared {
                return Err(Error::BlocksOverlap(alloc::format!(
                    "cell at {j} has a face at {i} in another group"
                )));
            }
        }
    }
    let half = |g: Group| -> Result<ReducedMatrix> {
        let keep: Vec<usize> = (0..n)
            .filter(|&j| groups[j] == Group::Shared || groups[j] == g)
            .collect();
        let mut local = alloc::vec![usize::MAX; n];
        for (p, &j) in keep.iter().enumerate() {
            local[j] = p;
        }
        let cols = keep
            .iter()
            .map(|&j| m.column(j).iter().map(|&i| local[i]).collect())
            .collect();
        let dims = keep.iter().map(|&j| m.dims()[j]).collect();
        let r = reduce_columns(cols, dims, keep.clone())?;
        Ok(ReducedMatrix {
            columns: r
                .columns
                .iter()
                .map(|c| c.iter().map(|&i| keep[i]).collect())
                .collect(),
            low: r.low.iter().map(|l| l.map(|i| keep[i])).collect(),
            dims: r.dims,
            cells: keep,
        })
    };
    let minus = half(Group::Minus)?;
    let plus = half(Group::Plus)?;

    let killed = |r: &ReducedMatrix, g: Group| -> Vec<(usize, Column)> {
        (0..r.len())
            .filter(|&p| groups[r.cells[p]] == g)
            .filter(|&p| r.low[p].is_some_and(|l| l < shared))
            .map(|p| (r.cells[p], r.columns[p].clone()))
            .collect()
    };
    let u = killed(&minus, Group::Minus);
    let w = killed(&plus, Group::Plus);

    let mut boundaries = PivotBasis::new();
    for p in 0..shared {
        if !minus.columns[p].is_empty() {
            boundaries.insert(minus.columns[p].clone());
        }
    }
    let mut triples = Vec::new();
    for (idx, (pos, col)) in w.iter().enumerate() {
        let mut basis = boundaries.clone();
        for (_, earlier) in &w[..idx] {
            basis.insert(earlier.clone());
        }
        for (upos, ucol) in &u {
            basis.insert(ucol.clone());
            if basis.contains(col.clone()) {
                let k = *col.last().unwrap();
                triples.push(Triple {
                    k,
                    k_minus: *upos,
                    k_plus: *pos,
                    degree: m.dims()[k],
                });
                break;
            }
        }
    }

    let top = degree_count(m.dims());
    let mut zero = alloc::vec![0usize; top + 1];
    let mut nonzero = alloc::vec![0usize; top + 1];
    for p in 0..shared {
        if minus.low[p].is_some() {
            nonzero[m.dims()[p]] += 1;
        } else {
            zero[m.dims()[p]] += 1;
        }
    }
    let shared_betti = (0..top).map(|d| zero[d] - nonzero[d + 1]).collect();

    Ok(RelativeReduction {
        minus,
        plus,
        triples: TripleTable { triples },
        killed_minus: u.into_iter().map(|(p, _)| p).collect(),
        killed_plus: w.into_iter().map(|(p, _)| p).collect(),
        shared_betti,
        groups: groups.to_vec(),
    })
}

/// `(r, j, k) -> ω_r(j, k)` with either stage possibly infinite.
pub type OmegaTable = BTreeMap<(usize, Death, Death), usize>;

/// `ω_r(j, k)`: classes of `H_r(A)` dying exactly at down-stage `j` and
/// up-stage `k`. Rows and columns at ∞ collect classes surviving on that
/// side. `stages` is indexed by position; the shared block sits at stage 0.
pub fn simultaneous_numbers(rel: &RelativeReduction, stages: &[usize]) -> OmegaTable {
    let degree = |p: usize| -> usize {
        let r = if rel.groups[p] == Group::Minus {
            &rel.minus
        } else {
            &rel.plus
        };
        let idx = r.cells.iter().position(|&c| c == p).unwrap();
        r.dims[idx] - 1
    };
    let mut t: BTreeMap<(usize, Death, Death), isize> = BTreeMap::new();
    let mut add = |key, n: isize| *t.entry(key).or_insert(0) += n;
    for (r, &b) in rel.shared_betti.iter().enumerate() {
        add((r, Death::Infinite, Death::Infinite), b as isize);
    }
    for &p in &rel.killed_minus {
        let r = degree(p);
        add((r, Death::Finite(stages[p]), Death::Infinite), 1);
        add((r, Death::Infinite, Death::Infinite), -1);
    }
    for &p in &rel.killed_plus {
        let r = degree(p);
        add((r, Death::Infinite, Death::Finite(stages[p])), 1);
        add((r, Death::Infinite, Death::Infinite), -1);
    }
    for tr in &rel.triples.triples {
        let (j, k) = (
            Death::Finite(stages[tr.k_minus]),
            Death::Finite(stages[tr.k_plus]),
        );
        add((tr.degree, j, k), 1);
        add((tr.degree, j, Death::Infinite), -1);
        add((tr.degree, Death::Infinite, k), -1);
        add((tr.degree, Death::Infinite, Death::Infinite), 1);
    }
    t.into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|(key, v)| {
            debug_assert!(v > 0);
            (key, v as usize)
        })
        .collect()
}
