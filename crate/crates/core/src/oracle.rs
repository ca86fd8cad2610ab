//! Independent witnesses: homology and persistent Betti numbers by dense
//! Gaussian elimination, the dimension solver for long exact sequences, and
//! the recovery of sublevel persistence of `f` and `-f` from level
//! persistence.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::complex::CellComplex;
use crate::error::{Error, Result};
use crate::persist::{LevelPersistence, StandardPersistence};
use crate::reduce::Death;

/// A dense GF(2) vector.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Bits(Vec<u64>);

impl Bits {
    fn zero(len: usize) -> Self {
        Bits(alloc::vec![0; len.div_ceil(64)])
    }

    fn flip(&mut self, i: usize) {
        self.0[i / 64] ^= 1 << (i % 64);
    }

    fn xor(&mut self, other: &Bits) {
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            *a ^= b;
        }
    }

    fn first(&self) -> Option<usize> {
        self.0
            .iter()
            .enumerate()
            .find(|(_, &w)| w != 0)
            .map(|(i, w)| i * 64 + w.trailing_zeros() as usize)
    }

    fn is_zero(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }
}

/// Row echelon form by leading (lowest) coordinate; returns the pivot rows.
fn echelon(rows: Vec<Bits>) -> Vec<(usize, Bits)> {
    let mut pivots: Vec<(usize, Bits)> = Vec::new();
    for mut row in rows {
        while let Some(lead) = row.first() {
            match pivots.iter().find(|(p, _)| *p == lead) {
                Some((_, p)) => row.xor(p),
                None => {
                    pivots.push((lead, row));
                    break;
                }
            }
        }
    }
    pivots
}

fn rank(rows: Vec<Bits>) -> usize {
    echelon(rows).len()
}

/// Boundary of `cell` as a vector over the coordinates `coord[face]`.
fn boundary(complex: &impl CellComplex, cell: usize, coord: &[Option<usize>], len: usize) -> Bits {
    let mut b = Bits::zero(len);
    for &f in complex.facets(cell) {
        if let Some(i) = coord[f] {
            b.flip(i);
        }
    }
    b
}

fn check_square_zero(complex: &impl CellComplex) -> Result<()> {
    let n = complex.cell_count();
    let all: Vec<Option<usize>> = (0..n).map(Some).collect();
    for c in 0..n {
        let mut acc = Bits::zero(n);
        for &f in complex.facets(c) {
            acc.xor(&boundary(complex, f, &all, n));
        }
        if !acc.is_zero() {
            return Err(Error::BoundaryNotSquareZero {
                degree: complex.cell_dim(c),
            });
        }
    }
    Ok(())
}

/// Membership mask of `cells`, checked to be closed under faces.
fn subcomplex(complex: &impl CellComplex, cells: &[usize]) -> Result<Vec<bool>> {
    let mut mask = alloc::vec![false; complex.cell_count()];
    for &c in cells {
        if c >= mask.len() {
            return Err(Error::NotASubcomplex);
        }
        mask[c] = true;
    }
    for &c in cells {
        if complex.facets(c).iter().any(|&f| !mask[f]) {
            return Err(Error::NotASubcomplex);
        }
    }
    Ok(mask)
}

/// Coordinates for the `r`-cells selected by `mask`, in cell order.
fn coordinates(complex: &impl CellComplex, mask: &[bool], r: usize) -> (Vec<Option<usize>>, usize) {
    let mut coord = alloc::vec![None; complex.cell_count()];
    let mut len = 0;
    for c in 0..complex.cell_count() {
        if mask[c] && complex.cell_dim(c) == r {
            coord[c] = Some(len);
            len += 1;
        }
    }
    (coord, len)
}

fn cells_of(complex: &impl CellComplex, mask: &[bool], r: usize) -> Vec<usize> {
    (0..complex.cell_count())
        .filter(|&c| mask[c] && complex.cell_dim(c) == r)
        .collect()
}

/// Boundaries of the `(r+1)`-cells of `mask`, over `coord`.
fn boundaries(
    complex: &impl CellComplex,
    mask: &[bool],
    r: usize,
    coord: &[Option<usize>],
    len: usize,
) -> Vec<Bits> {
    cells_of(complex, mask, r + 1)
        .into_iter()
        .map(|c| boundary(complex, c, coord, len))
        .collect()
}

/// Basis of the `r`-cycles of `mask`, over `coord`.
fn cycles(
    complex: &impl CellComplex,
    mask: &[bool],
    r: usize,
    coord: &[Option<usize>],
    len: usize,
) -> Vec<Bits> {
    let cells = cells_of(complex, mask, r);
    if r == 0 {
        return cells
            .iter()
            .map(|&c| {
                let mut b = Bits::zero(len);
                b.flip(coord[c].unwrap());
                b
            })
            .collect();
    }
    let below_mask: Vec<bool> = (0..complex.cell_count())
        .map(|c| mask[c] && complex.cell_dim(c) + 1 == r)
        .collect();
    let (below, blen) = coordinates(complex, &below_mask, r - 1);
    // Augment each boundary with the cell it came from and eliminate on the
    // boundary part; rows whose boundary cancels are cycles.
    let rows: Vec<Bits> = cells
        .iter()
        .map(|&c| {
            let mut row = Bits::zero(blen + len);
            for &f in complex.facets(c) {
                if let Some(i) = below[f] {
                    row.flip(i);
                }
            }
            row.flip(blen + coord[c].unwrap());
            row
        })
        .collect();
    echelon(rows)
        .into_iter()
        .filter(|(lead, _)| *lead >= blen)
        .map(|(_, row)| {
            let mut z = Bits::zero(len);
            for i in 0..len {
                if row.0[(blen + i) / 64] >> ((blen + i) % 64) & 1 == 1 {
                    z.flip(i);
                }
            }
            z
        })
        .collect()
}

/// `dim H_r` by `#r-cells - rank ∂_r - rank ∂_{r+1}`.
pub fn homology_rank(complex: &impl CellComplex, r: usize) -> Result<usize> {
    check_square_zero(complex)?;
    let mask = alloc::vec![true; complex.cell_count()];
    Ok(betti(complex, &mask, r))
}

fn betti(complex: &impl CellComplex, mask: &[bool], r: usize) -> usize {
    let (coord, len) = coordinates(complex, mask, r);
    let rank_out = if r == 0 {
        0
    } else {
        let below_mask: Vec<bool> = (0..complex.cell_count())
            .map(|c| mask[c] && complex.cell_dim(c) + 1 == r)
            .collect();
        let (below, blen) = coordinates(complex, &below_mask, r - 1);
        rank(
            cells_of(complex, mask, r)
                .into_iter()
                .map(|c| boundary(complex, c, &below, blen))
                .collect(),
        )
    };
    len - rank_out - rank(boundaries(complex, mask, r, &coord, len))
}

/// `dim H_r` for `r = 0..=max_dim`.
pub fn homology_ranks(complex: &impl CellComplex) -> Result<Vec<usize>> {
    check_square_zero(complex)?;
    let mask = alloc::vec![true; complex.cell_count()];
    Ok(match complex.max_dim() {
        Some(d) => (0..=d).map(|r| betti(complex, &mask, r)).collect(),
        None => Vec::new(),
    })
}

/// Rank of `H_r(K) → H_r(L)` for subcomplexes `K ⊆ L` given by cell ids,
/// as `rank[Z_r(K) | B_r(L)] - rank B_r(L)`.
pub fn persistent_betti_bruteforce(
    complex: &impl CellComplex,
    small: &[usize],
    big: &[usize],
    r: usize,
) -> Result<usize> {
    let k = subcomplex(complex, small)?;
    let l = subcomplex(complex, big)?;
    if k.iter().zip(&l).any(|(&a, &b)| a && !b) {
        return Err(Error::NotASubcomplex);
    }
    let (coord, len) = coordinates(complex, &l, r);
    let b = boundaries(complex, &l, r, &coord, len);
    let mut both = cycles(complex, &k, r, &coord, len);
    let rank_b = rank(b.clone());
    both.extend(b);
    Ok(rank(both) - rank_b)
}

/// `dim ker(H_r(K) → H_r(L))`.
pub fn kernel_dim(
    complex: &impl CellComplex,
    small: &[usize],
    big: &[usize],
    r: usize,
) -> Result<usize> {
    let k = subcomplex(complex, small)?;
    Ok(betti(complex, &k, r) - persistent_betti_bruteforce(complex, small, big, r)?)
}

/// Boundaries of `side` supported on the `r`-cells of `shared`, as vectors
/// over the shared coordinates.
fn shared_boundaries(
    complex: &impl CellComplex,
    shared: &[bool],
    side: &[bool],
    r: usize,
) -> Vec<Bits> {
    // Outside coordinates first, so echelon rows led by a shared coordinate
    // vanish outside.
    let mut coord = alloc::vec![None; complex.cell_count()];
    let mut outside = 0;
    for c in 0..complex.cell_count() {
        if side[c] && !shared[c] && complex.cell_dim(c) == r {
            coord[c] = Some(outside);
            outside += 1;
        }
    }
    let mut len = outside;
    for c in 0..complex.cell_count() {
        if shared[c] && complex.cell_dim(c) == r {
            coord[c] = Some(len);
            len += 1;
        }
    }
    echelon(boundaries(complex, side, r, &coord, len))
        .into_iter()
        .filter(|(lead, _)| *lead >= outside)
        .map(|(_, row)| {
            let mut v = Bits::zero(len - outside);
            for i in 0..len - outside {
                if row.0[(outside + i) / 64] >> ((outside + i) % 64) & 1 == 1 {
                    v.flip(i);
                }
            }
            v
        })
        .collect()
}

/// `dim(K⁻ ∩ K⁺)` where `K^± = ker(H_r(A) → H_r(X^±))` and `A ⊆ X^±`.
pub fn common_kernel_dim(
    complex: &impl CellComplex,
    shared: &[usize],
    minus: &[usize],
    plus: &[usize],
    r: usize,
) -> Result<usize> {
    let a = subcomplex(complex, shared)?;
    let xm = subcomplex(complex, minus)?;
    let xp = subcomplex(complex, plus)?;
    if a.iter()
        .zip(xm.iter().zip(&xp))
        .any(|(&s, (&m, &p))| s && !(m && p))
    {
        return Err(Error::NotASubcomplex);
    }
    let vm = shared_boundaries(complex, &a, &xm, r);
    let vp = shared_boundaries(complex, &a, &xp, r);
    let ba = shared_boundaries(complex, &a, &a, r).len();
    let (dm, dp) = (vm.len(), vp.len());
    let mut sum = vm;
    sum.extend(vp);
    Ok(dm + dp - rank(sum) - ba)
}

/// Dimensions around `A_n → B_n → C_n → A_{n-1}`, `n = 0..=N`; `None` is
/// unknown.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactSequenceDims {
    pub a: Vec<Option<usize>>,
    pub b: Vec<Option<usize>>,
    pub c: Vec<Option<usize>>,
    pub ker_alpha: Vec<Option<usize>>,
    pub ker_beta: Vec<Option<usize>>,
    pub ker_delta: Vec<Option<usize>>,
}

impl ExactSequenceDims {
    /// Everything unknown for `n = 0..=top`.
    pub fn unknown(top: usize) -> Self {
        let v = alloc::vec![None; top + 1];
        Self {
            a: v.clone(),
            b: v.clone(),
            c: v.clone(),
            ker_alpha: v.clone(),
            ker_beta: v.clone(),
            ker_delta: v,
        }
    }

    pub fn top(&self) -> usize {
        self.a.len() - 1
    }

    fn known(v: &[usize]) -> Vec<Option<usize>> {
        v.iter().map(|&x| Some(x)).collect()
    }

    pub fn with_a(mut self, v: &[usize]) -> Self {
        self.a = Self::known(v);
        self
    }

    pub fn with_b(mut self, v: &[usize]) -> Self {
        self.b = Self::known(v);
        self
    }

    pub fn with_c(mut self, v: &[usize]) -> Self {
        self.c = Self::known(v);
        self
    }

    pub fn with_ker_alpha(mut self, v: &[usize]) -> Self {
        self.ker_alpha = Self::known(v);
        self
    }

    pub fn with_ker_beta(mut self, v: &[usize]) -> Self {
        self.ker_beta = Self::known(v);
        self
    }

    pub fn with_ker_delta(mut self, v: &[usize]) -> Self {
        self.ker_delta = Self::known(v);
        self
    }

    fn column(v: &[Option<usize>]) -> Vec<usize> {
        v.iter().map(|x| x.unwrap_or(0)).collect()
    }

    pub fn a_values(&self) -> Vec<usize> {
        Self::column(&self.a)
    }

    pub fn b_values(&self) -> Vec<usize> {
        Self::column(&self.b)
    }

    pub fn c_values(&self) -> Vec<usize> {
        Self::column(&self.c)
    }

    pub fn ker_alpha_values(&self) -> Vec<usize> {
        Self::column(&self.ker_alpha)
    }

    pub fn ker_beta_values(&self) -> Vec<usize> {
        Self::column(&self.ker_beta)
    }

    pub fn ker_delta_values(&self) -> Vec<usize> {
        Self::column(&self.ker_delta)
    }

    fn is_complete(&self) -> bool {
        [
            &self.a,
            &self.b,
            &self.c,
            &self.ker_alpha,
            &self.ker_beta,
            &self.ker_delta,
        ]
        .iter()
        .all(|v| v.iter().all(Option::is_some))
    }
}

#[derive(Clone, Copy)]
enum Slot {
    A,
    B,
    C,
    KerAlpha,
    KerBeta,
    KerDelta,
}

fn slot(d: &mut ExactSequenceDims, s: Slot, n: usize) -> &mut Option<usize> {
    match s {
        Slot::A => &mut d.a[n],
        Slot::B => &mut d.b[n],
        Slot::C => &mut d.c[n],
        Slot::KerAlpha => &mut d.ker_alpha[n],
        Slot::KerBeta => &mut d.ker_beta[n],
        Slot::KerDelta => &mut d.ker_delta[n],
    }
}

/// Fills in the unknowns from
/// `(1) A_n = kerα_n + kerβ_n`, `(2) B_n = kerβ_n + kerδ_n`,
/// `(3) C_n = kerδ_n + kerα_{n-1}` (just `kerδ_0` at `n = 0`) and
/// `kerα_N = 0`, propagating until nothing changes.
pub fn solve_exact_sequence(d: &ExactSequenceDims) -> Result<ExactSequenceDims> {
    let top = d.top();
    let lengths = [&d.b, &d.c, &d.ker_alpha, &d.ker_beta, &d.ker_delta];
    if lengths.iter().any(|v| v.len() != top + 1) {
        return Err(Error::LengthMismatch {
            expected: top + 1,
            found: lengths
                .iter()
                .map(|v| v.len())
                .find(|&l| l != top + 1)
                .unwrap(),
        });
    }
    let mut d = d.clone();
    match d.ker_alpha[top] {
        Some(0) | None => d.ker_alpha[top] = Some(0),
        Some(k) => {
            return Err(Error::Contradiction(format!(
                "kerα_{top} = {k}, expected 0"
            )))
        }
    }
    // Each equation is `total = x + y`, as (slot, n) triples.
    let mut equations: Vec<[(Slot, usize); 3]> = Vec::new();
    for n in 0..=top {
        equations.push([(Slot::A, n), (Slot::KerAlpha, n), (Slot::KerBeta, n)]);
        equations.push([(Slot::B, n), (Slot::KerBeta, n), (Slot::KerDelta, n)]);
        if n > 0 {
            equations.push([(Slot::C, n), (Slot::KerDelta, n), (Slot::KerAlpha, n - 1)]);
        }
    }
    let names = ["A", "B", "C", "kerα", "kerβ", "kerδ"];
    let label = |(s, n): (Slot, usize)| format!("{}_{n}", names[s as usize]);
    loop {
        let mut changed = false;
        // `C_0 = kerδ_0`.
        match (d.c[0], d.ker_delta[0]) {
            (Some(c), None) => {
                d.ker_delta[0] = Some(c);
                changed = true;
            }
            (None, Some(k)) => {
                d.c[0] = Some(k);
                changed = true;
            }
            (Some(c), Some(k)) if c != k => {
                return Err(Error::Contradiction(format!("C_0 = {c} but kerδ_0 = {k}")));
            }
            _ => {}
        }
        for eq in &equations {
            let [t, x, y] = *eq;
            let vals = [
                *slot(&mut d, t.0, t.1),
                *slot(&mut d, x.0, x.1),
                *slot(&mut d, y.0, y.1),
            ];
            let fail = || {
                Error::Contradiction(format!(
                    "{} = {} + {} fails with {:?}",
                    label(t),
                    label(x),
                    label(y),
                    vals
                ))
            };
            match vals {
                [Some(t0), Some(x0), Some(y0)] => {
                    if t0 != x0 + y0 {
                        return Err(fail());
                    }
                }
                [None, Some(x0), Some(y0)] => {
                    *slot(&mut d, t.0, t.1) = Some(x0 + y0);
                    changed = true;
                }
                [Some(t0), None, Some(y0)] => {
                    *slot(&mut d, x.0, x.1) = Some(t0.checked_sub(y0).ok_or_else(fail)?);
                    changed = true;
                }
                [Some(t0), Some(x0), None] => {
                    *slot(&mut d, y.0, y.1) = Some(t0.checked_sub(x0).ok_or_else(fail)?);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    if d.is_complete() {
        Ok(d)
    } else {
        Err(Error::UnderDetermined)
    }
}

/// Sublevel numbers of `f` and `-f` recovered from level persistence alone.
/// All indices are grid indices `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveredPersistence {
    n: usize,
    degrees: usize,
    /// `h[a][b][r] = dim H_r(X_{s_a, s_b})` for `a ≤ b`, 0-based storage.
    h: Vec<Vec<Vec<usize>>>,
    /// `dim ker(H_r(X_{-∞,s_i}) → H_r(X_{-∞,s_j}))`, `i < j`.
    sub_kernel: Vec<Vec<Vec<usize>>>,
    /// `dim ker(H_r(X_{s_i,∞}) → H_r(X_{s_a,∞}))`, `a < i`.
    super_kernel: Vec<Vec<Vec<usize>>>,
}

impl RecoveredPersistence {
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    /// `dim H_r(X_{s_a, s_b})`.
    pub fn band(&self, r: usize, a: usize, b: usize) -> usize {
        self.h[a - 1][b - 1][r]
    }

    /// `dim H_r(X_{-∞, s_i})`.
    pub fn sublevel(&self, r: usize, i: usize) -> usize {
        self.band(r, 1, i)
    }

    /// `dim H_r(X_{s_i, ∞})`.
    pub fn superlevel(&self, r: usize, i: usize) -> usize {
        self.band(r, i, self.n)
    }

    pub fn sublevel_kernel(&self, r: usize, i: usize, j: usize) -> usize {
        self.sub_kernel[i - 1][j - 1][r]
    }

    pub fn superlevel_kernel(&self, r: usize, i: usize, a: usize) -> usize {
        self.super_kernel[i - 1][a - 1][r]
    }
}

/// Runs the exact-sequence chain:
///
/// 1. `dim H(X_{s_i,s_{i+1}})` is the level dimension at the critical end.
/// 2. Mayer–Vietoris for `X_{a,b} = X_{a,a+1} ∪ X_{a+1,b}` with known
///    `A, B, kerα = e(a+1; 1, b-a-1)` gives `C = dim H(X_{a,b})`.
/// 3. The pair `X_c ⊂ X_{c,b}` with `A, B, kerα = l⁺(c; b-c)` gives
///    `dim H(X_{c,b}, X_c)`; the mirror with `l⁻` gives `dim H(X_{a,c}, X_c)`.
/// 4. By excision these are the relative groups of `X_{1,i} ⊂ X_{1,j}` and
///    `X_{i,n} ⊂ X_{a,n}`, and `A, B, C` give the kernels.
pub fn recover_sublevel_from_level(lp: &LevelPersistence) -> Result<RecoveredPersistence> {
    let n = lp.grid().len();
    let degrees = lp.degrees().max(1);
    let top = degrees - 1;
    let l = |i: usize| -> Vec<usize> { (0..degrees).map(|r| lp.point(i).l(r)).collect() };
    let zero = alloc::vec![0usize; degrees];

    let mut h = alloc::vec![alloc::vec![zero.clone(); n]; n];
    for a in 1..=n {
        h[a - 1][a - 1] = l(a);
        if a < n {
            h[a - 1][a] = if a % 2 == 0 { l(a) } else { l(a + 1) };
        }
    }
    for len in 2..n {
        for a in 1..=n - len {
            let (b, c) = (a + len, a + 1);
            let pc = lp.point(c);
            let bsum: Vec<usize> = (0..degrees)
                .map(|r| h[a - 1][c - 1][r] + h[c - 1][b - 1][r])
                .collect();
            let ka: Vec<usize> = (0..degrees)
                .map(|r| pc.e(r, Death::Finite(c - a), Death::Finite(b - c)))
                .collect();
            let d = ExactSequenceDims::unknown(top)
                .with_a(&l(c))
                .with_b(&bsum)
                .with_ker_alpha(&ka);
            h[a - 1][b - 1] = solve_exact_sequence(&d)?.c_values();
        }
    }

    let rel_plus = |c: usize, b: usize| -> Result<Vec<usize>> {
        let ka: Vec<usize> = (0..degrees).map(|r| lp.point(c).l_plus(r, b - c)).collect();
        let d = ExactSequenceDims::unknown(top)
            .with_a(&l(c))
            .with_b(&h[c - 1][b - 1])
            .with_ker_alpha(&ka);
        Ok(solve_exact_sequence(&d)?.c_values())
    };
    let rel_minus = |a: usize, c: usize| -> Result<Vec<usize>> {
        let ka: Vec<usize> = (0..degrees)
            .map(|r| lp.point(c).l_minus(r, c - a))
            .collect();
        let d = ExactSequenceDims::unknown(top)
            .with_a(&l(c))
            .with_b(&h[a - 1][c - 1])
            .with_ker_alpha(&ka);
        Ok(solve_exact_sequence(&d)?.c_values())
    };

    let mut sub_kernel = alloc::vec![alloc::vec![zero.clone(); n]; n];
    let mut super_kernel = alloc::vec![alloc::vec![zero.clone(); n]; n];
    for i in 1..=n {
        for j in i + 1..=n {
            let d = ExactSequenceDims::unknown(top)
                .with_a(&h[0][i - 1])
                .with_b(&h[0][j - 1])
                .with_c(&rel_plus(i, j)?);
            sub_kernel[i - 1][j - 1] = solve_exact_sequence(&d)?.ker_alpha_values();
        }
        for a in 1..i {
            let d = ExactSequenceDims::unknown(top)
                .with_a(&h[i - 1][n - 1])
                .with_b(&h[a - 1][n - 1])
                .with_c(&rel_minus(a, i)?);
            super_kernel[i - 1][a - 1] = solve_exact_sequence(&d)?.ker_alpha_values();
        }
    }
    Ok(RecoveredPersistence {
        n,
        degrees,
        h,
        sub_kernel,
        super_kernel,
    })
}

/// Disagreements between recovered numbers and standard persistence of `f`
/// and of `-f`.
///
/// `X_{-∞,s_i}` is stage `⌊i/2⌋ - 1` of `f` (empty for `i = 1`) and
/// `X_{s_i,∞}` is stage `k - ⌈i/2⌉` of `-f` (empty for `i = 2k+1`).
pub fn recovery_mismatches(
    rec: &RecoveredPersistence,
    f: &StandardPersistence,
    neg: &StandardPersistence,
) -> Vec<String> {
    let n = rec.len();
    let k = (n - 1) / 2;
    let sub_stage = |i: usize| (i / 2).checked_sub(1);
    let super_stage = |i: usize| k.checked_sub(i.div_ceil(2)).filter(|_| i < n);
    let mut out = Vec::new();
    for r in 0..rec.degrees {
        for i in 1..=n {
            let want = sub_stage(i).map_or(0, |s| f.kappa(r, s));
            if rec.sublevel(r, i) != want {
                out.push(format!(
                    "f: dim H_{r} at s_{i}: {} vs {want}",
                    rec.sublevel(r, i)
                ));
            }
            let want = super_stage(i).map_or(0, |s| neg.kappa(r, s));
            if rec.superlevel(r, i) != want {
                out.push(format!(
                    "-f: dim H_{r} at s_{i}: {} vs {want}",
                    rec.superlevel(r, i)
                ));
            }
            for j in i + 1..=n {
                let want = match (sub_stage(i), sub_stage(j)) {
                    (Some(a), Some(b)) => f.kappa_pair(r, a, b),
                    _ => 0,
                };
                if rec.sublevel_kernel(r, i, j) != want {
                    out.push(format!(
                        "f: kernel H_{r} s_{i} -> s_{j}: {} vs {want}",
                        rec.sublevel_kernel(r, i, j)
                    ));
                }
            }
            for a in 1..i {
                let want = match (super_stage(i), super_stage(a)) {
                    (Some(x), Some(y)) => neg.kappa_pair(r, x, y),
                    _ => 0,
                };
                if rec.superlevel_kernel(r, i, a) != want {
                    out.push(format!(
                        "-f: kernel H_{r} s_{i} -> s_{a}: {} vs {want}",
                        rec.superlevel_kernel(r, i, a)
                    ));
                }
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cochain::Cochain0;
    use crate::complex::SimplicialComplex;
    use crate::persist::{level_persistence, standard_persistence};
    use crate::rational::int;
    use alloc::vec;

    fn circle() -> SimplicialComplex {
        SimplicialComplex::build(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
    }

    #[test]
    fn small_homology() {
        assert_eq!(homology_ranks(&circle()).unwrap(), vec![1, 1]);
        let t = SimplicialComplex::build(3, &[vec![0, 1, 2]]).unwrap();
        assert_eq!(homology_ranks(&t).unwrap(), vec![1, 0, 0]);
        let p = SimplicialComplex::build(1, &[vec![0]]).unwrap();
        assert_eq!(homology_rank(&p, 0).unwrap(), 1);
    }

    #[test]
    fn persistent_betti_examples() {
        let e = SimplicialComplex::build(2, &[vec![0, 1]]).unwrap();
        assert_eq!(
            persistent_betti_bruteforce(&e, &[0, 1], &[0, 1, 2], 0).unwrap(),
            1
        );
        assert_eq!(
            persistent_betti_bruteforce(&e, &[0, 1], &[0, 1], 0).unwrap(),
            2
        );
        let c = circle();
        // Arc 0-1-2 inside the circle.
        let arc = [
            0,
            1,
            2,
            c.id_of(&[0, 1]).unwrap(),
            c.id_of(&[1, 2]).unwrap(),
        ];
        let all: Vec<usize> = (0..c.len()).collect();
        assert_eq!(persistent_betti_bruteforce(&c, &arc, &all, 0).unwrap(), 1);
        assert_eq!(persistent_betti_bruteforce(&c, &arc, &all, 1).unwrap(), 0);
        assert_eq!(persistent_betti_bruteforce(&c, &all, &all, 1).unwrap(), 1);
        assert_eq!(
            persistent_betti_bruteforce(&c, &[3], &all, 0),
            Err(Error::NotASubcomplex)
        );
    }

    #[test]
    fn common_kernels() {
        // Two points joined once below and once above.
        let c = circle();
        let (e01, e02) = (c.id_of(&[0, 1]).unwrap(), c.id_of(&[0, 2]).unwrap());
        let e12 = c.id_of(&[1, 2]).unwrap();
        let shared = [1, 2];
        assert_eq!(
            common_kernel_dim(&c, &shared, &[0, 1, 2, e01, e02], &[1, 2, e12], 0).unwrap(),
            1
        );
        assert_eq!(
            common_kernel_dim(&c, &shared, &[1, 2], &[1, 2, e12], 0).unwrap(),
            0
        );
    }

    #[test]
    fn solver_cases() {
        let d = ExactSequenceDims::unknown(0)
            .with_a(&[1])
            .with_b(&[1])
            .with_c(&[0]);
        let s = solve_exact_sequence(&d).unwrap();
        assert_eq!(
            (
                s.ker_alpha_values(),
                s.ker_beta_values(),
                s.ker_delta_values()
            ),
            (vec![0], vec![1], vec![0])
        );
        let d = ExactSequenceDims::unknown(2)
            .with_a(&[0; 3])
            .with_b(&[0; 3])
            .with_c(&[0; 3]);
        let s = solve_exact_sequence(&d).unwrap();
        assert!(s.ker_delta_values().iter().all(|&x| x == 0));

        let d = ExactSequenceDims::unknown(0)
            .with_a(&[1])
            .with_b(&[2])
            .with_c(&[1]);
        let s = solve_exact_sequence(&d).unwrap();
        assert_eq!(
            (
                s.ker_alpha_values(),
                s.ker_beta_values(),
                s.ker_delta_values()
            ),
            (vec![0], vec![1], vec![1])
        );

        let d = ExactSequenceDims::unknown(0)
            .with_a(&[2])
            .with_b(&[0])
            .with_c(&[0]);
        assert!(matches!(
            solve_exact_sequence(&d),
            Err(Error::Contradiction(_))
        ));
        let d = ExactSequenceDims::unknown(1).with_a(&[1, 1]);
        assert_eq!(solve_exact_sequence(&d), Err(Error::UnderDetermined));
    }

    /// Every nonnegative solution of (1)-(3) for the N = 0 case above.
    #[test]
    fn solver_solution_is_unique() {
        let sols: Vec<_> = (0..3)
            .flat_map(|ka| (0..3).flat_map(move |kb| (0..3).map(move |kd| (ka, kb, kd))))
            .filter(|&(ka, kb, kd)| ka == 0 && 1 == ka + kb && 1 == kb + kd && 0 == kd)
            .collect();
        assert_eq!(sols, vec![(0, 1, 0)]);
    }

    fn recovery_holds(c: &SimplicialComplex, f: &[i128]) {
        let f = Cochain0::new(f.iter().map(|&x| int(x)).collect());
        let lp = level_persistence(c, &f).unwrap();
        let rec = recover_sublevel_from_level(&lp).unwrap();
        let sf = standard_persistence(c, &f).unwrap();
        let sn = standard_persistence(c, &f.negated()).unwrap();
        let bad = recovery_mismatches(&rec, &sf, &sn);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn recovery_on_small_fixtures() {
        recovery_holds(
            &SimplicialComplex::build(2, &[vec![0, 1]]).unwrap(),
            &[0, 1],
        );
        recovery_holds(&circle(), &[0, 1, 2]);
        recovery_holds(
            &SimplicialComplex::build(3, &[vec![0, 1, 2]]).unwrap(),
            &[0, 1, 2],
        );
        recovery_holds(&SimplicialComplex::empty(), &[]);
    }
}
