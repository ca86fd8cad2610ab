//! 0- and 1-cochains, cocycle checks, and the passage from an almost integral
//! cocycle to a circle-valued vertex map.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::vec::Vec;

use num_traits::Zero;

use crate::complex::{SimplicialComplex, VertexId};
use crate::error::{Error, Result};
use crate::rational::{is_multiple_of, rem_euclid, Rational};

/// A value on every vertex, extended linearly over simplices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cochain0 {
    values: Vec<Rational>,
}

impl Cochain0 {
    pub fn new(values: Vec<Rational>) -> Self {
        Self { values }
    }

    pub fn zero(vertex_count: usize) -> Self {
        Self::new(alloc::vec![Rational::zero(); vertex_count])
    }

    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    pub fn value(&self, v: VertexId) -> Rational {
        self.values[v]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn negated(&self) -> Self {
        Self::new(self.values.iter().map(|v| -v).collect())
    }

    /// Fails with [`Error::MissingVertexValue`] unless every vertex of
    /// `complex` has a value.
    pub fn check_defined(&self, complex: &SimplicialComplex) -> Result<()> {
        if self.values.len() < complex.vertex_count() {
            return Err(Error::MissingVertexValue {
                vertex: self.values.len(),
            });
        }
        Ok(())
    }

    /// Fails with [`Error::NonGenericMap`] if two vertices share a value.
    pub fn check_injective(&self, complex: &SimplicialComplex) -> Result<()> {
        self.check_defined(complex)?;
        let mut seen: BTreeMap<Rational, VertexId> = BTreeMap::new();
        for v in 0..complex.vertex_count() {
            if let Some(&u) = seen.get(&self.values[v]) {
                return Err(Error::NonGenericMap(u, v));
            }
            seen.insert(self.values[v], v);
        }
        Ok(())
    }
}

/// Skew-symmetric edge values, stored on canonically oriented edges `x < y`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Cochain1 {
    values: BTreeMap<(VertexId, VertexId), Rational>,
}

impl Cochain1 {
    pub fn new() -> Self {
        Self::default()
    }

    /// Sets `f(x, y) = value`, hence `f(y, x) = -value`.
    pub fn set(&mut self, x: VertexId, y: VertexId, value: Rational) {
        if x < y {
            self.values.insert((x, y), value);
        } else {
            self.values.insert((y, x), -value);
        }
    }

    pub fn with(mut self, x: VertexId, y: VertexId, value: Rational) -> Self {
        self.set(x, y, value);
        self
    }

    /// `f(x, y)`, negating the stored value when `x > y`.
    pub fn get(&self, x: VertexId, y: VertexId) -> Option<Rational> {
        if x < y {
            self.values.get(&(x, y)).copied()
        } else {
            self.values.get(&(y, x)).map(|v| -v)
        }
    }

    fn require(&self, x: VertexId, y: VertexId) -> Result<Rational> {
        self.get(x, y)
            .ok_or(Error::MissingEdgeValue(x.min(y), x.max(y)))
    }

    /// Canonical edges and their values.
    pub fn iter(&self) -> impl Iterator<Item = ((VertexId, VertexId), Rational)> + '_ {
        self.values.iter().map(|(&e, &v)| (e, v))
    }

    /// Pointwise difference `self - other` on the edges of `complex`.
    pub fn sub(&self, other: &Cochain1, complex: &SimplicialComplex) -> Result<Cochain1> {
        let mut out = Cochain1::new();
        for (x, y) in complex.edges() {
            out.set(x, y, self.require(x, y)? - other.require(x, y)?);
        }
        Ok(out)
    }
}

/// `δf(x, y) = f(y) - f(x)`.
pub fn coboundary(f: &Cochain0, complex: &SimplicialComplex) -> Result<Cochain1> {
    f.check_defined(complex)?;
    let mut out = Cochain1::new();
    for (x, y) in complex.edges() {
        out.set(x, y, f.value(y) - f.value(x));
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CocycleReport {
    /// Triangles `(x, y, z)` with `f(x,y) + f(y,z) != f(x,z)`.
    pub violations: Vec<[VertexId; 3]>,
}

impl CocycleReport {
    pub fn is_cocycle(&self) -> bool {
        self.violations.is_empty()
    }
}

pub fn validate_cocycle(c: &Cochain1, complex: &SimplicialComplex) -> Result<CocycleReport> {
    for (x, y) in complex.edges() {
        c.require(x, y)?;
    }
    let violations = complex
        .of_dim(2)
        .map(|t| {
            let s = complex.simplex(t);
            [s[0], s[1], s[2]]
        })
        .filter(|&[x, y, z]| {
            c.require(x, y).unwrap() + c.require(y, z).unwrap() != c.require(x, z).unwrap()
        })
        .collect();
    Ok(CocycleReport { violations })
}

/// Two star vertices of `center` whose local values coincide. `center` itself
/// has local value 0, so it may appear as `first`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Collision {
    pub center: VertexId,
    pub first: VertexId,
    pub second: VertexId,
}

/// Checks that every local map `f_x` (with `f_x(x) = 0`, `f_x(y) = f(x, y)`)
/// is injective on the vertices of the star of `x`.
pub fn check_generic(c: &Cochain1, complex: &SimplicialComplex) -> Result<Option<Collision>> {
    let adj = complex.adjacency();
    for (x, star) in adj.iter().enumerate() {
        let mut seen: BTreeMap<Rational, VertexId> = BTreeMap::new();
        seen.insert(Rational::zero(), x);
        for &y in star {
            let value = c.require(x, y)?;
            if let Some(&first) = seen.get(&value) {
                return Ok(Some(Collision {
                    center: x,
                    first,
                    second: y,
                }));
            }
            seen.insert(value, y);
        }
    }
    Ok(None)
}

/// Spanning forest of the 1-skeleton, each tree rooted at its least vertex.
struct SpanningForest {
    /// Sum of edge values along the tree path from the root.
    potential: Vec<Rational>,
    root: Vec<VertexId>,
    tree_edge: BTreeMap<(VertexId, VertexId), ()>,
}

impl SpanningForest {
    fn build(
        c: &Cochain1,
        complex: &SimplicialComplex,
        roots: impl Fn(VertexId) -> Option<VertexId>,
    ) -> Result<Self> {
        let n = complex.vertex_count();
        let adj = complex.adjacency();
        let mut potential = alloc::vec![Rational::zero(); n];
        let mut root = alloc::vec![usize::MAX; n];
        let mut tree_edge = BTreeMap::new();
        for start in 0..n {
            if root[start] != usize::MAX {
                continue;
            }
            let r = roots(start).unwrap_or(start);
            root[r] = r;
            potential[r] = Rational::zero();
            let mut queue = VecDeque::from([r]);
            while let Some(x) = queue.pop_front() {
                for &y in &adj[x] {
                    if root[y] == usize::MAX {
                        root[y] = r;
                        potential[y] = potential[x] + c.require(x, y)?;
                        tree_edge.insert((x.min(y), x.max(y)), ());
                        queue.push_back(y);
                    }
                }
            }
        }
        Ok(Self {
            potential,
            root,
            tree_edge,
        })
    }

    fn component_count(&self) -> usize {
        self.root
            .iter()
            .enumerate()
            .filter(|&(v, &r)| v == r)
            .count()
    }

    /// Value of `c` on the fundamental cycle closed by every non-tree edge.
    fn cycle_values<'a>(
        &'a self,
        c: &'a Cochain1,
        complex: &'a SimplicialComplex,
    ) -> impl Iterator<Item = Result<Rational>> + 'a {
        complex
            .edges()
            .filter(|e| !self.tree_edge.contains_key(e))
            .map(|(x, y)| Ok(self.potential[x] + c.require(x, y)? - self.potential[y]))
    }
}

/// True iff `c` integrates to a multiple of `alpha` on every fundamental
/// cycle of a spanning forest of the 1-skeleton.
pub fn check_almost_integral(
    c: &Cochain1,
    complex: &SimplicialComplex,
    alpha: Rational,
) -> Result<bool> {
    if alpha <= Rational::zero() {
        return Err(Error::NonPositiveAlpha);
    }
    let forest = SpanningForest::build(c, complex, |_| None)?;
    for value in forest.cycle_values(c, complex) {
        if !is_multiple_of(value?, alpha) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A 0-cochain `f` with `a - b = δf`, normalised to 0 on the least vertex of
/// each component, or `None` when the classes differ.
pub fn cohomologous(
    a: &Cochain1,
    b: &Cochain1,
    complex: &SimplicialComplex,
) -> Result<Option<Cochain0>> {
    let diff = a.sub(b, complex)?;
    let forest = SpanningForest::build(&diff, complex, |_| None)?;
    let f = Cochain0::new(forest.potential);
    for (x, y) in complex.edges() {
        if f.value(y) - f.value(x) != diff.require(x, y)? {
            return Ok(None);
        }
    }
    Ok(Some(f))
}

/// A cocycle together with a period `alpha` generating its values on cycles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostIntegralCocycle {
    cocycle: Cochain1,
    alpha: Rational,
}

impl AlmostIntegralCocycle {
    pub fn new(cocycle: Cochain1, alpha: Rational, complex: &SimplicialComplex) -> Result<Self> {
        let report = validate_cocycle(&cocycle, complex)?;
        if !report.is_cocycle() {
            return Err(Error::NotACocycle {
                violations: report.violations.len(),
            });
        }
        if !check_almost_integral(&cocycle, complex, alpha)? {
            return Err(Error::NotAlmostIntegral);
        }
        Ok(Self { cocycle, alpha })
    }

    pub fn cocycle(&self) -> &Cochain1 {
        &self.cocycle
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }
}

/// Vertex data of a linear map to the circle `R / alpha Z`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CircleMap {
    angles: Vec<Rational>,
    alpha: Rational,
}

impl CircleMap {
    pub fn new(angles: Vec<Rational>, alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::NonPositiveAlpha);
        }
        for (vertex, &angle) in angles.iter().enumerate() {
            if angle < Rational::zero() || angle >= alpha {
                return Err(Error::AngleOutOfRange { vertex, angle });
            }
        }
        Ok(Self { angles, alpha })
    }

    /// Reduces arbitrary real values mod `alpha`.
    pub fn from_values(values: &[Rational], alpha: Rational) -> Result<Self> {
        if alpha <= Rational::zero() {
            return Err(Error::NonPositiveAlpha);
        }
        Self::new(
            values.iter().map(|&v| rem_euclid(v, alpha)).collect(),
            alpha,
        )
    }

    pub fn angles(&self) -> &[Rational] {
        &self.angles
    }

    pub fn angle(&self, v: VertexId) -> Rational {
        self.angles[v]
    }

    pub fn alpha(&self) -> Rational {
        self.alpha
    }

    /// Every angle shifted by `delta` mod alpha.
    pub fn rotated(&self, delta: Rational) -> Self {
        Self {
            angles: self
                .angles
                .iter()
                .map(|&a| rem_euclid(a + delta, self.alpha))
                .collect(),
            alpha: self.alpha,
        }
    }
}

/// Angle of `y` = path sum of the cocycle from `base` to `y`, mod alpha.
pub fn vertex_angles(
    c: &AlmostIntegralCocycle,
    complex: &SimplicialComplex,
    base: VertexId,
) -> Result<CircleMap> {
    vertex_angles_per_component(c, complex, &[base])
}

/// Like [`vertex_angles`] with one base vertex for each connected component.
pub fn vertex_angles_per_component(
    c: &AlmostIntegralCocycle,
    complex: &SimplicialComplex,
    bases: &[VertexId],
) -> Result<CircleMap> {
    let n = complex.vertex_count();
    if let Some(&b) = bases.iter().find(|&&b| b >= n) {
        return Err(Error::InvalidVertexId {
            vertex: b,
            vertex_count: n,
        });
    }
    let plain = SpanningForest::build(c.cocycle(), complex, |_| None)?;
    if plain.component_count() != bases.len() && n > 0 {
        return Err(Error::DisconnectedWithSingleBase);
    }
    let mut base_of = alloc::vec![None; n];
    for &b in bases {
        let r = plain.root[b];
        if base_of[r].is_some() {
            return Err(Error::DisconnectedWithSingleBase);
        }
        base_of[r] = Some(b);
    }
    let forest = SpanningForest::build(c.cocycle(), complex, |v| base_of[plain.root[v]])?;
    CircleMap::from_values(&forest.potential, c.alpha())
}
