#![allow(dead_code)]

use cocycle_core::cochain::Cochain0;
use cocycle_core::complex::SimplicialComplex;
use cocycle_core::rational::{int, ratio};
use cocycle_core::Rational;
use proptest::collection::vec;
use proptest::prelude::*;

/// A face-closed complex on `1..=max_vertices` vertices with at most
/// `max_cells` simplices, spanned by a few random simplices of dimension ≤ 3.
pub fn complex(max_vertices: usize, max_cells: usize) -> impl Strategy<Value = SimplicialComplex> {
    (1..=max_vertices)
        .prop_flat_map(|n| (Just(n), vec(vec(0..n, 1..=4), 0..=6)))
        .prop_map(|(n, raw)| {
            let maximal: Vec<Vec<usize>> = raw
                .into_iter()
                .map(|mut s| {
                    s.sort_unstable();
                    s.dedup();
                    s
                })
                .collect();
            SimplicialComplex::build(n, &maximal).unwrap()
        })
        .prop_filter("too many simplices", move |c| c.len() <= max_cells)
}

/// Distinct rational values: a shuffled rank plus a small fraction.
pub fn generic_values(n: usize) -> impl Strategy<Value = Vec<Rational>> {
    (
        Just((0..n as i128).collect::<Vec<_>>()).prop_shuffle(),
        vec(1i128..=5, n),
    )
        .prop_map(|(ranks, dens)| {
            ranks
                .iter()
                .zip(&dens)
                .map(|(&r, &d)| int(r) + ratio(1, d + 1))
                .collect()
        })
}

/// A complex with a generic 0-cochain.
pub fn complex_with_values(
    max_vertices: usize,
    max_cells: usize,
) -> impl Strategy<Value = (SimplicialComplex, Cochain0)> {
    complex(max_vertices, max_cells).prop_flat_map(|c| {
        let n = c.vertex_count();
        (Just(c), generic_values(n).prop_map(Cochain0::new))
    })
}

/// Filled triangle on three vertices.
pub fn triangle() -> SimplicialComplex {
    SimplicialComplex::build(3, &[vec![0, 1, 2]]).unwrap()
}

/// Boundary of a triangle.
pub fn circle() -> SimplicialComplex {
    SimplicialComplex::build(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap()
}

pub fn edge() -> SimplicialComplex {
    SimplicialComplex::build(2, &[vec![0, 1]]).unwrap()
}

pub fn values(v: &[i128]) -> Cochain0 {
    Cochain0::new(v.iter().map(|&x| int(x)).collect())
}
