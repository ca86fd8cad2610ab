mod common;

use std::collections::BTreeSet;

use cocycle_core::complex::{
    condition_a_violation, incidence_matrix, make_filtration_compatible, satisfies_condition_b,
    topological_order, CellComplex, SimplicialComplex,
};
use cocycle_core::derive::sublevel_subcomplex_filtration;
use cocycle_core::oracle::{homology_ranks, persistent_betti_bruteforce};
use cocycle_core::persist::{filtered_pairs, mu_from_beta, standard_persistence};
use cocycle_core::reduce::{add_columns, betti_numbers, reduce_matrix, Death};
use proptest::prelude::*;

fn low(col: &[usize]) -> Option<usize> {
    col.last().copied()
}

/// Any-pair reduction: while two columns share a low, add the left one into
/// the right one.
fn lazy_reduce(mut cols: Vec<Vec<usize>>) -> BTreeSet<(usize, usize)> {
    loop {
        let mut found = None;
        'outer: for j in (0..cols.len()).rev() {
            for i in 0..j {
                if low(&cols[i]).is_some() && low(&cols[i]) == low(&cols[j]) {
                    found = Some((i, j));
                    break 'outer;
                }
            }
        }
        match found {
            Some((i, j)) => cols[j] = add_columns(&cols[j], &cols[i]),
            None => break,
        }
    }
    cols.iter()
        .enumerate()
        .filter_map(|(j, c)| low(c).map(|l| (l, j)))
        .collect()
}

fn euler(counts: impl Iterator<Item = usize>) -> i64 {
    counts
        .enumerate()
        .map(|(r, n)| if r % 2 == 0 { n as i64 } else { -(n as i64) })
        .sum()
}

proptest! {
    #[test]
    fn face_closure_is_idempotent(c in common::complex(6, 40)) {
        let again = SimplicialComplex::build(c.vertex_count(), &c.maximal_simplices()).unwrap();
        prop_assert_eq!(again.simplices(), c.simplices());
    }

    #[test]
    fn matrix_is_class_u_with_full_columns(c in common::complex(6, 40)) {
        let order = topological_order(&c);
        let m = incidence_matrix(&c, &order).unwrap();
        prop_assert!(m.is_class_u());
        for j in 0..m.len() {
            let d = m.dims()[j];
            prop_assert_eq!(m.column(j).len(), if d == 0 { 0 } else { d + 1 });
        }
    }

    #[test]
    fn repair_meets_both_conditions((c, f) in common::complex_with_values(6, 30)) {
        let stages = sublevel_subcomplex_filtration(&c, &f).unwrap();
        let order = make_filtration_compatible(&c, &topological_order(&c), &stages).unwrap();
        prop_assert!(condition_a_violation(&c, order.cells()).is_none());
        prop_assert!(satisfies_condition_b(order.cells(), &stages));
        for (i, &a) in order.cells().iter().enumerate() {
            for &b in &order.cells()[i + 1..] {
                prop_assert!(stages[a] <= stages[b]);
            }
        }
    }

    #[test]
    fn lows_do_not_depend_on_strategy(c in common::complex(5, 25)) {
        let m = incidence_matrix(&c, &topological_order(&c)).unwrap();
        let r = reduce_matrix(&m).unwrap();
        prop_assert!(r.is_reduced());
        let standard: BTreeSet<(usize, usize)> =
            (0..r.len()).filter_map(|j| r.low(j).map(|l| (l, j))).collect();
        prop_assert_eq!(standard, lazy_reduce(m.columns().to_vec()));
    }

    #[test]
    fn betti_and_ranks_match_oracle(c in common::complex(6, 25)) {
        let m = incidence_matrix(&c, &topological_order(&c)).unwrap();
        let r = reduce_matrix(&m).unwrap();
        let betti = betti_numbers(&r);
        let oracle = homology_ranks(&c).unwrap();
        prop_assert_eq!(&betti, &oracle);

        let counts: Vec<usize> =
            (0..betti.len()).map(|d| c.of_dim(d).count()).collect();
        prop_assert_eq!(euler(counts.iter().copied()), euler(betti.iter().copied()));

        // rank ∂_{r+1} = n_r - rank ∂_r - b_r
        let stages = vec![0; c.len()];
        let pairs = filtered_pairs(&c, &stages).unwrap();
        let mut rank_below = 0;
        for d in 0..betti.len() {
            let rank_above = counts[d] - rank_below - oracle[d];
            let n = pairs.pairs.iter().filter(|p| p.degree == d).count();
            prop_assert_eq!(n, rank_above);
            rank_below = rank_above;
        }
    }

    #[test]
    fn beta_matches_bruteforce((c, f) in common::complex_with_values(6, 25)) {
        let p = standard_persistence(&c, &f).unwrap();
        let stages = sublevel_subcomplex_filtration(&c, &f).unwrap();
        let upto = |s: usize| -> Vec<usize> { (0..c.len()).filter(|&x| stages[x] <= s).collect() };
        for r in 0..p.degrees() {
            for i in 0..p.stages() {
                for j in i..p.stages() {
                    let want = persistent_betti_bruteforce(&c, &upto(i), &upto(j), r).unwrap();
                    prop_assert_eq!(p.beta(r, i, j), want, "r={} i={} j={}", r, i, j);
                }
            }
        }
    }

    #[test]
    fn mu_round_trips_through_beta((c, f) in common::complex_with_values(6, 25)) {
        let p = standard_persistence(&c, &f).unwrap();
        let n = p.stages();
        for r in 0..p.degrees() {
            let grid = p.beta_grid(r);
            for i in 0..n {
                for k in (i + 1..n).map(Death::Finite).chain([Death::Infinite]) {
                    prop_assert_eq!(mu_from_beta(&grid, i, k), p.mu(r, i, k) as isize);
                }
            }
        }
    }
}

#[test]
fn repair_examples() {
    let e = common::edge();
    let order = cocycle_core::complex::CellOrder::new(&e, vec![0, 1, 2]).unwrap();
    let fixed = make_filtration_compatible(&e, &order, &[1, 0, 1]).unwrap();
    assert_eq!(fixed.cells(), &[1, 0, 2]);
    let same = make_filtration_compatible(&e, &order, &[0, 0, 1]).unwrap();
    assert_eq!(same.cells(), &[0, 1, 2]);

    let c = common::circle();
    let e01 = c.id_of(&[0, 1]).unwrap();
    let stages: Vec<usize> = (0..c.len())
        .map(|s| if s == e01 || s <= 1 { 0 } else { 1 })
        .collect();
    let fixed = make_filtration_compatible(&c, &topological_order(&c), &stages).unwrap();
    let first_late = fixed.cells().iter().position(|&x| stages[x] == 1).unwrap();
    assert!(fixed.cells()[first_late..].iter().all(|&x| stages[x] == 1));
    for (p, &x) in fixed.cells().iter().enumerate() {
        for &face in c.facets(x) {
            assert!(fixed.cells()[..p].contains(&face));
        }
    }
}
