mod common;

use std::collections::BTreeMap;

use cocycle_core::cochain::{
    coboundary, vertex_angles, AlmostIntegralCocycle, CircleMap, Cochain0, Cochain1,
};
use cocycle_core::complex::{CellComplex, SimplicialComplex};
use cocycle_core::derive::{
    cut_cell_complex, halfspace_cell_complex, level_cell_complex, CellRole, Group, Side,
};
use cocycle_core::oracle::{
    common_kernel_dim, homology_rank, homology_ranks, kernel_dim, recover_sublevel_from_level,
    recovery_mismatches,
};
use cocycle_core::persist::{
    circle_level_persistence, circle_level_persistence_with, cocycle_persistence,
    level_persistence, level_persistence_at, standard_persistence, view_stages, CircleOptions,
    LevelPoint,
};
use cocycle_core::rational::{int, ratio, rem_euclid};
use cocycle_core::reduce::Death;
use cocycle_core::unroll::{theta_decompose, unroll};
use cocycle_core::Rational;
use proptest::collection::vec;
use proptest::prelude::*;

/// Level tables with steps replaced by their `τ` values.
type TauTable = BTreeMap<(usize, Option<Rational>), usize>;

fn up_taus(p: &LevelPoint) -> TauTable {
    p.nu_plus_table()
        .iter()
        .map(|(&(r, k), &n)| ((r, k.finite().map(|k| p.up_tau(k))), n))
        .collect()
}

fn down_taus(p: &LevelPoint) -> TauTable {
    p.nu_minus_table()
        .iter()
        .map(|(&(r, k), &n)| ((r, k.finite().map(|k| p.down_tau(k))), n))
        .collect()
}

#[allow(clippy::type_complexity)]
fn omega_taus(p: &LevelPoint) -> BTreeMap<(usize, Option<Rational>, Option<Rational>), usize> {
    p.omega_table()
        .iter()
        .map(|(&(r, j, k), &n)| {
            (
                (
                    r,
                    j.finite().map(|j| p.down_tau(j)),
                    k.finite().map(|k| p.up_tau(k)),
                ),
                n,
            )
        })
        .collect()
}

fn same_numbers(a: &LevelPoint, b: &LevelPoint) -> bool {
    (0..a.degrees().max(b.degrees())).all(|r| a.l(r) == b.l(r))
        && a.nu_plus_table() == b.nu_plus_table()
        && a.nu_minus_table() == b.nu_minus_table()
        && a.omega_table() == b.omega_table()
        && up_taus(a) == up_taus(b)
        && down_taus(a) == down_taus(b)
}

/// Angles in quarters of a unit with period `α`, kept off the level `θ`.
fn circle_input() -> impl Strategy<Value = (SimplicialComplex, CircleMap, Rational)> {
    (common::complex(5, 16), 3i128..=6)
        .prop_flat_map(|(c, a)| {
            let n = c.vertex_count();
            (Just(c), Just(a), vec(0i128..4 * a, n), 0i128..4 * a)
        })
        .prop_map(|(c, a, raw, th)| {
            let alpha = int(a);
            let angles: Vec<Rational> = raw.iter().map(|&x| ratio(x, 4)).collect();
            (
                c,
                CircleMap::new(angles, alpha).unwrap(),
                ratio(2 * th + 1, 8),
            )
        })
        .prop_filter("non-generic or too wide", |(c, cm, th)| {
            let mut a = cm.angles().to_vec();
            a.sort_unstable();
            a.windows(2).all(|w| w[0] != w[1]) && theta_decompose(c, cm, *th).is_ok()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn identities_hold_on_every_point((c, f) in common::complex_with_values(5, 18)) {
        let lp = level_persistence(&c, &f).unwrap();
        let bad = lp.identity_violations();
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn level_numbers_match_oracle((c, f) in common::complex_with_values(5, 16)) {
        let lp = level_persistence(&c, &f).unwrap();
        for p in lp.points() {
            let i = p.index();
            let s = lp.grid().s(i);
            let level = level_cell_complex(&c, &f, s).unwrap();
            for r in 0..p.degrees() {
                prop_assert_eq!(p.l(r), homology_rank(&level, r).unwrap());
                // Prefix sums of ν±, against kernels into thicker bands.
                for (side, max) in [(Side::Up, p.max_up()), (Side::Down, p.max_down())] {
                    let view = halfspace_cell_complex(&c, &f, s, side).unwrap();
                    let stages = view_stages(&view, lp.grid(), i);
                    let lcells: Vec<usize> = view.level_cells().collect();
                    for j in 0..=max {
                        let upto: Vec<usize> = (0..view.len()).filter(|&x| stages[x] <= j).collect();
                        let want = kernel_dim(&view, &lcells, &upto, r).unwrap();
                        let got = match side {
                            Side::Up => p.l_plus(r, j),
                            Side::Down => p.l_minus(r, j),
                        };
                        prop_assert_eq!(got, want, "i={} r={} j={} {:?}", i, r, j, side);
                    }
                }
                let cut = cut_cell_complex(&c, &f, s).unwrap();
                let stages = view_stages(&cut, lp.grid(), i);
                let shared: Vec<usize> = cut.level_cells().collect();
                let side = |g: Group, j: usize| -> Vec<usize> {
                    (0..cut.len())
                        .filter(|&x| {
                            cut.cell(x).role != CellRole::Simplex
                                || (cut.groups()[x] == g && stages[x] <= j)
                        })
                        .collect()
                };
                for j in 0..=p.max_down() {
                    for k in 0..=p.max_up() {
                        let want = common_kernel_dim(&cut, &shared, &side(Group::Minus, j), &side(Group::Plus, k), r).unwrap();
                        prop_assert_eq!(p.e(r, Death::Finite(j), Death::Finite(k)), want, "i={} r={} j={} k={}", i, r, j, k);
                    }
                }
            }
        }
    }

    #[test]
    fn recovery_reproduces_sublevel_persistence((c, f) in common::complex_with_values(5, 16)) {
        let lp = level_persistence(&c, &f).unwrap();
        let rec = recover_sublevel_from_level(&lp).unwrap();
        let bad = recovery_mismatches(
            &rec,
            &standard_persistence(&c, &f).unwrap(),
            &standard_persistence(&c, &f.negated()).unwrap(),
        );
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn unrolled_cover_is_consistent((c, cm, theta) in circle_input(), n in 1usize..4) {
        let d = theta_decompose(&c, &cm, theta).unwrap();
        let cover = unroll(&d, &c, &cm, n).unwrap();
        prop_assert!(cover.matrix().is_class_u());
        prop_assert!(homology_ranks(&cover).is_ok());
        let alpha = cm.alpha();
        let mut lifts: BTreeMap<(usize, usize), Rational> = BTreeMap::new();
        for (x, cell) in cover.cells().iter().enumerate() {
            if cover.cell_dim(x) != 0 {
                continue;
            }
            let v = cover.realized().simplex(cover.realized_id(x))[0];
            let value = cover.lifted().value(v);
            prop_assert_eq!(rem_euclid(value, alpha), cm.angle(cell.origin));
            lifts.insert((cell.origin, cell.copy), value);
        }
        for (&(v, k), &value) in &lifts {
            if let Some(&next) = lifts.get(&(v, k + 1)) {
                prop_assert_eq!(next - value, alpha);
            }
        }
    }

    #[test]
    fn circle_numbers_do_not_depend_on_the_window((c, cm, theta) in circle_input()) {
        let base = circle_level_persistence(&c, &cm, theta).unwrap();
        let b = base.budget;
        let shifted = circle_level_persistence_with(
            &c,
            &cm,
            theta,
            CircleOptions { budget: None, centre: Some(b + 1) },
        )
        .unwrap();
        prop_assert!(same_numbers(&base.point, &shifted.point));
        let next = circle_level_persistence(&c, &cm, theta + cm.alpha()).unwrap();
        prop_assert!(same_numbers(&base.point, &next.point));
        prop_assert!(base.point.identity_violations().is_empty());
    }

    #[test]
    fn rotating_angles_and_level_together_changes_nothing(
        (c, cm, theta) in circle_input(),
        q in 0i128..24,
    ) {
        let delta = ratio(q, 4);
        let a = circle_level_persistence(&c, &cm, theta).unwrap();
        let b = circle_level_persistence(&c, &cm.rotated(delta), rem_euclid(theta + delta, cm.alpha())).unwrap();
        prop_assert!(same_numbers(&a.point, &b.point));
    }

    /// Angles inside half a period: the cover is a stack of disjoint copies
    /// and the level numbers are those of the real-valued map.
    #[test]
    fn trivial_class_matches_real_level_persistence(
        (c, f) in common::complex_with_values(5, 16),
        gap in 0usize..5,
    ) {
        let mut v: Vec<Rational> = f.values().to_vec();
        v.sort_unstable();
        let theta = if gap + 1 < v.len() { (v[gap] + v[gap + 1]) / int(2) } else { v[0] - ratio(1, 2) };
        let shift = int(1);
        let alpha = int(4 * (v.len() as i128 + 2));
        let lifted = Cochain0::new(f.values().iter().map(|&x| x + shift).collect());
        let cm = CircleMap::from_values(lifted.values(), alpha).unwrap();
        let circ = circle_level_persistence(&c, &cm, theta + shift).unwrap();
        let real = level_persistence_at(&c, &f, theta).unwrap();
        prop_assert_eq!((0..real.degrees()).map(|r| real.l(r)).collect::<Vec<_>>(),
                        (0..real.degrees()).map(|r| circ.point.l(r)).collect::<Vec<_>>());
        prop_assert_eq!(up_taus(&real), up_taus(&circ.point));
        prop_assert_eq!(down_taus(&real), down_taus(&circ.point));
        prop_assert_eq!(omega_taus(&real), omega_taus(&circ.point));
    }
}

fn circle_cocycle() -> (SimplicialComplex, AlmostIntegralCocycle) {
    let c = common::circle();
    let z = Cochain1::new()
        .with(0, 1, int(1))
        .with(1, 2, int(1))
        .with(2, 0, int(1));
    let z = AlmostIntegralCocycle::new(z, int(3), &c).unwrap();
    (c, z)
}

#[test]
fn circle_fixture() {
    let (c, z) = circle_cocycle();
    let cm = vertex_angles(&z, &c, 0).unwrap();
    let res = cocycle_persistence(&c, &z, ratio(1, 2), 0).unwrap();
    let p = &res.point;
    assert_eq!(p.l(0), 1);
    assert_eq!(p.nu_plus(0, Death::Infinite), 1);
    assert_eq!(p.nu_minus(0, Death::Infinite), 1);

    // The cover of a circle winding once is a path.
    let d = theta_decompose(&c, &cm, ratio(1, 2)).unwrap();
    let cover = unroll(&d, &c, &cm, 4).unwrap();
    assert_eq!(homology_ranks(&cover).unwrap(), vec![1, 0]);
    let deg: Vec<usize> = (0..cover.realized().vertex_count())
        .map(|v| cover.realized().adjacency()[v].len())
        .collect();
    assert_eq!(deg.iter().filter(|&&d| d == 1).count(), 2);
    assert!(deg.iter().all(|&d| d == 1 || d == 2));

    // Base vertex 1 shifts the angles by 2; the level moves with them.
    let other = cocycle_persistence(&c, &z, ratio(1, 2) + int(2), 1).unwrap();
    assert!(same_numbers(p, &other.point));
}

#[test]
fn coboundary_cocycle_on_a_path() {
    let c = SimplicialComplex::build(3, &[vec![0, 1], vec![1, 2]]).unwrap();
    let f = common::values(&[0, 2, 1]);
    let z = AlmostIntegralCocycle::new(coboundary(&f, &c).unwrap(), int(10), &c).unwrap();
    for theta in [ratio(1, 2), ratio(3, 2)] {
        let circ = cocycle_persistence(&c, &z, theta, 0).unwrap();
        let real = level_persistence_at(&c, &f, theta).unwrap();
        assert_eq!(up_taus(&real), up_taus(&circ.point));
        assert_eq!(down_taus(&real), down_taus(&circ.point));
        assert_eq!(omega_taus(&real), omega_taus(&circ.point));
    }
}

#[test]
fn recovery_fixtures() {
    let cases: Vec<(SimplicialComplex, Cochain0)> = vec![
        (common::edge(), common::values(&[0, 1])),
        (common::circle(), common::values(&[0, 1, 2])),
        (common::triangle(), common::values(&[0, 1, 2])),
        (SimplicialComplex::empty(), Cochain0::new(vec![])),
    ];
    for (c, f) in cases {
        let lp = level_persistence(&c, &f).unwrap();
        let rec = recover_sublevel_from_level(&lp).unwrap();
        let bad = recovery_mismatches(
            &rec,
            &standard_persistence(&c, &f).unwrap(),
            &standard_persistence(&c, &f.negated()).unwrap(),
        );
        assert!(bad.is_empty(), "{bad:?}");
    }
}
