use alloc::vec::Vec;

use crate::cochain::Cochain0;
use crate::complex::SimplicialComplex;
use crate::complex::{
    incidence_matrix, make_filtration_compatible, topological_order, CellComplex,
};
use crate::derive::sublevel_subcomplex_filtration;
use crate::error::Result;
use crate::reduce::{persistence_pairs, reduce_matrix, CountTable, Death, PairTable};
use crate::Rational;

/// Repairs the topological order for `stages`, reduces, and pairs.
pub fn filtered_pairs(complex: &impl CellComplex, stages: &[usize]) -> Result<PairTable> {
    let order = make_filtration_compatible(complex, &topological_order(complex), stages)?;
    let m = incidence_matrix(complex, &order)?;
    persistence_pairs(&reduce_matrix(&m)?, stages)
}

/// Sublevel persistence over stages `0..stages`, where stage `i` is the
/// subcomplex of simplices whose vertex values are at most `t_{i+1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StandardPersistence {
    critical: Vec<Rational>,
    degrees: usize,
    mu: CountTable,
}

impl StandardPersistence {
    /// Built directly from a μ table over `stages` stages.
    pub fn from_mu(critical: Vec<Rational>, degrees: usize, mu: CountTable) -> Self {
        Self {
            critical,
            degrees,
            mu,
        }
    }

    /// Number of stages.
    pub fn stages(&self) -> usize {
        self.critical.len()
    }

    /// Value at which stage `i` begins.
    pub fn value(&self, i: usize) -> Rational {
        self.critical[i]
    }

    pub fn critical(&self) -> &[Rational] {
        &self.critical
    }

    /// Degrees `0..degrees` may be nonzero.
    pub fn degrees(&self) -> usize {
        self.degrees
    }

    pub fn mu_table(&self) -> &CountTable {
        &self.mu
    }

    /// `μ_r(i, j)`, including same-stage pairs `i = j`.
    pub fn mu(&self, r: usize, i: usize, j: Death) -> usize {
        self.mu.get(&(r, i, j)).copied().unwrap_or(0)
    }

    /// `β_r(i, j)`, the rank of `H_r(X_i) → H_r(X_j)` for `i ≤ j`.
    pub fn beta(&self, r: usize, i: usize, j: usize) -> usize {
        self.mu
            .range((r, 0, Death::Finite(0))..(r + 1, 0, Death::Finite(0)))
            .filter(|(&(_, b, d), _)| b <= i && d > Death::Finite(j))
            .map(|(_, &n)| n)
            .sum()
    }

    /// `κ_r(i) = dim H_r(X_i)`.
    pub fn kappa(&self, r: usize, i: usize) -> usize {
        self.beta(r, i, i)
    }

    /// `κ_r(i, j) = dim ker(H_r(X_i) → H_r(X_j))`.
    pub fn kappa_pair(&self, r: usize, i: usize, j: usize) -> usize {
        self.kappa(r, i) - self.beta(r, i, j)
    }

    /// `β_r(i, j)` for all `i ≤ j`, zero below the diagonal.
    pub fn beta_grid(&self, r: usize) -> Vec<Vec<usize>> {
        let n = self.stages();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i <= j { self.beta(r, i, j) } else { 0 })
                    .collect()
            })
            .collect()
    }
}

/// `μ_r(i, k)` for `i < k` from a β grid by the alternating four-term sum,
/// with `β(-1, ·) = 0` and `β(·, ∞) = 0`.
pub fn mu_from_beta(beta: &[Vec<usize>], i: usize, k: Death) -> isize {
    let n = beta.len();
    let b = |i: isize, j: Option<usize>| -> isize {
        match j {
            Some(j) if i >= 0 => beta[i as usize][j] as isize,
            _ => 0,
        }
    };
    let (prev, here) = match k {
        Death::Finite(k) => (Some(k - 1), Some(k)),
        Death::Infinite => (Some(n - 1), None),
    };
    let i = i as isize;
    b(i, prev) - b(i, here) - b(i - 1, prev) + b(i - 1, here)
}

pub fn standard_persistence(
    complex: &SimplicialComplex,
    f: &Cochain0,
) -> Result<StandardPersistence> {
    let stages = sublevel_subcomplex_filtration(complex, f)?;
    let pairs = filtered_pairs(complex, &stages)?;
    let mut critical = f.values()[..complex.vertex_count()].to_vec();
    critical.sort_unstable();
    let degrees = complex.max_dim().map_or(0, |d| d + 1);
    Ok(StandardPersistence::from_mu(critical, degrees, pairs.mu()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use alloc::vec;

    fn values(v: &[i128]) -> Cochain0 {
        Cochain0::new(v.iter().map(|&x| int(x)).collect())
    }

    #[test]
    fn edge() {
        let e = SimplicialComplex::build(2, &[vec![0, 1]]).unwrap();
        let p = standard_persistence(&e, &values(&[0, 1])).unwrap();
        assert_eq!(p.mu(0, 1, Death::Finite(1)), 1);
        assert_eq!(p.mu(0, 0, Death::Infinite), 1);
        assert_eq!(p.kappa(0, 0), 1);
        assert_eq!(p.kappa(0, 1), 1);
        assert_eq!(p.beta(0, 0, 1), 1);
    }

    #[test]
    fn circle() {
        let c = SimplicialComplex::build(3, &[vec![0, 1], vec![1, 2], vec![0, 2]]).unwrap();
        let p = standard_persistence(&c, &values(&[0, 1, 2])).unwrap();
        assert_eq!(p.mu(0, 0, Death::Infinite), 1);
        assert_eq!(p.mu(1, 2, Death::Infinite), 1);
        assert_eq!(p.kappa(1, 1), 0);
        assert_eq!(p.kappa(1, 2), 1);
    }

    #[test]
    fn point() {
        let x = SimplicialComplex::build(1, &[vec![0]]).unwrap();
        let p = standard_persistence(&x, &values(&[5])).unwrap();
        assert_eq!(p.kappa(0, 0), 1);
        assert_eq!(p.mu_table().len(), 1);
    }

    #[test]
    fn four_term_inversion() {
        let x = SimplicialComplex::build(
            4,
            &[vec![0, 1], vec![1, 2], vec![2, 3], vec![0, 3], vec![0, 2]],
        )
        .unwrap();
        let p = standard_persistence(&x, &values(&[3, 0, 2, 1])).unwrap();
        for r in 0..2 {
            let beta = p.beta_grid(r);
            for i in 0..4 {
                for k in (i + 1..4).map(Death::Finite).chain([Death::Infinite]) {
                    assert_eq!(mu_from_beta(&beta, i, k), p.mu(r, i, k) as isize);
                }
            }
        }
    }
}
