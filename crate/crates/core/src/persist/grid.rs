use alloc::vec::Vec;

use crate::cochain::Cochain0;
use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::rational::{int, midpoint, Rational};

/// Critical values `t_1 < ... < t_k` interleaved with regular values:
/// `s_{2i} = t_i`, odd points strictly between. Indices are 1-based.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SGrid {
    critical: Vec<Rational>,
    points: Vec<Rational>,
}

impl SGrid {
    /// Odd points are midpoints, with `s_1 = t_1 - 1` and `s_{2k+1} = t_k + 1`.
    pub fn new(critical: Vec<Rational>) -> Result<Self> {
        if critical.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::BadInterval);
        }
        let k = critical.len();
        let mut points = Vec::with_capacity(2 * k + 1);
        points.push(critical.first().map_or(int(0), |&t| t - int(1)));
        for i in 0..k {
            points.push(critical[i]);
            points.push(if i + 1 < k {
                midpoint(critical[i], critical[i + 1])
            } else {
                critical[i] + int(1)
            });
        }
        Ok(Self { critical, points })
    }

    /// Critical values are the sorted vertex values.
    pub fn from_values(complex: &SimplicialComplex, f: &Cochain0) -> Result<Self> {
        f.check_injective(complex)?;
        let mut values = f.values()[..complex.vertex_count()].to_vec();
        values.sort_unstable();
        Self::new(values)
    }

    /// Replaces the regular point of the interval containing `s` by `s`.
    /// Returns the grid and the index of `s`.
    pub fn through(critical: Vec<Rational>, s: Rational) -> Result<(Self, usize)> {
        let mut grid = Self::new(critical)?;
        let m = grid.critical.partition_point(|&t| t < s);
        if grid.critical.get(m) == Some(&s) {
            return Ok((grid, 2 * (m + 1)));
        }
        grid.points[2 * m] = s;
        Ok((grid, 2 * m + 1))
    }

    /// `2k + 1`.
    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn critical(&self) -> &[Rational] {
        &self.critical
    }

    pub fn points(&self) -> &[Rational] {
        &self.points
    }

    /// `s_i`.
    pub fn s(&self, i: usize) -> Rational {
        self.points[i - 1]
    }

    pub fn is_critical(i: usize) -> bool {
        i.is_multiple_of(2)
    }

    /// Grid index of a critical value.
    pub fn index_of_critical(&self, t: Rational) -> Option<usize> {
        self.critical.binary_search(&t).ok().map(|m| 2 * (m + 1))
    }

    /// Steps from `s_i` up to the critical value `t > s_i`.
    pub fn steps_up(&self, i: usize, t: Rational) -> usize {
        self.index_of_critical(t).expect("critical value") - i
    }

    /// Steps from `s_i` down to the critical value `t < s_i`.
    pub fn steps_down(&self, i: usize, t: Rational) -> usize {
        i - self.index_of_critical(t).expect("critical value")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;
    use alloc::vec;

    #[test]
    fn interleaving() {
        let g = SGrid::new(vec![int(0), int(1), int(3)]).unwrap();
        assert_eq!(
            g.points(),
            &[int(-1), int(0), ratio(1, 2), int(1), int(2), int(3), int(4)]
        );
        assert_eq!(g.s(2), int(0));
        assert_eq!(g.index_of_critical(int(3)), Some(6));
        assert_eq!(g.steps_up(3, int(3)), 3);
        assert_eq!(g.steps_down(3, int(0)), 1);
        assert!(SGrid::new(vec![int(1), int(1)]).is_err());
    }

    #[test]
    fn through_a_point() {
        let (g, i) = SGrid::through(vec![int(0), int(1)], ratio(1, 4)).unwrap();
        assert_eq!(i, 3);
        assert_eq!(g.s(3), ratio(1, 4));
        let (_, i) = SGrid::through(vec![int(0), int(1)], int(1)).unwrap();
        assert_eq!(i, 4);
        let (g, i) = SGrid::through(vec![int(0), int(1)], int(7)).unwrap();
        assert_eq!((i, g.s(5)), (5, int(7)));
    }
}
