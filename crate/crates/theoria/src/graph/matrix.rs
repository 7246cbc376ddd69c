//! Dense integer matrices for path counting and reachability.
//!
//! Entries are path counts, so arithmetic saturates rather than wraps: once
//! a count is astronomically large only its positivity matters, and
//! binarization is what every consumer applies before reading the result.

use std::fmt;

/// A square matrix of saturating 64-bit integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matrix {
    n: usize,
    data: Vec<i64>,
}

impl Matrix {
    pub fn zero(n: usize) -> Matrix {
        Matrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Matrix {
        let mut m = Matrix::zero(n);
        for (u, v) in edges {
            m.set(u, v, 1);
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, row: usize, col: usize) -> i64 {
        self.data[row * self.n + col]
    }

    pub fn set(&mut self, row: usize, col: usize, value: i64) {
        self.data[row * self.n + col] = value;
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimensions must agree");
        let n = self.n;
        let mut out = Matrix::zero(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a == 0 {
                    continue;
                }
                for j in 0..n {
                    let cur = out.get(i, j);
                    out.set(i, j, cur.saturating_add(a.saturating_mul(other.get(k, j))));
                }
            }
        }
        out
    }

    pub fn add(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimensions must agree");
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(&other.data) {
            *o = o.saturating_add(*x);
        }
        out
    }

    pub fn sub(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.n, other.n, "matrix dimensions must agree");
        let mut out = self.clone();
        for (o, x) in out.data.iter_mut().zip(&other.data) {
            *o = o.saturating_sub(*x);
        }
        out
    }

    /// Maps strictly positive entries to 1 and everything else — zeros and
    /// negatives alike — to 0.
    pub fn binarize(&self) -> Matrix {
        Matrix {
            n: self.n,
            data: self.data.iter().map(|&x| i64::from(x > 0)).collect(),
        }
    }

    pub fn is_boolean(&self) -> bool {
        self.data.iter().all(|&x| x == 0 || x == 1)
    }

    /// The positions of strictly positive entries, in row-major order.
    pub fn positive_entries(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in 0..self.n {
                if self.get(i, j) > 0 {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The sum of the first `upto` powers of the matrix:
    /// `A + A^2 + ... + A^upto`. Entry `(i, j)` counts the walks from `i`
    /// to `j` of length 1 through `upto` (saturating).
    pub fn power_sum(&self, upto: usize) -> Matrix {
        let mut sum = Matrix::zero(self.n);
        let mut power = Matrix::from_identity(self.n);
        for _ in 0..upto {
            power = power.mul(self);
            sum = sum.add(&power);
        }
        sum
    }

    fn from_identity(n: usize) -> Matrix {
        let mut m = Matrix::zero(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Boolean reachability by paths of length at least one, computed in
    /// place Floyd–Warshall style.
    pub fn floyd_warshall_closure(&self) -> Matrix {
        let n = self.n;
        let mut r = self.binarize();
        for k in 0..n {
            for i in 0..n {
                if r.get(i, k) == 0 {
                    continue;
                }
                for j in 0..n {
                    if r.get(k, j) == 1 {
                        r.set(i, j, 1);
                    }
                }
            }
        }
        r
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            for j in 0..self.n {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("\n")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn power_sum_counts_walks() {
        // A path 0 -> 1 -> 2 plus a shortcut 0 -> 2.
        let a = Matrix::from_edges(3, [(0, 1), (1, 2), (0, 2)]);
        let b = a.power_sum(3);
        assert_eq!(b.get(0, 1), 1);
        // Two walks from 0 to 2: direct, and through 1.
        assert_eq!(b.get(0, 2), 2);
        assert_eq!(b.get(2, 0), 0);
        assert!(!b.is_boolean());
        assert!(b.binarize().is_boolean());
    }

    #[test]
    fn floyd_warshall_agrees_with_power_sums() {
        let a = Matrix::from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 1)]);
        assert_eq!(a.power_sum(4).binarize(), a.floyd_warshall_closure());
        // A cycle reaches itself: 1 -> 2 -> 3 -> 1.
        assert_eq!(a.floyd_warshall_closure().get(1, 1), 1);
        // But an off-cycle node does not.
        assert_eq!(a.floyd_warshall_closure().get(0, 0), 0);
    }

    #[test]
    fn binarize_zeroes_negative_entries() {
        let mut m = Matrix::zero(2);
        m.set(0, 0, -3);
        m.set(0, 1, 7);
        let b = m.binarize();
        assert_eq!(b.get(0, 0), 0);
        assert_eq!(b.get(0, 1), 1);
    }

    #[test]
    fn saturation_keeps_huge_counts_positive() {
        // A dense graph where walk counts explode combinatorially.
        let n = 12;
        let mut a = Matrix::zero(n);
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    a.set(i, j, 1);
                }
            }
        }
        let b = a.power_sum(2 * n);
        assert!(b.get(0, 1) > 0);
        assert_eq!(b.binarize(), a.floyd_warshall_closure());
    }

    #[test]
    fn the_empty_matrix_is_fine() {
        let a = Matrix::zero(0);
        assert_eq!(a.power_sum(0), a);
        assert_eq!(a.floyd_warshall_closure(), a);
        assert_eq!(a.to_string(), "");
    }
}
