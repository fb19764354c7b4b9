//! Small dense matrices over a [`Scalar`] field: inverse, row reduction,
//! nullspace and Sylvester inertia. In rational mode all of it is exact.

use std::ops::{Index, IndexMut};

use crate::field::Scalar;

#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<S> {
    rows: usize,
    cols: usize,
    data: Vec<S>,
}

impl<S: Scalar> Matrix<S> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix { rows, cols, data: vec![S::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> S) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { S::one() } else { S::zero() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Side length of a square matrix.
    pub fn n(&self) -> usize {
        debug_assert_eq!(self.rows, self.cols);
        self.rows
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows);
        Self::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(S::zero(), |acc, k| acc + self[(i, k)].clone() * other[(k, j)].clone())
        })
    }

    pub fn add(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() + other[(i, j)].clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() - other[(i, j)].clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        Self::from_fn(self.rows, self.cols, |i, j| self[(i, j)].clone() * k.clone())
    }

    /// `[A, B] = AB - BA`.
    pub fn commutator(&self, other: &Self) -> Self {
        self.mul(other).sub(&other.mul(self))
    }

    pub fn max_abs(&self) -> S {
        self.data.iter().fold(S::zero(), |m, x| {
            let a = x.magnitude();
            if a > m {
                a
            } else {
                m
            }
        })
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Picks the row at or below `from` with the largest non-negligible
    /// entry in column `col`.
    fn pivot_row(&self, col: usize, from: usize, scale: &S) -> Option<usize> {
        let mut best: Option<(usize, S)> = None;
        for r in from..self.rows {
            let v = self[(r, col)].magnitude();
            if S::negligible(&v, scale) {
                continue;
            }
            match &best {
                Some((_, b)) if *b >= v => {}
                _ => best = Some((r, v)),
            }
        }
        best.map(|(r, _)| r)
    }

    /// Reduced row echelon form in place; returns the pivot columns.
    pub fn rref(&mut self) -> Vec<usize> {
        let scale = self.max_abs();
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            if row == self.rows {
                break;
            }
            let Some(p) = self.pivot_row(col, row, &scale) else {
                continue;
            };
            self.swap_rows(row, p);
            let inv = S::one() / self[(row, col)].clone();
            for j in 0..self.cols {
                let v = self[(row, j)].clone() * inv.clone();
                self[(row, j)] = v;
            }
            for r in 0..self.rows {
                if r == row || self[(r, col)].is_zero() {
                    continue;
                }
                let factor = self[(r, col)].clone();
                for j in 0..self.cols {
                    let v = self[(r, j)].clone() - factor.clone() * self[(row, j)].clone();
                    self[(r, j)] = v;
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref().len()
    }

    /// A basis of `{x : A x = 0}`, one vector per free column, each with a
    /// unit entry at its free column.
    pub fn nullspace(&self) -> Vec<Vec<S>> {
        let mut m = self.clone();
        let pivots = m.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![S::zero(); self.cols];
                v[f] = S::one();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = -m[(r, f)].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<Self> {
        let n = self.n();
        let mut aug = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self[(i, j)].clone()
            } else if j - n == i {
                S::one()
            } else {
                S::zero()
            }
        });
        let pivots = aug.rref();
        if pivots.len() < n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Self::from_fn(n, n, |i, j| aug[(i, n + j)].clone()))
    }

    /// Inertia `(positive, negative, zero)` of a symmetric matrix by
    /// congruence elimination. A zero diagonal with a nonzero off-diagonal
    /// entry is repaired by adding one row/column to another.
    pub fn inertia(&self) -> (usize, usize, usize) {
        let n = self.n();
        let scale = self.max_abs();
        let mut a = self.clone();
        let mut active: Vec<usize> = (0..n).collect();
        let (mut pos, mut neg) = (0, 0);
        while !active.is_empty() {
            let diag = active
                .iter()
                .copied()
                .filter(|&i| !S::negligible(&a[(i, i)], &scale))
                .max_by(|&i, &j| a[(i, i)].magnitude().partial_cmp(&a[(j, j)].magnitude()).unwrap());
            let pivot = match diag {
                Some(p) => p,
                None => {
                    let pair = active.iter().flat_map(|&i| active.iter().map(move |&j| (i, j))).find(
                        |&(i, j)| i != j && !S::negligible(&a[(i, j)], &scale),
                    );
                    let Some((i, j)) = pair else { break };
                    // e_i <- e_i + e_j gives a_ii = 2 a_ij
                    for k in 0..n {
                        let v = a[(i, k)].clone() + a[(j, k)].clone();
                        a[(i, k)] = v;
                    }
                    for k in 0..n {
                        let v = a[(k, i)].clone() + a[(k, j)].clone();
                        a[(k, i)] = v;
                    }
                    i
                }
            };
            let d = a[(pivot, pivot)].clone();
            if d > S::zero() {
                pos += 1;
            } else {
                neg += 1;
            }
            active.retain(|&i| i != pivot);
            for &r in &active {
                let f = a[(r, pivot)].clone() / d.clone();
                if f.is_zero() {
                    continue;
                }
                for &c in &active {
                    let v = a[(r, c)].clone() - f.clone() * a[(pivot, c)].clone();
                    a[(r, c)] = v;
                }
            }
        }
        (pos, neg, n - pos - neg)
    }
}

impl<S> Index<(usize, usize)> for Matrix<S> {
    type Output = S;

    fn index(&self, (i, j): (usize, usize)) -> &S {
        &self.data[i * self.cols + j]
    }
}

impl<S> IndexMut<(usize, usize)> for Matrix<S> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut S {
        &mut self.data[i * self.cols + j]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};

    fn m(rows: &[&[i64]]) -> Matrix<Rational> {
        Matrix::from_fn(rows.len(), rows[0].len(), |i, j| rat(rows[i][j], 1))
    }

    #[test]
    fn inverse_is_exact() {
        let a = m(&[&[2, 1], &[1, 1]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(m(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn nullspace_vectors_are_annihilated() {
        let a = m(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 1, 0]]);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 2);
        for v in ns {
            for i in 0..a.rows() {
                let s = (0..a.cols()).fold(rat(0, 1), |acc, j| acc + a[(i, j)].clone() * v[j].clone());
                assert_eq!(s, rat(0, 1));
            }
        }
    }

    #[test]
    fn inertia_of_split_forms() {
        assert_eq!(m(&[&[1, 0], &[0, -1]]).inertia(), (1, 1, 0));
        // hyperbolic plane: zero diagonal
        assert_eq!(m(&[&[0, 1], &[1, 0]]).inertia(), (1, 1, 0));
        assert_eq!(m(&[&[0, 1, 0, 0], &[1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, 1, 0]]).inertia(), (2, 2, 0));
        assert_eq!(m(&[&[1, 1], &[1, 1]]).inertia(), (1, 0, 1));
        assert_eq!(m(&[&[2, 1, 0], &[1, 2, 0], &[0, 0, -3]]).inertia(), (2, 1, 0));
    }

    #[test]
    fn float_inertia_agrees() {
        let a = Matrix::<f64>::from_fn(2, 2, |i, j| if i == j { 0.0 } else { 2.5 });
        assert_eq!(a.inertia(), (1, 1, 0));
    }
}
