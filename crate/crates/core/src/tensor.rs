//! Dense frame tensors.
//!
//! A [`FrameTensor`] of valence `(r, s)` stores `dim^(r+s)` entries in
//! row-major order, indexed as `(con_1, .., con_r, cov_1, .., cov_s)`. Axis
//! positions used by the operations below count contravariant axes first.
//! All indices are 0-based here; the file format and reports are 1-based.

use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::Matrix;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TensorError {
    #[error("axis {axis} out of range for a tensor of rank {rank}")]
    AxisOutOfRange { axis: usize, rank: usize },
    #[error("cannot contract a tensor of rank {rank}")]
    RankUnderflow { rank: usize },
    #[error("axes must be distinct (got {0} twice)")]
    RepeatedAxis(usize),
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },
    #[error("axes {a} and {b} have different variance")]
    VarianceMismatch { a: usize, b: usize },
    #[error("metric is degenerate")]
    DegenerateMetric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Up,
    Down,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameTensor<S> {
    dim: usize,
    con_rank: usize,
    cov_rank: usize,
    data: Vec<S>,
}

impl<S: Scalar> FrameTensor<S> {
    pub fn zeros(dim: usize, con_rank: usize, cov_rank: usize) -> Self {
        let len = dim.pow((con_rank + cov_rank) as u32);
        FrameTensor { dim, con_rank, cov_rank, data: vec![S::zero(); len] }
    }

    pub fn from_fn(
        dim: usize,
        con_rank: usize,
        cov_rank: usize,
        mut f: impl FnMut(&[usize]) -> S,
    ) -> Self {
        let rank = con_rank + cov_rank;
        let data = MultiIndex::new(dim, rank).map(|idx| f(&idx)).collect();
        FrameTensor { dim, con_rank, cov_rank, data }
    }

    pub fn from_vec(dim: usize, con_rank: usize, cov_rank: usize, data: Vec<S>) -> Self {
        assert_eq!(data.len(), dim.pow((con_rank + cov_rank) as u32), "entry count mismatch");
        FrameTensor { dim, con_rank, cov_rank, data }
    }

    pub fn scalar(value: S) -> Self {
        FrameTensor { dim: 1, con_rank: 0, cov_rank: 0, data: vec![value] }
    }

    /// The identity endomorphism as a (1,1) tensor.
    pub fn identity(dim: usize) -> Self {
        Self::from_fn(dim, 1, 1, |ix| if ix[0] == ix[1] { S::one() } else { S::zero() })
    }

    pub fn from_matrix_cov(m: &Matrix<S>) -> Self {
        Self::from_fn(m.n(), 0, 2, |ix| m[(ix[0], ix[1])].clone())
    }

    /// Reads a (1,1) tensor `T^i_j` into the matrix with row `i`, column `j`.
    pub fn to_matrix(&self) -> Matrix<S> {
        assert_eq!(self.rank(), 2);
        Matrix::from_fn(self.dim, self.dim, |i, j| self[[i, j]].clone())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn con_rank(&self) -> usize {
        self.con_rank
    }

    pub fn cov_rank(&self) -> usize {
        self.cov_rank
    }

    pub fn rank(&self) -> usize {
        self.con_rank + self.cov_rank
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    pub fn is_contravariant(&self, axis: usize) -> bool {
        axis < self.con_rank
    }

    fn offset(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let o = self.offset(idx);
        self.data[o] = value;
    }

    pub fn value(&self) -> &S {
        assert_eq!(self.rank(), 0, "not a scalar");
        &self.data[0]
    }

    /// Iterates over `(multi-index, entry)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, &S)> {
        MultiIndex::new(self.dim, self.rank()).zip(self.data.iter())
    }

    pub fn map(&self, f: impl Fn(&S) -> S) -> Self {
        FrameTensor { data: self.data.iter().map(f).collect(), ..self.shape_clone() }
    }

    fn shape_clone(&self) -> Self {
        FrameTensor { dim: self.dim, con_rank: self.con_rank, cov_rank: self.cov_rank, data: Vec::new() }
    }

    fn assert_same_shape(&self, other: &Self) {
        assert!(
            self.dim == other.dim && self.con_rank == other.con_rank && self.cov_rank == other.cov_rank,
            "shape mismatch: ({},{})@{} vs ({},{})@{}",
            self.con_rank,
            self.cov_rank,
            self.dim,
            other.con_rank,
            other.cov_rank,
            other.dim
        );
    }

    pub fn zip_with(&self, other: &Self, f: impl Fn(&S, &S) -> S) -> Self {
        self.assert_same_shape(other);
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect();
        FrameTensor { data, ..self.shape_clone() }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() + b.clone())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| a.clone() - b.clone())
    }

    pub fn scale(&self, k: &S) -> Self {
        self.map(|a| a.clone() * k.clone())
    }

    /// Largest entry magnitude; zero for an empty or zero tensor.
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

    pub fn max_abs_diff(&self, other: &Self) -> S {
        self.sub(other).max_abs()
    }

    pub fn is_zero_tensor(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn all_finite(&self) -> bool {
        self.data.iter().all(Scalar::is_finite_value)
    }

    fn check_axis(&self, axis: usize) -> Result<(), TensorError> {
        if axis >= self.rank() {
            Err(TensorError::AxisOutOfRange { axis, rank: self.rank() })
        } else {
            Ok(())
        }
    }

    /// Contracts two axes. Two covariant axes are contracted with `g^{ij}`,
    /// two contravariant ones with `g_ij`, a mixed pair is a plain trace.
    pub fn contract(&self, a: usize, b: usize, metric: &MetricPair<S>) -> Result<Self, TensorError> {
        if self.rank() < 2 {
            return Err(TensorError::RankUnderflow { rank: self.rank() });
        }
        self.check_axis(a)?;
        self.check_axis(b)?;
        if a == b {
            return Err(TensorError::RepeatedAxis(a));
        }
        if metric.dim() != self.dim {
            return Err(TensorError::DimensionMismatch { left: self.dim, right: metric.dim() });
        }
        let (a, b) = (a.min(b), a.max(b));
        let weight: Box<dyn Fn(usize, usize) -> S> =
            match (self.is_contravariant(a), self.is_contravariant(b)) {
                (false, false) => Box::new(|i, j| metric.g_inv[[i, j]].clone()),
                (true, true) => Box::new(|i, j| metric.g[[i, j]].clone()),
                _ => Box::new(|i, j| if i == j { S::one() } else { S::zero() }),
            };
        let con_removed = usize::from(self.is_contravariant(a)) + usize::from(self.is_contravariant(b));
        let con_rank = self.con_rank - con_removed;
        let cov_rank = self.cov_rank - (2 - con_removed);
        let dim = self.dim;
        let mut full = vec![0; self.rank()];
        let out = FrameTensor::from_fn(dim, con_rank, cov_rank, |rest| {
            let mut it = rest.iter();
            for (pos, slot) in full.iter_mut().enumerate() {
                if pos != a && pos != b {
                    *slot = *it.next().unwrap();
                }
            }
            let mut acc = S::zero();
            for i in 0..dim {
                for j in 0..dim {
                    let w = weight(i, j);
                    if w.is_zero() {
                        continue;
                    }
                    full[a] = i;
                    full[b] = j;
                    acc = acc + w * self.get(&full).clone();
                }
            }
            acc
        });
        Ok(out)
    }

    /// `t(x,y,z,..) + t(y,z,x,..) + t(z,x,y,..)` on the three given axes,
    /// listed in the order `(x, y, z)`; the other axes stay fixed.
    pub fn cyclic_sum(&self, axes: [usize; 3]) -> Result<Self, TensorError> {
        for &ax in &axes {
            self.check_axis(ax)?;
        }
        let [x, y, z] = axes;
        if x == y || y == z || x == z {
            let dup = if x == y || x == z { x } else { y };
            return Err(TensorError::RepeatedAxis(dup));
        }
        let mut shifted = vec![0; self.rank()];
        Ok(Self::from_fn(self.dim, self.con_rank, self.cov_rank, |idx| {
            let mut acc = S::zero();
            let (ix, iy, iz) = (idx[x], idx[y], idx[z]);
            for (px, py, pz) in [(ix, iy, iz), (iy, iz, ix), (iz, ix, iy)] {
                shifted.copy_from_slice(idx);
                shifted[x] = px;
                shifted[y] = py;
                shifted[z] = pz;
                acc = acc + self.get(&shifted).clone();
            }
            acc
        }))
    }

    /// Changes the variance of one axis with the metric. A lowered axis is
    /// appended after the existing covariant axes; a raised one is appended
    /// after the existing contravariant axes. Lowering `R^l_{ijk}` therefore
    /// yields `R_{ijkl} = g(R(e_i,e_j)e_k, e_l)`.
    pub fn raise_lower(&self, axis: usize, direction: Direction, metric: &MetricPair<S>) -> Result<Self, TensorError> {
        self.check_axis(axis)?;
        if metric.dim() != self.dim {
            return Err(TensorError::DimensionMismatch { left: self.dim, right: metric.dim() });
        }
        let dim = self.dim;
        let rank = self.rank();
        match direction {
            Direction::Down => {
                if !self.is_contravariant(axis) {
                    return Err(TensorError::VarianceMismatch { a: axis, b: axis });
                }
                // new order: other con axes, existing cov axes, then the lowered one
                let mut src = vec![0; rank];
                Ok(Self::from_fn(dim, self.con_rank - 1, self.cov_rank + 1, |idx| {
                    let lowered = idx[rank - 1];
                    let mut it = idx[..rank - 1].iter();
                    for (pos, slot) in src.iter_mut().enumerate() {
                        if pos != axis {
                            *slot = *it.next().unwrap();
                        }
                    }
                    let mut acc = S::zero();
                    for m in 0..dim {
                        let w = &metric.g[[m, lowered]];
                        if w.is_zero() {
                            continue;
                        }
                        src[axis] = m;
                        acc = acc + w.clone() * self.get(&src).clone();
                    }
                    acc
                }))
            }
            Direction::Up => {
                if self.is_contravariant(axis) {
                    return Err(TensorError::VarianceMismatch { a: axis, b: axis });
                }
                let new_con = self.con_rank + 1;
                let mut src = vec![0; rank];
                Ok(Self::from_fn(dim, new_con, self.cov_rank - 1, |idx| {
                    let raised = idx[new_con - 1];
                    let rest = idx[..new_con - 1].iter().chain(&idx[new_con..]);
                    let mut it = rest;
                    for (pos, slot) in src.iter_mut().enumerate() {
                        if pos != axis {
                            *slot = *it.next().unwrap();
                        }
                    }
                    let mut acc = S::zero();
                    for m in 0..dim {
                        let w = &metric.g_inv[[raised, m]];
                        if w.is_zero() {
                            continue;
                        }
                        src[axis] = m;
                        acc = acc + w.clone() * self.get(&src).clone();
                    }
                    acc
                }))
            }
        }
    }

    /// Feeds an endomorphism into a covariant slot:
    /// `t'(.., e_j, ..) = t(.., A e_j, ..) = A^m_j t(.., e_m, ..)`.
    pub fn compose_slot(&self, axis: usize, endo: &FrameTensor<S>) -> Result<Self, TensorError> {
        self.check_axis(axis)?;
        if self.is_contravariant(axis) {
            return Err(TensorError::VarianceMismatch { a: axis, b: axis });
        }
        if endo.dim != self.dim {
            return Err(TensorError::DimensionMismatch { left: self.dim, right: endo.dim });
        }
        let dim = self.dim;
        let mut src = vec![0; self.rank()];
        Ok(Self::from_fn(dim, self.con_rank, self.cov_rank, |idx| {
            src.copy_from_slice(idx);
            let mut acc = S::zero();
            for m in 0..dim {
                let w = &endo[[m, idx[axis]]];
                if w.is_zero() {
                    continue;
                }
                src[axis] = m;
                acc = acc + w.clone() * self.get(&src).clone();
            }
            acc
        }))
    }

    /// Exchanges two axes of equal variance.
    pub fn swap_axes(&self, a: usize, b: usize) -> Result<Self, TensorError> {
        self.check_axis(a)?;
        self.check_axis(b)?;
        if self.is_contravariant(a) != self.is_contravariant(b) {
            return Err(TensorError::VarianceMismatch { a, b });
        }
        let mut src = vec![0; self.rank()];
        Ok(Self::from_fn(self.dim, self.con_rank, self.cov_rank, |idx| {
            src.copy_from_slice(idx);
            src.swap(a, b);
            self.get(&src).clone()
        }))
    }

    /// Outer product; contravariant axes of `self` then `other`, likewise
    /// for covariant axes.
    pub fn outer(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let (c1, c2) = (self.con_rank, other.con_rank);
        let r1 = self.rank();
        let mut left = vec![0; r1];
        let mut right = vec![0; other.rank()];
        Self::from_fn(self.dim, c1 + c2, self.cov_rank + other.cov_rank, |idx| {
            left[..c1].copy_from_slice(&idx[..c1]);
            right[..c2].copy_from_slice(&idx[c1..c1 + c2]);
            left[c1..].copy_from_slice(&idx[c1 + c2..c1 + c2 + self.cov_rank]);
            right[c2..].copy_from_slice(&idx[c1 + c2 + self.cov_rank..]);
            self.get(&left).clone() * other.get(&right).clone()
        })
    }

    pub fn convert<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FrameTensor<T> {
        FrameTensor {
            dim: self.dim,
            con_rank: self.con_rank,
            cov_rank: self.cov_rank,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<S: Scalar, const N: usize> std::ops::Index<[usize; N]> for FrameTensor<S> {
    type Output = S;

    fn index(&self, idx: [usize; N]) -> &S {
        self.get(&idx)
    }
}

/// Row-major enumeration of all multi-indices in `0..dim` of a given length.
#[derive(Debug, Clone)]
pub struct MultiIndex {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndex {
    pub fn new(dim: usize, len: usize) -> Self {
        let current = if dim == 0 && len > 0 { None } else { Some(vec![0; len]) };
        MultiIndex { dim, current }
    }
}

impl Iterator for MultiIndex {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().unwrap();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            cur[pos] += 1;
            if cur[pos] < self.dim {
                break;
            }
            cur[pos] = 0;
        }
        Some(out)
    }
}

/// The metric `g`, its inverse, and once `J` is known the associated
/// metric `g~(x, y) = g(x, Jy)`.
#[derive(Debug, Clone, PartialEq)]
pub struct MetricPair<S> {
    pub g: FrameTensor<S>,
    pub g_inv: FrameTensor<S>,
    pub g_tilde: Option<FrameTensor<S>>,
}

impl<S: Scalar> MetricPair<S> {
    pub fn new(g: FrameTensor<S>) -> Result<Self, TensorError> {
        assert_eq!((g.con_rank(), g.cov_rank()), (0, 2), "metric must be a (0,2) tensor");
        let m = Matrix::from_fn(g.dim(), g.dim(), |i, j| g[[i, j]].clone());
        let inv = m.inverse().ok_or(TensorError::DegenerateMetric)?;
        let g_inv = FrameTensor::from_fn(g.dim(), 2, 0, |ix| inv[(ix[0], ix[1])].clone());
        Ok(MetricPair { g, g_inv, g_tilde: None })
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn with_structure(mut self, j: &FrameTensor<S>) -> Self {
        let dim = self.dim();
        let g = &self.g;
        self.g_tilde = Some(FrameTensor::from_fn(dim, 0, 2, |ix| {
            (0..dim).fold(S::zero(), |acc, k| acc + g[[ix[0], k]].clone() * j[[k, ix[1]]].clone())
        }));
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};
    use num::Zero;

    fn split_metric() -> MetricPair<Rational> {
        let g = FrameTensor::from_fn(4, 0, 2, |ix| {
            if ix[0] != ix[1] {
                Rational::zero()
            } else if ix[0] < 2 {
                rat(1, 1)
            } else {
                rat(-1, 1)
            }
        });
        MetricPair::new(g).unwrap()
    }

    /// Deterministic small rationals, no RNG needed.
    fn pseudo(dim: usize, con: usize, cov: usize, salt: i64) -> FrameTensor<Rational> {
        let mut k = salt;
        FrameTensor::from_fn(dim, con, cov, |_| {
            k = (k * 37 + 11) % 23;
            rat(k - 11, 1 + (k % 3))
        })
    }

    #[test]
    fn trace_of_identity() {
        let id = FrameTensor::<Rational>::identity(4);
        let t = id.contract(0, 1, &split_metric()).unwrap();
        assert_eq!(*t.value(), rat(4, 1));
    }

    #[test]
    fn metric_trace_is_dimension() {
        let m = split_metric();
        let t = m.g.contract(0, 1, &m).unwrap();
        assert_eq!(*t.value(), rat(4, 1));
    }

    #[test]
    fn contraction_matches_triple_loop() {
        let m = split_metric();
        let t = pseudo(4, 0, 3, 3);
        let c = t.contract(1, 2, &m).unwrap();
        for x in 0..4 {
            let mut acc = Rational::zero();
            for i in 0..4 {
                for j in 0..4 {
                    acc += m.g_inv[[i, j]].clone() * t[[x, i, j]].clone();
                }
            }
            assert_eq!(c[[x]], acc);
        }
    }

    #[test]
    fn contraction_errors() {
        let m = split_metric();
        let t = pseudo(4, 0, 3, 1);
        assert_eq!(t.contract(1, 1, &m), Err(TensorError::RepeatedAxis(1)));
        assert_eq!(t.contract(0, 3, &m), Err(TensorError::AxisOutOfRange { axis: 3, rank: 3 }));
        let v = pseudo(4, 0, 1, 1);
        assert_eq!(v.contract(0, 1, &m), Err(TensorError::RankUnderflow { rank: 1 }));
    }

    #[test]
    fn cyclic_sum_of_symmetric_tensor_triples_it() {
        let v = pseudo(4, 0, 1, 5);
        let sym = FrameTensor::from_fn(4, 0, 3, |ix| {
            v[[ix[0]]].clone() * v[[ix[1]]].clone() * v[[ix[2]]].clone()
        });
        let s = sym.cyclic_sum([0, 1, 2]).unwrap();
        assert_eq!(s, sym.scale(&rat(3, 1)));
    }

    #[test]
    fn cyclic_sum_of_alternating_fixture_vanishes() {
        // A(x,y,z) = f(x,y) - f(y,z) telescopes under the cyclic sum.
        let a = pseudo(4, 0, 1, 2);
        let b = pseudo(4, 0, 1, 7);
        let f = FrameTensor::from_fn(4, 0, 2, |ix| a[[ix[0]]].clone() * b[[ix[1]]].clone());
        let t = FrameTensor::from_fn(4, 0, 3, |ix| f[[ix[0], ix[1]]].clone() - f[[ix[1], ix[2]]].clone());
        let s = t.cyclic_sum([0, 1, 2]).unwrap();
        for (idx, val) in s.iter() {
            let (x, y, z) = (idx[0], idx[1], idx[2]);
            let direct = t[[x, y, z]].clone() + t[[y, z, x]].clone() + t[[z, x, y]].clone();
            assert_eq!(*val, direct);
            assert!(val.is_zero());
        }
    }

    #[test]
    fn cyclic_sum_matches_naive_on_rank_four() {
        let t = pseudo(4, 0, 4, 9);
        let s = t.cyclic_sum([0, 1, 2]).unwrap();
        for (idx, val) in s.iter() {
            let (x, y, z, w) = (idx[0], idx[1], idx[2], idx[3]);
            let naive = t[[x, y, z, w]].clone() + t[[y, z, x, w]].clone() + t[[z, x, y, w]].clone();
            assert_eq!(*val, naive);
        }
        assert!(t.cyclic_sum([0, 0, 1]).is_err());
    }

    #[test]
    fn lower_then_raise_round_trips() {
        let m = split_metric();
        let t = pseudo(4, 1, 3, 4);
        let low = t.raise_lower(0, Direction::Down, &m).unwrap();
        assert_eq!((low.con_rank(), low.cov_rank()), (0, 4));
        let back = low.raise_lower(3, Direction::Up, &m).unwrap();
        assert_eq!(back, t);
    }

    #[test]
    fn lowering_identity_gives_metric() {
        let m = split_metric();
        let id = FrameTensor::identity(4);
        assert_eq!(id.raise_lower(0, Direction::Down, &m).unwrap(), m.g);
    }

    #[test]
    fn raising_metric_gives_identity() {
        let m = split_metric();
        let up = m.g.raise_lower(0, Direction::Up, &m).unwrap();
        assert_eq!(up, FrameTensor::identity(4));
    }

    #[test]
    fn multi_index_enumerates_row_major() {
        let all: Vec<_> = MultiIndex::new(2, 2).collect();
        assert_eq!(all, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert_eq!(MultiIndex::new(3, 0).count(), 1);
    }
}
