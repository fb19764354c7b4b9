//! Curvature of `∇` and `D`, the tensors `P` and `H`, and the curvature
//! identities and theorems built on them.
//!
//! Every (0,4) curvature tensor uses the slot order `L(x, y, z, w)` with
//! `R(x, y, z, w) = g(R(x, y) z, w)` and
//! `R(x, y) = ∇_x ∇_y - ∇_y ∇_x - ∇_{[x, y]}`.
//! Pair symmetry `L(x,y,z,w) = L(z,w,x,y)` is never assumed.

use crate::connection::{ConnectionCoeffs, FundamentalTensor};
use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::report::{Biconditional, Residual};
use crate::structure::{LieFrameSpec, NordenStructure};
use crate::tensor::{Direction, FrameTensor, MetricPair};

/// Curvature of a connection on left-invariant fields, as a (0,4) tensor.
///
/// With `A_i = ∇_{e_i}` as a matrix, `R(e_i, e_j) = [A_i, A_j] - C^m_{ij} A_m`.
pub fn curvature_of<S: Scalar>(conn: &ConnectionCoeffs<S>, frame: &LieFrameSpec<S>, metric: &MetricPair<S>) -> FrameTensor<S> {
    let n = conn.dim();
    let ops: Vec<Matrix<S>> = (0..n).map(|i| conn.operator(i)).collect();
    // [l, i, j, k] = R^l_{ijk}
    let mut up = FrameTensor::zeros(n, 1, 3);
    for i in 0..n {
        for j in 0..n {
            let mut r = ops[i].commutator(&ops[j]);
            for (m, op) in ops.iter().enumerate() {
                let c = frame.c(m, i, j);
                if !c.is_zero() {
                    r = r.sub(&op.scale(c));
                }
            }
            for l in 0..n {
                for k in 0..n {
                    up.set(&[l, i, j, k], r[(l, k)].clone());
                }
            }
        }
    }
    up.raise_lower(0, Direction::Down, metric).expect("(1,3) tensor")
}

/// Covariant derivative of a left-invariant (0,s) tensor; the direction is
/// the new first slot:
/// `(∇_{e_i} t)(e_{j1}, ..) = - Σ_slots t(.., ∇_{e_i} e_{j_slot}, ..)`.
pub fn covariant_derivative<S: Scalar>(conn: &ConnectionCoeffs<S>, t: &FrameTensor<S>) -> FrameTensor<S> {
    assert_eq!(t.con_rank(), 0, "covariant tensors only");
    let n = conn.dim();
    let s = t.cov_rank();
    let mut src = vec![0; s];
    FrameTensor::from_fn(n, 0, s + 1, |ix| {
        let i = ix[0];
        let args = &ix[1..];
        let mut acc = S::zero();
        for slot in 0..s {
            src.copy_from_slice(args);
            for m in 0..n {
                let gamma = &conn.gamma[[m, i, args[slot]]];
                if gamma.is_zero() {
                    continue;
                }
                src[slot] = m;
                acc = acc - gamma.clone() * t.get(&src).clone();
            }
        }
        acc
    })
}

/// `(∇_x F)(y, z, w)` at `[x, y, z, w]`.
pub fn nabla_f<S: Scalar>(nabla: &ConnectionCoeffs<S>, f: &FundamentalTensor<S>) -> FrameTensor<S> {
    covariant_derivative(nabla, &f.f)
}

/// `L(x, y, Jz, Jw)`.
pub fn twist_last_pair<S: Scalar>(l: &FrameTensor<S>, j: &FrameTensor<S>) -> FrameTensor<S> {
    l.compose_slot(2, j).and_then(|t| t.compose_slot(3, j)).expect("(0,4) tensor")
}

/// Residual of `(∇_x F)(y,z,w) - (∇_y F)(x,z,w) = R(x,y,Jz,w) - R(x,y,z,Jw)`.
pub fn ricci_identity_residual<S: Scalar>(nabla_f: &FrameTensor<S>, r: &FrameTensor<S>, j: &FrameTensor<S>) -> Residual<S> {
    let lhs = nabla_f.sub(&nabla_f.swap_axes(0, 1).expect("covariant axes"));
    let rhs = r.compose_slot(2, j).expect("axis").sub(&r.compose_slot(3, j).expect("axis"));
    Residual::between(&lhs, &rhs)
}

/// `g((∇_x J) z, (∇_y J) w)` stored at `[x, z, y, w]`.
pub fn nabla_j_gram<S: Scalar>(f: &FundamentalTensor<S>) -> FrameTensor<S> {
    let n = f.f.dim();
    FrameTensor::from_fn(n, 0, 4, |ix| {
        let (x, z, y, w) = (ix[0], ix[1], ix[2], ix[3]);
        (0..n).fold(S::zero(), |acc, b| acc + f.f[[x, z, b]].clone() * f.nabla_j[[b, y, w]].clone())
    })
}

/// `P(x,y,z,w) = g((∇_x J)z, (∇_y J)w) - g((∇_y J)z, (∇_x J)w)`.
pub fn p_tensor<S: Scalar>(f: &FundamentalTensor<S>) -> FrameTensor<S> {
    let gram = nabla_j_gram(f);
    let n = f.f.dim();
    FrameTensor::from_fn(n, 0, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        gram[[x, z, y, w]].clone() - gram[[y, z, x, w]].clone()
    })
}

/// `K = 1/4 {2R(x,y,z,w) - 2R(x,y,Jz,Jw) + P(x,y,z,w)}`.
pub fn k_via_formula<S: Scalar>(r: &FrameTensor<S>, p: &FrameTensor<S>, j: &FrameTensor<S>) -> FrameTensor<S> {
    let two = S::from_i64(2);
    let quarter = S::one() / S::from_i64(4);
    r.scale(&two).sub(&twist_last_pair(r, j).scale(&two)).add(p).scale(&quarter)
}

/// `H(x,y,z,w) = R(x,y,z,w) - R(x,y,Jz,Jw)`.
pub fn h_tensor<S: Scalar>(r: &FrameTensor<S>, j: &FrameTensor<S>) -> FrameTensor<S> {
    r.sub(&twist_last_pair(r, j))
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureLike<S> {
    /// Worst of `L + L(y,x,..)` and `L + L(..,w,z)`.
    pub antisym: Residual<S>,
    /// First Bianchi identity over the first three slots.
    pub bianchi: Residual<S>,
}

impl<S: Scalar> CurvatureLike<S> {
    pub fn holds(&self) -> bool {
        self.antisym.vanishes() && self.bianchi.vanishes()
    }
}

pub fn curvature_like_check<S: Scalar>(l: &FrameTensor<S>) -> CurvatureLike<S> {
    let first = l.add(&l.swap_axes(0, 1).expect("axes"));
    let second = l.add(&l.swap_axes(2, 3).expect("axes"));
    let antisym = Residual::of_tensor(&first, &[l]).max(Residual::of_tensor(&second, &[l]));
    CurvatureLike { antisym, bianchi: bianchi_residual(l) }
}

pub fn bianchi_residual<S: Scalar>(l: &FrameTensor<S>) -> Residual<S> {
    let cyc = l.cyclic_sum([0, 1, 2]).expect("(0,4) tensor");
    Residual::of_tensor(&cyc, &[l])
}

/// `max |L(x,y,Jz,Jw) + L(x,y,z,w)|`.
pub fn kahler_check<S: Scalar>(l: &FrameTensor<S>, j: &FrameTensor<S>) -> Residual<S> {
    let tw = twist_last_pair(l, j);
    Residual::of_tensor(&tw.add(l), &[l, &tw])
}

/// Whether `L` is a Kähler tensor: curvature-like and `J`-invariant in the
/// last pair up to sign.
pub fn is_kahler_tensor<S: Scalar>(l: &FrameTensor<S>, j: &FrameTensor<S>) -> bool {
    curvature_like_check(l).holds() && kahler_check(l, j).vanishes()
}

/// Residual of `S_{x,y,z} R(x,y,Jz,Jw) = 0`.
pub fn l2_check<S: Scalar>(r: &FrameTensor<S>, j: &FrameTensor<S>) -> Residual<S> {
    let tw = twist_last_pair(r, j);
    let cyc = tw.cyclic_sum([0, 1, 2]).expect("(0,4) tensor");
    Residual::of_tensor(&cyc, &[&tw])
}

/// Both sides of the Kähler criterion for `K`: `left` is the Bianchi
/// residual of `K`, `right` the residual of
/// `2 S R(x,y,Jz,Jw) = S P(x,y,z,w)`.
pub fn k_kahler_criterion<S: Scalar>(
    r: &FrameTensor<S>,
    p: &FrameTensor<S>,
    j: &FrameTensor<S>,
    k_direct: &FrameTensor<S>,
) -> Biconditional<S> {
    let lhs = twist_last_pair(r, j).cyclic_sum([0, 1, 2]).expect("rank 4").scale(&S::from_i64(2));
    let rhs = p.cyclic_sum([0, 1, 2]).expect("rank 4");
    Biconditional::new(bianchi_residual(k_direct), Residual::between(&lhs, &rhs))
}

/// Bianchi residuals of `K` and `P`; on W3 ∩ L2 they vanish together.
pub fn p_kahler_criterion<S: Scalar>(p: &FrameTensor<S>, k_direct: &FrameTensor<S>) -> Biconditional<S> {
    Biconditional::new(bianchi_residual(k_direct), bianchi_residual(p))
}

/// Every curvature tensor computed for one structure.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvatureBundle<S> {
    pub r: FrameTensor<S>,
    pub k_direct: FrameTensor<S>,
    pub k_formula: FrameTensor<S>,
    pub p: FrameTensor<S>,
    pub h: FrameTensor<S>,
    pub nabla_f: FrameTensor<S>,
}

impl<S: Scalar> CurvatureBundle<S> {
    pub fn compute(
        s: &NordenStructure<S>,
        nabla: &ConnectionCoeffs<S>,
        d: &ConnectionCoeffs<S>,
        f: &FundamentalTensor<S>,
    ) -> Self {
        let r = curvature_of(nabla, &s.frame, &s.metric);
        let k_direct = curvature_of(d, &s.frame, &s.metric);
        let p = p_tensor(f);
        let k_formula = k_via_formula(&r, &p, &s.j);
        let h = h_tensor(&r, &s.j);
        let nabla_f = nabla_f(nabla, f);
        CurvatureBundle { r, k_direct, k_formula, p, h, nabla_f }
    }
}
