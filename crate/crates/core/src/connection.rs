//! The Levi-Civita connection, the fundamental tensor `F`, the classes W0
//! and W3, the B-connection `D`, the tensor `Q` and the torsion of `D`.
//!
//! All structure tensors are left-invariant, so covariant derivatives reduce
//! to the connection coefficients: `(∇_x J)y = ∇_x(Jy) - J ∇_x y` with no
//! directional-derivative term.

use thiserror::Error;

use crate::field::Scalar;
use crate::linalg::Matrix;
use crate::report::Residual;
use crate::structure::NordenStructure;
use crate::tensor::{Direction, FrameTensor};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Flavor {
    LeviCivita,
    BConnection,
    Generic,
}

/// `Γ^k_{ij}` stored at `[k, i, j]`, meaning `∇_{e_i} e_j = Γ^k_{ij} e_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct ConnectionCoeffs<S> {
    pub gamma: FrameTensor<S>,
    pub flavor: Flavor,
}

impl<S: Scalar> ConnectionCoeffs<S> {
    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// The endomorphism `v -> ∇_{e_i} v` on left-invariant fields.
    pub fn operator(&self, i: usize) -> Matrix<S> {
        let n = self.dim();
        Matrix::from_fn(n, n, |k, j| self.gamma[[k, i, j]].clone())
    }

    /// `g(∇_{e_i} e_j, e_k)` at `[i, j, k]`.
    pub fn lowered(&self, s: &NordenStructure<S>) -> FrameTensor<S> {
        self.gamma.raise_lower(0, Direction::Down, &s.metric).expect("(1,2) connection tensor")
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConnectionError {
    #[error("NaturalityViolation: Dg residual {dg}, DJ residual {dj}")]
    NaturalityViolation { dg: String, dj: String },
}

/// Levi-Civita connection from the Koszul formula for left-invariant fields:
/// `2 g(∇_x y, z) = g([x,y],z) - g([y,z],x) + g([z,x],y)`.
///
/// The structure has already been validated, so `g` is invertible.
pub fn levi_civita<S: Scalar>(s: &NordenStructure<S>) -> ConnectionCoeffs<S> {
    let n = s.dim();
    // bracket lowered: [i, j, l] = g([e_i, e_j], e_l)
    let bracket = s.frame.constants.raise_lower(0, Direction::Down, &s.metric).expect("(1,2) constants");
    let half = S::half();
    let lowered = FrameTensor::from_fn(n, 0, 3, |ix| {
        let (i, j, l) = (ix[0], ix[1], ix[2]);
        half.clone() * (bracket[[i, j, l]].clone() - bracket[[j, l, i]].clone() + bracket[[l, i, j]].clone())
    });
    let gamma = lowered.raise_lower(2, Direction::Up, &s.metric).expect("(0,3) tensor");
    ConnectionCoeffs { gamma, flavor: Flavor::LeviCivita }
}

/// `max |g(∇_i e_j, e_k) + g(e_j, ∇_i e_k)|`, zero iff the connection is metric.
pub fn metric_residual<S: Scalar>(s: &NordenStructure<S>, conn: &ConnectionCoeffs<S>) -> Residual<S> {
    let low = conn.lowered(s);
    let sym = low.add(&low.swap_axes(1, 2).expect("covariant axes"));
    Residual::of_tensor(&sym, &[&low])
}

/// `max |Γ^k_{ij} - Γ^k_{ji} - C^k_{ij}|`, the torsion of the connection.
pub fn torsion_residual<S: Scalar>(s: &NordenStructure<S>, conn: &ConnectionCoeffs<S>) -> Residual<S> {
    let t = torsion_tensor(s, conn);
    Residual::of_tensor(&t, &[&conn.gamma, &s.frame.constants])
}

/// `T^k_{ij} = Γ^k_{ij} - Γ^k_{ji} - C^k_{ij}` at `[k, i, j]`.
fn torsion_tensor<S: Scalar>(s: &NordenStructure<S>, conn: &ConnectionCoeffs<S>) -> FrameTensor<S> {
    let swapped = conn.gamma.swap_axes(1, 2).expect("covariant axes");
    conn.gamma.sub(&swapped).sub(&s.frame.constants)
}

/// `(∇_{e_i} A) e_j` for an endomorphism `A`, stored `[c, i, j]`:
/// `Γ^c_{ia} A^a_j - A^c_b Γ^b_{ij}`.
pub fn derivative_of_endo<S: Scalar>(conn: &ConnectionCoeffs<S>, a: &FrameTensor<S>) -> FrameTensor<S> {
    let n = conn.dim();
    let am = a.to_matrix();
    let mut out = FrameTensor::zeros(n, 1, 2);
    for i in 0..n {
        let op = conn.operator(i);
        let d = op.mul(&am).sub(&am.mul(&op));
        for c in 0..n {
            for j in 0..n {
                out.set(&[c, i, j], d[(c, j)].clone());
            }
        }
    }
    out
}

/// `F(x, y, z) = g((∇_x J) y, z)`, stored `[x, y, z]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FundamentalTensor<S> {
    pub f: FrameTensor<S>,
    /// `(∇_{e_i} J) e_j` at `[c, i, j]`; `F` is this with `c` lowered.
    pub nabla_j: FrameTensor<S>,
}

pub fn fundamental_tensor<S: Scalar>(s: &NordenStructure<S>, nabla: &ConnectionCoeffs<S>) -> FundamentalTensor<S> {
    debug_assert_eq!(nabla.flavor, Flavor::LeviCivita);
    let nabla_j = derivative_of_endo(nabla, &s.j);
    let f = nabla_j.raise_lower(0, Direction::Down, &s.metric).expect("(1,2) tensor");
    FundamentalTensor { f, nabla_j }
}

/// Residuals of `F(x,y,z) = F(x,z,y)` and `F(x,y,z) = F(x,Jy,Jz)`.
pub fn f_symmetry_residuals<S: Scalar>(s: &NordenStructure<S>, f: &FundamentalTensor<S>) -> (Residual<S>, Residual<S>) {
    let swapped = f.f.swap_axes(1, 2).expect("covariant axes");
    let jj = f.f.compose_slot(1, &s.j).and_then(|t| t.compose_slot(2, &s.j)).expect("covariant axes");
    (Residual::between(&f.f, &swapped), Residual::between(&f.f, &jj))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassFlags<S> {
    pub is_w0: bool,
    pub is_w3: bool,
    /// `max |F|`.
    pub w0_residual: Residual<S>,
    /// `max |S_{x,y,z} F(x,y,z)|`.
    pub w3_residual: Residual<S>,
}

pub fn classify<S: Scalar>(s: &NordenStructure<S>, nabla: &ConnectionCoeffs<S>, f: &FundamentalTensor<S>) -> ClassFlags<S> {
    // F is built from Γ, J and g; its natural size is the product of theirs
    let scale = nabla.gamma.max_abs() * s.j.max_abs() * s.g().max_abs();
    let w0_residual = Residual::new(f.f.max_abs(), scale);
    let cyc = f.f.cyclic_sum([0, 1, 2]).expect("rank 3");
    let w3_residual = Residual::of_tensor(&cyc, &[&f.f]);
    ClassFlags { is_w0: w0_residual.vanishes(), is_w3: w3_residual.vanishes(), w0_residual, w3_residual }
}

/// `D_x y = ∇_x y + 1/2 (∇_x J) J y` without the naturality assertion.
pub fn b_connection_unchecked<S: Scalar>(s: &NordenStructure<S>, nabla: &ConnectionCoeffs<S>) -> ConnectionCoeffs<S> {
    let nabla_j = derivative_of_endo(nabla, &s.j);
    let correction = nabla_j.compose_slot(2, &s.j).expect("covariant axis").scale(&S::half());
    ConnectionCoeffs { gamma: nabla.gamma.add(&correction), flavor: Flavor::BConnection }
}

/// `(Dg, DJ)` residuals; both vanish for a natural connection.
pub fn naturality_residuals<S: Scalar>(s: &NordenStructure<S>, d: &ConnectionCoeffs<S>) -> (Residual<S>, Residual<S>) {
    let dg = metric_residual(s, d);
    let dj_t = derivative_of_endo(d, &s.j);
    let dj = Residual::of_tensor(&dj_t, &[&d.gamma]);
    (dg, dj)
}

/// The B-connection, with `Dg = DJ = 0` asserted.
pub fn b_connection<S: Scalar>(
    s: &NordenStructure<S>,
    nabla: &ConnectionCoeffs<S>,
) -> Result<ConnectionCoeffs<S>, ConnectionError> {
    let d = b_connection_unchecked(s, nabla);
    let (dg, dj) = naturality_residuals(s, &d);
    if dg.vanishes() && dj.vanishes() {
        Ok(d)
    } else {
        Err(ConnectionError::NaturalityViolation { dg: dg.value.render(), dj: dj.value.render() })
    }
}

/// `Q(y, z, w) = 1/2 F(y, Jz, w)`.
pub fn q_tensor<S: Scalar>(s: &NordenStructure<S>, f: &FundamentalTensor<S>) -> FrameTensor<S> {
    f.f.compose_slot(1, &s.j).expect("covariant axis").scale(&S::half())
}

/// `Q(y, z, w) = 1/2 g((∇_y J) J z, w)` evaluated from the connection
/// operators: `(∇_y J) J z = -∇_y z - J ∇_y (J z)`.
pub fn q_tensor_from_connection<S: Scalar>(s: &NordenStructure<S>, nabla: &ConnectionCoeffs<S>) -> FrameTensor<S> {
    let n = s.dim();
    let jm = s.j.to_matrix();
    let mut q_up = FrameTensor::zeros(n, 1, 2);
    for y in 0..n {
        let a = nabla.operator(y);
        let m = a.add(&jm.mul(&a).mul(&jm)).scale(&-S::half());
        for c in 0..n {
            for z in 0..n {
                q_up.set(&[c, y, z], m[(c, z)].clone());
            }
        }
    }
    q_up.raise_lower(0, Direction::Down, &s.metric).expect("(1,2) tensor")
}

/// `max |Q(y,z,w) + Q(y,w,z)|`.
pub fn q_antisymmetry_residual<S: Scalar>(q: &FrameTensor<S>) -> Residual<S> {
    let sum = q.add(&q.swap_axes(1, 2).expect("covariant axes"));
    Residual::of_tensor(&sum, &[q])
}

/// `T(x, y, z) = g(D_x y - D_y x - [x, y], z)`, stored `[x, y, z]`.
pub fn torsion<S: Scalar>(s: &NordenStructure<S>, d: &ConnectionCoeffs<S>) -> FrameTensor<S> {
    torsion_tensor(s, d).raise_lower(0, Direction::Down, &s.metric).expect("(1,2) tensor")
}

/// Residual of `T(x, y, Jz) = 1/2 (F(x,y,z) - F(y,x,z))`.
pub fn torsion_f_residual<S: Scalar>(s: &NordenStructure<S>, t: &FrameTensor<S>, f: &FundamentalTensor<S>) -> Residual<S> {
    let lhs = t.compose_slot(2, &s.j).expect("covariant axis");
    let rhs = f.f.sub(&f.f.swap_axes(0, 1).expect("covariant axes")).scale(&S::half());
    Residual::between(&lhs, &rhs)
}

/// `max |S_{x,y,z} T(x, y, Jz)|`.
pub fn torsion_cyclic_residual<S: Scalar>(t: &FrameTensor<S>, j: &FrameTensor<S>) -> Residual<S> {
    let tj = t.compose_slot(2, j).expect("covariant axis");
    let cyc = tj.cyclic_sum([0, 1, 2]).expect("rank 3");
    Residual::of_tensor(&cyc, &[&tj])
}
