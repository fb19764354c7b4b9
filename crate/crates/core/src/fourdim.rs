//! The invariant basis `π1, π2, π3` and the decomposition of Kähler
//! tensors in dimension 4.
//!
//! ```text
//! π1(x,y,z,w) = g(y,z)g(x,w) - g(x,z)g(y,w)
//! π2(x,y,z,w) = g(y,Jz)g(x,Jw) - g(x,Jz)g(y,Jw)
//! π3(x,y,z,w) = -g(y,z)g(x,Jw) + g(x,z)g(y,Jw) - g(y,Jz)g(x,w) + g(x,Jz)g(y,w)
//! ```
//!
//! A Kähler tensor `L` in dimension 4 is `ν(π1 - π2) + ν* π3` with
//! `ν = τ(L)/8` and `ν* = τ*(L)/8`. The divisor 8 is `τ(π1 - π2)` and
//! `τ*(π3)`; the cross traces `τ*(π1 - π2)` and `τ(π3)` vanish.

use thiserror::Error;

use crate::curvature::{curvature_like_check, kahler_check, CurvatureBundle};
use crate::field::Scalar;
use crate::report::Residual;
use crate::scalars::{ricci_and_scalar, ScalarReport};
use crate::structure::{associated_metric, NordenStructure};
use crate::tensor::FrameTensor;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FourDimError {
    #[error("DimensionNotFour: the decomposition needs dimension 4, got {0}")]
    DimensionNotFour(usize),
    #[error("NotKahlerTensor: input fails the {0} check")]
    NotKahlerTensor(&'static str),
}

#[derive(Debug, Clone, PartialEq)]
pub struct PiBasis<S> {
    pub pi1: FrameTensor<S>,
    pub pi2: FrameTensor<S>,
    pub pi3: FrameTensor<S>,
    /// False when built outside dimension 4, where the decomposition does
    /// not apply.
    pub decomposition_valid: bool,
}

impl<S: Scalar> PiBasis<S> {
    pub fn pi1_minus_pi2(&self) -> FrameTensor<S> {
        self.pi1.sub(&self.pi2)
    }

    /// `a (π1 - π2) + b π3`.
    pub fn combine(&self, a: &S, b: &S) -> FrameTensor<S> {
        self.pi1_minus_pi2().scale(a).add(&self.pi3.scale(b))
    }
}

pub fn build_pi<S: Scalar>(s: &NordenStructure<S>) -> PiBasis<S> {
    let n = s.dim();
    let g = s.g();
    let gj = associated_metric(s); // gj[a, b] = g(e_a, J e_b)
    let pi1 = FrameTensor::from_fn(n, 0, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        g[[y, z]].clone() * g[[x, w]].clone() - g[[x, z]].clone() * g[[y, w]].clone()
    });
    let pi2 = FrameTensor::from_fn(n, 0, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        gj[[y, z]].clone() * gj[[x, w]].clone() - gj[[x, z]].clone() * gj[[y, w]].clone()
    });
    let pi3 = FrameTensor::from_fn(n, 0, 4, |ix| {
        let (x, y, z, w) = (ix[0], ix[1], ix[2], ix[3]);
        -(g[[y, z]].clone() * gj[[x, w]].clone()) + g[[x, z]].clone() * gj[[y, w]].clone()
            - gj[[y, z]].clone() * g[[x, w]].clone()
            + gj[[x, z]].clone() * g[[y, w]].clone()
    });
    PiBasis { pi1, pi2, pi3, decomposition_valid: n == 4 }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<S> {
    pub nu: S,
    pub nu_star: S,
    /// `max |L - ν(π1 - π2) - ν* π3|`.
    pub residual: Residual<S>,
}

pub fn decompose_kahler<S: Scalar>(
    l: &FrameTensor<S>,
    s: &NordenStructure<S>,
    pi: &PiBasis<S>,
) -> Result<Decomposition<S>, FourDimError> {
    if s.dim() != 4 {
        return Err(FourDimError::DimensionNotFour(s.dim()));
    }
    let cl = curvature_like_check(l);
    if !cl.antisym.vanishes() {
        return Err(FourDimError::NotKahlerTensor("antisymmetry"));
    }
    if !cl.bianchi.vanishes() {
        return Err(FourDimError::NotKahlerTensor("first Bianchi"));
    }
    if !kahler_check(l, &s.j).vanishes() {
        return Err(FourDimError::NotKahlerTensor("J-invariance"));
    }
    let traces = ricci_and_scalar(l, &s.metric, &s.j);
    let eight = S::from_i64(8);
    let nu = traces.tau / eight.clone();
    let nu_star = traces.tau_star / eight;
    let model = pi.combine(&nu, &nu_star);
    let residual = Residual::between(l, &model);
    Ok(Decomposition { nu, nu_star, residual })
}

/// `H` against `(4τ(K) - τ(P))/16 (π1 - π2) + (4τ*(K) - τ*(P))/16 π3`.
pub fn h_form_residual<S: Scalar>(bundle: &CurvatureBundle<S>, sc: &ScalarReport<S>, pi: &PiBasis<S>) -> Residual<S> {
    let four = S::from_i64(4);
    let sixteen = S::from_i64(16);
    let a = (four.clone() * sc.tau_k.clone() - sc.tau_p.clone()) / sixteen.clone();
    let b = (four * sc.tau_star_k.clone() - sc.tau_star_p.clone()) / sixteen;
    Residual::between(&bundle.h, &pi.combine(&a, &b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::curvature::is_kahler_tensor;
    use crate::field::{rat, Rational};
    use crate::format::parse;
    use crate::structure::validate;

    fn standard() -> NordenStructure<Rational> {
        validate(&parse("dim 4\ng 1 1 1\ng 2 2 1\ng 3 3 -1\ng 4 4 -1\nJ 3 1 1\nJ 4 2 1\nJ 1 3 -1\nJ 2 4 -1\n").unwrap())
            .unwrap()
    }

    #[test]
    fn pi1_sample_entry() {
        let pi = build_pi(&standard());
        // π1(e1,e2,e2,e1) = g22 g11 - g12 g21 = 1
        assert_eq!(pi.pi1[[0, 1, 1, 0]], rat(1, 1));
    }

    #[test]
    fn pi2_sample_entry() {
        let s = standard();
        let pi = build_pi(&s);
        // J e2 = e4, J e1 = e3: g(e2,e4) g(e1,e3) - g(e1,e4) g(e2,e3) = 0
        assert_eq!(pi.pi2[[0, 1, 1, 0]], rat(0, 1));
        // π2(e1,e2,e4,e3): g(e2,Je4)g(e1,Je3) - g(e1,Je4)g(e2,Je3) = g(e2,-e2)g(e1,-e1) = 1
        assert_eq!(pi.pi2[[0, 1, 3, 2]], rat(1, 1));
    }

    #[test]
    fn basis_tensors_are_curvature_like() {
        let s = standard();
        let pi = build_pi(&s);
        for t in [&pi.pi1, &pi.pi2, &pi.pi3] {
            assert!(curvature_like_check(t).holds());
        }
        assert!(is_kahler_tensor(&pi.pi1_minus_pi2(), &s.j));
        assert!(is_kahler_tensor(&pi.pi3, &s.j));
        assert!(!kahler_check(&pi.pi1, &s.j).vanishes());
    }

    #[test]
    fn zero_decomposes_to_zero() {
        let s = standard();
        let pi = build_pi(&s);
        let d = decompose_kahler(&FrameTensor::zeros(4, 0, 4), &s, &pi).unwrap();
        assert_eq!((d.nu, d.nu_star), (rat(0, 1), rat(0, 1)));
        assert!(d.residual.vanishes());
    }

    #[test]
    fn non_kahler_input_rejected() {
        let s = standard();
        let pi = build_pi(&s);
        assert_eq!(
            decompose_kahler(&pi.pi1, &s, &pi),
            Err(FourDimError::NotKahlerTensor("J-invariance"))
        );
    }
}
