//! Lie algebra frames carrying a left-invariant Norden pair `(g, J)`.
//!
//! The manifold is modelled by a Lie group with left-invariant `g` and `J`,
//! so everything is determined by the structure constants `C^k_{ij}`
//! (`[e_i, e_j] = C^k_{ij} e_k`) and the matrices of `g` and `J` in the frame.

use std::fmt;

use thiserror::Error;

use crate::field::Scalar;
use crate::format::RawSpec;
use crate::linalg::Matrix;
use crate::tensor::{FrameTensor, MetricPair};

/// Hard cap on the frame dimension.
pub const MAX_DIM: usize = 12;

/// A 1-based index tuple used in diagnostics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness(pub Vec<usize>);

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StructureError {
    #[error("OddDimension: dimension {0} is not even")]
    OddDimension(usize),
    #[error("ZeroDimension: dimension must be at least 2")]
    ZeroDimension,
    #[error("DimensionTooLarge: dimension {0} exceeds the cap of {MAX_DIM}")]
    DimensionTooLarge(usize),
    #[error("NonFinite: entry {0} is not finite")]
    NonFinite(&'static str),
    #[error("BrokenAntisymmetry: C^k_ij != -C^k_ji at (i,j,k) = {0}")]
    BrokenAntisymmetry(Witness),
    #[error("JacobiViolation: Jacobi identity fails at (i,j,k,l) = {0}")]
    JacobiViolation(Witness),
    #[error("NotAlmostComplex: J^2 != -I at entry {0}")]
    NotAlmostComplex(Witness),
    #[error("NotNorden: g(Je_i, Je_j) != -g(e_i, e_j) at (i,j) = {0}")]
    NotNorden(Witness),
    #[error("AsymmetricMetric: g is not symmetric at {0}")]
    AsymmetricMetric(Witness),
    #[error("DegenerateMetric: g is singular")]
    DegenerateMetric,
    #[error("WrongSignature: inertia ({pos},{neg}) is not ({n},{n})")]
    WrongSignature { pos: usize, neg: usize, n: usize },
}

impl StructureError {
    /// Name of the violated invariant, as printed before the colon.
    pub fn kind(&self) -> &'static str {
        match self {
            StructureError::OddDimension(_) => "OddDimension",
            StructureError::ZeroDimension => "ZeroDimension",
            StructureError::DimensionTooLarge(_) => "DimensionTooLarge",
            StructureError::NonFinite(_) => "NonFinite",
            StructureError::BrokenAntisymmetry(_) => "BrokenAntisymmetry",
            StructureError::JacobiViolation(_) => "JacobiViolation",
            StructureError::NotAlmostComplex(_) => "NotAlmostComplex",
            StructureError::NotNorden(_) => "NotNorden",
            StructureError::AsymmetricMetric(_) => "AsymmetricMetric",
            StructureError::DegenerateMetric => "DegenerateMetric",
            StructureError::WrongSignature { .. } => "WrongSignature",
        }
    }
}

/// Structure constants of the frame's Lie algebra, stored as a (1,2) tensor
/// with entry `[k, i, j] = C^k_{ij}`.
#[derive(Debug, Clone, PartialEq)]
pub struct LieFrameSpec<S> {
    pub constants: FrameTensor<S>,
}

impl<S: Scalar> LieFrameSpec<S> {
    pub fn abelian(dim: usize) -> Self {
        LieFrameSpec { constants: FrameTensor::zeros(dim, 1, 2) }
    }

    pub fn dim(&self) -> usize {
        self.constants.dim()
    }

    /// `C^k_{ij}`.
    pub fn c(&self, k: usize, i: usize, j: usize) -> &S {
        &self.constants[[k, i, j]]
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_zero_tensor()
    }

    /// Jacobi residual tensor `J^l_{ijk}` (stored as `[l, i, j, k]`).
    pub fn jacobiator(&self) -> FrameTensor<S> {
        let n = self.dim();
        FrameTensor::from_fn(n, 1, 3, |ix| {
            let (l, i, j, k) = (ix[0], ix[1], ix[2], ix[3]);
            let mut acc = S::zero();
            for m in 0..n {
                acc = acc
                    + self.c(m, i, j).clone() * self.c(l, m, k).clone()
                    + self.c(m, j, k).clone() * self.c(l, m, i).clone()
                    + self.c(m, k, i).clone() * self.c(l, m, j).clone();
            }
            acc
        })
    }
}

/// A validated Norden structure on a Lie algebra frame.
#[derive(Debug, Clone, PartialEq)]
pub struct NordenStructure<S> {
    pub frame: LieFrameSpec<S>,
    /// `J^i_j` at `[i, j]`, i.e. `J e_j = J^i_j e_i`.
    pub j: FrameTensor<S>,
    pub metric: MetricPair<S>,
    pub signature: (usize, usize),
}

impl<S: Scalar> NordenStructure<S> {
    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn g(&self) -> &FrameTensor<S> {
        &self.metric.g
    }

    pub fn g_inv(&self) -> &FrameTensor<S> {
        &self.metric.g_inv
    }

    /// Replaces the metric (e.g. by the associated one) and re-validates.
    pub fn with_metric(&self, g: FrameTensor<S>) -> Result<Self, StructureError> {
        validate_parts(self.frame.constants.clone(), g, self.j.clone())
    }
}

/// `g~(x, y) = g(x, Jy)` as a (0,2) tensor.
pub fn associated_metric<S: Scalar>(s: &NordenStructure<S>) -> FrameTensor<S> {
    s.metric.g_tilde.clone().expect("validated structures carry the associated metric")
}

/// Validates parsed input into a structure over the scalar field `S`.
pub fn validate<S: Scalar>(raw: &RawSpec) -> Result<NordenStructure<S>, StructureError> {
    check_dimension(raw.dim)?;
    let n = raw.dim;
    let conv = |r: &crate::field::Rational| S::from_rational(r);
    let mut c = FrameTensor::<S>::zeros(n, 1, 2);
    for (&(i, j, k), v) in &raw.constants {
        c.set(&[k, i, j], conv(v));
    }
    let mut g = FrameTensor::<S>::zeros(n, 0, 2);
    for (&(i, j), v) in &raw.metric {
        g.set(&[i, j], conv(v));
        g.set(&[j, i], conv(v));
    }
    let mut jt = FrameTensor::<S>::zeros(n, 1, 1);
    for (&(i, j), v) in &raw.complex {
        jt.set(&[i, j], conv(v));
    }
    validate_parts(c, g, jt)
}

fn check_dimension(dim: usize) -> Result<(), StructureError> {
    if dim == 0 {
        Err(StructureError::ZeroDimension)
    } else if !dim.is_multiple_of(2) {
        Err(StructureError::OddDimension(dim))
    } else if dim > MAX_DIM {
        Err(StructureError::DimensionTooLarge(dim))
    } else {
        Ok(())
    }
}

/// Validates explicit tensors: structure constants `[k, i, j]`, metric
/// `(0,2)` and `J` as `(1,1)`. Invariants are checked in a fixed order and
/// the first violation is returned with its witness indices.
pub fn validate_parts<S: Scalar>(
    constants: FrameTensor<S>,
    g: FrameTensor<S>,
    j: FrameTensor<S>,
) -> Result<NordenStructure<S>, StructureError> {
    let n = g.dim();
    check_dimension(n)?;
    for (name, t) in [("C", &constants), ("g", &g), ("J", &j)] {
        if !t.all_finite() {
            return Err(StructureError::NonFinite(name));
        }
    }
    let frame = LieFrameSpec { constants };

    let c_scale = frame.constants.max_abs();
    for i in 0..n {
        for jj in 0..n {
            for k in 0..n {
                let r = frame.c(k, i, jj).clone() + frame.c(k, jj, i).clone();
                if !S::negligible(&r.magnitude(), &c_scale) {
                    return Err(StructureError::BrokenAntisymmetry(Witness(vec![i, jj, k])));
                }
            }
        }
    }
    let jac = frame.jacobiator();
    let jac_scale = c_scale.clone() * c_scale.clone();
    if let Some((ix, _)) = jac.iter().find(|(_, v)| !S::negligible(&v.magnitude(), &jac_scale)) {
        // stored as [l, i, j, k]; report (i, j, k, l)
        return Err(StructureError::JacobiViolation(Witness(vec![ix[1], ix[2], ix[3], ix[0]])));
    }

    let jm = j.to_matrix();
    let j2 = jm.mul(&jm).add(&Matrix::identity(n));
    let j_scale = jm.max_abs();
    let j_scale = j_scale.clone() * j_scale;
    for a in 0..n {
        for b in 0..n {
            if !S::negligible(&j2[(a, b)].magnitude(), &j_scale) {
                return Err(StructureError::NotAlmostComplex(Witness(vec![a, b])));
            }
        }
    }

    let gm = g.to_matrix();
    let g_scale = gm.max_abs();
    for a in 0..n {
        for b in 0..a {
            if !S::negligible(&(gm[(a, b)].clone() - gm[(b, a)].clone()).magnitude(), &g_scale) {
                return Err(StructureError::AsymmetricMetric(Witness(vec![a, b])));
            }
        }
    }
    let gjj = jm.transpose().mul(&gm).mul(&jm).add(&gm);
    let scale = g_scale.clone() * j_scale;
    for a in 0..n {
        for b in 0..n {
            if !S::negligible(&gjj[(a, b)].magnitude(), &scale) {
                return Err(StructureError::NotNorden(Witness(vec![a, b])));
            }
        }
    }

    let (pos, neg, zero) = gm.inertia();
    if zero > 0 {
        return Err(StructureError::DegenerateMetric);
    }
    if pos != n / 2 || neg != n / 2 {
        return Err(StructureError::WrongSignature { pos, neg, n: n / 2 });
    }
    let metric = MetricPair::new(g).map_err(|_| StructureError::DegenerateMetric)?.with_structure(&j);
    Ok(NordenStructure { frame, j, metric, signature: (pos, neg) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{rat, Rational};
    use crate::format::parse;

    const STANDARD: &str = "dim 4\ng 1 1 1\ng 2 2 1\ng 3 3 -1\ng 4 4 -1\nJ 3 1 1\nJ 4 2 1\nJ 1 3 -1\nJ 2 4 -1\n";

    fn standard() -> NordenStructure<Rational> {
        validate(&parse(STANDARD).unwrap()).unwrap()
    }

    #[test]
    fn standard_structure_is_norden() {
        let s = standard();
        assert_eq!(s.signature, (2, 2));
        assert!(s.frame.is_abelian());
    }

    #[test]
    fn positive_definite_metric_is_not_norden() {
        let text = STANDARD.replace("g 3 3 -1", "g 3 3 1").replace("g 4 4 -1", "g 4 4 1");
        let err = validate::<Rational>(&parse(&text).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "NotNorden");
    }

    #[test]
    fn odd_dimension_rejected() {
        let err = validate::<Rational>(&parse("dim 3\n").unwrap()).unwrap_err();
        assert_eq!(err, StructureError::OddDimension(3));
        assert!(err.to_string().starts_with("OddDimension"));
    }

    #[test]
    fn j_squared_must_be_minus_identity() {
        let text = STANDARD.replace("J 1 3 -1", "J 1 3 1");
        let err = validate::<Rational>(&parse(&text).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "NotAlmostComplex");
    }

    #[test]
    fn diagonal_bracket_breaks_antisymmetry() {
        let text = format!("{STANDARD}C 2 2 1 1\n");
        let err = validate::<Rational>(&parse(&text).unwrap()).unwrap_err();
        assert_eq!(err, StructureError::BrokenAntisymmetry(Witness(vec![1, 1, 0])));
    }

    #[test]
    fn jacobi_violation_reports_indices() {
        // [e1,e2]=e3, [e1,e3]=e1 is not a Lie algebra
        let text = format!("{STANDARD}C 1 2 3 1\nC 1 3 1 1\n");
        let err = validate::<Rational>(&parse(&text).unwrap()).unwrap_err();
        assert_eq!(err.kind(), "JacobiViolation");
    }

    #[test]
    fn degenerate_metric_rejected() {
        let err = validate::<Rational>(&parse("dim 2\nJ 2 1 1\nJ 1 2 -1\n").unwrap()).unwrap_err();
        assert_eq!(err, StructureError::DegenerateMetric);
    }

    #[test]
    fn dimension_two_is_allowed() {
        let s = validate::<Rational>(&parse("dim 2\ng 1 1 1\ng 2 2 -1\nJ 2 1 1\nJ 1 2 -1\nC 1 2 1 1\n").unwrap())
            .unwrap();
        assert_eq!(s.signature, (1, 1));
    }

    #[test]
    fn associated_metric_entries() {
        let s = standard();
        let gt = associated_metric(&s);
        // g~(e1, e3) = g(e1, J e3) = g(e1, -e1) = -1
        assert_eq!(gt[[0, 2]], rat(-1, 1));
        assert_eq!(gt[[2, 0]], rat(-1, 1));
        assert_eq!(gt[[0, 0]], rat(0, 1));
        assert_eq!(gt[[0, 1]], rat(0, 1));
    }

    #[test]
    fn associate_of_associate_is_minus_g() {
        let s = standard();
        let gt = associated_metric(&s);
        let s2 = s.with_metric(gt).unwrap();
        let gtt = associated_metric(&s2);
        assert_eq!(gtt, s.g().scale(&rat(-1, 1)));
    }

    #[test]
    fn float_mode_validates_same_input() {
        let s = validate::<f64>(&parse(STANDARD).unwrap()).unwrap();
        assert_eq!(s.signature, (2, 2));
    }
}
