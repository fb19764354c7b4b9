//! Ricci tensors, scalar curvatures, the square norm of `∇J`, and the trace
//! relations between `τ`, `τ(K)`, `τ(P)` and `‖∇J‖²`.

use crate::connection::FundamentalTensor;
use crate::curvature::{nabla_j_gram, twist_last_pair, CurvatureBundle};
use crate::field::Scalar;
use crate::report::{Biconditional, Residual};
use crate::structure::NordenStructure;
use crate::tensor::{FrameTensor, MetricPair};

#[derive(Debug, Clone, PartialEq)]
pub struct RicciTraces<S> {
    /// `ρ(y, z) = g^{ij} L(e_i, y, z, e_j)`.
    pub rho: FrameTensor<S>,
    /// `τ = g^{ij} ρ(e_i, e_j)`.
    pub tau: S,
    /// `ρ*(y, z) = g^{ij} L(e_i, y, z, J e_j)`.
    pub rho_star: FrameTensor<S>,
    /// `τ* = g^{ij} ρ(e_i, J e_j)`, built from `ρ` as written.
    pub tau_star: S,
    /// `g^{ij} ρ*(e_i, e_j)`, the alternative reading of `τ*`.
    pub tau_star_alt: S,
}

pub fn ricci_and_scalar<S: Scalar>(l: &FrameTensor<S>, metric: &MetricPair<S>, j: &FrameTensor<S>) -> RicciTraces<S> {
    let rho = l.contract(0, 3, metric).expect("(0,4) tensor");
    let tau = rho.contract(0, 1, metric).expect("(0,2) tensor").value().clone();
    let rho_star = l.compose_slot(3, j).and_then(|t| t.contract(0, 3, metric)).expect("(0,4) tensor");
    let tau_star = rho.compose_slot(1, j).and_then(|t| t.contract(0, 1, metric)).expect("(0,2) tensor").value().clone();
    let tau_star_alt = rho_star.contract(0, 1, metric).expect("(0,2) tensor").value().clone();
    RicciTraces { rho, tau, rho_star, tau_star, tau_star_alt }
}

/// `τ** = g^{ij} g^{ks} R(e_i, e_k, J e_s, J e_j)`.
pub fn tau_star_star<S: Scalar>(r: &FrameTensor<S>, metric: &MetricPair<S>, j: &FrameTensor<S>) -> S {
    let tw = twist_last_pair(r, j);
    let partial = tw.contract(0, 3, metric).expect("(0,4) tensor");
    partial.contract(0, 1, metric).expect("(0,2) tensor").value().clone()
}

/// `‖∇J‖² = g^{ij} g^{ks} g((∇_{e_i} J) e_k, (∇_{e_j} J) e_s)`.
pub fn norm_nabla_j<S: Scalar>(metric: &MetricPair<S>, f: &FundamentalTensor<S>) -> S {
    // gram slots: [i, k, j, s]
    let gram = nabla_j_gram(f);
    let partial = gram.contract(0, 2, metric).expect("(0,4) tensor");
    partial.contract(0, 1, metric).expect("(0,2) tensor").value().clone()
}

/// `-2 g^{ij} g^{ks} g((∇_{e_i} J) e_k, (∇_{e_s} J) e_j)`, which equals
/// `‖∇J‖²` on quasi-Kähler structures.
pub fn norm_nabla_j_w3_form<S: Scalar>(metric: &MetricPair<S>, f: &FundamentalTensor<S>) -> S {
    let gram = nabla_j_gram(f);
    let partial = gram.contract(0, 3, metric).expect("(0,4) tensor");
    let v = partial.contract(0, 1, metric).expect("(0,2) tensor").value().clone();
    -S::from_i64(2) * v
}

pub fn w3_norm_identity_check<S: Scalar>(metric: &MetricPair<S>, f: &FundamentalTensor<S>) -> Residual<S> {
    let lhs = norm_nabla_j(metric, f);
    let rhs = norm_nabla_j_w3_form(metric, f);
    Residual::of_scalar(lhs.clone() - rhs.clone(), &[&lhs, &rhs])
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScalarReport<S> {
    pub tau: S,
    pub tau_star: S,
    pub tau_star_alt: S,
    pub tau_star_star: S,
    pub tau_k: S,
    pub tau_p: S,
    pub tau_star_k: S,
    pub tau_star_p: S,
    pub tau_star_alt_k: S,
    pub tau_star_alt_p: S,
    pub norm_nabla_j: S,
    pub rho: FrameTensor<S>,
    pub rho_star: FrameTensor<S>,
    pub rho_k: FrameTensor<S>,
    pub rho_p: FrameTensor<S>,
}

impl<S: Scalar> ScalarReport<S> {
    pub fn compute(s: &NordenStructure<S>, f: &FundamentalTensor<S>, bundle: &CurvatureBundle<S>) -> Self {
        let m = &s.metric;
        let r = ricci_and_scalar(&bundle.r, m, &s.j);
        let k = ricci_and_scalar(&bundle.k_direct, m, &s.j);
        let p = ricci_and_scalar(&bundle.p, m, &s.j);
        ScalarReport {
            tau: r.tau,
            tau_star: r.tau_star,
            tau_star_alt: r.tau_star_alt,
            tau_star_star: tau_star_star(&bundle.r, m, &s.j),
            tau_k: k.tau,
            tau_p: p.tau,
            tau_star_k: k.tau_star,
            tau_star_p: p.tau_star,
            tau_star_alt_k: k.tau_star_alt,
            tau_star_alt_p: p.tau_star_alt,
            norm_nabla_j: norm_nabla_j(m, f),
            rho: r.rho,
            rho_star: r.rho_star,
            rho_k: k.rho,
            rho_p: p.rho,
        }
    }
}

/// One trace relation and its residual.
#[derive(Debug, Clone, PartialEq)]
pub struct Relation<S> {
    pub id: &'static str,
    pub residual: Residual<S>,
}

pub const RELATION_RICCI: &str = "eq3.1-ricci-relation";
pub const RELATION_SCALAR: &str = "eq3.2-scalar-relation";
pub const RELATION_NORM_TAU: &str = "norm-tau-relation";
pub const RELATION_TAU_COMBINED: &str = "eq3.3-tau-combined";
pub const RELATION_TAU_P: &str = "eq3.4-tau-p";
pub const RELATION_TAU_K: &str = "eq3.5-tau-k";

/// The trace relations, each computed from the direct curvature of `D`:
///
/// * `ρ(y,z) - ρ*(y,Jz) = 2ρ(K)(y,z) - 1/2 ρ(P)(y,z)`
/// * `τ - τ** = 2τ(K) - 1/2 τ(P)`
/// * `‖∇J‖² = -2(τ + τ**)`
/// * `τ = τ(K) - 1/4 (τ(P) + ‖∇J‖²)`
/// * `τ(P) = -1/2 ‖∇J‖²`
/// * `τ = τ(K) - 1/8 ‖∇J‖²`
pub fn trace_relations<S: Scalar>(sc: &ScalarReport<S>, j: &FrameTensor<S>) -> Vec<Relation<S>> {
    let two = S::from_i64(2);
    let half = S::half();
    let quarter = S::one() / S::from_i64(4);
    let eighth = S::one() / S::from_i64(8);

    let rho_star_j = sc.rho_star.compose_slot(1, j).expect("(0,2) tensor");
    let lhs = sc.rho.sub(&rho_star_j);
    let rhs = sc.rho_k.scale(&two).sub(&sc.rho_p.scale(&half));
    let ricci = Residual::of_tensor(&lhs.sub(&rhs), &[&sc.rho, &rho_star_j, &sc.rho_k, &sc.rho_p]);

    let (tau, tss, tk, tp, nj) = (&sc.tau, &sc.tau_star_star, &sc.tau_k, &sc.tau_p, &sc.norm_nabla_j);
    let scalar = Residual::of_scalar(
        tau.clone() - tss.clone() - two.clone() * tk.clone() + half.clone() * tp.clone(),
        &[tau, tss, tk, tp],
    );
    let norm_tau = Residual::of_scalar(nj.clone() + two.clone() * (tau.clone() + tss.clone()), &[nj, tau, tss]);
    let combined = Residual::of_scalar(
        tau.clone() - tk.clone() + quarter * (tp.clone() + nj.clone()),
        &[tau, tk, tp, nj],
    );
    let tau_p = Residual::of_scalar(tp.clone() + half * nj.clone(), &[tp, nj]);
    let tau_k = Residual::of_scalar(tau.clone() - tk.clone() + eighth * nj.clone(), &[tau, tk, nj]);

    vec![
        Relation { id: RELATION_RICCI, residual: ricci },
        Relation { id: RELATION_SCALAR, residual: scalar },
        Relation { id: RELATION_NORM_TAU, residual: norm_tau },
        Relation { id: RELATION_TAU_COMBINED, residual: combined },
        Relation { id: RELATION_TAU_P, residual: tau_p },
        Relation { id: RELATION_TAU_K, residual: tau_k },
    ]
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsotropicKahler<S> {
    /// `‖∇J‖² = 0`.
    pub isotropic: bool,
    /// `‖∇J‖² = 0` against `τ = τ(K)`.
    pub criterion: Biconditional<S>,
}

pub fn isotropic_kahler_check<S: Scalar>(sc: &ScalarReport<S>) -> IsotropicKahler<S> {
    let norm = Residual::of_scalar(sc.norm_nabla_j.clone(), &[&sc.norm_nabla_j]);
    let tau_gap = Residual::of_scalar(sc.tau.clone() - sc.tau_k.clone(), &[&sc.tau, &sc.tau_k]);
    IsotropicKahler { isotropic: norm.vanishes(), criterion: Biconditional::new(norm, tau_gap) }
}
