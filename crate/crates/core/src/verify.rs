//! The full identity catalogue for one structure.
//!
//! [`Analysis::compute`] derives every tensor once; [`run_catalogue`] turns
//! it into an [`IdentityReport`] with one entry per check, in dependency
//! order. Checks whose hypotheses fail are reported as `not-applicable`
//! with the failed gate, never dropped.

use thiserror::Error;

use crate::connection::{
    b_connection_unchecked, classify, f_symmetry_residuals, fundamental_tensor, levi_civita, metric_residual,
    naturality_residuals, q_antisymmetry_residual, q_tensor, q_tensor_from_connection, torsion, torsion_cyclic_residual,
    torsion_f_residual, torsion_residual, ClassFlags, ConnectionCoeffs, FundamentalTensor,
};
use crate::curvature::{
    bianchi_residual, curvature_like_check, kahler_check, l2_check, ricci_identity_residual, k_kahler_criterion, p_kahler_criterion,
    CurvatureBundle,
};
use crate::field::{Mode, Rational, Scalar};
use crate::format::{parse, ParseError, RawSpec};
use crate::fourdim::{build_pi, decompose_kahler, h_form_residual, PiBasis};
use crate::linalg::Matrix;
use crate::report::{IdentityReport, ReportEntry, Residual, Status};
use crate::scalars::{isotropic_kahler_check, trace_relations, w3_norm_identity_check, ScalarReport};
use crate::structure::{validate, NordenStructure, StructureError};

pub const GATE_W3: &str = "is_W3";
pub const GATE_L2: &str = "is_L2";
pub const GATE_K_KAHLER: &str = "K_kahler";
pub const GATE_DIM4: &str = "dim4";

/// Check ids and their anchors, in execution order.
pub const CATALOGUE: &[(&str, &str)] = &[
    ("eq1.1-norden-axioms", "Eq 1.1"),
    ("levi-civita-compat", "Koszul"),
    ("eq1.3-f-symmetry", "Eq 1.3"),
    ("w0-class", "W0"),
    ("eq1.4-w3-class", "Eq 1.4"),
    ("eq2.1-naturality", "Eq 2.1"),
    ("eq2.2-torsion-f", "Eq 2.2"),
    ("prop2.1-torsion-cyclic", "Prop 2.1"),
    ("eq2.5-q-antisym", "Eq 2.5"),
    ("eq2.4-q-two-route", "Eq 2.4"),
    ("eq1.5-ricci-identity", "Eq 1.5"),
    ("r-curvature-like", "Eq 1.10-1.11"),
    ("k-kahler-property", "Eq 1.12"),
    ("eq2.8-p-properties", "Eq 2.8"),
    ("eq1.7-w3-norm", "Eq 1.7"),
    ("thm2.2-k-crosscheck", "Eq 2.7"),
    ("eq2.10-l2-class", "Eq 2.10"),
    ("thm2.3-k-kahler-iff", "Eq 2.9"),
    ("thm2.4-p-kahler-iff", "Thm 2.4"),
    ("cor2.5-h-kahler", "Eq 2.11"),
    ("eq1.9-tau-star-readings", "Eq 1.9"),
    ("eq3.1-ricci-relation", "Eq 3.1"),
    ("eq3.2-scalar-relation", "Eq 3.2"),
    ("norm-tau-relation", "derived"),
    ("eq3.3-tau-combined", "Eq 3.3"),
    ("eq3.4-tau-p", "Eq 3.4"),
    ("eq3.5-tau-k", "Eq 3.5"),
    ("prop3.1-isotropic-kahler", "Prop 3.1"),
    ("eq3.6-pi-basis", "Eq 3.6"),
    ("eq3.6-h-decomposition", "Eq 3.6"),
    ("prop3.2-h-form", "Prop 3.2"),
];

fn anchor_of(id: &str) -> &'static str {
    CATALOGUE.iter().find(|(c, _)| *c == id).map(|(_, a)| *a).expect("id in catalogue")
}

fn catalogue_id(id: &str) -> &'static str {
    CATALOGUE.iter().find(|(c, _)| *c == id).map(|(c, _)| *c).expect("id in catalogue")
}

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("{0}")]
    Structure(#[from] StructureError),
    #[error("unknown check id `{0}`")]
    UnknownCheck(String),
}

/// Every derived object for one structure.
#[derive(Debug, Clone)]
pub struct Analysis<S> {
    pub structure: NordenStructure<S>,
    pub nabla: ConnectionCoeffs<S>,
    pub f: FundamentalTensor<S>,
    pub flags: ClassFlags<S>,
    pub d: ConnectionCoeffs<S>,
    pub q: crate::tensor::FrameTensor<S>,
    pub torsion: crate::tensor::FrameTensor<S>,
    pub bundle: CurvatureBundle<S>,
    pub scalars: ScalarReport<S>,
    pub pi: PiBasis<S>,
    pub l2: Residual<S>,
    pub is_l2: bool,
    pub k_bianchi: Residual<S>,
    pub k_kahler: bool,
}

impl<S: Scalar> Analysis<S> {
    pub fn compute(structure: NordenStructure<S>) -> Self {
        let nabla = levi_civita(&structure);
        let f = fundamental_tensor(&structure, &nabla);
        let flags = classify(&structure, &nabla, &f);
        let d = b_connection_unchecked(&structure, &nabla);
        let q = q_tensor(&structure, &f);
        let torsion = torsion(&structure, &d);
        let bundle = CurvatureBundle::compute(&structure, &nabla, &d, &f);
        let scalars = ScalarReport::compute(&structure, &f, &bundle);
        let pi = build_pi(&structure);
        let l2 = l2_check(&bundle.r, &structure.j);
        let is_l2 = l2.vanishes();
        let k_bianchi = bianchi_residual(&bundle.k_direct);
        let k_kahler = k_bianchi.vanishes();
        Analysis { structure, nabla, f, flags, d, q, torsion, bundle, scalars, pi, l2, is_l2, k_bianchi, k_kahler }
    }

    pub fn is_w3(&self) -> bool {
        self.flags.is_w3
    }

    pub fn is_w0(&self) -> bool {
        self.flags.is_w0
    }

    pub fn is_isotropic_kahler(&self) -> bool {
        isotropic_kahler_check(&self.scalars).isotropic
    }

    /// Residual of `K` from the curvature of `D` against the closed formula.
    pub fn k_crosscheck(&self) -> Residual<S> {
        Residual::between(&self.bundle.k_direct, &self.bundle.k_formula)
    }
}

struct Builder<'a, S> {
    entries: Vec<ReportEntry>,
    filter: Option<&'a [String]>,
    _mode: std::marker::PhantomData<S>,
}

impl<S: Scalar> Builder<'_, S> {
    fn wanted(&self, id: &str) -> bool {
        self.filter.is_none_or(|f| f.iter().any(|x| x == id))
    }

    fn push(&mut self, id: &str, status: Status, residual: String, gates: Vec<&'static str>, detail: String) {
        if !self.wanted(id) {
            return;
        }
        self.entries.push(ReportEntry { check_id: catalogue_id(id), anchor: anchor_of(id), status, residual, gates, detail });
    }

    fn check(&mut self, id: &str, r: &Residual<S>, gates: Vec<&'static str>, detail: String) {
        let status = if r.vanishes() { Status::Pass } else { Status::Fail };
        self.push(id, status, r.value.render(), gates, detail);
    }

    fn info(&mut self, id: &str, r: &Residual<S>, detail: String) {
        self.push(id, Status::Informational, r.value.render(), vec![], detail);
    }

    /// Runs `body` only when every gate holds; otherwise records the first
    /// failed gate.
    fn gated(&mut self, id: &str, gates: &[(&'static str, bool)], body: impl FnOnce(&mut Self, Vec<&'static str>)) {
        if let Some((name, _)) = gates.iter().find(|(_, ok)| !ok) {
            self.push(id, Status::NotApplicable, "-".into(), vec![name], String::new());
        } else {
            body(self, gates.iter().map(|(n, _)| *n).collect());
        }
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// Runs the catalogue, optionally restricted to `filter` (check ids).
pub fn run_catalogue<S: Scalar>(a: &Analysis<S>, filter: Option<&[String]>) -> Result<IdentityReport, VerifyError> {
    if let Some(ids) = filter {
        if let Some(bad) = ids.iter().find(|id| !CATALOGUE.iter().any(|(c, _)| c == id)) {
            return Err(VerifyError::UnknownCheck(bad.clone()));
        }
    }
    let mut b = Builder::<S> { entries: Vec::new(), filter, _mode: std::marker::PhantomData };
    let s = &a.structure;
    let j = &s.j;
    let w3 = a.is_w3();

    // axioms, recomputed from the stored tensors
    let jm = j.to_matrix();
    let gm = s.g().to_matrix();
    let n = s.dim();
    let j2 = jm.mul(&jm).add(&Matrix::identity(n));
    let gjj = jm.transpose().mul(&gm).mul(&jm).add(&gm);
    let axioms = Residual::new(j2.max_abs(), jm.max_abs()).max(Residual::new(gjj.max_abs(), gm.max_abs()));
    b.check(
        "eq1.1-norden-axioms",
        &axioms,
        vec![],
        format!("signature ({},{})", s.signature.0, s.signature.1),
    );

    let lc = metric_residual(s, &a.nabla).max(torsion_residual(s, &a.nabla));
    b.check("levi-civita-compat", &lc, vec![], String::new());

    let (f_swap, f_jj) = f_symmetry_residuals(s, &a.f);
    b.check("eq1.3-f-symmetry", &f_swap.max(f_jj), vec![], String::new());

    b.info("w0-class", &a.flags.w0_residual, format!("kahler: {}", yes_no(a.flags.is_w0)));
    b.info("eq1.4-w3-class", &a.flags.w3_residual, format!("quasi-kahler: {}", yes_no(w3)));

    let (dg, dj) = naturality_residuals(s, &a.d);
    let natural = dg.clone().max(dj.clone());
    let detail = if natural.vanishes() {
        String::new()
    } else {
        format!("NaturalityViolation: Dg {}, DJ {}", dg.value.render(), dj.value.render())
    };
    b.check("eq2.1-naturality", &natural, vec![], detail);

    b.check("eq2.2-torsion-f", &torsion_f_residual(s, &a.torsion, &a.f), vec![], String::new());

    let tc = torsion_cyclic_residual(&a.torsion, j);
    if w3 {
        b.check("prop2.1-torsion-cyclic", &tc, vec![GATE_W3], String::new());
    } else {
        b.info("prop2.1-torsion-cyclic", &tc, "not quasi-kahler; reported only".into());
    }

    b.check("eq2.5-q-antisym", &q_antisymmetry_residual(&a.q), vec![], String::new());
    let q_alt = q_tensor_from_connection(s, &a.nabla);
    b.check("eq2.4-q-two-route", &Residual::between(&a.q, &q_alt), vec![], String::new());

    let bundle = &a.bundle;
    b.check("eq1.5-ricci-identity", &ricci_identity_residual(&bundle.nabla_f, &bundle.r, j), vec![], String::new());

    let rc = curvature_like_check(&bundle.r);
    b.check("r-curvature-like", &rc.antisym.clone().max(rc.bianchi.clone()), vec![], String::new());

    let kc = curvature_like_check(&bundle.k_direct);
    b.check(
        "k-kahler-property",
        &kc.antisym.clone().max(kahler_check(&bundle.k_direct, j)),
        vec![],
        format!("bianchi(K) {}", a.k_bianchi.value.render()),
    );

    let pc = curvature_like_check(&bundle.p);
    b.check("eq2.8-p-properties", &pc.antisym.clone().max(kahler_check(&bundle.p, j)), vec![], String::new());

    b.gated("eq1.7-w3-norm", &[(GATE_W3, w3)], |b, gates| {
        b.check("eq1.7-w3-norm", &w3_norm_identity_check(&s.metric, &a.f), gates, String::new());
    });

    let kx = a.k_crosscheck();
    if w3 {
        b.check("thm2.2-k-crosscheck", &kx, vec![GATE_W3], String::new());
    } else {
        b.info("thm2.2-k-crosscheck", &kx, "not quasi-kahler; reported only".into());
    }

    b.info("eq2.10-l2-class", &a.l2, format!("L2: {}", yes_no(a.is_l2)));

    b.gated("thm2.3-k-kahler-iff", &[(GATE_W3, w3)], |b, gates| {
        let bi = k_kahler_criterion(&bundle.r, &bundle.p, j, &bundle.k_direct);
        let status = if bi.holds() { Status::Pass } else { Status::Fail };
        let detail = format!(
            "bianchi(K) {}, eq2.9 {}{}",
            bi.left.value.render(),
            bi.right.value.render(),
            if bi.holds() { "" } else { "; BiconditionalViolation" }
        );
        b.push("thm2.3-k-kahler-iff", status, bi.left.value.render(), gates, detail);
    });

    b.gated("thm2.4-p-kahler-iff", &[(GATE_W3, w3), (GATE_L2, a.is_l2)], |b, gates| {
        let bi = p_kahler_criterion(&bundle.p, &bundle.k_direct);
        let status = if bi.holds() { Status::Pass } else { Status::Fail };
        let detail = format!(
            "bianchi(K) {}, bianchi(P) {}{}",
            bi.left.value.render(),
            bi.right.value.render(),
            if bi.holds() { "" } else { "; BiconditionalViolation" }
        );
        b.push("thm2.4-p-kahler-iff", status, bi.right.value.render(), gates, detail);
    });

    b.gated(
        "cor2.5-h-kahler",
        &[(GATE_W3, w3), (GATE_L2, a.is_l2), (GATE_K_KAHLER, a.k_kahler)],
        |b, gates| {
            let hc = curvature_like_check(&bundle.h);
            let r = hc.antisym.max(hc.bianchi).max(kahler_check(&bundle.h, j));
            b.check("cor2.5-h-kahler", &r, gates, String::new());
        },
    );

    let sc = &a.scalars;
    let star_gap = [
        (&sc.tau_star, &sc.tau_star_alt),
        (&sc.tau_star_k, &sc.tau_star_alt_k),
        (&sc.tau_star_p, &sc.tau_star_alt_p),
    ]
    .into_iter()
    .map(|(x, y)| Residual::of_scalar(x.clone() - y.clone(), &[x, y]))
    .reduce(Residual::max)
    .unwrap();
    b.info(
        "eq1.9-tau-star-readings",
        &star_gap,
        format!(
            "tau* {} vs {}, tau*(K) {} vs {}, tau*(P) {} vs {}",
            sc.tau_star.render(),
            sc.tau_star_alt.render(),
            sc.tau_star_k.render(),
            sc.tau_star_alt_k.render(),
            sc.tau_star_p.render(),
            sc.tau_star_alt_p.render()
        ),
    );

    for rel in trace_relations(sc, j) {
        b.gated(rel.id, &[(GATE_W3, w3)], |b, gates| {
            let detail = if rel.residual.vanishes() {
                String::new()
            } else {
                "holds only under stricter hypothesis".to_string()
            };
            b.check(rel.id, &rel.residual, gates, detail);
        });
    }

    b.gated("prop3.1-isotropic-kahler", &[(GATE_W3, w3)], |b, gates| {
        let iso = isotropic_kahler_check(sc);
        let status = if iso.criterion.holds() { Status::Pass } else { Status::Fail };
        let detail = format!(
            "isotropic: {}, |nabla J|^2 {}, tau - tau(K) {}{}",
            yes_no(iso.isotropic),
            sc.norm_nabla_j.render(),
            iso.criterion.right.value.render(),
            if iso.criterion.holds() { "" } else { "; BiconditionalViolation" }
        );
        b.push("prop3.1-isotropic-kahler", status, iso.criterion.right.value.render(), gates, detail);
    });

    let pi = &a.pi;
    let mut basis = Residual::exact_zero();
    for t in [&pi.pi1, &pi.pi2, &pi.pi3] {
        let c = curvature_like_check(t);
        basis = basis.max(c.antisym).max(c.bianchi);
    }
    basis = basis.max(kahler_check(&pi.pi1_minus_pi2(), j)).max(kahler_check(&pi.pi3, j));
    b.check("eq3.6-pi-basis", &basis, vec![], String::new());

    let decomposition_gates =
        [(GATE_DIM4, n == 4), (GATE_W3, w3), (GATE_L2, a.is_l2), (GATE_K_KAHLER, a.k_kahler)];
    b.gated("eq3.6-h-decomposition", &decomposition_gates, |b, gates| match decompose_kahler(&bundle.h, s, pi) {
        Ok(dec) => {
            let detail = format!("nu {}, nu* {}", dec.nu.render(), dec.nu_star.render());
            b.check("eq3.6-h-decomposition", &dec.residual, gates, detail);
        }
        Err(e) => b.push("eq3.6-h-decomposition", Status::Fail, "-".into(), gates, e.to_string()),
    });
    b.gated("prop3.2-h-form", &decomposition_gates, |b, gates| {
        b.check("prop3.2-h-form", &h_form_residual(bundle, sc, pi), gates, String::new());
    });

    Ok(IdentityReport { entries: b.entries })
}

/// Reads and parses a structure file.
pub fn load_raw(path: &std::path::Path) -> Result<RawSpec, VerifyError> {
    let text = std::fs::read_to_string(path)
        .map_err(|source| VerifyError::Io { path: path.display().to_string(), source })?;
    Ok(parse(&text)?)
}

/// Validates and analyses parsed input under the requested scalar mode.
pub fn verify_raw(raw: &RawSpec, mode: Mode, filter: Option<&[String]>) -> Result<IdentityReport, VerifyError> {
    match mode {
        Mode::Rational => {
            let s = validate::<Rational>(raw)?;
            run_catalogue(&Analysis::compute(s), filter)
        }
        Mode::Float => {
            let s = validate::<f64>(raw)?;
            run_catalogue(&Analysis::compute(s), filter)
        }
    }
}
