//! Seeded search for structures with prescribed properties.
//!
//! The quasi-Kähler condition `S F = 0` is linear in the structure
//! constants once `g` and `J` are fixed, so [`solve_w3_linear`] finds its
//! solution space exactly. [`hunt`] samples that space with small rational
//! coefficients, keeps the samples that satisfy Jacobi, certifies them with
//! the full pipeline and writes them to disk.
//!
//! Every random draw comes from a ChaCha stream keyed by `(seed, try)`, and
//! results are merged by try index, so output depends only on the inputs.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num::Zero;
use rand::seq::IndexedRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use thiserror::Error;

use crate::connection::{classify, fundamental_tensor, levi_civita};
use crate::field::{rat, Rational, Scalar};
use crate::format::{export_structure, parse};
use crate::linalg::Matrix;
use crate::structure::{validate, validate_parts, NordenStructure, StructureError};
use crate::tensor::FrameTensor;
use crate::verify::{run_catalogue, Analysis};

pub const DEFAULT_BUDGET: usize = 2000;
pub const DEFAULT_MAX_HITS: usize = 8;
/// Congruence twists added to the canonical pair.
pub const CATALOGUE_TWISTS: usize = 3;
/// Float Jacobi threshold for the fast rejection pass; exact validation
/// follows for every survivor.
pub const FAST_JACOBI_TOL: f64 = 1e-6;

/// `{0, ±1, ±1/2, ±2}`.
pub fn default_pool() -> Vec<Rational> {
    vec![rat(0, 1), rat(1, 1), rat(-1, 1), rat(1, 2), rat(-1, 2), rat(2, 1), rat(-2, 1)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Target {
    W3Nontrivial,
    W3L2,
    IsotropicKahlerNonKahler,
    W3L2KahlerK4d,
}

impl Target {
    pub const ALL: [Target; 4] =
        [Target::W3Nontrivial, Target::W3L2, Target::IsotropicKahlerNonKahler, Target::W3L2KahlerK4d];

    pub fn name(self) -> &'static str {
        match self {
            Target::W3Nontrivial => "w3-nontrivial",
            Target::W3L2 => "w3-l2",
            Target::IsotropicKahlerNonKahler => "isotropic-kahler-nonkahler",
            Target::W3L2KahlerK4d => "w3-l2-kahlerK-4d",
        }
    }

    /// Every target asks for `F ≠ 0` on top of its named conditions.
    pub fn accepts(self, a: &Analysis<Rational>) -> bool {
        let base = a.is_w3() && !a.is_w0();
        match self {
            Target::W3Nontrivial => base,
            Target::W3L2 => base && a.is_l2,
            Target::IsotropicKahlerNonKahler => base && a.is_isotropic_kahler(),
            Target::W3L2KahlerK4d => base && a.structure.dim() == 4 && a.is_l2 && a.k_kahler,
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Target {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Target::ALL.into_iter().find(|t| t.name() == s).ok_or_else(|| SearchError::UnknownTarget(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("dimension must be even, got {0}")]
    OddDimension(usize),
    #[error("dimension {0} is outside the supported range 2..=12")]
    BadDimension(usize),
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error("cannot write {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("emitted file {path} failed re-certification: {reason}")]
    Recertification { path: String, reason: String },
}

fn check_dim(dim: usize) -> Result<(), SearchError> {
    if !dim.is_multiple_of(2) {
        Err(SearchError::OddDimension(dim))
    } else if dim == 0 || dim > crate::structure::MAX_DIM {
        Err(SearchError::BadDimension(dim))
    } else {
        Ok(())
    }
}

/// A fixed Norden pair `(g, J)` on which structure constants are searched.
#[derive(Debug, Clone, PartialEq)]
pub struct NordenPair {
    pub g: FrameTensor<Rational>,
    pub j: FrameTensor<Rational>,
}

/// `g = diag(1,..,1,-1,..,-1)`, `J e_i = e_{i+n}`, `J e_{i+n} = -e_i`.
pub fn canonical_pair(dim: usize) -> NordenPair {
    let n = dim / 2;
    let g = FrameTensor::from_fn(dim, 0, 2, |ix| {
        if ix[0] != ix[1] {
            rat(0, 1)
        } else if ix[0] < n {
            rat(1, 1)
        } else {
            rat(-1, 1)
        }
    });
    let j = FrameTensor::from_fn(dim, 1, 1, |ix| {
        let (a, b) = (ix[0], ix[1]);
        if b < n && a == b + n {
            rat(1, 1)
        } else if b >= n && a + n == b {
            rat(-1, 1)
        } else {
            rat(0, 1)
        }
    });
    NordenPair { g, j }
}

/// The canonical pair followed by `CATALOGUE_TWISTS` congruence twists
/// `g' = Pᵀ g P`, `J' = P⁻¹ J P` with unimodular integer `P`.
pub fn catalogue(dim: usize, seed: u64) -> Vec<NordenPair> {
    let base = canonical_pair(dim);
    let mut out = vec![base.clone()];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let gm = base.g.to_matrix();
    let jm = base.j.to_matrix();
    for _ in 0..CATALOGUE_TWISTS {
        let mut p = Matrix::<Rational>::identity(dim);
        for _ in 0..2 {
            let a = rng.random_range(0..dim);
            let b = (a + rng.random_range(1..dim)) % dim;
            let c = if rng.random_bool(0.5) { rat(1, 1) } else { rat(-1, 1) };
            let mut e = Matrix::<Rational>::identity(dim);
            e[(a, b)] = c;
            p = p.mul(&e);
        }
        let p_inv = p.inverse().expect("unimodular");
        let g2 = p.transpose().mul(&gm).mul(&p);
        let j2 = p_inv.mul(&jm).mul(&p);
        out.push(NordenPair {
            g: FrameTensor::from_matrix_cov(&g2),
            j: FrameTensor::from_fn(dim, 1, 1, |ix| j2[(ix[0], ix[1])].clone()),
        });
    }
    out
}

/// Index list of the unknowns `C^k_{ij}`, `i < j`, in column order.
pub fn w3_unknowns(dim: usize) -> Vec<(usize, usize, usize)> {
    let mut v = Vec::new();
    for i in 0..dim {
        for j in i + 1..dim {
            for k in 0..dim {
                v.push((i, j, k));
            }
        }
    }
    v
}

/// Structure constants from a coefficient vector over [`w3_unknowns`].
pub fn constants_from_vector(dim: usize, x: &[Rational]) -> FrameTensor<Rational> {
    let mut c = FrameTensor::zeros(dim, 1, 2);
    for (&(i, j, k), v) in w3_unknowns(dim).iter().zip(x) {
        c.set(&[k, i, j], v.clone());
        c.set(&[k, j, i], -v.clone());
    }
    c
}

/// `S F` for arbitrary antisymmetric constants, without the Jacobi check.
pub fn cyclic_f(pair: &NordenPair, constants: FrameTensor<Rational>) -> FrameTensor<Rational> {
    let zero = FrameTensor::zeros(pair.g.dim(), 1, 2);
    let mut s = validate_parts(zero, pair.g.clone(), pair.j.clone()).expect("catalogue pairs are Norden");
    s.frame.constants = constants;
    let nabla = levi_civita(&s);
    let f = fundamental_tensor(&s, &nabla);
    f.f.cyclic_sum([0, 1, 2]).expect("rank 3")
}

/// The constraint matrix of `S F(C) = 0`: one column per unknown, one row
/// per component of the cyclic sum.
pub fn w3_constraint_matrix(pair: &NordenPair) -> Matrix<Rational> {
    let dim = pair.g.dim();
    let unknowns = w3_unknowns(dim);
    let columns: Vec<Vec<Rational>> = (0..unknowns.len())
        .map(|col| {
            let mut x = vec![rat(0, 1); unknowns.len()];
            x[col] = rat(1, 1);
            cyclic_f(pair, constants_from_vector(dim, &x)).entries().to_vec()
        })
        .collect();
    let rows = columns[0].len();
    Matrix::from_fn(rows, unknowns.len(), |r, c| columns[c][r].clone())
}

/// Exact basis of the antisymmetric `C` with `S F = 0` for the given pair,
/// as vectors over [`w3_unknowns`]. Jacobi is not imposed.
pub fn solve_w3_linear(pair: &NordenPair) -> Vec<Vec<Rational>> {
    w3_constraint_matrix(pair).nullspace()
}

/// Output of [`sample_structures`].
#[derive(Debug, Clone)]
pub struct SampleStream {
    pub structures: Vec<NordenStructure<Rational>>,
    /// Rejection counts keyed by the failing invariant.
    pub rejections: BTreeMap<String, usize>,
}

/// Random structure constants over the catalogue, drawn from `pool` with
/// most entries zero. The abelian structure on the canonical pair comes
/// first; each further candidate is validated or counted as rejected.
pub fn sample_structures(dim: usize, seed: u64, count: usize, pool: &[Rational]) -> Result<SampleStream, SearchError> {
    check_dim(dim)?;
    let pairs = catalogue(dim, seed);
    let canon = &pairs[0];
    let abelian = validate_parts(FrameTensor::zeros(dim, 1, 2), canon.g.clone(), canon.j.clone())
        .expect("canonical pair is Norden");
    let outcomes: Vec<Result<NordenStructure<Rational>, StructureError>> = (1..count)
        .into_par_iter()
        .map(|t| {
            let mut rng = stream(seed, t as u64);
            let pair = pairs.choose(&mut rng).expect("non-empty catalogue");
            let x: Vec<Rational> = w3_unknowns(dim)
                .iter()
                .map(|_| if rng.random_bool(0.15) { pool.choose(&mut rng).cloned().unwrap_or_default() } else { rat(0, 1) })
                .collect();
            validate_parts(constants_from_vector(dim, &x), pair.g.clone(), pair.j.clone())
        })
        .collect();
    let mut structures = Vec::new();
    if count > 0 {
        structures.push(abelian);
    }
    let mut rejections = BTreeMap::new();
    for o in outcomes {
        match o {
            Ok(s) => structures.push(s),
            Err(e) => *rejections.entry(e.kind().to_string()).or_insert(0) += 1,
        }
    }
    Ok(SampleStream { structures, rejections })
}

fn stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone)]
pub struct HuntConfig {
    pub target: Target,
    pub dim: usize,
    pub seed: u64,
    pub budget: usize,
    pub max_hits: usize,
    pub pool: Vec<Rational>,
}

impl HuntConfig {
    pub fn new(target: Target, dim: usize, seed: u64) -> Self {
        HuntConfig { target, dim, seed, budget: DEFAULT_BUDGET, max_hits: DEFAULT_MAX_HITS, pool: default_pool() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HuntSummary {
    pub target: Target,
    pub dim: usize,
    pub seed: u64,
    pub budget: usize,
    pub tries: usize,
    pub hits: Vec<PathBuf>,
    /// Distinct certified examples found, including ones beyond `max_hits`.
    pub distinct: usize,
    pub rejections: BTreeMap<String, usize>,
}

impl HuntSummary {
    pub fn budget_exhausted(&self) -> bool {
        self.hits.is_empty()
    }

    /// Stable text form; file names only, so it does not depend on where
    /// the output directory lives.
    pub fn render(&self) -> String {
        let mut out = String::new();
        writeln!(out, "target {}", self.target).unwrap();
        writeln!(out, "dim {}", self.dim).unwrap();
        writeln!(out, "seed {}", self.seed).unwrap();
        writeln!(out, "budget {}", self.budget).unwrap();
        writeln!(out, "tries {}", self.tries).unwrap();
        writeln!(out, "distinct {}", self.distinct).unwrap();
        writeln!(out, "hits {}", self.hits.len()).unwrap();
        if self.hits.is_empty() {
            writeln!(out, "result: no example found within budget").unwrap();
        }
        for h in &self.hits {
            writeln!(out, "file {}", h.file_name().map(|f| f.to_string_lossy()).unwrap_or_default()).unwrap();
        }
        writeln!(out, "rejections").unwrap();
        for (k, v) in &self.rejections {
            writeln!(out, "  {k} {v}").unwrap();
        }
        out
    }
}

enum Outcome {
    Hit(String),
    Reject(&'static str),
}

fn float_jacobi_ok(c: &FrameTensor<Rational>) -> bool {
    let cf = c.convert(|v| v.to_f64());
    let frame = crate::structure::LieFrameSpec { constants: cf };
    let scale = frame.constants.max_abs();
    frame.jacobiator().max_abs() <= FAST_JACOBI_TOL * (1.0 + scale * scale)
}

fn evaluate(cfg: &HuntConfig, pairs: &[NordenPair], bases: &[Vec<Vec<Rational>>], t: usize) -> Outcome {
    let mut rng = stream(cfg.seed, t as u64);
    let which = rng.random_range(0..pairs.len());
    let (pair, basis) = (&pairs[which], &bases[which]);
    if basis.is_empty() {
        return Outcome::Reject("empty-w3-space");
    }
    let k = rng.random_range(1..=3.min(basis.len()));
    let chosen: Vec<&Vec<Rational>> = basis.choose_multiple(&mut rng, k).collect();
    let mut x = vec![rat(0, 1); basis[0].len()];
    for v in chosen {
        let coef = cfg.pool.choose(&mut rng).cloned().unwrap_or_default();
        if coef.is_zero() {
            continue;
        }
        for (xi, vi) in x.iter_mut().zip(v) {
            *xi += coef.clone() * vi;
        }
    }
    if x.iter().all(|v| v.is_zero()) {
        return Outcome::Reject("zero-combination");
    }
    let c = constants_from_vector(cfg.dim, &x);
    if !float_jacobi_ok(&c) {
        return Outcome::Reject("jacobi");
    }
    let s = match validate_parts(c, pair.g.clone(), pair.j.clone()) {
        Ok(s) => s,
        Err(e) => return Outcome::Reject(e.kind()),
    };
    let nabla = levi_civita(&s);
    let f = fundamental_tensor(&s, &nabla);
    let flags = classify(&s, &nabla, &f);
    if flags.is_w0 {
        return Outcome::Reject("kahler");
    }
    if !flags.is_w3 {
        return Outcome::Reject("not-w3");
    }
    let text = export_structure(&s);
    let a = Analysis::compute(s);
    if !cfg.target.accepts(&a) {
        return Outcome::Reject("target-predicate");
    }
    match run_catalogue(&a, None) {
        Ok(r) if !r.has_failures() => Outcome::Hit(text),
        _ => Outcome::Reject("certification"),
    }
}

/// Certifies a structure file from disk against a target: parse, validate,
/// full catalogue without failures, and the target predicate.
pub fn certify_file(path: &Path, target: Target) -> Result<(), String> {
    let text = std::fs::read_to_string(path).map_err(|e| e.to_string())?;
    let raw = parse(&text).map_err(|e| e.to_string())?;
    let s = validate::<Rational>(&raw).map_err(|e| e.to_string())?;
    let a = Analysis::compute(s);
    let report = run_catalogue(&a, None).map_err(|e| e.to_string())?;
    if report.has_failures() {
        return Err("catalogue has failures".into());
    }
    if !target.accepts(&a) {
        return Err(format!("target {target} predicate fails"));
    }
    Ok(())
}

/// Runs the search, writes `<target>-NNN.norden` files and `summary.txt`
/// into `out_dir`, and re-certifies each file from disk. Zero hits is a
/// normal result.
pub fn hunt(cfg: &HuntConfig, out_dir: &Path) -> Result<HuntSummary, SearchError> {
    check_dim(cfg.dim)?;
    let pairs = catalogue(cfg.dim, cfg.seed);
    let bases: Vec<_> = pairs.par_iter().map(solve_w3_linear).collect();
    let outcomes: Vec<Outcome> = (0..cfg.budget).into_par_iter().map(|t| evaluate(cfg, &pairs, &bases, t)).collect();

    let mut rejections = BTreeMap::new();
    let mut seen = BTreeSet::new();
    let mut found = Vec::new();
    for o in outcomes {
        match o {
            Outcome::Hit(text) => {
                if seen.insert(text.clone()) {
                    found.push(text);
                } else {
                    *rejections.entry("duplicate".to_string()).or_insert(0) += 1;
                }
            }
            Outcome::Reject(r) => *rejections.entry(r.to_string()).or_insert(0) += 1,
        }
    }

    let io = |path: &Path, source| SearchError::Io { path: path.display().to_string(), source };
    std::fs::create_dir_all(out_dir).map_err(|e| io(out_dir, e))?;
    let mut hits = Vec::new();
    for (n, text) in found.iter().take(cfg.max_hits).enumerate() {
        let path = out_dir.join(format!("{}-{:03}.norden", cfg.target, n + 1));
        let body = format!("# target {}, dim {}, seed {}\n{text}", cfg.target, cfg.dim, cfg.seed);
        std::fs::write(&path, body).map_err(|e| io(&path, e))?;
        certify_file(&path, cfg.target)
            .map_err(|reason| SearchError::Recertification { path: path.display().to_string(), reason })?;
        hits.push(path);
    }
    let summary = HuntSummary {
        target: cfg.target,
        dim: cfg.dim,
        seed: cfg.seed,
        budget: cfg.budget,
        tries: cfg.budget,
        hits,
        distinct: found.len(),
        rejections,
    };
    let spath = out_dir.join("summary.txt");
    std::fs::write(&spath, summary.render()).map_err(|e| io(&spath, e))?;
    Ok(summary)
}
