//! Corpus access and naive nested-loop oracles.
//!
//! The oracles read only the raw entries of `C`, `g`, `J` and recompute
//! everything with explicit loops and their own elimination, so they share
//! no code with the library beyond entry access.

#![allow(dead_code, clippy::needless_range_loop)]

use std::path::PathBuf;

use norden::field::Rational;
use norden::format::parse;
use norden::structure::validate;
use norden::NordenStructure;
use num::{One, Zero};

pub fn corpus_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus")
}

/// Every corpus file, sorted by name.
pub fn corpus_files() -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|x| x == "norden"))
        .collect();
    v.sort();
    v
}

pub fn load(path: &std::path::Path) -> NordenStructure<Rational> {
    validate(&parse(&std::fs::read_to_string(path).unwrap()).unwrap()).unwrap()
}

pub fn corpus() -> Vec<(String, NordenStructure<Rational>)> {
    corpus_files()
        .into_iter()
        .map(|p| (p.file_stem().unwrap().to_string_lossy().into_owned(), load(&p)))
        .collect()
}

type R = Rational;

fn half() -> R {
    R::new(1.into(), 2.into())
}

/// Plain copies of the defining data.
pub struct Raw {
    pub n: usize,
    /// `c[k][i][j] = C^k_{ij}`
    pub c: Vec<Vec<Vec<R>>>,
    pub g: Vec<Vec<R>>,
    pub gi: Vec<Vec<R>>,
    /// `j[a][b] = J^a_b`
    pub j: Vec<Vec<R>>,
}

impl Raw {
    pub fn of(s: &NordenStructure<R>) -> Raw {
        let n = s.dim();
        let c = (0..n)
            .map(|k| (0..n).map(|i| (0..n).map(|j| s.frame.c(k, i, j).clone()).collect()).collect())
            .collect();
        let g: Vec<Vec<R>> = (0..n).map(|a| (0..n).map(|b| s.g()[[a, b]].clone()).collect()).collect();
        let j = (0..n).map(|a| (0..n).map(|b| s.j[[a, b]].clone()).collect()).collect();
        let gi = invert(&g);
        Raw { n, c, g, gi, j }
    }
}

/// Gauss-Jordan on an augmented copy.
pub fn solve(a: &[Vec<R>], b: &[R]) -> Vec<R> {
    let n = a.len();
    let mut m: Vec<Vec<R>> = a.iter().zip(b).map(|(row, v)| row.iter().cloned().chain([v.clone()]).collect()).collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero()).expect("nonsingular");
        m.swap(col, p);
        let piv = m[col][col].clone();
        for x in m[col].iter_mut() {
            *x = x.clone() / piv.clone();
        }
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = m[r][col].clone();
                for c in 0..=n {
                    let v = m[col][c].clone() * f.clone();
                    m[r][c] -= v;
                }
            }
        }
    }
    m.into_iter().map(|row| row[n].clone()).collect()
}

pub fn invert(a: &[Vec<R>]) -> Vec<Vec<R>> {
    let n = a.len();
    let cols: Vec<Vec<R>> = (0..n)
        .map(|c| solve(a, &(0..n).map(|r| if r == c { R::one() } else { R::zero() }).collect::<Vec<_>>()))
        .collect();
    (0..n).map(|r| (0..n).map(|c| cols[c][r].clone()).collect()).collect()
}

/// `gamma[i][j][k]`: coefficient of `e_k` in `∇_{e_i} e_j`, from one
/// linear solve per pair `(i, j)` of the Koszul system.
pub fn gamma(raw: &Raw) -> Vec<Vec<Vec<R>>> {
    let n = raw.n;
    // g([e_a, e_b], e_l)
    let br = |a: usize, b: usize, l: usize| -> R {
        let mut s = R::zero();
        for k in 0..n {
            s += raw.c[k][a][b].clone() * raw.g[k][l].clone();
        }
        s
    };
    let mut out = vec![vec![vec![R::zero(); n]; n]; n];
    for i in 0..n {
        for j in 0..n {
            let rhs: Vec<R> = (0..n).map(|l| half() * (br(i, j, l) - br(j, l, i) + br(l, i, j))).collect();
            out[i][j] = solve(&raw.g, &rhs);
        }
    }
    out
}

/// `∇_{e_i}` applied to a vector.
fn apply(gm: &[Vec<Vec<R>>], i: usize, v: &[R]) -> Vec<R> {
    let n = v.len();
    let mut out = vec![R::zero(); n];
    for (a, va) in v.iter().enumerate() {
        if va.is_zero() {
            continue;
        }
        for c in 0..n {
            out[c] += va.clone() * gm[i][a][c].clone();
        }
    }
    out
}

fn j_apply(raw: &Raw, v: &[R]) -> Vec<R> {
    (0..raw.n).map(|a| (0..raw.n).map(|b| raw.j[a][b].clone() * v[b].clone()).fold(R::zero(), |x, y| x + y)).collect()
}

fn g_of(raw: &Raw, u: &[R], v: &[R]) -> R {
    let mut s = R::zero();
    for a in 0..raw.n {
        for b in 0..raw.n {
            s += u[a].clone() * raw.g[a][b].clone() * v[b].clone();
        }
    }
    s
}

fn unit(n: usize, i: usize) -> Vec<R> {
    (0..n).map(|k| if k == i { R::one() } else { R::zero() }).collect()
}

/// `(∇_{e_i} J) e_j` as a vector.
pub fn nabla_j(raw: &Raw, gm: &[Vec<Vec<R>>], i: usize, j: usize) -> Vec<R> {
    let ej = unit(raw.n, j);
    let a = apply(gm, i, &j_apply(raw, &ej));
    let b = j_apply(raw, &apply(gm, i, &ej));
    a.into_iter().zip(b).map(|(x, y)| x - y).collect()
}

/// `F[i][j][k] = g((∇_{e_i} J) e_j, e_k)`.
pub fn f_tensor(raw: &Raw, gm: &[Vec<Vec<R>>]) -> Vec<R> {
    let n = raw.n;
    let mut out = Vec::with_capacity(n * n * n);
    for i in 0..n {
        for j in 0..n {
            let v = nabla_j(raw, gm, i, j);
            for k in 0..n {
                out.push(g_of(raw, &v, &unit(n, k)));
            }
        }
    }
    out
}

/// B-connection coefficients: `D_{e_i} e_j = ∇_{e_i} e_j + 1/2 (∇_{e_i} J) J e_j`.
pub fn b_gamma(raw: &Raw, gm: &[Vec<Vec<R>>]) -> Vec<Vec<Vec<R>>> {
    let n = raw.n;
    let mut out = gm.to_vec();
    for i in 0..n {
        // (∇_i J) as a matrix: column b is (∇_i J) e_b
        let cols: Vec<Vec<R>> = (0..n).map(|b| nabla_j(raw, gm, i, b)).collect();
        for j in 0..n {
            let jej = j_apply(raw, &unit(n, j));
            for c in 0..n {
                let mut s = R::zero();
                for b in 0..n {
                    s += cols[b][c].clone() * jej[b].clone();
                }
                out[i][j][c] += half() * s;
            }
        }
    }
    out
}

/// `R[i][j][k][l] = g(∇_i ∇_j e_k - ∇_j ∇_i e_k - ∇_{[e_i,e_j]} e_k, e_l)`.
pub fn curvature(raw: &Raw, gm: &[Vec<Vec<R>>]) -> Vec<R> {
    let n = raw.n;
    let mut out = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                let ek = unit(n, k);
                let a = apply(gm, i, &apply(gm, j, &ek));
                let b = apply(gm, j, &apply(gm, i, &ek));
                let mut v: Vec<R> = a.into_iter().zip(b).map(|(x, y)| x - y).collect();
                for m in 0..n {
                    let c = raw.c[m][i][j].clone();
                    if c.is_zero() {
                        continue;
                    }
                    let d = apply(gm, m, &ek);
                    for (vc, dc) in v.iter_mut().zip(d) {
                        *vc -= c.clone() * dc;
                    }
                }
                for l in 0..n {
                    out.push(g_of(raw, &v, &unit(n, l)));
                }
            }
        }
    }
    out
}

/// `(∇_{e_i} F)(e_j, e_k, e_l)` stored `[i, j, k, l]`.
pub fn nabla_f(raw: &Raw, gm: &[Vec<Vec<R>>], f: &[R]) -> Vec<R> {
    let n = raw.n;
    let fv = |a: usize, b: usize, c: usize| f[(a * n + b) * n + c].clone();
    let mut out = Vec::with_capacity(n.pow(4));
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for l in 0..n {
                    let mut s = R::zero();
                    for m in 0..n {
                        s -= gm[i][j][m].clone() * fv(m, k, l);
                        s -= gm[i][k][m].clone() * fv(j, m, l);
                        s -= gm[i][l][m].clone() * fv(j, k, m);
                    }
                    out.push(s);
                }
            }
        }
    }
    out
}

/// `ρ[y][z] = Σ g^{ij} L(e_i, y, z, e_j)`, flat.
pub fn ricci(raw: &Raw, l: &[R]) -> Vec<R> {
    let n = raw.n;
    let lv = |a: usize, b: usize, c: usize, d: usize| l[((a * n + b) * n + c) * n + d].clone();
    let mut out = Vec::with_capacity(n * n);
    for y in 0..n {
        for z in 0..n {
            let mut s = R::zero();
            for i in 0..n {
                for j in 0..n {
                    s += raw.gi[i][j].clone() * lv(i, y, z, j);
                }
            }
            out.push(s);
        }
    }
    out
}

pub fn trace(raw: &Raw, b: &[R]) -> R {
    let n = raw.n;
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            s += raw.gi[i][j].clone() * b[i * n + j].clone();
        }
    }
    s
}

/// `τ** = Σ g^{ij} g^{ks} R(e_i, e_k, J e_s, J e_j)`.
pub fn tau_star_star(raw: &Raw, r: &[R]) -> R {
    let n = raw.n;
    let rv = |a: usize, b: usize, c: usize, d: usize| r[((a * n + b) * n + c) * n + d].clone();
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let w = raw.gi[i][j].clone() * raw.gi[k][t].clone();
                    if w.is_zero() {
                        continue;
                    }
                    // R(e_i, e_k, J e_t, J e_j) = Σ J^a_t J^b_j R(i,k,a,b)
                    for a in 0..n {
                        for b in 0..n {
                            let jj = raw.j[a][t].clone() * raw.j[b][j].clone();
                            if !jj.is_zero() {
                                s += w.clone() * jj * rv(i, k, a, b);
                            }
                        }
                    }
                }
            }
        }
    }
    s
}

/// `‖∇J‖² = Σ g^{ij} g^{ks} g((∇_i J) e_k, (∇_j J) e_s)`.
pub fn norm_nabla_j(raw: &Raw, gm: &[Vec<Vec<R>>]) -> R {
    let n = raw.n;
    let v: Vec<Vec<Vec<R>>> = (0..n).map(|i| (0..n).map(|k| nabla_j(raw, gm, i, k)).collect()).collect();
    let mut s = R::zero();
    for i in 0..n {
        for j in 0..n {
            for k in 0..n {
                for t in 0..n {
                    let w = raw.gi[i][j].clone() * raw.gi[k][t].clone();
                    if !w.is_zero() {
                        s += w * g_of(raw, &v[i][k], &v[j][t]);
                    }
                }
            }
        }
    }
    s
}

/// Naive cyclic sum over the first three slots of a flat rank-`rank` tensor.
pub fn cyclic_first_three(n: usize, rank: usize, t: &[R]) -> Vec<R> {
    let total = n.pow(rank as u32);
    let idx = |ix: &[usize]| ix.iter().fold(0, |acc, &v| acc * n + v);
    (0..total)
        .map(|flat| {
            let mut ix = vec![0; rank];
            let mut f = flat;
            for p in (0..rank).rev() {
                ix[p] = f % n;
                f /= n;
            }
            let mut a = ix.clone();
            let mut s = t[idx(&a)].clone();
            a[..3].rotate_left(1);
            s += t[idx(&a)].clone();
            a[..3].rotate_left(1);
            s += t[idx(&a)].clone();
            s
        })
        .collect()
}

/// Rank by plain row reduction.
pub fn rank(mut m: Vec<Vec<R>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        for i in r + 1..rows {
            if !m[i][c].is_zero() {
                let f = m[i][c].clone() / m[r][c].clone();
                for k in c..cols {
                    let v = m[r][k].clone() * f.clone();
                    m[i][k] -= v;
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Raw data with the structure constants replaced; `c` need not satisfy
/// Jacobi.
pub fn with_constants(base: &Raw, c: Vec<Vec<Vec<R>>>) -> Raw {
    Raw { n: base.n, c, g: base.g.clone(), gi: base.gi.clone(), j: base.j.clone() }
}
