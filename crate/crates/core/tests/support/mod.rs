//! Brute-force model of modules over small finite-dimensional algebras:
//! every module is a finite F_p-vector space, every ring element a
//! multiplication operator, and every dimension comes from row reduction.

#![allow(dead_code)]

use std::sync::Arc;

use kosrec_core::fpmod::{cokernel, ext, kernel, syzygy, Dimension, FPModule, ModuleMap};
use kosrec_core::matrix::Matrix;
use kosrec_core::{FreeVector, MonomialOrder, Poly, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Elem = Vec<u64>;

/// A local algebra with monomial basis `names`; `basis[0]` is 1.
pub struct Alg {
    p: u64,
    names: Vec<&'static str>,
    /// `table[i][j]` is the basis index of `b_i * b_j`, if nonzero.
    table: Vec<Vec<Option<usize>>>,
    /// Basis indices of the variables.
    vars: Vec<usize>,
}

impl Alg {
    pub fn truncated() -> Alg {
        let table = (0..3).map(|i| (0..3).map(|j| (i + j < 3).then_some(i + j)).collect()).collect();
        Alg { p: 7, names: vec!["1", "x", "x^2"], table, vars: vec![1] }
    }

    pub fn square_zero() -> Alg {
        let table = (0..3)
            .map(|i| (0..3).map(|j| if i == 0 { Some(j) } else if j == 0 { Some(i) } else { None }).collect())
            .collect();
        Alg { p: 5, names: vec!["1", "x", "y"], table, vars: vec![1, 2] }
    }

    fn d(&self) -> usize {
        self.names.len()
    }

    fn mul(&self, a: &[u64], b: &[u64]) -> Elem {
        let mut out = vec![0; self.d()];
        for (i, &ai) in a.iter().enumerate() {
            for (j, &bj) in b.iter().enumerate() {
                if let Some(k) = self.table[i][j] {
                    out[k] = (out[k] + ai * bj) % self.p;
                }
            }
        }
        out
    }

    fn basis(&self, j: usize) -> Elem {
        let mut e = vec![0; self.d()];
        e[j] = 1;
        e
    }

    fn to_string(&self, a: &[u64]) -> String {
        let terms: Vec<String> = a
            .iter()
            .zip(&self.names)
            .filter(|(c, _)| **c != 0)
            .map(|(c, n)| if *n == "1" { c.to_string() } else { format!("{c}*{n}") })
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }

    fn random(&self, rng: &mut ChaCha8Rng, in_max_ideal: bool) -> Elem {
        (0..self.d())
            .map(|j| {
                if (j == 0 && in_max_ideal) || rng.gen_bool(0.5) {
                    0
                } else {
                    rng.gen_range(1..self.p)
                }
            })
            .collect()
    }

    /// Multiplies each of the `rank` components of `v` by `a`.
    fn scale(&self, a: &[u64], v: &[u64]) -> Elem {
        v.chunks(self.d()).flat_map(|c| self.mul(a, c)).collect()
    }

    /// F-basis of the A-submodule of `A^rank` generated by `gens`.
    fn a_span(&self, gens: &[Elem]) -> Vec<Elem> {
        let all: Vec<Elem> = gens.iter().flat_map(|g| (0..self.d()).map(move |j| self.scale(&self.basis(j), g))).collect();
        row_basis(&all, self.p)
    }

    /// Minimal A-module generators of an A-closed subspace.
    fn minimal_generators(&self, k: &[Elem]) -> Vec<Elem> {
        let mut current: Vec<Elem> =
            k.iter().flat_map(|v| self.vars.iter().map(move |&x| self.scale(&self.basis(x), v))).collect();
        let mut r = rank(&current, self.p);
        let mut gens = Vec::new();
        for v in k {
            current.push(v.clone());
            let r2 = rank(&current, self.p);
            if r2 > r {
                gens.push(v.clone());
                r = r2;
            } else {
                current.pop();
            }
        }
        gens
    }

    /// Images of the F-basis of `A^cols.len()` under `e_i -> cols[i]`.
    fn images(&self, cols: &[Elem]) -> Vec<Elem> {
        cols.iter().flat_map(|c| (0..self.d()).map(move |j| self.scale(&self.basis(j), c))).collect()
    }
}

fn inv(a: u64, p: u64) -> u64 {
    let mut r = 1;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

/// Reduced row echelon form of the rows, with pivot columns.
fn rref(rows: &[Elem], p: u64) -> (Vec<Elem>, Vec<usize>) {
    let mut m: Vec<Elem> = rows.to_vec();
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(i) = (r..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(r, i);
        let s = inv(m[r][c], p);
        m[r].iter_mut().for_each(|x| *x = *x * s % p);
        for i in 0..m.len() {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                let pivot = m[r].clone();
                for (x, y) in m[i].iter_mut().zip(&pivot) {
                    *x = (*x + (p - f) * y) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    (m, pivots)
}

fn rank(rows: &[Elem], p: u64) -> usize {
    rref(rows, p).1.len()
}

fn row_basis(rows: &[Elem], p: u64) -> Vec<Elem> {
    rref(rows, p).0
}

/// Basis of `{c : sum c_i images[i] = 0}`.
fn nullspace(images: &[Elem], p: u64) -> Vec<Elem> {
    let n = images.len();
    if n == 0 {
        return Vec::new();
    }
    let dim = images[0].len();
    let rows: Vec<Elem> = (0..dim).map(|r| images.iter().map(|v| v[r]).collect()).collect();
    let (red, pivots) = rref(&rows, p);
    (0..n)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![0; n];
            v[free] = 1;
            for (row, &pc) in red.iter().zip(&pivots) {
                v[pc] = (p - row[free]) % p;
            }
            v
        })
        .collect()
}

/// One oracle instance: `M = coker(D)` on `A^t`, `N = coker(E)` on `A^u`
/// and a map `A^t -> N` with columns `f`.
pub struct Case {
    pub t: usize,
    pub d_cols: Vec<Elem>,
    pub u: usize,
    pub e_cols: Vec<Elem>,
    pub f_cols: Vec<Elem>,
}

pub fn random_case(alg: &Alg, rng: &mut ChaCha8Rng) -> Case {
    let t = rng.gen_range(1..=2);
    let u = rng.gen_range(1..=2);
    let vec = |rng: &mut ChaCha8Rng, rank: usize, local: bool| -> Elem {
        (0..rank).flat_map(|_| alg.random(rng, local)).collect()
    };
    let s = rng.gen_range(0..=3);
    let d_cols = (0..s).map(|_| vec(rng, t, true)).collect();
    let es = rng.gen_range(0..=2);
    let e_cols = (0..es)
        .map(|_| {
            let local = rng.gen_bool(0.7);
            vec(rng, u, local)
        })
        .collect();
    let f_cols = (0..t).map(|_| vec(rng, u, false)).collect();
    Case { t, d_cols, u, e_cols, f_cols }
}

fn core_ring(alg: &Alg) -> Arc<Ring> {
    if alg.vars.len() == 1 {
        Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap()
    } else {
        Ring::quotient(5, &["x", "y"], MonomialOrder::Grevlex, &["x^2", "x*y", "y^2"]).unwrap()
    }
}

fn core_vector(alg: &Alg, ring: &Ring, v: &[u64]) -> FreeVector {
    FreeVector::new(v.chunks(alg.d()).map(|c| Poly::parse(ring, &alg.to_string(c)).unwrap()).collect())
}

fn core_module(alg: &Alg, ring: &Arc<Ring>, rank: usize, cols: &[Elem]) -> FPModule {
    let rels: Vec<FreeVector> = cols.iter().map(|c| core_vector(alg, ring, c)).collect();
    FPModule::new(ring.clone(), rank, &rels).unwrap()
}

fn fin(n: usize) -> Dimension {
    Dimension::Finite(n as u64)
}

/// `dim Ext^i(coker D, N)` for `i = 0..=max`, through a resolution built
/// from minimal generators of successive kernels.
pub fn oracle_ext(alg: &Alg, case: &Case, max: usize) -> Vec<usize> {
    let p = alg.p;
    let dd = alg.d();
    // differentials[i] has the columns of d_{i+1}: F_{i+1} -> F_i.
    let mut ranks = vec![case.t];
    let mut diffs: Vec<Vec<Elem>> = vec![case.d_cols.clone()];
    for _ in 0..=max {
        let cols = diffs.last().unwrap();
        let ker = nullspace(&alg.images(cols), p);
        ranks.push(cols.len());
        let gens = alg.minimal_generators(&alg.a_span(&ker));
        diffs.push(gens);
    }
    ranks.push(diffs.last().unwrap().len());
    let w = alg.a_span(&case.e_cols);
    let lifted = |beta: usize| beta * case.u * dd;
    let w_block = |beta: usize| -> Vec<Elem> {
        (0..beta)
            .flat_map(|b| {
                w.iter().map(move |v| {
                    let mut out = vec![0; lifted(beta)];
                    out[b * case.u * dd..(b + 1) * case.u * dd].copy_from_slice(v);
                    out
                })
            })
            .collect()
    };
    // Images of the F-basis of N^{beta_i} lifted, under phi -> phi o d_{i+1}.
    let delta = |i: usize| -> Vec<Elem> {
        let (bi, bj) = (ranks[i], ranks[i + 1]);
        let d = &diffs[i];
        let mut out = Vec::new();
        for r in 0..bi {
            for comp in 0..case.u * dd {
                let mut n_r = vec![0; case.u * dd];
                n_r[comp] = 1;
                let mut img = vec![0; lifted(bj)];
                for (j, col) in d.iter().enumerate() {
                    let coeff = &col[r * dd..(r + 1) * dd];
                    let part = alg.scale(coeff, &n_r);
                    for (k, x) in part.into_iter().enumerate() {
                        let slot = &mut img[j * case.u * dd + k];
                        *slot = (*slot + x) % p;
                    }
                }
                out.push(img);
            }
        }
        out
    };
    let rank_mod = |imgs: Vec<Elem>, wb: &[Elem]| -> usize {
        let mut all = imgs;
        all.extend(wb.iter().cloned());
        rank(&all, p) - rank(wb, p)
    };
    (0..=max)
        .map(|i| {
            let wi = w_block(ranks[i]);
            let wj = w_block(ranks[i + 1]);
            let ker = lifted(ranks[i]) - rank_mod(delta(i), &wj) - rank(&wi, p);
            let im = if i == 0 { 0 } else { rank_mod(delta(i - 1), &wi) };
            ker - im
        })
        .collect()
}

/// `dim Ω^n M` with `Ω^1 = im D` and minimal covers afterwards.
pub fn oracle_syzygy(alg: &Alg, case: &Case, n: usize) -> usize {
    let mut k = alg.a_span(&case.d_cols);
    for _ in 1..n {
        let gens = alg.minimal_generators(&k);
        k = nullspace(&alg.images(&gens), alg.p);
    }
    rank(&k, alg.p)
}

/// Checks `cases` random instances; returns the number of comparisons made.
pub fn check_algebra(alg: Alg, seed: u64, cases: usize) -> usize {
    let mut checks = 0;
    let ring = core_ring(&alg);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dd = alg.d();
    for case_no in 0..cases {
        let case = random_case(&alg, &mut rng);
        let ctx = format!("case {case_no}");
        let m = core_module(&alg, &ring, case.t, &case.d_cols);
        let n = core_module(&alg, &ring, case.u, &case.e_cols);

        let im_d = rank(&alg.a_span(&case.d_cols), alg.p);
        assert_eq!(m.dimension(), fin(case.t * dd - im_d), "{ctx}: dim M");

        let free = FPModule::free(ring.clone(), case.t);
        let cols: Vec<FreeVector> = case.f_cols.iter().map(|c| core_vector(&alg, &ring, c)).collect();
        let f = ModuleMap::new(&free, &n, Matrix::from_columns(case.u, &cols)).unwrap();
        let w = alg.a_span(&case.e_cols);
        let mut both = alg.images(&case.f_cols);
        both.extend(w.iter().cloned());
        let image = rank(&both, alg.p) - w.len();
        assert_eq!(kernel(&f).0.dimension(), fin(case.t * dd - image), "{ctx}: kernel");
        assert_eq!(cokernel(&f).dimension(), fin(case.u * dd - w.len() - image), "{ctx}: cokernel");

        for k in 1..=2 {
            assert_eq!(syzygy(&m, k).dimension(), fin(oracle_syzygy(&alg, &case, k)), "{ctx}: syzygy {k}");
        }
        let exts = oracle_ext(&alg, &case, 2);
        for (i, e) in exts.into_iter().enumerate() {
            assert_eq!(ext(&m, &n, i).dimension(), fin(e), "{ctx}: Ext^{i}");
        }
        checks += 9;
    }
    checks
}
