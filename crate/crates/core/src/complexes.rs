//! Bounded chain complexes of finitely presented modules.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fpmod::{direct_sum, homology_at, power, Dimension, DirectSum, FPModule, ModuleMap, Subquotient};
use crate::groebner;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

/// `0 -> C_hi -> ... -> C_lo -> 0` with `d_i: C_i -> C_{i-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Complex {
    ring: Arc<Ring>,
    lo: i32,
    terms: Vec<FPModule>,
    /// `diffs[k]` is `d_{lo+k+1}`.
    diffs: Vec<ModuleMap>,
}

impl Complex {
    /// `terms[k]` sits in degree `lo + k`; `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(lo: i32, terms: Vec<FPModule>, diffs: Vec<ModuleMap>) -> Result<Complex> {
        if terms.is_empty() {
            return Err(Error::InvalidArgument("a complex needs at least one term".into()));
        }
        if diffs.len() + 1 != terms.len() {
            return Err(Error::InvalidArgument("expected one differential between consecutive terms".into()));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.source() != &terms[k + 1] || d.target() != &terms[k] {
                return Err(Error::InvalidArgument(format!("d_{} has the wrong source or target", lo + k as i32 + 1)));
            }
        }
        let ring = terms[0].ring().clone();
        let c = Complex { ring, lo, terms, diffs };
        for i in c.lo + 2..=c.hi() {
            if !c.diff(i - 1).compose(&c.diff(i))?.is_zero() {
                return Err(Error::InvalidArgument(format!("d_{} ∘ d_{i} is not zero", i - 1)));
            }
        }
        Ok(c)
    }

    pub fn concentrated(m: &FPModule, degree: i32) -> Complex {
        Complex { ring: m.ring().clone(), lo: degree, terms: vec![m.clone()], diffs: Vec::new() }
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    #[inline]
    pub fn lo(&self) -> i32 {
        self.lo
    }

    #[inline]
    pub fn hi(&self) -> i32 {
        self.lo + self.terms.len() as i32 - 1
    }

    /// `C_i`; the zero module outside `lo..=hi`.
    pub fn term(&self, i: i32) -> FPModule {
        if i < self.lo || i > self.hi() {
            return FPModule::zero(self.ring.clone());
        }
        self.terms[(i - self.lo) as usize].clone()
    }

    /// `d_i: C_i -> C_{i-1}`; a zero map when either side is outside the
    /// bounds.
    pub fn diff(&self, i: i32) -> ModuleMap {
        if i > self.lo && i <= self.hi() {
            return self.diffs[(i - self.lo - 1) as usize].clone();
        }
        ModuleMap::zero(&self.term(i), &self.term(i - 1))
    }

    pub fn terms(&self) -> &[FPModule] {
        &self.terms
    }

    /// Rechecks `d ∘ d = 0` in every degree.
    pub fn is_complex(&self) -> bool {
        (self.lo + 2..=self.hi()).all(|i| self.diff(i - 1).compose(&self.diff(i)).is_ok_and(|c| c.is_zero()))
    }

    /// `complex lo=<i> hi=<j>` followed by one module line and one matrix line
    /// per degree.
    pub fn to_text(&self, name: &str) -> String {
        let mut out = format!("complex {name} lo={} hi={}\n", self.lo, self.hi());
        for i in self.lo..=self.hi() {
            out.push_str(&self.term(i).to_text(&format!("{name}_{i}")));
            out.push('\n');
            if i > self.lo {
                let rows: Vec<String> = self
                    .diff(i)
                    .matrix()
                    .to_canonical(&self.ring)
                    .into_iter()
                    .map(|r| format!("[{}]", r.join(", ")))
                    .collect();
                out.push_str(&format!("matrix d_{i} = [{}]\n", rows.join(", ")));
            }
        }
        out
    }
}

/// A chain map, with one component per degree in the union of the bounds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexMap {
    source: Complex,
    target: Complex,
    lo: i32,
    components: Vec<ModuleMap>,
}

impl ComplexMap {
    /// `components[k]` acts in degree `lo + k`, where `lo` is the smaller of
    /// the two lower bounds; missing degrees are zero.
    pub fn new(source: &Complex, target: &Complex, components: Vec<ModuleMap>) -> Result<ComplexMap> {
        let lo = source.lo().min(target.lo());
        let hi = source.hi().max(target.hi());
        let mut comps = Vec::with_capacity((hi - lo + 1) as usize);
        for i in lo..=hi {
            let k = (i - lo) as usize;
            let c = match components.get(k) {
                Some(c) => c.clone(),
                None => ModuleMap::zero(&source.term(i), &target.term(i)),
            };
            if c.source() != &source.term(i) || c.target() != &target.term(i) {
                return Err(Error::DegreeMismatch(format!("component in degree {i} has the wrong source or target")));
            }
            comps.push(c);
        }
        let f = ComplexMap { source: source.clone(), target: target.clone(), lo, components: comps };
        for i in lo..=hi + 1 {
            let left = f.component(i - 1).compose(&source.diff(i))?;
            let right = target.diff(i).compose(&f.component(i))?;
            if left != right {
                return Err(Error::InvalidArgument(format!("chain map does not commute in degree {i}")));
            }
        }
        Ok(f)
    }

    pub fn identity(c: &Complex) -> ComplexMap {
        let comps = (c.lo()..=c.hi()).map(|i| ModuleMap::identity(&c.term(i))).collect();
        ComplexMap::new(c, c, comps).expect("identity chain map")
    }

    pub fn zero(source: &Complex, target: &Complex) -> ComplexMap {
        ComplexMap::new(source, target, Vec::new()).expect("zero chain map")
    }

    pub fn source(&self) -> &Complex {
        &self.source
    }

    pub fn target(&self) -> &Complex {
        &self.target
    }

    pub fn component(&self, i: i32) -> ModuleMap {
        let k = i - self.lo;
        if k >= 0 && (k as usize) < self.components.len() {
            return self.components[k as usize].clone();
        }
        ModuleMap::zero(&self.source.term(i), &self.target.term(i))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ComplexMap) -> Result<ComplexMap> {
        if first.target != self.source {
            return Err(Error::DegreeMismatch("chain maps are not composable".into()));
        }
        let (src, tgt) = (&first.source, &self.target);
        let lo = src.lo().min(tgt.lo());
        let hi = src.hi().max(tgt.hi());
        let comps = (lo..=hi)
            .map(|i| self.component(i).compose(&first.component(i)))
            .collect::<Result<Vec<_>>>()?;
        ComplexMap::new(src, tgt, comps)
    }

    /// `H_i` of this map between the retained subquotient presentations.
    pub fn induced_on_homology(&self, i: i32) -> Result<ModuleMap> {
        let hs = homology(&self.source, i);
        let ht = homology(&self.target, i);
        let ring = self.source.ring();
        let di = self.target.term(i);
        let mut denom = self.target.diff(i + 1).matrix().columns();
        denom.extend(di.relations().iter().cloned());
        let denom = FPModule::new(ring.clone(), di.rank(), &denom)?;
        let phi = self.component(i);
        let images: Vec<FreeVector> = hs.gens.columns().iter().map(|g| phi.apply(g)).collect();
        let coeffs = groebner::lift_many(ring, di.rank(), &images, &ht.gens.columns(), denom.relations())
            .ok_or_else(|| Error::InvalidArgument(format!("image of a cycle is not a cycle in degree {i}")))?;
        let cols: Vec<FreeVector> = coeffs.into_iter().map(FreeVector::new).collect();
        ModuleMap::new(&hs.module, &ht.module, Matrix::from_columns(ht.module.rank(), &cols))
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// The `k`-subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(j + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::with_capacity(binomial(n, k));
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// `K(xs, M)`: term `i` is `M^{C(n,i)}` on the lexicographically ordered
/// `i`-subsets, and slot `S ∋ j` maps to `S \ {j}` by `(-1)^pos · x_j`.
pub fn koszul(xs: &[Poly], m: &FPModule) -> Complex {
    let ring = m.ring();
    let n = xs.len();
    let t = m.rank();
    let terms: Vec<FPModule> = (0..=n).map(|i| power(m, binomial(n, i))).collect();
    let mut diffs = Vec::with_capacity(n);
    for i in 1..=n {
        let upper = subsets(n, i);
        let lower = subsets(n, i - 1);
        let mut mat = Matrix::zero(lower.len() * t, upper.len() * t);
        for (col, s) in upper.iter().enumerate() {
            for (pos, &j) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&v| v != j).collect();
                let row = lower.binary_search(&rest).expect("face is a subset");
                let coeff = if pos % 2 == 0 { xs[j].clone() } else { xs[j].neg(ring) };
                for a in 0..t {
                    mat.set(row * t + a, col * t + a, coeff.clone());
                }
            }
        }
        diffs.push(ModuleMap::new(&terms[i], &terms[i - 1], mat).expect("Koszul differential is well defined"));
    }
    Complex::new(0, terms, diffs).expect("Koszul complex")
}

/// `H_i(C)` with the generators of its presentation retained as cycles in
/// `C_i`.
pub fn homology(c: &Complex, i: i32) -> Subquotient {
    homology_at(&c.diff(i + 1), &c.diff(i)).expect("consecutive differentials compose")
}

/// `C ⊗ K(x, R)` together with the degreewise splittings
/// `Z_i = C_i ⊕ C_{i-1}`.
#[derive(Debug, Clone)]
pub struct TensorStep {
    pub complex: Complex,
    /// Per degree `lo..=hi+1` of the result, summands `[C_i, C_{i-1}]`.
    pub sums: Vec<DirectSum>,
}

/// Builds `Z = C ⊗ K(x, R)` with differential
/// `[[d_i, (-1)^{i-1} x], [0, d_{i-1}]]` on `Z_i = C_i ⊕ C_{i-1}`.
pub fn tensor_koszul_one(c: &Complex, x: &Poly) -> TensorStep {
    let ring = c.ring();
    let lo = c.lo();
    let hi = c.hi() + 1;
    let sums: Vec<DirectSum> = (lo..=hi).map(|i| direct_sum(ring, &[&c.term(i), &c.term(i - 1)])).collect();
    let mut diffs = Vec::new();
    for i in lo + 1..=hi {
        let (a, b) = (c.term(i).rank(), c.term(i - 1).rank());
        let bb = c.term(i - 2).rank();
        let sign = if (i - 1).rem_euclid(2) == 0 { x.clone() } else { x.neg(ring) };
        let xid = Matrix::scalar(ring, b, &sign);
        let upper = c.diff(i).matrix().clone();
        let lower = c.diff(i - 1).matrix().clone();
        let mat = Matrix::blocks(&[b, bb], &[a, b], &[vec![Some(&upper), Some(&xid)], vec![None, Some(&lower)]]);
        let (src, tgt) = (&sums[(i - lo) as usize].module, &sums[(i - lo - 1) as usize].module);
        diffs.push(ModuleMap::new(src, tgt, mat).expect("cone differential is well defined"));
    }
    let terms = sums.iter().map(|s| s.module.clone()).collect();
    TensorStep { complex: Complex::new(lo, terms, diffs).expect("d ∘ d = 0 by the sign choice"), sums }
}

/// `f ⊗ K(x, R)` between the two results of [`tensor_koszul_one`]:
/// `f_i ⊕ f_{i-1}` in degree `i`.
pub fn tensor_koszul_map(f: &ComplexMap, x: &Poly) -> Result<ComplexMap> {
    let zs = tensor_koszul_one(f.source(), x).complex;
    let zt = tensor_koszul_one(f.target(), x).complex;
    let lo = zs.lo().min(zt.lo());
    let hi = zs.hi().max(zt.hi());
    let comps = (lo..=hi)
        .map(|i| {
            let (a, b) = (f.component(i), f.component(i - 1));
            let mat = Matrix::block_diagonal(&[a.matrix(), b.matrix()]);
            ModuleMap::new(&zs.term(i), &zt.term(i), mat)
        })
        .collect::<Result<Vec<_>>>()?;
    ComplexMap::new(&zs, &zt, comps)
}

/// `0 -> F -> X -> T -> 0` with `F` the brutal truncation below the top
/// degree and `T` the top term alone.
#[derive(Debug, Clone)]
pub struct Truncation {
    pub lower: Complex,
    pub top: Complex,
    pub inclusion: ComplexMap,
    pub projection: ComplexMap,
    /// Degreewise splittings `X_i -> F_i` and `T_i -> X_i` (not chain maps).
    pub retractions: Vec<ModuleMap>,
    pub sections: Vec<ModuleMap>,
}

pub fn truncation_triangle(x: &Complex) -> Truncation {
    let (lo, hi) = (x.lo(), x.hi());
    let lower = if hi == lo {
        Complex::concentrated(&FPModule::zero(x.ring().clone()), lo)
    } else {
        let terms = (lo..hi).map(|i| x.term(i)).collect();
        let diffs = (lo + 1..hi).map(|i| x.diff(i)).collect();
        Complex::new(lo, terms, diffs).expect("subcomplex of a complex")
    };
    let top = Complex::concentrated(&x.term(hi), hi);
    let inc: Vec<ModuleMap> = (lo..=hi)
        .map(|i| if i < hi { ModuleMap::identity(&x.term(i)) } else { ModuleMap::zero(&lower.term(i), &x.term(i)) })
        .collect();
    let proj: Vec<ModuleMap> = (lo..=hi)
        .map(|i| if i == hi { ModuleMap::identity(&x.term(i)) } else { ModuleMap::zero(&x.term(i), &top.term(i)) })
        .collect();
    let retractions = (lo..=hi)
        .map(|i| if i < hi { ModuleMap::identity(&x.term(i)) } else { ModuleMap::zero(&x.term(i), &lower.term(i)) })
        .collect();
    let sections = (lo..=hi)
        .map(|i| if i == hi { ModuleMap::identity(&x.term(i)) } else { ModuleMap::zero(&top.term(i), &x.term(i)) })
        .collect();
    Truncation {
        inclusion: ComplexMap::new(&lower, x, inc).expect("inclusion of the brutal truncation"),
        projection: ComplexMap::new(x, &top, proj).expect("projection onto the top term"),
        lower,
        top,
        retractions,
        sections,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Mismatch,
    Weak,
    HomologyMatch,
    QuasiIso,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Mismatch => "MISMATCH",
            Verdict::Weak => "WEAK",
            Verdict::HomologyMatch => "HOMOLOGY_MATCH",
            Verdict::QuasiIso => "QUASI_ISO",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeReport {
    pub degree: i32,
    pub left: Dimension,
    pub right: Dimension,
    /// Whether `H_i(φ)` is an isomorphism, when a map was supplied.
    pub iso: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub verdict: Verdict,
    pub degrees: Vec<DegreeReport>,
}

impl HomologyReport {
    pub fn dims(&self) -> Vec<(Dimension, Dimension)> {
        self.degrees.iter().map(|d| (d.left, d.right)).collect()
    }
}

/// Compares `H_*(C)` with `H_*(D)`. With a chain map the verdict is
/// `QUASI_ISO` when every induced map is invertible; otherwise dimensions
/// decide, and infinite dimensions fall back to staircase counts up to
/// `bound`.
pub fn compare_homology(c: &Complex, d: &Complex, phi: Option<&ComplexMap>, bound: u32) -> Result<HomologyReport> {
    if let Some(f) = phi {
        if f.source() != c || f.target() != d {
            return Err(Error::DegreeMismatch("chain map does not run between the compared complexes".into()));
        }
    }
    let lo = c.lo().min(d.lo());
    let hi = c.hi().max(d.hi());
    let mut degrees = Vec::new();
    let mut all_iso = true;
    let mut finite_match = true;
    let mut any_infinite = false;
    let mut staircase_match = true;
    for i in lo..=hi {
        let hc = homology(c, i).module;
        let hd = homology(d, i).module;
        let (left, right) = (hc.dimension(), hd.dimension());
        let iso = match phi {
            Some(f) => Some(f.induced_on_homology(i)?.is_isomorphism()),
            None => None,
        };
        all_iso &= iso == Some(true);
        if left.is_finite() && right.is_finite() {
            finite_match &= left == right;
        } else {
            any_infinite = true;
            staircase_match &= hc.staircase_counts(bound) == hd.staircase_counts(bound);
        }
        degrees.push(DegreeReport { degree: i, left, right, iso });
    }
    let verdict = if phi.is_some() && all_iso {
        Verdict::QuasiIso
    } else if !finite_match || !staircase_match {
        Verdict::Mismatch
    } else if any_infinite {
        Verdict::Weak
    } else {
        Verdict::HomologyMatch
    };
    Ok(HomologyReport { verdict, degrees })
}
