//! Finitely presented modules `coker(D: R^s -> R^t)` over the session ring.
//!
//! Modules are presented over the polynomial ring `S`: the ideal `I` is
//! adjoined to every component, and the full relation module is stored as
//! its reduced Gröbner basis. Two modules with the same rank and the same
//! relation module therefore compare equal.

mod map;
mod ops;
mod resolution;

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::groebner;
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

pub use map::{ModuleMap, SesCheck, ShortExactSequence};
pub use ops::{
    annihilates, annihilator, cokernel, direct_sum, ext, hom_module, homology_at, k_dimension, kernel,
    nonfree_locus_ideal, power, split_extension, tensor, transpose, DirectSum, HomModule, Subquotient,
};
pub use resolution::{free_resolution, prune_generators, syzygy, Resolution};
pub(crate) use ops::ext_with;

#[derive(Clone)]
pub struct FPModule {
    ring: Arc<Ring>,
    rank: usize,
    rels: Vec<FreeVector>,
}

impl PartialEq for FPModule {
    fn eq(&self, other: &Self) -> bool {
        self.rank == other.rank
            && self.rels == other.rels
            && (Arc::ptr_eq(&self.ring, &other.ring) || *self.ring == *other.ring)
    }
}

impl Eq for FPModule {}

impl fmt::Debug for FPModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FPModule")
            .field("rank", &self.rank)
            .field("rels", &self.presentation().iter().map(|v| v.to_canonical(&self.ring)).collect::<Vec<_>>())
            .finish()
    }
}

/// `F_p`-dimension of a module.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Dimension {
    Finite(u64),
    Infinite,
}

impl Dimension {
    pub fn is_finite(self) -> bool {
        matches!(self, Dimension::Finite(_))
    }
}

impl fmt::Display for Dimension {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Dimension::Finite(n) => write!(f, "{n}"),
            Dimension::Infinite => write!(f, "inf"),
        }
    }
}

/// `I * e_j` for every component `j`.
pub(crate) fn ideal_block(ring: &Ring, rank: usize) -> Vec<FreeVector> {
    let mut out = Vec::with_capacity(rank * ring.ideal().len());
    for j in 0..rank {
        for g in ring.ideal() {
            out.push(FreeVector::basis_multiple(rank, j, g.clone()));
        }
    }
    out
}

/// Canonical generators of the submodule spanned by `vs` modulo `I`: the
/// reduced Gröbner basis of `vs + I^rank`, minus the elements lying in
/// `I^rank`.
pub(crate) fn canonical_generators(ring: &Ring, rank: usize, vs: &[FreeVector]) -> Vec<FreeVector> {
    let mut gens: Vec<FreeVector> = vs.iter().filter(|v| !v.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Vec::new();
    }
    gens.extend(ideal_block(ring, rank));
    groebner::buchberger(ring, &gens)
        .into_iter()
        .map(|v| v.reduce_mod_ideal(ring))
        .filter(|v| !v.is_zero())
        .collect()
}

impl FPModule {
    /// The module `S^rank / (relations + I^rank)`.
    pub fn new(ring: Arc<Ring>, rank: usize, relations: &[FreeVector]) -> Result<Self> {
        for r in relations {
            if r.rank() != rank {
                return Err(Error::AmbientMismatch { expected: rank, found: r.rank() });
            }
        }
        let mut gens: Vec<FreeVector> = relations.iter().filter(|v| !v.is_zero()).cloned().collect();
        gens.extend(ideal_block(&ring, rank));
        let rels = groebner::buchberger(&ring, &gens);
        Ok(FPModule { ring, rank, rels })
    }

    /// Builds a module from relations given as canonical polynomial strings.
    pub fn from_strings(ring: Arc<Ring>, rank: usize, relations: &[Vec<&str>]) -> Result<Self> {
        let vs = relations
            .iter()
            .map(|r| {
                r.iter()
                    .map(|s| Poly::parse(&ring, s))
                    .collect::<Result<Vec<_>>>()
                    .map(FreeVector::new)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, rank, &vs)
    }

    pub fn free(ring: Arc<Ring>, rank: usize) -> Self {
        Self::new(ring, rank, &[]).expect("free module")
    }

    pub fn zero(ring: Arc<Ring>) -> Self {
        FPModule { ring, rank: 0, rels: Vec::new() }
    }

    /// The cyclic module `R / (gens)`.
    pub fn cyclic(ring: Arc<Ring>, gens: &[Poly]) -> Self {
        let vs: Vec<FreeVector> = gens.iter().cloned().map(FreeVector::scalar).collect();
        Self::new(ring, 1, &vs).expect("rank 1")
    }

    #[inline]
    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    /// Number of generators `t` (the module is a quotient of `R^t`).
    #[inline]
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// The full relation module (including `I^t`) as a reduced Gröbner basis.
    pub fn relations(&self) -> &[FreeVector] {
        &self.rels
    }

    /// Relations not already in `I^t`, reduced modulo `I`: the columns of a
    /// presentation matrix over `R`.
    pub fn presentation(&self) -> Vec<FreeVector> {
        if self.ring.is_polynomial_ring() {
            return self.rels.clone();
        }
        self.rels
            .iter()
            .map(|v| v.reduce_mod_ideal(&self.ring))
            .filter(|v| !v.is_zero())
            .collect()
    }

    /// Whether the presentation has no relations beyond `I^t`.
    pub fn is_free_presentation(&self) -> bool {
        self.presentation().is_empty()
    }

    /// Normal form of `v` modulo the relations.
    pub fn reduce(&self, v: &FreeVector) -> FreeVector {
        debug_assert_eq!(v.rank(), self.rank);
        groebner::normal_form(&self.ring, v, &self.rels).expect("rank checked")
    }

    pub fn contains_zero(&self, v: &FreeVector) -> bool {
        self.reduce(v).is_zero()
    }

    /// A module is zero iff every generator reduces to zero.
    pub fn is_zero(&self) -> bool {
        (0..self.rank).all(|j| self.contains_zero(&FreeVector::unit(&self.ring, self.rank, j)))
    }

    /// Whether the module is free: after eliminating redundant generators
    /// the presentation has no relations left.
    pub fn is_free(&self) -> bool {
        let (_, rels) = prune_generators(&self.ring, self.rank, &self.presentation());
        rels.is_empty()
    }

    pub fn unit(&self, j: usize) -> FreeVector {
        FreeVector::unit(&self.ring, self.rank, j)
    }

    /// Leading monomials of the relation basis whose leading term lies in
    /// component `j`.
    fn staircase_leads(&self, j: usize) -> Vec<&Monomial> {
        self.rels
            .iter()
            .filter_map(|g| g.lead().and_then(|(c, m, _)| (c == j).then_some(m)))
            .collect()
    }

    /// `F_p`-dimension, counted as standard (component, monomial) pairs.
    pub fn dimension(&self) -> Dimension {
        let nvars = self.ring.nvars();
        let mut total = 0u64;
        for j in 0..self.rank {
            let leads = self.staircase_leads(j);
            let mut bounds = vec![0u16; nvars];
            for (v, b) in bounds.iter_mut().enumerate() {
                let pure = leads
                    .iter()
                    .filter(|m| m.exponents().iter().enumerate().all(|(w, &e)| w == v || e == 0))
                    .map(|m| m.exponents()[v])
                    .min();
                match pure {
                    Some(e) => *b = e,
                    None => return Dimension::Infinite,
                }
            }
            total += count_standard_in_box(&leads, &bounds);
        }
        Dimension::Finite(total)
    }

    /// Number of standard monomials of each total degree `0..=bound`, summed
    /// over components.
    pub fn staircase_counts(&self, bound: u32) -> Vec<u64> {
        let nvars = self.ring.nvars();
        let mut counts = vec![0u64; bound as usize + 1];
        for j in 0..self.rank {
            let leads = self.staircase_leads(j);
            for (d, slot) in counts.iter_mut().enumerate() {
                for_each_monomial_of_degree(nvars, d as u32, &mut |m| {
                    if !leads.iter().any(|l| l.divides(m)) {
                        *slot += 1;
                    }
                });
            }
        }
        counts
    }

    /// Text form `module <name> rank=<t> rels=[[...],[...]]`.
    pub fn to_text(&self, name: &str) -> String {
        let rels: Vec<String> = self
            .presentation()
            .iter()
            .map(|v| format!("[{}]", v.to_canonical(&self.ring).join(", ")))
            .collect();
        format!("module {name} rank={} rels=[{}]", self.rank, rels.join(", "))
    }

    /// Presentation columns as canonical strings.
    pub fn canonical_relations(&self) -> Vec<Vec<String>> {
        self.presentation().iter().map(|v| v.to_canonical(&self.ring)).collect()
    }
}

fn count_standard_in_box(leads: &[&Monomial], bounds: &[u16]) -> u64 {
    let n = bounds.len();
    let mut exps = vec![0u16; n];
    let mut count = 0u64;
    if bounds.contains(&0) {
        return 0;
    }
    loop {
        let m = Monomial::from_exponents(&exps);
        if !leads.iter().any(|l| l.divides(&m)) {
            count += 1;
        }
        let mut v = 0;
        loop {
            if v == n {
                return count;
            }
            exps[v] += 1;
            if exps[v] < bounds[v] {
                break;
            }
            exps[v] = 0;
            v += 1;
        }
    }
}

fn for_each_monomial_of_degree(nvars: usize, d: u32, f: &mut dyn FnMut(&Monomial)) {
    fn rec(exps: &mut Vec<u16>, var: usize, left: u32, f: &mut dyn FnMut(&Monomial)) {
        if var + 1 == exps.len() {
            exps[var] = left as u16;
            f(&Monomial::from_exponents(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[var] = e as u16;
            rec(exps, var + 1, left - e, f);
        }
        exps[var] = 0;
    }
    let mut exps = vec![0u16; nvars];
    rec(&mut exps, 0, d, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;

    pub(crate) fn truncated() -> Arc<Ring> {
        Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap()
    }

    #[test]
    fn dimensions_over_truncated_line() {
        let a = truncated();
        let x = a.var(0);
        assert_eq!(FPModule::cyclic(a.clone(), std::slice::from_ref(&x)).dimension(), Dimension::Finite(1));
        assert_eq!(FPModule::free(a.clone(), 1).dimension(), Dimension::Finite(3));
        assert_eq!(FPModule::free(a.clone(), 2).dimension(), Dimension::Finite(6));
        assert_eq!(FPModule::zero(a).dimension(), Dimension::Finite(0));
    }

    #[test]
    fn infinite_dimension() {
        let r = Ring::polynomial(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let m = FPModule::cyclic(r.clone(), &[r.var(0)]);
        assert_eq!(m.dimension(), Dimension::Infinite);
        assert_eq!(m.staircase_counts(3), vec![1, 1, 1, 1]);
        assert_eq!(FPModule::free(r, 1).staircase_counts(2), vec![1, 2, 3]);
    }

    #[test]
    fn zero_detection() {
        let a = truncated();
        let m = FPModule::cyclic(a.clone(), &[Poly::parse(&a, "x + 1").unwrap()]);
        // x + 1 is a unit in F_7[x]/(x^3)
        assert!(m.is_zero());
        assert!(!FPModule::cyclic(a.clone(), &[a.var(0)]).is_zero());
    }

    #[test]
    fn text_form() {
        let a = truncated();
        let m = FPModule::from_strings(a, 2, &[vec!["x", "0"], vec!["0", "x^2"]]).unwrap();
        assert_eq!(m.to_text("M"), "module M rank=2 rels=[[0, x^2], [x, 0]]");
        assert!(!m.is_free());
    }
}
