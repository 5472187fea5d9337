//! Elements of free modules `S^t`.

use std::cmp::Ordering;

use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;

/// A vector of `t` polynomials. Terms are ordered position-over-term: a
/// lower component index beats any monomial comparison, so the leading term
/// sits in the first nonzero component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeVector(Vec<Poly>);

impl FreeVector {
    pub fn zero(rank: usize) -> Self {
        FreeVector(vec![Poly::zero(); rank])
    }

    pub fn new(components: Vec<Poly>) -> Self {
        FreeVector(components)
    }

    /// A rank-one vector wrapping a polynomial.
    pub fn scalar(f: Poly) -> Self {
        FreeVector(vec![f])
    }

    pub fn unit(ring: &Ring, rank: usize, i: usize) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = Poly::one(ring);
        v
    }

    /// `f * e_i`.
    pub fn basis_multiple(rank: usize, i: usize, f: Poly) -> Self {
        let mut v = Self::zero(rank);
        v.0[i] = f;
        v
    }

    #[inline]
    pub fn rank(&self) -> usize {
        self.0.len()
    }

    #[inline]
    pub fn components(&self) -> &[Poly] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Poly> {
        self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> &Poly {
        &self.0[i]
    }

    pub fn set(&mut self, i: usize, f: Poly) {
        self.0[i] = f;
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Poly::is_zero)
    }

    /// `(component, monomial, coefficient)` of the leading term.
    pub fn lead(&self) -> Option<(usize, &Monomial, u32)> {
        self.0
            .iter()
            .enumerate()
            .find_map(|(i, f)| f.lead().map(|(m, c)| (i, m, c)))
    }

    pub fn lead_component(&self) -> Option<usize> {
        self.0.iter().position(|f| !f.is_zero())
    }

    /// Number of components that are nonzero.
    pub fn support_size(&self) -> usize {
        self.0.iter().filter(|f| !f.is_zero()).count()
    }

    pub fn add(&self, ring: &Ring, other: &FreeVector) -> FreeVector {
        debug_assert_eq!(self.rank(), other.rank());
        FreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a.add(ring, b)).collect())
    }

    pub fn sub(&self, ring: &Ring, other: &FreeVector) -> FreeVector {
        debug_assert_eq!(self.rank(), other.rank());
        FreeVector(self.0.iter().zip(&other.0).map(|(a, b)| a.sub(ring, b)).collect())
    }

    pub fn neg(&self, ring: &Ring) -> FreeVector {
        FreeVector(self.0.iter().map(|a| a.neg(ring)).collect())
    }

    pub fn scale(&self, ring: &Ring, c: u32) -> FreeVector {
        FreeVector(self.0.iter().map(|a| a.scale(ring, c)).collect())
    }

    pub fn mul_poly(&self, ring: &Ring, f: &Poly) -> FreeVector {
        FreeVector(self.0.iter().map(|a| a.mul(ring, f)).collect())
    }

    pub fn mul_term(&self, ring: &Ring, m: &Monomial, c: u32) -> FreeVector {
        FreeVector(self.0.iter().map(|a| a.mul_term(ring, m, c)).collect())
    }

    /// `self - c * m * g`; only components from `g`'s leading component on
    /// are touched.
    pub fn sub_mul_term(&self, ring: &Ring, c: u32, m: &Monomial, g: &FreeVector) -> FreeVector {
        let mut out = self.0.clone();
        for (i, gi) in g.0.iter().enumerate() {
            if !gi.is_zero() {
                out[i] = out[i].sub_mul_term(ring, c, m, gi);
            }
        }
        FreeVector(out)
    }

    pub fn monic(&self, ring: &Ring) -> FreeVector {
        match self.lead() {
            None => self.clone(),
            Some((_, _, 1)) => self.clone(),
            Some((_, _, c)) => self.scale(ring, ring.field().inv(c)),
        }
    }

    /// Concatenation `(self, other)` in `S^{s+t}`.
    pub fn concat(&self, other: &FreeVector) -> FreeVector {
        let mut v = self.0.clone();
        v.extend(other.0.iter().cloned());
        FreeVector(v)
    }

    /// Components `range` as a new vector.
    pub fn slice(&self, range: std::ops::Range<usize>) -> FreeVector {
        FreeVector(self.0[range].to_vec())
    }

    /// Reduces every component modulo the ring's ideal.
    pub fn reduce_mod_ideal(&self, ring: &Ring) -> FreeVector {
        FreeVector(self.0.iter().map(|f| ring.reduce(f)).collect())
    }

    pub fn to_canonical(&self, ring: &Ring) -> Vec<String> {
        self.0.iter().map(|f| f.to_canonical(ring)).collect()
    }
}

/// Compares two module terms `(component, monomial)` position-over-term.
#[inline]
pub fn cmp_terms(ring: &Ring, a: (usize, &Monomial), b: (usize, &Monomial)) -> Ordering {
    match b.0.cmp(&a.0) {
        Ordering::Equal => ring.order().cmp(a.1, b.1),
        o => o,
    }
}
