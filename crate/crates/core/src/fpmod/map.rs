use crate::error::{Error, Result};
use crate::fpmod::{cokernel, kernel, FPModule};
use crate::groebner;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

/// A homomorphism of finitely presented modules given by a matrix on
/// generators. The matrix is kept in normal form modulo the target, so two
/// maps are equal iff their matrices are equal.
///
/// `witness` is a matrix `W` with `matrix * D_source = D_target * W` holding
/// exactly over the polynomial ring, where `D_*` are the stored relation
/// bases. It certifies that relations go to relations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ModuleMap {
    source: FPModule,
    target: FPModule,
    matrix: Matrix,
    witness: Matrix,
}

impl ModuleMap {
    pub fn new(source: &FPModule, target: &FPModule, matrix: Matrix) -> Result<Self> {
        if !std::sync::Arc::ptr_eq(source.ring(), target.ring()) && **source.ring() != **target.ring() {
            return Err(Error::RingMismatch);
        }
        if matrix.rows() != target.rank() {
            return Err(Error::AmbientMismatch { expected: target.rank(), found: matrix.rows() });
        }
        if matrix.cols() != source.rank() {
            return Err(Error::AmbientMismatch { expected: source.rank(), found: matrix.cols() });
        }
        let ring = source.ring().clone();
        let cols: Vec<FreeVector> = matrix.columns().iter().map(|c| target.reduce(c)).collect();
        let matrix = Matrix::from_columns(target.rank(), &cols);
        let mut witness_cols = Vec::with_capacity(source.relations().len());
        for (k, rel) in source.relations().iter().enumerate() {
            let image = matrix.apply(&ring, rel);
            let (rem, q) = groebner::normal_form_with_quotients(&ring, &image, target.relations())?;
            if !rem.is_zero() {
                return Err(Error::NotWellDefined { column: k });
            }
            witness_cols.push(FreeVector::new(q));
        }
        let witness = Matrix::from_columns(target.relations().len(), &witness_cols);
        Ok(ModuleMap { source: source.clone(), target: target.clone(), matrix, witness })
    }

    pub fn identity(m: &FPModule) -> Self {
        Self::new(m, m, Matrix::identity(m.ring(), m.rank())).expect("identity is well defined")
    }

    pub fn zero(source: &FPModule, target: &FPModule) -> Self {
        Self::new(source, target, Matrix::zero(target.rank(), source.rank())).expect("zero map")
    }

    /// Multiplication by `f` on `m`.
    pub fn scalar(m: &FPModule, f: &Poly) -> Self {
        Self::new(m, m, Matrix::scalar(m.ring(), m.rank(), f)).expect("scalar map")
    }

    #[inline]
    pub fn source(&self) -> &FPModule {
        &self.source
    }

    #[inline]
    pub fn target(&self) -> &FPModule {
        &self.target
    }

    #[inline]
    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    #[inline]
    pub fn witness(&self) -> &Matrix {
        &self.witness
    }

    pub fn ring(&self) -> &Ring {
        self.source.ring()
    }

    /// Rechecks `matrix * D_source == D_target * witness` exactly.
    pub fn verify_witness(&self) -> bool {
        let ring = self.ring();
        let ds = Matrix::from_columns(self.source.rank(), self.source.relations());
        let dt = Matrix::from_columns(self.target.rank(), self.target.relations());
        self.matrix.mul(ring, &ds) == dt.mul(ring, &self.witness)
    }

    pub fn apply(&self, v: &FreeVector) -> FreeVector {
        self.target.reduce(&self.matrix.apply(self.ring(), v))
    }

    /// `self ∘ first`.
    pub fn compose(&self, first: &ModuleMap) -> Result<ModuleMap> {
        if first.target != self.source {
            return Err(Error::InvalidArgument("composition of maps with mismatched modules".into()));
        }
        ModuleMap::new(&first.source, &self.target, self.matrix.mul(self.ring(), &first.matrix))
    }

    pub fn add(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        ModuleMap::new(&self.source, &self.target, self.matrix.add(self.ring(), &other.matrix))
    }

    pub fn sub(&self, other: &ModuleMap) -> Result<ModuleMap> {
        self.check_parallel(other)?;
        ModuleMap::new(&self.source, &self.target, self.matrix.sub(self.ring(), &other.matrix))
    }

    pub fn scale(&self, f: &Poly) -> ModuleMap {
        ModuleMap::new(&self.source, &self.target, self.matrix.mul_poly(self.ring(), f)).expect("scaled map")
    }

    fn check_parallel(&self, other: &ModuleMap) -> Result<()> {
        if self.source != other.source || self.target != other.target {
            return Err(Error::InvalidArgument("maps have different source or target".into()));
        }
        Ok(())
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == ModuleMap::identity(&self.source)
    }

    pub fn is_injective(&self) -> bool {
        kernel(self).0.is_zero()
    }

    pub fn is_surjective(&self) -> bool {
        cokernel(self).is_zero()
    }

    pub fn is_isomorphism(&self) -> bool {
        self.is_injective() && self.is_surjective()
    }
}

/// `0 -> left -> mid -> right -> 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShortExactSequence {
    pub inj: ModuleMap,
    pub surj: ModuleMap,
}

/// Outcome of checking the three exactness conditions separately.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SesCheck {
    pub injective: bool,
    pub surjective: bool,
    pub exact_middle: bool,
}

impl SesCheck {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective && self.exact_middle
    }
}

impl ShortExactSequence {
    pub fn new(inj: ModuleMap, surj: ModuleMap) -> Result<Self> {
        if inj.target() != surj.source() {
            return Err(Error::InvalidArgument("middle modules of the sequence differ".into()));
        }
        Ok(ShortExactSequence { inj, surj })
    }

    pub fn left(&self) -> &FPModule {
        self.inj.source()
    }

    pub fn mid(&self) -> &FPModule {
        self.inj.target()
    }

    pub fn right(&self) -> &FPModule {
        self.surj.target()
    }

    /// Injectivity, surjectivity, and `image(inj) = kernel(surj)` with both
    /// containments tested by normal forms.
    pub fn check(&self) -> SesCheck {
        let injective = self.inj.is_injective();
        let surjective = self.surj.is_surjective();
        let exact_middle = self.surj.compose(&self.inj).map(|c| c.is_zero()).unwrap_or(false) && {
            let (_, incl) = kernel(&self.surj);
            let ring = self.mid().ring();
            let mut rels = self.inj.matrix().columns();
            rels.extend(self.mid().relations().iter().cloned());
            let image = FPModule::new(ring.clone(), self.mid().rank(), &rels).expect("rank");
            incl.matrix().columns().iter().all(|k| image.contains_zero(k))
        };
        SesCheck { injective, surjective, exact_middle }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::MonomialOrder;
    use crate::ring::Ring;

    #[test]
    fn multiplication_by_x_into_quotient_is_rejected() {
        let a = Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap();
        let m = FPModule::cyclic(a.clone(), &[a.var(0)]);
        let free = FPModule::free(a.clone(), 1);
        // A/(x) -> A, 1 -> 1 is not well defined; 1 -> x^2 is
        assert!(matches!(
            ModuleMap::new(&m, &free, Matrix::identity(&a, 1)),
            Err(Error::NotWellDefined { .. })
        ));
        let x2 = Poly::parse(&a, "x^2").unwrap();
        let f = ModuleMap::new(&m, &free, Matrix::scalar(&a, 1, &x2)).unwrap();
        assert!(f.verify_witness());
        assert!(f.is_injective());
        assert!(!f.is_surjective());
    }

    #[test]
    fn composed_witnesses_compose() {
        let a = Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap();
        let free = FPModule::free(a.clone(), 1);
        let m2 = FPModule::cyclic(a.clone(), &[Poly::parse(&a, "x^2").unwrap()]);
        let x = Poly::parse(&a, "x").unwrap();
        let f = ModuleMap::new(&m2, &free, Matrix::scalar(&a, 1, &x)).unwrap();
        let g = ModuleMap::scalar(&free, &x);
        let ring: &Ring = &a;
        // g*f*D = g*D_mid*W_f = D_t*W_g*W_f
        let ds = Matrix::from_columns(1, m2.relations());
        let dt = Matrix::from_columns(1, free.relations());
        let lhs = g.matrix().mul(ring, f.matrix()).mul(ring, &ds);
        let rhs = dt.mul(ring, &g.witness().mul(ring, f.witness()));
        assert_eq!(lhs, rhs);
        assert!(g.compose(&f).unwrap().verify_witness());
    }
}
