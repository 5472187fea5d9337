use crate::error::{Error, Result};
use crate::fpmod::{
    canonical_generators, prune_generators, Dimension, FPModule, ModuleMap, Resolution, ShortExactSequence,
};
use crate::groebner;
use crate::matrix::Matrix;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::FreeVector;

/// A module given by generators inside some ambient quotient: `module` is
/// presented on the columns of `gens`, which live in the ambient free module.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subquotient {
    pub module: FPModule,
    pub gens: Matrix,
}

/// Presents the submodule of `denom` spanned by `gens` (vectors in the free
/// module over `denom`). Generators are made canonical and then pruned.
fn present_span(denom: &FPModule, gens: &[FreeVector]) -> Subquotient {
    let ring = denom.ring();
    let rank = denom.rank();
    let mut all: Vec<FreeVector> = gens.iter().filter(|v| !v.is_zero()).cloned().collect();
    all.extend(denom.relations().iter().cloned());
    let span: Vec<FreeVector> = groebner::buchberger(ring, &all)
        .iter()
        .map(|v| denom.reduce(v))
        .filter(|v| !v.is_zero())
        .collect();
    let syz = groebner::syzygies_modulo(ring, rank, &span, denom.relations());
    let syz: Vec<FreeVector> = syz.iter().map(|v| v.reduce_mod_ideal(ring)).collect();
    let (kept, rels) = prune_generators(ring, span.len(), &syz);
    let cols: Vec<FreeVector> = kept.iter().map(|&j| span[j].clone()).collect();
    Subquotient {
        module: FPModule::new(ring.clone(), kept.len(), &rels).expect("relation ranks match"),
        gens: Matrix::from_columns(rank, &cols),
    }
}

/// Raw generators of `{v : matrix v ∈ rels(target)}` in the source's free
/// module.
fn kernel_generators(ring: &Ring, matrix: &Matrix, target: &FPModule) -> Vec<FreeVector> {
    if target.rank() == 0 {
        return (0..matrix.cols()).map(|j| FreeVector::unit(ring, matrix.cols(), j)).collect();
    }
    groebner::syzygies_modulo(ring, target.rank(), &matrix.columns(), target.relations())
}

pub fn kernel(f: &ModuleMap) -> (FPModule, ModuleMap) {
    let ring = f.source().ring();
    let raw = kernel_generators(ring, f.matrix(), f.target());
    let sq = present_span(f.source(), &raw);
    let incl = ModuleMap::new(&sq.module, f.source(), sq.gens).expect("kernel inclusion is well defined");
    (sq.module, incl)
}

pub fn cokernel(f: &ModuleMap) -> FPModule {
    let mut rels = f.matrix().columns();
    rels.extend(f.target().relations().iter().cloned());
    FPModule::new(f.target().ring().clone(), f.target().rank(), &rels).expect("columns have target rank")
}

#[derive(Debug, Clone)]
pub struct DirectSum {
    pub module: FPModule,
    pub injections: Vec<ModuleMap>,
    pub projections: Vec<ModuleMap>,
}

/// Block direct sum. An empty list needs a ring, so it is passed separately.
pub fn direct_sum(ring: &std::sync::Arc<Ring>, parts: &[&FPModule]) -> DirectSum {
    let ranks: Vec<usize> = parts.iter().map(|m| m.rank()).collect();
    let total: usize = ranks.iter().sum();
    let mut rels = Vec::new();
    let mut offset = 0;
    for m in parts {
        for r in m.presentation() {
            let mut comps = vec![Poly::zero(); total];
            for (i, f) in r.into_components().into_iter().enumerate() {
                comps[offset + i] = f;
            }
            rels.push(FreeVector::new(comps));
        }
        offset += m.rank();
    }
    let module = FPModule::new(ring.clone(), total, &rels).expect("block ranks");
    let mut injections = Vec::with_capacity(parts.len());
    let mut projections = Vec::with_capacity(parts.len());
    let mut offset = 0;
    for m in parts {
        let mut inj = Matrix::zero(total, m.rank());
        let mut proj = Matrix::zero(m.rank(), total);
        for i in 0..m.rank() {
            inj.set(offset + i, i, Poly::one(ring));
            proj.set(i, offset + i, Poly::one(ring));
        }
        injections.push(ModuleMap::new(m, &module, inj).expect("block injection"));
        projections.push(ModuleMap::new(&module, m, proj).expect("block projection"));
        offset += m.rank();
    }
    DirectSum { module, injections, projections }
}

/// `M^k`.
pub fn power(m: &FPModule, k: usize) -> FPModule {
    let parts: Vec<&FPModule> = std::iter::repeat_n(m, k).collect();
    direct_sum(m.ring(), &parts).module
}

/// `M ⊗ N` on generators `e_j ⊗ f_a`, indexed `j * rank(N) + a`.
pub fn tensor(m: &FPModule, n: &FPModule) -> FPModule {
    let ring = m.ring();
    let (t, u) = (m.rank(), n.rank());
    let dm = Matrix::from_columns(t, &m.presentation());
    let dn = Matrix::from_columns(u, &n.presentation());
    let mut rels = dm.kron_identity(u).columns();
    rels.extend(dn.identity_kron(t).columns());
    FPModule::new(ring.clone(), t * u, &rels).expect("tensor ranks")
}

/// `Hom(M, N)` as the kernel of `N^t -> N^s`, with generators kept as
/// elements of `N^t` so that they decode to maps.
#[derive(Debug, Clone)]
pub struct HomModule {
    pub source: FPModule,
    pub target: FPModule,
    pub module: FPModule,
    /// Columns in `N^t`; entry `j * rank(N) + a` is component `a` of the
    /// image of the `j`-th generator of `M`.
    pub gens: Matrix,
}

impl HomModule {
    /// The map whose images of generators are given by `v` in `N^t`.
    pub fn map_from_flat(&self, v: &FreeVector) -> ModuleMap {
        let (t, u) = (self.source.rank(), self.target.rank());
        let cols: Vec<FreeVector> = (0..t).map(|j| v.slice(j * u..(j + 1) * u)).collect();
        ModuleMap::new(&self.source, &self.target, Matrix::from_columns(u, &cols))
            .expect("Hom elements are well-defined maps")
    }

    /// The `k`-th generator as a map.
    pub fn generator(&self, k: usize) -> ModuleMap {
        self.map_from_flat(&self.gens.column(k))
    }

    pub fn generators(&self) -> Vec<ModuleMap> {
        (0..self.gens.cols()).map(|k| self.generator(k)).collect()
    }

    /// The map given by a combination `sum c_k g_k` of generators.
    pub fn combination(&self, coeffs: &[Poly]) -> ModuleMap {
        let ring = self.source.ring();
        let v = self.gens.apply(ring, &FreeVector::new(coeffs.to_vec()));
        self.map_from_flat(&v)
    }
}

/// Flattens a map's matrix into `N^t` coordinates.
pub(crate) fn flatten(matrix: &Matrix) -> FreeVector {
    let mut comps = Vec::with_capacity(matrix.rows() * matrix.cols());
    for j in 0..matrix.cols() {
        for a in 0..matrix.rows() {
            comps.push(matrix.get(a, j).clone());
        }
    }
    FreeVector::new(comps)
}

pub fn hom_module(m: &FPModule, n: &FPModule) -> HomModule {
    let (t, u) = (m.rank(), n.rank());
    let d1 = Matrix::from_columns(t, &m.presentation());
    let nt = power(n, t);
    let ns = power(n, d1.cols());
    let delta = d1.transpose().kron_identity(u);
    let raw = kernel_generators(m.ring(), &delta, &ns);
    let sq = present_span(&nt, &raw);
    HomModule { source: m.clone(), target: n.clone(), module: sq.module, gens: sq.gens }
}

/// Homology at the middle of `A -in-> B -out-> C`, presented on kernel
/// generators of `out` modulo the image of `input`.
pub fn homology_at(input: &ModuleMap, output: &ModuleMap) -> Result<Subquotient> {
    if input.target() != output.source() {
        return Err(Error::InvalidArgument("homology_at: maps are not composable".into()));
    }
    let b = output.source();
    let ring = b.ring();
    let mut rels = input.matrix().columns();
    rels.extend(b.relations().iter().cloned());
    let denom = FPModule::new(ring.clone(), b.rank(), &rels)?;
    if output.is_zero() {
        return Ok(Subquotient { gens: Matrix::identity(ring, b.rank()), module: denom });
    }
    let raw = kernel_generators(ring, output.matrix(), output.target());
    Ok(present_span(&denom, &raw))
}

/// `Ext^i(M, N)` from the session resolution of `M`.
pub fn ext(m: &FPModule, n: &FPModule, i: usize) -> FPModule {
    ext_with(&Resolution::compute(m, i), n, i)
}

pub(crate) fn ext_with(res: &Resolution, n: &FPModule, i: usize) -> FPModule {
    let ring = n.ring();
    let u = n.rank();
    let here = power(n, res.rank(i));
    let next = power(n, res.rank(i + 1));
    let out = ModuleMap::new(&here, &next, res.differential(i + 1).transpose().kron_identity(u))
        .expect("dual differential is well defined");
    let input = if i == 0 {
        ModuleMap::zero(&FPModule::zero(ring.clone()), &here)
    } else {
        let prev = power(n, res.rank(i - 1));
        ModuleMap::new(&prev, &here, res.differential(i).transpose().kron_identity(u))
            .expect("dual differential is well defined")
    };
    homology_at(&input, &out).expect("composable").module
}

/// Whether `r` kills every generator of `M`.
pub fn annihilates(r: &Poly, m: &FPModule) -> bool {
    (0..m.rank()).all(|j| m.contains_zero(&FreeVector::basis_multiple(m.rank(), j, r.clone())))
}

/// Generators of `ann_R M`, reduced modulo `I`; `(1)` for the zero module.
pub fn annihilator(m: &FPModule) -> Vec<Poly> {
    let ring = m.ring();
    let t = m.rank();
    if m.is_zero() {
        return vec![Poly::one(ring)];
    }
    let mt = power(m, t);
    let mut diag = vec![Poly::zero(); t * t];
    for j in 0..t {
        diag[j * t + j] = Poly::one(ring);
    }
    let syz = groebner::syzygies_modulo(ring, t * t, &[FreeVector::new(diag)], mt.relations());
    canonical_generators(ring, 1, &syz)
        .into_iter()
        .map(|v| v.into_components().remove(0))
        .collect()
}

/// `ann Ext^1(M, Ω^1 M)`, whose zero set is the nonfree locus.
pub fn nonfree_locus_ideal(m: &FPModule) -> Vec<Poly> {
    let res = Resolution::compute(m, 2);
    let omega = res.syzygy(1);
    annihilator(&ext_with(&res, &omega, 1))
}

/// `coker(d^T)` for the pruned presentation `d` of `M`.
pub fn transpose(m: &FPModule) -> FPModule {
    let ring = m.ring();
    let (kept, rels) = prune_generators(ring, m.rank(), &m.presentation());
    let d = Matrix::from_columns(kept.len(), &rels);
    FPModule::new(ring.clone(), d.cols(), &d.transpose().columns()).expect("transpose ranks")
}

pub fn k_dimension(m: &FPModule) -> Dimension {
    m.dimension()
}

/// A section `s: right -> mid` and retraction `r: mid -> left` of a split
/// sequence, or `NotSplit`.
pub fn split_extension(ses: &ShortExactSequence) -> Result<(ModuleMap, ModuleMap)> {
    let (left, mid, right) = (ses.left(), ses.mid(), ses.right());
    let ring = mid.ring();
    let c = right.rank();
    let hom = hom_module(right, mid);
    let composites: Vec<FreeVector> = (0..hom.gens.cols())
        .map(|k| {
            let phi = hom.generator(k);
            flatten(&ses.surj.matrix().mul(ring, phi.matrix()))
        })
        .collect();
    let cc = power(right, c);
    let id = flatten(&Matrix::identity(ring, c));
    let coeffs = groebner::lift_many(ring, c * c, &[id], &composites, cc.relations()).ok_or(Error::NotSplit)?;
    let s = hom.combination(&coeffs[0]);
    let b = mid.rank();
    let ssurj = s.matrix().mul(ring, ses.surj.matrix());
    let rest = Matrix::identity(ring, b).sub(ring, &ssurj);
    let lifted = groebner::lift_many(ring, b, &rest.columns(), &ses.inj.matrix().columns(), mid.relations())
        .ok_or(Error::InternalSplitFailure { step: 0 })?;
    let cols: Vec<FreeVector> = lifted.into_iter().map(FreeVector::new).collect();
    let r = ModuleMap::new(mid, left, Matrix::from_columns(left.rank(), &cols))
        .map_err(|_| Error::InternalSplitFailure { step: 0 })?;
    Ok((s, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::syzygy;
    use crate::monomial::MonomialOrder;
    use std::sync::Arc;

    fn truncated() -> Arc<Ring> {
        Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap()
    }

    fn cyc(a: &Arc<Ring>, s: &str) -> FPModule {
        FPModule::cyclic(a.clone(), &[Poly::parse(a, s).unwrap()])
    }

    #[test]
    fn kernel_and_cokernel_of_x() {
        let a = truncated();
        let free = FPModule::free(a.clone(), 1);
        let x = ModuleMap::scalar(&free, &a.var(0));
        let (k, incl) = kernel(&x);
        assert_eq!(k.dimension(), Dimension::Finite(1));
        assert!(x.compose(&incl).unwrap().is_zero());
        assert!(incl.is_injective());
        assert_eq!(cokernel(&x), cyc(&a, "x"));
        assert!(kernel(&ModuleMap::identity(&free)).0.is_zero());
        assert_eq!(kernel(&ModuleMap::zero(&free, &free)).0, free);
    }

    #[test]
    fn sums_and_tensors() {
        let a = truncated();
        let s = direct_sum(&a, &[&cyc(&a, "x"), &cyc(&a, "x^2")]);
        assert_eq!(s.module.canonical_relations(), vec![vec!["0", "x^2"], vec!["x", "0"]]);
        for i in 0..2 {
            for j in 0..2 {
                let c = s.projections[i].compose(&s.injections[j]).unwrap();
                assert_eq!(c.is_identity(), i == j);
                assert_eq!(c.is_zero(), i != j);
            }
        }
        assert!(direct_sum(&a, &[]).module.is_zero());
        assert_eq!(tensor(&cyc(&a, "x"), &cyc(&a, "x^2")), cyc(&a, "x"));
        assert!(tensor(&cyc(&a, "x"), &FPModule::zero(a.clone())).is_zero());
    }

    #[test]
    fn hom_and_ext_over_truncated_line() {
        let a = truncated();
        let m = cyc(&a, "x");
        let hom = hom_module(&m, &FPModule::free(a.clone(), 1));
        assert_eq!(hom.module.dimension(), Dimension::Finite(1));
        assert_eq!(hom.generator(0).matrix().get(0, 0), &Poly::parse(&a, "x^2").unwrap());
        assert_eq!(ext(&m, &cyc(&a, "x^2"), 1).dimension(), Dimension::Finite(1));
        for i in 0..4 {
            assert_eq!(ext(&m, &m, i).dimension(), Dimension::Finite(1));
        }
        let free = FPModule::free(a.clone(), 1);
        assert!(ext(&free, &m, 1).is_zero());
        assert_eq!(hom_module(&free, &m).module.dimension(), Dimension::Finite(1));
    }

    #[test]
    fn annihilation_and_nonfree_locus() {
        let a = truncated();
        let x = a.var(0);
        assert!(annihilates(&x, &cyc(&a, "x")));
        assert!(!annihilates(&x, &cyc(&a, "x^2")));
        assert!(annihilates(&Poly::one(&a), &FPModule::zero(a.clone())));
        assert_eq!(annihilator(&cyc(&a, "x^2")), vec![Poly::parse(&a, "x^2").unwrap()]);
        assert_eq!(nonfree_locus_ideal(&cyc(&a, "x")), vec![x.clone()]);
        assert_eq!(nonfree_locus_ideal(&FPModule::free(a.clone(), 2)), vec![Poly::one(&a)]);
        let m = cyc(&a, "x");
        let e = ext(&m, &syzygy(&m, 1), 1);
        for g in nonfree_locus_ideal(&m) {
            assert!(annihilates(&g, &e));
        }
    }

    #[test]
    fn transposes() {
        let a = truncated();
        assert_eq!(transpose(&cyc(&a, "x")), cyc(&a, "x"));
        assert!(transpose(&FPModule::free(a.clone(), 2)).is_zero());
        let r = Ring::polynomial(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let k = FPModule::cyclic(r.clone(), &[r.var(0), r.var(1)]);
        let t = transpose(&k);
        assert_eq!(t.rank(), 2);
        assert_eq!(t.staircase_counts(3), vec![2, 3, 4, 5]);
    }

    #[test]
    fn splitting() {
        let a = truncated();
        let (m1, m2) = (cyc(&a, "x"), cyc(&a, "x^2"));
        let s = direct_sum(&a, &[&m1, &m2]);
        let ses = ShortExactSequence::new(s.injections[0].clone(), s.projections[1].clone()).unwrap();
        assert!(ses.check().holds());
        let (sec, ret) = split_extension(&ses).unwrap();
        assert!(ses.surj.compose(&sec).unwrap().is_identity());
        assert!(ret.compose(&ses.inj).unwrap().is_identity());

        // 0 -> (x) -> A -> A/(x) -> 0 does not split
        let free = FPModule::free(a.clone(), 1);
        let ideal = cyc(&a, "x^2");
        let inj = ModuleMap::new(&ideal, &free, Matrix::scalar(&a, 1, &a.var(0))).unwrap();
        let surj = ModuleMap::new(&free, &cyc(&a, "x"), Matrix::identity(&a, 1)).unwrap();
        let ses = ShortExactSequence::new(inj, surj).unwrap();
        assert!(ses.check().holds());
        assert_eq!(split_extension(&ses), Err(Error::NotSplit));
    }
}
