use crate::fpmod::{canonical_generators, ideal_block, FPModule, ModuleMap};
use crate::groebner;
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::vector::FreeVector;

/// Eliminates generators made redundant by relations with a nonzero constant
/// entry.
///
/// `rels` are relations among `rank` generators. Returns the indices of the
/// generators that survive and the canonical relations among them. Each
/// elimination is a Gaussian step over `F_p` on the constant entry.
pub fn prune_generators(ring: &Ring, rank: usize, rels: &[FreeVector]) -> (Vec<usize>, Vec<FreeVector>) {
    let mut active: Vec<usize> = (0..rank).collect();
    let mut rels = canonical_generators(ring, rank, rels);
    let field = ring.field();
    loop {
        let pivot = rels.iter().enumerate().find_map(|(ri, r)| {
            r.components().iter().enumerate().find_map(|(a, f)| f.unit_value().map(|u| (ri, a, u)))
        });
        let Some((ri, a, u)) = pivot else { break };
        let pivot_rel = rels[ri].clone();
        let uinv = field.inv(u);
        let width = active.len();
        let reduced: Vec<FreeVector> = rels
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != ri)
            .map(|(_, r)| {
                let coeff = r.get(a).scale(ring, uinv);
                let v = r.sub(ring, &pivot_rel.mul_poly(ring, &coeff));
                let mut comps = v.into_components();
                comps.remove(a);
                FreeVector::new(comps)
            })
            .collect();
        active.remove(a);
        rels = canonical_generators(ring, width - 1, &reduced);
    }
    (active, rels)
}

/// The session's deterministic free resolution
/// `F_{len+1} -> F_len -> ... -> F_0 -> M -> 0`.
///
/// `F_0 = R^t` with `t` the module's rank; each further step takes the
/// syzygies of the previous differential modulo `I` and then eliminates
/// constant entries. One extra differential `d_{len+1}` is kept so that
/// `Ω^len M = coker(d_{len+1})` is available.
#[derive(Debug, Clone)]
pub struct Resolution {
    module: FPModule,
    ranks: Vec<usize>,
    diffs: Vec<Matrix>,
}

impl Resolution {
    pub fn compute(module: &FPModule, len: usize) -> Resolution {
        let ring = module.ring().clone();
        let t = module.rank();
        let mut ranks = vec![t];
        let mut diffs = vec![Matrix::from_columns(t, &module.presentation())];
        for k in 1..=len {
            let dk = &diffs[k - 1];
            let below = ranks[k - 1];
            let cols = dk.columns();
            let syz = groebner::syzygies_modulo(&ring, below, &cols, &ideal_block(&ring, below));
            let syz: Vec<FreeVector> = syz.iter().map(|v| v.reduce_mod_ideal(&ring)).collect();
            let (kept, rels) = prune_generators(&ring, cols.len(), &syz);
            let kept_cols: Vec<FreeVector> = kept.iter().map(|&j| cols[j].clone()).collect();
            diffs[k - 1] = Matrix::from_columns(below, &kept_cols);
            ranks.push(kept.len());
            diffs.push(Matrix::from_columns(kept.len(), &rels));
        }
        Resolution { module: module.clone(), ranks, diffs }
    }

    pub fn module(&self) -> &FPModule {
        &self.module
    }

    /// Number of pruned steps.
    pub fn len(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Betti numbers `rank F_0, ..., rank F_len`.
    pub fn betti(&self) -> &[usize] {
        &self.ranks
    }

    pub fn rank(&self, i: usize) -> usize {
        if i < self.ranks.len() {
            self.ranks[i]
        } else {
            self.diffs[i - 1].cols()
        }
    }

    /// `d_i: F_i -> F_{i-1}` for `1 <= i <= len + 1`.
    pub fn differential(&self, i: usize) -> &Matrix {
        assert!(i >= 1 && i <= self.diffs.len(), "differential d_{i} not computed");
        &self.diffs[i - 1]
    }

    pub fn free_module(&self, i: usize) -> FPModule {
        FPModule::free(self.module.ring().clone(), self.rank(i))
    }

    /// `d_i` as a map of free modules.
    pub fn differential_map(&self, i: usize) -> ModuleMap {
        ModuleMap::new(&self.free_module(i), &self.free_module(i - 1), self.differential(i).clone())
            .expect("maps of free modules are well defined")
    }

    /// `Ω^n M`, presented as `coker(d_{n+1})` on `F_n`; `Ω^0 M = M`.
    pub fn syzygy(&self, n: usize) -> FPModule {
        assert!(n <= self.len(), "resolution too short for Ω^{n}");
        if n == 0 {
            return self.module.clone();
        }
        FPModule::new(self.module.ring().clone(), self.rank(n), &self.differential(n + 1).columns())
            .expect("columns have rank F_n")
    }

    /// `Ω^n M -> F_{n-1}` given by `d_n`, for `n >= 1`.
    pub fn syzygy_inclusion(&self, n: usize) -> ModuleMap {
        assert!(n >= 1);
        ModuleMap::new(&self.syzygy(n), &self.free_module(n - 1), self.differential(n).clone())
            .expect("d_n kills im d_{n+1}")
    }

    /// The canonical surjection `F_0 -> M`.
    pub fn augmentation(&self) -> ModuleMap {
        ModuleMap::new(&self.free_module(0), &self.module, Matrix::identity(self.module.ring(), self.rank(0)))
            .expect("identity onto a quotient")
    }
}

pub fn free_resolution(module: &FPModule, len: usize) -> Resolution {
    Resolution::compute(module, len)
}

/// `Ω^n M` under the session resolution.
pub fn syzygy(module: &FPModule, n: usize) -> FPModule {
    if n == 0 {
        return module.clone();
    }
    Resolution::compute(module, n).syzygy(n)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fpmod::kernel;
    use crate::monomial::MonomialOrder;
    use crate::poly::Poly;

    fn truncated() -> std::sync::Arc<Ring> {
        Ring::quotient(7, &["x"], MonomialOrder::Grevlex, &["x^3"]).unwrap()
    }

    fn exact_at(res: &Resolution, i: usize) -> bool {
        // ker d_i == im d_{i+1}
        let di = res.differential_map(i);
        let (_, incl) = kernel(&di);
        let im = FPModule::new(res.module().ring().clone(), res.rank(i), &res.differential(i + 1).columns()).unwrap();
        let kernel_in_image = incl.matrix().columns().iter().all(|k| im.contains_zero(k));
        let composite = di.matrix().mul(res.module().ring(), res.differential(i + 1));
        let composite_zero = composite.columns().iter().all(|c| c.reduce_mod_ideal(res.module().ring()).is_zero());
        kernel_in_image && composite_zero
    }

    #[test]
    fn periodic_resolution_over_truncated_line() {
        let a = truncated();
        let m = FPModule::cyclic(a.clone(), &[a.var(0)]);
        let res = free_resolution(&m, 4);
        assert_eq!(res.betti(), &[1, 1, 1, 1, 1]);
        let x = Poly::parse(&a, "x").unwrap();
        let x2 = Poly::parse(&a, "x^2").unwrap();
        assert_eq!(res.differential(1).get(0, 0), &x);
        assert_eq!(res.differential(2).get(0, 0), &x2);
        assert_eq!(res.differential(3).get(0, 0), &x);
        for i in 1..=4 {
            assert!(exact_at(&res, i));
        }
        assert_eq!(res.syzygy(1), FPModule::cyclic(a.clone(), &[x2]));
        assert_eq!(res.syzygy(2), m);
    }

    #[test]
    fn koszul_resolution_of_residue_field() {
        let r = Ring::polynomial(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let k = FPModule::cyclic(r.clone(), &[r.var(0), r.var(1)]);
        let res = free_resolution(&k, 3);
        assert_eq!(res.betti(), &[1, 2, 1, 0]);
        assert_eq!(syzygy(&k, 2), FPModule::free(r.clone(), 1));
        for i in 1..=2 {
            assert!(exact_at(&res, i));
        }
    }

    #[test]
    fn free_modules_have_trivial_syzygies() {
        let r = Ring::polynomial(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        let f = FPModule::free(r.clone(), 2);
        let res = free_resolution(&f, 2);
        assert_eq!(res.betti(), &[2, 0, 0]);
        assert!(syzygy(&f, 1).is_zero());
        assert_eq!(syzygy(&f, 1).rank(), 0);
    }

    #[test]
    fn pruning_removes_redundant_generators() {
        let r = Ring::polynomial(5, &["x", "y"], MonomialOrder::Grevlex).unwrap();
        // R^2 / (e1 - x e2): free of rank one
        let m = FPModule::from_strings(r.clone(), 2, &[vec!["1", "4*x"]]).unwrap();
        assert!(m.is_free());
        let (kept, rels) = prune_generators(&r, 2, &m.presentation());
        assert_eq!(kept, vec![1]);
        assert!(rels.is_empty());
    }
}
