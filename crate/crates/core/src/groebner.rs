//! Division, Buchberger's algorithm and syzygies for submodules of `S^t`,
//! `S = F_p[x_1..x_m]`, under the position-over-term order.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::Poly;
use crate::ring::Ring;
use crate::vector::{cmp_terms, FreeVector};

/// Lead-term index over a list of vectors: for each component, the basis
/// positions (in list order) whose leading term lives there.
struct LeadIndex {
    by_comp: Vec<Vec<usize>>,
}

impl LeadIndex {
    fn new(rank: usize, basis: &[FreeVector]) -> Self {
        let mut by_comp = vec![Vec::new(); rank];
        for (i, g) in basis.iter().enumerate() {
            if let Some(c) = g.lead_component() {
                by_comp[c].push(i);
            }
        }
        LeadIndex { by_comp }
    }

    fn find_divisor(&self, basis: &[FreeVector], comp: usize, m: &Monomial, skip: Option<usize>) -> Option<usize> {
        self.by_comp[comp].iter().copied().find(|&i| {
            Some(i) != skip && basis[i].lead().is_some_and(|(_, lm, _)| lm.divides(m))
        })
    }
}

fn check_ranks(f: &FreeVector, basis: &[FreeVector]) -> Result<()> {
    for g in basis {
        if g.rank() != f.rank() {
            return Err(Error::AmbientMismatch { expected: f.rank(), found: g.rank() });
        }
    }
    Ok(())
}

/// Full normal form of `f` modulo `basis`: the returned remainder has no term
/// divisible by any leading term of `basis`, and `f - r` lies in the span.
/// Divisors are tried in list order, leading term first.
pub fn normal_form(ring: &Ring, f: &FreeVector, basis: &[FreeVector]) -> Result<FreeVector> {
    check_ranks(f, basis)?;
    let index = LeadIndex::new(f.rank(), basis);
    Ok(reduce_with(ring, f, basis, &index, None, None).0)
}

/// Normal form together with quotients: `f = sum q_i basis_i + r`.
pub fn normal_form_with_quotients(ring: &Ring, f: &FreeVector, basis: &[FreeVector]) -> Result<(FreeVector, Vec<Poly>)> {
    check_ranks(f, basis)?;
    let index = LeadIndex::new(f.rank(), basis);
    let mut quotients = vec![Poly::zero(); basis.len()];
    let (r, _) = reduce_with(ring, f, basis, &index, Some(&mut quotients), None);
    Ok((r, quotients))
}

/// The division loop. With `stop_at = Some(h)`, reduction stops as soon as the
/// leading term of the working vector lies in a component `>= h`; the second
/// return value is then the unreduced rest.
fn reduce_with(
    ring: &Ring,
    f: &FreeVector,
    basis: &[FreeVector],
    index: &LeadIndex,
    mut quotients: Option<&mut Vec<Poly>>,
    stop_at: Option<usize>,
) -> (FreeVector, FreeVector) {
    let field = ring.field();
    let mut work = f.clone();
    let mut rem = FreeVector::zero(f.rank());
    for comp in 0..f.rank() {
        if stop_at.is_some_and(|h| comp >= h) {
            break;
        }
        while let Some((m, c)) = work.get(comp).lead() {
            let m = m.clone();
            match index.find_divisor(basis, comp, &m, None) {
                Some(i) => {
                    let g = &basis[i];
                    let (_, lm, lc) = g.lead().unwrap();
                    let factor = field.mul(c, field.inv(lc));
                    let shift = m.div(lm);
                    if let Some(q) = quotients.as_deref_mut() {
                        q[i] = q[i].add(ring, &Poly::monomial(shift.clone(), factor));
                    }
                    work = work.sub_mul_term(ring, factor, &shift, g);
                }
                None => {
                    let mut poly = work.get(comp).clone();
                    let (m, c) = poly.pop_lead().unwrap();
                    work.set(comp, poly);
                    let mut r = rem.get(comp).clone();
                    r.push_smallest(m, c);
                    rem.set(comp, r);
                }
            }
        }
    }
    (rem, work)
}

/// Normal form of a polynomial modulo a list of polynomials.
pub fn reduce_poly(ring: &Ring, f: &Poly, basis: &[Poly]) -> Poly {
    let fv = FreeVector::scalar(f.clone());
    let bv: Vec<FreeVector> = basis.iter().cloned().map(FreeVector::scalar).collect();
    let index = LeadIndex::new(1, &bv);
    reduce_with(ring, &fv, &bv, &index, None, None).0.into_components().pop().unwrap()
}

/// The S-vector of two elements with the same leading component.
pub fn s_vector(ring: &Ring, a: &FreeVector, b: &FreeVector) -> Option<FreeVector> {
    let (ca, ma, la) = a.lead()?;
    let (cb, mb, lb) = b.lead()?;
    if ca != cb {
        return None;
    }
    let field = ring.field();
    let l = ma.lcm(mb);
    let left = a.mul_term(ring, &l.div(ma), field.inv(la));
    Some(left.sub_mul_term(ring, field.inv(lb), &l.div(mb), b))
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    comp: usize,
    lcm: Monomial,
}

/// Reduced Gröbner basis of the submodule generated by `gens`, sorted
/// ascending by leading term, with leading coefficients 1.
///
/// S-pairs are selected by the normal strategy (smallest lcm first, ties by
/// pair index). Old pairs are discarded with the Gebauer–Möller chain
/// criterion; the coprime criterion is used only for pairs supported on a
/// single common component.
pub fn buchberger(ring: &Ring, gens: &[FreeVector]) -> Vec<FreeVector> {
    let Some(rank) = gens.first().map(FreeVector::rank) else {
        return Vec::new();
    };
    let basis = gb_core(ring, rank, gens, None);
    reduce_basis(ring, rank, basis)
}

/// Unreduced Gröbner basis. With `head = Some(h)`, pairs whose leading
/// component is `>= h` are skipped, giving a basis that is only complete for
/// the first `h` components (enough for membership tests in those).
fn gb_core(ring: &Ring, rank: usize, gens: &[FreeVector], head: Option<usize>) -> Vec<FreeVector> {
    let mut basis: Vec<FreeVector> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut index = LeadIndex::new(rank, &basis);

    let add = |h: FreeVector, basis: &mut Vec<FreeVector>, pairs: &mut Vec<Pair>, index: &mut LeadIndex| {
        let h = h.monic(ring);
        let (hc, hm, _) = h.lead().map(|(c, m, l)| (c, m.clone(), l)).unwrap();
        let k = basis.len();
        pairs.retain(|p| {
            if p.comp != hc || !hm.divides(&p.lcm) {
                return true;
            }
            let li = basis[p.i].lead().unwrap().1.lcm(&hm);
            let lj = basis[p.j].lead().unwrap().1.lcm(&hm);
            li == p.lcm || lj == p.lcm
        });
        if head.is_none_or(|hd| hc < hd) {
            for &i in &index.by_comp[hc] {
                let gi = &basis[i];
                let gm = gi.lead().unwrap().1;
                if gm.is_coprime(&hm) && gi.support_size() == 1 && h.support_size() == 1 {
                    continue;
                }
                pairs.push(Pair { i, j: k, comp: hc, lcm: gm.lcm(&hm) });
            }
        }
        index.by_comp[hc].push(k);
        basis.push(h);
    };

    for g in gens {
        debug_assert_eq!(g.rank(), rank);
        let (r, _) = reduce_with(ring, g, &basis, &index, None, None);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut index);
        }
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| {
                let (pa, pb) = (&pairs[a], &pairs[b]);
                cmp_terms(ring, (pa.comp, &pa.lcm), (pb.comp, &pb.lcm))
                    .then((pa.i, pa.j).cmp(&(pb.i, pb.j)))
            })
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_vector(ring, &basis[pair.i], &basis[pair.j]).unwrap();
        let (r, _) = reduce_with(ring, &s, &basis, &index, None, None);
        if !r.is_zero() {
            add(r, &mut basis, &mut pairs, &mut index);
        }
    }
    basis
}

/// Minimalizes, interreduces, normalizes and sorts a Gröbner basis.
fn reduce_basis(ring: &Ring, rank: usize, basis: Vec<FreeVector>) -> Vec<FreeVector> {
    let keep: Vec<bool> = (0..basis.len())
        .map(|i| {
            let (ci, mi, _) = basis[i].lead().unwrap();
            !basis.iter().enumerate().any(|(j, g)| {
                if j == i {
                    return false;
                }
                let (cj, mj, _) = g.lead().unwrap();
                cj == ci && mj.divides(mi) && (mj != mi || j < i)
            })
        })
        .collect();
    let minimal: Vec<FreeVector> = basis.into_iter().zip(keep).filter_map(|(g, k)| k.then_some(g)).collect();
    let index = LeadIndex::new(rank, &minimal);
    let mut reduced: Vec<FreeVector> = (0..minimal.len())
        .map(|i| {
            let g = &minimal[i];
            let (c, m, lc) = g.lead().unwrap();
            // the leading term is irreducible; reduce the tail against the others
            let mut tail = g.clone();
            let mut p = tail.get(c).clone();
            p.pop_lead();
            tail.set(c, p);
            let (r, _) = reduce_with_skip(ring, &tail, &minimal, &index, i);
            let mut lead_poly = Poly::monomial(m.clone(), lc);
            lead_poly = lead_poly.add(ring, r.get(c));
            let mut out = r;
            out.set(c, lead_poly);
            out.monic(ring)
        })
        .collect();
    reduced.sort_by(|a, b| {
        let (ca, ma, _) = a.lead().unwrap();
        let (cb, mb, _) = b.lead().unwrap();
        cmp_terms(ring, (ca, ma), (cb, mb))
    });
    reduced
}

fn reduce_with_skip(ring: &Ring, f: &FreeVector, basis: &[FreeVector], index: &LeadIndex, skip: usize) -> (FreeVector, ()) {
    let field = ring.field();
    let mut work = f.clone();
    let mut rem = FreeVector::zero(f.rank());
    for comp in 0..f.rank() {
        while let Some((m, c)) = work.get(comp).lead() {
            let m = m.clone();
            match index.find_divisor(basis, comp, &m, Some(skip)) {
                Some(i) => {
                    let g = &basis[i];
                    let (_, lm, lc) = g.lead().unwrap();
                    work = work.sub_mul_term(ring, field.mul(c, field.inv(lc)), &m.div(lm), g);
                }
                None => {
                    let mut poly = work.get(comp).clone();
                    let (m, c) = poly.pop_lead().unwrap();
                    work.set(comp, poly);
                    let mut r = rem.get(comp).clone();
                    r.push_smallest(m, c);
                    rem.set(comp, r);
                }
            }
        }
    }
    (rem, ())
}

/// Whether every S-vector of `basis` reduces to zero modulo `basis`.
pub fn is_groebner_basis(ring: &Ring, basis: &[FreeVector]) -> bool {
    first_failing_pair(ring, basis).is_none()
}

fn first_failing_pair(ring: &Ring, basis: &[FreeVector]) -> Option<(usize, usize)> {
    let rank = basis.first().map(FreeVector::rank)?;
    let index = LeadIndex::new(rank, basis);
    for j in 0..basis.len() {
        for i in 0..j {
            if let Some(s) = s_vector(ring, &basis[i], &basis[j]) {
                if !reduce_with(ring, &s, basis, &index, None, None).0.is_zero() {
                    return Some((i, j));
                }
            }
        }
    }
    None
}

/// Schreyer syzygies of a Gröbner basis: for every pair `(i, j)` with a
/// common leading component, `m_i e_i - m_j e_j - sum q_k e_k` where the
/// `q_k` come from reducing the S-vector to zero.
pub fn syzygies_of_gb(ring: &Ring, basis: &[FreeVector]) -> Result<Vec<FreeVector>> {
    let n = basis.len();
    let Some(rank) = basis.first().map(FreeVector::rank) else {
        return Ok(Vec::new());
    };
    let field = ring.field();
    let index = LeadIndex::new(rank, basis);
    let mut out = Vec::new();
    for j in 0..n {
        for i in 0..j {
            let Some(s) = s_vector(ring, &basis[i], &basis[j]) else { continue };
            let mut q = vec![Poly::zero(); n];
            let (r, _) = reduce_with(ring, &s, basis, &index, Some(&mut q), None);
            if !r.is_zero() {
                return Err(Error::NotAGroebnerBasis(i, j));
            }
            let (_, mi, li) = basis[i].lead().unwrap();
            let (_, mj, lj) = basis[j].lead().unwrap();
            let l = mi.lcm(mj);
            let mut syz: Vec<Poly> = q.into_iter().map(|p| p.neg(ring)).collect();
            syz[i] = syz[i].add(ring, &Poly::monomial(l.div(mi), field.inv(li)));
            syz[j] = syz[j].sub(ring, &Poly::monomial(l.div(mj), field.inv(lj)));
            let v = FreeVector::new(syz);
            if !v.is_zero() {
                out.push(v);
            }
        }
    }
    Ok(out)
}

fn augment(ring: &Ring, rank: usize, gens: &[FreeVector], rels: &[FreeVector]) -> Vec<FreeVector> {
    let a = gens.len();
    let mut aug = Vec::with_capacity(a + rels.len());
    for (i, g) in gens.iter().enumerate() {
        debug_assert_eq!(g.rank(), rank);
        aug.push(g.concat(&FreeVector::unit(ring, a, i)));
    }
    for r in rels {
        debug_assert_eq!(r.rank(), rank);
        aug.push(r.concat(&FreeVector::zero(a)));
    }
    aug
}

/// Generators of `{ c in S^a : sum c_i gens_i in <rels> }`, computed by
/// eliminating the first `rank` components of the augmented vectors
/// `(gens_i, e_i)` and `(rels_j, 0)`. The result is a reduced Gröbner basis.
pub fn syzygies_modulo(ring: &Ring, rank: usize, gens: &[FreeVector], rels: &[FreeVector]) -> Vec<FreeVector> {
    let a = gens.len();
    if a == 0 {
        return Vec::new();
    }
    let aug = augment(ring, rank, gens, rels);
    let gb = buchberger(ring, &aug);
    gb.into_iter()
        .filter(|v| v.lead_component().is_some_and(|c| c >= rank))
        .map(|v| v.slice(rank..rank + a))
        .collect()
}

/// For every target `w`, coefficients `c` with `w = sum c_i gens_i` modulo
/// `rels`, or `None` if some target is outside that span.
pub fn lift_many(
    ring: &Ring,
    rank: usize,
    targets: &[FreeVector],
    gens: &[FreeVector],
    rels: &[FreeVector],
) -> Option<Vec<Vec<Poly>>> {
    let a = gens.len();
    if targets.is_empty() {
        return Some(Vec::new());
    }
    if a == 0 && rels.is_empty() {
        return targets.iter().all(FreeVector::is_zero).then(|| vec![Vec::new(); targets.len()]);
    }
    let aug = augment(ring, rank, gens, rels);
    let basis = gb_core(ring, rank + a, &aug, Some(rank));
    let index = LeadIndex::new(rank + a, &basis);
    let mut out = Vec::with_capacity(targets.len());
    for w in targets {
        let wa = w.concat(&FreeVector::zero(a));
        let (rem, rest) = reduce_with(ring, &wa, &basis, &index, None, Some(rank));
        if !rem.is_zero() {
            return None;
        }
        out.push(rest.slice(rank..rank + a).neg(ring).into_components());
    }
    Some(out)
}

/// Sorting helper used by callers that need the ascending lead-term order.
pub fn cmp_leads(ring: &Ring, a: &FreeVector, b: &FreeVector) -> Ordering {
    match (a.lead(), b.lead()) {
        (None, None) => Ordering::Equal,
        (None, _) => Ordering::Less,
        (_, None) => Ordering::Greater,
        (Some((ca, ma, _)), Some((cb, mb, _))) => cmp_terms(ring, (ca, ma), (cb, mb)),
    }
}
