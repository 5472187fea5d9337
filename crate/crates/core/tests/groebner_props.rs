use std::sync::Arc;

use kosrec_core::groebner::{buchberger, is_groebner_basis, normal_form, s_vector};
use kosrec_core::{FreeVector, Monomial, MonomialOrder, Poly, Ring};
use proptest::prelude::*;

const NAMES: [&str; 3] = ["x", "y", "z"];

type RawPoly = Vec<([u16; 3], u32)>;

fn raw_poly() -> impl Strategy<Value = RawPoly> {
    prop::collection::vec(([0u16..=4, 0u16..=4, 0u16..=4], 1u32..7), 1..=3)
}

fn build(ring: &Ring, nvars: usize, raw: &RawPoly) -> FreeVector {
    let terms = raw
        .iter()
        .map(|(e, c)| {
            let mut exps = e[..nvars].to_vec();
            // Keep total degree at most 4.
            while exps.iter().sum::<u16>() > 4 {
                let i = exps.iter().position(|&x| x > 0).unwrap();
                exps[i] -= 1;
            }
            (Monomial::from_exponents(&exps), *c)
        })
        .collect();
    FreeVector::scalar(Poly::from_terms(ring, terms))
}

fn ring(nvars: usize, lex: bool) -> Arc<Ring> {
    let order = if lex { MonomialOrder::Lex } else { MonomialOrder::Grevlex };
    Ring::polynomial(7, &NAMES[..nvars], order).unwrap()
}

fn canonical(ring: &Ring, basis: &[FreeVector]) -> Vec<Vec<String>> {
    basis.iter().map(|v| v.to_canonical(ring)).collect()
}

fn instance() -> impl Strategy<Value = (usize, bool, Vec<RawPoly>, Vec<RawPoly>)> {
    (1usize..=3, any::<bool>(), prop::collection::vec(raw_poly(), 1..=5)).prop_flat_map(|(n, lex, gens)| {
        let shuffled = Just(gens.clone()).prop_shuffle();
        (Just(n), Just(lex), Just(gens), shuffled)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn reduced_basis_is_closed_and_order_independent((n, lex, gens, shuffled) in instance()) {
        let r = ring(n, lex);
        let a: Vec<FreeVector> = gens.iter().map(|g| build(&r, n, g)).collect();
        let b: Vec<FreeVector> = shuffled.iter().map(|g| build(&r, n, g)).collect();
        let ga = buchberger(&r, &a);
        let gb = buchberger(&r, &b);
        prop_assert_eq!(canonical(&r, &ga), canonical(&r, &gb));
        prop_assert!(is_groebner_basis(&r, &ga));
        for i in 0..ga.len() {
            for j in i + 1..ga.len() {
                if let Some(s) = s_vector(&r, &ga[i], &ga[j]) {
                    prop_assert!(normal_form(&r, &s, &ga).unwrap().is_zero());
                }
            }
        }
        for g in &a {
            prop_assert!(normal_form(&r, g, &ga).unwrap().is_zero());
        }
        for g in &ga {
            prop_assert_eq!(g.lead().map(|l| l.2), Some(1));
        }
    }
}
