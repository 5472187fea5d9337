mod support;

use support::{check_algebra, oracle_ext, oracle_syzygy, Alg, Case};

#[test]
fn truncated_polynomial_ring_matches_oracle() {
    check_algebra(Alg::truncated(), 7, 24);
}

#[test]
fn square_zero_algebra_matches_oracle() {
    check_algebra(Alg::square_zero(), 5, 24);
}

#[test]
fn oracle_sanity() {
    let alg = Alg::truncated();
    // A/(x): Ext^i(k, k) = k in every degree over k[x]/(x^3).
    let case = Case { t: 1, d_cols: vec![vec![0, 1, 0]], u: 1, e_cols: vec![vec![0, 1, 0]], f_cols: vec![vec![1, 0, 0]] };
    assert_eq!(oracle_ext(&alg, &case, 3), vec![1, 1, 1, 1]);
    assert_eq!(oracle_syzygy(&alg, &case, 1), 2);
    assert_eq!(oracle_syzygy(&alg, &case, 2), 1);
}
