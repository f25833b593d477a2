//! Property-based invariants over randomly generated grids and permutations.

use proptest::prelude::*;

use qcop_core::copula::Classification;
use qcop_core::formats;
use qcop_core::matrixrep::BigrassmannianParams;
use qcop_core::order;
use qcop_core::stats;
use qcop_core::{Permutation, QuasiCopula};

/// Build a quasi-copula of order `n` from a stream of branch choices: each
/// interior cell takes the smaller admissible value unless its bit asks for
/// the larger one (when available). Mirrors the enumeration windows, so any
/// bit vector yields a valid grid.
fn grid_from_bits(n: usize, bits: &[bool]) -> QuasiCopula {
    let mut full = vec![vec![0i64; n + 1]; n + 1];
    let mut used = 0;
    for i in 1..=n {
        for j in 1..=n {
            let left = full[i][j - 1];
            let up = full[i - 1][j];
            let lo = left.max(up).max(i as i64 + j as i64 - n as i64);
            let hi = (left.min(up) + 1).min(i as i64);
            let pick_high = hi > lo && bits[used % bits.len()];
            used += 1;
            full[i][j] = if pick_high { hi } else { lo };
        }
    }
    QuasiCopula::from_full_grid(&full).expect("window construction is always valid")
}

fn quasi_copulas(max_n: usize) -> impl Strategy<Value = QuasiCopula> {
    (1..=max_n, proptest::collection::vec(any::<bool>(), 36))
        .prop_map(|(n, bits)| grid_from_bits(n, &bits))
}

fn quasi_copula_pairs(max_n: usize) -> impl Strategy<Value = (QuasiCopula, QuasiCopula)> {
    (
        1..=max_n,
        proptest::collection::vec(any::<bool>(), 36),
        proptest::collection::vec(any::<bool>(), 36),
    )
        .prop_map(|(n, a, b)| (grid_from_bits(n, &a), grid_from_bits(n, &b)))
}

fn permutations(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|word| Permutation::from_word(word).expect("shuffle of 1..=n"))
}

proptest! {
    #[test]
    fn generated_grids_validate(q in quasi_copulas(6)) {
        prop_assert_ne!(q.classification(), Classification::NotQuasiCopula);
    }

    #[test]
    fn sign_matrix_round_trip(q in quasi_copulas(6)) {
        let a = q.sign_matrix();
        prop_assert_eq!(a.quasi_copula(), q);
    }

    #[test]
    fn negative_positions_decide_classification(q in quasi_copulas(6)) {
        let negative_free = q.positions().negative.is_empty();
        prop_assert_eq!(negative_free, q.classification() == Classification::Copula);
    }

    #[test]
    fn meet_and_join_bound_their_arguments((p, q) in quasi_copula_pairs(6)) {
        let m = order::meet(&p, &q).unwrap();
        let j = order::join(&p, &q).unwrap();
        prop_assert_ne!(m.classification(), Classification::NotQuasiCopula);
        prop_assert_ne!(j.classification(), Classification::NotQuasiCopula);
        prop_assert!(order::leq(&m, &p).unwrap() && order::leq(&m, &q).unwrap());
        prop_assert!(order::leq(&p, &j).unwrap() && order::leq(&q, &j).unwrap());
    }

    #[test]
    fn meet_is_the_greatest_lower_bound(
        (p, q) in quasi_copula_pairs(5),
        bits in proptest::collection::vec(any::<bool>(), 36),
    ) {
        let r = grid_from_bits(p.order(), &bits);
        let m = order::meet(&p, &q).unwrap();
        if order::leq(&r, &p).unwrap() && order::leq(&r, &q).unwrap() {
            prop_assert!(order::leq(&r, &m).unwrap());
        }
    }

    #[test]
    fn monotone_rank((p, q) in quasi_copula_pairs(6)) {
        if order::leq(&p, &q).unwrap() && p != q {
            prop_assert!(stats::m_value(&p) > stats::m_value(&q));
        }
    }

    #[test]
    fn inversions_and_descents_of_inverse(w in permutations(8)) {
        let winv = w.inverse();
        prop_assert_eq!(w.inversion_count(), winv.inversion_count());
        prop_assert_eq!(w.left_descents(), winv.right_descents());
        prop_assert_eq!(w.right_descents(), winv.left_descents());
    }

    #[test]
    fn permutation_round_trip(w in permutations(8)) {
        let q = w.quasi_copula();
        prop_assert_eq!(q.classification(), Classification::Copula);
        prop_assert_eq!(q.permutation().unwrap(), w.clone());
        // Corner counts coincide with the grid entries.
        let n = w.order();
        for r in 0..=n {
            for s in 0..=n {
                prop_assert_eq!(w.corner_count(r, s) as i64, q.entry(r, s));
            }
        }
    }

    #[test]
    fn inversion_bounds(w in permutations(8)) {
        let n = w.order() as i64;
        let ell = w.inversion_count() as i64;
        prop_assert!(0 <= ell && ell <= n * (n - 1) / 2);
        let b = stats::beta(&w);
        prop_assert!(0 <= b && b <= (n - 1) * n * (n + 1) / 6);
    }

    #[test]
    fn bigrassmannian_three_way_equivalence(w in permutations(8)) {
        let params = w.bigrassmannian_params();
        prop_assert_eq!(w.is_bigrassmannian(), params.is_ok());
        if let Ok(p) = params {
            prop_assert_eq!(p.permutation(), w);
        }
    }

    #[test]
    fn params_produce_bigrassmannians(
        (i1, i2, i3, i4) in (0usize..3, 1usize..4, 1usize..4, 0usize..3)
    ) {
        let p = BigrassmannianParams::new(i1, i2, i3, i4).unwrap();
        let w = p.permutation();
        prop_assert!(w.is_bigrassmannian());
        prop_assert_eq!(w.bigrassmannian_params().unwrap(), p);
        prop_assert_eq!(w.inversion_count(), i2 * i3);
    }

    #[test]
    fn qcm_text_round_trip(q in quasi_copulas(6)) {
        let text = formats::render_qcm(&q);
        prop_assert_eq!(formats::parse_qcm(&text).unwrap(), q);
    }

    #[test]
    fn asm_text_round_trip(q in quasi_copulas(6)) {
        let a = q.sign_matrix();
        let text = formats::render_asm(&a);
        prop_assert_eq!(formats::parse_asm(&text).unwrap(), a);
    }

    #[test]
    fn perm_text_round_trip(w in permutations(8)) {
        let text = formats::render_perm(&w);
        prop_assert_eq!(formats::parse_perm(&text).unwrap(), w);
    }

    #[test]
    fn tau_and_rho_within_unit_interval(w in permutations(6)) {
        if w.order() >= 2 {
            let q = w.quasi_copula();
            let tau = stats::kendall_tau(&q).unwrap();
            let rho = stats::spearman_rho(&q).unwrap();
            let one = qcop_core::Rational::new(1, 1);
            prop_assert!(-one <= tau && tau <= one);
            prop_assert!(-one <= rho && rho <= one);
        }
    }
}
