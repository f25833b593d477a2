//! Exhaustive cross-module invariants at small orders, complementing the
//! randomized properties and the acceptance criteria.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use qcop_core::copula::Classification;
use qcop_core::enumeration::{enumerate_copulas, enumerate_quasi_copulas, robbins, BigUint};
use qcop_core::irreducible::{decompose, enumerate_meet_irreducibles, is_meet_irreducible};
use qcop_core::order::{hasse, join, leq, meet};
use qcop_core::stats::{beta, entry_sum, kendall_tau, m_value, spearman_rho};
use qcop_core::{Permutation, QuasiCopula, Rational};

fn all_quasi(n: usize) -> Vec<QuasiCopula> {
    enumerate_quasi_copulas(n).unwrap().collect()
}

fn all_permutations(n: usize) -> Vec<Permutation> {
    enumerate_copulas(n)
        .unwrap()
        .map(|q| q.permutation().expect("copula"))
        .collect()
}

#[test]
fn frechet_bounds_classify_as_copulas() {
    for n in 1..=8 {
        assert!(QuasiCopula::frechet_lower(n).unwrap().is_copula());
        assert!(QuasiCopula::frechet_upper(n).unwrap().is_copula());
    }
}

#[test]
fn negative_positions_empty_iff_copula() {
    for n in 1..=5 {
        for q in all_quasi(n) {
            assert_eq!(
                q.positions().negative.is_empty(),
                q.classification() == Classification::Copula
            );
        }
    }
}

#[test]
fn commutative_iff_symmetric_matrix_iff_involution() {
    for n in 1..=6 {
        for w in all_permutations(n) {
            let q = w.quasi_copula();
            let a = w.sign_matrix();
            let symmetric = (1..=n).all(|i| (1..=n).all(|j| a.entry(i, j) == a.entry(j, i)));
            let involution = w.inverse() == w;
            assert_eq!(q.is_commutative(), symmetric);
            assert_eq!(symmetric, involution);
        }
    }
}

#[test]
fn bigrassmannian_count_by_descent_filter() {
    for n in 2..=7usize {
        let count = all_permutations(n)
            .iter()
            .filter(|w| w.is_bigrassmannian())
            .count();
        assert_eq!(count, (n - 1) * n * (n + 1) / 6, "n = {n}");
    }
}

#[test]
fn bigrassmannian_params_partition_exhaustively() {
    for n in 1..=6 {
        for w in all_permutations(n) {
            match w.bigrassmannian_params() {
                Ok(params) => {
                    assert!(w.is_bigrassmannian());
                    assert_eq!(params.permutation(), w);
                }
                Err(_) => assert!(!w.is_bigrassmannian()),
            }
        }
    }
}

#[test]
fn meet_join_closure_and_bounds() {
    for n in 1..=4 {
        let all = all_quasi(n);
        for p in &all {
            for q in &all {
                let m = meet(p, q).unwrap();
                let j = join(p, q).unwrap();
                assert_ne!(m.classification(), Classification::NotQuasiCopula);
                assert_ne!(j.classification(), Classification::NotQuasiCopula);
                assert!(leq(&m, p).unwrap() && leq(&m, q).unwrap());
                assert!(leq(p, &j).unwrap() && leq(q, &j).unwrap());
            }
        }
    }
    // Order 5 on seeded random pairs.
    let all = all_quasi(5);
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10_000 {
        let p = &all[rng.random_range(0..all.len())];
        let q = &all[rng.random_range(0..all.len())];
        let m = meet(p, q).unwrap();
        assert_ne!(m.classification(), Classification::NotQuasiCopula);
        assert!(leq(&m, p).unwrap() && leq(&m, q).unwrap());
        let j = join(p, q).unwrap();
        assert!(leq(p, &j).unwrap() && leq(q, &j).unwrap());
    }
}

#[test]
fn meet_is_universal() {
    for n in 1..=4 {
        let all = all_quasi(n);
        for p in &all {
            for q in &all {
                let m = meet(p, q).unwrap();
                let j = join(p, q).unwrap();
                for r in &all {
                    if leq(r, p).unwrap() && leq(r, q).unwrap() {
                        assert!(leq(r, &m).unwrap());
                    }
                    if leq(p, r).unwrap() && leq(q, r).unwrap() {
                        assert!(leq(&j, r).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn meet_agrees_with_bruteforce_greatest_lower_bound() {
    // Dual route: the unique maximal common lower bound over the enumerated
    // lattice must be the entrywise minimum.
    for n in 1..=4 {
        let all = all_quasi(n);
        for p in &all {
            for q in &all {
                let lower: Vec<&QuasiCopula> = all
                    .iter()
                    .filter(|r| leq(r, p).unwrap() && leq(r, q).unwrap())
                    .collect();
                let maximal: Vec<&&QuasiCopula> = lower
                    .iter()
                    .filter(|r| !lower.iter().any(|s| *s != **r && leq(r, s).unwrap()))
                    .collect();
                assert_eq!(maximal.len(), 1);
                assert_eq!(**maximal[0], meet(p, q).unwrap());
            }
        }
    }
}

#[test]
fn hasse_counts_and_grading() {
    for n in 1..=5 {
        let h = hasse(n).unwrap();
        assert_eq!(BigUint::from(h.nodes().len()), robbins(n));
        for &(lo, hi) in h.edges() {
            assert_eq!(entry_sum(&h.nodes()[hi]) - entry_sum(&h.nodes()[lo]), 1);
        }
        let mut indegree = vec![0usize; h.nodes().len()];
        let mut outdegree = vec![0usize; h.nodes().len()];
        for &(lo, hi) in h.edges() {
            outdegree[lo] += 1;
            indegree[hi] += 1;
        }
        let sources: Vec<usize> = (0..h.nodes().len()).filter(|&i| indegree[i] == 0).collect();
        let sinks: Vec<usize> = (0..h.nodes().len())
            .filter(|&i| outdegree[i] == 0)
            .collect();
        assert_eq!(sources.len(), 1);
        assert_eq!(sinks.len(), 1);
        assert_eq!(
            h.nodes()[sources[0]],
            QuasiCopula::frechet_lower(n).unwrap()
        );
        assert_eq!(h.nodes()[sinks[0]], QuasiCopula::frechet_upper(n).unwrap());
    }
}

#[test]
fn decompositions_are_minimal() {
    // Swapping any member for a strictly larger meet-irreducible changes the
    // meet.
    for n in 2..=4 {
        let mi = enumerate_meet_irreducibles(n);
        let maximum = QuasiCopula::frechet_upper(n).unwrap();
        for q in all_quasi(n).iter().filter(|q| **q != maximum) {
            let parts = decompose(q);
            for (k, member) in parts.iter().enumerate() {
                assert!(is_meet_irreducible(member));
                for larger in mi
                    .iter()
                    .filter(|r| *r != member && leq(member, r).unwrap())
                {
                    let substituted = parts
                        .iter()
                        .enumerate()
                        .map(|(i, r)| if i == k { larger } else { r })
                        .fold(maximum.clone(), |acc, r| meet(&acc, r).unwrap());
                    assert_ne!(&substituted, q, "substitution must change the meet");
                }
            }
        }
    }
}

#[test]
fn inversion_and_beta_bounds_exhaustive() {
    for n in 1..=6usize {
        let n_i = n as i64;
        for w in all_permutations(n) {
            let ell = w.inversion_count() as i64;
            assert!(0 <= ell && ell <= n_i * (n_i - 1) / 2);
            let b = beta(&w);
            assert!(0 <= b && b <= (n_i - 1) * n_i * (n_i + 1) / 6);
        }
    }
}

#[test]
fn tau_and_rho_extremes() {
    let one = Rational::new(1, 1);
    for n in 2..=6 {
        let top = QuasiCopula::frechet_upper(n).unwrap();
        let bottom = QuasiCopula::frechet_lower(n).unwrap();
        for q in enumerate_copulas(n).unwrap() {
            let tau = kendall_tau(&q).unwrap();
            let rho = spearman_rho(&q).unwrap();
            assert!(-one <= tau && tau <= one);
            assert!(-one <= rho && rho <= one);
            assert_eq!(tau == one, q == top);
            assert_eq!(tau == -one, q == bottom);
            assert_eq!(rho == one, q == top);
            assert_eq!(rho == -one, q == bottom);
        }
    }
}

#[test]
fn text_round_trips_are_file_identities() {
    use qcop_core::formats::{
        parse_asm, parse_perm, parse_qcm, render_asm, render_perm, render_qcm,
    };
    for n in 1..=5 {
        for q in all_quasi(n) {
            let qcm = render_qcm(&q);
            assert_eq!(render_qcm(&parse_qcm(&qcm).unwrap()), qcm);
            let asm = render_asm(&q.sign_matrix());
            assert_eq!(
                render_asm(&parse_asm(&asm).unwrap().quasi_copula().sign_matrix()),
                asm
            );
        }
        for w in all_permutations(n) {
            let perm = render_perm(&w);
            let back = parse_perm(&perm)
                .unwrap()
                .quasi_copula()
                .permutation()
                .unwrap();
            assert_eq!(render_perm(&back), perm);
        }
    }
}

#[test]
fn rank_is_strictly_monotone() {
    for n in 1..=4 {
        let all = all_quasi(n);
        for p in &all {
            for q in &all {
                if p != q && leq(p, q).unwrap() {
                    assert!(m_value(p) > m_value(q));
                }
            }
        }
    }
}
