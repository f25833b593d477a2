//! Meet-irreducible elements of the quasi-copula lattice.
//!
//! A non-maximal lattice element is meet-irreducible when it is not a proper
//! meet of two larger elements, equivalently (in a finite lattice) when it
//! has exactly one upper cover. In the quasi-copula lattice these are
//! exactly the copulas of bigrassmannian permutations — there are
//! `(n−1)n(n+1)/6` of them — and every non-maximal element is the meet of a
//! unique antichain of them. Completing the copula suborder with the
//! Dedekind-MacNeille construction recovers the whole lattice; both facts
//! are checkable here by exhaustive enumeration.

use crate::copula::QuasiCopula;
use crate::enumeration;
use crate::matrixrep::BigrassmannianParams;
use crate::order::{leq_same, meet_same};
use crate::poset::{dedekind_macneille, FinitePoset};

/// Structural test: a quasi-copula is meet-irreducible iff it is a copula
/// whose permutation is bigrassmannian.
pub fn is_meet_irreducible(q: &QuasiCopula) -> bool {
    match q.permutation() {
        Ok(w) => w.is_bigrassmannian(),
        Err(_) => false,
    }
}

/// Lattice-theoretic oracle: `q` is meet-irreducible iff it is not the
/// maximum of `universe` and has exactly one upper cover there. Covers are
/// found by scanning the universe, independently of the structural theory.
pub fn is_meet_irreducible_bruteforce(q: &QuasiCopula, universe: &[QuasiCopula]) -> bool {
    let above: Vec<&QuasiCopula> = universe
        .iter()
        .filter(|r| *r != q && leq_same(q, r))
        .collect();
    if above.is_empty() {
        return false; // the maximum
    }
    let covers = above
        .iter()
        .filter(|r| !above.iter().any(|s| s != *r && leq_same(s, r)))
        .count();
    covers == 1
}

/// Batch version of [`is_meet_irreducible_bruteforce`] over the whole
/// universe, sharing one precomputed order matrix.
pub fn bruteforce_meet_irreducibles(universe: &[QuasiCopula]) -> Vec<bool> {
    let m = universe.len();
    let mut less = vec![false; m * m]; // strict order
    for (a, p) in universe.iter().enumerate() {
        for (b, q) in universe.iter().enumerate() {
            less[a * m + b] = a != b && leq_same(p, q);
        }
    }
    (0..m)
        .map(|a| {
            let above: Vec<usize> = (0..m).filter(|&b| less[a * m + b]).collect();
            if above.is_empty() {
                return false;
            }
            let covers = above
                .iter()
                .filter(|&&b| !above.iter().any(|&c| c != b && less[c * m + b]))
                .count();
            covers == 1
        })
        .collect()
}

/// All meet-irreducible copulas of order `n`, built from the parameter
/// tuples in lexicographic order; `(n−1)n(n+1)/6` elements, empty for
/// `n ≤ 1`.
pub fn enumerate_meet_irreducibles(n: usize) -> Vec<QuasiCopula> {
    BigrassmannianParams::enumerate(n)
        .iter()
        .map(|p| p.permutation().quasi_copula())
        .collect()
}

/// The unique antichain of meet-irreducible copulas whose meet is `q`: the
/// minimal elements of `{R meet-irreducible : q ≤ R}`, in lexicographic
/// order. The maximum decomposes as the empty antichain (the meet over the
/// empty set is the maximum by convention).
pub fn decompose(q: &QuasiCopula) -> Vec<QuasiCopula> {
    let candidates: Vec<QuasiCopula> = enumerate_meet_irreducibles(q.order())
        .into_iter()
        .filter(|r| leq_same(q, r))
        .collect();
    let mut minimal: Vec<QuasiCopula> = candidates
        .iter()
        .filter(|r| !candidates.iter().any(|s| s != *r && leq_same(s, r)))
        .cloned()
        .collect();
    minimal.sort_by(|a, b| a.lex_cmp(b));
    debug_assert!(
        minimal.is_empty() || {
            let mut acc = minimal[0].clone();
            for r in &minimal[1..] {
                acc = meet_same(&acc, r);
            }
            acc == *q
        }
    );
    minimal
}

/// `m_P(q)`: the number of meet-irreducible elements of `universe` lying
/// above `q`, with meet-irreducibility decided by the lattice oracle.
pub fn m_p_function(q: &QuasiCopula, universe: &[QuasiCopula]) -> usize {
    universe
        .iter()
        .zip(bruteforce_meet_irreducibles(universe))
        .filter(|(r, is_mi)| *is_mi && leq_same(q, r))
        .count()
}

/// `m_P` for every universe element at once.
pub fn m_p_all(universe: &[QuasiCopula]) -> Vec<usize> {
    let flags = bruteforce_meet_irreducibles(universe);
    universe
        .iter()
        .map(|q| {
            universe
                .iter()
                .zip(&flags)
                .filter(|(r, &is_mi)| is_mi && leq_same(q, r))
                .count()
        })
        .collect()
}

/// Check that the Dedekind-MacNeille completion of the copula suborder is
/// the full quasi-copula lattice: each cut must map to a distinct
/// quasi-copula via the meet of its upper bounds, hitting all of `Q_n`, with
/// containment of cuts matching the concordance order both ways. Intended
/// for `n ≤ 5`.
pub fn verify_completion(n: usize) -> bool {
    let copulas: Vec<QuasiCopula> = match enumeration::enumerate_copulas(n) {
        Ok(stream) => stream.collect(),
        Err(_) => return false,
    };
    let poset = FinitePoset::new(copulas.len(), |a, b| leq_same(&copulas[a], &copulas[b]))
        .expect("concordance order is a partial order");
    let lattice = dedekind_macneille(&poset);
    if !lattice.verify_invariants(&poset) {
        return false;
    }

    let all: Vec<QuasiCopula> = match enumeration::enumerate_quasi_copulas(n) {
        Ok(stream) => stream.collect(),
        Err(_) => return false,
    };
    if lattice.len() != all.len() {
        return false;
    }

    // Canonical map: a cut goes to the entrywise meet of its upper bounds.
    let images: Vec<QuasiCopula> = (0..lattice.len())
        .map(|c| {
            let cut = lattice.cut(c);
            let uppers: Vec<&QuasiCopula> = copulas
                .iter()
                .enumerate()
                .filter(|(u, _)| {
                    cut.iter()
                        .enumerate()
                        .all(|(a, &inside)| !inside || poset.leq(a, *u))
                })
                .map(|(_, q)| q)
                .collect();
            let mut acc = QuasiCopula::frechet_upper(n).expect("n >= 1");
            for u in uppers {
                acc = meet_same(&acc, u);
            }
            acc
        })
        .collect();

    // Bijective onto the enumerated lattice.
    let mut seen = std::collections::HashSet::new();
    for img in &images {
        if !seen.insert(img.clone()) {
            return false;
        }
    }
    if !all.iter().all(|q| seen.contains(q)) {
        return false;
    }
    // Original copulas map to themselves through their principal cuts.
    for (x, q) in copulas.iter().enumerate() {
        if images[lattice.embed(x)] != *q {
            return false;
        }
    }
    // Order-preserving and order-reflecting.
    for a in 0..lattice.len() {
        for b in 0..lattice.len() {
            if lattice.leq(a, b) != leq_same(&images[a], &images[b]) {
                return false;
            }
        }
    }
    true
}
