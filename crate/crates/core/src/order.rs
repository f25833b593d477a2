//! The concordance order on quasi-copulas and its lattice structure.
//!
//! `P ≤ Q` holds when `P(i, j) ≤ Q(i, j)` entrywise; under this order the
//! quasi-copulas of order `n` form a finite distributive lattice with
//! entrywise min/max as meet/join, bounded by the Fréchet–Hoeffding grids.
//! Restricted to copulas the order coincides with reverse Bruhat order on
//! permutations, but that restriction is not a lattice for `n ≥ 3`.

use std::collections::HashMap;
use std::fmt;

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::copula::QuasiCopula;
use crate::enumeration::{self, EnumerationError};
use crate::matrixrep::Permutation;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrderError {
    #[error("order mismatch: left has n = {left}, right has n = {right}")]
    SizeMismatch { left: usize, right: usize },
}

fn check_sizes(p: &QuasiCopula, q: &QuasiCopula) -> Result<(), OrderError> {
    if p.order() != q.order() {
        return Err(OrderError::SizeMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    Ok(())
}

/// Entrywise comparison `p(i, j) ≤ q(i, j)` for all `i, j`.
pub fn leq(p: &QuasiCopula, q: &QuasiCopula) -> Result<bool, OrderError> {
    check_sizes(p, q)?;
    Ok(leq_same(p, q))
}

pub(crate) fn leq_same(p: &QuasiCopula, q: &QuasiCopula) -> bool {
    p.cells().iter().zip(q.cells()).all(|(a, b)| a <= b)
}

/// Entrywise minimum: the greatest lower bound in the quasi-copula lattice.
pub fn meet(p: &QuasiCopula, q: &QuasiCopula) -> Result<QuasiCopula, OrderError> {
    check_sizes(p, q)?;
    Ok(meet_same(p, q))
}

/// Entrywise maximum: the least upper bound in the quasi-copula lattice.
pub fn join(p: &QuasiCopula, q: &QuasiCopula) -> Result<QuasiCopula, OrderError> {
    check_sizes(p, q)?;
    Ok(join_same(p, q))
}

pub(crate) fn meet_same(p: &QuasiCopula, q: &QuasiCopula) -> QuasiCopula {
    let cells = p
        .cells()
        .iter()
        .zip(q.cells())
        .map(|(a, b)| *a.min(b))
        .collect();
    QuasiCopula::from_cells_unchecked(p.order(), cells)
}

pub(crate) fn join_same(p: &QuasiCopula, q: &QuasiCopula) -> QuasiCopula {
    let cells = p
        .cells()
        .iter()
        .zip(q.cells())
        .map(|(a, b)| *a.max(b))
        .collect();
    QuasiCopula::from_cells_unchecked(p.order(), cells)
}

/// All elements covering `q`: the lattice is graded by the entry sum, so the
/// covers are exactly the valid grids obtained by incrementing one interior
/// entry by one. Empty for the maximum.
pub fn upper_covers(q: &QuasiCopula) -> Vec<QuasiCopula> {
    let n = q.order();
    let mut covers = Vec::new();
    // Entries in row n and column n are pinned by the boundary.
    for i in 1..n {
        for j in 1..n {
            let v = q.entry(i, j);
            let valid = q.entry(i - 1, j) == v
                && q.entry(i, j - 1) == v
                && q.entry(i + 1, j) == v + 1
                && q.entry(i, j + 1) == v + 1;
            if valid {
                let mut cells = q.cells().to_vec();
                cells[i * (n + 1) + j] += 1;
                covers.push(QuasiCopula::from_cells_unchecked(n, cells));
            }
        }
    }
    covers
}

/// The full concordance order on all quasi-copulas of one order, with nodes
/// in lexicographic order and edges the cover relations.
pub struct HasseDiagram {
    n: usize,
    nodes: Vec<QuasiCopula>,
    edges: Vec<(usize, usize)>,
}

impl HasseDiagram {
    pub fn order(&self) -> usize {
        self.n
    }

    pub fn nodes(&self) -> &[QuasiCopula] {
        &self.nodes
    }

    /// Cover pairs `(lower index, upper index)`, sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// DOT rendering with deterministic node identifiers `q000, q001, …` in
    /// node order; labels show the interior grid with `/` between rows.
    pub fn to_dot(&self) -> String {
        use fmt::Write;
        let mut out = String::from("digraph hasse {\n");
        for (idx, node) in self.nodes.iter().enumerate() {
            let label = node
                .interior_rows()
                .iter()
                .map(|row| row.iter().map(i64::to_string).collect::<Vec<_>>().join(" "))
                .collect::<Vec<_>>()
                .join("/");
            writeln!(out, "  q{idx:03} [label=\"{label}\"];").unwrap();
        }
        for &(lo, hi) in &self.edges {
            writeln!(out, "  q{lo:03} -> q{hi:03};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

/// Build the Hasse diagram of all quasi-copulas of order `n` (default
/// enumeration bound 5; `A_5` = 429 nodes).
pub fn hasse(n: usize) -> Result<HasseDiagram, EnumerationError> {
    hasse_with_limit(n, 5)
}

pub fn hasse_with_limit(n: usize, limit: usize) -> Result<HasseDiagram, EnumerationError> {
    let nodes: Vec<QuasiCopula> =
        enumeration::enumerate_quasi_copulas_with_limit(n, limit)?.collect();
    let index: HashMap<&QuasiCopula, usize> =
        nodes.iter().enumerate().map(|(i, q)| (q, i)).collect();
    let mut edges = Vec::new();
    for (lo, node) in nodes.iter().enumerate() {
        for cover in upper_covers(node) {
            let hi = index[&cover];
            edges.push((lo, hi));
        }
    }
    edges.sort_unstable();
    Ok(HasseDiagram { n, nodes, edges })
}

/// Bruhat order: `v ≤ w` iff `v(i, j) ≥ w(i, j)` for all corner counts.
pub fn bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool, OrderError> {
    corner_compare(v, w, |a, b| a >= b)
}

/// Reverse Bruhat order, the restriction of the concordance order to
/// copulas: `v ≤' w` iff `v(i, j) ≤ w(i, j)` for all corner counts.
pub fn reverse_bruhat_leq(v: &Permutation, w: &Permutation) -> Result<bool, OrderError> {
    corner_compare(v, w, |a, b| a <= b)
}

fn corner_compare(
    v: &Permutation,
    w: &Permutation,
    cmp: impl Fn(usize, usize) -> bool,
) -> Result<bool, OrderError> {
    if v.order() != w.order() {
        return Err(OrderError::SizeMismatch {
            left: v.order(),
            right: w.order(),
        });
    }
    let n = v.order();
    for r in 1..=n {
        for s in 1..=n {
            if !cmp(v.corner_count(r, s), w.corner_count(r, s)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Check, over every pair of permutations of order `n`, that reverse Bruhat
/// order agrees with the concordance order of the corner-sum copulas.
/// Intended for `n ≤ 6`.
pub fn verify_order_isomorphism(n: usize) -> bool {
    let perms: Vec<Permutation> = match enumeration::enumerate_copulas(n) {
        Ok(stream) => stream.map(|q| q.permutation().expect("copula")).collect(),
        Err(_) => return false,
    };
    let grids: Vec<QuasiCopula> = perms.iter().map(Permutation::quasi_copula).collect();
    for (i, v) in perms.iter().enumerate() {
        for (j, w) in perms.iter().enumerate() {
            let bruhat = reverse_bruhat_leq(v, w).expect("same order");
            let concordance = leq_same(&grids[i], &grids[j]);
            if bruhat != concordance {
                return false;
            }
        }
    }
    true
}

/// The individual lattice laws checked by [`check_lattice_laws`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeLaw {
    MeetIdempotent,
    JoinIdempotent,
    MeetCommutative,
    JoinCommutative,
    AbsorptionMeetOverJoin,
    AbsorptionJoinOverMeet,
    MeetAssociative,
    JoinAssociative,
    JoinDistributesOverMeet,
    MeetDistributesOverJoin,
}

impl fmt::Display for LatticeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            LatticeLaw::MeetIdempotent => "x ∧ x = x",
            LatticeLaw::JoinIdempotent => "x ∨ x = x",
            LatticeLaw::MeetCommutative => "x ∧ y = y ∧ x",
            LatticeLaw::JoinCommutative => "x ∨ y = y ∨ x",
            LatticeLaw::AbsorptionMeetOverJoin => "x ∧ (x ∨ y) = x",
            LatticeLaw::AbsorptionJoinOverMeet => "x ∨ (x ∧ y) = x",
            LatticeLaw::MeetAssociative => "(x ∧ y) ∧ z = x ∧ (y ∧ z)",
            LatticeLaw::JoinAssociative => "(x ∨ y) ∨ z = x ∨ (y ∨ z)",
            LatticeLaw::JoinDistributesOverMeet => "x ∨ (y ∧ z) = (x ∨ y) ∧ (x ∨ z)",
            LatticeLaw::MeetDistributesOverJoin => "x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)",
        };
        f.write_str(s)
    }
}

/// Outcome of a lattice-law run over an element set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LatticeLawReport {
    /// Every law held on every checked tuple.
    Pass { triples_checked: usize },
    /// The set is not closed under meet or join; indices of the first
    /// offending pair.
    ClosureFailure { pair: (usize, usize) },
    /// First counterexample found, as indices into the element slice.
    LawFailure {
        law: LatticeLaw,
        witness: Vec<usize>,
    },
}

impl LatticeLawReport {
    pub fn passed(&self) -> bool {
        matches!(self, LatticeLawReport::Pass { .. })
    }
}

impl fmt::Display for LatticeLawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LatticeLawReport::Pass { triples_checked } => {
                write!(
                    f,
                    "all lattice laws hold ({triples_checked} triples checked)"
                )
            }
            LatticeLawReport::ClosureFailure { pair: (a, b) } => {
                write!(f, "not closed under meet/join at element pair ({a}, {b})")
            }
            LatticeLawReport::LawFailure { law, witness } => {
                write!(f, "law \"{law}\" fails at elements {witness:?}")
            }
        }
    }
}

/// Verify closure plus idempotence, commutativity, absorption, associativity
/// and both distributive laws over every triple of `elements`.
pub fn check_lattice_laws(elements: &[QuasiCopula]) -> Result<LatticeLawReport, OrderError> {
    let checker = LawChecker::new(elements)?;
    if let Some(fail) = checker.closure_and_pairs() {
        return Ok(fail);
    }
    let m = elements.len();
    let mut triples = 0;
    for x in 0..m {
        for y in 0..m {
            for z in 0..m {
                triples += 1;
                if let Some(fail) = checker.triple_laws(x, y, z) {
                    return Ok(fail);
                }
            }
        }
    }
    Ok(LatticeLawReport::Pass {
        triples_checked: triples,
    })
}

/// Like [`check_lattice_laws`], but the triple laws are evaluated on
/// `samples` pseudo-random triples drawn from a seeded generator; pairwise
/// laws and closure stay exhaustive.
pub fn check_lattice_laws_random(
    elements: &[QuasiCopula],
    samples: usize,
    seed: u64,
) -> Result<LatticeLawReport, OrderError> {
    let checker = LawChecker::new(elements)?;
    if let Some(fail) = checker.closure_and_pairs() {
        return Ok(fail);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let m = elements.len();
    for _ in 0..samples {
        let x = rng.random_range(0..m);
        let y = rng.random_range(0..m);
        let z = rng.random_range(0..m);
        if let Some(fail) = checker.triple_laws(x, y, z) {
            return Ok(fail);
        }
    }
    Ok(LatticeLawReport::Pass {
        triples_checked: samples,
    })
}

struct LawChecker<'a> {
    elements: &'a [QuasiCopula],
}

impl<'a> LawChecker<'a> {
    fn new(elements: &'a [QuasiCopula]) -> Result<Self, OrderError> {
        if let Some(first) = elements.first() {
            for e in elements {
                check_sizes(first, e)?;
            }
        }
        Ok(LawChecker { elements })
    }

    fn closure_and_pairs(&self) -> Option<LatticeLawReport> {
        let els = self.elements;
        let index: HashMap<&QuasiCopula, usize> =
            els.iter().enumerate().map(|(i, q)| (q, i)).collect();
        for (x, p) in els.iter().enumerate() {
            if meet_same(p, p) != *p {
                return Some(LatticeLawReport::LawFailure {
                    law: LatticeLaw::MeetIdempotent,
                    witness: vec![x],
                });
            }
            if join_same(p, p) != *p {
                return Some(LatticeLawReport::LawFailure {
                    law: LatticeLaw::JoinIdempotent,
                    witness: vec![x],
                });
            }
            for (y, q) in els.iter().enumerate() {
                let m = meet_same(p, q);
                let j = join_same(p, q);
                if !index.contains_key(&m) || !index.contains_key(&j) {
                    return Some(LatticeLawReport::ClosureFailure { pair: (x, y) });
                }
                if m != meet_same(q, p) {
                    return Some(LatticeLawReport::LawFailure {
                        law: LatticeLaw::MeetCommutative,
                        witness: vec![x, y],
                    });
                }
                if j != join_same(q, p) {
                    return Some(LatticeLawReport::LawFailure {
                        law: LatticeLaw::JoinCommutative,
                        witness: vec![x, y],
                    });
                }
                if meet_same(p, &j) != *p {
                    return Some(LatticeLawReport::LawFailure {
                        law: LatticeLaw::AbsorptionMeetOverJoin,
                        witness: vec![x, y],
                    });
                }
                if join_same(p, &m) != *p {
                    return Some(LatticeLawReport::LawFailure {
                        law: LatticeLaw::AbsorptionJoinOverMeet,
                        witness: vec![x, y],
                    });
                }
            }
        }
        None
    }

    fn triple_laws(&self, x: usize, y: usize, z: usize) -> Option<LatticeLawReport> {
        let (p, q, r) = (&self.elements[x], &self.elements[y], &self.elements[z]);
        let fail = |law| {
            Some(LatticeLawReport::LawFailure {
                law,
                witness: vec![x, y, z],
            })
        };
        if meet_same(&meet_same(p, q), r) != meet_same(p, &meet_same(q, r)) {
            return fail(LatticeLaw::MeetAssociative);
        }
        if join_same(&join_same(p, q), r) != join_same(p, &join_same(q, r)) {
            return fail(LatticeLaw::JoinAssociative);
        }
        if join_same(p, &meet_same(q, r)) != meet_same(&join_same(p, q), &join_same(p, r)) {
            return fail(LatticeLaw::JoinDistributesOverMeet);
        }
        if meet_same(p, &join_same(q, r)) != join_same(&meet_same(p, q), &meet_same(p, r)) {
            return fail(LatticeLaw::MeetDistributesOverJoin);
        }
        None
    }
}

/// The two sublattice candidates that fail to be lattices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NonLatticeSubset {
    /// Copulas only; not a lattice for `n ≥ 3`.
    Copulas,
    /// Proper quasi-copulas only; not a lattice for `n ≥ 4`.
    ProperQuasiCopulas,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("subset is a lattice or trivially small at n = {n} (needs n >= {min})")]
pub struct WitnessError {
    pub n: usize,
    pub min: usize,
}

/// A pair inside the subset whose meet (taken in the full quasi-copula
/// lattice) escapes the subset, witnessing that the subset is not a lattice.
///
/// For copulas the pair is `Q(13245…n), Q(21345…n)`, whose meet is proper;
/// for proper quasi-copulas it is a fixed order-4 pair padded with fixed
/// points, whose meet is a copula.
pub fn non_lattice_witness(
    n: usize,
    subset: NonLatticeSubset,
) -> Result<(QuasiCopula, QuasiCopula), WitnessError> {
    match subset {
        NonLatticeSubset::Copulas => {
            if n < 3 {
                return Err(WitnessError { n, min: 3 });
            }
            let mut v: Vec<usize> = (1..=n).collect();
            v.swap(1, 2); // 13245…n
            let mut w: Vec<usize> = (1..=n).collect();
            w.swap(0, 1); // 21345…n
            let v = Permutation::from_word(v).expect("permutation");
            let w = Permutation::from_word(w).expect("permutation");
            Ok((v.quasi_copula(), w.quasi_copula()))
        }
        NonLatticeSubset::ProperQuasiCopulas => {
            if n < 4 {
                return Err(WitnessError { n, min: 4 });
            }
            use crate::matrixrep::SignMatrix;
            let a = SignMatrix::from_rows(&[
                vec![0, 0, 0, 1],
                vec![0, 1, 0, 0],
                vec![1, -1, 1, 0],
                vec![0, 1, 0, 0],
            ])
            .expect("proper sign matrix");
            let b = SignMatrix::from_rows(&[
                vec![0, 0, 1, 0],
                vec![0, 1, -1, 1],
                vec![0, 0, 1, 0],
                vec![1, 0, 0, 0],
            ])
            .expect("proper sign matrix");
            let pad: Vec<SignMatrix> = std::iter::repeat_with(|| SignMatrix::lukasiewicz(1))
                .take(n - 4)
                .collect();
            let embed = |m: SignMatrix| {
                let mut blocks = vec![m];
                blocks.extend(pad.iter().cloned());
                SignMatrix::ordinal_sum(&blocks)
                    .expect("non-empty")
                    .quasi_copula()
            };
            Ok((embed(a), embed(b)))
        }
    }
}
