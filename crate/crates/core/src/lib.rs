//! Exact arithmetic for irreducible discrete quasi-copulas.
//!
//! An irreducible discrete quasi-copula of order `n` is an integer grid on
//! `{0, …, n} × {0, …, n}` with fixed margins and unit steps; these grids are
//! exactly the corner-sum functions of alternating sign matrices, and the
//! copulas among them are the corner-sum functions of permutation matrices.
//! This crate provides:
//!
//! * the grid type with its validator and the Fréchet–Hoeffding bounds
//!   ([`copula`]),
//! * permutations, sign matrices and the corner-sum bijections between the
//!   three representations ([`matrixrep`]),
//! * the entrywise concordance order, its meets/joins, Hasse diagrams and
//!   Bruhat-order comparisons ([`order`]),
//! * meet-irreducible elements, antichain decompositions and a generic
//!   Dedekind-MacNeille completion ([`irreducible`], [`poset`]),
//! * exact rank statistics: inversion counts, Kendall's τ, Spearman's ρ and
//!   the lattice rank function ([`stats`]),
//! * exhaustive enumeration of all quasi-copulas (Robbins numbers) and all
//!   copulas of a given order ([`enumeration`]),
//! * the plain-text formats used by the command line tool ([`formats`]).
//!
//! Everything is integer or rational arithmetic; no floating point is used
//! anywhere.
//!
//! ```
//! use qcop_core::{Permutation, Rational};
//! use qcop_core::irreducible::{decompose, is_meet_irreducible};
//! use qcop_core::stats::{kendall_tau, m_value};
//!
//! let q = Permutation::from_word(vec![2, 3, 1]).unwrap().quasi_copula();
//! assert_eq!(m_value(&q), 3);
//! assert_eq!(kendall_tau(&q).unwrap(), Rational::new(-1, 3));
//! assert!(is_meet_irreducible(&q));
//! assert_eq!(decompose(&q), vec![q]);
//! ```

pub mod copula;
pub mod enumeration;
pub mod formats;
pub mod irreducible;
pub mod matrixrep;
pub mod order;
pub mod poset;
pub mod stats;

pub use copula::{classify, Classification, PositionSets, QuasiCopula};
pub use matrixrep::{BigrassmannianParams, Permutation, SignMatrix};
pub use order::HasseDiagram;
pub use poset::{CompletionLattice, FinitePoset};
pub use stats::{Rational, StatsReport};
