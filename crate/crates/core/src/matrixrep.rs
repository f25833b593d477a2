//! Permutations, alternating sign matrices and the corner-sum bijections.
//!
//! Quasi-copulas of order `n` correspond bijectively to `n×n` alternating
//! sign matrices via corner sums (`Q(r, s) = Σ_{i≤r, j≤s} a_ij`) and second
//! differences; the copulas among them correspond to permutation matrices.
//! This module also houses the descent/inversion combinatorics of
//! permutations, the four-integer parameterization of bigrassmannian
//! permutations and the Lukasiewicz ordinal-sum structure that characterizes
//! associative copulas.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::copula::QuasiCopula;

/// A permutation of `[n] = {1, …, n}` in one-line notation.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    word: Vec<usize>,
}

/// An `n×n` matrix over `{−1, 0, 1}` whose rows and columns sum to 1 with
/// all prefix sums in `{0, 1}` (alternating sign matrix). Permutation
/// matrices are exactly the sign matrices without `−1` entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignMatrix {
    n: usize,
    entries: Vec<i32>, // row-major
}

/// The tuple `(i1, i2, i3, i4)` with `i1 + i2 + i3 + i4 = n`, `i2, i3 ≥ 1`,
/// naming the bigrassmannian permutation that fixes `1..=i1` and
/// `n−i4+1..=n` and swaps the two middle blocks of lengths `i2` and `i3`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BigrassmannianParams {
    pub i1: usize,
    pub i2: usize,
    pub i3: usize,
    pub i4: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum PermutationError {
    #[error("a permutation word must be non-empty")]
    Empty,
    #[error("entry {value} at position {position} is outside 1..={n}")]
    OutOfRange {
        position: usize,
        value: usize,
        n: usize,
    },
    #[error("value {value} appears more than once")]
    Duplicate { value: usize },
}

/// First violated sign-matrix constraint, with the offending indices.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum SignMatrixError {
    #[error("matrix is not square: {rows} rows, but row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("matrix must be non-empty")]
    Empty,
    #[error("entry ({i},{j}) is {value}, must be -1, 0 or 1")]
    BadEntry { i: usize, j: usize, value: i64 },
    #[error("row {i} prefix sum through column {j} is {sum}, must be 0 or 1")]
    RowPrefix { i: usize, j: usize, sum: i32 },
    #[error("column {j} prefix sum through row {i} is {sum}, must be 0 or 1")]
    ColPrefix { i: usize, j: usize, sum: i32 },
    #[error("row {i} sums to {sum}, must be 1")]
    RowSum { i: usize, sum: i32 },
    #[error("column {j} sums to {sum}, must be 1")]
    ColSum { j: usize, sum: i32 },
}

/// Conversion to a permutation requires a copula; proper quasi-copulas carry
/// a negative position.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("not a copula: negative position at ({},{})", negative.0, negative.1)]
pub struct NotCopulaError {
    pub negative: (usize, usize),
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
#[error("not bigrassmannian: {left} left and {right} right descents, need exactly one of each")]
pub struct NotBigrassmannianError {
    pub left: usize,
    pub right: usize,
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParamsError {
    #[error("middle block lengths must be at least 1, got i2={i2}, i3={i3}")]
    EmptyMiddleBlock { i2: usize, i3: usize },
}

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum OrdinalSumError {
    #[error("ordinal sum of an empty block list is undefined")]
    Empty,
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.word.iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

impl Permutation {
    /// Validate a one-line word: a bijection of `{1, …, n}`.
    pub fn from_word(word: Vec<usize>) -> Result<Self, PermutationError> {
        let n = word.len();
        if n == 0 {
            return Err(PermutationError::Empty);
        }
        let mut seen = vec![false; n + 1];
        for (k, &v) in word.iter().enumerate() {
            if v == 0 || v > n {
                return Err(PermutationError::OutOfRange {
                    position: k + 1,
                    value: v,
                    n,
                });
            }
            if seen[v] {
                return Err(PermutationError::Duplicate { value: v });
            }
            seen[v] = true;
        }
        Ok(Permutation { word })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n).collect(),
        }
    }

    /// The reverse permutation `i ↦ n − i + 1`.
    pub fn reverse(n: usize) -> Self {
        assert!(n >= 1);
        Permutation {
            word: (1..=n).rev().collect(),
        }
    }

    /// The Coxeter generator `s_i`, the transposition of `i` and `i + 1`.
    pub fn adjacent_transposition(n: usize, i: usize) -> Self {
        assert!((1..n).contains(&i));
        let mut word: Vec<usize> = (1..=n).collect();
        word.swap(i - 1, i);
        Permutation { word }
    }

    pub fn order(&self) -> usize {
        self.word.len()
    }

    /// The image `w(i)`, 1-based.
    pub fn image(&self, i: usize) -> usize {
        self.word[i - 1]
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn inverse(&self) -> Self {
        let mut word = vec![0; self.word.len()];
        for (k, &v) in self.word.iter().enumerate() {
            word[v - 1] = k + 1;
        }
        Permutation { word }
    }

    /// Whether the word equals some Coxeter generator `s_i`.
    pub fn is_adjacent_transposition(&self) -> bool {
        let n = self.order();
        (1..n).any(|i| *self == Permutation::adjacent_transposition(n, i))
    }

    /// Corner count `w(r, s) = |{k ≤ r : w(k) ≤ s}|`, the entry grid compared
    /// by the Bruhat orders. Accepts `r, s ∈ {0, …, n}`.
    pub fn corner_count(&self, r: usize, s: usize) -> usize {
        self.word[..r].iter().filter(|&&v| v <= s).count()
    }

    /// The number of inversions, equal to the Coxeter length.
    pub fn inversion_count(&self) -> usize {
        let w = &self.word;
        let mut count = 0;
        for i in 0..w.len() {
            for j in i + 1..w.len() {
                if w[i] > w[j] {
                    count += 1;
                }
            }
        }
        count
    }

    /// Right descents `{i ∈ [n−1] : w(i) > w(i+1)}`.
    pub fn right_descents(&self) -> BTreeSet<usize> {
        (1..self.order())
            .filter(|&i| self.word[i - 1] > self.word[i])
            .collect()
    }

    /// Left descents `{i ∈ [n−1] : w⁻¹(i) > w⁻¹(i+1)}`.
    pub fn left_descents(&self) -> BTreeSet<usize> {
        self.inverse().right_descents()
    }

    /// Whether both descent sets are singletons, the structural
    /// characterization of meet-irreducibility in reverse Bruhat order.
    pub fn is_bigrassmannian(&self) -> bool {
        self.right_descents().len() == 1 && self.left_descents().len() == 1
    }

    /// Recover the unique `(i1, i2, i3, i4)` of a bigrassmannian word.
    ///
    /// With `k` the right descent and `l` the left descent, the block
    /// structure forces `k = i1 + i2`, `l = i1 + i3` and
    /// `w(k) = i1 + i2 + i3`, which pins all four lengths.
    pub fn bigrassmannian_params(&self) -> Result<BigrassmannianParams, NotBigrassmannianError> {
        let right = self.right_descents();
        let left = self.left_descents();
        if right.len() != 1 || left.len() != 1 {
            return Err(NotBigrassmannianError {
                left: left.len(),
                right: right.len(),
            });
        }
        let k = *right.iter().next().unwrap();
        let l = *left.iter().next().unwrap();
        let wk = self.image(k);
        let i1 = (k + l).checked_sub(wk).expect("descent structure");
        let params = BigrassmannianParams {
            i1,
            i2: k - i1,
            i3: l - i1,
            i4: self.order() - wk,
        };
        debug_assert_eq!(&params.permutation(), self);
        Ok(params)
    }

    /// The copula with this permutation matrix: corner sums
    /// `Q(r, s) = |{i ≤ r : w(i) ≤ s}|`.
    pub fn quasi_copula(&self) -> QuasiCopula {
        let n = self.order();
        let mut cells = Vec::with_capacity((n + 1) * (n + 1));
        for r in 0..=n {
            let mut count = 0i64;
            let mut row = vec![0i64; n + 1];
            // counts of w(i) <= s for i <= r, accumulated over s
            let mut hits = vec![0i64; n + 1];
            for i in 0..r {
                hits[self.word[i]] += 1;
            }
            for s in 1..=n {
                count += hits[s];
                row[s] = count;
            }
            cells.extend_from_slice(&row);
        }
        QuasiCopula::from_cells_unchecked(n, cells)
    }

    /// The permutation matrix `A(w)`.
    pub fn sign_matrix(&self) -> SignMatrix {
        let n = self.order();
        let mut entries = vec![0i32; n * n];
        for (i, &v) in self.word.iter().enumerate() {
            entries[i * n + (v - 1)] = 1;
        }
        SignMatrix { n, entries }
    }
}

impl BigrassmannianParams {
    pub fn new(i1: usize, i2: usize, i3: usize, i4: usize) -> Result<Self, ParamsError> {
        if i2 == 0 || i3 == 0 {
            return Err(ParamsError::EmptyMiddleBlock { i2, i3 });
        }
        Ok(BigrassmannianParams { i1, i2, i3, i4 })
    }

    pub fn order(&self) -> usize {
        self.i1 + self.i2 + self.i3 + self.i4
    }

    /// The bigrassmannian word: `i ↦ i` on the outer blocks, `i ↦ i + i3` on
    /// the second block and `i ↦ i − i2` on the third.
    pub fn permutation(&self) -> Permutation {
        let n = self.order();
        let word = (1..=n)
            .map(|i| {
                if i <= self.i1 {
                    i
                } else if i <= self.i1 + self.i2 {
                    i + self.i3
                } else if i <= self.i1 + self.i2 + self.i3 {
                    i - self.i2
                } else {
                    i
                }
            })
            .collect();
        Permutation { word }
    }

    /// All valid tuples summing to `n`, in lexicographic order.
    pub fn enumerate(n: usize) -> Vec<BigrassmannianParams> {
        let mut out = Vec::new();
        if n < 2 {
            return out;
        }
        for i1 in 0..=n - 2 {
            for i2 in 1..=n - i1 - 1 {
                for i3 in 1..=n - i1 - i2 {
                    let i4 = n - i1 - i2 - i3;
                    out.push(BigrassmannianParams { i1, i2, i3, i4 });
                }
            }
        }
        out
    }
}

impl SignMatrix {
    /// Validate row-major entries against the alternating-sign constraints,
    /// reporting the first violation.
    pub fn from_entries(n: usize, entries: Vec<i32>) -> Result<Self, SignMatrixError> {
        if n == 0 {
            return Err(SignMatrixError::Empty);
        }
        assert_eq!(entries.len(), n * n);
        for i in 1..=n {
            let mut prefix = 0;
            for j in 1..=n {
                let v = entries[(i - 1) * n + (j - 1)];
                if !(-1..=1).contains(&v) {
                    return Err(SignMatrixError::BadEntry {
                        i,
                        j,
                        value: v as i64,
                    });
                }
                prefix += v;
                if prefix != 0 && prefix != 1 {
                    return Err(SignMatrixError::RowPrefix { i, j, sum: prefix });
                }
            }
            if prefix != 1 {
                return Err(SignMatrixError::RowSum { i, sum: prefix });
            }
        }
        for j in 1..=n {
            let mut prefix = 0;
            for i in 1..=n {
                prefix += entries[(i - 1) * n + (j - 1)];
                if prefix != 0 && prefix != 1 {
                    return Err(SignMatrixError::ColPrefix { i, j, sum: prefix });
                }
            }
            if prefix != 1 {
                return Err(SignMatrixError::ColSum { j, sum: prefix });
            }
        }
        Ok(SignMatrix { n, entries })
    }

    /// Validate a matrix given as rows of wide integers (e.g. parsed text).
    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self, SignMatrixError> {
        let n = rows.len();
        if n == 0 {
            return Err(SignMatrixError::Empty);
        }
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n {
                return Err(SignMatrixError::NotSquare {
                    rows: n,
                    row,
                    len: r.len(),
                });
            }
        }
        // Range-check before narrowing so huge values report cleanly.
        for (i, r) in rows.iter().enumerate() {
            for (j, &v) in r.iter().enumerate() {
                if !(-1..=1).contains(&v) {
                    return Err(SignMatrixError::BadEntry {
                        i: i + 1,
                        j: j + 1,
                        value: v,
                    });
                }
            }
        }
        let entries = rows.iter().flatten().map(|&v| v as i32).collect();
        Self::from_entries(n, entries)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `a_ij`, 1-based.
    pub fn entry(&self, i: usize, j: usize) -> i32 {
        self.entries[(i - 1) * self.n + (j - 1)]
    }

    pub fn rows(&self) -> Vec<Vec<i32>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    pub fn is_permutation_matrix(&self) -> bool {
        self.entries.iter().all(|&v| v >= 0)
    }

    /// The permutation whose matrix this is, reading the position of the 1
    /// in each row; proper sign matrices are rejected.
    pub fn permutation(&self) -> Result<Permutation, NotCopulaError> {
        if let Some(pos) = self.entries.iter().position(|&v| v < 0) {
            return Err(NotCopulaError {
                negative: (pos / self.n + 1, pos % self.n + 1),
            });
        }
        let word = (1..=self.n)
            .map(|i| {
                (1..=self.n)
                    .find(|&j| self.entry(i, j) == 1)
                    .expect("row sum 1")
            })
            .collect();
        Ok(Permutation { word })
    }

    /// The quasi-copula with these second differences: corner sums
    /// `Q(r, s) = Σ_{i≤r, j≤s} a_ij`.
    pub fn quasi_copula(&self) -> QuasiCopula {
        let n = self.n;
        let mut cells = vec![0i64; (n + 1) * (n + 1)];
        for i in 1..=n {
            for j in 1..=n {
                cells[i * (n + 1) + j] = self.entry(i, j) as i64
                    + cells[(i - 1) * (n + 1) + j]
                    + cells[i * (n + 1) + (j - 1)]
                    - cells[(i - 1) * (n + 1) + (j - 1)];
            }
        }
        QuasiCopula::from_cells_unchecked(n, cells)
    }

    /// The Lukasiewicz matrix: the anti-diagonal permutation matrix, i.e.
    /// `a_ij = 1` exactly when `i + j = n + 1`.
    pub fn lukasiewicz(n: usize) -> Self {
        Permutation::reverse(n).sign_matrix()
    }

    /// Block-diagonal composition; the result is a permutation matrix iff
    /// all blocks are.
    pub fn ordinal_sum(blocks: &[SignMatrix]) -> Result<Self, OrdinalSumError> {
        if blocks.is_empty() {
            return Err(OrdinalSumError::Empty);
        }
        let n: usize = blocks.iter().map(|b| b.n).sum();
        let mut entries = vec![0i32; n * n];
        let mut offset = 0;
        for b in blocks {
            for i in 1..=b.n {
                for j in 1..=b.n {
                    entries[(offset + i - 1) * n + (offset + j - 1)] = b.entry(i, j);
                }
            }
            offset += b.n;
        }
        Ok(SignMatrix { n, entries })
    }

    /// Split a permutation matrix into consecutive anti-diagonal blocks,
    /// the structural test for associativity of the corner-sum copula.
    /// `None` when no such decomposition exists (in particular for every
    /// proper sign matrix, which is not a permutation matrix at all).
    pub fn lukasiewicz_decomposition(&self) -> Option<Vec<usize>> {
        let w = self.permutation().ok()?;
        let mut sizes = Vec::new();
        let mut pos = 1;
        while pos <= self.n {
            let k = w.image(pos).checked_sub(pos)? + 1;
            for i in 1..=k {
                if w.image(pos + i - 1) != pos + k - i {
                    return None;
                }
            }
            sizes.push(k);
            pos += k;
        }
        Some(sizes)
    }
}

impl QuasiCopula {
    /// The unique sign matrix with these corner sums, i.e. the grid of
    /// second-order differences.
    pub fn sign_matrix(&self) -> SignMatrix {
        let n = self.order();
        let entries: Vec<i32> = (1..=n)
            .flat_map(|i| (1..=n).map(move |j| self.second_difference(i, j) as i32))
            .collect();
        // Totality of the correspondence: second differences of a valid grid
        // always satisfy the alternating-sign constraints.
        debug_assert!(SignMatrix::from_entries(n, entries.clone()).is_ok());
        SignMatrix { n, entries }
    }

    /// The permutation of a copula (positions of the 1's per row of its
    /// permutation matrix); proper quasi-copulas are rejected with one of
    /// their negative positions.
    pub fn permutation(&self) -> Result<Permutation, NotCopulaError> {
        self.sign_matrix().permutation()
    }
}
