//! Exhaustive generators for all quasi-copulas and copulas of a given order.
//!
//! Quasi-copulas are generated directly on their corner-sum grids: every
//! interior cell extends its partial grid by one of at most two values
//! allowed by the unit-step constraints, with the Fréchet–Hoeffding bounds
//! used as pruning so that no partial grid is ever abandoned. The output
//! count of order `n` is the Robbins number `A_n` (the number of `n×n`
//! alternating sign matrices); copulas are generated through the `n!`
//! permutations instead.

use itertools::Itertools;
pub use num::BigUint;
use thiserror::Error;

use crate::copula::QuasiCopula;
use crate::matrixrep::Permutation;

/// Default cap for [`enumerate_quasi_copulas`] (`A_6` = 7436 grids).
pub const QUASI_COPULA_ENUM_BOUND: usize = 6;
/// Default cap for [`enumerate_copulas`] (`8!` = 40320 copulas).
pub const COPULA_ENUM_BOUND: usize = 8;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum EnumerationError {
    #[error("enumerating order {n} would produce {projected} elements, above the bound n <= {limit}; raise the limit explicitly to proceed")]
    BoundExceeded {
        n: usize,
        limit: usize,
        projected: BigUint,
    },
    #[error("cannot enumerate order 0")]
    OrderZero,
}

/// Robbins number `A_n = Π_{i=0}^{n−1} (3i+1)! / (n+i)!`, the number of
/// `n×n` alternating sign matrices and hence `|Q_n|`.
pub fn robbins(n: usize) -> BigUint {
    let mut numerator = BigUint::from(1u32);
    let mut denominator = BigUint::from(1u32);
    for i in 0..n {
        numerator *= factorial(3 * i + 1);
        denominator *= factorial(n + i);
    }
    // The product formula is an exact integer; division leaves no remainder.
    &numerator / &denominator
}

fn factorial(k: usize) -> BigUint {
    (1..=k as u64)
        .map(BigUint::from)
        .product::<BigUint>()
        .max(BigUint::from(1u32))
}

/// Stream of every quasi-copula of order `n` in lexicographic order of the
/// flattened interior grid, guarded by the default bound.
pub fn enumerate_quasi_copulas(n: usize) -> Result<QuasiCopulaIter, EnumerationError> {
    enumerate_quasi_copulas_with_limit(n, QUASI_COPULA_ENUM_BOUND)
}

/// Same stream with an explicit bound for callers prepared to pay for it.
pub fn enumerate_quasi_copulas_with_limit(
    n: usize,
    limit: usize,
) -> Result<QuasiCopulaIter, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::OrderZero);
    }
    if n > limit {
        return Err(EnumerationError::BoundExceeded {
            n,
            limit,
            projected: robbins(n),
        });
    }
    Ok(QuasiCopulaIter::new(n))
}

/// Stream of every copula of order `n`, i.e. the corner-sum grids of all
/// `n!` permutations in lexicographic word order.
pub fn enumerate_copulas(n: usize) -> Result<impl Iterator<Item = QuasiCopula>, EnumerationError> {
    enumerate_copulas_with_limit(n, COPULA_ENUM_BOUND)
}

pub fn enumerate_copulas_with_limit(
    n: usize,
    limit: usize,
) -> Result<impl Iterator<Item = QuasiCopula>, EnumerationError> {
    if n == 0 {
        return Err(EnumerationError::OrderZero);
    }
    if n > limit {
        return Err(EnumerationError::BoundExceeded {
            n,
            limit,
            projected: factorial(n),
        });
    }
    Ok((1..=n).permutations(n).map(|word| {
        Permutation::from_word(word)
            .expect("generated word is a permutation")
            .quasi_copula()
    }))
}

/// Depth-first generator over interior cells. At cell `(i, j)` the value
/// must sit in `lo..=hi` with `lo = max(Q(i,j−1), Q(i−1,j), i+j−n)` and
/// `hi = min(Q(i,j−1), Q(i−1,j)) + 1` capped at `i`; the window is never
/// empty, so the search backtracks only over genuine choices.
#[derive(Debug)]
pub struct QuasiCopulaIter {
    n: usize,
    grid: Vec<i64>,
    /// One frame per filled interior cell: the chosen value and whether the
    /// alternative `value + 1` is still available.
    stack: Vec<(i64, bool)>,
    state: IterState,
}

#[derive(Debug)]
enum IterState {
    Fresh,
    Running,
    Done,
}

impl QuasiCopulaIter {
    fn new(n: usize) -> Self {
        QuasiCopulaIter {
            n,
            grid: vec![0; (n + 1) * (n + 1)],
            stack: Vec::with_capacity(n * n),
            state: IterState::Fresh,
        }
    }

    fn at(&self, i: usize, j: usize) -> i64 {
        self.grid[i * (self.n + 1) + j]
    }

    fn window(&self, i: usize, j: usize) -> (i64, i64) {
        let left = self.at(i, j - 1);
        let up = self.at(i - 1, j);
        let lo = left.max(up).max(i as i64 + j as i64 - self.n as i64);
        let hi = (left.min(up) + 1).min(i as i64);
        debug_assert!(lo <= hi);
        (lo, hi)
    }

    /// Fill every cell from `cell` onward with the smallest admissible value.
    fn descend(&mut self, mut cell: usize) {
        let n = self.n;
        while cell < n * n {
            let (i, j) = (cell / n + 1, cell % n + 1);
            let (lo, hi) = self.window(i, j);
            self.grid[i * (n + 1) + j] = lo;
            self.stack.push((lo, hi > lo));
            cell += 1;
        }
    }

    /// Pop to the deepest cell with an unused alternative and take it.
    fn backtrack(&mut self) -> bool {
        while let Some((value, has_alt)) = self.stack.pop() {
            let cell = self.stack.len();
            let (i, j) = (cell / self.n + 1, cell % self.n + 1);
            if has_alt {
                self.grid[i * (self.n + 1) + j] = value + 1;
                self.stack.push((value + 1, false));
                self.descend(cell + 1);
                return true;
            }
        }
        false
    }
}

impl Iterator for QuasiCopulaIter {
    type Item = QuasiCopula;

    fn next(&mut self) -> Option<QuasiCopula> {
        match self.state {
            IterState::Fresh => {
                self.state = IterState::Running;
                self.descend(0);
            }
            IterState::Running => {
                if !self.backtrack() {
                    self.state = IterState::Done;
                    return None;
                }
            }
            IterState::Done => return None,
        }
        Some(QuasiCopula::from_cells_unchecked(self.n, self.grid.clone()))
    }
}
