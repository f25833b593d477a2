//! The quasi-copula grid type, its validator and the Fréchet–Hoeffding bounds.
//!
//! A grid `Q` of order `n` stores integer values `Q(i, j)` for
//! `i, j ∈ {0, …, n}`. The margins are pinned (`Q(i, 0) = Q(0, i) = 0`,
//! `Q(i, n) = Q(n, i) = i`) and consecutive entries differ by 0 or 1 in each
//! direction; this step characterization is equivalent to the usual
//! monotonicity-plus-boundary axioms and keeps every entry inside
//! `{0, …, n}`. A grid is a *copula* when additionally every 2×2 square is
//! 2-increasing, i.e. no second-order difference is negative; otherwise it is
//! a *proper* quasi-copula.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

/// Verdict of [`classify`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classification {
    /// The grid violates the boundary or step conditions.
    NotQuasiCopula,
    /// Valid quasi-copula with at least one negative second-order difference.
    ProperQuasiCopula,
    /// Fully 2-increasing: every second-order difference is nonnegative.
    Copula,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Classification::NotQuasiCopula => "NotQuasiCopula",
            Classification::ProperQuasiCopula => "ProperQuasiCopula",
            Classification::Copula => "Copula",
        };
        f.write_str(s)
    }
}

/// Positions of the +1 and −1 second-order differences of a grid.
///
/// `(i, j)` is *positive* when the difference
/// `Q(i,j) + Q(i−1,j−1) − Q(i,j−1) − Q(i−1,j)` is `+1` and *negative* when it
/// is `−1`; these are exactly the nonzero entries of the associated sign
/// matrix. Indices are 1-based.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PositionSets {
    pub positive: BTreeSet<(usize, usize)>,
    pub negative: BTreeSet<(usize, usize)>,
}

/// Structural problems with a raw input grid, as opposed to a mathematical
/// [`Classification::NotQuasiCopula`] verdict.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StructureError {
    #[error("grid must be square with side at least 2, got {rows} rows")]
    TooSmall { rows: usize },
    #[error("grid is not square: {rows} rows, but row {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
}

/// First violated quasi-copula condition found in a grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    Boundary {
        i: usize,
        j: usize,
        expected: i64,
        found: i64,
    },
    /// `Q(i,j) − Q(i−1,j)` outside `{0, 1}`.
    VerticalStep { i: usize, j: usize, diff: i64 },
    /// `Q(i,j) − Q(i,j−1)` outside `{0, 1}`.
    HorizontalStep { i: usize, j: usize, diff: i64 },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Boundary {
                i,
                j,
                expected,
                found,
            } => write!(
                f,
                "boundary entry ({i},{j}) must be {expected}, found {found}"
            ),
            Violation::VerticalStep { i, j, diff } => {
                write!(f, "vertical step at ({i},{j}) is {diff}, must be 0 or 1")
            }
            Violation::HorizontalStep { i, j, diff } => {
                write!(f, "horizontal step at ({i},{j}) is {diff}, must be 0 or 1")
            }
        }
    }
}

/// Rejection reasons when constructing a [`QuasiCopula`] from raw data.
#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum GridError {
    #[error(transparent)]
    Structure(#[from] StructureError),
    #[error("not a quasi-copula: {0}")]
    NotQuasiCopula(Violation),
    #[error("grid order must be at least 1")]
    OrderZero,
}

/// An irreducible discrete quasi-copula of order `n`, stored as the full
/// `(n+1)×(n+1)` grid including the zero-th row and column.
///
/// Values are immutable after construction and always satisfy the boundary
/// and step invariants; text formats omit the zero border.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuasiCopula {
    n: usize,
    cells: Vec<i64>, // row-major, (n+1)^2 entries
}

impl fmt::Debug for QuasiCopula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QuasiCopula(n={}, interior=[", self.n)?;
        for i in 1..=self.n {
            if i > 1 {
                write!(f, "; ")?;
            }
            for j in 1..=self.n {
                if j > 1 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.entry(i, j))?;
            }
        }
        write!(f, "])")
    }
}

/// Classify a raw square grid (border included).
///
/// Returns a structural error for non-square input; a grid that parses but
/// fails the quasi-copula conditions is a mathematical
/// [`Classification::NotQuasiCopula`], not an error.
pub fn classify(grid: &[Vec<i64>]) -> Result<Classification, StructureError> {
    check_square(grid)?;
    if first_violation(grid).is_some() {
        return Ok(Classification::NotQuasiCopula);
    }
    let n = grid.len() - 1;
    for i in 1..=n {
        for j in 1..=n {
            if grid[i][j] + grid[i - 1][j - 1] - grid[i][j - 1] - grid[i - 1][j] < 0 {
                return Ok(Classification::ProperQuasiCopula);
            }
        }
    }
    Ok(Classification::Copula)
}

/// Find the first violated boundary or step condition of a square grid, in
/// row-major scan order. `None` means the grid is a valid quasi-copula.
#[allow(clippy::needless_range_loop)] // cross-indexes grid[i][j] and grid[j][i]
pub fn first_violation(grid: &[Vec<i64>]) -> Option<Violation> {
    let n = grid.len() - 1;
    for i in 0..=n {
        for (j, expected) in [(0usize, 0i64), (n, i as i64)] {
            if grid[i][j] != expected {
                return Some(Violation::Boundary {
                    i,
                    j,
                    expected,
                    found: grid[i][j],
                });
            }
            if grid[j][i] != expected {
                return Some(Violation::Boundary {
                    i: j,
                    j: i,
                    expected,
                    found: grid[j][i],
                });
            }
        }
    }
    for i in 1..=n {
        for j in 1..=n {
            let dv = grid[i][j] - grid[i - 1][j];
            if dv != 0 && dv != 1 {
                return Some(Violation::VerticalStep { i, j, diff: dv });
            }
            let dh = grid[i][j] - grid[i][j - 1];
            if dh != 0 && dh != 1 {
                return Some(Violation::HorizontalStep { i, j, diff: dh });
            }
        }
    }
    None
}

fn check_square(grid: &[Vec<i64>]) -> Result<(), StructureError> {
    let rows = grid.len();
    if rows < 2 {
        return Err(StructureError::TooSmall { rows });
    }
    for (row, r) in grid.iter().enumerate() {
        if r.len() != rows {
            return Err(StructureError::NotSquare {
                rows,
                row,
                len: r.len(),
            });
        }
    }
    Ok(())
}

impl QuasiCopula {
    /// Validate a full bordered grid and take ownership of it.
    pub fn from_full_grid(grid: &[Vec<i64>]) -> Result<Self, GridError> {
        check_square(grid)?;
        if let Some(v) = first_violation(grid) {
            return Err(GridError::NotQuasiCopula(v));
        }
        let n = grid.len() - 1;
        let cells = grid.iter().flat_map(|r| r.iter().copied()).collect();
        Ok(QuasiCopula { n, cells })
    }

    /// Validate an interior `n×n` grid; the zero border is synthesized.
    pub fn from_interior(rows: &[Vec<i64>]) -> Result<Self, GridError> {
        let full = interior_to_full(rows);
        Self::from_full_grid(&full)
    }

    /// Internal constructor for values produced by generators that maintain
    /// the invariants themselves.
    pub(crate) fn from_cells_unchecked(n: usize, cells: Vec<i64>) -> Self {
        debug_assert_eq!(cells.len(), (n + 1) * (n + 1));
        QuasiCopula { n, cells }
    }

    /// Fréchet–Hoeffding lower bound `W_n(i, j) = max(i + j − n, 0)`, the
    /// minimum of the concordance order.
    pub fn frechet_lower(n: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::OrderZero);
        }
        let mut cells = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n as i64 {
            for j in 0..=n as i64 {
                cells.push((i + j - n as i64).max(0));
            }
        }
        Ok(QuasiCopula { n, cells })
    }

    /// Fréchet–Hoeffding upper bound `M_n(i, j) = min(i, j)`, the maximum of
    /// the concordance order.
    pub fn frechet_upper(n: usize) -> Result<Self, GridError> {
        if n == 0 {
            return Err(GridError::OrderZero);
        }
        let mut cells = Vec::with_capacity((n + 1) * (n + 1));
        for i in 0..=n as i64 {
            for j in 0..=n as i64 {
                cells.push(i.min(j));
            }
        }
        Ok(QuasiCopula { n, cells })
    }

    /// Grid order `n`.
    pub fn order(&self) -> usize {
        self.n
    }

    /// Entry `Q(i, j)` with `i, j ∈ {0, …, n}`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        assert!(i <= self.n && j <= self.n, "entry ({i},{j}) out of range");
        self.cells[i * (self.n + 1) + j]
    }

    pub(crate) fn cells(&self) -> &[i64] {
        &self.cells
    }

    /// Interior rows `Q(i, 1..=n)` for `i = 1..=n`, the representation used
    /// by the text formats.
    pub fn interior_rows(&self) -> Vec<Vec<i64>> {
        (1..=self.n)
            .map(|i| (1..=self.n).map(|j| self.entry(i, j)).collect())
            .collect()
    }

    /// Lexicographic comparison on `(n, flattened grid)`; the canonical
    /// ordering used for deterministic output.
    pub fn lex_cmp(&self, other: &Self) -> Ordering {
        self.n
            .cmp(&other.n)
            .then_with(|| self.cells.cmp(&other.cells))
    }

    /// Second-order difference `Q(i,j) + Q(i−1,j−1) − Q(i,j−1) − Q(i−1,j)`
    /// for `i, j ∈ [n]`; always in `{−1, 0, 1}` on valid grids.
    pub fn second_difference(&self, i: usize, j: usize) -> i64 {
        self.entry(i, j) + self.entry(i - 1, j - 1) - self.entry(i, j - 1) - self.entry(i - 1, j)
    }

    /// Whether the grid is fully 2-increasing.
    pub fn is_copula(&self) -> bool {
        self.classification() == Classification::Copula
    }

    /// [`Classification::Copula`] or [`Classification::ProperQuasiCopula`];
    /// a constructed value can never be `NotQuasiCopula`.
    pub fn classification(&self) -> Classification {
        for i in 1..=self.n {
            for j in 1..=self.n {
                if self.second_difference(i, j) < 0 {
                    return Classification::ProperQuasiCopula;
                }
            }
        }
        Classification::Copula
    }

    /// Positive and negative positions, i.e. the support of the associated
    /// sign matrix split by sign.
    pub fn positions(&self) -> PositionSets {
        let mut sets = PositionSets::default();
        for i in 1..=self.n {
            for j in 1..=self.n {
                match self.second_difference(i, j) {
                    1 => {
                        sets.positive.insert((i, j));
                    }
                    -1 => {
                        sets.negative.insert((i, j));
                    }
                    _ => {}
                }
            }
        }
        sets
    }

    /// Whether `Q(i, j) = Q(j, i)` for all `i, j`.
    pub fn is_commutative(&self) -> bool {
        (0..=self.n).all(|i| (0..i).all(|j| self.entry(i, j) == self.entry(j, i)))
    }

    /// Whether `Q(i, Q(j, k)) = Q(Q(i, j), k)` for all `i, j, k ∈ {0, …, n}`,
    /// decided by exhaustive evaluation. The range invariant guarantees that
    /// every inner value is again a valid argument.
    pub fn is_associative(&self) -> bool {
        for i in 0..=self.n {
            for j in 0..=self.n {
                let ij = self.entry(i, j) as usize;
                for k in 0..=self.n {
                    let jk = self.entry(j, k) as usize;
                    if self.entry(i, jk) != self.entry(ij, k) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

/// Surround an interior `n×n` grid with the zero-th row and column.
pub fn interior_to_full(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = rows.len();
    let mut full = Vec::with_capacity(n + 1);
    full.push(vec![0; n + 1]);
    for r in rows {
        let mut row = Vec::with_capacity(n + 1);
        row.push(0);
        row.extend_from_slice(r);
        full.push(row);
    }
    full
}
