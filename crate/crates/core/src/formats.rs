//! Plain-text formats for grids, sign matrices and permutations.
//!
//! * `qcm`: `n` lines of `n` space-separated integers, line `i` holding
//!   `Q(i, 1) … Q(i, n)`; the zero-th row and column are omitted.
//! * `asm`: `n` lines of `n` entries from `{−1, 0, 1}`.
//! * `perm`: one line of `n` integers in one-line notation.
//!
//! Parsers skip blank lines and lines beginning with `#` and ignore trailing
//! whitespace; renderers emit the canonical single-space form, so
//! render ∘ parse is the identity on canonical text and parse ∘ render is
//! the identity on values.

use thiserror::Error;

use crate::copula::{interior_to_full, GridError, QuasiCopula};
use crate::matrixrep::{Permutation, PermutationError, SignMatrix, SignMatrixError};

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    /// Lexical or shape problems: the file is not even a well-formed matrix.
    #[error("line {line}: '{token}' is not an integer")]
    BadInteger { line: usize, token: String },
    #[error("no data lines in input")]
    Empty,
    #[error("expected a square matrix: {rows} rows, but data line {row} has {len} entries")]
    NotSquare { rows: usize, row: usize, len: usize },
    #[error("expected a single data line, found {found}")]
    ExtraLines { found: usize },
    /// Mathematical rejections: well-formed numbers that violate the
    /// invariants of the target type.
    #[error(transparent)]
    Grid(#[from] GridError),
    #[error(transparent)]
    SignMatrix(#[from] SignMatrixError),
    #[error(transparent)]
    Permutation(#[from] PermutationError),
}

impl ParseError {
    /// Whether this is a lexical/shape problem as opposed to a grid that
    /// parsed fine but fails mathematical validation.
    pub fn is_structural(&self) -> bool {
        match self {
            ParseError::BadInteger { .. }
            | ParseError::Empty
            | ParseError::NotSquare { .. }
            | ParseError::ExtraLines { .. } => true,
            ParseError::Grid(GridError::Structure(_)) => true,
            ParseError::Grid(_) | ParseError::SignMatrix(_) | ParseError::Permutation(_) => false,
        }
    }
}

/// Data lines as integer rows, with 1-based original line numbers.
fn lex_rows(input: &str) -> Result<Vec<(usize, Vec<i64>)>, ParseError> {
    let mut rows = Vec::new();
    for (idx, line) in input.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|token| {
                token.parse::<i64>().map_err(|_| ParseError::BadInteger {
                    line: idx + 1,
                    token: token.to_string(),
                })
            })
            .collect::<Result<Vec<i64>, _>>()?;
        rows.push((idx + 1, row));
    }
    if rows.is_empty() {
        return Err(ParseError::Empty);
    }
    Ok(rows)
}

fn square_rows(input: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    let rows = lex_rows(input)?;
    let n = rows.len();
    for (data_idx, (_, row)) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(ParseError::NotSquare {
                rows: n,
                row: data_idx + 1,
                len: row.len(),
            });
        }
    }
    Ok(rows.into_iter().map(|(_, row)| row).collect())
}

/// Parse a `qcm` file into the raw full grid (border synthesized), without
/// mathematical validation — the input of [`crate::copula::classify`].
pub fn parse_qcm_grid(input: &str) -> Result<Vec<Vec<i64>>, ParseError> {
    Ok(interior_to_full(&square_rows(input)?))
}

/// Parse and validate a `qcm` file.
pub fn parse_qcm(input: &str) -> Result<QuasiCopula, ParseError> {
    let full = parse_qcm_grid(input)?;
    Ok(QuasiCopula::from_full_grid(&full)?)
}

pub fn render_qcm(q: &QuasiCopula) -> String {
    let mut out = String::new();
    for row in q.interior_rows() {
        push_row(&mut out, row.iter());
    }
    out
}

pub fn parse_asm(input: &str) -> Result<SignMatrix, ParseError> {
    Ok(SignMatrix::from_rows(&square_rows(input)?)?)
}

pub fn render_asm(a: &SignMatrix) -> String {
    let mut out = String::new();
    for row in a.rows() {
        push_row(&mut out, row.iter());
    }
    out
}

pub fn parse_perm(input: &str) -> Result<Permutation, ParseError> {
    let rows = lex_rows(input)?;
    if rows.len() != 1 {
        return Err(ParseError::ExtraLines { found: rows.len() });
    }
    let word = rows[0]
        .1
        .iter()
        .map(|&v| {
            usize::try_from(v).map_err(|_| ParseError::BadInteger {
                line: rows[0].0,
                token: v.to_string(),
            })
        })
        .collect::<Result<Vec<usize>, _>>()?;
    Ok(Permutation::from_word(word)?)
}

pub fn render_perm(w: &Permutation) -> String {
    let mut out = String::new();
    push_row(&mut out, w.word().iter());
    out
}

/// Antichain output: `qcm` blocks separated by a line holding only `^`.
pub fn render_decomposition(parts: &[QuasiCopula]) -> String {
    parts.iter().map(render_qcm).collect::<Vec<_>>().join("^\n")
}

fn push_row<T: ToString>(out: &mut String, row: impl Iterator<Item = T>) {
    let mut first = true;
    for v in row {
        if !first {
            out.push(' ');
        }
        out.push_str(&v.to_string());
        first = false;
    }
    out.push('\n');
}
