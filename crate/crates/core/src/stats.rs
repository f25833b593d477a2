//! Exact concordance statistics: entry sums, the rank function `m`,
//! Kendall's τ, the inversion-weighted β, and a discrete Spearman ρ.
//!
//! Everything is integer or reduced-rational arithmetic. τ is defined
//! through the inversion count of a copula's permutation,
//! `τ = 1 − 2ℓ / (n(n−1)/2)`, so it exists only for copulas; the rank
//! function `m(Q) = |M_n| − |Q|` extends to every quasi-copula, and
//! `ρ = 1 − 2m / ((n−1)n(n+1)/6)` is adopted here as the discrete Spearman ρ
//! under that normalization (equal to the tie-free sample statistic on
//! copulas).

use std::fmt;

use num::rational::Ratio;
use thiserror::Error;

use crate::copula::{Classification, QuasiCopula};
use crate::irreducible::enumerate_meet_irreducibles;
use crate::matrixrep::{BigrassmannianParams, Permutation};

/// Exact rational with reduced numerator/denominator, denominator positive.
pub type Rational = Ratio<i64>;

#[derive(Clone, Debug, Error, PartialEq, Eq)]
pub enum StatsError {
    #[error("statistic undefined at n = 1: zero denominator")]
    UndefinedOrderOne,
    #[error("tau is defined through inversions only for copulas; negative position at ({},{})", negative.0, negative.1)]
    TauRequiresCopula { negative: (usize, usize) },
}

/// Sum `|Q|` of all interior entries (the zero border contributes nothing).
pub fn entry_sum(q: &QuasiCopula) -> i64 {
    let n = q.order();
    (1..=n)
        .flat_map(|i| (1..=n).map(move |j| q.entry(i, j)))
        .sum()
}

/// Rank function `m(Q) = |M_n| − |Q|` with `|M_n| = n(n+1)(2n+1)/6`; zero
/// exactly at the maximum, and equal to the number of meet-irreducibles
/// above `Q`.
pub fn m_value(q: &QuasiCopula) -> i64 {
    let n = q.order() as i64;
    n * (n + 1) * (2 * n + 1) / 6 - entry_sum(q)
}

/// Inversion-weighted sum `β(w) = Σ_{i<j, w(i)>w(j)} (w(i) − w(j))`; equals
/// `m` of the corner-sum copula of `w`.
pub fn beta(w: &Permutation) -> i64 {
    let word = w.word();
    let mut total = 0i64;
    for i in 0..word.len() {
        for j in i + 1..word.len() {
            if word[i] > word[j] {
                total += word[i] as i64 - word[j] as i64;
            }
        }
    }
    total
}

/// Kendall's τ of a copula: `1 − 4ℓ / (n(n−1))` with `ℓ` the inversion count
/// of the permutation.
pub fn kendall_tau(q: &QuasiCopula) -> Result<Rational, StatsError> {
    let w = q.permutation().map_err(|e| StatsError::TauRequiresCopula {
        negative: e.negative,
    })?;
    tau_of_permutation(&w)
}

fn tau_of_permutation(w: &Permutation) -> Result<Rational, StatsError> {
    let n = w.order() as i64;
    if n < 2 {
        return Err(StatsError::UndefinedOrderOne);
    }
    let ell = w.inversion_count() as i64;
    Ok(Rational::new(1, 1) - Rational::new(4 * ell, n * (n - 1)))
}

/// Discrete Spearman ρ: `1 − 2m(Q) / ((n−1)n(n+1)/6)`, defined for every
/// quasi-copula of order at least 2.
pub fn spearman_rho(q: &QuasiCopula) -> Result<Rational, StatsError> {
    let n = q.order() as i64;
    if n < 2 {
        return Err(StatsError::UndefinedOrderOne);
    }
    let denom = (n - 1) * n * (n + 1) / 6;
    Ok(Rational::new(1, 1) - Rational::new(2 * m_value(q), denom))
}

/// `max {ℓ(w) : w meet-irreducible in S_n} = ⌊n²/4⌋`.
pub fn max_inversions_meet_irreducible(n: usize) -> usize {
    n * n / 4
}

/// Cross-check the maximum three ways: the closed form, maximization of
/// `i2·i3` over all parameter tuples, and exhaustive inversion counts over
/// the enumerated meet-irreducibles, including attainment by
/// `w(0, ⌈n/2⌉, ⌊n/2⌋, 0)`.
pub fn verify_max_inversions(n: usize) -> bool {
    let closed = max_inversions_meet_irreducible(n);
    let tuples = BigrassmannianParams::enumerate(n);
    let by_params = tuples.iter().map(|p| p.i2 * p.i3).max();
    let by_count = enumerate_meet_irreducibles(n)
        .iter()
        .map(|q| q.permutation().expect("copula").inversion_count())
        .max();
    let attained = BigrassmannianParams::new(0, n.div_ceil(2), n / 2, 0)
        .map(|p| p.permutation().inversion_count() == closed)
        .unwrap_or(false);
    by_params == Some(closed) && by_count == Some(closed) && attained
}

/// Evaluate τ over every meet-irreducible copula of order `n` and confirm
/// `−1/(n−1) ≤ τ ≤ 1`, with equality on the left attained for even `n`.
pub fn tau_bound_check(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let lower = Rational::new(-1, n as i64 - 1);
    let upper = Rational::new(1, 1);
    let mut minimum = upper;
    for q in enumerate_meet_irreducibles(n) {
        let tau = kendall_tau(&q).expect("meet-irreducibles are copulas of order >= 2");
        if tau < lower || tau > upper {
            return false;
        }
        minimum = minimum.min(tau);
    }
    if n.is_multiple_of(2) && minimum != lower {
        return false;
    }
    true
}

/// All statistics of one quasi-copula. Fields that only exist for copulas
/// (`inversions`, `beta`, `tau`) are `None` on proper quasi-copulas, and the
/// normalized statistics are `None` at `n = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StatsReport {
    pub n: usize,
    pub inversions: Option<i64>,
    pub entry_sum: i64,
    pub m: i64,
    pub beta: Option<i64>,
    pub tau: Option<Rational>,
    pub rho: Option<Rational>,
}

impl StatsReport {
    pub fn new(q: &QuasiCopula) -> Self {
        let permutation = match q.classification() {
            Classification::Copula => Some(q.permutation().expect("copula")),
            _ => None,
        };
        StatsReport {
            n: q.order(),
            inversions: permutation.as_ref().map(|w| w.inversion_count() as i64),
            entry_sum: entry_sum(q),
            m: m_value(q),
            beta: permutation.as_ref().map(beta),
            tau: permutation
                .as_ref()
                .and_then(|w| tau_of_permutation(w).ok()),
            rho: spearman_rho(q).ok(),
        }
    }
}

fn write_integer(f: &mut fmt::Formatter<'_>, key: &str, value: Option<i64>) -> fmt::Result {
    match value {
        Some(v) => writeln!(f, "{key}: {v}"),
        None => writeln!(f, "{key}: undefined"),
    }
}

fn write_rational(f: &mut fmt::Formatter<'_>, key: &str, value: Option<Rational>) -> fmt::Result {
    match value {
        Some(v) => writeln!(f, "{key}: {}/{}", v.numer(), v.denom()),
        None => writeln!(f, "{key}: undefined"),
    }
}

impl fmt::Display for StatsReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "n: {}", self.n)?;
        write_integer(f, "inversions", self.inversions)?;
        writeln!(f, "entry_sum: {}", self.entry_sum)?;
        writeln!(f, "m: {}", self.m)?;
        write_integer(f, "beta", self.beta)?;
        write_rational(f, "tau", self.tau)?;
        write_rational(f, "rho", self.rho)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn by_word(word: &[usize]) -> QuasiCopula {
        Permutation::from_word(word.to_vec())
            .unwrap()
            .quasi_copula()
    }

    fn qc(rows: &[&[i64]]) -> QuasiCopula {
        let rows: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        QuasiCopula::from_interior(&rows).unwrap()
    }

    #[test]
    fn entry_sums() {
        assert_eq!(entry_sum(&QuasiCopula::frechet_upper(3).unwrap()), 14);
        assert_eq!(entry_sum(&QuasiCopula::frechet_lower(3).unwrap()), 10);
        assert_eq!(entry_sum(&by_word(&[2, 3, 1])), 11);
        for n in 1..=10i64 {
            let m = QuasiCopula::frechet_upper(n as usize).unwrap();
            assert_eq!(entry_sum(&m), n * (n + 1) * (2 * n + 1) / 6);
            let w = QuasiCopula::frechet_lower(n as usize).unwrap();
            assert_eq!(entry_sum(&w), n * (n + 1) * (n + 2) / 6);
        }
    }

    #[test]
    fn m_values() {
        assert_eq!(m_value(&by_word(&[2, 3, 1])), 3);
        for n in 1..=10i64 {
            assert_eq!(m_value(&QuasiCopula::frechet_upper(n as usize).unwrap()), 0);
            assert_eq!(
                m_value(&QuasiCopula::frechet_lower(n as usize).unwrap()),
                (n - 1) * n * (n + 1) / 6
            );
        }
    }

    #[test]
    fn beta_examples() {
        let p231 = Permutation::from_word(vec![2, 3, 1]).unwrap();
        assert_eq!(beta(&p231), 3);
        assert_eq!(beta(&Permutation::identity(5)), 0);
        // beta of the reverse permutation is m(W_n).
        assert_eq!(beta(&Permutation::reverse(4)), 10);
        for n in 2..=6usize {
            let n_i = n as i64;
            assert_eq!(
                beta(&Permutation::reverse(n)),
                (n_i - 1) * n_i * (n_i + 1) / 6
            );
        }
    }

    #[test]
    fn tau_examples() {
        assert_eq!(
            kendall_tau(&by_word(&[2, 3, 1])).unwrap(),
            Rational::new(-1, 3)
        );
        for n in 2..=6usize {
            assert_eq!(
                kendall_tau(&QuasiCopula::frechet_upper(n).unwrap()).unwrap(),
                Rational::new(1, 1)
            );
            assert_eq!(
                kendall_tau(&QuasiCopula::frechet_lower(n).unwrap()).unwrap(),
                Rational::new(-1, 1)
            );
        }

        let middle = qc(&[&[0, 1, 1], &[1, 1, 2], &[1, 2, 3]]);
        assert_eq!(
            kendall_tau(&middle),
            Err(StatsError::TauRequiresCopula { negative: (2, 2) })
        );
        assert_eq!(
            kendall_tau(&QuasiCopula::frechet_upper(1).unwrap()),
            Err(StatsError::UndefinedOrderOne)
        );
    }

    #[test]
    fn rho_examples() {
        assert_eq!(
            spearman_rho(&by_word(&[2, 3, 1])).unwrap(),
            Rational::new(-1, 2)
        );
        for n in 2..=6usize {
            assert_eq!(
                spearman_rho(&QuasiCopula::frechet_upper(n).unwrap()).unwrap(),
                Rational::new(1, 1)
            );
            assert_eq!(
                spearman_rho(&QuasiCopula::frechet_lower(n).unwrap()).unwrap(),
                Rational::new(-1, 1)
            );
        }
        // The proper middle of order 3: entry sum 12, m = 2, rho = 0.
        let middle = qc(&[&[0, 1, 1], &[1, 1, 2], &[1, 2, 3]]);
        assert_eq!(entry_sum(&middle), 12);
        assert_eq!(m_value(&middle), 2);
        assert_eq!(spearman_rho(&middle).unwrap(), Rational::new(0, 1));
        assert_eq!(
            spearman_rho(&QuasiCopula::frechet_lower(1).unwrap()),
            Err(StatsError::UndefinedOrderOne)
        );
    }

    #[test]
    fn max_inversion_values() {
        assert_eq!(max_inversions_meet_irreducible(2), 1);
        assert_eq!(max_inversions_meet_irreducible(4), 4);
        assert_eq!(max_inversions_meet_irreducible(5), 6);
        for n in 2..=8 {
            assert!(verify_max_inversions(n), "n = {n}");
        }
        // The maximum at n = 4 is attained by w(0,2,2,0) = 3412.
        let w = BigrassmannianParams::new(0, 2, 2, 0).unwrap().permutation();
        assert_eq!(w.inversion_count(), 4);
    }

    #[test]
    fn tau_bounds() {
        for n in 2..=8 {
            assert!(tau_bound_check(n), "n = {n}");
        }
        // Minimum over the meet-irreducibles: -1/3 at n = 4, -1/5 at n = 5.
        let min4 = enumerate_meet_irreducibles(4)
            .iter()
            .map(|q| kendall_tau(q).unwrap())
            .min()
            .unwrap();
        assert_eq!(min4, Rational::new(-1, 3));
        let min5 = enumerate_meet_irreducibles(5)
            .iter()
            .map(|q| kendall_tau(q).unwrap())
            .min()
            .unwrap();
        assert_eq!(min5, Rational::new(-1, 5));
        assert!(min5 > Rational::new(-1, 4));
    }

    #[test]
    fn report_rendering() {
        let report = StatsReport::new(&by_word(&[2, 3, 1]));
        assert_eq!(
            report.to_string(),
            "n: 3\ninversions: 2\nentry_sum: 11\nm: 3\nbeta: 3\ntau: -1/3\nrho: -1/2\n"
        );

        let middle = qc(&[&[0, 1, 1], &[1, 1, 2], &[1, 2, 3]]);
        let report = StatsReport::new(&middle);
        assert_eq!(
            report.to_string(),
            "n: 3\ninversions: undefined\nentry_sum: 12\nm: 2\nbeta: undefined\ntau: undefined\nrho: 0/1\n"
        );

        let report = StatsReport::new(&QuasiCopula::frechet_upper(1).unwrap());
        assert_eq!(
            report.to_string(),
            "n: 1\ninversions: 0\nentry_sum: 1\nm: 0\nbeta: 0\ntau: undefined\nrho: undefined\n"
        );
    }
}
