//! Shared fixtures for the benchmark targets.

use qcop_core::enumeration::enumerate_quasi_copulas;
use qcop_core::QuasiCopula;

/// All 429 quasi-copulas of order 5.
pub fn q5() -> Vec<QuasiCopula> {
    enumerate_quasi_copulas(5).expect("within bound").collect()
}

/// A mid-lattice proper quasi-copula of order 5 (the meet of two coatoms).
pub fn proper_q5() -> QuasiCopula {
    let all = q5();
    let target = all
        .iter()
        .find(|q| !q.is_copula())
        .expect("order 5 has proper elements");
    target.clone()
}
