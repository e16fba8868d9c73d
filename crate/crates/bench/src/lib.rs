//! Fixtures shared by the benchmarks.

use telegraph::{assemble_matrix, scheme_coefficients, BandedSystem, GammaChoice, SchemeParams};

/// Collocation matrix of the scheme on `[0, 1]` with `n` subintervals.
pub fn scheme_matrix(n: usize, alpha: f64, k: f64) -> BandedSystem {
    let coeffs = scheme_coefficients(alpha, k, 1.0 / n as f64);
    assemble_matrix(n, &coeffs).expect("n is at least the minimum grid size")
}

/// Parameters reaching `t_final` with `Γ = k`.
pub fn params(n: usize, k: f64, t_final: f64) -> SchemeParams {
    SchemeParams {
        intervals: n,
        k,
        gamma: GammaChoice::PlainK,
        t_final,
    }
}

/// Deterministic right-hand side of length `n`.
pub fn rhs(n: usize) -> Vec<f64> {
    (0..n)
        .map(|i| ((i * 37 % 101) as f64 - 50.0) / 50.0)
        .collect()
}
