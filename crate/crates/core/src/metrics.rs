//! Discrete error norms and empirical convergence orders.

use crate::basis::Derivative;
use crate::error::{Error, Result};
use crate::problem::TelegraphProblem;
use crate::scheme::{GammaChoice, Snapshot};

/// `L∞`, `L2` and RMS norms of a nodal error vector.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ErrorNorms {
    pub l_inf: f64,
    /// `sqrt(h Σ e_i²)`
    pub l2: f64,
    /// `sqrt(Σ e_i² / M)`
    pub rms: f64,
    /// `h sqrt(Σ e_i²)`, the scaling some reference tables use under the
    /// name L2.
    pub l2_scaled: f64,
}

pub fn error_norms(numeric: &[f64], exact: &[f64], h: f64) -> Result<ErrorNorms> {
    if numeric.len() != exact.len() {
        return Err(Error::DimensionMismatch {
            expected: exact.len(),
            actual: numeric.len(),
        });
    }
    if numeric.is_empty() {
        return Err(Error::Domain("error norms need at least one sample".into()));
    }
    let (max, sq) = numeric
        .iter()
        .zip(exact)
        .map(|(u, e)| (u - e).abs())
        .fold((0.0f64, 0.0f64), |(m, s), e| (m.max(e), s + e * e));
    Ok(ErrorNorms {
        l_inf: max,
        l2: (h * sq).sqrt(),
        rms: (sq / numeric.len() as f64).sqrt(),
        l2_scaled: h * sq.sqrt(),
    })
}

/// Errors of one snapshot against the exact solution, sampled at nodes
/// `x_1..=x_N`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ErrorReport {
    pub t: f64,
    pub intervals: usize,
    pub k: f64,
    pub gamma: GammaChoice,
    pub norms: ErrorNorms,
}

impl ErrorReport {
    pub fn for_snapshot(
        problem: &TelegraphProblem,
        snapshot: &Snapshot,
        k: f64,
        gamma: GammaChoice,
    ) -> Result<Self> {
        let exact = problem
            .exact
            .as_ref()
            .ok_or_else(|| Error::Config("problem has no exact solution".into()))?;
        let grid = snapshot.coeffs.grid();
        let n = grid.intervals();
        let numeric: Vec<f64> = (1..=n)
            .map(|j| snapshot.coeffs.nodal(j, Derivative::Value))
            .collect();
        let reference: Vec<f64> = (1..=n)
            .map(|j| exact(grid.knot(j as isize), snapshot.t))
            .collect();
        Ok(Self {
            t: snapshot.t,
            intervals: n,
            k,
            gamma,
            norms: error_norms(&numeric, &reference, grid.h())?,
        })
    }
}

/// Successive orders `log(e_1/e_2) / log(s_1/s_2)` for `(step, error)` pairs
/// ordered by strictly decreasing step.
pub fn observed_order(pairs: &[(f64, f64)]) -> Result<Vec<f64>> {
    if pairs.len() < 2 {
        return Err(Error::Domain(
            "observed order needs at least two runs".into(),
        ));
    }
    if let Some(&(s, e)) = pairs
        .iter()
        .find(|(s, e)| e.is_nan() || *e <= 0.0 || s.is_nan() || *s <= 0.0)
    {
        return Err(Error::Domain(format!(
            "observed order undefined for step {s} with error {e}"
        )));
    }
    pairs
        .windows(2)
        .map(|w| {
            let ((s1, e1), (s2, e2)) = (w[0], w[1]);
            if s2 >= s1 {
                return Err(Error::Domain(format!(
                    "steps must decrease strictly, got {s1} then {s2}"
                )));
            }
            Ok((e1 / e2).ln() / (s1 / s2).ln())
        })
        .collect()
}
