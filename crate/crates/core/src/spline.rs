//! Quintic spline `U(x) = Σ c_i B_i(x)` and complete-spline interpolation.

use crate::banded::BandedSystem;
use crate::basis::{h_scale, piece, Derivative, UniformGrid, NODAL_STENCILS};
use crate::boundary::{ghost_coefficients, BoundaryData, SymmetricStencil};
use crate::error::{Error, Result};

/// Coefficients `c_{-2}..=c_{N+2}` of one time level.
#[derive(Debug, Clone, PartialEq)]
pub struct SplineCoefficients {
    grid: UniformGrid,
    c: Vec<f64>,
    time_level: usize,
}

impl SplineCoefficients {
    /// Wraps a full coefficient vector of length `N + 5`, stored from `c_{-2}`.
    pub fn new(grid: UniformGrid, c: Vec<f64>, time_level: usize) -> Result<Self> {
        let expected = grid.intervals() + 5;
        if c.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                actual: c.len(),
            });
        }
        if let Some(pos) = c.iter().position(|v| !v.is_finite()) {
            return Err(Error::Domain(format!(
                "coefficient c_{} is not finite",
                pos as isize - 2
            )));
        }
        Ok(Self {
            grid,
            c,
            time_level,
        })
    }

    pub fn zeros(grid: UniformGrid, time_level: usize) -> Self {
        Self {
            grid,
            c: vec![0.0; grid.intervals() + 5],
            time_level,
        }
    }

    /// Completes interior coefficients `c_0..=c_N` with the four exterior ones
    /// implied by the boundary data.
    pub fn from_interior(
        grid: UniformGrid,
        interior: &[f64],
        data: &BoundaryData,
        time_level: usize,
    ) -> Result<Self> {
        let n = grid.intervals();
        if interior.len() != n + 1 {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                actual: interior.len(),
            });
        }
        let [cm2, cm1, cp1, cp2] = ghost_coefficients(interior, data, grid.h());
        let mut c = Vec::with_capacity(n + 5);
        c.extend([cm2, cm1]);
        c.extend_from_slice(interior);
        c.extend([cp1, cp2]);
        Self::new(grid, c, time_level)
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn time_level(&self) -> usize {
        self.time_level
    }

    pub fn with_time_level(mut self, level: usize) -> Self {
        self.time_level = level;
        self
    }

    /// Coefficient `c_i` for `i` in `-2..=N+2`.
    pub fn get(&self, i: isize) -> f64 {
        self.c[(i + 2) as usize]
    }

    /// All `N + 5` coefficients starting at `c_{-2}`.
    pub fn as_slice(&self) -> &[f64] {
        &self.c
    }

    /// Interior coefficients `c_0..=c_N`.
    pub fn interior(&self) -> &[f64] {
        &self.c[2..self.c.len() - 2]
    }

    /// `U`, `U'` or `U''` at node `x_j` through the five-point nodal stencil.
    #[inline]
    pub fn nodal(&self, j: usize, d: Derivative) -> f64 {
        NODAL_STENCILS
            .get(d)
            .apply(&self.c[j..j + 5], self.grid.h())
    }

    /// Nodal values at every grid node.
    pub fn nodal_values(&self, d: Derivative) -> Vec<f64> {
        (0..=self.grid.intervals())
            .map(|j| self.nodal(j, d))
            .collect()
    }

    /// `Σ c_i B_i^{(d)}(x)` for `x` in `[a, b]`.
    pub fn eval(&self, x: f64, d: Derivative) -> Result<f64> {
        let x = self.grid.clamp_to_domain(x)?;
        let (j, t) = self.grid.locate(x);
        // B_{j-2} .. B_{j+3} are nonzero on [x_j, x_{j+1}); B_{j+3-p} uses piece p
        let s: f64 = (0..6)
            .map(|p| {
                let i = j as isize + 3 - p as isize;
                self.get(i) * piece(p, t, d)
            })
            .sum();
        Ok(s * h_scale(self.grid.h(), d))
    }
}

/// End conditions for a complete quintic spline.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EndConditions {
    pub left_slope: f64,
    pub right_slope: f64,
    pub left_curvature: f64,
    pub right_curvature: f64,
}

const VALUE_STENCIL: SymmetricStencil = SymmetricStencil {
    outer: 1.0,
    inner: 26.0,
    center: 66.0,
};

const CURVATURE_STENCIL: SymmetricStencil = SymmetricStencil {
    outer: 20.0,
    inner: 40.0,
    center: -120.0,
};

/// Rows of a pentadiagonal `(N+1)`-square system after exterior-coefficient
/// elimination: `interior` drives rows `1..N`, `ends` drives rows `0` and `N`.
pub(crate) fn closed_rows(
    n: usize,
    interior: &SymmetricStencil,
    ends: &SymmetricStencil,
) -> Vec<Vec<(usize, f64)>> {
    let mut rows = Vec::with_capacity(n + 1);
    let first = ends.first_row();
    let second = interior.second_row();
    let full = interior.row();

    rows.push((0..3).map(|j| (j, first[j])).collect());
    rows.push((0..4).map(|j| (j, second[j])).collect());
    for i in 2..=n - 2 {
        rows.push((0..5).map(|m| (i + m - 2, full[m])).collect());
    }
    rows.push((0..4).map(|m| (n - m, second[m])).collect());
    rows.push((0..3).map(|m| (n - m, first[m])).collect());
    rows
}

/// Complete quintic spline through `values` at the `N + 1` nodes with
/// prescribed end slopes and end second derivatives.
///
/// Values and slopes at the ends feed the exterior-coefficient elimination;
/// rows 0 and `N` collocate the second derivative.
pub fn fit_interpolant(
    grid: &UniformGrid,
    values: &[f64],
    ends: &EndConditions,
) -> Result<SplineCoefficients> {
    let n = grid.intervals();
    if values.len() != n + 1 {
        return Err(Error::DimensionMismatch {
            expected: n + 1,
            actual: values.len(),
        });
    }
    if values.iter().any(|v| !v.is_finite()) {
        return Err(Error::Domain("interpolation values must be finite".into()));
    }
    let h = grid.h();
    let data = BoundaryData {
        left_value: values[0],
        right_value: values[n],
        left_slope: ends.left_slope,
        right_slope: ends.right_slope,
    };

    let rows = closed_rows(n, &VALUE_STENCIL, &CURVATURE_STENCIL);
    let system = BandedSystem::build(n + 1, 2, 2, &rows)?;

    let mut rhs = values.to_vec();
    rhs[0] = h * h * ends.left_curvature
        + CURVATURE_STENCIL.first_row_rhs(data.left_value, h * data.left_slope);
    rhs[n] = h * h * ends.right_curvature
        + CURVATURE_STENCIL.first_row_rhs(data.right_value, -h * data.right_slope);
    rhs[1] += VALUE_STENCIL.second_row_rhs(data.left_value, h * data.left_slope);
    rhs[n - 1] += VALUE_STENCIL.second_row_rhs(data.right_value, -h * data.right_slope);

    let interior = system.factor()?.solve(&rhs)?;
    SplineCoefficients::from_interior(*grid, &interior, &data, 0)
}
