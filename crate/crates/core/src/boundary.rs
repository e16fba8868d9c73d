//! Elimination of the four exterior coefficients `c_{-2}, c_{-1}, c_{N+1},
//! c_{N+2}` through Dirichlet and Neumann data at both ends.
//!
//! From `U(a) = g0`, `U'(a) = g2` (and the mirror conditions at `b`):
//!
//! ```text
//! c_{-1}  = -33/8 c_0 - 9/4 c_1 - 1/8 c_2 + h g2 / 80 + g0 / 16
//! c_{-2}  = 165/4 c_0 + 65/2 c_1 + 9/4 c_2 - 13 h g2 / 40 - 5 g0 / 8
//! c_{N+1} = -33/8 c_N - 9/4 c_{N-1} - 1/8 c_{N-2} - h g3 / 80 + g1 / 16
//! c_{N+2} = 165/4 c_N + 65/2 c_{N-1} + 9/4 c_{N-2} + 13 h g3 / 40 - 5 g1 / 8
//! ```

/// End values and slopes imposed on a spline at one time level.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct BoundaryData {
    /// `U(a)`
    pub left_value: f64,
    /// `U(b)`
    pub right_value: f64,
    /// `U'(a)`
    pub left_slope: f64,
    /// `U'(b)`
    pub right_slope: f64,
}

/// Returns `[c_{-2}, c_{-1}, c_{N+1}, c_{N+2}]` for interior coefficients
/// `c_0..=c_N`.
pub fn ghost_coefficients(interior: &[f64], data: &BoundaryData, h: f64) -> [f64; 4] {
    let n = interior.len() - 1;
    let (c0, c1, c2) = (interior[0], interior[1], interior[2]);
    let (cn, cn1, cn2) = (interior[n], interior[n - 1], interior[n - 2]);
    let BoundaryData {
        left_value: g0,
        right_value: g1,
        left_slope: g2,
        right_slope: g3,
    } = *data;

    let cm1 = -33.0 / 8.0 * c0 - 9.0 / 4.0 * c1 - c2 / 8.0 + h * g2 / 80.0 + g0 / 16.0;
    let cm2 =
        165.0 / 4.0 * c0 + 65.0 / 2.0 * c1 + 9.0 / 4.0 * c2 - 13.0 * h * g2 / 40.0 - 5.0 * g0 / 8.0;
    let cp1 = -33.0 / 8.0 * cn - 9.0 / 4.0 * cn1 - cn2 / 8.0 - h * g3 / 80.0 + g1 / 16.0;
    let cp2 = 165.0 / 4.0 * cn + 65.0 / 2.0 * cn1 + 9.0 / 4.0 * cn2 + 13.0 * h * g3 / 40.0
        - 5.0 * g1 / 8.0;
    [cm2, cm1, cp1, cp2]
}

/// Symmetric five-point collocation row `(outer, inner, center, inner, outer)`
/// acting on `c_{i-2}..c_{i+2}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SymmetricStencil {
    pub outer: f64,
    pub inner: f64,
    pub center: f64,
}

impl SymmetricStencil {
    pub fn row(&self) -> [f64; 5] {
        [self.outer, self.inner, self.center, self.inner, self.outer]
    }

    /// Row 0 after substituting the ghost relations: coefficients of
    /// `c_0, c_1, c_2`. Row `N` uses the same values on `c_N, c_{N-1}, c_{N-2}`.
    pub fn first_row(&self) -> [f64; 3] {
        let (p, q, r) = (self.outer, self.inner, self.center);
        [
            r - 33.0 * q / 8.0 + 165.0 * p / 4.0,
            65.0 * p / 2.0 - 5.0 * q / 4.0,
            13.0 * p / 4.0 - q / 8.0,
        ]
    }

    /// Row 1 after substitution: coefficients of `c_0, c_1, c_2, c_3`.
    /// Row `N-1` mirrors it on `c_N, c_{N-1}, c_{N-2}, c_{N-3}`.
    pub fn second_row(&self) -> [f64; 4] {
        let (p, q, r) = (self.outer, self.inner, self.center);
        [q - 33.0 * p / 8.0, r - 9.0 * p / 4.0, q - p / 8.0, p]
    }

    /// Right-hand side additions for row 0 (row `N` at the other end).
    /// The slope term flips sign at the right end.
    pub fn first_row_rhs(&self, value: f64, h_slope: f64) -> f64 {
        let (p, q) = (self.outer, self.inner);
        (5.0 * p / 8.0 - q / 16.0) * value + (13.0 * p / 40.0 - q / 80.0) * h_slope
    }

    /// Right-hand side additions for row 1 (row `N-1` at the other end).
    pub fn second_row_rhs(&self, value: f64, h_slope: f64) -> f64 {
        let p = self.outer;
        -p / 16.0 * value - p / 80.0 * h_slope
    }
}
