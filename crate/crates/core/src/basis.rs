//! Quintic B-spline basis on a uniform grid.
//!
//! `B_i` is centred on knot `x_i` and supported on `[x_{i-3}, x_{i+3}]`. The
//! grid is extended by phantom knots with the same spacing so the boundary
//! functions `B_{-2}, B_{-1}, B_{N+1}, B_{N+2}` are well defined. The basis is
//! normalised so that its nodal values are `(1, 26, 66, 26, 1)`.

use crate::error::{Error, Result};

/// Minimum number of subintervals. The boundary closure couples nodes
/// `0..=2` and `N-2..=N`, which must not overlap.
pub const MIN_INTERVALS: usize = 5;

/// Uniform partition `a = x_0 < x_1 < ... < x_N = b`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UniformGrid {
    a: f64,
    b: f64,
    n: usize,
    h: f64,
}

impl UniformGrid {
    pub fn new(a: f64, b: f64, n: usize) -> Result<Self> {
        if !a.is_finite() || !b.is_finite() || b <= a {
            return Err(Error::InvalidGrid(format!(
                "endpoints must be finite with a < b, got [{a}, {b}]"
            )));
        }
        if n < MIN_INTERVALS {
            return Err(Error::InvalidGrid(format!(
                "N = {n} subintervals, at least {MIN_INTERVALS} required"
            )));
        }
        let h = (b - a) / n as f64;
        Ok(Self { a, b, n, h })
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    /// Number of subintervals `N`.
    pub fn intervals(&self) -> usize {
        self.n
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    /// Knot `x_i`; negative indices and indices past `N` give phantom knots.
    pub fn knot(&self, i: isize) -> f64 {
        if i == self.n as isize {
            self.b
        } else {
            self.a + i as f64 * self.h
        }
    }

    /// The `N + 1` grid nodes.
    pub fn nodes(&self) -> Vec<f64> {
        (0..=self.n as isize).map(|i| self.knot(i)).collect()
    }

    /// Checks `x` against `[a, b]` with a `1e-12 h` tolerance and clamps it.
    pub fn clamp_to_domain(&self, x: f64) -> Result<f64> {
        let tol = 1e-12 * self.h;
        if !(x >= self.a - tol && x <= self.b + tol) {
            return Err(Error::Domain(format!(
                "x = {x} lies outside [{}, {}]",
                self.a, self.b
            )));
        }
        Ok(x.clamp(self.a, self.b))
    }

    /// Index `j` of the half-open interval `[x_j, x_{j+1})` holding `x`, with
    /// `b` assigned to the last interval. Returns the local coordinate
    /// `(x - x_j) / h` alongside.
    pub(crate) fn locate(&self, x: f64) -> (usize, f64) {
        let s = (x - self.a) / self.h;
        let j = (s.floor().max(0.0) as usize).min(self.n - 1);
        let t = (x - self.knot(j as isize)) / self.h;
        (j, t)
    }
}

/// Index `i` of a basis function `B_i`, restricted to `-2..=N+2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BasisIndex(isize);

impl BasisIndex {
    pub fn new(grid: &UniformGrid, i: isize) -> Result<Self> {
        let hi = grid.intervals() as isize + 2;
        if !(-2..=hi).contains(&i) {
            return Err(Error::Domain(format!("basis index {i} outside [-2, {hi}]")));
        }
        Ok(Self(i))
    }

    pub fn get(self) -> isize {
        self.0
    }

    /// All indices `-2..=N+2`.
    pub fn all(grid: &UniformGrid) -> impl Iterator<Item = BasisIndex> {
        (-2..=grid.intervals() as isize + 2).map(BasisIndex)
    }
}

/// Derivative order for basis and spline evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Derivative {
    Value,
    First,
    Second,
}

impl Derivative {
    pub const ALL: [Derivative; 3] = [Derivative::Value, Derivative::First, Derivative::Second];

    pub fn order(self) -> u8 {
        match self {
            Derivative::Value => 0,
            Derivative::First => 1,
            Derivative::Second => 2,
        }
    }
}

impl TryFrom<u8> for Derivative {
    type Error = Error;

    fn try_from(order: u8) -> Result<Self> {
        match order {
            0 => Ok(Derivative::Value),
            1 => Ok(Derivative::First),
            2 => Ok(Derivative::Second),
            _ => Err(Error::Domain(format!(
                "derivative order {order} not in {{0, 1, 2}}"
            ))),
        }
    }
}

const PIECE_WEIGHTS: [f64; 3] = [1.0, -6.0, 15.0];

#[inline]
fn power_term(u: f64, d: Derivative) -> f64 {
    match d {
        Derivative::Value => u * u * u * u * u,
        Derivative::First => 5.0 * u * u * u * u,
        Derivative::Second => 20.0 * u * u * u,
    }
}

/// Value of piece `p` (0..6) of a basis function at local coordinate `t`
/// in `[0, 1]`, in units of `h^-order`.
#[inline]
pub(crate) fn piece(p: usize, t: f64, d: Derivative) -> f64 {
    debug_assert!(p < 6);
    if p < 3 {
        // (x - x_{i-3})^5 - 6 (x - x_{i-2})^5 + 15 (x - x_{i-1})^5, truncated
        let base = t + p as f64;
        (0..=p)
            .map(|m| PIECE_WEIGHTS[m] * power_term(base - m as f64, d))
            .sum()
    } else {
        // mirror image in (x_{i+3} - x), (x_{i+2} - x), (x_{i+1} - x)
        let base = (6 - p) as f64 - t;
        let sign = if d == Derivative::First { -1.0 } else { 1.0 };
        sign * (0..=(5 - p))
            .map(|m| PIECE_WEIGHTS[m] * power_term(base - m as f64, d))
            .sum::<f64>()
    }
}

#[inline]
pub(crate) fn h_scale(h: f64, d: Derivative) -> f64 {
    match d {
        Derivative::Value => 1.0,
        Derivative::First => 1.0 / h,
        Derivative::Second => 1.0 / (h * h),
    }
}

/// Evaluates `B_i(x)`, `B_i'(x)` or `B_i''(x)` for `x` in `[a, b]`.
pub fn basis_eval(grid: &UniformGrid, i: BasisIndex, x: f64, d: Derivative) -> Result<f64> {
    let x = grid.clamp_to_domain(x)?;
    let (j, t) = grid.locate(x);
    // B_i lives on intervals j = i-3 ..= i+2
    let p = j as isize - i.get() + 3;
    if !(0..6).contains(&p) {
        return Ok(0.0);
    }
    Ok(piece(p as usize, t, d) * h_scale(grid.h(), d))
}

/// Five-point weights acting on `c_{i-2}, ..., c_{i+2}` that give the spline
/// or one of its derivatives at node `x_i`, before scaling by `h^h_power`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalStencil {
    pub weights: [f64; 5],
    pub h_power: i32,
}

impl NodalStencil {
    /// Applies the stencil to five consecutive coefficients.
    #[inline]
    pub fn apply(&self, c: &[f64], h: f64) -> f64 {
        debug_assert_eq!(c.len(), 5);
        let s: f64 = self.weights.iter().zip(c).map(|(w, c)| w * c).sum();
        s * h.powi(self.h_power)
    }
}

/// Nodal stencils for value, first derivative and second derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodalStencils {
    pub value: NodalStencil,
    pub first: NodalStencil,
    pub second: NodalStencil,
}

impl NodalStencils {
    pub fn get(&self, d: Derivative) -> &NodalStencil {
        match d {
            Derivative::Value => &self.value,
            Derivative::First => &self.first,
            Derivative::Second => &self.second,
        }
    }
}

pub const NODAL_STENCILS: NodalStencils = NodalStencils {
    value: NodalStencil {
        weights: [1.0, 26.0, 66.0, 26.0, 1.0],
        h_power: 0,
    },
    first: NodalStencil {
        weights: [-5.0, -50.0, 0.0, 50.0, 5.0],
        h_power: -1,
    },
    second: NodalStencil {
        weights: [20.0, 40.0, -120.0, 40.0, 20.0],
        h_power: -2,
    },
};

pub fn nodal_stencils() -> NodalStencils {
    NODAL_STENCILS
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn grid(n: usize) -> UniformGrid {
        UniformGrid::new(0.0, 1.0, n).unwrap()
    }

    // independent route: truncated power form with binomial weights
    fn truncated_power(g: &UniformGrid, i: isize, x: f64) -> f64 {
        const BINOM: [f64; 7] = [1.0, 6.0, 15.0, 20.0, 15.0, 6.0, 1.0];
        let h = g.h();
        if x >= g.knot(i + 3) {
            return 0.0;
        }
        (0..7)
            .map(|m| {
                let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
                let u = ((x - g.knot(i - 3 + m as isize)) / h).max(0.0);
                sign * BINOM[m] * u.powi(5)
            })
            .sum()
    }

    #[test]
    fn grid_rejects_bad_input() {
        assert!(UniformGrid::new(0.0, 1.0, 4).is_err());
        assert!(UniformGrid::new(1.0, 0.0, 10).is_err());
        assert!(UniformGrid::new(0.0, f64::NAN, 10).is_err());
        let g = UniformGrid::new(-1.0, 2.0, 30).unwrap();
        assert!((g.h() * 30.0 - 3.0).abs() <= 1e-12 * 3.0);
        assert_eq!(g.knot(30), 2.0);
    }

    #[test]
    fn basis_index_range() {
        let g = grid(10);
        assert!(BasisIndex::new(&g, -2).is_ok());
        assert!(BasisIndex::new(&g, 12).is_ok());
        assert!(BasisIndex::new(&g, -3).is_err());
        assert!(BasisIndex::new(&g, 13).is_err());
        assert_eq!(BasisIndex::all(&g).count(), 15);
    }

    #[test]
    fn nodal_values_match_table() {
        let g = UniformGrid::new(0.0, 2.0, 20).unwrap();
        let h = g.h();
        let i = BasisIndex::new(&g, 10).unwrap();
        let expect = [
            [0.0, 1.0, 26.0, 66.0, 26.0, 1.0, 0.0],
            [0.0, 5.0, 50.0, 0.0, -50.0, -5.0, 0.0],
            [0.0, 20.0, 40.0, -120.0, 40.0, 20.0, 0.0],
        ];
        for (d, row) in Derivative::ALL.iter().zip(expect) {
            for (m, want) in row.iter().enumerate() {
                let x = g.knot(10 - 3 + m as isize);
                let got = basis_eval(&g, i, x, *d).unwrap() / h_scale(h, *d);
                assert!(
                    (got - want).abs() < 1e-9,
                    "{d:?} at x_{{i{:+}}}: {got}",
                    m as isize - 3
                );
            }
        }
    }

    #[test]
    fn first_derivative_at_right_neighbour() {
        let g = grid(10);
        let i = BasisIndex::new(&g, 4).unwrap();
        let v = basis_eval(&g, i, g.knot(5), Derivative::First).unwrap();
        assert!((v + 50.0 / g.h()).abs() < 1e-9);
    }

    #[test]
    fn support_boundary_is_zero() {
        let g = grid(10);
        let i = BasisIndex::new(&g, 4).unwrap();
        assert_eq!(
            basis_eval(&g, i, g.knot(7), Derivative::Value).unwrap(),
            0.0
        );
        assert_eq!(
            basis_eval(&g, i, g.knot(8), Derivative::Value).unwrap(),
            0.0
        );
        assert_eq!(basis_eval(&g, i, 0.95, Derivative::Second).unwrap(), 0.0);
    }

    #[test]
    fn off_node_value_matches_exact_polynomial() {
        // (2.5^5 - 6 * 1.5^5 + 15 * 0.5^5) = 841/16, computed in exact rationals
        let g = grid(10);
        let i = BasisIndex::new(&g, 5).unwrap();
        let v = basis_eval(&g, i, 0.45, Derivative::Value).unwrap();
        assert!((v - 841.0 / 16.0).abs() < 1e-11, "{v}");
    }

    #[test]
    fn domain_errors() {
        let g = grid(10);
        let i = BasisIndex::new(&g, 0).unwrap();
        assert!(basis_eval(&g, i, -0.01, Derivative::Value).is_err());
        assert!(basis_eval(&g, i, 1.0 + 1e-6, Derivative::Value).is_err());
        assert!(basis_eval(&g, i, 1.0 + 1e-15, Derivative::Value).is_ok());
        assert!(Derivative::try_from(3).is_err());
        assert_eq!(Derivative::try_from(2).unwrap(), Derivative::Second);
    }

    #[test]
    fn stencils() {
        let s = nodal_stencils();
        assert_eq!(s.value.weights, [1.0, 26.0, 66.0, 26.0, 1.0]);
        assert_eq!(s.first.weights, [-5.0, -50.0, 0.0, 50.0, 5.0]);
        assert_eq!(s.second.weights, [20.0, 40.0, -120.0, 40.0, 20.0]);
        assert_eq!(
            (s.value.h_power, s.first.h_power, s.second.h_power),
            (0, -1, -2)
        );
    }

    #[test]
    fn c4_continuity_at_interior_knots() {
        let g = grid(12);
        let h = g.h();
        for i in BasisIndex::all(&g) {
            for j in 1..12 {
                let x = g.knot(j);
                let p_right = j - i.get() + 3;
                let p_left = p_right - 1;
                for d in Derivative::ALL {
                    let right = if (0..6).contains(&p_right) {
                        piece(p_right as usize, 0.0, d)
                    } else {
                        0.0
                    };
                    let left = if (0..6).contains(&p_left) {
                        piece(p_left as usize, 1.0, d)
                    } else {
                        0.0
                    };
                    assert!(
                        (right - left).abs() * h_scale(h, d) * h.powi(d.order() as i32) < 1e-9,
                        "B_{} order {} jump at {x}",
                        i.get(),
                        d.order()
                    );
                }
            }
        }
    }

    proptest! {
        #[test]
        fn partition_sum_is_120(x in 0.0f64..=1.0, n in 5usize..60) {
            let g = grid(n);
            let (s, abs_s, d1, d2) = BasisIndex::all(&g).fold((0.0, 0.0, 0.0, 0.0), |acc, i| {
                let v = basis_eval(&g, i, x, Derivative::Value).unwrap();
                (
                    acc.0 + v,
                    acc.1 + v.abs(),
                    acc.2 + basis_eval(&g, i, x, Derivative::First).unwrap(),
                    acc.3 + basis_eval(&g, i, x, Derivative::Second).unwrap(),
                )
            });
            prop_assert!((s - 120.0).abs() <= 1e-9);
            prop_assert!(abs_s <= 186.0);
            prop_assert!(d1.abs() <= 1e-9 / (g.h() * g.h()));
            prop_assert!(d2.abs() <= 1e-9 / (g.h() * g.h()));
        }

        #[test]
        fn matches_truncated_power_form(x in 0.0f64..=1.0, n in 5usize..40, offset in 0usize..100) {
            let g = grid(n);
            let i = BasisIndex::new(&g, (offset % (n + 5)) as isize - 2).unwrap();
            let v = basis_eval(&g, i, x, Derivative::Value).unwrap();
            prop_assert!((v - truncated_power(&g, i.get(), x)).abs() <= 1e-9);
        }

        #[test]
        fn derivatives_match_finite_differences(s in 0.05f64..0.95, n in 5usize..30, offset in 0usize..100) {
            let g = grid(n);
            let i = BasisIndex::new(&g, (offset % (n + 5)) as isize - 2).unwrap();
            let step = 1e-6 * g.h();
            let f = |x: f64, d| basis_eval(&g, i, x, d).unwrap();
            let fd1 = (f(s + step, Derivative::Value) - f(s - step, Derivative::Value)) / (2.0 * step);
            let fd2 = (f(s + step, Derivative::First) - f(s - step, Derivative::First)) / (2.0 * step);
            let d1 = f(s, Derivative::First);
            let d2 = f(s, Derivative::Second);
            let scale1 = 66.0 / g.h();
            let scale2 = 120.0 / (g.h() * g.h());
            prop_assert!((fd1 - d1).abs() <= 1e-5 * scale1, "{fd1} vs {d1}");
            prop_assert!((fd2 - d2).abs() <= 1e-5 * scale2, "{fd2} vs {d2}");
        }
    }
}
