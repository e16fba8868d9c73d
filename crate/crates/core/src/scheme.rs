//! Three-level collocation scheme.
//!
//! Per step the nodal equations are
//!
//! ```text
//! v U_i^{n+1} + w (U'')_i^{n+1} = Ψ_i^n
//! Ψ_i^n = (2 - β²Γ²) U_i^n + (αΓ - 1) U_i^{n-1} + Γ²/2 (U'')_i^{n-1} + Γ² f(x_i, t_n)
//! v = 1 + αΓ,  w = -Γ²/2
//! ```
//!
//! where `Γ = Γ(k)` is either `k` or `2 sin(k/2)`. After eliminating the four
//! exterior coefficients the matrix is pentadiagonal and time independent, so
//! it is factored once.

use std::fmt;
use std::str::FromStr;

use log::warn;

use crate::banded::{BandedLu, BandedSystem};
use crate::basis::{Derivative, UniformGrid};
use crate::boundary::{BoundaryData, SymmetricStencil};
use crate::error::{Error, Result};
use crate::problem::TelegraphProblem;
use crate::spline::{closed_rows, fit_interpolant, EndConditions, SplineCoefficients};

/// Choice of the time-step surrogate `Γ(k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GammaChoice {
    /// `Γ(k) = k`
    PlainK,
    /// `Γ(k) = 2 sin(k/2)`
    TwoSinHalfK,
}

impl GammaChoice {
    pub const ALL: [GammaChoice; 2] = [GammaChoice::PlainK, GammaChoice::TwoSinHalfK];

    pub fn label(self) -> &'static str {
        match self {
            GammaChoice::PlainK => "k",
            GammaChoice::TwoSinHalfK => "2sin",
        }
    }
}

impl fmt::Display for GammaChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

impl FromStr for GammaChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "k" => Ok(GammaChoice::PlainK),
            "2sin" | "2sin(k/2)" => Ok(GammaChoice::TwoSinHalfK),
            other => Err(Error::Config(format!(
                "gamma: unknown choice '{other}', expected 'k' or '2sin'"
            ))),
        }
    }
}

pub fn gamma(k: f64, choice: GammaChoice) -> f64 {
    match choice {
        GammaChoice::PlainK => k,
        GammaChoice::TwoSinHalfK => 2.0 * (0.5 * k).sin(),
    }
}

/// Discretisation parameters of one run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeParams {
    /// Number of subintervals `N`.
    pub intervals: usize,
    /// Time step `k`.
    pub k: f64,
    pub gamma: GammaChoice,
    pub t_final: f64,
}

/// Whether `t` is a whole number of steps of size `k`; returns that number.
pub fn whole_steps(t: f64, k: f64) -> Option<usize> {
    let r = t / k;
    let n = r.round();
    if n >= 0.0 && (r - n).abs() <= 1e-9 * n.max(1.0) {
        Some(n as usize)
    } else {
        None
    }
}

impl SchemeParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.k > 0.0 && self.k.is_finite()) {
            return Err(Error::Config(format!(
                "k: must be positive, got {}",
                self.k
            )));
        }
        if !(self.t_final >= self.k && self.t_final.is_finite()) {
            return Err(Error::Config(format!(
                "t_final: {} is smaller than k = {}",
                self.t_final, self.k
            )));
        }
        if whole_steps(self.t_final, self.k).is_none() {
            return Err(Error::Config(format!(
                "t_final: {} is not a whole number of steps of k = {}",
                self.t_final, self.k
            )));
        }
        Ok(())
    }

    pub fn steps(&self) -> usize {
        whole_steps(self.t_final, self.k).unwrap_or(0)
    }

    pub fn gamma_value(&self) -> f64 {
        gamma(self.k, self.gamma)
    }
}

/// Time-independent coefficients of the scheme.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchemeCoefficients {
    pub v: f64,
    pub w: f64,
    /// `v + 20 w / h²`, weight of `c_{i±2}`
    pub outer: f64,
    /// `26 v + 40 w / h²`, weight of `c_{i±1}`
    pub inner: f64,
    /// `66 v - 120 w / h²`, weight of `c_i`
    pub center: f64,
}

impl SchemeCoefficients {
    pub fn stencil(&self) -> SymmetricStencil {
        SymmetricStencil {
            outer: self.outer,
            inner: self.inner,
            center: self.center,
        }
    }
}

/// `v`, `w` and the collocation weights. `β` only enters the right-hand side.
pub fn scheme_coefficients(alpha: f64, gamma_k: f64, h: f64) -> SchemeCoefficients {
    let v = 1.0 + alpha * gamma_k;
    let w = -0.5 * gamma_k * gamma_k;
    let r = w / (h * h);
    SchemeCoefficients {
        v,
        w,
        outer: v + 20.0 * r,
        inner: 26.0 * v + 40.0 * r,
        center: 66.0 * v - 120.0 * r,
    }
}

/// The `(N+1)`-square collocation matrix with the boundary rows closed.
pub fn assemble_matrix(intervals: usize, coeffs: &SchemeCoefficients) -> Result<BandedSystem> {
    if intervals < crate::basis::MIN_INTERVALS {
        return Err(Error::InvalidGrid(format!(
            "N = {intervals} subintervals, at least {} required",
            crate::basis::MIN_INTERVALS
        )));
    }
    let s = coeffs.stencil();
    BandedSystem::build(intervals + 1, 2, 2, &closed_rows(intervals, &s, &s))
}

/// Nodal values at `t = k` from a second-order Taylor expansion in time.
pub fn startup_values(problem: &TelegraphProblem, k: f64, grid: &UniformGrid) -> Vec<f64> {
    grid.nodes()
        .into_iter()
        .map(|x| {
            (problem.f0)(x) + k * (problem.f1)(x) + 0.5 * k * k * problem.initial_acceleration(x)
        })
        .collect()
}

/// Boundary data at time `t`.
pub fn boundary_data(problem: &TelegraphProblem, t: f64) -> BoundaryData {
    BoundaryData {
        left_value: (problem.g0)(t),
        right_value: (problem.g1)(t),
        left_slope: (problem.g2)(t),
        right_slope: (problem.g3)(t),
    }
}

/// Two consecutive time levels.
#[derive(Debug, Clone, PartialEq)]
pub struct TimeState {
    prev: SplineCoefficients,
    curr: SplineCoefficients,
}

impl TimeState {
    pub fn new(prev: SplineCoefficients, curr: SplineCoefficients) -> Result<Self> {
        if prev.time_level() + 1 != curr.time_level() {
            return Err(Error::Config(format!(
                "time state levels {} and {} are not consecutive",
                prev.time_level(),
                curr.time_level()
            )));
        }
        if prev.grid() != curr.grid() {
            return Err(Error::Config(
                "time state levels use different grids".into(),
            ));
        }
        Ok(Self { prev, curr })
    }

    pub fn level(&self) -> usize {
        self.curr.time_level()
    }

    pub fn prev(&self) -> &SplineCoefficients {
        &self.prev
    }

    pub fn curr(&self) -> &SplineCoefficients {
        &self.curr
    }
}

/// Coefficients for levels 0 and 1.
///
/// Level 0 interpolates `f0` with end slopes `g2(0), g3(0)` and end second
/// derivatives `f0''`. Level 1 interpolates the Taylor start-up values with
/// end slopes `g2(k), g3(k)`. Both levels take their end values from the
/// Dirichlet data. Level 1 end second derivatives come from the
/// equation at the boundary with `u_tt(·, k) ≈ u_tt(·, 0)`.
pub fn initial_state(problem: &TelegraphProblem, k: f64, grid: &UniformGrid) -> Result<TimeState> {
    let (a, b) = (grid.a(), grid.b());
    let n = grid.intervals();
    let mut values0: Vec<f64> = grid.nodes().into_iter().map(|x| (problem.f0)(x)).collect();
    values0[0] = (problem.g0)(0.0);
    values0[n] = (problem.g1)(0.0);
    let ends0 = EndConditions {
        left_slope: (problem.g2)(0.0),
        right_slope: (problem.g3)(0.0),
        left_curvature: (problem.f0_xx)(a),
        right_curvature: (problem.f0_xx)(b),
    };
    let c0 = fit_interpolant(grid, &values0, &ends0)?.with_time_level(0);

    let curvature_at_k = |x: f64, value: f64| {
        let acc = problem.initial_acceleration(x);
        let vel = (problem.f1)(x) + k * acc;
        acc + 2.0 * problem.alpha * vel + problem.beta * problem.beta * value
            - (problem.forcing)(x, k)
    };
    let mut values1 = startup_values(problem, k, grid);
    values1[0] = (problem.g0)(k);
    values1[n] = (problem.g1)(k);
    let ends1 = EndConditions {
        left_slope: (problem.g2)(k),
        right_slope: (problem.g3)(k),
        left_curvature: curvature_at_k(a, (problem.g0)(k)),
        right_curvature: curvature_at_k(b, (problem.g1)(k)),
    };
    let c1 = fit_interpolant(grid, &values1, &ends1)?.with_time_level(1);
    TimeState::new(c0, c1)
}

/// Right-hand side `Q` for the step from level `n` to `n + 1`.
pub fn assemble_rhs(
    problem: &TelegraphProblem,
    params: &SchemeParams,
    state: &TimeState,
    coeffs: &SchemeCoefficients,
) -> Vec<f64> {
    let grid = state.curr().grid();
    let n = grid.intervals();
    let h = grid.h();
    let g = params.gamma_value();
    let g2 = g * g;
    let (alpha, beta) = (problem.alpha, problem.beta);
    let t_n = state.level() as f64 * params.k;

    let a_curr = 2.0 - beta * beta * g2;
    let a_prev = alpha * g - 1.0;
    let mut q: Vec<f64> = (0..=n)
        .map(|i| {
            let x = grid.knot(i as isize);
            a_curr * state.curr.nodal(i, Derivative::Value)
                + a_prev * state.prev.nodal(i, Derivative::Value)
                + 0.5 * g2 * state.prev.nodal(i, Derivative::Second)
                + g2 * (problem.forcing)(x, t_n)
        })
        .collect();

    let data = boundary_data(problem, t_n + params.k);
    let s = coeffs.stencil();
    q[0] += s.first_row_rhs(data.left_value, h * data.left_slope);
    q[1] += s.second_row_rhs(data.left_value, h * data.left_slope);
    q[n - 1] += s.second_row_rhs(data.right_value, -h * data.right_slope);
    q[n] += s.first_row_rhs(data.right_value, -h * data.right_slope);
    q
}

/// Fills in `c_{-2}, c_{-1}, c_{N+1}, c_{N+2}` from the boundary data.
pub fn recover_ghost_coefficients(
    interior: &[f64],
    data: &BoundaryData,
    grid: &UniformGrid,
    time_level: usize,
) -> Result<SplineCoefficients> {
    SplineCoefficients::from_interior(*grid, interior, data, time_level)
}

/// A factored scheme for one problem and parameter set.
#[derive(Debug, Clone)]
pub struct TelegraphSolver<'p> {
    problem: &'p TelegraphProblem,
    params: SchemeParams,
    grid: UniformGrid,
    coeffs: SchemeCoefficients,
    lu: BandedLu,
}

/// Coefficients of one reported time level.
#[derive(Debug, Clone, PartialEq)]
pub struct Snapshot {
    pub t: f64,
    pub coeffs: SplineCoefficients,
}

impl Snapshot {
    pub fn level(&self) -> usize {
        self.coeffs.time_level()
    }
}

/// Which levels [`TelegraphSolver::run`] keeps.
#[derive(Debug, Clone, PartialEq)]
pub enum Selection {
    All,
    Final,
    Levels(Vec<usize>),
}

impl Selection {
    /// Levels for a list of report times; each must be a whole multiple of
    /// `k` not beyond `t_final`.
    pub fn at_times(times: &[f64], params: &SchemeParams) -> Result<Self> {
        let last = params.steps();
        let mut levels = Vec::with_capacity(times.len());
        for &t in times {
            match whole_steps(t, params.k) {
                Some(n) if n <= last => levels.push(n),
                Some(_) => {
                    return Err(Error::Config(format!(
                        "report_times: {t} is beyond t_final = {}",
                        params.t_final
                    )))
                }
                None => {
                    return Err(Error::Config(format!(
                        "report_times: {t} is not a whole multiple of k = {}",
                        params.k
                    )))
                }
            }
        }
        levels.sort_unstable();
        levels.dedup();
        Ok(Selection::Levels(levels))
    }

    fn keeps(&self, level: usize, last: usize) -> bool {
        match self {
            Selection::All => true,
            Selection::Final => level == last,
            Selection::Levels(l) => l.binary_search(&level).is_ok(),
        }
    }
}

impl<'p> TelegraphSolver<'p> {
    pub fn new(problem: &'p TelegraphProblem, params: SchemeParams) -> Result<Self> {
        params.validate()?;
        problem.validate()?;
        let grid = UniformGrid::new(problem.a, problem.b, params.intervals)?;
        let coeffs = scheme_coefficients(problem.alpha, params.gamma_value(), grid.h());
        if coeffs.v <= 0.0 {
            warn!(
                "v = 1 + alpha*Gamma(k) = {} is not positive (alpha = {}, k = {})",
                coeffs.v, problem.alpha, params.k
            );
        }
        let lu = assemble_matrix(params.intervals, &coeffs)?.factor()?;
        Ok(Self {
            problem,
            params,
            grid,
            coeffs,
            lu,
        })
    }

    pub fn grid(&self) -> &UniformGrid {
        &self.grid
    }

    pub fn params(&self) -> &SchemeParams {
        &self.params
    }

    pub fn coefficients(&self) -> &SchemeCoefficients {
        &self.coeffs
    }

    pub fn initial_state(&self) -> Result<TimeState> {
        initial_state(self.problem, self.params.k, &self.grid)
    }

    /// Advances `state` by one step.
    pub fn step(&self, state: TimeState) -> Result<TimeState> {
        let mut q = assemble_rhs(self.problem, &self.params, &state, &self.coeffs);
        self.lu.solve_in_place(&mut q)?;
        let level = state.level() + 1;
        let data = boundary_data(self.problem, level as f64 * self.params.k);
        let next = recover_ghost_coefficients(&q, &data, &self.grid, level)?;
        Ok(TimeState {
            prev: state.curr,
            curr: next,
        })
    }

    /// Marches to `t_final`, keeping the selected levels.
    pub fn run(&self, selection: &Selection) -> Result<Vec<Snapshot>> {
        let last = self.params.steps();
        if last < 2 {
            return Err(Error::Config(format!(
                "t_final: {} must be at least 2k = {}",
                self.params.t_final,
                2.0 * self.params.k
            )));
        }
        let k = self.params.k;
        let mut out = Vec::new();
        let mut keep = |s: &SplineCoefficients| {
            if selection.keeps(s.time_level(), last) {
                out.push(Snapshot {
                    t: s.time_level() as f64 * k,
                    coeffs: s.clone(),
                });
            }
        };
        let mut state = self.initial_state()?;
        keep(state.prev());
        keep(state.curr());
        while state.level() < last {
            state = self.step(state)?;
            keep(state.curr());
        }
        Ok(out)
    }
}

/// Solves `problem` up to `params.t_final` and returns the selected levels.
pub fn solve_to_time(
    problem: &TelegraphProblem,
    params: SchemeParams,
    selection: &Selection,
) -> Result<Vec<Snapshot>> {
    TelegraphSolver::new(problem, params)?.run(selection)
}
