//! Problem data for `u_tt + 2α u_t + β² u = u_xx + f(x, t)` on `[a, b]`.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

pub type SpaceFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type TimeFn = Arc<dyn Fn(f64) -> f64 + Send + Sync>;
pub type SpaceTimeFn = Arc<dyn Fn(f64, f64) -> f64 + Send + Sync>;

/// Initial, boundary and forcing data of a telegraph problem.
#[derive(Clone)]
pub struct TelegraphProblem {
    pub alpha: f64,
    pub beta: f64,
    pub a: f64,
    pub b: f64,
    pub forcing: SpaceTimeFn,
    /// `u(x, 0)`
    pub f0: SpaceFn,
    /// `u_t(x, 0)`
    pub f1: SpaceFn,
    /// `∂²f0/∂x²`, needed by the second-order start-up.
    pub f0_xx: SpaceFn,
    /// `u(a, t)`
    pub g0: TimeFn,
    /// `u(b, t)`
    pub g1: TimeFn,
    /// `u_x(a, t)`
    pub g2: TimeFn,
    /// `u_x(b, t)`
    pub g3: TimeFn,
    pub exact: Option<SpaceTimeFn>,
}

impl fmt::Debug for TelegraphProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TelegraphProblem")
            .field("alpha", &self.alpha)
            .field("beta", &self.beta)
            .field("domain", &(self.a, self.b))
            .field("has_exact", &self.exact.is_some())
            .finish_non_exhaustive()
    }
}

/// A closed-form solution with the derivatives needed to derive all data.
#[derive(Clone)]
pub struct ExactSolution {
    pub u: SpaceTimeFn,
    pub u_t: SpaceTimeFn,
    pub u_x: SpaceTimeFn,
    pub u_xx: SpaceTimeFn,
}

impl TelegraphProblem {
    /// Builds a problem whose initial and boundary data are taken from `sol`.
    pub fn from_exact(
        alpha: f64,
        beta: f64,
        (a, b): (f64, f64),
        forcing: SpaceTimeFn,
        sol: ExactSolution,
    ) -> Self {
        let ExactSolution { u, u_t, u_x, u_xx } = sol;
        let (u0, ut0, uxx0) = (u.clone(), u_t, u_xx);
        let (ua, ub, uxa, uxb) = (u.clone(), u.clone(), u_x.clone(), u_x);
        Self {
            alpha,
            beta,
            a,
            b,
            forcing,
            f0: Arc::new(move |x| u0(x, 0.0)),
            f1: Arc::new(move |x| ut0(x, 0.0)),
            f0_xx: Arc::new(move |x| uxx0(x, 0.0)),
            g0: Arc::new(move |t| ua(a, t)),
            g1: Arc::new(move |t| ub(b, t)),
            g2: Arc::new(move |t| uxa(a, t)),
            g3: Arc::new(move |t| uxb(b, t)),
            exact: Some(u),
        }
    }

    /// Second time derivative at `t = 0` implied by the equation.
    pub fn initial_acceleration(&self, x: f64) -> f64 {
        (self.forcing)(x, 0.0)
            - self.beta * self.beta * (self.f0)(x)
            - 2.0 * self.alpha * (self.f1)(x)
            + (self.f0_xx)(x)
    }

    /// Corner compatibility between initial and boundary data.
    pub fn validate(&self) -> Result<()> {
        if !self.alpha.is_finite() || !self.beta.is_finite() {
            return Err(Error::Incompatible("alpha and beta must be finite".into()));
        }
        if !(self.a.is_finite() && self.b.is_finite() && self.a < self.b) {
            return Err(Error::Incompatible(format!(
                "domain [{}, {}] is empty or not finite",
                self.a, self.b
            )));
        }
        let check = |name: &str, lhs: f64, rhs: f64, tol: f64| {
            if (lhs - rhs).abs() <= tol * (1.0 + rhs.abs()) {
                Ok(())
            } else {
                Err(Error::Incompatible(format!(
                    "{name}: {lhs} does not match {rhs}"
                )))
            }
        };
        check("f0(a) vs g0(0)", (self.f0)(self.a), (self.g0)(0.0), 1e-9)?;
        check("f0(b) vs g1(0)", (self.f0)(self.b), (self.g1)(0.0), 1e-9)?;
        if let Some(u) = &self.exact {
            // one-sided second-order differences of u(x, 0) at the ends
            let e = 1e-4 * (self.b - self.a);
            let u0 = |x: f64| u(x, 0.0);
            let da = (-3.0 * u0(self.a) + 4.0 * u0(self.a + e) - u0(self.a + 2.0 * e)) / (2.0 * e);
            let db = (3.0 * u0(self.b) - 4.0 * u0(self.b - e) + u0(self.b - 2.0 * e)) / (2.0 * e);
            check("u_x(a, 0) vs g2(0)", da, (self.g2)(0.0), 1e-6)?;
            check("u_x(b, 0) vs g3(0)", db, (self.g3)(0.0), 1e-6)?;
        }
        Ok(())
    }
}
