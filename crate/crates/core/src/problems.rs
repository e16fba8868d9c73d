//! Built-in problems with closed-form solutions on `[0, 1]`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::problem::{ExactSolution, TelegraphProblem};

/// Overrides accepted by the registry. `None` keeps the entry's default.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct ProblemOverrides {
    pub alpha: Option<f64>,
    pub beta: Option<f64>,
    /// Scale `C` of the `constant` and `linear` templates.
    pub amplitude: Option<f64>,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProblemInfo {
    pub id: &'static str,
    pub alpha: f64,
    pub beta: f64,
    pub solution: &'static str,
}

pub const REGISTRY: &[ProblemInfo] = &[
    ProblemInfo {
        id: "example1",
        alpha: PI,
        beta: PI,
        solution: "u = sin(pi t) sin(pi x)",
    },
    ProblemInfo {
        id: "example2",
        alpha: 20.0,
        beta: 10.0,
        solution: "u = exp(-2t) sinh(x)",
    },
    ProblemInfo {
        id: "example3",
        alpha: 10.0,
        beta: 5.0,
        solution: "u = cos(t) sin(x)",
    },
    ProblemInfo {
        id: "zero",
        alpha: 1.0,
        beta: 1.0,
        solution: "u = 0",
    },
    ProblemInfo {
        id: "constant",
        alpha: 1.0,
        beta: 1.0,
        solution: "u = C",
    },
    ProblemInfo {
        id: "linear",
        alpha: 1.0,
        beta: 1.0,
        solution: "u = C x",
    },
];

pub fn info(id: &str) -> Option<&'static ProblemInfo> {
    REGISTRY.iter().find(|p| p.id == id)
}

/// Instantiates a registry entry.
pub fn builtin(id: &str, overrides: &ProblemOverrides) -> Result<TelegraphProblem> {
    let entry = info(id).ok_or_else(|| {
        let known: Vec<_> = REGISTRY.iter().map(|p| p.id).collect();
        Error::Config(format!(
            "problem: unknown id '{id}', known: {}",
            known.join(", ")
        ))
    })?;
    let alpha = overrides.alpha.unwrap_or(entry.alpha);
    let beta = overrides.beta.unwrap_or(entry.beta);
    let c = overrides.amplitude.unwrap_or(1.0);
    let b2 = beta * beta;

    let problem = match id {
        "example1" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            // reduces to π² sin(πx)(sin(πt) + 2cos(πt)) for α = β = π
            Arc::new(move |x, t| {
                (PI * x).sin() * (b2 * (PI * t).sin() + 2.0 * alpha * PI * (PI * t).cos())
            }),
            ExactSolution {
                u: Arc::new(|x, t| (PI * t).sin() * (PI * x).sin()),
                u_t: Arc::new(|x, t| PI * (PI * t).cos() * (PI * x).sin()),
                u_x: Arc::new(|x, t| PI * (PI * t).sin() * (PI * x).cos()),
                u_xx: Arc::new(|x, t| -PI * PI * (PI * t).sin() * (PI * x).sin()),
            },
        ),
        "example2" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            Arc::new(move |x, t| (3.0 - 4.0 * alpha + b2) * (-2.0 * t).exp() * x.sinh()),
            ExactSolution {
                u: Arc::new(|x, t| (-2.0 * t).exp() * x.sinh()),
                u_t: Arc::new(|x, t| -2.0 * (-2.0 * t).exp() * x.sinh()),
                u_x: Arc::new(|x, t| (-2.0 * t).exp() * x.cosh()),
                u_xx: Arc::new(|x, t| (-2.0 * t).exp() * x.sinh()),
            },
        ),
        "example3" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            Arc::new(move |x, t| -2.0 * alpha * t.sin() * x.sin() + b2 * t.cos() * x.sin()),
            ExactSolution {
                u: Arc::new(|x, t| t.cos() * x.sin()),
                u_t: Arc::new(|x, t| -t.sin() * x.sin()),
                u_x: Arc::new(|x, t| t.cos() * x.cos()),
                u_xx: Arc::new(|x, t| -t.cos() * x.sin()),
            },
        ),
        "zero" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            Arc::new(|_, _| 0.0),
            ExactSolution {
                u: Arc::new(|_, _| 0.0),
                u_t: Arc::new(|_, _| 0.0),
                u_x: Arc::new(|_, _| 0.0),
                u_xx: Arc::new(|_, _| 0.0),
            },
        ),
        "constant" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            Arc::new(move |_, _| b2 * c),
            ExactSolution {
                u: Arc::new(move |_, _| c),
                u_t: Arc::new(|_, _| 0.0),
                u_x: Arc::new(|_, _| 0.0),
                u_xx: Arc::new(|_, _| 0.0),
            },
        ),
        "linear" => TelegraphProblem::from_exact(
            alpha,
            beta,
            (0.0, 1.0),
            Arc::new(move |x, _| b2 * c * x),
            ExactSolution {
                u: Arc::new(move |x, _| c * x),
                u_t: Arc::new(|_, _| 0.0),
                u_x: Arc::new(move |_, _| c),
                u_xx: Arc::new(|_, _| 0.0),
            },
        ),
        _ => unreachable!("registry entry without constructor"),
    };
    Ok(problem)
}
