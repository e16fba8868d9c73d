//! Quintic B-spline collocation for the one-dimensional telegraph equation
//!
//! ```text
//! u_tt + 2α u_t + β² u = u_xx + f(x, t),   a ≤ x ≤ b,  t ≥ 0
//! ```
//!
//! with initial displacement and velocity and both Dirichlet and Neumann data
//! at each end. The solution at each time level is a quintic spline on a
//! uniform grid; a three-level scheme advances its coefficients by solving one
//! pentadiagonal system per step.
//!
//! ```
//! use telegraph::{builtin, solve_to_time, ErrorReport, GammaChoice, ProblemOverrides, SchemeParams, Selection};
//!
//! let problem = builtin("example3", &ProblemOverrides::default()).unwrap();
//! let params = SchemeParams { intervals: 21, k: 0.01, gamma: GammaChoice::PlainK, t_final: 0.5 };
//! let snaps = solve_to_time(&problem, params, &Selection::Final).unwrap();
//! let report = ErrorReport::for_snapshot(&problem, &snaps[0], params.k, params.gamma).unwrap();
//! assert!(report.norms.l_inf < 1e-6);
//! ```

pub mod banded;
pub mod basis;
pub mod boundary;
mod error;
pub mod metrics;
pub mod problem;
pub mod problems;
pub mod scheme;
pub mod spline;

pub use banded::{BandedLu, BandedSystem};
pub use basis::{basis_eval, nodal_stencils, BasisIndex, Derivative, NodalStencil, UniformGrid};
pub use boundary::BoundaryData;
pub use error::{Error, Result};
pub use metrics::{error_norms, observed_order, ErrorNorms, ErrorReport};
pub use problem::{ExactSolution, TelegraphProblem};
pub use problems::{builtin, ProblemOverrides, REGISTRY};
pub use scheme::{
    assemble_matrix, assemble_rhs, gamma, initial_state, recover_ghost_coefficients,
    scheme_coefficients, solve_to_time, startup_values, GammaChoice, SchemeCoefficients,
    SchemeParams, Selection, Snapshot, TelegraphSolver, TimeState,
};
pub use spline::{fit_interpolant, EndConditions, SplineCoefficients};
