use approx::assert_relative_eq;
use telegraph::boundary::ghost_coefficients;
use telegraph::{
    assemble_matrix, assemble_rhs, builtin, fit_interpolant, gamma, initial_state,
    recover_ghost_coefficients, scheme_coefficients, solve_to_time, startup_values, BoundaryData,
    Derivative, EndConditions, ErrorReport, GammaChoice, ProblemOverrides, SchemeParams, Selection,
    TelegraphProblem, TimeState, UniformGrid,
};

const VALUE: [f64; 5] = [1.0, 26.0, 66.0, 26.0, 1.0];
const SLOPE: [f64; 5] = [-5.0, -50.0, 0.0, 50.0, 5.0];
const CURV: [f64; 5] = [20.0, 40.0, -120.0, 40.0, 20.0];

fn problem(id: &str) -> TelegraphProblem {
    builtin(id, &ProblemOverrides::default()).unwrap()
}

/// Ghost pair `(c_{-2}, c_{-1})` as an affine map of `(c_0, c_1, c_2)` and
/// `(g, h g')`, solved directly from the value and slope rows by Cramer's rule.
fn left_ghosts(c: [f64; 3], g: f64, hs: f64) -> (f64, f64) {
    let r1 = g - (VALUE[2] * c[0] + VALUE[3] * c[1] + VALUE[4] * c[2]);
    let r2 = hs - (SLOPE[2] * c[0] + SLOPE[3] * c[1] + SLOPE[4] * c[2]);
    let det = VALUE[0] * SLOPE[1] - VALUE[1] * SLOPE[0];
    (
        (r1 * SLOPE[1] - VALUE[1] * r2) / det,
        (VALUE[0] * r2 - SLOPE[0] * r1) / det,
    )
}

/// Full-width collocation row applied after eliminating the ghosts, for a
/// vector of interior coefficients and boundary data.
fn apply_collocation(
    weights: &[f64; 5],
    interior: &[f64],
    data: &BoundaryData,
    h: f64,
) -> Vec<f64> {
    let n = interior.len() - 1;
    let (lm2, lm1) = left_ghosts(
        [interior[0], interior[1], interior[2]],
        data.left_value,
        h * data.left_slope,
    );
    // mirror: x -> a + b - x reverses coefficients and flips the slope sign
    let (rp2, rp1) = left_ghosts(
        [interior[n], interior[n - 1], interior[n - 2]],
        data.right_value,
        -h * data.right_slope,
    );
    let mut full = vec![lm2, lm1];
    full.extend_from_slice(interior);
    full.extend([rp1, rp2]);
    (0..=n)
        .map(|i| {
            weights
                .iter()
                .zip(&full[i..i + 5])
                .map(|(w, c)| w * c)
                .sum()
        })
        .collect()
}

#[test]
fn ghost_elimination_matches_direct_solve() {
    let h = 0.1;
    let interior: Vec<f64> = (0..11).map(|i| ((i * 7 % 5) as f64 - 1.5) * 0.3).collect();
    let data = BoundaryData {
        left_value: 0.7,
        right_value: -1.2,
        left_slope: 2.0,
        right_slope: 0.4,
    };
    let g = ghost_coefficients(&interior, &data, h);
    let (lm2, lm1) = left_ghosts([interior[0], interior[1], interior[2]], 0.7, h * 2.0);
    let (rp2, rp1) = left_ghosts([interior[10], interior[9], interior[8]], -1.2, -h * 0.4);
    for (got, want) in g.iter().zip([lm2, lm1, rp1, rp2]) {
        assert_relative_eq!(*got, want, epsilon = 1e-12, max_relative = 1e-12);
    }
}

#[test]
#[allow(clippy::needless_range_loop)]
fn matrix_matches_symbolic_substitution() {
    for &(n, k, alpha, h_scale) in &[
        (10, 0.01, 1.0, 1.0),
        (17, 0.05, 20.0, 2.0),
        (40, 1e-3, -0.5, 0.5),
    ] {
        let h = h_scale / n as f64;
        let coeffs = scheme_coefficients(alpha, k, h);
        let a = assemble_matrix(n, &coeffs).unwrap();
        let row: Vec<f64> = (0..5)
            .map(|m| coeffs.v * VALUE[m] + coeffs.w / (h * h) * CURV[m])
            .collect();
        let row: [f64; 5] = row.try_into().unwrap();
        let zero = BoundaryData::default();
        for j in 0..=n {
            let mut e = vec![0.0; n + 1];
            e[j] = 1.0;
            let col = apply_collocation(&row, &e, &zero, h);
            for i in 0..=n {
                let scale = coeffs.v.abs() * 66.0 + 120.0 * coeffs.w.abs() / (h * h);
                assert!(
                    (a.get(i, j) - col[i]).abs() <= 1e-12 * scale,
                    "N={n} entry ({i},{j}): {} vs {}",
                    a.get(i, j),
                    col[i]
                );
            }
        }
    }
}

#[test]
fn matrix_solves_its_own_product() {
    let n = 30;
    let coeffs = scheme_coefficients(3.0, 0.01, 1.0 / n as f64);
    let a = assemble_matrix(n, &coeffs).unwrap();
    let ones = vec![1.0; n + 1];
    let b = a.mul_vec(&ones).unwrap();
    let x = a.factor().unwrap().solve(&b).unwrap();
    for v in x {
        assert_relative_eq!(v, 1.0, epsilon = 1e-12);
    }
}

#[test]
fn rhs_matches_direct_substitution() {
    let p = problem("example1");
    let (n, k) = (10, 0.01);
    let grid = UniformGrid::new(0.0, 1.0, n).unwrap();
    let h = grid.h();
    let params = SchemeParams {
        intervals: n,
        k,
        gamma: GammaChoice::PlainK,
        t_final: 0.5,
    };
    let state = initial_state(&p, k, &grid).unwrap();
    let coeffs = scheme_coefficients(p.alpha, k, h);
    let q = assemble_rhs(&p, &params, &state, &coeffs);

    // Ψ from the nodal values of the two stored levels
    let stencil = |c: &[f64], w: &[f64; 5]| -> Vec<f64> {
        (0..=n)
            .map(|i| w.iter().zip(&c[i..i + 5]).map(|(a, b)| a * b).sum())
            .collect()
    };
    let u1 = stencil(state.curr().as_slice(), &VALUE);
    let u0 = stencil(state.prev().as_slice(), &VALUE);
    let d0: Vec<f64> = stencil(state.prev().as_slice(), &CURV)
        .iter()
        .map(|v| v / (h * h))
        .collect();
    let g2 = k * k;
    let mut want: Vec<f64> = (0..=n)
        .map(|i| {
            let x = grid.knot(i as isize);
            (2.0 - p.beta * p.beta * g2) * u1[i]
                + (p.alpha * k - 1.0) * u0[i]
                + 0.5 * g2 * d0[i]
                + g2 * (p.forcing)(x, k)
        })
        .collect();

    // move the boundary data of level 2 to the right-hand side
    let t2 = 2.0 * k;
    let data = BoundaryData {
        left_value: (p.g0)(t2),
        right_value: (p.g1)(t2),
        left_slope: (p.g2)(t2),
        right_slope: (p.g3)(t2),
    };
    let row: [f64; 5] = std::array::from_fn(|m| coeffs.v * VALUE[m] + coeffs.w / (h * h) * CURV[m]);
    let data_part = apply_collocation(&row, &vec![0.0; n + 1], &data, h);
    for (w, d) in want.iter_mut().zip(&data_part) {
        *w -= d;
    }
    for (got, want) in q.iter().zip(&want) {
        assert_relative_eq!(*got, *want, epsilon = 1e-12);
    }
}

#[test]
fn startup_values_are_third_order() {
    for id in ["example1", "example2", "example3"] {
        let p = problem(id);
        let exact = p.exact.clone().unwrap();
        let grid = UniformGrid::new(0.0, 1.0, 20).unwrap();
        let err = |k: f64| {
            startup_values(&p, k, &grid)
                .iter()
                .zip(grid.nodes())
                .map(|(u, x)| (u - exact(x, k)).abs())
                .fold(0.0f64, f64::max)
        };
        let (e1, e2) = (err(0.02), err(0.01));
        assert!(e2 < e1 / 6.0, "{id}: {e1:e} -> {e2:e}");
    }
    let p = problem("example1");
    let grid = UniformGrid::new(0.0, 1.0, 10).unwrap();
    assert_eq!(startup_values(&p, 0.0, &grid)[3], (p.f0)(0.3));
}

#[test]
fn boundary_data_is_exact_at_every_level() {
    for id in ["example1", "example2", "example3", "linear"] {
        let p = problem(id);
        for gamma in GammaChoice::ALL {
            let params = SchemeParams {
                intervals: 16,
                k: 0.01,
                gamma,
                t_final: 0.3,
            };
            let snaps = solve_to_time(&p, params, &Selection::All).unwrap();
            assert_eq!(snaps.len(), 31);
            for s in &snaps {
                let n = s.coeffs.grid().intervals();
                let checks = [
                    (s.coeffs.nodal(0, Derivative::Value), (p.g0)(s.t)),
                    (s.coeffs.nodal(n, Derivative::Value), (p.g1)(s.t)),
                    (s.coeffs.nodal(0, Derivative::First), (p.g2)(s.t)),
                    (s.coeffs.nodal(n, Derivative::First), (p.g3)(s.t)),
                ];
                for (got, want) in checks {
                    assert!(
                        (got - want).abs() <= 1e-8 * (1.0 + want.abs()),
                        "{id} t={}: {got} vs {want}",
                        s.t
                    );
                }
            }
        }
    }
}

#[test]
fn recovered_ghosts_satisfy_boundary_data() {
    let grid = UniformGrid::new(-1.0, 2.0, 12).unwrap();
    let interior: Vec<f64> = (0..13).map(|i| (i as f64 * 0.37).cos()).collect();
    let data = BoundaryData {
        left_value: 1.5,
        right_value: -0.25,
        left_slope: -3.0,
        right_slope: 0.75,
    };
    let c = recover_ghost_coefficients(&interior, &data, &grid, 4).unwrap();
    assert_eq!(c.time_level(), 4);
    assert_eq!(c.interior(), &interior[..]);
    assert_relative_eq!(c.nodal(0, Derivative::Value), 1.5, epsilon = 1e-12);
    assert_relative_eq!(c.nodal(12, Derivative::Value), -0.25, epsilon = 1e-12);
    assert_relative_eq!(c.nodal(0, Derivative::First), -3.0, epsilon = 1e-11);
    assert_relative_eq!(c.nodal(12, Derivative::First), 0.75, epsilon = 1e-11);
    assert!(recover_ghost_coefficients(&interior[..5], &data, &grid, 0).is_err());
}

#[test]
fn initial_levels_fit_their_data() {
    let p = problem("example3");
    let grid = UniformGrid::new(0.0, 1.0, 21).unwrap();
    let k = 0.001;
    let state: TimeState = initial_state(&p, k, &grid).unwrap();
    assert_eq!((state.prev().time_level(), state.level()), (0, 1));
    let start = startup_values(&p, k, &grid);
    for (j, x) in grid.nodes().into_iter().enumerate() {
        assert_relative_eq!(
            state.prev().nodal(j, Derivative::Value),
            (p.f0)(x),
            epsilon = 1e-13
        );
        assert_relative_eq!(
            state.curr().nodal(j, Derivative::Value),
            start[j],
            epsilon = 1e-13
        );
    }
    let fit = fit_interpolant(
        &grid,
        &grid.nodes().iter().map(|&x| (p.f0)(x)).collect::<Vec<_>>(),
        &EndConditions {
            left_slope: (p.g2)(0.0),
            right_slope: (p.g3)(0.0),
            left_curvature: (p.f0_xx)(0.0),
            right_curvature: (p.f0_xx)(1.0),
        },
    )
    .unwrap();
    assert_eq!(fit.as_slice(), state.prev().as_slice());
}

#[test]
fn gamma_choices_differ_at_third_order() {
    for k in [0.1, 0.01, 0.001] {
        let diff = (gamma(k, GammaChoice::PlainK) - gamma(k, GammaChoice::TwoSinHalfK)).abs();
        assert_relative_eq!(diff, k * k * k / 24.0, max_relative = 1e-2);
    }
}

fn norms(id: &str, n: usize, k: f64, g: GammaChoice, t: f64) -> telegraph::ErrorNorms {
    let p = problem(id);
    let params = SchemeParams {
        intervals: n,
        k,
        gamma: g,
        t_final: t,
    };
    let s = solve_to_time(&p, params, &Selection::Final).unwrap();
    ErrorReport::for_snapshot(&p, &s[0], k, g).unwrap().norms
}

// Reference runs. Their L2 column uses the h * sqrt(sum) scaling.
// Level 1 takes its end values from the Dirichlet data rather than the Taylor
// expansion, which moves these by up to a few parts in 1e4.
#[test]
fn reproduces_reference_runs() {
    use GammaChoice::PlainK;
    assert_relative_eq!(
        norms("example1", 100, 0.01, PlainK, 0.5).l2_scaled,
        1.58168e-5,
        max_relative = 1e-3
    );
    assert_relative_eq!(
        norms("example1", 400, 1e-3, PlainK, 0.5).l2_scaled,
        7.91938e-8,
        max_relative = 1e-3
    );
    assert_relative_eq!(
        norms("example2", 21, 0.01, PlainK, 0.5).l2_scaled,
        2.59359e-6,
        max_relative = 1e-3
    );
    assert_relative_eq!(
        norms("example2", 21, 0.01, PlainK, 1.0).l2_scaled,
        1.48998e-6,
        max_relative = 1e-3
    );
    assert_relative_eq!(
        norms("example2", 21, 1e-4, PlainK, 0.5).l_inf,
        1.92002e-9,
        max_relative = 1e-2
    );
    assert_relative_eq!(
        norms("example3", 21, 1e-3, PlainK, 0.5).l_inf,
        5.35357e-9,
        max_relative = 1e-3
    );
    let e3 = norms("example3", 80, 0.05, PlainK, 0.5);
    assert_relative_eq!(e3.rms, 8.89618e-6, max_relative = 1e-3);
    assert_relative_eq!(e3.l2_scaled, 9.94623e-7, max_relative = 1e-3);
}

#[test]
fn zero_problem_stays_zero() {
    let p = problem("zero");
    let params = SchemeParams {
        intervals: 12,
        k: 0.05,
        gamma: GammaChoice::TwoSinHalfK,
        t_final: 1.0,
    };
    for s in solve_to_time(&p, params, &Selection::All).unwrap() {
        assert!(s.coeffs.as_slice().iter().all(|c| *c == 0.0), "t={}", s.t);
    }
}

#[test]
fn short_runs_and_bad_selections_are_rejected() {
    let p = problem("example1");
    let params = SchemeParams {
        intervals: 10,
        k: 0.1,
        gamma: GammaChoice::PlainK,
        t_final: 0.1,
    };
    assert!(solve_to_time(&p, params, &Selection::Final).is_err());
    let params = SchemeParams {
        t_final: 0.5,
        ..params
    };
    assert!(Selection::at_times(&[0.25], &params).is_err());
    assert!(Selection::at_times(&[0.6], &params).is_err());
    let sel = Selection::at_times(&[0.3, 0.1, 0.3], &params).unwrap();
    let snaps = solve_to_time(&p, params, &sel).unwrap();
    let times: Vec<f64> = snaps.iter().map(|s| s.t).collect();
    assert_eq!(
        snaps.iter().map(|s| s.level()).collect::<Vec<_>>(),
        vec![1, 3]
    );
    assert_relative_eq!(times[1], 0.3, epsilon = 1e-15);
}
