//! Runs the solver for a resolved configuration and writes CSV.

use std::io::Write;
use std::thread;

use anyhow::{bail, Context, Result};
use telegraph::{
    observed_order, solve_to_time, Derivative, ErrorNorms, ErrorReport, GammaChoice, SchemeParams,
    Selection, Snapshot, TelegraphProblem,
};

use crate::config::{Norm, OutputKind, Vary};

/// Shortest text that parses back to the same `f64`.
pub fn num(v: f64) -> String {
    format!("{v:e}")
}

pub struct RunSpec {
    pub problem: TelegraphProblem,
    pub intervals: usize,
    pub k: f64,
    pub t_final: f64,
    pub gammas: Vec<GammaChoice>,
    pub report_times: Option<Vec<f64>>,
    pub kind: OutputKind,
}

fn snapshots(spec: &RunSpec, params: SchemeParams) -> Result<Vec<Snapshot>> {
    let selection = match (&spec.report_times, spec.kind) {
        (Some(times), _) => Selection::at_times(times, &params)?,
        (None, OutputKind::Surface) => Selection::All,
        (None, _) => Selection::Final,
    };
    Ok(solve_to_time(&spec.problem, params, &selection)?)
}

/// Header and rows of a CSV table, built in full before anything is written
/// so a failing run leaves no partial output.
pub struct Table {
    pub header: Vec<&'static str>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn write<W: Write>(&self, out: W) -> Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.header)?;
        for row in &self.rows {
            w.write_record(row)?;
        }
        w.flush()?;
        Ok(())
    }
}

pub fn run_table(spec: &RunSpec) -> Result<Table> {
    let header: &[&'static str] = match spec.kind {
        OutputKind::ErrorTable => &["gamma", "t", "N", "k", "l_inf", "l2", "rms", "l2_scaled"],
        OutputKind::Snapshot => &["gamma", "t", "x", "numeric", "exact", "abs_error"],
        OutputKind::Surface => &["gamma", "t", "x", "numeric"],
    };
    let mut rows = Vec::new();
    for &gamma in &spec.gammas {
        let params = SchemeParams {
            intervals: spec.intervals,
            k: spec.k,
            gamma,
            t_final: spec.t_final,
        };
        for snap in snapshots(spec, params)? {
            let (g, t) = (gamma.label().to_string(), num(snap.t));
            match spec.kind {
                OutputKind::ErrorTable => {
                    let r = ErrorReport::for_snapshot(&spec.problem, &snap, spec.k, gamma)?;
                    let n = r.norms;
                    rows.push(vec![
                        g,
                        t,
                        r.intervals.to_string(),
                        num(r.k),
                        num(n.l_inf),
                        num(n.l2),
                        num(n.rms),
                        num(n.l2_scaled),
                    ]);
                }
                OutputKind::Snapshot | OutputKind::Surface => {
                    let grid = *snap.coeffs.grid();
                    let values = snap.coeffs.nodal_values(Derivative::Value);
                    for (j, u) in values.into_iter().enumerate() {
                        let x = grid.knot(j as isize);
                        let mut row = vec![g.clone(), t.clone(), num(x), num(u)];
                        if spec.kind == OutputKind::Snapshot {
                            match &spec.problem.exact {
                                Some(exact) => {
                                    let e = exact(x, snap.t);
                                    row.extend([num(e), num((u - e).abs())]);
                                }
                                None => row.extend([String::new(), String::new()]),
                            }
                        }
                        rows.push(row);
                    }
                }
            }
        }
    }
    Ok(Table {
        header: header.to_vec(),
        rows,
    })
}

pub struct ConvergeSpec {
    pub problem: TelegraphProblem,
    pub schedule: Vec<(usize, f64)>,
    pub t_final: f64,
    pub gammas: Vec<GammaChoice>,
    pub norm: Norm,
    pub vary: Vary,
}

fn pick(norms: &ErrorNorms, norm: Norm) -> f64 {
    match norm {
        Norm::Linf => norms.l_inf,
        Norm::L2 => norms.l2,
        Norm::Rms => norms.rms,
        Norm::L2Scaled => norms.l2_scaled,
    }
}

fn final_error(problem: &TelegraphProblem, params: SchemeParams) -> Result<ErrorNorms> {
    let snaps = solve_to_time(problem, params, &Selection::Final)?;
    let last = snaps.last().context("solver returned no snapshot")?;
    Ok(ErrorReport::for_snapshot(problem, last, params.k, params.gamma)?.norms)
}

pub fn converge_table(spec: &ConvergeSpec) -> Result<Table> {
    let vary_h = match spec.vary {
        Vary::H => true,
        Vary::K => false,
        Vary::Auto => spec.schedule.iter().any(|&(n, _)| n != spec.schedule[0].0),
    };
    let width = spec.problem.b - spec.problem.a;

    let mut rows = Vec::new();
    for &gamma in &spec.gammas {
        let runs: Vec<Result<ErrorNorms>> = thread::scope(|s| {
            let handles: Vec<_> = spec
                .schedule
                .iter()
                .map(|&(intervals, k)| {
                    let params = SchemeParams {
                        intervals,
                        k,
                        gamma,
                        t_final: spec.t_final,
                    };
                    s.spawn(move || {
                        final_error(&spec.problem, params)
                            .with_context(|| format!("schedule entry {intervals}:{k}"))
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| {
                    h.join()
                        .unwrap_or_else(|_| Err(anyhow::anyhow!("solver thread panicked")))
                })
                .collect()
        });

        let mut prev: Option<(f64, f64)> = None;
        for (&(intervals, k), run) in spec.schedule.iter().zip(runs) {
            let err = pick(&run?, spec.norm);
            let h = width / intervals as f64;
            let step = if vary_h { h } else { k };
            let order = match prev {
                None => String::new(),
                Some((_, e1)) if e1 == 0.0 || err == 0.0 => "exact".to_string(),
                Some((s1, e1)) => match observed_order(&[(s1, e1), (step, err)]) {
                    Ok(o) => num(o[0]),
                    Err(e) => bail!("schedule: {e}"),
                },
            };
            rows.push(vec![
                gamma.label().to_string(),
                intervals.to_string(),
                num(h),
                num(k),
                num(spec.t_final),
                num(err),
                order,
            ]);
            prev = Some((step, err));
        }
    }
    Ok(Table {
        header: vec!["gamma", "N", "h", "k", "t", "error", "order"],
        rows,
    })
}
