//! The simulate mode: evolve a scenario, stream per-step diagnostics to
//! CSV, and summarize drifts and errors.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::time::Instant;

use crate::solver::{
    analytic_state, conserved_totals, init_state, second_order_residual, step, ConservedTotals,
    FieldState,
};

use super::config::{HarnessError, Mode, RunConfig};
use super::report::Report;

/// CSV column order, fixed.
pub const CSV_HEADER: &str = "step,time,Q0,Q1,Q2,Q3,Q5_0,Q5_1,Q5_2,Q5_3,S,P,box_residual_max";

fn write_row(
    out: &mut impl Write,
    step: i64,
    time: f64,
    totals: &ConservedTotals,
    residual_max: f64,
) -> std::io::Result<()> {
    writeln!(
        out,
        "{step},{time},{},{},{},{},{},{},{},{},{},{},{residual_max}",
        totals.q[0],
        totals.q[1],
        totals.q[2],
        totals.q[3],
        totals.q5[0],
        totals.q5[1],
        totals.q5[2],
        totals.q5[3],
        totals.s,
        totals.p,
    )
}

/// Run the configured scenario, writing one diagnostics row per step.
/// `box_residual_max` on row s is the wave-operator residual of the state
/// triple centered at step s-1; the first two rows carry NaN.
pub fn run_simulate(cfg: &RunConfig) -> Result<Report, HarnessError> {
    let start = Instant::now();
    let mut report = Report::new(Mode::Simulate);
    let tol = &cfg.tolerances;

    let spec = cfg.grid_spec()?;
    let scenario = cfg.scenario();
    let dt = cfg.dt(&spec);
    let steps = cfg.steps();
    let csv_path = cfg.output_path();
    if let Some(dir) = csv_path.parent() {
        if !dir.as_os_str().is_empty() {
            std::fs::create_dir_all(dir)?;
        }
    }
    let mut csv = BufWriter::new(File::create(&csv_path)?);
    writeln!(csv, "{CSV_HEADER}")?;

    let mut state = init_state(&spec, &scenario)?;
    let initial = conserved_totals(&state);
    write_row(&mut csv, 0, state.time, &initial, f64::NAN)?;

    // Rolling window of the last three states for the residual.
    let mut window: Vec<FieldState> = vec![state.clone()];
    let mut failure: Option<String> = None;
    let mut residual_running_max = 0.0f64;
    let mut final_residual = f64::NAN;

    for s in 1..=steps {
        match step(&state, dt) {
            Ok(next) => {
                state = next;
            }
            Err(err) => {
                // Error marker row: negative step index, NaN diagnostics.
                let nan_totals = ConservedTotals {
                    q: [f64::NAN; 4],
                    q5: [f64::NAN; 4],
                    s: f64::NAN,
                    p: f64::NAN,
                };
                write_row(&mut csv, -(s as i64), state.time, &nan_totals, f64::NAN)?;
                failure = Some(err.to_string());
                break;
            }
        }
        window.push(state.clone());
        if window.len() > 3 {
            window.remove(0);
        }
        let residual = if window.len() == 3 {
            let r = second_order_residual(&window[0], &window[1], &window[2], dt)?.max();
            residual_running_max = residual_running_max.max(r);
            final_residual = r;
            r
        } else {
            f64::NAN
        };
        let totals = conserved_totals(&state);
        write_row(&mut csv, s as i64, state.time, &totals, residual)?;
    }
    csv.flush()?;

    let final_totals = conserved_totals(&state);
    let q0_drift = if initial.q[0].abs() > 1e-30 {
        ((final_totals.q[0] - initial.q[0]) / initial.q[0]).abs()
    } else {
        (final_totals.q[0] - initial.q[0]).abs()
    };
    report.drift.insert("Q0_relative".to_string(), q0_drift);
    report
        .drift
        .insert("S_absolute".to_string(), (final_totals.s - initial.s).abs());
    report
        .drift
        .insert("P_absolute".to_string(), (final_totals.p - initial.p).abs());

    report.push_exact(
        "run-completed",
        failure.clone().map(|e| vec![e]).unwrap_or_default(),
    );
    report.push_threshold("q0-drift", q0_drift, tol.drift);
    report
        .max_errors
        .insert("box_residual_final".to_string(), final_residual);
    report
        .max_errors
        .insert("box_residual_running_max".to_string(), residual_running_max);

    if failure.is_none() {
        if let Some(reference) = analytic_state(&spec, &scenario, state.time)? {
            let err = state.max_abs_diff(&reference)?;
            report.push_threshold("field-error-vs-analytic", err, tol.field_error);
        }
    }

    report.count("steps", steps);
    report.runtime_s = start.elapsed().as_secs_f64();
    Ok(report)
}
