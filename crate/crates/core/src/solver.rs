//! Periodic-grid evolution of the eight dynamical components under the
//! first-order system
//!
//!   d_t f = -div E            d_t E = -grad f + curl B
//!   d_t g = -div B            d_t B = -grad g - curl E
//!
//! discretized with 4th-order central differences in space and classic RK4
//! in time (c = 1 units, CFL dt <= 0.5 dx). Grid reductions use a fixed
//! pairwise tree so totals are bit-reproducible.

use rand::Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bilinear::{
    bilinear_set, FieldPoint, COMPONENT_COUNT, COMPONENT_NAMES,
};

/// Stability bound: |dt| <= CFL_LIMIT * dx.
pub const CFL_LIMIT: f64 = 0.5;

/// Relative slack allowed when matching a wavevector to the periodic box.
const COMMENSURATE_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SolverError {
    #[error("time step {dt:.6e} exceeds the CFL bound {limit:.6e} (= 0.5 dx)")]
    CflViolation { dt: f64, limit: f64 },
    #[error("non-finite value in component {component} at cell {cell} (t = {time})")]
    NonFinite {
        component: &'static str,
        cell: usize,
        time: f64,
    },
    #[error("grid dims differ: {0:?} vs {1:?}")]
    GridMismatch([usize; 3], [usize; 3]),
    #[error("grid dims must all be >= 1 and spacing > 0")]
    InvalidGrid,
    #[error("wavevector {wavevector} fits {cycles} cycles in the box; expected a nonzero integer")]
    IncommensurateWave { wavevector: f64, cycles: f64 },
    #[error("scenario error: {0}")]
    InvalidScenario(String),
}

/// Uniform periodic grid: cell counts per axis and the common spacing.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub dims: [usize; 3],
    pub spacing: f64,
}

impl GridSpec {
    pub fn new(dims: [usize; 3], spacing: f64) -> Result<Self, SolverError> {
        if dims.iter().any(|&n| n == 0) || !(spacing > 0.0) || !spacing.is_finite() {
            return Err(SolverError::InvalidGrid);
        }
        Ok(GridSpec { dims, spacing })
    }

    pub fn cell_count(&self) -> usize {
        self.dims[0] * self.dims[1] * self.dims[2]
    }

    #[inline]
    pub fn index(&self, ix: usize, iy: usize, iz: usize) -> usize {
        ix + self.dims[0] * (iy + self.dims[1] * iz)
    }

    /// Cell index decomposed back into (ix, iy, iz).
    #[inline]
    pub fn coords_of(&self, cell: usize) -> [usize; 3] {
        let ix = cell % self.dims[0];
        let rest = cell / self.dims[0];
        [ix, rest % self.dims[1], rest / self.dims[1]]
    }

    /// Physical position of a cell's node.
    pub fn position(&self, cell: usize) -> [f64; 3] {
        self.coords_of(cell).map(|i| i as f64 * self.spacing)
    }

    /// Box length along an axis.
    pub fn box_length(&self, axis: usize) -> f64 {
        self.dims[axis] as f64 * self.spacing
    }

    /// Number of axes with more than one cell.
    pub fn resolved_axes(&self) -> usize {
        self.dims.iter().filter(|&&n| n > 1).count()
    }

    /// Integration measure dx^d over the resolved axes.
    pub fn cell_measure(&self) -> f64 {
        self.spacing.powi(self.resolved_axes() as i32)
    }
}

/// Grid samples of the eight components at one instant.
#[derive(Debug, Clone, PartialEq)]
pub struct FieldState {
    pub time: f64,
    pub spec: GridSpec,
    pub comps: [Vec<f64>; COMPONENT_COUNT],
}

impl FieldState {
    pub fn zeros(spec: GridSpec) -> FieldState {
        let n = spec.cell_count();
        FieldState {
            time: 0.0,
            spec,
            comps: std::array::from_fn(|_| vec![0.0; n]),
        }
    }

    /// The field components at one cell.
    pub fn field_point(&self, cell: usize) -> FieldPoint {
        FieldPoint::from_components(std::array::from_fn(|c| self.comps[c][cell]))
    }

    fn check_finite(&self) -> Result<(), SolverError> {
        for (c, data) in self.comps.iter().enumerate() {
            if let Some(cell) = data.iter().position(|v| !v.is_finite()) {
                return Err(SolverError::NonFinite {
                    component: COMPONENT_NAMES[c],
                    cell,
                    time: self.time,
                });
            }
        }
        Ok(())
    }

    /// Largest pointwise difference against another state on the same grid.
    pub fn max_abs_diff(&self, other: &FieldState) -> Result<f64, SolverError> {
        if self.spec.dims != other.spec.dims {
            return Err(SolverError::GridMismatch(self.spec.dims, other.spec.dims));
        }
        let mut max = 0.0f64;
        for c in 0..COMPONENT_COUNT {
            for (a, b) in self.comps[c].iter().zip(other.comps[c].iter()) {
                max = max.max((a - b).abs());
            }
        }
        Ok(max)
    }
}

/// Time-derivative arrays, one per component, in component storage order.
pub type FieldRates = [Vec<f64>; COMPONENT_COUNT];

/// 4th-order central first derivative along one axis with periodic wrap.
/// Axes of extent 1 differentiate to exactly zero.
fn derivative(spec: &GridSpec, data: &[f64], axis: usize) -> Vec<f64> {
    let n = spec.dims[axis];
    let mut out = vec![0.0; data.len()];
    if n == 1 {
        return out;
    }
    let inv = 1.0 / (12.0 * spec.spacing);
    let stride = match axis {
        0 => 1,
        1 => spec.dims[0],
        _ => spec.dims[0] * spec.dims[1],
    };
    for (cell, slot) in out.iter_mut().enumerate() {
        let pos = spec.coords_of(cell)[axis];
        let base = cell - pos * stride;
        let at = |offset: isize| {
            let p = (pos as isize + offset).rem_euclid(n as isize) as usize;
            data[base + p * stride]
        };
        *slot = (at(-2) - 8.0 * at(-1) + 8.0 * at(1) - at(2)) * inv;
    }
    out
}

/// 4th-order central second derivative along one axis with periodic wrap.
fn second_derivative(spec: &GridSpec, data: &[f64], axis: usize) -> Vec<f64> {
    let n = spec.dims[axis];
    let mut out = vec![0.0; data.len()];
    if n == 1 {
        return out;
    }
    let inv = 1.0 / (12.0 * spec.spacing * spec.spacing);
    let stride = match axis {
        0 => 1,
        1 => spec.dims[0],
        _ => spec.dims[0] * spec.dims[1],
    };
    for (cell, slot) in out.iter_mut().enumerate() {
        let pos = spec.coords_of(cell)[axis];
        let base = cell - pos * stride;
        let at = |offset: isize| {
            let p = (pos as isize + offset).rem_euclid(n as isize) as usize;
            data[base + p * stride]
        };
        *slot = (-at(-2) + 16.0 * at(-1) - 30.0 * at(0) + 16.0 * at(1) - at(2)) * inv;
    }
    out
}

/// Right-hand side of the first-order system.
pub fn time_derivative(state: &FieldState) -> Result<FieldRates, SolverError> {
    state.check_finite()?;
    let spec = &state.spec;
    let d = |comp: usize, axis: usize| derivative(spec, &state.comps[comp], axis);
    let n = spec.cell_count();

    // Component storage order: f, E1, E2, E3, B1, B2, B3, g.
    let (div_e1, div_e2, div_e3) = (d(1, 0), d(2, 1), d(3, 2));
    let (div_b1, div_b2, div_b3) = (d(4, 0), d(5, 1), d(6, 2));
    let grad_f = [d(0, 0), d(0, 1), d(0, 2)];
    let grad_g = [d(7, 0), d(7, 1), d(7, 2)];
    let curl_b = [
        sub(&d(6, 1), &d(5, 2)),
        sub(&d(4, 2), &d(6, 0)),
        sub(&d(5, 0), &d(4, 1)),
    ];
    let curl_e = [
        sub(&d(3, 1), &d(2, 2)),
        sub(&d(1, 2), &d(3, 0)),
        sub(&d(2, 0), &d(1, 1)),
    ];

    let mut rates: FieldRates = std::array::from_fn(|_| vec![0.0; n]);
    for cell in 0..n {
        rates[0][cell] = -(div_e1[cell] + div_e2[cell] + div_e3[cell]);
        rates[7][cell] = -(div_b1[cell] + div_b2[cell] + div_b3[cell]);
        for k in 0..3 {
            rates[1 + k][cell] = -grad_f[k][cell] + curl_b[k][cell];
            rates[4 + k][cell] = -grad_g[k][cell] - curl_e[k][cell];
        }
    }
    Ok(rates)
}

fn sub(a: &[f64], b: &[f64]) -> Vec<f64> {
    a.iter().zip(b.iter()).map(|(x, y)| x - y).collect()
}

fn add_scaled(base: &FieldState, rates: &FieldRates, factor: f64) -> FieldState {
    let mut out = base.clone();
    for c in 0..COMPONENT_COUNT {
        for (v, r) in out.comps[c].iter_mut().zip(rates[c].iter()) {
            *v += factor * r;
        }
    }
    out
}

/// One classic RK4 step. Rejects |dt| beyond the CFL bound and any
/// non-finite result.
pub fn step(state: &FieldState, dt: f64) -> Result<FieldState, SolverError> {
    let limit = CFL_LIMIT * state.spec.spacing;
    if !dt.is_finite() || dt.abs() > limit {
        return Err(SolverError::CflViolation { dt, limit });
    }
    let k1 = time_derivative(state)?;
    let k2 = time_derivative(&add_scaled(state, &k1, dt / 2.0))?;
    let k3 = time_derivative(&add_scaled(state, &k2, dt / 2.0))?;
    let k4 = time_derivative(&add_scaled(state, &k3, dt))?;

    let mut next = state.clone();
    next.time += dt;
    for c in 0..COMPONENT_COUNT {
        for cell in 0..next.comps[c].len() {
            next.comps[c][cell] += dt / 6.0
                * (k1[c][cell] + 2.0 * k2[c][cell] + 2.0 * k3[c][cell] + k4[c][cell]);
        }
    }
    next.check_finite()?;
    Ok(next)
}

/// Per-component norms of the discrete wave-operator residual
/// (d_tt - laplacian) applied to three consecutive states.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BoxResidual {
    pub max_abs: [f64; COMPONENT_COUNT],
    pub rms: [f64; COMPONENT_COUNT],
}

impl BoxResidual {
    /// Largest residual over all components.
    pub fn max(&self) -> f64 {
        self.max_abs.iter().fold(0.0f64, |acc, v| acc.max(*v))
    }
}

/// Discrete d_tt - laplacian on each component, from states at t - dt, t,
/// t + dt. Every solution component should drive this to zero at the
/// discretization order.
pub fn second_order_residual(
    prev: &FieldState,
    mid: &FieldState,
    next: &FieldState,
    dt: f64,
) -> Result<BoxResidual, SolverError> {
    for other in [prev, next] {
        if other.spec.dims != mid.spec.dims {
            return Err(SolverError::GridMismatch(other.spec.dims, mid.spec.dims));
        }
    }
    let spec = &mid.spec;
    let inv_dt2 = 1.0 / (dt * dt);
    let mut max_abs = [0.0f64; COMPONENT_COUNT];
    let mut rms = [0.0f64; COMPONENT_COUNT];
    for c in 0..COMPONENT_COUNT {
        let mut lap = vec![0.0; spec.cell_count()];
        for axis in 0..3 {
            let d2 = second_derivative(spec, &mid.comps[c], axis);
            for (l, v) in lap.iter_mut().zip(d2.iter()) {
                *l += v;
            }
        }
        let mut sum_sq = 0.0;
        for cell in 0..spec.cell_count() {
            let dtt =
                (prev.comps[c][cell] - 2.0 * mid.comps[c][cell] + next.comps[c][cell]) * inv_dt2;
            let r = dtt - lap[cell];
            max_abs[c] = max_abs[c].max(r.abs());
            sum_sq += r * r;
        }
        rms[c] = (sum_sq / spec.cell_count() as f64).sqrt();
    }
    Ok(BoxResidual { max_abs, rms })
}

/// Grid totals of the point bilinears, scaled by the cell measure.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ConservedTotals {
    pub q: [f64; 4],
    pub q5: [f64; 4],
    pub s: f64,
    pub p: f64,
}

/// Fixed-order pairwise tree sum; bit-reproducible for a given slice.
pub fn pairwise_sum(values: &[f64]) -> f64 {
    if values.len() <= 8 {
        return values.iter().sum();
    }
    let mid = values.len() / 2;
    pairwise_sum(&values[..mid]) + pairwise_sum(&values[mid..])
}

/// Sum the bilinears over the grid: Q^mu, Q5^mu, S, P.
pub fn conserved_totals(state: &FieldState) -> ConservedTotals {
    let n = state.spec.cell_count();
    let mut buffers: [Vec<f64>; 10] = std::array::from_fn(|_| vec![0.0; n]);
    for cell in 0..n {
        let set = bilinear_set(&state.field_point(cell));
        for mu in 0..4 {
            buffers[mu][cell] = set.j[mu];
            buffers[4 + mu][cell] = set.j5[mu];
        }
        buffers[8][cell] = set.scalar;
        buffers[9][cell] = set.pseudoscalar;
    }
    let measure = state.spec.cell_measure();
    let total = |b: &Vec<f64>| pairwise_sum(b) * measure;
    ConservedTotals {
        q: std::array::from_fn(|mu| total(&buffers[mu])),
        q5: std::array::from_fn(|mu| total(&buffers[4 + mu])),
        s: total(&buffers[8]),
        p: total(&buffers[9]),
    }
}

/// Named initial conditions. Parameters irrelevant to the chosen name are
/// ignored; required ones are validated by `init_state`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub name: String,
    #[serde(default)]
    pub axis: Option<usize>,
    #[serde(default)]
    pub wavevector: Option<f64>,
    #[serde(default)]
    pub amplitude: Option<f64>,
    #[serde(default)]
    pub component: Option<String>,
    #[serde(default)]
    pub width: Option<f64>,
    #[serde(default)]
    pub center: Option<[f64; 3]>,
    #[serde(default)]
    pub max_mode: Option<usize>,
    #[serde(default)]
    pub seed: Option<u64>,
}

impl Scenario {
    pub fn named(name: &str) -> Scenario {
        Scenario {
            name: name.to_string(),
            axis: None,
            wavevector: None,
            amplitude: None,
            component: None,
            width: None,
            center: None,
            max_mode: None,
            seed: None,
        }
    }

    pub fn zero() -> Scenario {
        Scenario::named("zero")
    }

    pub fn plane_wave(axis: usize, wavevector: f64, amplitude: f64) -> Scenario {
        Scenario {
            axis: Some(axis),
            wavevector: Some(wavevector),
            amplitude: Some(amplitude),
            ..Scenario::named("plane-wave")
        }
    }

    pub fn longitudinal(axis: usize, wavevector: f64, amplitude: f64) -> Scenario {
        Scenario {
            axis: Some(axis),
            wavevector: Some(wavevector),
            amplitude: Some(amplitude),
            ..Scenario::named("longitudinal")
        }
    }

    pub fn gaussian(component: &str, width: f64, amplitude: f64) -> Scenario {
        Scenario {
            component: Some(component.to_string()),
            width: Some(width),
            amplitude: Some(amplitude),
            ..Scenario::named("gaussian")
        }
    }

    pub fn noise(max_mode: usize, amplitude: f64, seed: u64) -> Scenario {
        Scenario {
            max_mode: Some(max_mode),
            amplitude: Some(amplitude),
            seed: Some(seed),
            ..Scenario::named("noise")
        }
    }

    fn amplitude_or_one(&self) -> f64 {
        self.amplitude.unwrap_or(1.0)
    }

    fn wave_params(&self, spec: &GridSpec) -> Result<(usize, f64, f64), SolverError> {
        let axis = self.axis.unwrap_or(0);
        if axis > 2 {
            return Err(SolverError::InvalidScenario(format!(
                "axis {axis} out of range 0..=2"
            )));
        }
        let wavevector = self.wavevector.ok_or_else(|| {
            SolverError::InvalidScenario("wavevector is required".to_string())
        })?;
        let cycles = wavevector * spec.box_length(axis) / std::f64::consts::TAU;
        if (cycles - cycles.round()).abs() > COMMENSURATE_TOL * cycles.abs().max(1.0)
            || cycles.round() == 0.0
        {
            return Err(SolverError::IncommensurateWave { wavevector, cycles });
        }
        Ok((axis, wavevector, self.amplitude_or_one()))
    }
}

/// Analytic plane-wave and longitudinal solutions at time t, on the grid.
/// Returns None for scenarios without a closed-form solution.
pub fn analytic_state(
    spec: &GridSpec,
    scenario: &Scenario,
    t: f64,
) -> Result<Option<FieldState>, SolverError> {
    let mut state = FieldState::zeros(*spec);
    state.time = t;
    match scenario.name.as_str() {
        "zero" => Ok(Some(state)),
        "plane-wave" => {
            let (axis, k, amp) = scenario.wave_params(spec)?;
            // E along axis+1, B along axis+2, travelling in +axis.
            let (e_comp, b_comp) = (1 + (axis + 1) % 3, 4 + (axis + 2) % 3);
            for cell in 0..spec.cell_count() {
                let x = spec.position(cell)[axis];
                let value = amp * (k * (x - t)).cos();
                state.comps[e_comp][cell] = value;
                state.comps[b_comp][cell] = value;
            }
            Ok(Some(state))
        }
        "longitudinal" => {
            let (axis, k, amp) = scenario.wave_params(spec)?;
            let e_comp = 1 + axis;
            for cell in 0..spec.cell_count() {
                let x = spec.position(cell)[axis];
                let value = amp * (k * (x - t)).cos();
                state.comps[0][cell] = value;
                state.comps[e_comp][cell] = value;
            }
            Ok(Some(state))
        }
        _ => Ok(None),
    }
}

/// Deterministic initial state for a named scenario.
pub fn init_state(spec: &GridSpec, scenario: &Scenario) -> Result<FieldState, SolverError> {
    match scenario.name.as_str() {
        "zero" | "plane-wave" | "longitudinal" => analytic_state(spec, scenario, 0.0)
            .map(|s| s.expect("closed-form scenario")),
        "gaussian" => {
            let component = scenario.component.as_deref().unwrap_or("f");
            let comp = COMPONENT_NAMES
                .iter()
                .position(|n| *n == component)
                .ok_or_else(|| {
                    SolverError::InvalidScenario(format!("unknown component {component:?}"))
                })?;
            let width = scenario.width.unwrap_or(spec.box_length(0) / 12.0);
            if !(width > 0.0) {
                return Err(SolverError::InvalidScenario("width must be > 0".into()));
            }
            let amp = scenario.amplitude_or_one();
            let center = scenario
                .center
                .unwrap_or_else(|| std::array::from_fn(|a| spec.box_length(a) / 2.0));
            let mut state = FieldState::zeros(*spec);
            for cell in 0..spec.cell_count() {
                let pos = spec.position(cell);
                let mut value = amp;
                for a in 0..3 {
                    if spec.dims[a] > 1 {
                        // Wrapped sum over neighbour images keeps the
                        // profile periodic.
                        let l = spec.box_length(a);
                        let mut factor = 0.0;
                        for image in [-1.0, 0.0, 1.0] {
                            let dxa = pos[a] - center[a] + image * l;
                            factor += (-dxa * dxa / (2.0 * width * width)).exp();
                        }
                        value *= factor;
                    }
                }
                state.comps[comp][cell] = value;
            }
            Ok(state)
        }
        "noise" => {
            let max_mode = scenario.max_mode.unwrap_or(3);
            let amp = scenario.amplitude_or_one();
            let seed = scenario.seed.unwrap_or(0);
            let mut rng = crate::sample::seeded_rng(seed);
            let mut state = FieldState::zeros(*spec);
            let resolved: Vec<usize> = (0..3).filter(|&a| spec.dims[a] > 1).collect();
            let mode_range = |a: usize| {
                if resolved.contains(&a) {
                    max_mode as i64
                } else {
                    0
                }
            };
            for comp in 0..COMPONENT_COUNT {
                for mx in 0..=mode_range(0) {
                    for my in 0..=mode_range(1) {
                        for mz in 0..=mode_range(2) {
                            // Draw for every mode slot so the stream does not
                            // depend on the grid size.
                            let a: f64 = rng.random_range(-1.0..1.0);
                            let phase: f64 = rng.random_range(0.0..std::f64::consts::TAU);
                            if mx == 0 && my == 0 && mz == 0 {
                                continue;
                            }
                            let m2 = (mx * mx + my * my + mz * mz) as f64;
                            let coeff = amp * a / (1.0 + m2);
                            let k: [f64; 3] = std::array::from_fn(|axis| {
                                let m = [mx, my, mz][axis] as f64;
                                m * std::f64::consts::TAU / spec.box_length(axis)
                            });
                            for cell in 0..spec.cell_count() {
                                let pos = spec.position(cell);
                                let arg =
                                    k[0] * pos[0] + k[1] * pos[1] + k[2] * pos[2] + phase;
                                state.comps[comp][cell] += coeff * arg.cos();
                            }
                        }
                    }
                }
            }
            Ok(state)
        }
        other => Err(SolverError::InvalidScenario(format!(
            "unknown scenario {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    fn grid_1d(n: usize) -> GridSpec {
        GridSpec::new([n, 1, 1], 1.0 / n as f64).unwrap()
    }

    #[test]
    fn uniform_state_has_zero_rates_and_is_fixed_by_step() {
        let spec = GridSpec::new([8, 8, 8], 0.1).unwrap();
        let mut state = FieldState::zeros(spec);
        for c in 0..COMPONENT_COUNT {
            state.comps[c].fill(0.25 * (c as f64 + 1.0));
        }
        let rates = time_derivative(&state).unwrap();
        for r in rates.iter() {
            assert!(r.iter().all(|&v| v == 0.0));
        }
        let next = step(&state, 0.05 * 0.1).unwrap();
        assert_eq!(next.comps, state.comps);
        assert!(next.time > state.time);
    }

    #[test]
    fn transverse_rates_match_analytic_to_fourth_order() {
        let err = |n: usize| {
            let spec = grid_1d(n);
            let k = TAU;
            let state = init_state(&spec, &Scenario::plane_wave(0, k, 1.0)).unwrap();
            let rates = time_derivative(&state).unwrap();
            // E_y = B_z = cos k(x - t): d_t E_y = d_t B_z = k sin(kx) at t=0.
            let mut max = 0.0f64;
            for cell in 0..spec.cell_count() {
                let x = spec.position(cell)[0];
                let analytic = k * (k * x).sin();
                max = max.max((rates[2][cell] - analytic).abs());
                max = max.max((rates[6][cell] - analytic).abs());
            }
            // Other components stay identically zero.
            for c in [0usize, 1, 3, 4, 5, 7] {
                assert!(rates[c].iter().all(|&v| v == 0.0));
            }
            max
        };
        let coarse = err(64);
        let fine = err(128);
        // Stencil error k (k dx)^4 / 30 is about 1.9e-5 at n = 64.
        assert!(coarse < 4e-5, "coarse error {coarse}");
        assert!(coarse / fine > 12.0, "convergence ratio {}", coarse / fine);
    }

    #[test]
    fn longitudinal_rates_match_analytic() {
        let spec = grid_1d(64);
        let k = 2.0 * TAU; // two cycles in the box
        let state = init_state(&spec, &Scenario::longitudinal(0, k, 0.5)).unwrap();
        let rates = time_derivative(&state).unwrap();
        let mut max = 0.0f64;
        for cell in 0..spec.cell_count() {
            let x = spec.position(cell)[0];
            let analytic = 0.5 * k * (k * x).sin();
            max = max.max((rates[0][cell] - analytic).abs());
            max = max.max((rates[1][cell] - analytic).abs());
        }
        // k (k dx)^4 / 30 with k dx = 2 tau / 64.
        assert!(max < 1e-3, "error {max}");
        for c in [2usize, 3, 4, 5, 6, 7] {
            assert!(rates[c].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn step_rejects_cfl_violation_and_nan() {
        let spec = grid_1d(16);
        let state = FieldState::zeros(spec);
        assert!(matches!(
            step(&state, spec.spacing),
            Err(SolverError::CflViolation { .. })
        ));
        let mut bad = FieldState::zeros(spec);
        bad.comps[0][3] = f64::NAN;
        assert!(matches!(
            time_derivative(&bad),
            Err(SolverError::NonFinite { component: "f", cell: 3, .. })
        ));
    }

    #[test]
    fn step_is_reversible_for_small_dt() {
        let spec = grid_1d(32);
        let state = init_state(&spec, &Scenario::plane_wave(0, TAU, 1.0)).unwrap();
        let dt = 0.002;
        let there = step(&state, dt).unwrap();
        let back = step(&there, -dt).unwrap();
        assert!(back.max_abs_diff(&state).unwrap() < 1e-10);
        assert!((back.time - state.time).abs() < 1e-15);
    }

    #[test]
    fn plane_wave_tracks_analytic_translation() {
        let spec = grid_1d(64);
        let scenario = Scenario::plane_wave(0, TAU, 1.0);
        let mut state = init_state(&spec, &scenario).unwrap();
        let dt = 0.25 * spec.spacing;
        for _ in 0..100 {
            state = step(&state, dt).unwrap();
        }
        let reference = analytic_state(&spec, &scenario, state.time)
            .unwrap()
            .unwrap();
        let err = state.max_abs_diff(&reference).unwrap();
        assert!(err < 1e-4, "error after 100 steps: {err}");
    }

    #[test]
    fn vacuum_sector_is_exactly_preserved() {
        // f = g = 0 with div E = div B = 0 stays exactly f = g = 0.
        let spec = grid_1d(32);
        let mut state = init_state(&spec, &Scenario::plane_wave(0, TAU, 1.0)).unwrap();
        let dt = 0.25 * spec.spacing;
        for _ in 0..10 {
            state = step(&state, dt).unwrap();
        }
        assert!(state.comps[0].iter().all(|&v| v == 0.0));
        assert!(state.comps[7].iter().all(|&v| v == 0.0));
    }

    #[test]
    fn residual_is_zero_for_static_uniform_state() {
        let spec = grid_1d(16);
        let mut state = FieldState::zeros(spec);
        state.comps[5].fill(1.5);
        let r = second_order_residual(&state, &state, &state, 0.01).unwrap();
        assert_eq!(r.max(), 0.0);
    }

    #[test]
    fn residual_shrinks_at_fourth_order_under_refinement() {
        // dt scaled as dx^2 keeps the time-stencil error subdominant.
        let residual_at = |n: usize| {
            let spec = grid_1d(n);
            let scenario = Scenario::plane_wave(0, TAU, 1.0);
            let dt = 0.25 * spec.spacing * spec.spacing;
            let mut states = vec![init_state(&spec, &scenario).unwrap()];
            for _ in 0..2 {
                states.push(step(states.last().unwrap(), dt).unwrap());
            }
            second_order_residual(&states[0], &states[1], &states[2], dt)
                .unwrap()
                .max()
        };
        let coarse = residual_at(32);
        let fine = residual_at(64);
        assert!(coarse / fine > 8.0, "ratio {}", coarse / fine);
    }

    #[test]
    fn residual_rejects_mismatched_grids() {
        let a = FieldState::zeros(grid_1d(16));
        let b = FieldState::zeros(grid_1d(32));
        assert!(matches!(
            second_order_residual(&a, &a, &b, 0.01),
            Err(SolverError::GridMismatch(..))
        ));
    }

    #[test]
    fn conserved_totals_of_known_states() {
        let spec = grid_1d(64);
        let zero = FieldState::zeros(spec);
        let totals = conserved_totals(&zero);
        assert_eq!(totals.q, [0.0; 4]);
        assert_eq!(totals.q5, [0.0; 4]);
        assert_eq!(totals.s, 0.0);
        assert_eq!(totals.p, 0.0);

        // Unit plane wave: Q0 = sum 2 cos^2 dx = L = 1 exactly on a
        // commensurate grid.
        let wave = init_state(&spec, &Scenario::plane_wave(0, TAU, 1.0)).unwrap();
        let q0 = conserved_totals(&wave).q[0];
        assert!((q0 - 1.0).abs() < 1e-12, "Q0 = {q0}");
    }

    #[test]
    fn q0_is_conserved_over_short_runs() {
        let spec = grid_1d(64);
        let mut state = init_state(&spec, &Scenario::longitudinal(0, TAU, 1.0)).unwrap();
        let q0_start = conserved_totals(&state).q[0];
        let dt = 0.25 * spec.spacing;
        for _ in 0..200 {
            state = step(&state, dt).unwrap();
        }
        let q0_end = conserved_totals(&state).q[0];
        let drift = ((q0_end - q0_start) / q0_start).abs();
        assert!(drift < 1e-8, "drift {drift}");
    }

    #[test]
    fn incommensurate_wavevector_is_rejected() {
        let spec = grid_1d(64);
        assert!(matches!(
            init_state(&spec, &Scenario::plane_wave(0, 1.1 * TAU, 1.0)),
            Err(SolverError::IncommensurateWave { .. })
        ));
        assert!(matches!(
            init_state(&spec, &Scenario::plane_wave(0, 0.0, 1.0)),
            Err(SolverError::IncommensurateWave { .. })
        ));
    }

    #[test]
    fn seeded_noise_is_deterministic_and_smooth() {
        let spec = grid_1d(64);
        let scenario = Scenario::noise(3, 0.5, 42);
        let a = init_state(&spec, &scenario).unwrap();
        let b = init_state(&spec, &scenario).unwrap();
        assert_eq!(a.comps, b.comps);
        assert!(a.comps[0].iter().any(|&v| v != 0.0));
    }

    #[test]
    fn gaussian_pulse_is_periodic_and_centered() {
        let spec = grid_1d(64);
        let state = init_state(&spec, &Scenario::gaussian("f", 0.05, 2.0)).unwrap();
        let center_cell = 32;
        assert!((state.comps[0][center_cell] - 2.0).abs() < 1e-6);
        // Wrap point matches smoothly: the profile at both ends agrees.
        assert!((state.comps[0][0] - state.comps[0][63]).abs() < 1e-3);
        for c in 1..COMPONENT_COUNT {
            assert!(state.comps[c].iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn pairwise_sum_matches_sequential_on_smooth_data() {
        let values: Vec<f64> = (0..1000).map(|i| (i as f64 * 0.37).sin()).collect();
        let sequential: f64 = values.iter().sum();
        assert!((pairwise_sum(&values) - sequential).abs() < 1e-10);
    }
}
