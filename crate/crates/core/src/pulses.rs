//! The three analytic pulse propagators on the truncated space, and schedule
//! execution with a truncation boundary diagnostic.
//!
//! All three propagators are exact direct sums of 2×2 rotations plus dark
//! (identity) states at the truncation boundary, so they are unitary to
//! machine precision on every Fock block, not just the computational ones.
//!
//! Conventions, in the block basis written first → second:
//! - `S`, basis (`|↓nl⟩`, `|↑nl⟩`):
//!   `[[cos(θ/2), −i e^{iφ} sin(θ/2)], [−i e^{−iφ} sin(θ/2), cos(θ/2)]]`
//! - `SA`, basis (`|↓n(l+1)⟩`, `|↑nl⟩`), angle `θ_l`:
//!   `[[cos(θ_l/2), −e^{iφ} sin(θ_l/2)], [e^{−iφ} sin(θ_l/2), cos(θ_l/2)]]`
//! - `SC`, basis (`|↓nl⟩`, `|↑(n−1)l⟩`), angle `√n·θ`:
//!   `[[cos(√n θ/2), i e^{iφ} sin(√n θ/2)], [i e^{−iφ} sin(√n θ/2), cos(√n θ/2)]]`
//!
//! For `SA` pulses the user-facing θ is the `l = 0` angle; higher blocks
//! scale by `√(1/(l+1))·L_l^1(η²)`, with the common drive prefactor absorbed
//! into θ.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;
use std::f64::consts::PI;

use crate::hilbert::{Operator, SpaceConfig, StateVector};
use crate::{Error, Result};

/// Which interaction drives the pulse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PulseKind {
    /// Direct spin rotation.
    S,
    /// Spin-axial sideband (traveling wave).
    Sa,
    /// Spin-cyclotron sideband.
    Sc,
}

/// One square pulse: kind, rotation angle and phase.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pulse {
    pub kind: PulseKind,
    pub theta: f64,
    pub phi: f64,
}

impl Pulse {
    pub fn s(theta: f64, phi: f64) -> Self {
        Pulse {
            kind: PulseKind::S,
            theta,
            phi,
        }
    }

    pub fn sa(theta: f64, phi: f64) -> Self {
        Pulse {
            kind: PulseKind::Sa,
            theta,
            phi,
        }
    }

    pub fn sc(theta: f64, phi: f64) -> Self {
        Pulse {
            kind: PulseKind::Sc,
            theta,
            phi,
        }
    }

    /// Phase reduced to `(−π, π]` for canonical comparison.
    pub fn canonical_phi(&self) -> f64 {
        let mut p = self.phi.rem_euclid(2.0 * PI);
        if p > PI {
            p -= 2.0 * PI;
        }
        p
    }
}

/// Dimensionless Lamb-Dicke parameter of the traveling wave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LambDicke(f64);

impl LambDicke {
    pub fn new(eta: f64) -> Result<Self> {
        if eta.is_nan() || eta < 0.0 {
            return Err(Error::NegativeLambDicke(eta));
        }
        Ok(LambDicke(eta))
    }

    pub fn value(&self) -> f64 {
        self.0
    }
}

/// An ordered pulse list; temporal order is list order, so the composed
/// operator is `U_k ⋯ U_2 · U_1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Schedule {
    name: String,
    pulses: Vec<Pulse>,
}

impl Schedule {
    pub fn new(name: impl Into<String>, pulses: Vec<Pulse>) -> Self {
        Schedule {
            name: name.into(),
            pulses,
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }
}

/// Generalized Laguerre polynomial `L_n^m(x)` by the stable three-term
/// recurrence.
pub fn laguerre_assoc(n: usize, m: usize, x: f64) -> f64 {
    let mf = m as f64;
    if n == 0 {
        return 1.0;
    }
    let mut prev = 1.0;
    let mut cur = 1.0 + mf - x;
    for k in 1..n {
        let kf = k as f64;
        let next = ((2.0 * kf + 1.0 + mf - x) * cur - (kf + mf) * prev) / (kf + 1.0);
        prev = cur;
        cur = next;
    }
    cur
}

/// Sideband angle for axial block `l`, with `theta0` the `l = 0` angle:
/// `θ_l = θ_0 · √(1/(l+1)) · L_l^1(η²) / L_0^1(η²)`.
pub fn theta_l(theta0: f64, l: usize, eta: LambDicke) -> f64 {
    let x = eta.value() * eta.value();
    theta0 * (1.0 / (l as f64 + 1.0)).sqrt() * laguerre_assoc(l, 1, x) / laguerre_assoc(0, 1, x)
}

/// One coupled pair: flat indices in the documented block-basis order and the
/// 2×2 rotation applied to them.
struct PairRotation {
    first: usize,
    second: usize,
    m: [[C64; 2]; 2],
}

fn s_block(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    [
        [C64::new(c, 0.0), -C64::i() * e * s],
        [-C64::i() * e.conj() * s, C64::new(c, 0.0)],
    ]
}

fn sa_block(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    [
        [C64::new(c, 0.0), -e * s],
        [e.conj() * s, C64::new(c, 0.0)],
    ]
}

fn sc_block(theta: f64, phi: f64) -> [[C64; 2]; 2] {
    let (c, s) = ((theta / 2.0).cos(), (theta / 2.0).sin());
    let e = C64::from_polar(1.0, phi);
    [
        [C64::new(c, 0.0), C64::i() * e * s],
        [C64::i() * e.conj() * s, C64::new(c, 0.0)],
    ]
}

/// All coupled pairs of a pulse; states not listed are dark (identity).
fn pulse_pairs(pulse: &Pulse, eta: LambDicke, cfg: &SpaceConfig) -> Vec<PairRotation> {
    let mut pairs = Vec::new();
    match pulse.kind {
        PulseKind::S => {
            let m = s_block(pulse.theta, pulse.phi);
            for n in 0..cfg.n_cyc() {
                for l in 0..cfg.n_ax() {
                    pairs.push(PairRotation {
                        first: cfg.flat_index(0, n, l).unwrap(),
                        second: cfg.flat_index(1, n, l).unwrap(),
                        m,
                    });
                }
            }
        }
        PulseKind::Sa => {
            for l in 0..cfg.n_ax() - 1 {
                let m = sa_block(theta_l(pulse.theta, l, eta), pulse.phi);
                for n in 0..cfg.n_cyc() {
                    pairs.push(PairRotation {
                        first: cfg.flat_index(0, n, l + 1).unwrap(),
                        second: cfg.flat_index(1, n, l).unwrap(),
                        m,
                    });
                }
            }
        }
        PulseKind::Sc => {
            for n in 1..cfg.n_cyc() {
                let m = sc_block((n as f64).sqrt() * pulse.theta, pulse.phi);
                for l in 0..cfg.n_ax() {
                    pairs.push(PairRotation {
                        first: cfg.flat_index(0, n, l).unwrap(),
                        second: cfg.flat_index(1, n - 1, l).unwrap(),
                        m,
                    });
                }
            }
        }
    }
    pairs
}

fn dense_from_pairs(pairs: &[PairRotation], dim: usize) -> Operator {
    let mut mat: Array2<C64> = Array2::eye(dim);
    for p in pairs {
        mat[[p.first, p.first]] = p.m[0][0];
        mat[[p.first, p.second]] = p.m[0][1];
        mat[[p.second, p.first]] = p.m[1][0];
        mat[[p.second, p.second]] = p.m[1][1];
    }
    Operator::unitary_unchecked(mat)
}

/// Spin pulse `p_s(θ, φ)`: identical 2×2 spin rotation on every `(n, l)`.
pub fn propagator_s(theta: f64, phi: f64, cfg: &SpaceConfig) -> Operator {
    let eta = LambDicke::new(0.0).unwrap();
    dense_from_pairs(
        &pulse_pairs(&Pulse::s(theta, phi), eta, cfg),
        cfg.dim(),
    )
}

/// Spin-axial sideband pulse `p_sa(θ, φ)` at Lamb-Dicke parameter `eta`;
/// `|↓n0⟩` and `|↑n(n_ax−1)⟩` are dark.
pub fn propagator_sa(theta0: f64, phi: f64, eta: LambDicke, cfg: &SpaceConfig) -> Operator {
    dense_from_pairs(
        &pulse_pairs(&Pulse::sa(theta0, phi), eta, cfg),
        cfg.dim(),
    )
}

/// Spin-cyclotron sideband pulse `p_sc(θ, φ)`; the block with lower level
/// `n` rotates by `√n·θ`. `|↓0l⟩` and `|↑(n_cyc−1)l⟩` are dark.
pub fn propagator_sc(theta: f64, phi: f64, cfg: &SpaceConfig) -> Operator {
    let eta = LambDicke::new(0.0).unwrap();
    dense_from_pairs(
        &pulse_pairs(&Pulse::sc(theta, phi), eta, cfg),
        cfg.dim(),
    )
}

/// Propagator of a single pulse.
pub fn propagator(pulse: &Pulse, eta: LambDicke, cfg: &SpaceConfig) -> Operator {
    dense_from_pairs(&pulse_pairs(pulse, eta, cfg), cfg.dim())
}

/// Apply one pulse to a state in place, block by block.
fn apply_pulse_mut(state: &mut StateVector, pulse: &Pulse, eta: LambDicke, cfg: &SpaceConfig) {
    let pairs = pulse_pairs(pulse, eta, cfg);
    let amps = state.amplitudes_mut();
    for p in &pairs {
        let (a, b) = (amps[p.first], amps[p.second]);
        amps[p.first] = p.m[0][0] * a + p.m[0][1] * b;
        amps[p.second] = p.m[1][0] * a + p.m[1][1] * b;
    }
}

/// Apply one pulse to a state.
pub fn apply_pulse(
    state: &StateVector,
    pulse: &Pulse,
    eta: LambDicke,
    cfg: &SpaceConfig,
) -> StateVector {
    let mut out = state.clone();
    apply_pulse_mut(&mut out, pulse, eta, cfg);
    out
}

/// Compose a schedule into the operator `U_k ⋯ U_1` (temporal order
/// first-to-last). Errors on an empty schedule.
pub fn compose(schedule: &Schedule, eta: LambDicke, cfg: &SpaceConfig) -> Result<Operator> {
    if schedule.is_empty() {
        return Err(Error::EmptySchedule);
    }
    let dim = cfg.dim();
    let mut mat: Array2<C64> = Array2::eye(dim);
    let mut row_a: Array1<C64> = Array1::zeros(dim);
    let mut row_b: Array1<C64> = Array1::zeros(dim);
    for pulse in schedule.pulses() {
        // left-multiplying by a block rotation mixes the two rows of each pair
        for p in pulse_pairs(pulse, eta, cfg) {
            row_a.assign(&mat.row(p.first));
            row_b.assign(&mat.row(p.second));
            let mut r1 = mat.row_mut(p.first);
            for k in 0..dim {
                r1[k] = p.m[0][0] * row_a[k] + p.m[0][1] * row_b[k];
            }
            let mut r2 = mat.row_mut(p.second);
            for k in 0..dim {
                r2[k] = p.m[1][0] * row_a[k] + p.m[1][1] * row_b[k];
            }
        }
    }
    Ok(Operator::unitary_unchecked(mat))
}

/// Result of running a schedule on a state.
#[derive(Debug, Clone)]
pub struct ScheduleRun {
    pub final_state: StateVector,
    /// Largest population seen on any `n = n_cyc−1` or `l = n_ax−1` level,
    /// including the initial state and after every pulse.
    pub boundary_max: f64,
}

/// Population above this on a truncation boundary level indicates the
/// truncated space is too small for the schedule being run.
pub const BOUNDARY_WARN: f64 = 1e-10;

/// Run a schedule pulse by pulse, tracking the boundary diagnostic.
pub fn run_schedule(
    initial: &StateVector,
    schedule: &Schedule,
    eta: LambDicke,
    cfg: &SpaceConfig,
) -> ScheduleRun {
    let mut state = initial.clone();
    let mut boundary_max = state.boundary_population(cfg);
    for pulse in schedule.pulses() {
        apply_pulse_mut(&mut state, pulse, eta, cfg);
        boundary_max = boundary_max.max(state.boundary_population(cfg));
    }
    ScheduleRun {
        final_state: state,
        boundary_max,
    }
}
