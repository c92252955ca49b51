//! Interaction-picture Hamiltonians of the three drives on the truncated
//! space, and a fixed-step time-domain integrator that validates the
//! analytic pulse propagators from first principles.
//!
//! The spin and spin-cyclotron Hamiltonians are time-independent at
//! resonance, so integrating them isolates integrator error; the spin-axial
//! Hamiltonian keeps its full time dependence (the traveling-wave
//! displacement factor plus the detuning phase), and integrating it at the
//! sideband resonance `Δ = −ω_z` quantifies the rotating-wave error behind
//! the analytic `U′_sa`.
//!
//! Builders return energies in joules; the integrator works with `H/ħ`.

use ndarray::Array2;
use num_complex::Complex64 as C64;
use rayon::prelude::*;
use std::f64::consts::TAU;

use crate::constants::{BOHR_MAGNETON, ELECTRON_G_FACTOR, ELECTRON_MASS, ELEMENTARY_CHARGE, HBAR};
use crate::hilbert::{Operator, SpaceConfig, UNITARY_TOL};
use crate::pulses::{propagator_sa, LambDicke};
use crate::{Error, Result};

/// Resonant drive of the spin transition.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpinDrive {
    /// Rabi frequency Ω, rad/s.
    pub rabi: f64,
    /// Drive phase φ.
    pub phi: f64,
}

impl SpinDrive {
    /// From the transverse field amplitude: `Ω = g|e|b/(2m)`.
    pub fn from_field(b: f64, phi: f64) -> Self {
        SpinDrive {
            rabi: ELECTRON_G_FACTOR * ELEMENTARY_CHARGE * b / (2.0 * ELECTRON_MASS),
            phi,
        }
    }
}

/// Traveling-wave drive of the spin-axial sideband.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SidebandDrive {
    /// Rabi frequency Ω, rad/s.
    pub rabi: f64,
    /// Drive phase φ.
    pub phi: f64,
    /// Detuning `Δ = ω − ω_s`, rad/s; the sideband resonance is `Δ = −ω_z`.
    pub detuning: f64,
    pub eta: LambDicke,
    /// Axial frequency ω_z, rad/s.
    pub omega_z: f64,
}

/// Drive of the spin-cyclotron sideband, at resonance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CyclotronDrive {
    /// Signed rotation rate `dθ/dt`, rad/s; `θ(t) = theta_rate·t` is the
    /// angle of the `n = 1` block.
    pub theta_rate: f64,
    /// Drive phase φ.
    pub phi: f64,
}

impl CyclotronDrive {
    /// From the field amplitude: `θ/t = −g·μ_B·b·√(1/(2mħω̃_c))`.
    pub fn from_field(b: f64, omega_c_tilde: f64, phi: f64) -> Self {
        CyclotronDrive {
            theta_rate: -ELECTRON_G_FACTOR
                * BOHR_MAGNETON
                * b
                * (1.0 / (2.0 * ELECTRON_MASS * HBAR * omega_c_tilde)).sqrt(),
            phi,
        }
    }
}

/// Any of the three drives, for the integrator.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Drive {
    Spin(SpinDrive),
    Sideband(SidebandDrive),
    Cyclotron(CyclotronDrive),
}

impl Drive {
    /// Largest angular frequency present in `H(t)/ħ`, used by the step rule.
    fn max_angular_frequency(&self, cfg: &SpaceConfig) -> f64 {
        match self {
            Drive::Spin(d) => d.rabi.abs(),
            Drive::Sideband(d) => d.detuning.abs() + 2.0 * d.omega_z + d.rabi.abs(),
            Drive::Cyclotron(d) => ((cfg.n_cyc() - 1) as f64).sqrt() * d.theta_rate.abs(),
        }
    }
}

/// `H′_s/ħ`: the resonant spin drive, identical on every motional state.
fn angular_h_s(d: &SpinDrive, cfg: &SpaceConfig) -> Array2<C64> {
    let dim = cfg.dim();
    let mut h = Array2::zeros((dim, dim));
    let up_down = C64::from_polar(d.rabi / 2.0, -d.phi);
    for n in 0..cfg.n_cyc() {
        for l in 0..cfg.n_ax() {
            let down = cfg.flat_index(0, n, l).unwrap();
            let up = cfg.flat_index(1, n, l).unwrap();
            h[[up, down]] = up_down;
            h[[down, up]] = up_down.conj();
        }
    }
    h
}

/// `H′_sc/ħ`: the Jaynes-Cummings spin-cyclotron coupling.
fn angular_h_sc(d: &CyclotronDrive, cfg: &SpaceConfig) -> Array2<C64> {
    let dim = cfg.dim();
    let mut h = Array2::zeros((dim, dim));
    for n in 1..cfg.n_cyc() {
        let coupling =
            C64::from_polar(-(d.theta_rate / 2.0) * (n as f64).sqrt(), -d.phi);
        for l in 0..cfg.n_ax() {
            let down_n = cfg.flat_index(0, n, l).unwrap();
            let up_below = cfg.flat_index(1, n - 1, l).unwrap();
            h[[up_below, down_n]] = coupling;
            h[[down_n, up_below]] = coupling.conj();
        }
    }
    h
}

/// Spin-axial Hamiltonian with the displacement exponential precomputed.
///
/// The Hermitian generator `η(a†e^{iω_z t} + a e^{−iω_z t})` at time `t` is
/// the `t = 0` generator conjugated by the phase gauge `diag(e^{ilω_z t})`,
/// so one eigendecomposition of `η(a + a†)` serves every time step.
struct SidebandGenerator {
    drive: SidebandDrive,
    /// `exp(iη(a + a†))` on the truncated axial space.
    exp_g0: Array2<C64>,
}

impl SidebandGenerator {
    fn new(drive: SidebandDrive, cfg: &SpaceConfig) -> Self {
        let n = cfg.n_ax();
        let eta = drive.eta.value();
        let g0 = nalgebra::DMatrix::<f64>::from_fn(n, n, |r, c| {
            if r + 1 == c {
                eta * (c as f64).sqrt()
            } else if c + 1 == r {
                eta * (r as f64).sqrt()
            } else {
                0.0
            }
        });
        let eig = nalgebra::SymmetricEigen::new(g0);
        let mut exp_g0: Array2<C64> = Array2::zeros((n, n));
        for r in 0..n {
            for c in 0..n {
                let mut sum = C64::new(0.0, 0.0);
                for k in 0..n {
                    sum += C64::from_polar(1.0, eig.eigenvalues[k])
                        * eig.eigenvectors[(r, k)]
                        * eig.eigenvectors[(c, k)];
                }
                exp_g0[[r, c]] = sum;
            }
        }
        SidebandGenerator { drive, exp_g0 }
    }

    /// `exp(iη(a†e^{iω_z t} + a e^{−iω_z t}))` on the axial space.
    fn displacement(&self, t: f64) -> Array2<C64> {
        let n = self.exp_g0.nrows();
        let mut out = Array2::zeros((n, n));
        for r in 0..n {
            for c in 0..n {
                let gauge = C64::from_polar(1.0, (r as f64 - c as f64) * self.drive.omega_z * t);
                out[[r, c]] = gauge * self.exp_g0[[r, c]];
            }
        }
        out
    }

    /// `H′_sa(t)/ħ` on the full space.
    fn angular(&self, t: f64, cfg: &SpaceConfig) -> Array2<C64> {
        let d = &self.drive;
        let dim = cfg.dim();
        let disp = self.displacement(t);
        let coef = C64::from_polar(d.rabi / 2.0, -(d.detuning * t + d.phi));
        let mut h = Array2::zeros((dim, dim));
        for n in 0..cfg.n_cyc() {
            for lp in 0..cfg.n_ax() {
                let up = cfg.flat_index(1, n, lp).unwrap();
                for l in 0..cfg.n_ax() {
                    let down = cfg.flat_index(0, n, l).unwrap();
                    let element = coef * disp[[lp, l]];
                    h[[up, down]] = element;
                    h[[down, up]] = element.conj();
                }
            }
        }
        h
    }
}

/// `H′_s` in joules.
pub fn build_h_s(d: &SpinDrive, cfg: &SpaceConfig) -> Operator {
    Operator::from_matrix(angular_h_s(d, cfg).mapv(|e| e * HBAR))
}

/// `H′_sa(t)` in joules.
pub fn build_h_sa(t: f64, d: &SidebandDrive, cfg: &SpaceConfig) -> Operator {
    let gen = SidebandGenerator::new(*d, cfg);
    Operator::from_matrix(gen.angular(t, cfg).mapv(|e| e * HBAR))
}

/// `H′_sc` in joules.
pub fn build_h_sc(d: &CyclotronDrive, cfg: &SpaceConfig) -> Operator {
    Operator::from_matrix(angular_h_sc(d, cfg).mapv(|e| e * HBAR))
}

/// Fixed-step rule for the integrator: at least `steps_per_cycle` steps per
/// period of the fastest frequency in `H`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct StepPolicy {
    pub steps_per_cycle: f64,
    pub max_steps: u64,
}

impl Default for StepPolicy {
    fn default() -> Self {
        StepPolicy {
            steps_per_cycle: 200.0,
            max_steps: 100_000_000,
        }
    }
}

impl StepPolicy {
    pub fn with_steps_per_cycle(steps_per_cycle: f64) -> Self {
        StepPolicy {
            steps_per_cycle,
            ..Default::default()
        }
    }

    fn step_count(&self, duration: f64, omega_max: f64) -> Result<u64> {
        let h_max = TAU / (self.steps_per_cycle * omega_max);
        let required = (duration / h_max).ceil().max(8.0);
        if required > self.max_steps as f64 {
            return Err(Error::StepLimitExceeded {
                required: required as u64,
                limit: self.max_steps,
            });
        }
        Ok(required as u64)
    }
}

/// Newton-Schulz iteration onto the unitary polar factor; valid here because
/// RK4 keeps `‖U†U − I‖` far below 1.
fn polar_unitary(mut x: Array2<C64>) -> Array2<C64> {
    let dim = x.nrows();
    let eye: Array2<C64> = Array2::eye(dim);
    for _ in 0..40 {
        let gram = x.t().mapv(|e| e.conj()).dot(&x);
        let defect = gram
            .iter()
            .zip(eye.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        if defect <= 1e-15 {
            break;
        }
        let correction = eye.mapv(|e| e * 3.0) - &gram;
        x = x.dot(&correction).mapv(|e| e * 0.5);
    }
    x
}

/// Propagator of `iħ dU/dt = H(t) U` over `[0, duration]` by classical
/// fixed-step fourth-order Runge-Kutta, re-unitarized by polar projection at
/// the end. Deterministic for fixed inputs.
pub fn integrate(
    drive: &Drive,
    duration: f64,
    policy: &StepPolicy,
    cfg: &SpaceConfig,
) -> Result<Operator> {
    if duration.is_nan() || duration <= 0.0 {
        return Err(Error::InvalidParameter(format!(
            "integration duration must be positive, got {duration}"
        )));
    }
    let omega_max = drive.max_angular_frequency(cfg);
    if omega_max.is_nan() || omega_max <= 0.0 {
        return Err(Error::InvalidParameter(
            "drive has no frequency scale".into(),
        ));
    }
    let steps = policy.step_count(duration, omega_max)?;
    let h = duration / steps as f64;
    let dim = cfg.dim();

    // H(t)/ħ as a closure; constant drives are built once
    let sideband = match drive {
        Drive::Sideband(d) => Some(SidebandGenerator::new(*d, cfg)),
        _ => None,
    };
    let constant = match drive {
        Drive::Spin(d) => Some(angular_h_s(d, cfg)),
        Drive::Cyclotron(d) => Some(angular_h_sc(d, cfg)),
        Drive::Sideband(_) => None,
    };
    let a_at = |t: f64| -> Array2<C64> {
        match (&constant, &sideband) {
            (Some(a), _) => a.clone(),
            (None, Some(gen)) => gen.angular(t, cfg),
            _ => unreachable!(),
        }
    };

    let minus_i = C64::new(0.0, -1.0);
    let mut u: Array2<C64> = Array2::eye(dim);
    let mut t = 0.0;
    for _ in 0..steps {
        let k1 = a_at(t).dot(&u).mapv(|e| e * minus_i);
        let u2 = &u + &k1.mapv(|e| e * (h / 2.0));
        let a_mid = a_at(t + h / 2.0);
        let k2 = a_mid.dot(&u2).mapv(|e| e * minus_i);
        let u3 = &u + &k2.mapv(|e| e * (h / 2.0));
        let k3 = a_mid.dot(&u3).mapv(|e| e * minus_i);
        let u4 = &u + &k3.mapv(|e| e * h);
        let k4 = a_at(t + h).dot(&u4).mapv(|e| e * minus_i);
        u = &u
            + &(k1 + k2.mapv(|e| e * 2.0) + k3.mapv(|e| e * 2.0) + k4).mapv(|e| e * (h / 6.0));
        t += h;
    }

    let projected = polar_unitary(u);
    let op = Operator::unitary_from_matrix(projected)?;
    debug_assert!(op.unitarity_defect() <= UNITARY_TOL);
    Ok(op)
}

/// One point of the rotating-wave validation sweep.
#[derive(Debug, Clone, Copy)]
pub struct RwaPoint {
    /// `Ω/ω_z`.
    pub ratio: f64,
    /// Integration length in units of `1/ω_z`.
    pub duration: f64,
    /// `|θ_integrated − θ_analytic|` on the `l = 0` sideband block, rad.
    pub angle_error: f64,
}

/// Integrate the spin-axial drive at the sideband resonance `Δ = −ω_z` for
/// each `Ω/ω_z` ratio and compare the achieved `l = 0` block angle against
/// the analytic propagator. The pulse length targets `θ_0 = θ_target`,
/// rounded to a whole number of axial periods so the comparison samples
/// complete micromotion cycles.
pub fn rwa_sweep(
    ratios: &[f64],
    eta: LambDicke,
    theta_target: f64,
    policy: &StepPolicy,
    cfg: &SpaceConfig,
) -> Result<Vec<RwaPoint>> {
    let points: Vec<Result<RwaPoint>> = ratios
        .par_iter()
        .map(|&ratio| {
            if ratio.is_nan() || ratio <= 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "ratio must be positive, got {ratio}"
                )));
            }
            // work in units ω_z = 1
            let drive = SidebandDrive {
                rabi: ratio,
                phi: 0.0,
                detuning: -1.0,
                eta,
                omega_z: 1.0,
            };
            let eta_v = eta.value();
            let sideband_rate = ratio * eta_v * (-eta_v * eta_v / 2.0).exp();
            if sideband_rate.is_nan() || sideband_rate <= 0.0 {
                return Err(Error::InvalidParameter(
                    "sideband coupling vanishes for this eta".into(),
                ));
            }
            let ideal = theta_target / sideband_rate;
            let cycles = (ideal / TAU).round().max(1.0);
            let duration = cycles * TAU;
            let theta0 = sideband_rate * duration;

            let u = integrate(&Drive::Sideband(drive), duration, policy, cfg)?;
            let reference = propagator_sa(theta0, 0.0, eta, cfg);

            let from = cfg.flat_index(1, 0, 0).unwrap();
            let to = cfg.flat_index(0, 0, 1).unwrap();
            let block_angle = |op: &Operator| {
                let transfer = op.matrix()[[to, from]].norm();
                let stay = op.matrix()[[from, from]].norm();
                2.0 * transfer.atan2(stay)
            };
            let angle_error = (block_angle(&u) - block_angle(&reference)).abs();
            Ok(RwaPoint {
                ratio,
                duration,
                angle_error,
            })
        })
        .collect();
    points.into_iter().collect()
}
