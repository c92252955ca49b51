//! Trap frequencies of a single electron in a Penning trap, from the
//! magnetic field, electrode potential and characteristic trap length.

use crate::constants;
use crate::{Error, Result};

/// Physical trap parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrapParameters {
    /// Axial magnetic field, T.
    pub b_field: f64,
    /// Potential between the trap electrodes, V.
    pub v0: f64,
    /// Characteristic trap length, m.
    pub d: f64,
    /// Electron g-factor magnitude.
    pub g_factor: f64,
}

impl TrapParameters {
    pub fn new(b_field: f64, v0: f64, d: f64) -> Result<Self> {
        if [b_field, v0, d].iter().any(|v| v.is_nan() || *v <= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "trap parameters must be positive: B = {b_field}, V0 = {v0}, d = {d}"
            )));
        }
        Ok(TrapParameters {
            b_field,
            v0,
            d,
            g_factor: constants::ELECTRON_G_FACTOR,
        })
    }

    /// Example parameters: B = 5.3 T with V0 and d chosen so the axial
    /// frequency lands near 64 MHz, giving the GHz/GHz/MHz hierarchy.
    pub fn example() -> Self {
        TrapParameters::new(5.3, 10.0, 3.3e-3).expect("example parameters are positive")
    }
}

/// The derived trap and transition frequencies, all in rad/s.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Frequencies {
    /// Free cyclotron frequency `|e|B/m`.
    pub omega_c: f64,
    /// `√(ω_c² − 2ω_z²)`.
    pub omega_c_tilde: f64,
    /// Trap-modified cyclotron frequency `(ω_c + ω̃_c)/2`.
    pub omega_c_prime: f64,
    /// Magnetron frequency `(ω_c − ω̃_c)/2`.
    pub omega_m: f64,
    /// Axial frequency `√(eV0/(m d²))`.
    pub omega_z: f64,
    /// Spin precession frequency `g|e|B/(2m)`.
    pub omega_s: f64,
    /// Spin-axial sideband drive frequency `ω_s − ω_z`.
    pub omega_sa: f64,
    /// Spin-cyclotron sideband drive frequency `ω_s − ω′_c`.
    pub omega_sc: f64,
}

/// Compute all eight frequencies. Fails when the trap is unstable,
/// `ω_c² ≤ 2ω_z²`.
pub fn frequencies_from(p: &TrapParameters) -> Result<Frequencies> {
    let e = constants::ELEMENTARY_CHARGE;
    let m = constants::ELECTRON_MASS;
    let omega_c = e * p.b_field / m;
    let omega_z = (e * p.v0 / (m * p.d * p.d)).sqrt();
    let omega_c_sq = omega_c * omega_c;
    let two_omega_z_sq = 2.0 * omega_z * omega_z;
    if omega_c_sq <= two_omega_z_sq {
        return Err(Error::UnstableTrap {
            omega_c_sq,
            two_omega_z_sq,
        });
    }
    let omega_c_tilde = (omega_c_sq - two_omega_z_sq).sqrt();
    let omega_c_prime = (omega_c + omega_c_tilde) / 2.0;
    // (ω_c − ω̃_c)/2 in the cancellation-free form; the two frequencies are
    // nearly equal whenever ω_z ≪ ω_c
    let omega_m = omega_z * omega_z / (omega_c + omega_c_tilde);
    let omega_s = p.g_factor * e * p.b_field / (2.0 * m);
    Ok(Frequencies {
        omega_c,
        omega_c_tilde,
        omega_c_prime,
        omega_m,
        omega_z,
        omega_s,
        omega_sa: omega_s - omega_z,
        omega_sc: omega_s - omega_c_prime,
    })
}

impl Frequencies {
    /// (label, rad/s) pairs in a fixed presentation order.
    pub fn entries(&self) -> [(&'static str, f64); 8] {
        [
            ("omega_c", self.omega_c),
            ("omega_c_tilde", self.omega_c_tilde),
            ("omega_c_prime", self.omega_c_prime),
            ("omega_m", self.omega_m),
            ("omega_z", self.omega_z),
            ("omega_s", self.omega_s),
            ("omega_sa", self.omega_sa),
            ("omega_sc", self.omega_sc),
        ]
    }
}

/// Physical Lamb-Dicke parameter `η = k√(ħ/(2mω_z))` of a traveling wave
/// with wavenumber `k`. Informational: gate construction takes η as explicit
/// configuration rather than deriving it from trap numbers.
pub fn physical_eta(freqs: &Frequencies, wavenumber: f64) -> f64 {
    wavenumber * (constants::HBAR / (2.0 * constants::ELECTRON_MASS * freqs.omega_z)).sqrt()
}

/// Free-space wavenumber of the spin-axial drive, `ω_sa/c`.
pub fn free_space_wavenumber(freqs: &Frequencies) -> f64 {
    freqs.omega_sa / constants::SPEED_OF_LIGHT
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::{assert_abs_diff_eq, assert_relative_eq};
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::TAU;

    fn random_stable_params(rng: &mut StdRng) -> TrapParameters {
        // physically sensible operating ranges: strong field, mm-scale trap
        loop {
            let p = TrapParameters::new(
                rng.gen_range(1.0..10.0),
                rng.gen_range(1.0..200.0),
                rng.gen_range(1e-3..2e-2),
            )
            .unwrap();
            if frequencies_from(&p).is_ok() {
                return p;
            }
        }
    }

    #[test]
    fn example_trap_reproduces_the_magnitude_hierarchy() {
        let f = frequencies_from(&TrapParameters::example()).unwrap();
        // spin and cyclotron near 148 GHz, axial near 64 MHz
        assert!((f.omega_c / TAU - 148.35e9).abs() < 0.5e9, "{}", f.omega_c / TAU);
        assert!((f.omega_z / TAU - 64e6).abs() < 1e6, "{}", f.omega_z / TAU);
        assert!(f.omega_s / TAU >= 1e9 && f.omega_c_prime / TAU >= 1e9);
        assert!(f.omega_z / TAU >= 1e6 && f.omega_z / TAU < 1e9);
        assert_relative_eq!(
            f.omega_s / f.omega_c,
            constants::ELECTRON_G_FACTOR / 2.0,
            epsilon = 1e-14
        );
    }

    #[test]
    fn algebraic_identities_on_random_parameters() {
        let mut rng = StdRng::seed_from_u64(31);
        for _ in 0..100 {
            let p = random_stable_params(&mut rng);
            let f = frequencies_from(&p).unwrap();
            assert_relative_eq!(f.omega_c_prime + f.omega_m, f.omega_c, max_relative = 1e-9);
            assert_relative_eq!(
                f.omega_c_prime * f.omega_m,
                f.omega_z * f.omega_z / 2.0,
                max_relative = 1e-9
            );
            assert!(f.omega_s > f.omega_c_prime);
            assert!(f.omega_c_prime > f.omega_z);
            assert!(f.omega_z > f.omega_m);
        }
    }

    #[test]
    fn tilde_approaches_omega_c_for_weak_potential() {
        let base = TrapParameters::example();
        let weak = TrapParameters::new(base.b_field, 1e-6, base.d).unwrap();
        let f = frequencies_from(&weak).unwrap();
        assert_relative_eq!(f.omega_c_tilde, f.omega_c, max_relative = 1e-9);
    }

    #[test]
    fn unstable_trap_is_rejected_with_both_values() {
        // gigantic potential over a tiny trap drives omega_z above stability
        let p = TrapParameters::new(1e-4, 200.0, 1e-4).unwrap();
        match frequencies_from(&p) {
            Err(Error::UnstableTrap {
                omega_c_sq,
                two_omega_z_sq,
            }) => assert!(omega_c_sq <= two_omega_z_sq),
            other => panic!("expected stability error, got {other:?}"),
        }
    }

    #[test]
    fn monotone_in_field_strength() {
        let mut prev_c = 0.0;
        let mut prev_s = 0.0;
        for b in [1.0, 2.0, 3.5, 5.3, 8.0] {
            let p = TrapParameters::new(b, 10.0, 3.3e-3).unwrap();
            let f = frequencies_from(&p).unwrap();
            assert!(f.omega_c > prev_c && f.omega_s > prev_s);
            prev_c = f.omega_c;
            prev_s = f.omega_s;
        }
    }

    #[test]
    fn physical_eta_formula() {
        let f = frequencies_from(&TrapParameters::example()).unwrap();
        assert_eq!(physical_eta(&f, 0.0), 0.0);

        // η scales as 1/√ω_z
        let k = 1e4;
        let eta1 = physical_eta(&f, k);
        let doubled = Frequencies {
            omega_z: 2.0 * f.omega_z,
            ..f
        };
        let eta2 = physical_eta(&doubled, k);
        assert_relative_eq!(eta1 / eta2, 2.0_f64.sqrt(), epsilon = 1e-12);

        // free-space drive at the example trap sits deep in the Lamb-Dicke
        // regime, far below the configurable gate value
        let eta_phys = physical_eta(&f, free_space_wavenumber(&f));
        assert!(eta_phys < 1e-2, "{eta_phys}");
        assert_abs_diff_eq!(eta_phys, 1.18e-3, epsilon = 2e-4);
    }
}
