//! Physical constants (CODATA 2018), shared by the Hamiltonian builders and
//! the trap frequency calculator.

/// Elementary charge, C (exact).
pub const ELEMENTARY_CHARGE: f64 = 1.602_176_634e-19;

/// Electron mass, kg.
pub const ELECTRON_MASS: f64 = 9.109_383_701_5e-31;

/// Reduced Planck constant, J s (from the exact h).
pub const HBAR: f64 = 1.054_571_817e-34;

/// Bohr magneton, J/T.
pub const BOHR_MAGNETON: f64 = 9.274_010_078_3e-24;

/// Electron g-factor magnitude.
pub const ELECTRON_G_FACTOR: f64 = 2.002_319_304_362_56;

/// Speed of light, m/s (exact).
pub const SPEED_OF_LIGHT: f64 = 2.997_924_58e8;
