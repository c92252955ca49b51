//! Pulse-level simulator and gate compiler for a single electron in a Penning
//! trap, carrying three qubits: the spin and the lowest two Fock states of the
//! cyclotron and axial oscillators.
//!
//! The crate is organized around a truncated product basis `|j n l⟩` (spin,
//! cyclotron level, axial level). Three analytic pulse propagators drive the
//! spin directly or together with one motional quantum; everything else —
//! composite-pulse two-qubit gates, swap-conjugated single-qubit gates on the
//! oscillators, phase oracles, the three-qubit Deutsch-Jozsa protocol — is a
//! schedule of those pulses. Leakage out of the 8-state computational
//! subspace is tracked as a first-class metric, alongside a boundary
//! diagnostic that flags truncation artifacts.
//!
//! Module map:
//! - [`hilbert`]: basis indexing, states, operators, fidelity and leakage
//! - [`pulses`]: the three pulse propagators and schedule execution
//! - [`gates`]: the composite-pulse gate catalog
//! - [`oracle`]: boolean functions, phase-oracle synthesis, Deutsch-Jozsa
//! - [`hamiltonian`]: interaction-picture Hamiltonians and a time-domain
//!   integrator validating the analytic propagators
//! - [`trapcalc`]: trap frequencies from physical parameters

pub mod constants;
pub mod gates;
pub mod hamiltonian;
pub mod hilbert;
pub mod oracle;
pub mod pulses;
pub mod trapcalc;

use thiserror::Error;

/// Errors produced by simulator operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("truncation must keep at least two levels per oscillator, got n_cyc={n_cyc}, n_ax={n_ax}")]
    InvalidTruncation { n_cyc: usize, n_ax: usize },
    #[error("basis component out of range: (j={j}, n={n}, l={l}) with n_cyc={n_cyc}, n_ax={n_ax}")]
    IndexOutOfRange {
        j: usize,
        n: usize,
        l: usize,
        n_cyc: usize,
        n_ax: usize,
    },
    #[error("state vector is not normalized: |norm - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix is not unitary: max |U†U - I| = {defect:.3e}")]
    NotUnitary { defect: f64 },
    #[error("cannot compose an empty schedule")]
    EmptySchedule,
    #[error("Lamb-Dicke parameter must be non-negative, got {0}")]
    NegativeLambDicke(f64),
    #[error("no registered spin recipe for gate {0:?}")]
    NoSpinRecipe(String),
    #[error("function with weight {weight} is neither constant nor balanced")]
    NotConstantOrBalanced { weight: u32 },
    #[error("invalid function selector {0:?}: expected two hex digits or an 8-bit string")]
    BadFunctionSelector(String),
    #[error("probability {value:.3e} at outcome {index} is negative beyond tolerance")]
    NegativeProbability { index: usize, value: f64 },
    #[error("step policy requires {required} steps, above the limit {limit}")]
    StepLimitExceeded { required: u64, limit: u64 },
    #[error("trap is unstable: omega_c^2 = {omega_c_sq:.6e} <= 2 omega_z^2 = {two_omega_z_sq:.6e}")]
    UnstableTrap { omega_c_sq: f64, two_omega_z_sq: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
