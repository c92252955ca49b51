//! Three-bit boolean functions, phase-oracle synthesis from the primitive
//! gate set `{Z, S±, J_ij(±π/2)}`, and the refined three-qubit Deutsch-Jozsa
//! protocol run entirely at pulse level.
//!
//! Synthesis works in quarter-turn units mod 4. The multilinear expansion
//! `f(x) = Σ_T a_T Π_{i∈T} x_i` is obtained by Möbius inversion over input
//! subsets; the target diagonal `(−1)^{f(x)}` needs `2f(x)` quarter turns.
//! Products reduce through `2·x_i·x_j = x_i + x_j − (x_i⊕x_j)`, and the
//! cubic coefficient `a_123` is even for every constant or balanced
//! function, so its contribution vanishes mod 4. The result is one phase
//! coefficient `c_i` per qubit (a Z/S± power) and one `d_ij` per pair (a
//! `J_ij(±π/2)` power), realized as pulse schedules through the gate
//! library.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::gates::{self, SpinGate};
use crate::hilbert::{leakage, Operator, Qubit, SpaceConfig, StateVector, COMP_DIM};
use crate::pulses::{compose, run_schedule, LambDicke, Pulse, Schedule};
use crate::{Error, Result};

/// A 3-bit boolean function as an 8-entry truth table; `truth[x] = f(x)`
/// with `x` read as (spin, cyclotron, axial) bits, spin most significant.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoolFn3 {
    truth: [bool; COMP_DIM],
}

/// Weight-based classification of a 3-bit function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FnClass {
    Constant,
    Balanced,
    Other,
}

impl std::fmt::Display for FnClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FnClass::Constant => write!(f, "constant"),
            FnClass::Balanced => write!(f, "balanced"),
            FnClass::Other => write!(f, "other"),
        }
    }
}

impl BoolFn3 {
    pub fn new(truth: [bool; COMP_DIM]) -> Self {
        BoolFn3 { truth }
    }

    /// Parse a selector: two hex digits (`"0F"`) or an 8-character bit
    /// string (`"00001111"`), both listing `f(0)…f(7)`.
    pub fn parse(selector: &str) -> Result<Self> {
        let s = selector.trim();
        let bad = || Error::BadFunctionSelector(selector.to_string());
        if s.len() == 2 {
            let v = u8::from_str_radix(s, 16).map_err(|_| bad())?;
            Ok(Self::from_index(v))
        } else if s.len() == 8 {
            let mut truth = [false; COMP_DIM];
            for (i, ch) in s.chars().enumerate() {
                truth[i] = match ch {
                    '0' => false,
                    '1' => true,
                    _ => return Err(bad()),
                };
            }
            Ok(BoolFn3 { truth })
        } else {
            Err(bad())
        }
    }

    /// Function index: bit 7 is `f(0)`, bit 0 is `f(7)`, so the first hex
    /// digit encodes `f(0)…f(3)`.
    pub fn from_index(v: u8) -> Self {
        let mut truth = [false; COMP_DIM];
        for (x, t) in truth.iter_mut().enumerate() {
            *t = (v >> (7 - x)) & 1 == 1;
        }
        BoolFn3 { truth }
    }

    pub fn index(&self) -> u8 {
        self.truth
            .iter()
            .enumerate()
            .fold(0, |acc, (x, &t)| acc | ((t as u8) << (7 - x)))
    }

    /// Two-digit hex index, e.g. `0F` for the outputs `00001111`.
    pub fn hex_index(&self) -> String {
        format!("{:02X}", self.index())
    }

    pub fn value(&self, x: usize) -> bool {
        self.truth[x]
    }

    pub fn weight(&self) -> u32 {
        self.truth.iter().filter(|&&t| t).count() as u32
    }

    pub fn classify(&self) -> FnClass {
        match self.weight() {
            0 | 8 => FnClass::Constant,
            4 => FnClass::Balanced,
            _ => FnClass::Other,
        }
    }

    /// The complementary function `f_{FF−x}`.
    pub fn complement(&self) -> Self {
        let mut truth = [false; COMP_DIM];
        for (t, &v) in truth.iter_mut().zip(self.truth.iter()) {
            *t = !v;
        }
        BoolFn3 { truth }
    }

    /// All 2 constant and 70 balanced functions, by ascending index.
    pub fn all_constant_and_balanced() -> Vec<BoolFn3> {
        (0u16..256)
            .map(|v| Self::from_index(v as u8))
            .filter(|f| f.classify() != FnClass::Other)
            .collect()
    }
}

/// Phase-polynomial coefficients in quarter turns mod 4: `c[i]` multiplies
/// `(π/2)·x_i` and `d[k]` multiplies `(π/2)·(x_i⊕x_j)` for the k-th pair.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhasePoly {
    pub c: [u8; 3],
    /// Pair coefficients in [`QUBIT_PAIRS`] order.
    pub d: [u8; 3],
}

pub const QUBIT_PAIRS: [(Qubit, Qubit); 3] = [
    (Qubit::Spin, Qubit::Cyclotron),
    (Qubit::Spin, Qubit::Axial),
    (Qubit::Cyclotron, Qubit::Axial),
];

impl PhasePoly {
    /// Quarter turns accumulated on basis label `x`, mod 4.
    pub fn phase_quarters(&self, x: usize) -> u8 {
        let bits = [(x >> 2) & 1, (x >> 1) & 1, x & 1];
        let mut q = 0usize;
        for (i, &b) in bits.iter().enumerate() {
            q += self.c[i] as usize * b;
        }
        for (k, &(a, b)) in QUBIT_PAIRS.iter().enumerate() {
            let xor = ((x >> a.bit()) & 1) ^ ((x >> b.bit()) & 1);
            q += self.d[k] as usize * xor;
        }
        (q % 4) as u8
    }

    /// Phase signature relative to `x = 0`, for reachability comparisons.
    pub fn signature(&self) -> [u8; COMP_DIM] {
        let base = self.phase_quarters(0);
        let mut sig = [0u8; COMP_DIM];
        for (x, s) in sig.iter_mut().enumerate() {
            *s = (self.phase_quarters(x) + 4 - base) % 4;
        }
        sig
    }
}

/// Signature a polynomial must reproduce for `diag((−1)^{f(x)})`:
/// `2f(x) − 2f(0)` quarter turns mod 4.
pub fn target_signature(f: &BoolFn3) -> [u8; COMP_DIM] {
    let base = 2 * f.value(0) as u8;
    let mut sig = [0u8; COMP_DIM];
    for (x, s) in sig.iter_mut().enumerate() {
        *s = (2 * f.value(x) as u8 + 4 - base) % 4;
    }
    sig
}

/// Integer multilinear coefficients `a_T` of `f`, indexed by the subset
/// bitmask `T` over (spin, cyclotron, axial) with spin as bit 2.
fn moebius_coefficients(f: &BoolFn3) -> [i32; COMP_DIM] {
    let mut a = [0i32; COMP_DIM];
    for (t, coeff) in a.iter_mut().enumerate() {
        let mut sum = 0i32;
        let mut s = t;
        loop {
            let sign = if ((t ^ s) as u32).count_ones().is_multiple_of(2) {
                1
            } else {
                -1
            };
            sum += sign * f.value(s) as i32;
            if s == 0 {
                break;
            }
            s = (s - 1) & t;
        }
        *coeff = sum;
    }
    a
}

/// Synthesize the phase polynomial realizing `diag((−1)^{f(x)})` up to one
/// global phase. Errors if `f` is neither constant nor balanced, or if the
/// reduction fails to reproduce the target diagonal (which would contradict
/// the evenness of the cubic coefficient and must never happen).
pub fn synthesize_phase_poly(f: &BoolFn3) -> Result<PhasePoly> {
    if f.classify() == FnClass::Other {
        return Err(Error::NotConstantOrBalanced { weight: f.weight() });
    }
    let a = moebius_coefficients(f);
    // masks of the single-qubit subsets, in (spin, cyclotron, axial) order
    let masks = [4usize, 2, 1];
    let md = |m: i32| -> u8 { (m.rem_euclid(4)) as u8 };

    let mut c = [0u8; 3];
    for i in 0..3 {
        let mut quarters = 2 * a[masks[i]];
        for j in 0..3 {
            if j != i {
                quarters += a[masks[i] | masks[j]];
            }
        }
        c[i] = md(quarters);
    }
    let d = [
        md(-a[masks[0] | masks[1]]),
        md(-a[masks[0] | masks[2]]),
        md(-a[masks[1] | masks[2]]),
    ];
    let poly = PhasePoly { c, d };
    if poly.signature() != target_signature(f) {
        return Err(Error::NotConstantOrBalanced { weight: f.weight() });
    }
    Ok(poly)
}

fn spin_gate_for_quarters(q: u8) -> Option<SpinGate> {
    match q % 4 {
        0 => None,
        1 => Some(SpinGate::SPlus),
        2 => Some(SpinGate::Z),
        3 => Some(SpinGate::SMinus),
        _ => unreachable!(),
    }
}

fn single_qubit_phase_pulses(q: Qubit, quarters: u8) -> Vec<Pulse> {
    let Some(gate) = spin_gate_for_quarters(quarters) else {
        return Vec::new();
    };
    match q {
        Qubit::Spin => gate.pulses(),
        Qubit::Cyclotron => gates::single_qubit_on_cyclotron(gate)
            .schedule
            .pulses()
            .to_vec(),
        Qubit::Axial => gates::single_qubit_on_axial(gate).schedule.pulses().to_vec(),
    }
}

/// `J_ij(±π/2) = diag(1, ±i, ±i, 1)` on a qubit pair: CNOT, `S±` on the
/// target, CNOT.
fn j_gate_pulses(pair: (Qubit, Qubit), plus: bool) -> Vec<Pulse> {
    let cnot = match pair {
        (Qubit::Spin, Qubit::Cyclotron) => gates::cnot_sc(),
        (Qubit::Spin, Qubit::Axial) => gates::cnot_sa(),
        (Qubit::Cyclotron, Qubit::Axial) => gates::cnot_cyclotron_to_axial(),
        _ => unreachable!("pairs are listed in canonical order"),
    };
    let mut p = cnot.schedule.pulses().to_vec();
    p.extend(single_qubit_phase_pulses(pair.1, if plus { 1 } else { 3 }));
    p.extend(cnot.schedule.pulses().to_vec());
    p
}

/// Pulses for `d` quarter turns on `x_i⊕x_j`: repeated `J_ij(+π/2)` for
/// `d = 1, 2` and a single `J_ij(−π/2)` for `d = 3`.
fn pair_phase_pulses(pair: (Qubit, Qubit), d: u8) -> Vec<Pulse> {
    match d % 4 {
        0 => Vec::new(),
        1 => j_gate_pulses(pair, true),
        2 => {
            let mut p = j_gate_pulses(pair, true);
            p.extend(j_gate_pulses(pair, true));
            p
        }
        3 => j_gate_pulses(pair, false),
        _ => unreachable!(),
    }
}

/// Emit the pulse schedule realizing a phase polynomial.
pub fn oracle_schedule(poly: &PhasePoly) -> Schedule {
    let mut pulses = Vec::new();
    for (i, q) in [Qubit::Spin, Qubit::Cyclotron, Qubit::Axial]
        .into_iter()
        .enumerate()
    {
        pulses.extend(single_qubit_phase_pulses(q, poly.c[i]));
    }
    for (k, &pair) in QUBIT_PAIRS.iter().enumerate() {
        pulses.extend(pair_phase_pulses(pair, poly.d[k]));
    }
    Schedule::new("oracle", pulses)
}

/// The phase oracle `U_f` with `U_f|x⟩ = (−1)^{f(x)}|x⟩` on the
/// computational block, composed from its pulse schedule. `f_{00}` has an
/// empty schedule and yields the identity.
pub fn uf_operator(f: &BoolFn3, eta: LambDicke, cfg: &SpaceConfig) -> Result<Operator> {
    let sched = oracle_schedule(&synthesize_phase_poly(f)?);
    if sched.is_empty() {
        return Ok(Operator::identity(cfg.dim()));
    }
    compose(&sched, eta, cfg)
}

/// Verify that the composed oracle block equals `e^{iγ}·diag((−1)^{f(x)})`
/// and return the exact signed diagonal it realizes.
///
/// Pulse products carry uncontrollable global phases (the schedules for a
/// complement pair can even coincide), so the oracle a schedule realizes is
/// defined up to `e^{iγ}`; the signed diagonal below is the phase-free part,
/// anchored by `(−1)^{f(0)}`.
pub fn realized_oracle_diagonal(
    f: &BoolFn3,
    eta: LambDicke,
    cfg: &SpaceConfig,
) -> Result<[f64; COMP_DIM]> {
    let block = uf_operator(f, eta, cfg)?.computational_block(cfg);
    let anchor = block[[0, 0]];
    if (anchor.norm() - 1.0).abs() > 1e-8 {
        return Err(Error::NotUnitary {
            defect: (anchor.norm() - 1.0).abs(),
        });
    }
    let global = anchor * if f.value(0) { -1.0 } else { 1.0 };
    let mut diag = [0.0f64; COMP_DIM];
    for x in 0..COMP_DIM {
        let expect = if f.value(x) { -1.0 } else { 1.0 };
        let dev = (block[[x, x]] - global * expect).norm();
        if dev > 1e-8 {
            return Err(Error::NotUnitary { defect: dev });
        }
        diag[x] = expect;
    }
    for r in 0..COMP_DIM {
        for c in 0..COMP_DIM {
            if r != c && block[[r, c]].norm() > 1e-8 {
                return Err(Error::NotUnitary {
                    defect: block[[r, c]].norm(),
                });
            }
        }
    }
    Ok(diag)
}

/// Outcome of one Deutsch-Jozsa run.
#[derive(Debug, Clone)]
pub struct DjResult {
    pub hex_index: String,
    /// Probabilities of the eight computational outcomes, label order.
    pub probabilities: [f64; COMP_DIM],
    pub classification: FnClass,
    pub leakage: f64,
    pub boundary_max: f64,
    pub pulse_count: usize,
}

impl DjResult {
    pub fn p000(&self) -> f64 {
        self.probabilities[0]
    }
}

fn hadamard_all_pulses() -> Vec<Pulse> {
    let mut p = SpinGate::Hadamard.pulses();
    p.extend(
        gates::single_qubit_on_cyclotron(SpinGate::Hadamard)
            .schedule
            .pulses()
            .to_vec(),
    );
    p.extend(
        gates::single_qubit_on_axial(SpinGate::Hadamard)
            .schedule
            .pulses()
            .to_vec(),
    );
    p
}

/// The full pulse schedule of one Deutsch-Jozsa run: Hadamards on all three
/// qubits, the phase oracle, Hadamards again.
pub fn dj_schedule(f: &BoolFn3) -> Result<Schedule> {
    let poly = synthesize_phase_poly(f)?;
    let mut pulses = hadamard_all_pulses();
    pulses.extend(oracle_schedule(&poly).pulses().to_vec());
    pulses.extend(hadamard_all_pulses());
    Ok(Schedule::new(format!("dj_{}", f.hex_index()), pulses))
}

/// Run the Deutsch-Jozsa protocol for `f` at pulse level: initialize
/// `|000⟩`, Hadamard every qubit, apply `U_f`, Hadamard again, and read the
/// computational probabilities. `P(|000⟩) > 1/2` classifies `f` as constant.
pub fn run_dj(f: &BoolFn3, eta: LambDicke, cfg: &SpaceConfig) -> Result<DjResult> {
    let sched = dj_schedule(f)?;
    let init = StateVector::computational(cfg, 0);
    let run = run_schedule(&init, &sched, eta, cfg);
    let probabilities = run.final_state.computational_probabilities(cfg);
    let classification = if probabilities[0] > 0.5 {
        FnClass::Constant
    } else {
        FnClass::Balanced
    };
    Ok(DjResult {
        hex_index: f.hex_index(),
        probabilities,
        classification,
        leakage: leakage(&run.final_state, cfg),
        boundary_max: run.boundary_max,
        pulse_count: sched.len(),
    })
}

/// Counts for the eight computational outcomes plus a ninth "leaked" bin.
pub type MeasurementCounts = [u64; COMP_DIM + 1];

/// Reproducible multinomial sampling of projective readout. Probabilities
/// may sum to less than one; the deficit is the leaked outcome.
pub fn sample_measurement(
    probabilities: &[f64; COMP_DIM],
    seed: u64,
    shots: u64,
) -> Result<MeasurementCounts> {
    let mut clamped = [0.0f64; COMP_DIM];
    for (i, &p) in probabilities.iter().enumerate() {
        if p < -1e-12 {
            return Err(Error::NegativeProbability { index: i, value: p });
        }
        clamped[i] = p.max(0.0);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut counts = [0u64; COMP_DIM + 1];
    for _ in 0..shots {
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        let mut outcome = COMP_DIM; // leaked unless a bin claims the draw
        for (i, &p) in clamped.iter().enumerate() {
            acc += p;
            if u < acc {
                outcome = i;
                break;
            }
        }
        counts[outcome] += 1;
    }
    Ok(counts)
}
