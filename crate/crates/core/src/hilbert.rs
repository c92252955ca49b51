//! Truncated Hilbert space of the trapped electron: basis indexing over
//! `|j n l⟩` (spin, cyclotron Fock level, axial Fock level), state vectors,
//! dense operators, and the fidelity/leakage metrics.
//!
//! Basis ordering is spin-major, then cyclotron, then axial, so the flat
//! index is `(j·n_cyc + n)·n_ax + l`. The computational subspace is the
//! eight states with `n ≤ 1` and `l ≤ 1`; read as a 3-bit string `jnl` with
//! spin as the most significant bit.

use ndarray::{Array1, Array2};
use num_complex::Complex64 as C64;

use crate::{Error, Result};

/// Tolerance for the unitarity invariant `‖U†U − I‖_max`.
pub const UNITARY_TOL: f64 = 1e-12;

/// Dimension of the computational subspace.
pub const COMP_DIM: usize = 8;

/// The three qubits hosted by the electron, in computational bit order
/// (spin is the most significant bit of the 3-bit basis label).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Qubit {
    Spin,
    Cyclotron,
    Axial,
}

impl Qubit {
    /// Bit position in the 3-bit computational label.
    pub fn bit(self) -> usize {
        match self {
            Qubit::Spin => 2,
            Qubit::Cyclotron => 1,
            Qubit::Axial => 0,
        }
    }
}

/// Fock-space truncation of the two oscillators.
///
/// Levels `0..n_cyc-1` (cyclotron) and `0..n_ax-1` (axial) are kept; the
/// total dimension is `D = 2·n_cyc·n_ax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceConfig {
    n_cyc: usize,
    n_ax: usize,
}

impl Default for SpaceConfig {
    /// Six levels per oscillator: everything in the gate library reaches at
    /// most level 2 from computational inputs, leaving a three-level audit
    /// buffer for the boundary diagnostic.
    fn default() -> Self {
        SpaceConfig { n_cyc: 6, n_ax: 6 }
    }
}

impl SpaceConfig {
    pub fn new(n_cyc: usize, n_ax: usize) -> Result<Self> {
        if n_cyc < 2 || n_ax < 2 {
            return Err(Error::InvalidTruncation { n_cyc, n_ax });
        }
        Ok(SpaceConfig { n_cyc, n_ax })
    }

    pub fn n_cyc(&self) -> usize {
        self.n_cyc
    }

    pub fn n_ax(&self) -> usize {
        self.n_ax
    }

    /// Total dimension `2·n_cyc·n_ax`.
    pub fn dim(&self) -> usize {
        2 * self.n_cyc * self.n_ax
    }

    /// Flat index of `|j n l⟩`.
    pub fn flat_index(&self, j: usize, n: usize, l: usize) -> Result<usize> {
        if j > 1 || n >= self.n_cyc || l >= self.n_ax {
            return Err(Error::IndexOutOfRange {
                j,
                n,
                l,
                n_cyc: self.n_cyc,
                n_ax: self.n_ax,
            });
        }
        Ok((j * self.n_cyc + n) * self.n_ax + l)
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn unflatten(&self, idx: usize) -> BasisIndex {
        debug_assert!(idx < self.dim());
        let l = idx % self.n_ax;
        let rest = idx / self.n_ax;
        let n = rest % self.n_cyc;
        let j = rest / self.n_cyc;
        BasisIndex { j, n, l }
    }

    /// Flat indices of the computational states, ordered by the 3-bit label
    /// `c = 4j + 2n + l`.
    pub fn computational_indices(&self) -> [usize; COMP_DIM] {
        let mut out = [0usize; COMP_DIM];
        for (c, slot) in out.iter_mut().enumerate() {
            let (j, n, l) = ((c >> 2) & 1, (c >> 1) & 1, c & 1);
            *slot = (j * self.n_cyc + n) * self.n_ax + l;
        }
        out
    }

    /// Whether a flat index lies on the truncation boundary
    /// (`n = n_cyc−1` or `l = n_ax−1`).
    pub fn is_boundary(&self, idx: usize) -> bool {
        let b = self.unflatten(idx);
        b.n == self.n_cyc - 1 || b.l == self.n_ax - 1
    }
}

/// Decomposed basis label `|j n l⟩`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BasisIndex {
    /// Spin: 0 = `|↓⟩` (logical 0), 1 = `|↑⟩` (logical 1).
    pub j: usize,
    /// Cyclotron Fock level.
    pub n: usize,
    /// Axial Fock level.
    pub l: usize,
}

/// Normalized complex amplitude vector over the truncated basis.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    amps: Array1<C64>,
}

impl StateVector {
    /// Basis state `|j n l⟩`.
    pub fn basis(cfg: &SpaceConfig, j: usize, n: usize, l: usize) -> Result<Self> {
        let idx = cfg.flat_index(j, n, l)?;
        let mut amps = Array1::zeros(cfg.dim());
        amps[idx] = C64::new(1.0, 0.0);
        Ok(StateVector { amps })
    }

    /// Computational basis state from the 3-bit label `c = 4j + 2n + l`.
    pub fn computational(cfg: &SpaceConfig, c: usize) -> Self {
        assert!(c < COMP_DIM, "computational label must be 0..8");
        Self::basis(cfg, (c >> 2) & 1, (c >> 1) & 1, c & 1).expect("computational state exists")
    }

    /// Build from raw amplitudes, requiring normalization within `tol`.
    pub fn from_amplitudes(amps: Array1<C64>, tol: f64) -> Result<Self> {
        let norm_sq: f64 = amps.iter().map(|a| a.norm_sqr()).sum();
        let deviation = (norm_sq.sqrt() - 1.0).abs();
        if deviation > tol {
            return Err(Error::NotNormalized { deviation });
        }
        Ok(StateVector { amps })
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &Array1<C64> {
        &self.amps
    }

    pub(crate) fn amplitudes_mut(&mut self) -> &mut Array1<C64> {
        &mut self.amps
    }

    pub fn amplitude(&self, idx: usize) -> C64 {
        self.amps[idx]
    }

    pub fn probability(&self, idx: usize) -> f64 {
        self.amps[idx].norm_sqr()
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Probabilities of the eight computational states, by 3-bit label.
    pub fn computational_probabilities(&self, cfg: &SpaceConfig) -> [f64; COMP_DIM] {
        let mut out = [0.0; COMP_DIM];
        for (c, idx) in cfg.computational_indices().into_iter().enumerate() {
            out[c] = self.amps[idx].norm_sqr();
        }
        out
    }

    /// Population on the truncation boundary levels.
    pub fn boundary_population(&self, cfg: &SpaceConfig) -> f64 {
        self.amps
            .iter()
            .enumerate()
            .filter(|(i, _)| cfg.is_boundary(*i))
            .map(|(_, a)| a.norm_sqr())
            .sum()
    }
}

/// Dense operator on the truncated space.
///
/// The `unitary` flag is set by construction paths that guarantee
/// `‖U†U − I‖_max ≤ 1e−12` (pulse propagators, their compositions, and
/// re-unitarized integrator output).
#[derive(Debug, Clone, PartialEq)]
pub struct Operator {
    mat: Array2<C64>,
    unitary: bool,
}

impl Operator {
    pub fn identity(dim: usize) -> Self {
        Operator {
            mat: Array2::eye(dim),
            unitary: true,
        }
    }

    /// Wrap a matrix without claiming unitarity.
    pub fn from_matrix(mat: Array2<C64>) -> Self {
        assert_eq!(mat.nrows(), mat.ncols(), "operator must be square");
        Operator {
            mat,
            unitary: false,
        }
    }

    /// Wrap a matrix that must be unitary; verified against [`UNITARY_TOL`].
    pub fn unitary_from_matrix(mat: Array2<C64>) -> Result<Self> {
        let op = Operator { mat, unitary: true };
        let defect = op.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(op)
    }

    /// Construction-time promise of unitarity (exact analytic blocks).
    pub(crate) fn unitary_unchecked(mat: Array2<C64>) -> Self {
        Operator { mat, unitary: true }
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn matrix(&self) -> &Array2<C64> {
        &self.mat
    }

    pub fn is_unitary(&self) -> bool {
        self.unitary
    }

    /// `‖U†U − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        let d = self.dim();
        let gram = self.dagger_matrix().dot(&self.mat);
        let mut worst = 0.0f64;
        for r in 0..d {
            for c in 0..d {
                let expect = if r == c { 1.0 } else { 0.0 };
                let dev = (gram[[r, c]] - C64::new(expect, 0.0)).norm();
                worst = worst.max(dev);
            }
        }
        worst
    }

    fn dagger_matrix(&self) -> Array2<C64> {
        self.mat.t().mapv(|a| a.conj())
    }

    pub fn dagger(&self) -> Operator {
        Operator {
            mat: self.dagger_matrix(),
            unitary: self.unitary,
        }
    }

    /// Matrix product `self · rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Operator) -> Operator {
        assert_eq!(self.dim(), rhs.dim());
        Operator {
            mat: self.mat.dot(&rhs.mat),
            unitary: self.unitary && rhs.unitary,
        }
    }

    pub fn apply(&self, state: &StateVector) -> StateVector {
        assert_eq!(self.dim(), state.dim());
        StateVector {
            amps: self.mat.dot(state.amplitudes()),
        }
    }

    /// The 8×8 computational block `⟨c'|U|c⟩` in 3-bit label order.
    pub fn computational_block(&self, cfg: &SpaceConfig) -> Array2<C64> {
        let idx = cfg.computational_indices();
        Array2::from_shape_fn((COMP_DIM, COMP_DIM), |(r, c)| self.mat[[idx[r], idx[c]]])
    }

    /// Max-norm distance to another operator.
    pub fn max_distance(&self, other: &Operator) -> f64 {
        assert_eq!(self.dim(), other.dim());
        self.mat
            .iter()
            .zip(other.mat.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

/// Diagonal 0/1 projector onto the computational subspace; rank 8.
pub fn subspace_projector(cfg: &SpaceConfig) -> Operator {
    let d = cfg.dim();
    let mut mat = Array2::zeros((d, d));
    for idx in cfg.computational_indices() {
        mat[[idx, idx]] = C64::new(1.0, 0.0);
    }
    let unitary = d == COMP_DIM;
    Operator { mat, unitary }
}

/// Probability weight outside the computational subspace: `1 − ‖P·ψ‖²`.
pub fn leakage(state: &StateVector, cfg: &SpaceConfig) -> f64 {
    let inside: f64 = cfg
        .computational_indices()
        .into_iter()
        .map(|idx| state.probability(idx))
        .sum();
    (1.0 - inside).max(0.0)
}

/// Named ideal 8×8 unitary on the computational subspace, qubit order
/// (spin, cyclotron, axial).
#[derive(Debug, Clone, PartialEq)]
pub struct GateSpec {
    name: String,
    ideal: Array2<C64>,
}

impl GateSpec {
    pub fn new(name: impl Into<String>, ideal: Array2<C64>) -> Result<Self> {
        if ideal.nrows() != COMP_DIM || ideal.ncols() != COMP_DIM {
            return Err(Error::DimensionMismatch {
                expected: COMP_DIM,
                got: ideal.nrows(),
            });
        }
        let probe = Operator {
            mat: ideal,
            unitary: true,
        };
        let defect = probe.unitarity_defect();
        if defect > UNITARY_TOL {
            return Err(Error::NotUnitary { defect });
        }
        Ok(GateSpec {
            name: name.into(),
            ideal: probe.mat,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn ideal(&self) -> &Array2<C64> {
        &self.ideal
    }

    /// A single-qubit gate acting on one of the three qubits.
    pub fn single_qubit(name: impl Into<String>, q: Qubit, u: [[C64; 2]; 2]) -> Self {
        let bit = q.bit();
        let ideal = Array2::from_shape_fn((COMP_DIM, COMP_DIM), |(r, c)| {
            if r & !(1 << bit) != c & !(1 << bit) {
                C64::new(0.0, 0.0)
            } else {
                u[(r >> bit) & 1][(c >> bit) & 1]
            }
        });
        GateSpec::new(name, ideal).expect("single-qubit embedding is unitary")
    }

    /// A diagonal gate given by its eight phases.
    pub fn diagonal(name: impl Into<String>, entries: [C64; COMP_DIM]) -> Result<Self> {
        let mut ideal = Array2::zeros((COMP_DIM, COMP_DIM));
        for (c, e) in entries.into_iter().enumerate() {
            ideal[[c, c]] = e;
        }
        GateSpec::new(name, ideal)
    }

    /// A classical permutation of basis labels, `c ↦ map(c)`.
    pub fn permutation(name: impl Into<String>, map: impl Fn(usize) -> usize) -> Self {
        let mut ideal = Array2::zeros((COMP_DIM, COMP_DIM));
        for c in 0..COMP_DIM {
            ideal[[map(c), c]] = C64::new(1.0, 0.0);
        }
        GateSpec::new(name, ideal).expect("permutation is unitary")
    }

    /// SWAP of two qubits.
    pub fn swap(name: impl Into<String>, a: Qubit, b: Qubit) -> Self {
        let (ba, bb) = (a.bit(), b.bit());
        GateSpec::permutation(name, move |c| {
            let (va, vb) = ((c >> ba) & 1, (c >> bb) & 1);
            (c & !(1 << ba) & !(1 << bb)) | (vb << ba) | (va << bb)
        })
    }

    /// CNOT with the given control and target qubits.
    pub fn cnot(name: impl Into<String>, control: Qubit, target: Qubit) -> Self {
        let (bc, bt) = (control.bit(), target.bit());
        GateSpec::permutation(name, move |c| c ^ (((c >> bc) & 1) << bt))
    }

    /// CZ on two qubits (−1 when both are 1).
    pub fn cz(name: impl Into<String>, a: Qubit, b: Qubit) -> Self {
        let (ba, bb) = (a.bit(), b.bit());
        let ideal = Array2::from_shape_fn((COMP_DIM, COMP_DIM), |(r, c)| {
            if r != c {
                C64::new(0.0, 0.0)
            } else if (c >> ba) & 1 == 1 && (c >> bb) & 1 == 1 {
                C64::new(-1.0, 0.0)
            } else {
                C64::new(1.0, 0.0)
            }
        });
        GateSpec::new(name, ideal).expect("cz is unitary")
    }
}

/// Global-phase-invariant gate fidelity: restrict `actual` to the 8×8
/// computational block `A` and return `|Tr(ideal†·A)|/8`. Equals 1 exactly
/// when `A = e^{iγ}·ideal` and no population leaks.
pub fn gate_fidelity(actual: &Operator, spec: &GateSpec, cfg: &SpaceConfig) -> f64 {
    let block = actual.computational_block(cfg);
    let mut tr = C64::new(0.0, 0.0);
    for r in 0..COMP_DIM {
        for c in 0..COMP_DIM {
            tr += spec.ideal[[c, r]].conj() * block[[c, r]];
        }
    }
    tr.norm() / COMP_DIM as f64
}
