//! Search dynamics: reflections, the two iteration operators, and traced runs.
//!
//! One iteration is the operator `-T' I_k T O_w`: the oracle flips the sign of
//! the target amplitude, the transform pair conjugates a single-coordinate
//! sign flip at `k` into a reflection about the prepared state `T'|k>`, and
//! the leading minus is applied literally as a global negation. The wavelet
//! variant uses the Haar pair with a caller-chosen `k`; the baseline uses the
//! Walsh-Hadamard pair with `k = 0`, whose prepared state is the uniform
//! superposition. Each iteration consumes exactly one oracle call.

use num_complex::Complex64;
use std::f64::consts::{FRAC_1_SQRT_2, PI};

use crate::error::{Error, Result};
use crate::haar;
use crate::state::StateVector;

/// Resolution used when deciding that a probability stopped improving.
const PEAK_TOL: f64 = 1e-12;

// ---------------------------------------------------------------------------
// Transform pairs
// ---------------------------------------------------------------------------

/// Orthogonal transform pair used to conjugate the initial-state reflection.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformPair {
    /// Haar wavelet transform; prepared states are wavelet basis functions.
    Haar,
    /// Walsh-Hadamard transform; prepared state for `k = 0` is uniform.
    WalshHadamard,
}

/// In-place Walsh-Hadamard butterfly, self-inverse with 1/sqrt(2) per stage.
pub(crate) fn walsh_hadamard_in_place(amps: &mut [Complex64]) {
    let len = amps.len();
    let mut h = 1;
    while h < len {
        let mut start = 0;
        while start < len {
            for i in start..start + h {
                let a = amps[i];
                let b = amps[i + h];
                amps[i] = (a + b) * FRAC_1_SQRT_2;
                amps[i + h] = (a - b) * FRAC_1_SQRT_2;
            }
            start += 2 * h;
        }
        h *= 2;
    }
}

impl TransformPair {
    pub(crate) fn forward_in_place(self, amps: &mut [Complex64], scratch: &mut [Complex64]) {
        match self {
            TransformPair::Haar => {
                haar::forward_in_place(amps, scratch);
            }
            TransformPair::WalshHadamard => walsh_hadamard_in_place(amps),
        }
    }

    pub(crate) fn inverse_in_place(self, amps: &mut [Complex64], scratch: &mut [Complex64]) {
        match self {
            TransformPair::Haar => {
                haar::inverse_in_place(amps, scratch);
            }
            TransformPair::WalshHadamard => walsh_hadamard_in_place(amps),
        }
    }

    /// Applies the forward transform, returning a new state.
    pub fn forward(self, state: &StateVector) -> StateVector {
        let mut amps = state.amplitudes().to_vec();
        let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
        self.forward_in_place(&mut amps, &mut scratch);
        StateVector::from_parts_unchecked(state.qubits(), amps)
    }

    /// Applies the inverse transform, returning a new state.
    pub fn inverse(self, state: &StateVector) -> StateVector {
        let mut amps = state.amplitudes().to_vec();
        let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
        self.inverse_in_place(&mut amps, &mut scratch);
        StateVector::from_parts_unchecked(state.qubits(), amps)
    }

    /// The state `T'|k>` about which `reflect_about_initial` reflects.
    pub fn prepared_state(self, n: u32, k: usize) -> Result<StateVector> {
        Ok(self.inverse(&StateVector::basis_state(n, k)?))
    }
}

// ---------------------------------------------------------------------------
// Reflections
// ---------------------------------------------------------------------------

/// The oracle: flips the sign of the amplitude at the target index.
pub fn oracle_reflect(state: &StateVector, w: usize) -> Result<StateVector> {
    if w >= state.len() {
        return Err(Error::IndexOutOfRange { index: w, len: state.len() });
    }
    let mut amps = state.amplitudes().to_vec();
    amps[w] = -amps[w];
    Ok(StateVector::from_parts_unchecked(state.qubits(), amps))
}

/// Reflection `(1 - 2|psi><psi|)` about `|psi> = transform.inverse(|k>)`,
/// realized by conjugation: forward transform, sign flip at `k`, inverse
/// transform. No global minus here; the iterate operators add it.
pub fn reflect_about_initial(
    state: &StateVector,
    k: usize,
    transform: TransformPair,
) -> Result<StateVector> {
    if k >= state.len() {
        return Err(Error::IndexOutOfRange { index: k, len: state.len() });
    }
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
    transform.forward_in_place(&mut amps, &mut scratch);
    amps[k] = -amps[k];
    transform.inverse_in_place(&mut amps, &mut scratch);
    Ok(StateVector::from_parts_unchecked(state.qubits(), amps))
}

// ---------------------------------------------------------------------------
// Search configuration
// ---------------------------------------------------------------------------

/// Which iteration operator a run uses, plus the wavelet index for the
/// wavelet variant. The baseline always prepares the uniform state.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchVariant {
    Grover,
    Wqsa { k: usize },
}

/// Full description of one search run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub n: u32,
    pub target: usize,
    pub variant: SearchVariant,
    /// Iteration cap; `None` selects ceil(pi * sqrt(N1)).
    pub max_iterations: Option<u64>,
    /// When false the trace keeps no per-iteration entries, only the summary.
    pub record_trace: bool,
}

impl SearchConfig {
    pub fn new(n: u32, target: usize, variant: SearchVariant) -> Result<Self> {
        let config = SearchConfig { n, target, variant, max_iterations: None, record_trace: true };
        config.validate()?;
        Ok(config)
    }

    pub fn with_max_iterations(mut self, cap: u64) -> Self {
        self.max_iterations = Some(cap);
        self
    }

    pub fn with_trace(mut self, record: bool) -> Self {
        self.record_trace = record;
        self
    }

    pub fn validate(&self) -> Result<()> {
        crate::state::check_qubit_count(self.n)?;
        let size = 1usize << self.n;
        if self.target >= size {
            return Err(Error::IndexOutOfRange { index: self.target, len: size });
        }
        if let SearchVariant::Wqsa { k } = self.variant {
            if k >= size {
                return Err(Error::IndexOutOfRange { index: k, len: size });
            }
        }
        Ok(())
    }

    /// Effective search-space size N1: the support of the prepared state.
    pub fn block_size(&self) -> Result<u64> {
        match self.variant {
            SearchVariant::Grover => Ok(1u64 << self.n),
            SearchVariant::Wqsa { k } => Ok(haar::index_to_scale(self.n, k)?.n1 as u64),
        }
    }

    /// Prepared state the run starts from.
    pub fn initial_state(&self) -> Result<StateVector> {
        match self.variant {
            SearchVariant::Grover => StateVector::uniform(self.n),
            SearchVariant::Wqsa { k } => haar::wavelet_initial_state(self.n, k),
        }
    }

    /// Default cap ceil(pi * sqrt(N1)): one full rotation period, so the
    /// first probability peak is always interior to the trace.
    pub fn default_max_iterations(&self) -> Result<u64> {
        let n1 = self.block_size()? as f64;
        Ok((PI * n1.sqrt()).ceil() as u64)
    }

    fn transform(&self) -> (TransformPair, usize) {
        match self.variant {
            SearchVariant::Grover => (TransformPair::WalshHadamard, 0),
            SearchVariant::Wqsa { k } => (TransformPair::Haar, k),
        }
    }
}

// ---------------------------------------------------------------------------
// Traces
// ---------------------------------------------------------------------------

/// One recorded step: probability at the target after `m` iterations and the
/// oracle calls spent to get there (always exactly `m`).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceEntry {
    pub m: u64,
    pub p_target: f64,
    pub oracle_calls: u64,
}

/// Record of a full run.
///
/// `m_star` is the first iteration at which the target probability stops
/// improving (by more than 1e-12): query complexity is "first time good
/// enough", and later, marginally higher peaks of the oscillation do not
/// count. For a flat trace this is 0. `p_star` is the probability there.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchTrace {
    pub entries: Vec<TraceEntry>,
    pub final_state: StateVector,
    pub m_star: u64,
    pub p_star: f64,
    /// Total oracle calls consumed over the whole run.
    pub oracle_calls: u64,
}

// ---------------------------------------------------------------------------
// Iteration operators
// ---------------------------------------------------------------------------

/// Shared kernel: oracle flip, conjugated reflection, global minus.
fn iterate_in_place(
    amps: &mut [Complex64],
    scratch: &mut [Complex64],
    target: usize,
    flip: usize,
    pair: TransformPair,
) {
    amps[target] = -amps[target];
    pair.forward_in_place(amps, scratch);
    amps[flip] = -amps[flip];
    pair.inverse_in_place(amps, scratch);
    for a in amps.iter_mut() {
        *a = -*a;
    }
}

fn iterate_checked(state: &StateVector, config: &SearchConfig) -> Result<StateVector> {
    config.validate()?;
    if state.qubits() != config.n {
        return Err(Error::DimensionMismatch { left: state.qubits(), right: config.n });
    }
    let (pair, flip) = config.transform();
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
    iterate_in_place(&mut amps, &mut scratch, config.target, flip, pair);
    Ok(StateVector::from_parts_unchecked(state.qubits(), amps))
}

/// One wavelet-variant iteration. Exactly one oracle call.
pub fn wqsa_iterate(state: &StateVector, config: &SearchConfig) -> Result<StateVector> {
    match config.variant {
        SearchVariant::Wqsa { .. } => iterate_checked(state, config),
        SearchVariant::Grover => Err(Error::VariantMismatch { expected: "wqsa" }),
    }
}

/// One baseline iteration. Exactly one oracle call.
pub fn grover_iterate(state: &StateVector, config: &SearchConfig) -> Result<StateVector> {
    match config.variant {
        SearchVariant::Grover => iterate_checked(state, config),
        SearchVariant::Wqsa { .. } => Err(Error::VariantMismatch { expected: "grover" }),
    }
}

// ---------------------------------------------------------------------------
// Traced runs
// ---------------------------------------------------------------------------

/// Runs a full search: prepares the initial state, iterates up to the cap,
/// and records the per-step target probability.
pub fn run_search(config: &SearchConfig) -> Result<SearchTrace> {
    config.validate()?;
    let cap = match config.max_iterations {
        Some(cap) => cap,
        None => config.default_max_iterations()?,
    };
    let (pair, flip) = config.transform();

    let mut amps = config.initial_state()?.into_amplitudes();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];

    let mut ps = Vec::with_capacity(cap as usize + 1);
    ps.push(amps[config.target].norm_sqr());
    for _ in 0..cap {
        iterate_in_place(&mut amps, &mut scratch, config.target, flip, pair);
        ps.push(amps[config.target].norm_sqr());
    }

    // First non-improving step. The in-block probability rises monotonically
    // to its first peak, so this lands on that peak (earliest entry on ties).
    let mut m_star = ps.len() - 1;
    for m in 0..ps.len() - 1 {
        if ps[m + 1] < ps[m] + PEAK_TOL {
            m_star = m;
            break;
        }
    }

    let entries = if config.record_trace {
        ps.iter()
            .enumerate()
            .map(|(m, &p)| TraceEntry { m: m as u64, p_target: p, oracle_calls: m as u64 })
            .collect()
    } else {
        Vec::new()
    };

    Ok(SearchTrace {
        entries,
        final_state: StateVector::from_parts_unchecked(config.n, amps),
        m_star: m_star as u64,
        p_star: ps[m_star],
        oracle_calls: cap,
    })
}
