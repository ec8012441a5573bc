//! Dense statevector over `2^n` complex amplitudes.
//!
//! States are immutable once constructed; transforms hand back fresh values.
//! Every public constructor and transform keeps the squared norm within
//! `1e-12` of one, so downstream code can treat normalization as given.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Hard cap on the register size; 2^24 amplitudes is the largest state we own.
pub const MAX_QUBITS: u32 = 24;

/// Constructors reject inputs whose squared norm strays further than this.
pub const NORM_TOL: f64 = 1e-12;

/// Sampling refuses states whose squared norm strays further than this.
const SAMPLE_NORM_TOL: f64 = 1e-9;

/// A pure state of `n` qubits stored as `2^n` amplitudes in index order.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    n: u32,
    amps: Vec<Complex64>,
}

impl StateVector {
    /// The computational basis state `|index>` of an `n`-qubit register.
    pub fn basis_state(n: u32, index: usize) -> Result<Self> {
        check_qubit_count(n)?;
        let len = 1usize << n;
        if index >= len {
            return Err(Error::IndexOutOfRange { index, len });
        }
        let mut amps = vec![Complex64::new(0.0, 0.0); len];
        amps[index] = Complex64::new(1.0, 0.0);
        Ok(StateVector { n, amps })
    }

    /// The uniform superposition with amplitude `1/sqrt(2^n)` everywhere.
    pub fn uniform(n: u32) -> Result<Self> {
        check_qubit_count(n)?;
        let len = 1usize << n;
        let a = Complex64::new(1.0 / (len as f64).sqrt(), 0.0);
        Ok(StateVector { n, amps: vec![a; len] })
    }

    /// Wraps an amplitude vector, validating length and normalization.
    pub fn new(amps: Vec<Complex64>) -> Result<Self> {
        let len = amps.len();
        if len < 2 || !len.is_power_of_two() {
            return Err(Error::BadLength { len });
        }
        let n = len.trailing_zeros();
        if n > MAX_QUBITS {
            return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
        }
        let norm_sqr = norm_sqr_slice(&amps);
        if (norm_sqr - 1.0).abs() > NORM_TOL {
            return Err(Error::Unnormalized { norm_sqr });
        }
        Ok(StateVector { n, amps })
    }

    pub(crate) fn from_parts_unchecked(n: u32, amps: Vec<Complex64>) -> Self {
        debug_assert_eq!(amps.len(), 1usize << n);
        StateVector { n, amps }
    }

    pub fn qubits(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.amps.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, index: usize) -> Result<Complex64> {
        self.amps
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange { index, len: self.amps.len() })
    }

    pub(crate) fn into_amplitudes(self) -> Vec<Complex64> {
        self.amps
    }

    /// `<self|other>` with the left argument conjugated.
    pub fn inner_product(&self, other: &StateVector) -> Result<Complex64> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch { left: self.n, right: other.n });
        }
        // Neumaier compensation on both components; n = 20 sums a million
        // terms and the naive error would eat into the 1e-12 budgets.
        let mut sum = Complex64::new(0.0, 0.0);
        let mut comp = Complex64::new(0.0, 0.0);
        for (a, b) in self.amps.iter().zip(&other.amps) {
            let term = a.conj() * b;
            let t = sum + term;
            comp.re += branch_comp(sum.re, term.re, t.re);
            comp.im += branch_comp(sum.im, term.im, t.im);
            sum = t;
        }
        Ok(sum + comp)
    }

    /// Squared magnitude of one amplitude.
    pub fn probability(&self, index: usize) -> Result<f64> {
        Ok(self.amplitude(index)?.norm_sqr())
    }

    /// Sum of all outcome probabilities; one within `1e-12` by construction.
    pub fn norm_sqr(&self) -> f64 {
        norm_sqr_slice(&self.amps)
    }

    /// Draws one measurement outcome in the computational basis.
    ///
    /// The same seed always yields the same outcome; reproducibility is the
    /// point, so there is no implicit thread-RNG path.
    pub fn sample(&self, seed: u64) -> Result<usize> {
        let norm_sqr = self.norm_sqr();
        if (norm_sqr - 1.0).abs() > SAMPLE_NORM_TOL {
            return Err(Error::Unnormalized { norm_sqr });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let u: f64 = rng.gen();
        let mut acc = 0.0;
        for (i, a) in self.amps.iter().enumerate() {
            acc += a.norm_sqr();
            if u < acc {
                return Ok(i);
            }
        }
        // Rounding can leave acc a hair under one; the tail owns the slack.
        Ok(self.amps.len() - 1)
    }
}

pub(crate) fn check_qubit_count(n: u32) -> Result<()> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
    }
    Ok(())
}

fn branch_comp(sum: f64, term: f64, t: f64) -> f64 {
    if sum.abs() >= term.abs() {
        (sum - t) + term
    } else {
        (term - t) + sum
    }
}

/// Neumaier-compensated sum of squared magnitudes.
pub(crate) fn norm_sqr_slice(amps: &[Complex64]) -> f64 {
    let mut sum = 0.0;
    let mut comp = 0.0;
    for a in amps {
        let term = a.norm_sqr();
        let t = sum + term;
        comp += branch_comp(sum, term, t);
        sum = t;
    }
    sum + comp
}
