//! Haar wavelet transform and its index bookkeeping.
//!
//! The transform is the composition `W = W_n ... W_2 W_1`, where the level
//! operator `W_level` acts on the leading `2^(n-level+1)` amplitudes and
//! leaves the rest alone: adjacent pairs are mapped to averages
//! `(x_{2i} + x_{2i+1})/sqrt(2)` stored in the first half of that range and
//! details `(x_{2i} - x_{2i+1})/sqrt(2)` stored in the second half. Level 1
//! acts first on a ket; the adjoint runs levels n down to 1. This order is
//! pinned by `haar_forward(uniform) = |0>`.
//!
//! Basis index convention, fixed by reading columns off the dense matrix:
//! for `k >= 2`, `k = 2^(lambda-1) + (j - 1)` with `lambda = floor(log2 k) + 1`
//! and `1 <= j <= 2^(lambda-1)`. The basis function `W†|k>` then lives on the
//! block `[(j-1)*N1, j*N1 - 1]` of size `N1 = 2^(n-lambda+1)`, positive on the
//! first half of the block and negative on the second. `k = 0` is the constant
//! function and `k = 1` the full-width split; both span all `2^n` indices.

use ndarray::Array2;
use num_complex::Complex64;
use std::f64::consts::FRAC_1_SQRT_2;

use crate::error::{Error, Result};
use crate::state::{StateVector, MAX_QUBITS};

/// Dense reference matrices are capped here; beyond this they are all cost.
pub const MAX_DENSE_QUBITS: u32 = 12;

// ---------------------------------------------------------------------------
// Fast kernels
// ---------------------------------------------------------------------------

/// One forward level on the leading `m` entries. Returns the butterfly count.
///
/// `scratch` holds the averages while the details are written in place;
/// details go in descending so every pair is read before its slot is clobbered.
pub(crate) fn level_forward(amps: &mut [Complex64], scratch: &mut [Complex64], m: usize) -> u64 {
    let half = m / 2;
    let head = &mut amps[..m];
    for i in 0..half {
        scratch[i] = (head[2 * i] + head[2 * i + 1]) * FRAC_1_SQRT_2;
    }
    for i in (0..half).rev() {
        head[half + i] = (head[2 * i] - head[2 * i + 1]) * FRAC_1_SQRT_2;
    }
    head[..half].copy_from_slice(&scratch[..half]);
    half as u64
}

/// One inverse level on the leading `m` entries. Returns the butterfly count.
pub(crate) fn level_inverse(amps: &mut [Complex64], scratch: &mut [Complex64], m: usize) -> u64 {
    let half = m / 2;
    let head = &mut amps[..m];
    scratch[..half].copy_from_slice(&head[half..]);
    for i in (0..half).rev() {
        let a = head[i];
        let d = scratch[i];
        head[2 * i] = (a + d) * FRAC_1_SQRT_2;
        head[2 * i + 1] = (a - d) * FRAC_1_SQRT_2;
    }
    half as u64
}

/// Full forward transform in place; `scratch` must hold at least `len/2`.
pub(crate) fn forward_in_place(amps: &mut [Complex64], scratch: &mut [Complex64]) -> u64 {
    let mut ops = 0;
    let mut m = amps.len();
    while m >= 2 {
        ops += level_forward(amps, scratch, m);
        m /= 2;
    }
    ops
}

/// Full inverse transform in place; `scratch` must hold at least `len/2`.
pub(crate) fn inverse_in_place(amps: &mut [Complex64], scratch: &mut [Complex64]) -> u64 {
    let mut ops = 0;
    let mut m = 2;
    while m <= amps.len() {
        ops += level_inverse(amps, scratch, m);
        m *= 2;
    }
    ops
}

// ---------------------------------------------------------------------------
// Public transform operations
// ---------------------------------------------------------------------------

/// Applies the single level operator `W_level` to a state.
pub fn haar_level(state: &StateVector, level: u32) -> Result<StateVector> {
    let n = state.qubits();
    if level < 1 || level > n {
        return Err(Error::LevelOutOfRange { level, n });
    }
    let m = 1usize << (n - level + 1);
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); m / 2];
    level_forward(&mut amps, &mut scratch, m);
    Ok(StateVector::from_parts_unchecked(n, amps))
}

/// The full transform `W`, levels 1 through n.
pub fn haar_forward(state: &StateVector) -> StateVector {
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
    forward_in_place(&mut amps, &mut scratch);
    StateVector::from_parts_unchecked(state.qubits(), amps)
}

/// The adjoint `W†`, levels n down to 1.
pub fn haar_inverse(state: &StateVector) -> StateVector {
    let mut amps = state.amplitudes().to_vec();
    let mut scratch = vec![Complex64::new(0.0, 0.0); amps.len() / 2];
    inverse_in_place(&mut amps, &mut scratch);
    StateVector::from_parts_unchecked(state.qubits(), amps)
}

/// Dense `2^n x 2^n` reference matrix for `W`, built as the literal product
/// of level operators. Reference and testing only.
pub fn haar_matrix(n: u32) -> Result<Array2<f64>> {
    if !(1..=MAX_DENSE_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 1, max: MAX_DENSE_QUBITS });
    }
    let size = 1usize << n;
    let mut acc = Array2::<f64>::eye(size);
    for level in 1..=n {
        let m = 1usize << (n - level + 1);
        let half = m / 2;
        // Left-multiplying by W_level touches only the top m rows; each new
        // row is a two-term combination fixed by the average/detail pattern.
        let mut top = Array2::<f64>::zeros((m, size));
        for r in 0..half {
            for c in 0..size {
                let a = acc[[2 * r, c]];
                let b = acc[[2 * r + 1, c]];
                top[[r, c]] = (a + b) * FRAC_1_SQRT_2;
                top[[half + r, c]] = (a - b) * FRAC_1_SQRT_2;
            }
        }
        acc.slice_mut(ndarray::s![..m, ..]).assign(&top);
    }
    Ok(acc)
}

// ---------------------------------------------------------------------------
// Index bookkeeping
// ---------------------------------------------------------------------------

/// Scale/shift decomposition of a Haar basis index, with the support block
/// of the basis function `W†|k>`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct WaveletIndex {
    pub n: u32,
    pub k: usize,
    /// Scale; `None` only for the constant function `k = 0`.
    pub lambda: Option<u32>,
    /// Shift within the scale, counted from 1; `None` only for `k = 0`.
    pub j: Option<usize>,
    pub support_lo: usize,
    pub support_hi: usize,
    /// Support size `N1 = 2^(n-lambda+1)`; the full `2^n` for `k` in `{0, 1}`.
    pub n1: usize,
}

impl WaveletIndex {
    /// Sign of the basis function at `index`: `+1` / `-1` inside the support,
    /// `None` outside. The constant `k = 0` function is positive everywhere.
    pub fn sign_at(&self, index: usize) -> Option<i32> {
        if index < self.support_lo || index > self.support_hi {
            return None;
        }
        if self.k == 0 {
            return Some(1);
        }
        if index < self.support_lo + self.n1 / 2 {
            Some(1)
        } else {
            Some(-1)
        }
    }
}

/// Decomposes a basis index into scale, shift, and support block.
pub fn index_to_scale(n: u32, k: usize) -> Result<WaveletIndex> {
    if !(1..=MAX_QUBITS).contains(&n) {
        return Err(Error::QubitCount { n, min: 1, max: MAX_QUBITS });
    }
    let size = 1usize << n;
    if k >= size {
        return Err(Error::IndexOutOfRange { index: k, len: size });
    }
    if k == 0 {
        return Ok(WaveletIndex {
            n,
            k,
            lambda: None,
            j: None,
            support_lo: 0,
            support_hi: size - 1,
            n1: size,
        });
    }
    let lambda = k.ilog2() + 1;
    let j = k - (1usize << (lambda - 1)) + 1;
    let n1 = 1usize << (n - lambda + 1);
    let support_lo = (j - 1) * n1;
    Ok(WaveletIndex {
        n,
        k,
        lambda: Some(lambda),
        j: Some(j),
        support_lo,
        support_hi: support_lo + n1 - 1,
        n1,
    })
}

/// Composes a basis index from scale and shift; inverse of `index_to_scale`
/// on the informative range `lambda >= 2`.
pub fn scale_to_index(lambda: u32, j: usize) -> Result<usize> {
    if !(2..=MAX_QUBITS).contains(&lambda) {
        return Err(Error::ScaleOutOfRange { lambda, min: 2, max: MAX_QUBITS });
    }
    let shifts = 1usize << (lambda - 1);
    if j < 1 || j > shifts {
        return Err(Error::ShiftOutOfRange { lambda, j });
    }
    Ok(shifts + (j - 1))
}

/// The prepared state `W†|k>`: constant magnitude `1/sqrt(N1)` on the support
/// block, positive on its first half and negative on its second.
pub fn wavelet_initial_state(n: u32, k: usize) -> Result<StateVector> {
    let basis = StateVector::basis_state(n, k)?;
    Ok(haar_inverse(&basis))
}
