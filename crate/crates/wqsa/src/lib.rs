//! Statevector simulation of quantum search with a wavelet-prepared start.
//!
//! The classic amplitude-amplification loop rotates a uniform superposition
//! toward a marked basis state. Swapping the uniform start for a Haar wavelet
//! basis function confines the search to the support block of that function:
//! when side information pins the target to a block of size `N1`, the marked
//! state is found in `O(sqrt(N1))` oracle calls instead of `O(sqrt(N))`.
//!
//! The crate provides the transform kernels ([`haar`]), the two search
//! iterations and trace recorder ([`engine`]), the closed-form rotation-angle
//! analysis and speedup sweeps ([`analysis`]), the block code connecting
//! digit knowledge to scales ([`codebook`]), and a self-check suite
//! ([`verify`]). Start with the `examples/` directory; each file there is a
//! runnable walkthrough of one capability.

pub mod analysis;
pub mod cli;
pub mod codebook;
pub mod engine;
pub mod error;
pub mod haar;
pub mod state;
pub mod verify;

pub use analysis::{
    angles_for_target, optimal_iterations, predicted_probability, rotation_angles, speedup_table,
    theory_residual, AngleParams, SpeedupRow,
};
pub use codebook::{choose_k, decode_digit, encode, validate, Block, CodeLabel, Verdict};
pub use engine::{
    grover_iterate, oracle_reflect, reflect_about_initial, run_search, wqsa_iterate, SearchConfig,
    SearchTrace, SearchVariant, TraceEntry, TransformPair,
};
pub use error::{Error, Result};
pub use haar::{
    haar_forward, haar_inverse, haar_level, haar_matrix, index_to_scale, scale_to_index,
    wavelet_initial_state, WaveletIndex, MAX_DENSE_QUBITS,
};
pub use state::{StateVector, MAX_QUBITS, NORM_TOL};
pub use verify::{run_all, SuiteReport, VerifyOptions};
