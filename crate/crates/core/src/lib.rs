//! Entanglement dynamics of three qubits, each coupled to its own
//! amplitude-damping reservoir with a Lorentzian (damped Jaynes-Cummings)
//! spectral density.
//!
//! The crate is organised bottom-up:
//!
//! - [`linalg`]: dense complex matrices, partial trace/transpose, a Jacobi
//!   Hermitian eigensolver and trace norms.
//! - [`decoherence`]: the decoherence amplitude `P_t` in both coupling regimes,
//!   its memory kernel, an ODE oracle and its zeros.
//! - [`channel`]: the local amplitude-damping map, both as explicit element
//!   update tables and as a Kraus product.
//! - [`measures`]: negativities, two-tangles, the π-tangle, Wootters
//!   concurrence, pure-state residual entanglement and the CKW margin.
//! - [`states`]: the GHZ-type and W-type initial states and the GHZ/W mixture.
//! - [`catalog`]: closed-form time-dependent results for those families.
//! - [`harness`]: parameter sweeps, figure data, the closed-form audit and
//!   CSV/JSON output.
//!
//! Basis index `i ∈ 0..8` spells the bits `(q_A q_B q_C)` with qubit A the
//! most significant bit, so `|1⟩ ≡ |001⟩` and `|4⟩ ≡ |100⟩`.

// NaN must fail range checks, so `!(x <= y)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
pub mod channel;
pub mod decoherence;
mod error;
pub mod harness;
pub mod linalg;
pub mod measures;
pub mod states;

pub use error::{Error, Result};

pub use num_complex::Complex64;
