//! Entanglement measures for pure multipartite states built on local projective
//! measurements.
//!
//! The central quantity is the entanglement measurement bound (EMB): the minimal
//! Shannon entropy of the outcome distribution over all adaptive hierarchies of
//! local orthogonal measurements, where each party's basis may depend on every
//! earlier outcome. Around it the crate provides the companion quantities it is
//! compared against:
//!
//! - bipartite entanglement entropy via the Schmidt decomposition ([`measures`]),
//! - the independent-measurement entropy `E_Hmin` and the average post-measurement
//!   entanglement `E_LOCC` ([`emb`]),
//! - the geometric measure and the GHZ–W′ tangle ([`geometric`]),
//! - closed forms for three-qubit standard-form states ([`closedform`]).
//!
//! All entropies are in bits. Amplitudes are stored row-major with the last party's
//! index running fastest, and parties are addressed by zero-based index.

#![forbid(unsafe_code)]

pub mod closedform;
pub mod emb;
mod error;
pub mod geometric;
pub(crate) mod linalg;
pub mod measures;
pub mod optimize;
mod par;
pub mod random;
pub mod state;
pub mod sweep;
pub mod verify;

pub use num_complex::Complex64;

pub use closedform::{OmegaBranchSpectrum, StandardFormParams};
pub use emb::{Budget, MeasureResult};
pub use error::{Error, Result};
pub use measures::{ProbabilityVector, SchmidtSpectrum};
pub use optimize::{Axis, Diagnostics, OptimizerConfig, Optimum};
pub use state::{MeasurementBasis, OutcomeTree, Partition, StateTensor};
