//! Teleportation of a qubit when the two feedforward bits travel as weak
//! bipolar signals through an additive-noise channel and are recovered by a
//! threshold detector.
//!
//! The crate is organised bottom-up:
//!
//! * [`qstate`]: the teleported qubit, Pauli overlap weights, Bell-measurement
//!   bits, Pauli corrections and the density-matrix view of the receiver.
//! * [`noise`]: Gaussian, uniform, Laplace and alpha-stable channel noise.
//! * [`channel`]: bipolar encoding, threshold detection, detection
//!   probabilities and the forbidden interval.
//! * [`analysis`]: closed-form and Monte Carlo fidelity, noise sweeps,
//!   optimal-noise search and small-noise limit checks.
//!
//! ```
//! use teleport_sr::prelude::*;
//!
//! let channel = ChannelConfig::new(1.1, 1.6).unwrap();
//! let noise = NoiseModel::gaussian(0.0, 1.42).unwrap();
//! let stats = detection_probabilities(&channel, &noise);
//! let weights = QubitState::plus().pauli_weights();
//! let f = analytic_fidelity(&weights, stats.p(), &EntanglementResource::PERFECT).unwrap();
//! assert!((f - 0.6669).abs() < 1e-4);
//! ```

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod analysis;
pub mod channel;
mod error;
pub mod noise;
pub mod optimize;
pub mod qstate;
pub mod rng;

pub use error::{Error, Result};

pub mod prelude {
    pub use crate::analysis::{
        analytic_fidelity, estimate_fidelity, find_optimal_noise, simulate_trial, sweep,
        theorem_limit_check, EntanglementResource, LimitReport, OptimumMode, OptimalNoise,
        SweepMetadata, SweepResult, SweepRow, SweepSpec, TrialRecord,
    };
    pub use crate::channel::{
        detect, detection_probabilities, encode, forbidden_interval, sr_predicted, transmit_bit,
        ChannelConfig, DetectionStats, ForbiddenInterval,
    };
    pub use crate::noise::{Cdf, CdfValue, EmpiricalCdfOptions, NoiseClass, NoiseModel};
    pub use crate::qstate::{
        bell_measure, bob_mixed_state, corrected_state, fidelity_against, BellBits,
        DensityMatrix, PauliWeights, QubitState,
    };
    pub use crate::rng::{stream, RandomStream};
    pub use crate::{Error, Result};
}
