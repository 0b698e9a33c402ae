//! Simulation and capacity analysis of quantum channels whose carriers are
//! routed through two network paths in coherent superposition.
//!
//! The pieces, bottom up:
//!
//! * [`numerics`]: small dense complex matrices, a Jacobi eigensolver and
//!   entropies.
//! * [`channels`]: Kraus channels, vacuum extensions and builders for the
//!   Z-channel, binary asymmetric channel and their relatives.
//! * [`routing`]: composition of links and repeaters into branches, and the
//!   superposition of two branches.
//! * [`capacity`]: Holevo lower bounds and exact classical capacities.
//! * [`analysis`]: the singular-value-1 characterisation and repeater
//!   synthesis.
//! * [`experiments`]: parameter sweeps behind the command-line driver.

pub mod analysis;
pub mod capacity;
pub mod channels;
mod error;
pub mod experiments;
pub mod numerics;
pub mod routing;
pub mod tolerances;

pub use error::{Error, Result};

pub use analysis::{synthesize_variable_repeater, theorem1_check, variable_chain_limit, Theorem1Report};
pub use capacity::{
    bac_capacity, blahut_arimoto, effective_bac_params, holevo_information, two_state_lower_bound,
    z_capacity, CapacityBound, Ensemble,
};
pub use channels::{
    compress_kraus, vacuum_interference, BinaryAsymmetricParams, ChannelSpec, KrausChannel, QuantumMap,
    VacuumExtension,
};
pub use experiments::{ExperimentConfig, SweepRow};
pub use numerics::{ComplexMatrix, HermitianEigenSystem};
pub use routing::{
    asymptotic_superposition, compose_branch, AsymptoticMap, gamma_factor, mode_picture_superpose, superpose, Branch,
    PathState, RouteSpec,
};
