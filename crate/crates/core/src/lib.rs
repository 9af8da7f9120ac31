//! Fluid diffusion through a swelling viscoelastic solid, modelled as a
//! two-constituent mixture with an evolving natural configuration.

pub mod config;
pub mod constitutive;
pub mod error;
pub mod experiments;
pub mod ivp1d;
pub mod output;
pub mod roots;
pub mod solver;
pub mod tensor;

pub use error::{Error, Result};
pub use ivp1d::{LoadSchedule, LoadSegment, NondimParams, State1D};
pub use solver::{PdeScheme, RunRecord, SolverConfig};
pub use tensor::DiagTensor3;
