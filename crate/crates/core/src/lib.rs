//! Squeezed coherent states of deformed oscillator algebras (harmonic
//! oscillator and Morse bound states), their passage through a beam
//! splitter, and the linear entropy of the resulting two-mode state.

pub mod algebra;
pub mod cli;
mod ddouble;
pub mod entanglement;
pub mod error;
pub mod exec;
pub mod special;
pub mod splitter;
pub mod states;
pub mod wavefunctions;

pub use algebra::{Deformation, DeformationSpec};
pub use entanglement::{EntropySpectrum, ReducedDensity};
pub use error::{Error, Result};
pub use exec::Execution;
pub use splitter::{BeamSplitterConfig, BipartiteOutput};
pub use states::{ScsFamily, Spectrum, SqueezedState, SqueezedStateParams};
pub use wavefunctions::{EigenfunctionBasis, MorseSystem};

/// Morse parameter of the hydrogen chloride molecule.
pub const HCL_P: f64 = 28.22;
