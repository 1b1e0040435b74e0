//! Quantal phases, wave functions, and electromagnetic fields of nonstatic
//! light waves in a static environment.
//!
//! A nonstatic mode is parameterized by (ω, c1, c2, c3, t0, φ) with
//! c1·c2 − c3² = 1. The width function f(t) drives everything else: the
//! phase integral Θ(t) = ωT(t) with its step-like extreme limit, the
//! dynamical/geometric phase split, the Fock wave functions, and the
//! A/E/B field expressions of the coherent wave.

pub mod analysis;
pub mod checks;
pub mod error;
pub mod fields;
pub mod phases;
pub mod quad;
pub mod timebase;
pub mod wavefunctions;

pub use error::{Error, Result};
pub use fields::{FieldParams, FieldSample};
pub use phases::PhaseState;
pub use timebase::{measure_df, oracle_theta, resolve_c3, C3Sign, ModeParams, TimeSample};
pub use wavefunctions::{QuantumConstants, SuperpositionSpec, WidthParams};

pub use num_complex::Complex64;
