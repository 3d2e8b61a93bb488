//! Near-field optical levitation of emitter-doped nanospheres.
//!
//! The crate models a dielectric nanosphere doped with two-level quantum
//! emitters and levitated in evanescent fields: steady-state internal
//! heating, the bichromatic dipole force from a Floquet expansion of the
//! driven emitters, Casimir-Polder surface potentials, trap geometry, and
//! the cavity-optomechanical figures of merit of the levitated particle.
//!
//! Start from the runnable programs in `examples/`, one per capability, or
//! from the bundled scenario presets in [`scenarios`]. The `levitrap`
//! binary exposes the same scenarios on the command line.

pub mod casimir;
pub mod constants;
pub mod error;
pub mod fields;
pub mod floquet;
pub mod materials;
pub mod numerics;
pub mod oracles;
pub mod polarizability;
pub mod thermal;

pub use error::{Error, Result};
