//! Antitone functions on `N₀^d` with values in a finite lattice, and the
//! higher commutator sequences they encode.

pub mod antitone;
pub mod commutator;
mod error;
pub mod format;
pub mod hc;
pub mod lattice;
pub mod learn;
pub mod upset;
pub mod vectors;

pub use antitone::{ExtRep, Rep};
pub use error::{Error, Result};
pub use lattice::{Elem, Lattice, LatticeError};
pub use upset::UpSet;
pub use vectors::{ExtNat, ExtVec, NatVec};
