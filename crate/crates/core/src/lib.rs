//! Computing with twisted link diagrams encoded as bar-extended Gauss
//! codes: double covering diagrams, ribbon surfaces and their orientation
//! double covers, twisted/virtual group and quandle presentations, exact
//! finite coloring invariants, and a Reidemeister/twisted move engine.

pub mod algebra;
pub mod catalog;
pub mod cover;
pub mod gauss;
pub mod moves;
pub mod ribbon;
pub mod verify;

pub use gauss::{Strand, Symbol, TwistedCode};
