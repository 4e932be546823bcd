//! Finite continuity spaces over value distributive lattices.
//!
//! A continuity space is a point set with a distance map into a value
//! distributive lattice, required only to vanish on the diagonal: no
//! symmetry, no triangle inequality. This crate implements the finite
//! theory end to end:
//!
//! - explicit bounded lattices with the well-above relation and
//!   distributivity checks ([`lattice`]);
//! - the lattice of down-set families over a finite ground, the dual of the
//!   free locale, with antichain representation ([`omega`]);
//! - continuity spaces, epsilon balls, the generated topology, epsilon-delta
//!   and topological continuity, the inverse construction that regenerates
//!   any finite topology from an omega-valued distance, and premetrisation
//!   ([`space`]);
//! - initial lifts, products and equalisers ([`limits`]);
//! - final lifts, coproducts and coequalisers via the admits path relation
//!   ([`colimits`]);
//! - brute-force verification of the universal properties, the adjunction
//!   hom-set bijection, and topology-preservation claims ([`verify`]);
//! - JSON and DOT interchange ([`json`], [`dot`]).
//!
//! See the `examples/` directory for one runnable example per capability.

pub mod bitset;
pub mod colimits;
pub mod dot;
pub mod error;
pub mod json;
pub mod lattice;
pub mod limits;
pub mod omega;
pub mod rational;
pub mod space;
pub mod verify;

pub use error::{Error, Result};
pub use lattice::{FiniteLattice, Lattice, Value};
pub use omega::{DownSetFamily, GroundSet};
pub use rational::ExtRational;
pub use space::{ContinuitySpace, FiniteTopology, SpaceMap};
