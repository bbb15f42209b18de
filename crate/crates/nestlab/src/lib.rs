//! nestlab: executable order theory on finite spaces.
//!
//! The crate turns the calculus of nests (families of sets totally ordered by
//! inclusion) into runnable checks: separation properties, induced orders,
//! interlocking, scattering and well-orders, the van Dalen and Wattel
//! orderability characterization, transfer of nest structure across products
//! and function spaces, and an exact model of the Fermat reals whose linear
//! order is driven by the same machinery.
//!
//! Everything on finite carriers is exhaustively checkable, so each theorem
//! in scope is wired to an enumeration or sampling suite that either
//! confirms it or produces a concrete counterexample witness. Start with the
//! `examples/` directory, one runnable walkthrough per capability.

pub mod cli;
pub mod enumerate;
pub mod error;
pub mod fermat;
pub mod nest;
pub mod orderability;
pub mod product;
pub mod relation;
pub mod space;
pub mod topology;

pub use error::{Error, Result};
pub use nest::SeparationKind;
pub use relation::{OrderClass, Relation};
pub use space::{FiniteSpace, PointSet, SubsetFamily};
pub use topology::Topology;
