//! Walled Brauer algebra toolkit for unitary-equivariant optimization.
//!
//! The crate computes idempotents of the partially transposed permutation
//! algebra diagrammatically and uses them to turn semidefinite programs with
//! a `U^{⊗p} ⊗ Ū^{⊗q}` symmetry into linear programs whose size does not
//! depend on the local dimension `d`.
//!
//! Modules, bottom up:
//! - [`diagrams`]: walled Brauer diagrams and their combinatorics.
//! - [`algebra`]: exact rational linear combinations of diagrams.
//! - [`lattice`]: partitions, bipartitions and Bratteli diagrams.
//! - [`idempotents`]: Jucys–Murphy elements and idempotent recursions.
//! - [`matrep`]: the explicit matrix representation and block extraction.
//! - [`multiplicity`]: Littlewood–Richardson data and variable counts.
//! - [`sdp2lp`]: spec parsing, conversion to LP, exact simplex, LP writers.
//! - [`apps`]: majority vote, principal eigenvalue and asymmetric cloning.

pub mod algebra;
pub mod apps;
pub mod diagrams;
pub mod error;
pub mod idempotents;
pub mod lattice;
pub mod matrep;
pub mod multiplicity;
pub mod rational;
pub mod sdp2lp;

pub use algebra::Element;
pub use diagrams::Diagram;
pub use error::{Error, Result};
pub use rational::Rational;
