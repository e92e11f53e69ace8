//! Lattice laboratory for the symplectic geometry of Yang-Mills fields on a
//! periodic cubical 3-torus.
//!
//! Fields are su(n)-valued cochains on a [`CubicalComplex`]. On top of the
//! discrete exterior calculus the crate provides covariant derivatives, the
//! covariant Hodge Laplacian and its Green operator, the symplectic structures
//! of the cotangent, tangent and Whitney-sum phase spaces with their moment
//! maps, the Clebsch parametrization of the Yang-Mills field, and
//! structure-preserving integrators for the two Hamiltonian systems.

pub mod clebsch_reduction;
pub mod dynamics;
pub mod elliptic;
pub mod error;
pub mod gauge_fields;
pub mod harness;
pub mod lattice_complex;
pub mod lie_algebra;
pub mod symplectic_core;

pub use error::{Error, Result};
pub use gauge_fields::{Connection, PhasePointR, PhasePointS, PhasePointT};
pub use lattice_complex::{Cochain, CubicalComplex};
pub use lie_algebra::{AlgElement, GroupElement};
