//! Check implementations, one file per module under test.

pub mod algebra;
pub mod clebsch;
pub mod complex;
pub mod dynamics;
pub mod elliptic;
pub mod gauge;
pub mod harness;
pub mod symplectic;
