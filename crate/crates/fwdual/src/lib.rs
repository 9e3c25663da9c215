//! Exact verification engine for the Fermi-Bose dual structure of the free
//! Foldy-Wouthuysen (FW) and Dirac equations.
//!
//! The crate builds, over an exact coefficient field, the extended real
//! Clifford-Dirac algebra, the fermionic and the bosonic spin multiplets,
//! both Poincare generator sets for the FW equation, and the fundamental
//! solutions in the Cartesian and cyclic bases. Every claimed algebraic
//! relation (Clifford relations, SO(8) structure, intertwinings, invariance,
//! Casimir values) is checked exactly; a numeric wave-packet layer verifies
//! the corresponding conservation laws and the 2*pi rotation signature that
//! separates the fermionic from the bosonic representation.

pub mod exactnum;
pub mod ops4;
pub mod report;
pub mod cliffords;
pub mod spinsets;
pub mod symdiff;
pub mod solutions;
pub mod conservation;
pub mod config;
pub mod suites;
