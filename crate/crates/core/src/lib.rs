//! Coxeter groups, Iwahori–Hecke algebras and quasiparabolic sets: exact
//! computation of bar operators, canonical bases and W-graphs on the
//! modules `M` and `N` attached to a quasiparabolic W-set.

pub mod barcanon;
pub mod classify;
pub mod coxeter;
pub mod hecke;
pub mod laurent;
pub mod qpsets;
pub mod triangular;
pub mod verify;
pub mod wgraph;

/// Version stamp carried by every JSON export.
pub const SCHEMA_VERSION: u32 = 1;

pub use laurent::LaurentPoly;
