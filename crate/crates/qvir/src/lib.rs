//! The deformed Virasoro algebra in exact arithmetic: Verma modules and their
//! Gram matrices, the free-field realization on symmetric functions,
//! Macdonald and Jack polynomials, and the 5d pure SU(2) Nekrasov function
//! together with the recursion for the Whittaker norm.

pub mod agt;
pub mod cache;
pub mod classical;
pub mod cli;
pub mod dva;
pub mod fock;
pub mod params;
pub mod partitions;
pub mod report;
pub mod symfunc;
pub mod verma;

pub use params::Params;
pub use partitions::Partition;
pub use symfunc::SymFunc;
