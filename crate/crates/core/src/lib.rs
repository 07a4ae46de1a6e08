pub mod abelian;
pub mod dsl;
pub mod graded_ring;
pub mod spectral;
pub mod catalog;
pub mod solver;
pub mod verify;
pub mod cli;
