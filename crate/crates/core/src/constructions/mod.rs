//! Concrete groups, modules and semidirect products.

pub mod linalg;
pub mod module;

pub use linalg::{Matrix, Subspace};
pub use module::*;
pub mod psl2;
pub use psl2::*;
pub mod semidirect;
pub use semidirect::*;
