//! Groves on the triangular lattice, their alternating sign triangles, and
//! an exact cube-recurrence engine for cross-checking counts.

pub mod ast;
pub mod cube;
pub mod error;
mod forest;
pub mod grove;
pub mod harness;
mod json;
pub mod lattice;
pub mod reconstruct;

pub use ast::Ast;
pub use error::{Error, Result};
pub use grove::Grove;
pub use lattice::{Cell, Lattice, Vertex};
