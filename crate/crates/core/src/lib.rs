pub mod arith;
pub mod complex;
pub mod constructions;
pub mod corpus;
pub mod error;
pub mod exec;
pub mod functionals;
pub mod geometric;
pub mod io;
pub mod solver;

pub use complex::{CanonicalKey, Complex, FVector, Simplex, VertexId};
pub use error::{Error, Result};
pub use exec::Execution;
