//! Maximum induced trees in binomial random graphs: exact search, counting
//! oracles, and log-domain moment computations.

pub mod error;
pub mod graph;
pub mod sample;
pub mod seed;

pub use error::{Error, Result};
pub use graph::{Graph, VertexSet};
pub use sample::sample_gnp;
pub use seed::Seed;
pub mod solver;
pub mod moments;
pub mod oracle;
pub mod experiment;
