//! Exact laboratory for commuting graphs of Heisenberg groups H_{2n+1}(p) and
//! unitriangular groups UT(n, p): group algebra, quasirandomness statistics,
//! graph embeddings, Rado-graph walks and small Markov-chain mixing tools.

pub mod commgraph;
pub mod error;
pub mod fp;
pub mod group;
pub mod heisenberg;
pub mod json;
pub mod oracle;
pub mod rado;
pub mod utgroup;
pub mod walklab;

pub use error::{Error, Result};
pub use fp::{FpVec, PrimeModulus};
pub use heisenberg::{ClassLabel, HeisElem, Heisenberg};
pub use utgroup::{UnitriangularGroup, UtMatrix};

/// Version string embedded in every JSON artifact.
pub const VERSION: &str = concat!("heisenlab ", env!("CARGO_PKG_VERSION"));
