//! Simulation and numerical verification toolkit for the Laguerre unitary
//! process: a discrete-time Hermitian matrix process with i.i.d. Laguerre
//! (complex Wishart) increments, its eigenvalue densities, and the extended
//! correlation kernels that describe it as a determinantal point process.

pub mod cli;
pub mod densities;
pub mod error;
pub mod kernels;
pub mod linalg;
pub mod logvalue;
pub mod matrixcore;
pub mod polybasis;
pub mod process;
pub mod quadrature;
pub mod rng;
pub mod special;
pub mod stats;
pub mod verify;

pub use error::{LupError, Result};
pub use logvalue::LogValue;
