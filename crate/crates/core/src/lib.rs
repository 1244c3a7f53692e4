//! Exact characters and central measures for GL(n, F_q) and the inductive
//! limit group, plus Monte Carlo for Jordan-type frequencies of random
//! unitriangular matrices.

pub mod characters;
pub mod error;
pub mod gflinalg;
pub mod grassmann;
pub mod io;
pub mod ipfamily;
pub mod measures;
pub mod partitions;
pub mod rational;
pub mod sampler;
pub mod symfun;

pub use error::{Error, Result};
pub use partitions::Partition;
pub use rational::Rational;
