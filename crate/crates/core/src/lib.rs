//! Three-player XOR games built from random 3-tensors.

pub mod concentration;
pub mod error;
pub mod experiments;
pub mod linalg;
pub mod nets;
pub mod pauli;
pub mod game;
pub mod tensor;

pub use error::{Error, Result};
