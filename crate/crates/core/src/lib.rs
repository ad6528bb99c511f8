pub mod classification;
pub mod cli;
pub mod error;
pub mod exactmath;
pub mod lemmas;
pub mod linalg;
pub mod markov;
pub mod singularities;
pub mod toric;

pub use error::{Error, Result};
