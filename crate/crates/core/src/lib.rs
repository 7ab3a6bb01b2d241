pub mod density;
pub mod error;
pub mod flat_norm;
pub mod io;
pub mod lipschitz;
pub mod map;
pub mod markov;
pub mod measure;
pub mod metric;
pub mod schur_lab;
pub mod simplex;

pub use error::{Error, Result};
