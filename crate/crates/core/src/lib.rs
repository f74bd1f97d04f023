//! Exact steady-state certification and stability analysis for repressilator
//! style gene-network models.

pub mod certify;
pub mod error;
pub mod exactalg;
pub mod groebner;
pub mod models;
pub mod realroots;
pub mod sampling;
pub mod simulate;
pub mod stability;

pub use error::{Error, Result};
