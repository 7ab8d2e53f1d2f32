pub mod error;
pub mod f2core;
pub mod torus_algebra;

pub use error::{Error, Result};
pub mod contact;
pub mod curves;
pub mod farey;
pub mod models;
pub mod pairing;
pub mod structures;
pub mod verify;

/// Slopes with 64-bit coordinates.
pub type Slope = farey::SlopeOf<i64>;
