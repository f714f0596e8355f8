//! Semiclassical (Wigner-Kirkwood) partition function of the x²y² model:
//! exact symbolic expansion, channel and central-square assembly, and the
//! numerical oracles used to check them.

pub mod assembly;
pub mod central;
pub mod channels;
pub mod exactalg;
pub mod precision;
pub mod quad;
pub mod series;
pub mod special;
pub mod spectral;
pub mod wk;

mod error;

extern crate openblas_src;

pub use error::Error;
pub use central::{Correction, ModelParams, Validity};
pub use exactalg::{GaussRational, MultiPoly, Rational, Symbol};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");
