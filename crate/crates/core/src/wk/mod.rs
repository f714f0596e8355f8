//! Wigner-Kirkwood recursion, Gaussian momentum reduction and the
//! decomposition of phase-space integrals into I_mn moments.

mod bloch;
mod imn;
mod momentum;
mod potential;
mod recursion;

pub use bloch::{verify_bloch, BlochEntry, BlochReport};
pub use imn::{imn_decompose, log_coefficients, ImnDecomposition, ImnEntry, IMN_CSV_HEADER};
pub use momentum::{reduce_momenta, reduce_momentum, GaussianPrefactor};
pub use potential::{PotentialSpec, PotentialTag};
pub use recursion::{wk_sequence, WkSequence};

use crate::Error;

/// Reduced and decomposed quartic order k.
pub fn quartic_decomposition(seq: &WkSequence, k: usize) -> Result<ImnDecomposition, Error> {
    let w = seq
        .order(k)
        .ok_or_else(|| Error::InvalidArgument(format!("sequence stops at W_{}", seq.kmax())))?;
    imn_decompose(&reduce_momentum(w, 2), k)
}
