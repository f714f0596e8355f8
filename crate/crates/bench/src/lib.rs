//! Shared inputs for the criterion benchmarks under `benches/`.

use ymqm_core::central::ModelParams;
use ymqm_core::spectral::BasisKind;

/// Adiabatic, small-λ working point used by the semiclassical benches.
pub fn working_point() -> ModelParams {
    ModelParams::new(1.0, 1.0, 0.01, 10.0).expect("valid parameters")
}

/// Grid small enough to diagonalize in well under a second.
pub fn small_grid() -> BasisKind {
    BasisKind::Grid { spacing: 0.3, extent: 20.0, vcut: 60.0 }
}
