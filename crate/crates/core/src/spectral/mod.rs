//! Numerical ground truth: diagonalization of the x²y² Hamiltonian, Airy
//! levels of the channel problem and quadrature oracles.

mod airy;
mod basis;
mod eigen;
mod oracle;
mod zt;

pub use airy::{airy_ai, airy_levels, airy_zeros};
pub use basis::{
    basis_dimension, build_hamiltonian_2d, BasisKind, BasisSpec, Exchange, Parity, Sector, SymMatrix,
    DEFAULT_MEMORY_BUDGET,
};
pub use eigen::{dense_eigenvalues, eigen_spectrum, lanczos_lowest, Solver, Spectrum, DENSE_MAX};
pub use oracle::{linear_grid_levels, monte_carlo_imn, quad_imn, quad_z2_channel, z2_channel_integrand};
pub use zt::{
    full_spectrum, grid_reliable_energy, improved_tf_density, improved_tf_tail, z_spectral, z_spectral_converged,
    ConvergedZ, TailModel, ZSpectral, MAX_TAIL_FRACTION,
};
