//! Central square [-Q, Q]²: I_mn closed forms, the square contributions
//! Z_k, the Q-independent central series and the classical phase volume.

mod imn;
mod params;
mod phase_volume;
mod qindep;
mod square;

pub use imn::{imm_bracket_constant, imm_log, imn_leading, imn_value, odd_harmonic, Correction};
pub use params::{ModelParams, Validity, ADIABATIC_MIN, SERIES_U_MAX, WIGNER_MAX};
pub use phase_volume::{classical_phase_volume, phase_volume_doubling_increment, phase_volume_monte_carlo};
pub use qindep::{central_q_independent, euler_odd_harmonic, euler_odd_harmonic_value, CentralLogTerm, CentralQSeries, EulerSum};
pub use square::{
    entry_k_units, zk_square, zk_square_subdominant, CentralTerm, CentralTermRecord, LogEntry, SquarePipeline,
};
