use ymqm_bench::{small_grid, working_point};
use ymqm_core::spectral::{full_spectrum, DEFAULT_MEMORY_BUDGET};

#[test]
fn working_point_is_in_the_semiclassical_window() {
    let p = working_point();
    assert!(p.lambda_sq() < 1e-3);
    assert!(ymqm_core::assembly::leading_total(&p).is_ok());
}

#[test]
fn small_grid_diagonalizes() {
    let s = full_spectrum(1.0, 1.0, small_grid(), DEFAULT_MEMORY_BUDGET).unwrap();
    assert!(s.ground().unwrap() > 0.0);
}
