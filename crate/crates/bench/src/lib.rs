//! Fixtures shared by the benchmarks.

use sepfaces::{Complex64, ComplexMatrix, ConstructionParams};

/// Deterministic dense Hermitian matrix with a spread spectrum.
pub fn hermitian_fixture(n: usize) -> ComplexMatrix {
    ComplexMatrix::from_fn(n, n, |i, j| {
        let (x, y) = (i as f64, j as f64);
        Complex64::new((1.0 + x * y).sin(), (x - y).cos() * (x + 2.0 * y).sin())
    })
    .hermitian_part()
}

pub fn reference_params() -> ConstructionParams {
    ConstructionParams::new(2.0, 1.0).expect("admissible")
}
