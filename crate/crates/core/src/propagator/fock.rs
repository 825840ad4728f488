use num_complex::Complex64;

use crate::primitives::{FockVector, PhysicalParams};

/// Exact evolution in the energy eigenbasis: `c_n(t) = c_n(0)·e^{−i(n+½)ωt}`.
pub fn fock_evolve(coeffs: &FockVector, t: f64, params: &PhysicalParams) -> FockVector {
    let wt = params.omega() * t;
    let evolved = coeffs
        .coeffs()
        .iter()
        .enumerate()
        .map(|(n, c)| c * Complex64::from_polar(1.0, -(n as f64 + 0.5) * wt))
        .collect();
    FockVector::new(evolved).expect("length preserved")
}
