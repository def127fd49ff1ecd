//! Shared fixtures for the criterion benchmarks.

use hess_gkm::HessenbergFunction;

/// The running n = 5 example with both bottom- and L-indices.
pub fn sample_n5() -> HessenbergFunction {
    "3,3,4,5,5".parse().unwrap()
}

/// A mid-sized function whose graph has 720 vertices.
pub fn sample_n6() -> HessenbergFunction {
    "2,3,4,5,6,6".parse().unwrap()
}

/// A large function for the pure combinatorics paths.
pub fn sample_n7() -> HessenbergFunction {
    "3,3,4,5,6,7,7".parse().unwrap()
}
