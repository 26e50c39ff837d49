//! Shared fixtures for the conekit benchmarks.

use conekit::{catalog, FiberSumSpec};

/// The T4 # T4 spec used across benchmarks.
pub fn t4_t4_spec() -> FiberSumSpec {
    let t4 = catalog::get_model("T4").expect("builtin");
    let f = t4.fiber_class().cloned().expect("fiber");
    FiberSumSpec::new(t4.clone(), t4, f.clone(), f, 1, true, 0, 0).expect("valid spec")
}
