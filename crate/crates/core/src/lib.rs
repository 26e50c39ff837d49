//! conekit: exact-arithmetic symplectic-cone membership and fiber-sum
//! lattice bookkeeping for 4-manifold models.
//!
//! The crate works with second-cohomology intersection lattices over exact
//! rationals. It answers cone-membership questions (positive cone, half
//! cones, the b+ = 1 symplectic cone, relative cones, the minimal-Kaehler
//! cone) with re-checkable certificates, builds the glued lattice of a fiber
//! sum X #_V Y, splits classes across good sums, and folds iterated sums.
//!
//! Everything is immutable after construction and every operation is a pure
//! function, so all types are safe to share across threads.

pub mod catalog;
pub mod cones;
pub mod error;
pub mod expr;
pub mod fibersum;
mod intmat;
pub mod lattice;
pub mod rational;
pub mod sample;
pub mod verify;

pub use cones::{
    certify_half_space_shape, k_multiple_cone, recheck_certificate, Certificate, ConeTableTag,
    ConeVerdict, FourManifoldModel, Inequality, ModelData, Relation, Scope, ShapeSource,
};
pub use error::{Error, Result};
pub use fibersum::{
    build_sum, check_good, iterate_sum, push_sum_class, split_class, sum_cone_contains,
    BasisRole, FiberSumSpec, GluedBasis, GoodnessReport, IteratedSum, SumStage,
};
pub use lattice::{CohomClass, IntersectionLattice, LatticeId, Signature};
pub use rational::Rational;

#[cfg(test)]
mod tests {
    // every value type is immutable after construction; pin the resulting
    // thread-safety so a refactor cannot silently lose it
    #[test]
    fn values_are_send_and_sync() {
        fn ok<T: Send + Sync>() {}
        ok::<crate::IntersectionLattice>();
        ok::<crate::CohomClass>();
        ok::<crate::Signature>();
        ok::<crate::FourManifoldModel>();
        ok::<crate::ConeVerdict>();
        ok::<crate::FiberSumSpec>();
        ok::<crate::GluedBasis>();
        ok::<crate::GoodnessReport>();
        ok::<crate::Rational>();
    }
}
