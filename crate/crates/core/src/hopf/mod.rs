//! Finite-dimensional `m`-inverse property Hopf quasigroups over the
//! rationals.
//!
//! Axioms quantified over all elements are checked on basis elements only;
//! every map involved is multilinear, so this is equivalent.

pub mod algebra;
pub mod linalg;
pub mod matched;

pub use algebra::{
    group_algebra, tensor_product, tensor_product_capped, verify_hopf_quasigroup, HopfQuasigroupData, HopfReport,
    HOPF_DIM_CAP,
};
pub use linalg::{LinearMap, Scalar, Vector};
pub use matched::{
    hopf_matched_pair, hopf_matched_pair_capped, linearize_matched_pair, linearize_matched_pair_capped,
    HopfMatchedPair, LinearActionPair,
};
