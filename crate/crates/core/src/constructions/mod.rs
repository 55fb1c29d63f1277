//! Product constructions on loops and groups.

pub mod cocycle;
pub mod group_pair;
pub mod lambda;
pub mod matched;
pub mod products;

pub use cocycle::{cocycle_extension, is_2cocycle, odd_invertible_loop, CocycleMap};
pub use group_pair::{group_matched_pair, GroupActionPair};
pub use lambda::{lambda_example, ChiReading, LambdaExample, LambdaInput};
pub use matched::{matched_pair_loop, semidirect_m_inverse, ActionPair, ProductLoop};
pub use products::{direct_product, sabinin_product, semidirect_group_theta, TransassociantGroup};
