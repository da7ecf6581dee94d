//! Forward and reverse greedy minimization of increasing set functions over
//! the bases of a matroid.
//!
//! The crate is organised bottom-up:
//!
//! * [`subset`] bitmask subsets over a ground set of at most 20 elements,
//! * [`function`] and [`ratios`] tabulated set functions, discrete
//!   derivatives, monotonicity, submodularity ratio, curvature and friends,
//! * [`matroid`] independence oracles (uniform, partition, graphic, explicit,
//!   dual, truncation),
//! * [`greedy`] the forward greedy, the reverse greedy and its forward
//!   reformulation on the dual, ordering witnesses and a brute-force optimum,
//! * [`guarantees`] closed-form performance bounds, greedy ratio variants,
//!   verification against brute force and the forward/reverse region sweep,
//! * [`instances`] generators and the JSON instance file format.

pub mod error;
pub mod function;
pub mod greedy;
pub mod guarantees;
pub mod instances;
pub mod matroid;
pub mod ratios;
pub mod subset;

mod extended_real;

pub use error::{Error, Result};
pub use function::{MonotonicityReport, SetFunction};
pub use greedy::{
    brute_force_optimum, forward_greedy, ordering_witness, reverse_greedy,
    reverse_greedy_as_forward, Algorithm, GreedyTrace, OptimumRecord, OrderingWitness, Sense,
};
pub use guarantees::{RatioReport, RegionGrid, VerificationRecord, Winner};
pub use instances::Instance;
pub use matroid::{AxiomReport, Matroid, MatroidSpec};
pub use ratios::{MarginalBounds, Ratio, RatioWitness};
pub use subset::{GroundSet, Subset};

/// Default relative tolerance for guarantee comparisons.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;
