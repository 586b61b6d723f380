//! Exact enumeration of parking-function outcomes and lucky cars.
//!
//! - [`parking`]: the parking process on classical, `(m, n)` and
//!   capacity-vector streets.
//! - [`combinatorics`]: compositions, ordered set partitions, Eulerian
//!   numbers and multinomials.
//! - [`classical`]: outcome counts for classical and `(m, n)` parking
//!   functions by lucky set or number of lucky cars.
//! - [`vector`]: outcome counts for `u`-parking functions, parking
//!   completions and lucky spots.
//! - [`upf`]: counts of `u`-parking functions by lucky set and by number of
//!   lucky cars.
//! - [`oracle`]: exhaustive brute-force censuses used as ground truth.

pub mod classical;
pub mod combinatorics;
pub mod count;
pub mod error;
pub mod oracle;
pub mod parking;
pub mod upf;
pub mod vector;

pub use combinatorics::{Composition, OrderedSetPartition};
pub use count::Count;
pub use error::{Error, Result};
pub use oracle::{Census, OracleConfig, Tally};
pub use parking::{
    CapacityProfile, ClassicalOutcome, LuckySet, PreferenceVector, VectorOutcome,
};
pub use upf::{DescentLoad, ReindexedOutcome};
pub use vector::{ForbiddenSpotSet, LuckySpotSet};
