//! Frequency coverings: the alpha-lattice, smooth partitions of unity
//! subordinate to it, the dyadic shell family, and their certification.

pub mod dyadic;
pub mod lattice;
pub mod partition;
pub mod profile;
pub mod verify;
pub mod warp;

pub use dyadic::{max_levels_for, DyadicFamily};
pub use lattice::{AlphaLattice, LatticeIndex};
pub use partition::{window_value, PartitionFamily, SparseWindow, WindowEval};
pub use profile::{smoothstep, TransitionKind, WindowProfile};
pub use verify::{tail_growth, verify_partition, PartitionReport, VerifyOptions, WindowCheck};
pub use warp::FrequencyWarp;
