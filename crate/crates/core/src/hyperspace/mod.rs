//! Compact figures in the unit square attached to decreasing sequences.

pub mod fig;
pub mod hausdorff;
pub mod witness;

pub use fig::{psi_compact, BoxQuery, CompactFig, End, Interval, Piece};
pub use hausdorff::hausdorff_distance_approx;
pub use witness::{check_witness, witness_between, Predicate, WitnessReport};
