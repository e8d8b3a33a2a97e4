//! Exact computation with the alternating lexicographic order on transfinite
//! decreasing sequences, the embedding constructions into it, transfinite
//! decompositions of Baire class 1 functions on countable ordinal spaces, and
//! the compact-set separation witnesses.

pub mod error;
pub mod gen;
pub mod hyperspace;
pub mod ordinal;
pub mod rational;
pub mod kl;
pub mod oracle;
pub mod order;
pub mod seq;

pub use error::{Error, Result};
pub use ordinal::{Ordinal, Parity};
pub use rational::Q;
pub use seq::{Segment, TransfiniteSeq};
