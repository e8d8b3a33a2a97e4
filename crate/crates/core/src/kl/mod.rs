//! Transfinite alternating decompositions of bounded Baire class 1 functions
//! on `[0, ω^k]`, and the order-preserving map of such functions into the
//! universal order.

pub mod decompose;
pub mod function;
pub mod index;
pub mod theta;

pub use decompose::{
    compare_decompositions, compare_decompositions_with, decompose, decompose_with_budget, star_sum, verify,
    Decomposition, StageComparison, StageList,
};
pub use function::{Block, CombineOp, FinitaryFunction, Pt};
pub use index::{certificate_below, usc_index_approx, usc_order_certificate, Certificate, UscOrder};
pub use theta::{squash, theta_compare, theta_sequence, ThetaComparison};
