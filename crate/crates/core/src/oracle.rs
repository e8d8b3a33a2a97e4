//! Brute-force comparator that reads both sequences one index at a time.
//! It shares no code with the segment walk in `seq` beyond `get`.

use std::cmp::Ordering;

use crate::ordinal::Ordinal;
use crate::rational;
use crate::seq::TransfiniteSeq;

/// Positions examined in each ω-block before the block is assumed equal.
pub const BLOCK_CAP: u64 = 200;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WalkOutcome {
    pub order: Ordering,
    pub delta: Option<Ordinal>,
}

/// Compares index by index over `ω·j + m`, `m < BLOCK_CAP`. Returns `None`
/// when one sequence is a proper prefix of the other.
pub fn walk_compare(x: &TransfiniteSeq, y: &TransfiniteSeq) -> Option<WalkOutcome> {
    let (jx, _) = x.length().as_omega_linear()?;
    let (jy, _) = y.length().as_omega_linear()?;
    for j in 0..=jx.max(jy) {
        for m in 0..BLOCK_CAP {
            let i = Ordinal::omega_times_plus(j, m);
            match (x.get(&i).ok(), y.get(&i).ok()) {
                (None, None) => {
                    return Some(WalkOutcome {
                        order: Ordering::Equal,
                        delta: None,
                    })
                }
                (Some(a), Some(b)) if rational::eq(&a, &b) => continue,
                (Some(a), Some(b)) => {
                    let o = rational::cmp(&a, &b);
                    let order = if m % 2 == 0 { o } else { o.reverse() };
                    return Some(WalkOutcome {
                        order,
                        delta: Some(i),
                    });
                }
                _ => return None,
            }
        }
    }
    Some(WalkOutcome {
        order: Ordering::Equal,
        delta: None,
    })
}
